#ifndef DGKIT_GEOMCORE_GEODESY_H_
#define DGKIT_GEOMCORE_GEODESY_H_

#include <Eigen/Core>

namespace dgkit {

// WGS84 ellipsoid. Heights are ellipsoidal throughout; no geoid model.
struct Wgs84 {
  static constexpr double kSemiMajorAxis = 6378137.0;
  static constexpr double kFlattening = 1.0 / 298.257223563;
  static constexpr double kSemiMinorAxis = kSemiMajorAxis * (1.0 - kFlattening);
  static constexpr double kEccentricitySq = kFlattening * (2.0 - kFlattening);
};

// Latitude/longitude in degrees, altitude in meters above the ellipsoid.
struct GeodeticPoint {
  double lat = 0.0;
  double lon = 0.0;
  double alt = 0.0;
};

// Earth-Centered-Earth-Fixed position in meters.
struct EcefPoint {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  Eigen::Vector3d ToVector() const { return {x, y, z}; }
  static EcefPoint FromVector(const Eigen::Vector3d& v) {
    return {v.x(), v.y(), v.z()};
  }
};

// Throws std::domain_error for latitude outside [-90, 90] or non-finite input.
// Longitude may be any finite value.
EcefPoint Wgs84ToEcef(double lat_deg, double lon_deg, double alt_m);
EcefPoint Wgs84ToEcef(const GeodeticPoint& point);

// Inverse of Wgs84ToEcef. Longitude is returned in (-180, 180].
GeodeticPoint EcefToWgs84(const EcefPoint& point);

// Wraps a longitude into [-180, 180).
double WrapLongitude(double lon_deg);

// A local East-North-Up tangent frame anchored at a geodetic origin.
class EnuFrame {
 public:
  explicit EnuFrame(const GeodeticPoint& origin);

  const GeodeticPoint& origin() const { return origin_; }
  const EcefPoint& origin_ecef() const { return origin_ecef_; }

  Eigen::Vector3d ToEnu(const EcefPoint& point) const;
  EcefPoint ToEcef(const Eigen::Vector3d& enu) const;

 private:
  GeodeticPoint origin_;
  EcefPoint origin_ecef_;
  // Rows are the east, north and up axes expressed in ECEF.
  Eigen::Matrix3d ecef_to_enu_;
};

Eigen::Vector3d EcefToEnu(const EcefPoint& point, const GeodeticPoint& origin);
EcefPoint EnuToEcef(const Eigen::Vector3d& enu, const GeodeticPoint& origin);

}  // namespace dgkit

#endif  // DGKIT_GEOMCORE_GEODESY_H_
