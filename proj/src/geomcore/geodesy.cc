#include "dgkit/geomcore/geodesy.h"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace dgkit {
namespace {

constexpr double kDegToRad = std::numbers::pi / 180.0;
constexpr double kRadToDeg = 180.0 / std::numbers::pi;

}  // namespace

double WrapLongitude(double lon_deg) {
  double wrapped = std::fmod(lon_deg + 180.0, 360.0);
  if (wrapped < 0.0) wrapped += 360.0;
  return wrapped - 180.0;
}

EcefPoint Wgs84ToEcef(double lat_deg, double lon_deg, double alt_m) {
  if (!std::isfinite(lat_deg) || !std::isfinite(lon_deg) ||
      !std::isfinite(alt_m)) {
    throw std::domain_error("geodetic coordinates must be finite");
  }
  if (lat_deg < -90.0 || lat_deg > 90.0) {
    throw std::domain_error("latitude out of range [-90, 90]: " +
                            std::to_string(lat_deg));
  }
  const double lat = lat_deg * kDegToRad;
  const double lon = lon_deg * kDegToRad;
  // Exact values at the poles and on the equator keep the axis anchors exact.
  const double sin_lat = std::abs(lat_deg) == 90.0 ? std::copysign(1.0, lat_deg)
                                                   : std::sin(lat);
  const double cos_lat = std::abs(lat_deg) == 90.0 ? 0.0 : std::cos(lat);
  const double sin_lon = std::sin(lon);
  const double cos_lon = std::cos(lon);
  const double n = Wgs84::kSemiMajorAxis /
                   std::sqrt(1.0 - Wgs84::kEccentricitySq * sin_lat * sin_lat);
  return {(n + alt_m) * cos_lat * cos_lon, (n + alt_m) * cos_lat * sin_lon,
          (n * (1.0 - Wgs84::kEccentricitySq) + alt_m) * sin_lat};
}

EcefPoint Wgs84ToEcef(const GeodeticPoint& point) {
  return Wgs84ToEcef(point.lat, point.lon, point.alt);
}

GeodeticPoint EcefToWgs84(const EcefPoint& point) {
  constexpr double a = Wgs84::kSemiMajorAxis;
  constexpr double e2 = Wgs84::kEccentricitySq;
  const double p = std::hypot(point.x, point.y);
  const double lon = std::atan2(point.y, point.x);

  // Fixed-point iteration on latitude; contracts by roughly e^2 per step.
  double lat = std::atan2(point.z, p * (1.0 - e2));
  for (int i = 0; i < 32; ++i) {
    const double sin_lat = std::sin(lat);
    const double n = a / std::sqrt(1.0 - e2 * sin_lat * sin_lat);
    const double next = std::atan2(point.z + e2 * n * sin_lat, p);
    const bool converged = std::abs(next - lat) < 1e-15;
    lat = next;
    if (converged) break;
  }
  const double sin_lat = std::sin(lat);
  const double cos_lat = std::cos(lat);
  // Stable at every latitude, including the poles where p -> 0.
  const double alt = p * cos_lat + point.z * sin_lat -
                     a * std::sqrt(1.0 - e2 * sin_lat * sin_lat);
  return {lat * kRadToDeg, lon * kRadToDeg, alt};
}

EnuFrame::EnuFrame(const GeodeticPoint& origin)
    : origin_(origin), origin_ecef_(Wgs84ToEcef(origin)) {
  const double lat = origin.lat * kDegToRad;
  const double lon = origin.lon * kDegToRad;
  const double sl = std::sin(lat), cl = std::cos(lat);
  const double so = std::sin(lon), co = std::cos(lon);
  ecef_to_enu_ << -so, co, 0.0,
                  -sl * co, -sl * so, cl,
                  cl * co, cl * so, sl;
}

Eigen::Vector3d EnuFrame::ToEnu(const EcefPoint& point) const {
  return ecef_to_enu_ * (point.ToVector() - origin_ecef_.ToVector());
}

EcefPoint EnuFrame::ToEcef(const Eigen::Vector3d& enu) const {
  return EcefPoint::FromVector(ecef_to_enu_.transpose() * enu +
                               origin_ecef_.ToVector());
}

Eigen::Vector3d EcefToEnu(const EcefPoint& point, const GeodeticPoint& origin) {
  return EnuFrame(origin).ToEnu(point);
}

EcefPoint EnuToEcef(const Eigen::Vector3d& enu, const GeodeticPoint& origin) {
  return EnuFrame(origin).ToEcef(enu);
}

}  // namespace dgkit
