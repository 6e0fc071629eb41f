#include "dgkit/geomcore/camera.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <stdexcept>

#include <Eigen/Geometry>

namespace dgkit {
namespace {

constexpr double kDegToRad = std::numbers::pi / 180.0;
constexpr double kRadToDeg = 180.0 / std::numbers::pi;

double AngleBetween(const Eigen::Vector3d& u, const Eigen::Vector3d& v) {
  return std::atan2(u.cross(v).norm(), u.dot(v)) * kRadToDeg;
}

}  // namespace

GeoCamera NormalizeGeoCamera(const GeoCamera& camera) {
  const auto fail = [&](const std::string& what) {
    throw std::domain_error("camera '" + camera.id + "': " + what);
  };
  if (camera.id.empty()) fail("empty id");
  const GeodeticPoint& p = camera.position;
  const Intrinsics& k = camera.intrinsics;
  for (const double v : {p.lat, p.lon, p.alt, camera.heading, camera.pitch,
                         k.fx, k.fy, k.cx, k.cy}) {
    if (!std::isfinite(v)) fail("non-finite value");
  }
  if (p.lat < -90.0 || p.lat > 90.0) fail("latitude out of range");
  if (camera.pitch < -90.0 || camera.pitch > 90.0) fail("pitch out of range");
  if (k.fx <= 0.0 || k.fy <= 0.0) fail("focal length must be positive");
  if (camera.width <= 0 || camera.height <= 0) fail("image size must be positive");

  GeoCamera normalized = camera;
  normalized.position.lon = WrapLongitude(p.lon);
  double heading = std::fmod(camera.heading, 360.0);
  if (heading < 0.0) heading += 360.0;
  if (heading >= 360.0) heading = 0.0;
  normalized.heading = heading;
  return normalized;
}

Eigen::Vector3d HeadingToDirection(double heading_deg, double pitch_deg) {
  const double heading = heading_deg * kDegToRad;
  const double pitch = pitch_deg * kDegToRad;
  const Eigen::Vector3d dir(std::sin(heading) * std::cos(pitch),
                            std::cos(heading) * std::cos(pitch),
                            std::sin(pitch));
  return dir.normalized();
}

std::string EnuFrameTag(const GeodeticPoint& origin) {
  char buffer[96];
  std::snprintf(buffer, sizeof(buffer), "enu(%.9f,%.9f,%.4f)", origin.lat,
                origin.lon, origin.alt);
  return buffer;
}

PosedCamera CameraFromGeotag(const GeoCamera& camera, const EnuFrame& frame) {
  const GeoCamera normalized = NormalizeGeoCamera(camera);
  PosedCamera posed;
  posed.center = frame.ToEnu(Wgs84ToEcef(normalized.position));
  posed.dir = HeadingToDirection(normalized.heading, normalized.pitch);
  posed.intrinsics = normalized.intrinsics;
  posed.width = normalized.width;
  posed.height = normalized.height;
  posed.frame = EnuFrameTag(frame.origin());
  return posed;
}

PosedCamera CameraFromGeotag(const GeoCamera& camera, const GeoCamera& origin) {
  return CameraFromGeotag(camera, EnuFrame(NormalizeGeoCamera(origin).position));
}

double CameraDistance(const PosedCamera& a, const PosedCamera& b) {
  return (a.center - b.center).norm();
}

double ViewAngleDeg(const PosedCamera& a, const PosedCamera& b) {
  const double cosine = std::clamp(a.dir.dot(b.dir), -1.0, 1.0);
  return std::acos(cosine) * kRadToDeg;
}

double DiagonalFovDeg(const Intrinsics& intrinsics, double width,
                      double height) {
  if (!(width > 0.0) || !(height > 0.0)) {
    throw std::domain_error("image size must be positive");
  }
  const Eigen::Vector3d top_left(-intrinsics.cx / intrinsics.fx,
                                 -intrinsics.cy / intrinsics.fy, 1.0);
  const Eigen::Vector3d bottom_right((width - intrinsics.cx) / intrinsics.fx,
                                     (height - intrinsics.cy) / intrinsics.fy,
                                     1.0);
  return AngleBetween(top_left, bottom_right);
}

double DiagonalFovDeg(const PosedCamera& camera) {
  return DiagonalFovDeg(camera.intrinsics, camera.width, camera.height);
}

}  // namespace dgkit
