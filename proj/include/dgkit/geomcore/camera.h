#ifndef DGKIT_GEOMCORE_CAMERA_H_
#define DGKIT_GEOMCORE_CAMERA_H_

#include <string>

#include <Eigen/Core>

#include "dgkit/geomcore/geodesy.h"

namespace dgkit {

// Pinhole intrinsics in pixels.
struct Intrinsics {
  double fx = 1.0;
  double fy = 1.0;
  double cx = 0.0;
  double cy = 0.0;
};

// A camera as described by its capture metadata: geotag, compass heading
// (degrees clockwise from true north), pitch (degrees toward up) and
// calibration.
struct GeoCamera {
  std::string id;
  GeodeticPoint position;
  double heading = 0.0;
  double pitch = 0.0;
  Intrinsics intrinsics;
  int width = 0;
  int height = 0;
};

// Checks the GeoCamera invariants and returns a copy with heading wrapped to
// [0, 360) and longitude wrapped to [-180, 180). Throws std::domain_error on
// an empty id, out-of-range latitude or pitch, non-positive focal lengths or
// image size, or non-finite values.
GeoCamera NormalizeGeoCamera(const GeoCamera& camera);

// A camera in a local metric ENU frame. `frame` tags which frame the center is
// expressed in; cameras from different frames must not be compared.
struct PosedCamera {
  Eigen::Vector3d center = Eigen::Vector3d::Zero();
  Eigen::Vector3d dir = Eigen::Vector3d::UnitY();
  Intrinsics intrinsics;
  int width = 0;
  int height = 0;
  std::string frame;
};

// Unit viewing direction in ENU. Heading 0 is north, 90 is east; positive
// pitch tilts toward up.
Eigen::Vector3d HeadingToDirection(double heading_deg, double pitch_deg);

// A stable tag naming the ENU frame anchored at `origin`.
std::string EnuFrameTag(const GeodeticPoint& origin);

PosedCamera CameraFromGeotag(const GeoCamera& camera, const EnuFrame& frame);
PosedCamera CameraFromGeotag(const GeoCamera& camera, const GeoCamera& origin);

double CameraDistance(const PosedCamera& a, const PosedCamera& b);

// Angle between the two viewing directions in degrees, within [0, 180].
double ViewAngleDeg(const PosedCamera& a, const PosedCamera& b);

// Angle subtended at the camera center by the image corners (0, 0) and
// (width, height).
double DiagonalFovDeg(const Intrinsics& intrinsics, double width,
                      double height);
double DiagonalFovDeg(const PosedCamera& camera);

}  // namespace dgkit

#endif  // DGKIT_GEOMCORE_CAMERA_H_
