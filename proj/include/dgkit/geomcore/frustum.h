#ifndef DGKIT_GEOMCORE_FRUSTUM_H_
#define DGKIT_GEOMCORE_FRUSTUM_H_

#include <array>

#include <Eigen/Core>

#include "dgkit/geomcore/camera.h"

namespace dgkit {

// Near/far truncation of the viewing pyramid, in meters along the optical
// axis. The defaults bound the capture distance of walk-around imagery.
struct FrustumBounds {
  double near = 0.5;
  double far = 200.0;
};

// Orthonormal camera axes in world coordinates: image x (right), image y
// (down) and the viewing direction. The horizon is kept level; a camera
// looking straight up or down uses north as its image "up".
struct CameraAxes {
  Eigen::Vector3d right;
  Eigen::Vector3d down;
  Eigen::Vector3d forward;
};

CameraAxes CameraAxesFromDirection(const Eigen::Vector3d& dir);

// A truncated rectangular pyramid. Vertices 0-3 lie on the near plane and
// 4-7 on the far plane, both in image-corner order (0,0), (w,0), (w,h), (0,h).
struct Frustum {
  std::array<Eigen::Vector3d, 8> vertices;
  // Outward unit normals: near, far, then the four side faces.
  std::array<Eigen::Vector3d, 6> face_normals;
  // Edge directions for the twelve edges (not normalized).
  std::array<Eigen::Vector3d, 12> edges;

  // Signed distance to the nearest face plane, positive inside. Outside the
  // polytope this under-estimates the Euclidean distance.
  double PlaneDepth(const Eigen::Vector3d& point) const;
  bool Contains(const Eigen::Vector3d& point) const {
    return PlaneDepth(point) >= 0.0;
  }
};

// Throws std::domain_error unless 0 < near < far.
Frustum BuildFrustum(const PosedCamera& camera, const FrustumBounds& bounds);

// Exact separating-axis test between the two truncated frustums. Touching
// frustums count as overlapping. Symmetric in its camera arguments.
bool FrustumsOverlap(const PosedCamera& a, const PosedCamera& b,
                     const FrustumBounds& bounds = {});
bool FrustumsOverlap(const Frustum& a, const Frustum& b);

}  // namespace dgkit

#endif  // DGKIT_GEOMCORE_FRUSTUM_H_
