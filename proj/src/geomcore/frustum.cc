#include "dgkit/geomcore/frustum.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include <Eigen/Geometry>

namespace dgkit {
namespace {

struct Interval {
  double min = std::numeric_limits<double>::infinity();
  double max = -std::numeric_limits<double>::infinity();
};

Interval Project(const Frustum& frustum, const Eigen::Vector3d& axis) {
  Interval interval;
  for (const Eigen::Vector3d& v : frustum.vertices) {
    const double d = axis.dot(v);
    interval.min = std::min(interval.min, d);
    interval.max = std::max(interval.max, d);
  }
  return interval;
}

bool Separates(const Frustum& a, const Frustum& b, const Eigen::Vector3d& axis) {
  const Interval ia = Project(a, axis);
  const Interval ib = Project(b, axis);
  return ia.max < ib.min || ib.max < ia.min;
}

bool FrustumLess(const Frustum& a, const Frustum& b) {
  for (int i = 0; i < 8; ++i) {
    for (int k = 0; k < 3; ++k) {
      if (a.vertices[i][k] != b.vertices[i][k]) {
        return a.vertices[i][k] < b.vertices[i][k];
      }
    }
  }
  return false;
}

bool OverlapOrdered(const Frustum& a, const Frustum& b) {
  for (const Frustum* f : {&a, &b}) {
    for (const Eigen::Vector3d& normal : f->face_normals) {
      if (Separates(a, b, normal)) return false;
    }
  }
  for (const Eigen::Vector3d& ea : a.edges) {
    for (const Eigen::Vector3d& eb : b.edges) {
      const Eigen::Vector3d axis = ea.cross(eb);
      const double norm = axis.norm();
      // Parallel edges; their plane is covered by the face normals.
      if (norm <= 1e-12 * ea.norm() * eb.norm()) continue;
      if (Separates(a, b, axis / norm)) return false;
    }
  }
  return true;
}

}  // namespace

CameraAxes CameraAxesFromDirection(const Eigen::Vector3d& dir) {
  CameraAxes axes;
  axes.forward = dir.normalized();
  Eigen::Vector3d right = axes.forward.cross(Eigen::Vector3d::UnitZ());
  if (right.norm() < 1e-9) {
    // Looking straight up or down: orient the image so north is "up".
    right = axes.forward.z() > 0.0 ? Eigen::Vector3d(-1.0, 0.0, 0.0)
                                   : Eigen::Vector3d::UnitX();
    right = (right - right.dot(axes.forward) * axes.forward);
  }
  axes.right = right.normalized();
  axes.down = axes.forward.cross(axes.right);
  return axes;
}

double Frustum::PlaneDepth(const Eigen::Vector3d& point) const {
  // Faces 0 (near) and 1 (far) pass through vertices 0 and 4; the side face
  // k passes through the near-plane vertex k.
  double depth = std::numeric_limits<double>::infinity();
  depth = std::min(depth, -face_normals[0].dot(point - vertices[0]));
  depth = std::min(depth, -face_normals[1].dot(point - vertices[4]));
  for (int k = 0; k < 4; ++k) {
    depth = std::min(depth, -face_normals[2 + k].dot(point - vertices[k]));
  }
  return depth;
}

Frustum BuildFrustum(const PosedCamera& camera, const FrustumBounds& bounds) {
  if (!(bounds.near > 0.0) || !(bounds.far > bounds.near) ||
      !std::isfinite(bounds.far)) {
    throw std::domain_error("frustum bounds require 0 < near < far");
  }
  const CameraAxes axes = CameraAxesFromDirection(camera.dir);
  const Intrinsics& k = camera.intrinsics;
  const double us[4] = {0.0, static_cast<double>(camera.width),
                        static_cast<double>(camera.width), 0.0};
  const double vs[4] = {0.0, 0.0, static_cast<double>(camera.height),
                        static_cast<double>(camera.height)};

  Frustum frustum;
  std::array<Eigen::Vector3d, 4> rays;
  for (int i = 0; i < 4; ++i) {
    rays[i] = (us[i] - k.cx) / k.fx * axes.right +
              (vs[i] - k.cy) / k.fy * axes.down + axes.forward;
    frustum.vertices[i] = camera.center + bounds.near * rays[i];
    frustum.vertices[4 + i] = camera.center + bounds.far * rays[i];
  }

  frustum.face_normals[0] = -axes.forward;
  frustum.face_normals[1] = axes.forward;
  // Corners run clockwise in the image (x right, y down), so that
  // rays[i+1] x rays[i] points out of the pyramid.
  for (int i = 0; i < 4; ++i) {
    frustum.face_normals[2 + i] = rays[(i + 1) % 4].cross(rays[i]).normalized();
  }

  for (int i = 0; i < 4; ++i) {
    frustum.edges[i] = frustum.vertices[(i + 1) % 4] - frustum.vertices[i];
    frustum.edges[4 + i] =
        frustum.vertices[4 + (i + 1) % 4] - frustum.vertices[4 + i];
    frustum.edges[8 + i] = rays[i];
  }
  return frustum;
}

bool FrustumsOverlap(const Frustum& a, const Frustum& b) {
  return FrustumLess(b, a) ? OverlapOrdered(b, a) : OverlapOrdered(a, b);
}

bool FrustumsOverlap(const PosedCamera& a, const PosedCamera& b,
                     const FrustumBounds& bounds) {
  return FrustumsOverlap(BuildFrustum(a, bounds), BuildFrustum(b, bounds));
}

}  // namespace dgkit
