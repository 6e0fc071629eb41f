#include "dgkit/geomcore/rays.h"

#include <algorithm>
#include <array>
#include <utility>

#include <Eigen/Geometry>

namespace dgkit {
namespace {

RayCase CaseFromParameters(double t_a, double t_b) {
  if (t_a > 0.0 && t_b > 0.0) return RayCase::kFrontFront;
  if (t_a <= 0.0 && t_b <= 0.0) return RayCase::kBehindBehind;
  return RayCase::kMixed;
}

// Orders cameras so that the computation below sees the same operand order
// regardless of how the caller passed them.
bool CameraLess(const PosedCamera& a, const PosedCamera& b) {
  const auto key = [](const PosedCamera& c) {
    return std::array<double, 6>{c.center.x(), c.center.y(), c.center.z(),
                                 c.dir.x(),    c.dir.y(),    c.dir.z()};
  };
  return key(a) < key(b);
}

RayRelation ClassifyOrdered(const PosedCamera& a, const PosedCamera& b) {
  const Eigen::Vector3d offset = b.center - a.center;
  const double sin_angle = a.dir.cross(b.dir).norm();

  RayRelation relation;
  if (sin_angle < kParallelRaySinThreshold) {
    relation.t_a = a.dir.dot(offset);
    relation.t_b = -b.dir.dot(offset);
    relation.gap = (offset - relation.t_a * a.dir).norm();
  } else {
    // Minimize |a.c + t_a a.d - b.c - t_b b.d|^2 for unit directions.
    const double cosine = a.dir.dot(b.dir);
    const double da = a.dir.dot(offset);
    const double db = b.dir.dot(offset);
    const double denom = 1.0 - cosine * cosine;
    relation.t_a = (da - cosine * db) / denom;
    relation.t_b = (cosine * da - db) / denom;
    relation.gap = ((a.center + relation.t_a * a.dir) -
                    (b.center + relation.t_b * b.dir))
                       .norm();
  }
  relation.ray_case = CaseFromParameters(relation.t_a, relation.t_b);
  return relation;
}

}  // namespace

const char* RayCaseName(RayCase ray_case) {
  switch (ray_case) {
    case RayCase::kFrontFront:
      return "FrontFront";
    case RayCase::kBehindBehind:
      return "BehindBehind";
    case RayCase::kMixed:
      return "Mixed";
  }
  return "Unknown";
}

RayRelation ClassifyRayRelation(const PosedCamera& a, const PosedCamera& b) {
  if (!CameraLess(b, a)) return ClassifyOrdered(a, b);
  RayRelation swapped = ClassifyOrdered(b, a);
  std::swap(swapped.t_a, swapped.t_b);
  return swapped;
}

}  // namespace dgkit
