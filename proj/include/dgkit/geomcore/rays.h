#ifndef DGKIT_GEOMCORE_RAYS_H_
#define DGKIT_GEOMCORE_RAYS_H_

#include "dgkit/geomcore/camera.h"

namespace dgkit {

// Where the two viewing rays come closest, relative to each camera.
enum class RayCase {
  kFrontFront,    // ahead of both cameras
  kBehindBehind,  // behind both cameras
  kMixed,         // ahead of one, behind the other
};

const char* RayCaseName(RayCase ray_case);

struct RayRelation {
  RayCase ray_case = RayCase::kMixed;
  // Signed distances along each viewing direction to the mutual closest
  // points. A parameter of exactly zero counts as behind.
  double t_a = 0.0;
  double t_b = 0.0;
  // Distance between the two closest points.
  double gap = 0.0;
};

// Rays whose directions are this close to (anti-)parallel, measured as
// |sin(angle)|, are classified by the position of the other camera instead.
inline constexpr double kParallelRaySinThreshold = 1e-8;

// Viewing rays are in general skew lines; the mutual closest points stand in
// for their intersection. Swapping the arguments swaps t_a and t_b exactly.
RayRelation ClassifyRayRelation(const PosedCamera& a, const PosedCamera& b);

}  // namespace dgkit

#endif  // DGKIT_GEOMCORE_RAYS_H_
