#ifndef DGKIT_GEOVERIFY_SIMILARITY_TRANSFORM_H_
#define DGKIT_GEOVERIFY_SIMILARITY_TRANSFORM_H_

#include <vector>

#include <Eigen/Core>

namespace dgkit {

// x -> scale * rotation * x + translation, with scale > 0 and a proper
// rotation (det = +1).
struct SimilarityTransform {
  double scale = 1.0;
  Eigen::Matrix3d rotation = Eigen::Matrix3d::Identity();
  Eigen::Vector3d translation = Eigen::Vector3d::Zero();

  Eigen::Vector3d Apply(const Eigen::Vector3d& x) const {
    return scale * (rotation * x) + translation;
  }

  // True if scale > 0, R^T R = I within `tolerance` (max norm) and det R > 0.
  bool IsValid(double tolerance = 1e-9) const;
};

// Closed-form least-squares similarity from `src` to `dst` (Umeyama):
// minimizes sum |s R src_i + t - dst_i|^2 without reflections.
// Throws DegenerateInputError for fewer than 3 points, mismatched sizes,
// or collinear/coincident point sets.
SimilarityTransform EstimateSimilarityUmeyama(
    const std::vector<Eigen::Vector3d>& src,
    const std::vector<Eigen::Vector3d>& dst);

double SumSquaredResiduals(const SimilarityTransform& transform,
                           const std::vector<Eigen::Vector3d>& src,
                           const std::vector<Eigen::Vector3d>& dst);

}  // namespace dgkit

#endif  // DGKIT_GEOVERIFY_SIMILARITY_TRANSFORM_H_
