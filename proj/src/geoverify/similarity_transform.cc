#include "dgkit/geoverify/similarity_transform.h"

#include <cmath>

#include <Eigen/Dense>

#include "dgkit/util/errors.h"

namespace dgkit {
namespace {

// Relative rank tolerance on singular values of the centered point sets.
constexpr double kRankTolerance = 1e-10;

bool IsCollinear(const Eigen::Matrix3d& scatter) {
  const Eigen::Vector3d sv =
      Eigen::JacobiSVD<Eigen::Matrix3d>(scatter).singularValues();
  return !(sv(0) > 0.0) || sv(1) <= kRankTolerance * sv(0);
}

}  // namespace

bool SimilarityTransform::IsValid(double tolerance) const {
  if (!(scale > 0.0) || !std::isfinite(scale)) return false;
  const double orthogonality =
      (rotation.transpose() * rotation - Eigen::Matrix3d::Identity())
          .cwiseAbs()
          .maxCoeff();
  return orthogonality < tolerance && rotation.determinant() > 0.0 &&
         translation.allFinite();
}

SimilarityTransform EstimateSimilarityUmeyama(
    const std::vector<Eigen::Vector3d>& src,
    const std::vector<Eigen::Vector3d>& dst) {
  if (src.size() != dst.size()) {
    throw DegenerateInputError("similarity estimation needs equal point counts");
  }
  if (src.size() < 3) {
    throw DegenerateInputError("similarity estimation needs at least 3 points");
  }
  const double n = static_cast<double>(src.size());

  Eigen::Vector3d src_mean = Eigen::Vector3d::Zero();
  Eigen::Vector3d dst_mean = Eigen::Vector3d::Zero();
  for (std::size_t i = 0; i < src.size(); ++i) {
    src_mean += src[i];
    dst_mean += dst[i];
  }
  src_mean /= n;
  dst_mean /= n;

  Eigen::Matrix3d src_scatter = Eigen::Matrix3d::Zero();
  Eigen::Matrix3d dst_scatter = Eigen::Matrix3d::Zero();
  Eigen::Matrix3d cross = Eigen::Matrix3d::Zero();
  double src_variance = 0.0;
  for (std::size_t i = 0; i < src.size(); ++i) {
    const Eigen::Vector3d a = src[i] - src_mean;
    const Eigen::Vector3d b = dst[i] - dst_mean;
    src_scatter += a * a.transpose();
    dst_scatter += b * b.transpose();
    cross += b * a.transpose();
    src_variance += a.squaredNorm();
  }
  if (IsCollinear(src_scatter)) {
    throw DegenerateInputError("source points are collinear or coincident");
  }
  if (IsCollinear(dst_scatter)) {
    throw DegenerateInputError("target points are collinear or coincident");
  }
  cross /= n;
  src_variance /= n;

  const Eigen::JacobiSVD<Eigen::Matrix3d> svd(
      cross, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const Eigen::Matrix3d& u = svd.matrixU();
  const Eigen::Matrix3d& v = svd.matrixV();
  const Eigen::Vector3d& d = svd.singularValues();

  // Flip the axis of the smallest singular value when U V^T is a reflection.
  Eigen::Vector3d signs = Eigen::Vector3d::Ones();
  if (u.determinant() * v.determinant() < 0.0) signs(2) = -1.0;

  SimilarityTransform transform;
  transform.rotation = u * signs.asDiagonal() * v.transpose();
  transform.scale = d.dot(signs) / src_variance;
  transform.translation = dst_mean - transform.scale * transform.rotation * src_mean;
  return transform;
}

double SumSquaredResiduals(const SimilarityTransform& transform,
                           const std::vector<Eigen::Vector3d>& src,
                           const std::vector<Eigen::Vector3d>& dst) {
  double total = 0.0;
  for (std::size_t i = 0; i < src.size() && i < dst.size(); ++i) {
    total += (transform.Apply(src[i]) - dst[i]).squaredNorm();
  }
  return total;
}

}  // namespace dgkit
