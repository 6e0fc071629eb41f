#include "dgkit/geoverify/ransac_similarity.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

#include "dgkit/util/errors.h"

namespace dgkit {
namespace {

constexpr int kSampleSize = 3;
constexpr int kMaxRefinements = 10;

struct Support {
  std::size_t num_inliers = 0;
  double residual_sum = std::numeric_limits<double>::max();

  bool BetterThan(const Support& other) const {
    if (num_inliers != other.num_inliers) {
      return num_inliers > other.num_inliers;
    }
    return residual_sum < other.residual_sum;
  }
};

Support Evaluate(const SimilarityTransform& transform,
                 const std::vector<Eigen::Vector3d>& src,
                 const std::vector<Eigen::Vector3d>& dst, double threshold,
                 std::vector<bool>* mask) {
  Support support;
  support.residual_sum = 0.0;
  mask->assign(src.size(), false);
  for (std::size_t i = 0; i < src.size(); ++i) {
    const double residual = (transform.Apply(src[i]) - dst[i]).norm();
    if (residual <= threshold) {
      (*mask)[i] = true;
      ++support.num_inliers;
      support.residual_sum += residual;
    }
  }
  return support;
}

void Select(const std::vector<bool>& mask,
            const std::vector<Eigen::Vector3d>& src,
            const std::vector<Eigen::Vector3d>& dst,
            std::vector<Eigen::Vector3d>* src_out,
            std::vector<Eigen::Vector3d>* dst_out) {
  src_out->clear();
  dst_out->clear();
  for (std::size_t i = 0; i < mask.size(); ++i) {
    if (!mask[i]) continue;
    src_out->push_back(src[i]);
    dst_out->push_back(dst[i]);
  }
}

}  // namespace

void RansacConfig::Validate() const {
  if (!(inlier_threshold > 0.0) || !std::isfinite(inlier_threshold)) {
    throw std::domain_error("RANSAC inlier threshold must be positive");
  }
  if (!(confidence > 0.0 && confidence < 1.0)) {
    throw std::domain_error("RANSAC confidence must lie in (0, 1)");
  }
  if (max_iterations <= 0) {
    throw std::domain_error("RANSAC max_iterations must be positive");
  }
}

int RequiredRansacIterations(double inlier_ratio, double confidence,
                             int max_iterations) {
  const double all_inlier_prob = std::pow(inlier_ratio, kSampleSize);
  if (all_inlier_prob <= 0.0) return max_iterations;
  if (all_inlier_prob >= 1.0) return 1;
  const double needed =
      std::ceil(std::log(1.0 - confidence) / std::log(1.0 - all_inlier_prob));
  if (!std::isfinite(needed) || needed >= max_iterations) return max_iterations;
  return std::max(1, static_cast<int>(needed));
}

RansacResult EstimateSimilarityRansac(
    const std::vector<ProbeCorrespondence>& correspondences,
    const RansacConfig& config) {
  config.Validate();
  const std::size_t n = correspondences.size();
  if (n < static_cast<std::size_t>(kSampleSize)) {
    throw DegenerateInputError(
        "similarity RANSAC needs at least 3 correspondences");
  }

  // Both sides are centered for conditioning; ECEF coordinates are ~6e6 m.
  Eigen::Vector3d src_center = Eigen::Vector3d::Zero();
  Eigen::Vector3d dst_center = Eigen::Vector3d::Zero();
  for (const ProbeCorrespondence& c : correspondences) {
    src_center += c.model_pos;
    dst_center += c.geo_pos.ToVector();
  }
  src_center /= static_cast<double>(n);
  dst_center /= static_cast<double>(n);
  std::vector<Eigen::Vector3d> src(n), dst(n);
  for (std::size_t i = 0; i < n; ++i) {
    src[i] = correspondences[i].model_pos - src_center;
    dst[i] = correspondences[i].geo_pos.ToVector() - dst_center;
  }

  std::mt19937_64 rng(config.seed);
  std::vector<std::size_t> indices(n);
  std::vector<Eigen::Vector3d> sample_src(kSampleSize), sample_dst(kSampleSize);
  std::vector<bool> mask;

  RansacResult result;
  SimilarityTransform best_transform;
  std::vector<bool> best_mask;
  Support best;
  best.num_inliers = 0;
  int required = config.max_iterations;

  int iteration = 0;
  while (iteration < std::min(required, config.max_iterations)) {
    ++iteration;
    // Partial Fisher-Yates draw of three distinct indices.
    for (std::size_t i = 0; i < n; ++i) indices[i] = i;
    for (int k = 0; k < kSampleSize; ++k) {
      std::uniform_int_distribution<std::size_t> pick(k, n - 1);
      std::swap(indices[k], indices[pick(rng)]);
      sample_src[k] = src[indices[k]];
      sample_dst[k] = dst[indices[k]];
    }

    SimilarityTransform candidate;
    try {
      candidate = EstimateSimilarityUmeyama(sample_src, sample_dst);
    } catch (const DegenerateInputError&) {
      continue;
    }
    const Support support =
        Evaluate(candidate, src, dst, config.inlier_threshold, &mask);
    if (!result.success || support.BetterThan(best)) {
      result.success = true;
      best = support;
      best_transform = candidate;
      best_mask = mask;
      required = RequiredRansacIterations(
          static_cast<double>(best.num_inliers) / static_cast<double>(n),
          config.confidence, config.max_iterations);
    }
  }
  result.num_iterations = iteration;
  if (!result.success) return result;

  // Refit on the consensus set while that does not lose support.
  std::vector<Eigen::Vector3d> inlier_src, inlier_dst;
  for (int round = 0; round < kMaxRefinements; ++round) {
    Select(best_mask, src, dst, &inlier_src, &inlier_dst);
    SimilarityTransform refit;
    try {
      refit = EstimateSimilarityUmeyama(inlier_src, inlier_dst);
    } catch (const DegenerateInputError&) {
      break;
    }
    const Support support =
        Evaluate(refit, src, dst, config.inlier_threshold, &mask);
    if (support.num_inliers < best.num_inliers) break;
    const bool changed = mask != best_mask;
    best = support;
    best_transform = refit;
    best_mask = mask;
    if (!changed) break;
  }

  // Undo the centering: y = s R (x - cs) + t + cd.
  result.transform = best_transform;
  result.transform.translation = best_transform.translation + dst_center -
                                 best_transform.scale *
                                     best_transform.rotation * src_center;
  // Re-score in the caller's coordinates so the mask matches the returned
  // transform exactly.
  std::vector<Eigen::Vector3d> model(n), geo(n);
  for (std::size_t i = 0; i < n; ++i) {
    model[i] = correspondences[i].model_pos;
    geo[i] = correspondences[i].geo_pos.ToVector();
  }
  result.num_inliers = Evaluate(result.transform, model, geo,
                                config.inlier_threshold, &result.inlier_mask)
                           .num_inliers;
  return result;
}

}  // namespace dgkit
