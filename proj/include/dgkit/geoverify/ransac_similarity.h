#ifndef DGKIT_GEOVERIFY_RANSAC_SIMILARITY_H_
#define DGKIT_GEOVERIFY_RANSAC_SIMILARITY_H_

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "dgkit/geomcore/geodesy.h"
#include "dgkit/geoverify/similarity_transform.h"

namespace dgkit {

// A probe image registered into a reconstruction: its position in the model
// frame paired with its geotag.
struct ProbeCorrespondence {
  std::string probe_id;
  Eigen::Vector3d model_pos = Eigen::Vector3d::Zero();
  EcefPoint geo_pos;
};

struct RansacConfig {
  // Maximum residual, in meters, for a probe to count as an inlier.
  double inlier_threshold = 5.0;
  int max_iterations = 10000;
  double confidence = 0.999;
  uint64_t seed = 0;

  // Throws std::domain_error on invalid values.
  void Validate() const;
};

struct RansacResult {
  bool success = false;
  // Maps model positions to ECEF meters.
  SimilarityTransform transform;
  // One flag per correspondence; empty when no model could be fitted.
  std::vector<bool> inlier_mask;
  std::size_t num_inliers = 0;
  int num_iterations = 0;
};

// Number of minimal samples needed to draw an all-inlier sample with the given
// confidence when a fraction `inlier_ratio` of the data are inliers.
int RequiredRansacIterations(double inlier_ratio, double confidence,
                             int max_iterations);

// RANSAC over 3-point minimal samples with Umeyama fits, followed by
// refitting on the consensus set. Every flagged inlier has residual at most
// the threshold under the returned transform. Deterministic for a fixed seed.
// Throws DegenerateInputError for fewer than 3 correspondences.
RansacResult EstimateSimilarityRansac(
    const std::vector<ProbeCorrespondence>& correspondences,
    const RansacConfig& config);

}  // namespace dgkit

#endif  // DGKIT_GEOVERIFY_RANSAC_SIMILARITY_H_
