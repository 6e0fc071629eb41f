#ifndef DGKIT_GEOVERIFY_INLIER_RATIO_H_
#define DGKIT_GEOVERIFY_INLIER_RATIO_H_

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "dgkit/geoverify/ransac_similarity.h"
#include "dgkit/geoverify/similarity_transform.h"

namespace dgkit {

struct InlierCount {
  std::size_t inliers = 0;  // RANSAC inliers in the component
  std::size_t probes = 0;   // registered probes in the component
};

// Probe-weighted mean of the per-component inlier ratios, which equals
// sum(inliers) / sum(probes). Throws UndefinedRatioError when there are no
// probes at all and std::domain_error when a component has more inliers than
// probes.
double PooledInlierRatio(const std::vector<InlierCount>& components);

struct ProbeComponent {
  std::string component_id;
  std::vector<ProbeCorrespondence> correspondences;
};

struct ComponentAlignment {
  std::string component_id;
  // Absent when the component could not be aligned.
  std::optional<SimilarityTransform> transform;
  InlierCount count;
  // Fewer than 3 probes: counted with zero inliers.
  bool unverifiable = false;
};

struct AlignmentReport {
  std::vector<ComponentAlignment> per_component;
  double inlier_ratio = 0.0;
};

// Aligns every component independently and pools the inlier ratio. Each
// component's RANSAC stream is seeded from (config.seed, component_id), and
// its probes are processed in probe-id order, so the result does not depend
// on input ordering. Throws UsageError for an empty component list, a
// repeated component id, or a probe listed in more than one component.
AlignmentReport VerifyModel(const std::vector<ProbeComponent>& components,
                            const RansacConfig& config);

}  // namespace dgkit

#endif  // DGKIT_GEOVERIFY_INLIER_RATIO_H_
