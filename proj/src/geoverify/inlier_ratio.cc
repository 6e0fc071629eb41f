#include "dgkit/geoverify/inlier_ratio.h"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "dgkit/util/errors.h"
#include "dgkit/util/stable_hash.h"

namespace dgkit {

double PooledInlierRatio(const std::vector<InlierCount>& components) {
  std::size_t inliers = 0;
  std::size_t probes = 0;
  for (const InlierCount& c : components) {
    if (c.inliers > c.probes) {
      throw std::domain_error("component has more inliers than probes");
    }
    inliers += c.inliers;
    probes += c.probes;
  }
  if (probes == 0) {
    throw UndefinedRatioError("inlier ratio undefined without probes");
  }
  return static_cast<double>(inliers) / static_cast<double>(probes);
}

AlignmentReport VerifyModel(const std::vector<ProbeComponent>& components,
                            const RansacConfig& config) {
  config.Validate();
  if (components.empty()) {
    throw UsageError("geo-verification needs at least one component");
  }
  std::set<std::string> component_ids;
  std::set<std::string> probe_ids;
  for (const ProbeComponent& component : components) {
    if (!component_ids.insert(component.component_id).second) {
      throw UsageError("repeated component id '" + component.component_id +
                       "'");
    }
    for (const ProbeCorrespondence& c : component.correspondences) {
      if (!probe_ids.insert(c.probe_id).second) {
        throw UsageError("probe '" + c.probe_id +
                         "' is registered in more than one component");
      }
    }
  }

  AlignmentReport report;
  std::vector<InlierCount> counts;
  for (const ProbeComponent& component : components) {
    ComponentAlignment alignment;
    alignment.component_id = component.component_id;
    alignment.count.probes = component.correspondences.size();

    if (component.correspondences.size() < 3) {
      alignment.unverifiable = true;
    } else {
      std::vector<ProbeCorrespondence> sorted = component.correspondences;
      std::sort(sorted.begin(), sorted.end(),
                [](const ProbeCorrespondence& a, const ProbeCorrespondence& b) {
                  return a.probe_id < b.probe_id;
                });
      RansacConfig component_config = config;
      component_config.seed =
          MixSeed(config.seed, StableHash(component.component_id));
      const RansacResult ransac =
          EstimateSimilarityRansac(sorted, component_config);
      if (ransac.success) {
        alignment.transform = ransac.transform;
        alignment.count.inliers = ransac.num_inliers;
      }
    }
    counts.push_back(alignment.count);
    report.per_component.push_back(std::move(alignment));
  }
  report.inlier_ratio = PooledInlierRatio(counts);
  return report;
}

}  // namespace dgkit
