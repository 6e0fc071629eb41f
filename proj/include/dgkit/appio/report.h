#ifndef DGKIT_APPIO_REPORT_H_
#define DGKIT_APPIO_REPORT_H_

#include <cstddef>
#include <stdexcept>
#include <string>

#include "json.hpp"

#include "dgkit/disambig/scene_graph.h"
#include "dgkit/geoverify/inlier_ratio.h"
#include "dgkit/pairmine/pair_mining.h"

namespace dgkit {

// A report document that violates its own counting invariants.
class ReportError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Empty report with format and version fields; sections are added under
// "mining", "prune" and "alignment".
nlohmann::json NewReport();

nlohmann::json MiningSection(const MiningResult& result);
nlohmann::json PruneSection(const SceneGraph& input, const PruneResult& result,
                            double tau);
nlohmann::json AlignmentSection(const AlignmentReport& report,
                                const RansacConfig& config);

// Checks that rule counts sum to the total, kept + removed equals the input
// edge count, components partition the nodes, every component has at most as
// many inliers as probes, and the inlier ratio equals the pooled ratio.
// Throws ReportError.
void ValidateReport(const nlohmann::json& report);

// Both validate.
void WriteReportFile(const std::string& path, const nlohmann::json& report);
nlohmann::json ReadReportFile(const std::string& path);

}  // namespace dgkit

#endif  // DGKIT_APPIO_REPORT_H_
