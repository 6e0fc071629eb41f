#include "dgkit/appio/report.h"

#include <cmath>
#include <fstream>
#include <set>

#include "dgkit/appio/formats.h"

namespace dgkit {
namespace {

constexpr char kReportFormat[] = "dgkit-report";
constexpr int kReportVersion = 1;

void Require(bool condition, const std::string& what) {
  if (!condition) throw ReportError("inconsistent report: " + what);
}

void ValidateMining(const nlohmann::json& mining) {
  std::size_t rule_sum = 0;
  for (const auto& [name, count] : mining.at("rules").items()) {
    Require(ParseMiningRule(name).has_value(), "unknown rule " + name);
    rule_sum += count.get<std::size_t>();
  }
  Require(rule_sum == mining.at("total").get<std::size_t>(),
          "mining rule counts do not sum to the total");
  std::size_t verdict_sum = 0;
  for (const auto& [name, count] : mining.at("verdicts").items()) {
    verdict_sum += count.get<std::size_t>();
  }
  Require(verdict_sum == rule_sum, "mining verdict counts do not sum to the total");
}

void ValidatePrune(const nlohmann::json& prune) {
  const auto total = prune.at("total_edges").get<std::size_t>();
  Require(prune.at("kept").get<std::size_t>() +
                  prune.at("removed").get<std::size_t>() ==
              total,
          "kept + removed != total_edges");
  const double tau = prune.at("tau").get<double>();
  Require(tau >= 0.0 && tau <= 1.0, "tau outside [0, 1]");
  std::set<std::string> seen;
  std::size_t members = 0;
  for (const auto& component : prune.at("components")) {
    const auto& nodes = component.at("nodes");
    Require(component.at("size").get<std::size_t>() == nodes.size(),
            "component size does not match its node list");
    for (const auto& node : nodes) {
      Require(seen.insert(node.get<std::string>()).second,
              "node in more than one component");
      ++members;
    }
  }
  Require(members == prune.at("num_nodes").get<std::size_t>(),
          "components do not cover every node");
}

void ValidateAlignment(const nlohmann::json& alignment) {
  std::vector<InlierCount> counts;
  for (const auto& component : alignment.at("components")) {
    InlierCount count{component.at("inliers").get<std::size_t>(),
                      component.at("probes").get<std::size_t>()};
    Require(count.inliers <= count.probes, "component with inliers > probes");
    counts.push_back(count);
  }
  Require(!counts.empty(), "alignment without components");
  const double ratio = PooledInlierRatio(counts);
  Require(std::abs(ratio - alignment.at("inlier_ratio").get<double>()) <= 1e-12,
          "inlier_ratio is not sum(inliers) / sum(probes)");
}

}  // namespace

nlohmann::json NewReport() {
  return {{"format", kReportFormat}, {"version", kReportVersion}};
}

nlohmann::json MiningSection(const MiningResult& result) {
  nlohmann::json rules = nlohmann::json::object();
  for (std::size_t i = 0; i < kNumMiningRules; ++i) {
    rules[MiningRuleName(static_cast<MiningRule>(i))] = result.rule_counts[i];
  }
  nlohmann::json verdicts = nlohmann::json::object();
  for (const Verdict v : {Verdict::kNegative, Verdict::kPositive, Verdict::kUnknown}) {
    verdicts[VerdictName(v)] = result.Count(v);
  }
  return {{"total", result.pairs.size()},
          {"rules", rules},
          {"verdicts", verdicts},
          {"enu_origin",
           {result.enu_origin.lat, result.enu_origin.lon, result.enu_origin.alt}}};
}

nlohmann::json PruneSection(const SceneGraph& input, const PruneResult& result,
                            double tau) {
  nlohmann::json components = nlohmann::json::array();
  for (const auto& component : result.report.components) {
    components.push_back({{"size", component.size()}, {"nodes", component}});
  }
  return {{"tau", tau},
          {"num_nodes", input.NumNodes()},
          {"total_edges", input.NumEdges()},
          {"kept", result.report.kept},
          {"removed", result.report.removed},
          {"num_components", result.report.components.size()},
          {"components", components}};
}

nlohmann::json AlignmentSection(const AlignmentReport& report,
                                const RansacConfig& config) {
  nlohmann::json components = nlohmann::json::array();
  for (const ComponentAlignment& c : report.per_component) {
    nlohmann::json entry = {{"component_id", c.component_id},
                            {"inliers", c.count.inliers},
                            {"probes", c.count.probes},
                            {"unverifiable", c.unverifiable}};
    if (c.transform) {
      const SimilarityTransform& t = *c.transform;
      nlohmann::json rotation = nlohmann::json::array();
      for (int r = 0; r < 3; ++r) {
        rotation.push_back({t.rotation(r, 0), t.rotation(r, 1), t.rotation(r, 2)});
      }
      entry["transform"] = {
          {"scale", t.scale},
          {"rotation", rotation},
          {"translation",
           {t.translation.x(), t.translation.y(), t.translation.z()}}};
    } else {
      entry["transform"] = nullptr;
    }
    components.push_back(entry);
  }
  return {{"inlier_threshold_m", config.inlier_threshold},
          {"max_iterations", config.max_iterations},
          {"confidence", config.confidence},
          {"seed", config.seed},
          {"components", components},
          {"inlier_ratio", report.inlier_ratio}};
}

void ValidateReport(const nlohmann::json& report) {
  try {
    Require(report.at("format") == kReportFormat, "not a dgkit report");
    Require(report.at("version") == kReportVersion, "unsupported report version");
    if (report.contains("mining")) ValidateMining(report["mining"]);
    if (report.contains("prune")) ValidatePrune(report["prune"]);
    if (report.contains("alignment")) ValidateAlignment(report["alignment"]);
  } catch (const nlohmann::json::exception& e) {
    throw ReportError(std::string("malformed report: ") + e.what());
  }
}

void WriteReportFile(const std::string& path, const nlohmann::json& report) {
  ValidateReport(report);
  std::ofstream out = OpenForWrite(path);
  out << report.dump(2) << '\n';
}

nlohmann::json ReadReportFile(const std::string& path) {
  std::ifstream in = OpenForRead(path);
  nlohmann::json report;
  try {
    report = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw ReportError("cannot parse report '" + path + "': " + e.what());
  }
  ValidateReport(report);
  return report;
}

}  // namespace dgkit
