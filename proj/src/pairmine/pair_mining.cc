#include "dgkit/pairmine/pair_mining.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <unordered_map>
#include <utility>

#include "dgkit/geomcore/rays.h"
#include "dgkit/util/errors.h"

namespace dgkit {
namespace {

constexpr std::array<const char*, kNumMiningRules> kRuleNames = {
    "Distant",           "FrontFrontWideAngle",      "BehindBehindOverFov",
    "MixedNoFrustumOverlap", "PositiveNearbyConverging", "Indeterminate"};

}  // namespace

void MiningConfig::Validate() const {
  const auto fail = [](const std::string& what) {
    throw std::domain_error("invalid mining config: " + what);
  };
  if (!(distant_threshold > 0.0)) fail("distant_threshold must be positive");
  if (!(max_front_angle > 90.0 && max_front_angle < 180.0)) {
    fail("max_front_angle must lie in (90, 180)");
  }
  if (!(near_positive_distance > 0.0)) {
    fail("near_positive_distance must be positive");
  }
  if (!(max_positive_angle > 0.0 && max_positive_angle <= 90.0)) {
    fail("max_positive_angle must lie in (0, 90]");
  }
  if (min_candidate_inliers <= 0) fail("min_candidate_inliers must be positive");
  if (!(frustum.near > 0.0 && frustum.far > frustum.near)) {
    fail("frustum bounds require 0 < near < far");
  }
}

MatchCandidate MatchCandidate::Make(std::string id_a, std::string id_b,
                                    std::optional<int> num_inliers) {
  if (id_a.empty() || id_b.empty()) {
    throw UsageError("match candidate with empty image id");
  }
  if (id_a == id_b) throw UsageError("self-match candidate for '" + id_a + "'");
  if (id_b < id_a) std::swap(id_a, id_b);
  return MatchCandidate{std::move(id_a), std::move(id_b), num_inliers};
}

const char* VerdictName(Verdict verdict) {
  switch (verdict) {
    case Verdict::kNegative:
      return "Negative";
    case Verdict::kPositive:
      return "Positive";
    case Verdict::kUnknown:
      return "Unknown";
  }
  return "Unknown";
}

const char* MiningRuleName(MiningRule rule) {
  return kRuleNames[static_cast<std::size_t>(rule)];
}

std::optional<Verdict> ParseVerdict(const std::string& name) {
  for (const Verdict v :
       {Verdict::kNegative, Verdict::kPositive, Verdict::kUnknown}) {
    if (name == VerdictName(v)) return v;
  }
  return std::nullopt;
}

std::optional<MiningRule> ParseMiningRule(const std::string& name) {
  for (std::size_t i = 0; i < kNumMiningRules; ++i) {
    if (name == kRuleNames[i]) return static_cast<MiningRule>(i);
  }
  return std::nullopt;
}

Verdict PairLabel::verdict() const {
  switch (rule) {
    case MiningRule::kDistant:
    case MiningRule::kFrontFrontWideAngle:
    case MiningRule::kBehindBehindOverFov:
    case MiningRule::kMixedNoFrustumOverlap:
      return Verdict::kNegative;
    case MiningRule::kPositiveNearbyConverging:
      return Verdict::kPositive;
    case MiningRule::kIndeterminate:
      return Verdict::kUnknown;
  }
  return Verdict::kUnknown;
}

PairLabel LabelPair(const PosedCamera& a, const PosedCamera& b,
                    const MatchCandidate& candidate,
                    const MiningConfig& config) {
  if (a.frame != b.frame) {
    throw UsageError("cameras of pair (" + candidate.id_a + ", " +
                     candidate.id_b + ") are posed in different frames");
  }
  if (candidate.num_inliers &&
      *candidate.num_inliers < config.min_candidate_inliers) {
    return PairLabel::FromRule(MiningRule::kIndeterminate);
  }

  const double distance = CameraDistance(a, b);
  if (distance > config.distant_threshold) {
    return PairLabel::FromRule(MiningRule::kDistant);
  }

  const RayRelation relation = ClassifyRayRelation(a, b);
  const double angle = ViewAngleDeg(a, b);
  switch (relation.ray_case) {
    case RayCase::kFrontFront:
      if (angle > config.max_front_angle) {
        return PairLabel::FromRule(MiningRule::kFrontFrontWideAngle);
      }
      break;
    case RayCase::kBehindBehind:
      if (angle > std::min(DiagonalFovDeg(a), DiagonalFovDeg(b))) {
        return PairLabel::FromRule(MiningRule::kBehindBehindOverFov);
      }
      break;
    case RayCase::kMixed:
      if (!FrustumsOverlap(a, b, config.frustum)) {
        return PairLabel::FromRule(MiningRule::kMixedNoFrustumOverlap);
      }
      break;
  }

  if (relation.ray_case == RayCase::kFrontFront &&
      distance <= config.near_positive_distance &&
      angle <= config.max_positive_angle &&
      FrustumsOverlap(a, b, config.frustum)) {
    return PairLabel::FromRule(MiningRule::kPositiveNearbyConverging);
  }
  return PairLabel::FromRule(MiningRule::kIndeterminate);
}

std::size_t MiningResult::Count(Verdict verdict) const {
  std::size_t total = 0;
  for (std::size_t i = 0; i < kNumMiningRules; ++i) {
    if (PairLabel::FromRule(static_cast<MiningRule>(i)).verdict() == verdict) {
      total += rule_counts[i];
    }
  }
  return total;
}

GeodeticPoint DatasetOrigin(const std::vector<GeoCamera>& cameras) {
  GeodeticPoint origin;
  if (cameras.empty()) return origin;
  for (const GeoCamera& camera : cameras) {
    origin.lat += camera.position.lat;
    origin.lon += camera.position.lon;
    origin.alt += camera.position.alt;
  }
  const double n = static_cast<double>(cameras.size());
  origin.lat /= n;
  origin.lon /= n;
  origin.alt /= n;
  return origin;
}

MiningResult MineDataset(const std::vector<GeoCamera>& cameras,
                         const std::vector<MatchCandidate>& candidates,
                         const MiningConfig& config) {
  config.Validate();

  std::unordered_map<std::string, std::size_t> index;
  index.reserve(cameras.size());
  for (std::size_t i = 0; i < cameras.size(); ++i) {
    if (!index.emplace(cameras[i].id, i).second) {
      throw UsageError("duplicate camera id '" + cameras[i].id + "'");
    }
  }

  MiningResult result;
  result.enu_origin = DatasetOrigin(cameras);
  const EnuFrame frame(result.enu_origin);
  std::vector<std::optional<PosedCamera>> posed(cameras.size());
  const auto pose = [&](const std::string& id) -> const PosedCamera& {
    const auto it = index.find(id);
    if (it == index.end()) {
      throw UsageError("match candidate references unknown image id '" + id +
                       "'");
    }
    std::optional<PosedCamera>& slot = posed[it->second];
    if (!slot) slot = CameraFromGeotag(cameras[it->second], frame);
    return *slot;
  };

  result.pairs.reserve(candidates.size());
  for (const MatchCandidate& candidate : candidates) {
    const PosedCamera& a = pose(candidate.id_a);
    const PosedCamera& b = pose(candidate.id_b);
    const PairLabel label = LabelPair(a, b, candidate, config);
    ++result.rule_counts[static_cast<std::size_t>(label.rule)];
    result.pairs.push_back({candidate, label});
  }
  return result;
}

}  // namespace dgkit
