#ifndef DGKIT_PAIRMINE_PAIR_MINING_H_
#define DGKIT_PAIRMINE_PAIR_MINING_H_

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "dgkit/geomcore/camera.h"
#include "dgkit/geomcore/frustum.h"
#include "dgkit/geomcore/geodesy.h"

namespace dgkit {

// Thresholds for labeling matched pairs from camera geometry. Distances are
// meters, angles degrees.
struct MiningConfig {
  // Pairs farther apart than this are doppelgangers.
  double distant_threshold = 150.0;
  // Rays meeting in front of both cameras at a wider angle than this.
  double max_front_angle = 160.0;
  // Positive pairs must be at most this far apart ...
  double near_positive_distance = 15.0;
  // ... and differ in viewing direction by at most this much.
  double max_positive_angle = 45.0;
  // Candidates with fewer verified feature matches are left unlabeled.
  int min_candidate_inliers = 15;
  FrustumBounds frustum;

  // Throws std::domain_error when a threshold is out of range.
  void Validate() const;
};

// An unordered matched image pair. Construct through Make() to get the
// normalized id order.
struct MatchCandidate {
  std::string id_a;
  std::string id_b;
  std::optional<int> num_inliers;

  // Throws UsageError if the two ids are equal or empty.
  static MatchCandidate Make(std::string id_a, std::string id_b,
                             std::optional<int> num_inliers = std::nullopt);
};

enum class Verdict { kNegative, kPositive, kUnknown };

enum class MiningRule {
  kDistant,
  kFrontFrontWideAngle,
  kBehindBehindOverFov,
  kMixedNoFrustumOverlap,
  kPositiveNearbyConverging,
  kIndeterminate,
};

inline constexpr std::size_t kNumMiningRules = 6;

const char* VerdictName(Verdict verdict);
const char* MiningRuleName(MiningRule rule);
// Inverse of the name functions; return nullopt for unknown names.
std::optional<Verdict> ParseVerdict(const std::string& name);
std::optional<MiningRule> ParseMiningRule(const std::string& name);

// The verdict is implied by the rule that fired.
struct PairLabel {
  MiningRule rule = MiningRule::kIndeterminate;

  static PairLabel FromRule(MiningRule rule) { return PairLabel{rule}; }
  Verdict verdict() const;
  bool operator==(const PairLabel&) const = default;
};

// Applies the rules in fixed order; the first that fires wins:
//   0. too few inliers (when known)            -> Unknown
//   1. centers farther than distant_threshold  -> Negative
//   2. FrontFront rays, view angle too wide    -> Negative
//   3. BehindBehind rays, angle > diagonal FOV -> Negative
//   4. Mixed rays, frustums disjoint           -> Negative
//   5. close, converging, overlapping          -> Positive
//   6. otherwise                               -> Unknown
// Throws UsageError if the cameras are posed in different frames.
PairLabel LabelPair(const PosedCamera& a, const PosedCamera& b,
                    const MatchCandidate& candidate, const MiningConfig& config);

struct LabeledPair {
  MatchCandidate candidate;
  PairLabel label;
};

struct MiningResult {
  std::vector<LabeledPair> pairs;
  // Indexed by MiningRule.
  std::array<std::size_t, kNumMiningRules> rule_counts{};
  GeodeticPoint enu_origin;

  std::size_t Count(MiningRule rule) const {
    return rule_counts[static_cast<std::size_t>(rule)];
  }
  std::size_t Count(Verdict verdict) const;
};

// Centroid of the camera geotags; used as the shared ENU origin.
GeodeticPoint DatasetOrigin(const std::vector<GeoCamera>& cameras);

// Labels every candidate, in input order. Throws UsageError naming the id
// when a candidate references a camera that is not in `cameras`, or when
// camera ids repeat.
MiningResult MineDataset(const std::vector<GeoCamera>& cameras,
                         const std::vector<MatchCandidate>& candidates,
                         const MiningConfig& config);

}  // namespace dgkit

#endif  // DGKIT_PAIRMINE_PAIR_MINING_H_
