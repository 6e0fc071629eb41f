#ifndef DGKIT_SYNTH_SYNTHETIC_SCENE_H_
#define DGKIT_SYNTH_SYNTHETIC_SCENE_H_

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "dgkit/disambig/scene_graph.h"
#include "dgkit/disambig/voting.h"
#include "dgkit/geomcore/camera.h"
#include "dgkit/geomcore/geodesy.h"
#include "dgkit/geoverify/inlier_ratio.h"

namespace dgkit {

// A structure with `sides`-fold rotational symmetry, photographed from a ring
// of cameras. Each side's cameras occupy an arc of the ring centered on that
// side and look at the structure center.
struct SynthConfig {
  int sides = 2;
  int cams_per_side = 40;
  double ring_radius = 30.0;       // meters
  double structure_radius = 10.0;  // meters
  // Fraction of each side's angular sector covered by its camera arc.
  double arc_fraction = 0.6;
  GeodeticPoint geo_anchor{47.3769, 8.5417, 408.0};
  // Horizontal GPS error, as the RMS of the 2D displacement (DRMS). Altitude
  // is not perturbed.
  double noise_std = 1.0;
  // Same-side ring neighbors within this index distance are true matches.
  int true_match_reach = 3;
  // Cameras on different sides within this index distance of each other's
  // rotated position are doppelgangers.
  int doppelganger_reach = 2;
  // Verified feature matches reported for every matched pair.
  int inliers_per_match = 100;
  Intrinsics intrinsics{1000.0, 1000.0, 512.0, 384.0};
  int width = 1024;
  int height = 768;
  uint64_t seed = 0;

  // Throws std::domain_error on invalid values.
  void Validate() const;
};

enum class PairTruth { kTrueMatch, kDoppelganger, kUnrelated };

const char* PairTruthName(PairTruth truth);

struct SynthScene {
  SynthConfig config;
  // Ordered side by side; camera k of side s has index s * cams_per_side + k
  // and id "s<s>_c<kkk>".
  std::vector<GeoCamera> cameras;
  std::vector<int> side;
  // Noise-free camera centers, ENU about config.geo_anchor.
  std::vector<Eigen::Vector3d> true_positions;
  // Defined for every match-graph edge; other pairs are unrelated.
  std::map<ImagePair, PairTruth> gt_pair_labels;
  // Edges are the true-match and doppelganger pairs, each with score 1 and
  // config.inliers_per_match inliers.
  SceneGraph match_graph;
  // What a doppelganger-corrupted reconstruction produces: every side rotated
  // onto side 0, so symmetric cameras coincide.
  std::vector<Eigen::Vector3d> corrupted_layout;
  // The correct reconstruction (true positions).
  std::vector<Eigen::Vector3d> corrected_layout;

  PairTruth Truth(const std::string& a, const std::string& b) const;
  int SideOf(const std::string& id) const;
};

// Deterministic for a given config (including its seed).
SynthScene GenerateScene(const SynthConfig& config);

// Stand-in classifier output for a match-graph edge: true matches get four
// scores in [0.85, 1], doppelgangers four in [0, 0.15]. Depends only on the
// scene seed and the pair. Throws UsageError for a non-edge.
ScoreQuad OracleQuad(const SynthScene& scene, const ImagePair& pair);

struct ScoredQuadPair {
  ImagePair pair;
  ScoreQuad quad;
  bool ambiguous = false;
};

// Oracle quads for every edge, except that a seeded random `flip_fraction`
// of the edges get ambiguous quads (two scores above 0.5, two below).
// Throws std::domain_error unless 0 <= flip_fraction < 0.5.
std::vector<ScoredQuadPair> AdversarialQuads(const SynthScene& scene,
                                             double flip_fraction);

// Scene graph over all cameras with edges scored by the given quads.
SceneGraph ScoredSceneGraph(const SynthScene& scene,
                            const std::vector<ScoredQuadPair>& quads);

enum class LayoutKind { kCorrupted, kCorrected };

// Every camera doubles as a geotagged probe. The corrected layout is split
// into one component per side, the corrupted layout is a single component;
// each component lives in its own randomly chosen similarity frame.
std::vector<ProbeComponent> MakeProbeComponents(const SynthScene& scene,
                                                LayoutKind layout);

// Largest-majority share of side membership per component, and overall
// (weighted by component size).
struct PurityStats {
  double min_component = 1.0;
  double overall = 1.0;
};
PurityStats ComponentPurity(const SynthScene& scene,
                            const std::vector<std::vector<std::string>>& components);

}  // namespace dgkit

#endif  // DGKIT_SYNTH_SYNTHETIC_SCENE_H_
