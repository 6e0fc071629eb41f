#include "dgkit/synth/synthetic_scene.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>
#include <stdexcept>

#include <Eigen/Geometry>

#include "dgkit/geomcore/frustum.h"
#include "dgkit/util/errors.h"
#include "dgkit/util/stable_hash.h"

namespace dgkit {
namespace {

constexpr double kDegToRad = std::numbers::pi / 180.0;
constexpr double kRadToDeg = 180.0 / std::numbers::pi;

// Independent random streams derived from the scene seed.
constexpr uint64_t kGeotagStream = 1;
constexpr uint64_t kOracleStream = 2;
constexpr uint64_t kFlipStream = 3;
constexpr uint64_t kFrameStream = 4;

std::string CameraId(int side, int index) {
  char buffer[32];
  std::snprintf(buffer, sizeof(buffer), "s%d_c%03d", side, index);
  return buffer;
}

Eigen::Matrix3d RotationAboutUp(double angle_rad) {
  return Eigen::AngleAxisd(angle_rad, Eigen::Vector3d::UnitZ()).toRotationMatrix();
}

std::mt19937_64 PairStream(const SynthScene& scene, uint64_t stream,
                           const ImagePair& pair) {
  const uint64_t key = StableHash(pair.first + "\n" + pair.second);
  return std::mt19937_64(MixSeed(MixSeed(scene.config.seed, stream), key));
}

SimilarityTransform RandomFrame(std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  std::uniform_real_distribution<double> log_scale(std::log(0.2), std::log(5.0));
  std::uniform_real_distribution<double> offset(-100.0, 100.0);
  Eigen::Quaterniond q(normal(rng), normal(rng), normal(rng), normal(rng));
  q.normalize();
  SimilarityTransform frame;
  frame.scale = std::exp(log_scale(rng));
  frame.rotation = q.toRotationMatrix();
  frame.translation = Eigen::Vector3d(offset(rng), offset(rng), offset(rng));
  return frame;
}

}  // namespace

void SynthConfig::Validate() const {
  const auto fail = [](const std::string& what) {
    throw std::domain_error("invalid synth config: " + what);
  };
  if (sides < 2) fail("sides must be at least 2");
  if (cams_per_side < 1) fail("cams_per_side must be positive");
  if (!(structure_radius > 0.0)) fail("structure_radius must be positive");
  if (!(ring_radius > structure_radius)) {
    fail("ring_radius must exceed structure_radius");
  }
  if (!(arc_fraction > 0.0 && arc_fraction <= 1.0)) {
    fail("arc_fraction must lie in (0, 1]");
  }
  if (!(noise_std >= 0.0) || !std::isfinite(noise_std)) {
    fail("noise_std must be non-negative");
  }
  if (true_match_reach < 1 || doppelganger_reach < 0) fail("invalid reach");
  if (inliers_per_match < 0) fail("inliers_per_match must be non-negative");
  if (!(intrinsics.fx > 0.0 && intrinsics.fy > 0.0) || width <= 0 ||
      height <= 0) {
    fail("invalid camera intrinsics");
  }
  if (geo_anchor.lat < -89.0 || geo_anchor.lat > 89.0) {
    fail("geo_anchor latitude must lie in [-89, 89]");
  }
}

const char* PairTruthName(PairTruth truth) {
  switch (truth) {
    case PairTruth::kTrueMatch:
      return "TrueMatch";
    case PairTruth::kDoppelganger:
      return "Doppelganger";
    case PairTruth::kUnrelated:
      return "Unrelated";
  }
  return "Unrelated";
}

PairTruth SynthScene::Truth(const std::string& a, const std::string& b) const {
  if (a == b) return PairTruth::kUnrelated;
  const auto it = gt_pair_labels.find(a < b ? ImagePair{a, b} : ImagePair{b, a});
  return it == gt_pair_labels.end() ? PairTruth::kUnrelated : it->second;
}

int SynthScene::SideOf(const std::string& id) const {
  for (std::size_t i = 0; i < cameras.size(); ++i) {
    if (cameras[i].id == id) return side[i];
  }
  throw UsageError("unknown synthetic camera id '" + id + "'");
}

SynthScene GenerateScene(const SynthConfig& config) {
  config.Validate();
  SynthScene scene;
  scene.config = config;

  const int n = config.cams_per_side;
  const double sector = 2.0 * std::numbers::pi / config.sides;
  const double arc = config.arc_fraction * sector;
  const EnuFrame frame(config.geo_anchor);

  std::mt19937_64 rng(MixSeed(config.seed, kGeotagStream));
  // Per-axis deviation giving the configured 2D RMS displacement.
  std::normal_distribution<double> jitter(0.0, config.noise_std / std::sqrt(2.0));

  for (int s = 0; s < config.sides; ++s) {
    const Eigen::Matrix3d side_rotation = RotationAboutUp(s * sector);
    for (int k = 0; k < n; ++k) {
      // Side 0 is centered on east; each side is side 0 rotated about up.
      const double phi = -0.5 * arc + arc * (k + 0.5) / n;
      const Eigen::Vector3d base(config.ring_radius * std::cos(phi),
                                 config.ring_radius * std::sin(phi), 0.0);
      const Eigen::Vector3d position = s == 0 ? base : side_rotation * base;
      scene.true_positions.push_back(position);
      scene.side.push_back(s);
      scene.corrected_layout.push_back(position);
      scene.corrupted_layout.push_back(base);

      Eigen::Vector3d tagged = position;
      if (config.noise_std > 0.0) {
        tagged.x() += jitter(rng);
        tagged.y() += jitter(rng);
      }
      GeoCamera camera;
      camera.id = CameraId(s, k);
      camera.position = EcefToWgs84(frame.ToEcef(tagged));
      // Compass heading toward the structure center.
      double heading = std::atan2(-position.x(), -position.y()) * kRadToDeg;
      if (heading < 0.0) heading += 360.0;
      camera.heading = heading;
      camera.pitch = 0.0;
      camera.intrinsics = config.intrinsics;
      camera.width = config.width;
      camera.height = config.height;
      scene.cameras.push_back(std::move(camera));
    }
  }

  // Frustum overlap of true-match candidates is checked on the noise-free
  // geometry.
  std::vector<PosedCamera> posed;
  posed.reserve(scene.cameras.size());
  for (std::size_t i = 0; i < scene.cameras.size(); ++i) {
    PosedCamera camera;
    camera.center = scene.true_positions[i];
    camera.dir = HeadingToDirection(scene.cameras[i].heading, 0.0);
    camera.intrinsics = config.intrinsics;
    camera.width = config.width;
    camera.height = config.height;
    posed.push_back(camera);
  }

  std::vector<ScoredPair> edges;
  std::vector<std::string> nodes;
  for (const GeoCamera& camera : scene.cameras) nodes.push_back(camera.id);
  const auto add_edge = [&](int i, int j, PairTruth truth) {
    ImagePair pair = ImagePair::Make(scene.cameras[i].id, scene.cameras[j].id);
    scene.gt_pair_labels.emplace(pair, truth);
    EdgeData data = EdgeData::FromScore(1.0);
    data.num_inliers = config.inliers_per_match;
    edges.push_back({pair.first, pair.second, data});
  };
  for (int s = 0; s < config.sides; ++s) {
    for (int k = 0; k < n; ++k) {
      const int i = s * n + k;
      for (int l = k + 1; l <= std::min(n - 1, k + config.true_match_reach); ++l) {
        const int j = s * n + l;
        if (FrustumsOverlap(posed[i], posed[j])) {
          add_edge(i, j, PairTruth::kTrueMatch);
        }
      }
      for (int t = s + 1; t < config.sides; ++t) {
        const int lo = std::max(0, k - config.doppelganger_reach);
        const int hi = std::min(n - 1, k + config.doppelganger_reach);
        for (int l = lo; l <= hi; ++l) {
          add_edge(i, t * n + l, PairTruth::kDoppelganger);
        }
      }
    }
  }
  scene.match_graph = BuildSceneGraph(nodes, edges);
  return scene;
}

ScoreQuad OracleQuad(const SynthScene& scene, const ImagePair& pair) {
  const PairTruth truth = scene.Truth(pair.first, pair.second);
  if (truth == PairTruth::kUnrelated) {
    throw UsageError("pair (" + pair.first + ", " + pair.second +
                     ") is not a match-graph edge");
  }
  std::mt19937_64 rng = PairStream(scene, kOracleStream, pair);
  std::uniform_real_distribution<double> band =
      truth == PairTruth::kTrueMatch
          ? std::uniform_real_distribution<double>(0.85, 1.0)
          : std::uniform_real_distribution<double>(0.0, 0.15);
  ScoreQuad quad;
  for (double& v : quad.s) v = band(rng);
  return quad;
}

std::vector<ScoredQuadPair> AdversarialQuads(const SynthScene& scene,
                                             double flip_fraction) {
  if (!(flip_fraction >= 0.0 && flip_fraction < 0.5)) {
    throw std::domain_error("flip_fraction must lie in [0, 0.5)");
  }
  std::vector<ScoredQuadPair> scored;
  for (const auto& [pair, data] : scene.match_graph.edges()) {
    scored.push_back({pair, OracleQuad(scene, pair), false});
  }

  const auto num_flips = static_cast<std::size_t>(
      std::llround(flip_fraction * static_cast<double>(scored.size())));
  std::vector<std::size_t> order(scored.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::mt19937_64 rng(MixSeed(scene.config.seed, kFlipStream));
  std::shuffle(order.begin(), order.end(), rng);

  std::uniform_real_distribution<double> high(0.55, 1.0);
  std::uniform_real_distribution<double> low(0.0, 0.45);
  for (std::size_t f = 0; f < num_flips; ++f) {
    ScoredQuadPair& entry = scored[order[f]];
    entry.quad.s = {high(rng), high(rng), low(rng), low(rng)};
    std::shuffle(entry.quad.s.begin(), entry.quad.s.end(), rng);
    entry.ambiguous = true;
  }
  return scored;
}

SceneGraph ScoredSceneGraph(const SynthScene& scene,
                            const std::vector<ScoredQuadPair>& quads) {
  std::vector<std::string> nodes;
  for (const GeoCamera& camera : scene.cameras) nodes.push_back(camera.id);
  std::vector<ScoredPair> pairs;
  pairs.reserve(quads.size());
  for (const ScoredQuadPair& q : quads) {
    EdgeData data = EdgeData::FromQuad(q.quad);
    if (const EdgeData* edge =
            scene.match_graph.FindEdge(q.pair.first, q.pair.second)) {
      data.num_inliers = edge->num_inliers;
    }
    pairs.push_back({q.pair.first, q.pair.second, data});
  }
  return BuildSceneGraph(nodes, pairs);
}

std::vector<ProbeComponent> MakeProbeComponents(const SynthScene& scene,
                                                LayoutKind layout) {
  std::mt19937_64 rng(MixSeed(scene.config.seed, kFrameStream));
  const bool corrected = layout == LayoutKind::kCorrected;
  const int num_components = corrected ? scene.config.sides : 1;
  std::vector<ProbeComponent> components(num_components);
  std::vector<SimilarityTransform> frames;
  for (int c = 0; c < num_components; ++c) {
    components[c].component_id =
        corrected ? "side" + std::to_string(c) : std::string("model");
    frames.push_back(RandomFrame(rng));
  }
  for (std::size_t i = 0; i < scene.cameras.size(); ++i) {
    const int c = corrected ? scene.side[i] : 0;
    const Eigen::Vector3d& local =
        corrected ? scene.corrected_layout[i] : scene.corrupted_layout[i];
    ProbeCorrespondence probe;
    probe.probe_id = scene.cameras[i].id;
    probe.model_pos = frames[c].Apply(local);
    probe.geo_pos = Wgs84ToEcef(scene.cameras[i].position);
    components[c].correspondences.push_back(std::move(probe));
  }
  return components;
}

PurityStats ComponentPurity(
    const SynthScene& scene,
    const std::vector<std::vector<std::string>>& components) {
  PurityStats stats;
  std::size_t majority_total = 0;
  std::size_t total = 0;
  std::map<std::string, int> side_of;
  for (std::size_t i = 0; i < scene.cameras.size(); ++i) {
    side_of[scene.cameras[i].id] = scene.side[i];
  }
  for (const auto& component : components) {
    if (component.empty()) continue;
    std::map<int, std::size_t> counts;
    for (const std::string& id : component) {
      const auto it = side_of.find(id);
      if (it == side_of.end()) {
        throw UsageError("unknown synthetic camera id '" + id + "'");
      }
      ++counts[it->second];
    }
    std::size_t majority = 0;
    for (const auto& [s, count] : counts) majority = std::max(majority, count);
    stats.min_component =
        std::min(stats.min_component,
                 static_cast<double>(majority) / static_cast<double>(component.size()));
    majority_total += majority;
    total += component.size();
  }
  if (total > 0) {
    stats.overall = static_cast<double>(majority_total) / static_cast<double>(total);
  }
  return stats;
}

}  // namespace dgkit
