#ifndef DGKIT_DISAMBIG_SCENE_GRAPH_H_
#define DGKIT_DISAMBIG_SCENE_GRAPH_H_

#include <compare>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "dgkit/disambig/voting.h"

namespace dgkit {

// Pruning threshold used when none is given.
inline constexpr double kDefaultPruneThreshold = 0.8;

// Unordered image pair; `first` is always the lexicographically smaller id.
struct ImagePair {
  std::string first;
  std::string second;

  // Throws UsageError for identical or empty ids.
  static ImagePair Make(std::string a, std::string b);
  auto operator<=>(const ImagePair&) const = default;
};

// Per-edge payload. `score` is the final match probability; when the edge
// came from a classifier quad, score equals AggregateScores(*quad).
struct EdgeData {
  double score = 1.0;
  std::optional<ScoreQuad> quad;
  std::optional<int> num_inliers;

  // Both throw std::domain_error for scores outside [0, 1].
  static EdgeData FromScore(double score);
  static EdgeData FromQuad(const ScoreQuad& quad);
};

struct ScoredPair {
  std::string id_a;
  std::string id_b;
  EdgeData data;
};

struct PruneResult;

// Images as nodes, matched pairs as scored edges. Immutable once built.
class SceneGraph {
 public:
  SceneGraph() = default;

  const std::set<std::string>& nodes() const { return nodes_; }
  const std::map<ImagePair, EdgeData>& edges() const { return edges_; }
  std::size_t NumNodes() const { return nodes_.size(); }
  std::size_t NumEdges() const { return edges_.size(); }

  bool HasNode(const std::string& id) const { return nodes_.count(id) > 0; }
  // Nullptr when the pair is not an edge.
  const EdgeData* FindEdge(const std::string& a, const std::string& b) const;

 private:
  friend SceneGraph BuildSceneGraph(const std::vector<std::string>&,
                                    const std::vector<ScoredPair>&);
  friend PruneResult PruneSceneGraph(const SceneGraph&, double);

  std::set<std::string> nodes_;
  std::map<ImagePair, EdgeData> edges_;
};

// Every node is kept, isolated or not. Pairs are normalized to unordered
// form; an exact repeat is merged. Throws UsageError for an endpoint missing
// from `nodes`, a self-edge, or a repeated pair with a different score.
SceneGraph BuildSceneGraph(const std::vector<std::string>& nodes,
                           const std::vector<ScoredPair>& pairs);

// Connected components, largest first; ties broken by the smallest member id.
// Members of each component are sorted.
std::vector<std::vector<std::string>> ConnectedComponents(const SceneGraph& graph);

struct PruneReport {
  std::size_t kept = 0;
  std::size_t removed = 0;
  std::vector<std::vector<std::string>> components;
};

struct PruneResult {
  SceneGraph graph;
  PruneReport report;
};

// Drops every edge whose score is below `tau`; an edge scoring exactly `tau`
// survives. Throws std::domain_error for tau outside [0, 1].
PruneResult PruneSceneGraph(const SceneGraph& graph,
                            double tau = kDefaultPruneThreshold);

}  // namespace dgkit

#endif  // DGKIT_DISAMBIG_SCENE_GRAPH_H_
