#include "dgkit/disambig/scene_graph.h"

#include <algorithm>
#include <array>
#include <stdexcept>
#include <unordered_map>
#include <utility>

#include "dgkit/disambig/union_find.h"
#include "dgkit/util/errors.h"

namespace dgkit {
namespace {

void CheckProbability(double score) {
  if (!(score >= 0.0 && score <= 1.0)) {
    throw std::domain_error("edge score outside [0, 1]: " +
                            std::to_string(score));
  }
}

}  // namespace

ImagePair ImagePair::Make(std::string a, std::string b) {
  if (a.empty() || b.empty()) throw UsageError("image pair with empty id");
  if (a == b) throw UsageError("self-edge on image '" + a + "'");
  if (b < a) std::swap(a, b);
  return ImagePair{std::move(a), std::move(b)};
}

EdgeData EdgeData::FromScore(double score) {
  CheckProbability(score);
  EdgeData data;
  data.score = score;
  return data;
}

EdgeData EdgeData::FromQuad(const ScoreQuad& quad) {
  quad.Validate();
  EdgeData data;
  data.score = AggregateScores(quad);
  data.quad = quad;
  return data;
}

const EdgeData* SceneGraph::FindEdge(const std::string& a,
                                     const std::string& b) const {
  if (a == b) return nullptr;
  const auto it = edges_.find(a < b ? ImagePair{a, b} : ImagePair{b, a});
  return it == edges_.end() ? nullptr : &it->second;
}

SceneGraph BuildSceneGraph(const std::vector<std::string>& nodes,
                           const std::vector<ScoredPair>& pairs) {
  SceneGraph graph;
  graph.nodes_.insert(nodes.begin(), nodes.end());
  for (const ScoredPair& pair : pairs) {
    for (const std::string* id : {&pair.id_a, &pair.id_b}) {
      if (!graph.HasNode(*id)) {
        throw UsageError("edge (" + pair.id_a + ", " + pair.id_b +
                         ") references unknown node '" + *id + "'");
      }
    }
    CheckProbability(pair.data.score);
    if (pair.data.quad && AggregateScores(*pair.data.quad) != pair.data.score) {
      throw UsageError("edge (" + pair.id_a + ", " + pair.id_b +
                       ") score disagrees with its score quad");
    }
    ImagePair key = ImagePair::Make(pair.id_a, pair.id_b);
    EdgeData data = pair.data;
    if (data.quad && key.first != pair.id_a) {
      // Quads are ordered (pq, pq, qp, qp) relative to the stored key.
      std::array<double, 4>& s = data.quad->s;
      s = {s[2], s[3], s[0], s[1]};
    }
    const auto [it, inserted] = graph.edges_.emplace(key, std::move(data));
    if (!inserted && it->second.score != pair.data.score) {
      throw UsageError("conflicting duplicate pair (" + key.first + ", " +
                       key.second + ")");
    }
  }
  return graph;
}

std::vector<std::vector<std::string>> ConnectedComponents(
    const SceneGraph& graph) {
  // std::set iteration gives sorted ids, so indices follow id order.
  std::vector<const std::string*> ids;
  ids.reserve(graph.NumNodes());
  std::unordered_map<std::string, std::size_t> index;
  for (const std::string& id : graph.nodes()) {
    index.emplace(id, ids.size());
    ids.push_back(&id);
  }

  UnionFind sets(ids.size());
  for (const auto& [pair, data] : graph.edges()) {
    sets.Union(index.at(pair.first), index.at(pair.second));
  }

  std::unordered_map<std::size_t, std::size_t> root_to_component;
  std::vector<std::vector<std::string>> components;
  for (std::size_t i = 0; i < ids.size(); ++i) {
    const std::size_t root = sets.Find(i);
    const auto [it, inserted] =
        root_to_component.emplace(root, components.size());
    if (inserted) components.emplace_back();
    components[it->second].push_back(*ids[i]);
  }
  std::stable_sort(components.begin(), components.end(),
                   [](const auto& a, const auto& b) {
                     if (a.size() != b.size()) return a.size() > b.size();
                     return a.front() < b.front();
                   });
  return components;
}

PruneResult PruneSceneGraph(const SceneGraph& graph, double tau) {
  if (!(tau >= 0.0 && tau <= 1.0)) {
    throw std::domain_error("pruning threshold outside [0, 1]: " +
                            std::to_string(tau));
  }
  PruneResult result;
  result.graph.nodes_ = graph.nodes_;
  for (const auto& [pair, data] : graph.edges()) {
    if (data.score < tau) {
      ++result.report.removed;
    } else {
      result.graph.edges_.emplace(pair, data);
      ++result.report.kept;
    }
  }
  result.report.components = ConnectedComponents(result.graph);
  return result;
}

}  // namespace dgkit
