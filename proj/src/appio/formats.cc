#include "dgkit/appio/formats.h"

#include <map>
#include <set>
#include <stdexcept>
#include <unordered_set>
#include <utility>

#include "dgkit/appio/text_format.h"
#include "dgkit/util/errors.h"

namespace dgkit {
namespace {

constexpr int kFormatVersion = 1;
constexpr char kCamerasKind[] = "dgkit-cameras";
constexpr char kPairsKind[] = "dgkit-pairs";
constexpr char kLabelsKind[] = "dgkit-labels";
constexpr char kProbesKind[] = "dgkit-probes";
constexpr char kGraphKind[] = "dgkit-graph";
constexpr char kGroundTruthKind[] = "dgkit-groundtruth";

std::string F(double value) { return FormatDouble(value); }

void CheckId(const std::string& id) {
  if (id.empty() || id.find_first_of(" \t\r\n") != std::string::npos ||
      id[0] == '#') {
    throw UsageError("id '" + id + "' cannot be written to a text record");
  }
}

// Normalizes a record's pair, reporting errors against its line.
std::pair<std::string, std::string> RecordPair(const RecordReader& reader,
                                               const TextRecord& record,
                                               std::size_t first) {
  const std::string& a = record.tokens[first];
  const std::string& b = record.tokens[first + 1];
  if (a == b) reader.Fail(record, "self-pair on '" + a + "'");
  return a < b ? std::make_pair(a, b) : std::make_pair(b, a);
}

double Probability(const RecordReader& reader, const TextRecord& record,
                   std::size_t index) {
  const double value = reader.Double(record, index, "score");
  if (value < 0.0 || value > 1.0) {
    reader.Fail(record, "score outside [0, 1]: " + record.tokens[index]);
  }
  return value;
}

}  // namespace

// ---- cameras ---------------------------------------------------------------

std::vector<GeoCamera> ReadCameras(std::istream& in, const std::string& source) {
  RecordReader reader(in, source);
  reader.ExpectHeader(kCamerasKind, kFormatVersion);
  std::vector<GeoCamera> cameras;
  std::unordered_set<std::string> ids;
  TextRecord record;
  while (reader.Next(&record)) {
    reader.ExpectFieldCount(record, 12, 12);
    GeoCamera camera;
    camera.id = record.tokens[0];
    camera.position.lat = reader.Double(record, 1, "lat");
    camera.position.lon = reader.Double(record, 2, "lon");
    camera.position.alt = reader.Double(record, 3, "alt");
    camera.heading = reader.Double(record, 4, "heading_deg");
    camera.pitch = reader.Double(record, 5, "pitch_deg");
    camera.intrinsics.fx = reader.Double(record, 6, "fx");
    camera.intrinsics.fy = reader.Double(record, 7, "fy");
    camera.intrinsics.cx = reader.Double(record, 8, "cx");
    camera.intrinsics.cy = reader.Double(record, 9, "cy");
    camera.width = reader.Int(record, 10, "width");
    camera.height = reader.Int(record, 11, "height");
    try {
      camera = NormalizeGeoCamera(camera);
    } catch (const std::domain_error& e) {
      reader.Fail(record, e.what());
    }
    if (!ids.insert(camera.id).second) {
      reader.Fail(record, "duplicate camera id '" + camera.id + "'");
    }
    cameras.push_back(std::move(camera));
  }
  return cameras;
}

void WriteCameras(std::ostream& out, const std::vector<GeoCamera>& cameras) {
  WriteHeader(out, kCamerasKind, kFormatVersion);
  out << "# id lat lon alt heading_deg pitch_deg fx fy cx cy width height\n";
  for (const GeoCamera& c : cameras) {
    CheckId(c.id);
    out << c.id << ' ' << F(c.position.lat) << ' ' << F(c.position.lon) << ' '
        << F(c.position.alt) << ' ' << F(c.heading) << ' ' << F(c.pitch) << ' '
        << F(c.intrinsics.fx) << ' ' << F(c.intrinsics.fy) << ' '
        << F(c.intrinsics.cx) << ' ' << F(c.intrinsics.cy) << ' ' << c.width
        << ' ' << c.height << '\n';
  }
}

// ---- pairs -----------------------------------------------------------------

PairRecord PairRecord::Match(std::string a, std::string b,
                             std::optional<int> num_inliers) {
  const ImagePair pair = ImagePair::Make(std::move(a), std::move(b));
  PairRecord record;
  record.kind = PairRecordKind::kMatch;
  record.id_a = pair.first;
  record.id_b = pair.second;
  record.num_inliers = num_inliers;
  return record;
}

PairRecord PairRecord::Quad(std::string a, std::string b, const ScoreQuad& quad) {
  quad.Validate();
  PairRecord record;
  record.kind = PairRecordKind::kQuad;
  record.quad = quad;
  if (b < a) {
    std::swap(a, b);
    // (pq1, pq2, qp1, qp2) seen from the other image order.
    record.quad.s = {quad.s[2], quad.s[3], quad.s[0], quad.s[1]};
  }
  const ImagePair pair = ImagePair::Make(std::move(a), std::move(b));
  record.id_a = pair.first;
  record.id_b = pair.second;
  return record;
}

PairRecord PairRecord::Score(std::string a, std::string b, double score) {
  const EdgeData checked = EdgeData::FromScore(score);
  const ImagePair pair = ImagePair::Make(std::move(a), std::move(b));
  PairRecord record;
  record.kind = PairRecordKind::kScore;
  record.id_a = pair.first;
  record.id_b = pair.second;
  record.score = checked.score;
  return record;
}

EdgeData PairRecord::ToEdgeData() const {
  switch (kind) {
    case PairRecordKind::kQuad:
      return EdgeData::FromQuad(quad);
    case PairRecordKind::kScore:
      return EdgeData::FromScore(score);
    case PairRecordKind::kMatch:
      break;
  }
  throw UsageError("pair (" + id_a + ", " + id_b + ") has no score");
}

std::vector<PairRecord> ReadPairs(std::istream& in, const std::string& source) {
  RecordReader reader(in, source);
  reader.ExpectHeader(kPairsKind, kFormatVersion);
  std::vector<PairRecord> pairs;
  TextRecord record;
  while (reader.Next(&record)) {
    const std::string& kind = record.tokens[0];
    PairRecord pair;
    if (kind == "match") {
      reader.ExpectFieldCount(record, 3, 4);
      auto [a, b] = RecordPair(reader, record, 1);
      std::optional<int> inliers;
      if (record.tokens.size() == 4) {
        inliers = reader.Int(record, 3, "num_inliers");
        if (*inliers < 0) reader.Fail(record, "negative num_inliers");
      }
      pair = PairRecord::Match(a, b, inliers);
    } else if (kind == "quad") {
      reader.ExpectFieldCount(record, 7, 7);
      if (record.tokens[1] == record.tokens[2]) {
        reader.Fail(record, "self-pair on '" + record.tokens[1] + "'");
      }
      ScoreQuad quad;
      for (int k = 0; k < 4; ++k) quad.s[k] = Probability(reader, record, 3 + k);
      pair = PairRecord::Quad(record.tokens[1], record.tokens[2], quad);
    } else if (kind == "score") {
      reader.ExpectFieldCount(record, 4, 4);
      auto [a, b] = RecordPair(reader, record, 1);
      pair = PairRecord::Score(a, b, Probability(reader, record, 3));
    } else {
      reader.Fail(record, "unknown pair record kind '" + kind + "'");
    }
    pairs.push_back(std::move(pair));
  }
  return pairs;
}

void WritePairs(std::ostream& out, const std::vector<PairRecord>& pairs) {
  WriteHeader(out, kPairsKind, kFormatVersion);
  for (const PairRecord& p : pairs) {
    CheckId(p.id_a);
    CheckId(p.id_b);
    switch (p.kind) {
      case PairRecordKind::kMatch:
        out << "match " << p.id_a << ' ' << p.id_b;
        if (p.num_inliers) out << ' ' << *p.num_inliers;
        break;
      case PairRecordKind::kQuad:
        out << "quad " << p.id_a << ' ' << p.id_b;
        for (const double s : p.quad.s) out << ' ' << F(s);
        break;
      case PairRecordKind::kScore:
        out << "score " << p.id_a << ' ' << p.id_b << ' ' << F(p.score);
        break;
    }
    out << '\n';
  }
}

// ---- labels ----------------------------------------------------------------

std::vector<LabeledPair> ReadLabels(std::istream& in, const std::string& source) {
  RecordReader reader(in, source);
  reader.ExpectHeader(kLabelsKind, kFormatVersion);
  std::vector<LabeledPair> labels;
  TextRecord record;
  while (reader.Next(&record)) {
    reader.ExpectFieldCount(record, 5, 6);
    if (record.tokens[0] != "label") {
      reader.Fail(record, "expected 'label' record");
    }
    auto [a, b] = RecordPair(reader, record, 1);
    const auto verdict = ParseVerdict(record.tokens[3]);
    const auto rule = ParseMiningRule(record.tokens[4]);
    if (!verdict) reader.Fail(record, "unknown verdict '" + record.tokens[3] + "'");
    if (!rule) reader.Fail(record, "unknown rule '" + record.tokens[4] + "'");
    const PairLabel label = PairLabel::FromRule(*rule);
    if (label.verdict() != *verdict) {
      reader.Fail(record, "verdict does not match rule " + record.tokens[4]);
    }
    std::optional<int> inliers;
    if (record.tokens.size() == 6) inliers = reader.Int(record, 5, "num_inliers");
    labels.push_back({MatchCandidate::Make(a, b, inliers), label});
  }
  return labels;
}

void WriteLabels(std::ostream& out, const std::vector<LabeledPair>& labels) {
  WriteHeader(out, kLabelsKind, kFormatVersion);
  for (const LabeledPair& l : labels) {
    CheckId(l.candidate.id_a);
    CheckId(l.candidate.id_b);
    out << "label " << l.candidate.id_a << ' ' << l.candidate.id_b << ' '
        << VerdictName(l.label.verdict()) << ' ' << MiningRuleName(l.label.rule);
    if (l.candidate.num_inliers) out << ' ' << *l.candidate.num_inliers;
    out << '\n';
  }
}

// ---- probes ----------------------------------------------------------------

std::vector<ProbeRecord> ReadProbes(std::istream& in, const std::string& source) {
  RecordReader reader(in, source);
  reader.ExpectHeader(kProbesKind, kFormatVersion);
  std::vector<ProbeRecord> probes;
  std::unordered_set<std::string> ids;
  TextRecord record;
  while (reader.Next(&record)) {
    reader.ExpectFieldCount(record, 8, 8);
    ProbeRecord probe;
    probe.probe_id = record.tokens[0];
    probe.component_id = record.tokens[1];
    probe.model_pos = {reader.Double(record, 2, "model_x"),
                       reader.Double(record, 3, "model_y"),
                       reader.Double(record, 4, "model_z")};
    probe.geotag = {reader.Double(record, 5, "lat"),
                    reader.Double(record, 6, "lon"),
                    reader.Double(record, 7, "alt")};
    if (probe.geotag.lat < -90.0 || probe.geotag.lat > 90.0) {
      reader.Fail(record, "latitude out of range");
    }
    if (!ids.insert(probe.probe_id).second) {
      reader.Fail(record, "probe '" + probe.probe_id + "' listed twice");
    }
    probes.push_back(std::move(probe));
  }
  return probes;
}

void WriteProbes(std::ostream& out, const std::vector<ProbeRecord>& probes) {
  WriteHeader(out, kProbesKind, kFormatVersion);
  out << "# probe_id component_id model_x model_y model_z lat lon alt\n";
  for (const ProbeRecord& p : probes) {
    CheckId(p.probe_id);
    CheckId(p.component_id);
    out << p.probe_id << ' ' << p.component_id << ' ' << F(p.model_pos.x())
        << ' ' << F(p.model_pos.y()) << ' ' << F(p.model_pos.z()) << ' '
        << F(p.geotag.lat) << ' ' << F(p.geotag.lon) << ' ' << F(p.geotag.alt)
        << '\n';
  }
}

std::vector<ProbeComponent> GroupProbes(const std::vector<ProbeRecord>& probes) {
  std::vector<ProbeComponent> components;
  std::map<std::string, std::size_t> index;
  for (const ProbeRecord& p : probes) {
    const auto [it, inserted] = index.emplace(p.component_id, components.size());
    if (inserted) components.push_back({p.component_id, {}});
    components[it->second].correspondences.push_back(
        {p.probe_id, p.model_pos, Wgs84ToEcef(p.geotag)});
  }
  return components;
}

std::vector<ProbeRecord> FlattenProbes(
    const std::vector<ProbeComponent>& components) {
  std::vector<ProbeRecord> probes;
  for (const ProbeComponent& component : components) {
    for (const ProbeCorrespondence& c : component.correspondences) {
      probes.push_back({c.probe_id, component.component_id, c.model_pos,
                        EcefToWgs84(c.geo_pos)});
    }
  }
  return probes;
}

// ---- graphs ----------------------------------------------------------------

GraphFile ReadGraph(std::istream& in, const std::string& source) {
  RecordReader reader(in, source);
  reader.ExpectHeader(kGraphKind, kFormatVersion);
  std::vector<std::string> nodes;
  std::vector<ScoredPair> edges;
  std::vector<std::vector<std::string>> listed;
  std::vector<int> edge_lines;
  TextRecord record;
  while (reader.Next(&record)) {
    const std::string& kind = record.tokens[0];
    if (kind == "node") {
      reader.ExpectFieldCount(record, 2, 2);
      nodes.push_back(record.tokens[1]);
    } else if (kind == "edge") {
      reader.ExpectFieldCount(record, 4, 4);
      auto [a, b] = RecordPair(reader, record, 1);
      edges.push_back({a, b, EdgeData::FromScore(Probability(reader, record, 3))});
      edge_lines.push_back(record.line);
    } else if (kind == "component") {
      if (record.tokens.size() < 3) reader.Fail(record, "truncated component");
      const int size = reader.Int(record, 2, "size");
      if (size < 1 || static_cast<std::size_t>(size) + 3 != record.tokens.size()) {
        reader.Fail(record, "component size does not match its member list");
      }
      listed.emplace_back(record.tokens.begin() + 3, record.tokens.end());
    } else {
      reader.Fail(record, "unknown graph record kind '" + kind + "'");
    }
  }

  GraphFile file;
  try {
    file.graph = BuildSceneGraph(nodes, edges);
  } catch (const UsageError& e) {
    throw ParseError(source, edge_lines.empty() ? 0 : edge_lines.back(),
                     e.what());
  }
  file.components = ConnectedComponents(file.graph);
  if (!listed.empty() && listed != file.components) {
    throw ParseError(source, 0, "component listing does not match the edges");
  }
  return file;
}

void WriteGraph(std::ostream& out, const SceneGraph& graph) {
  WriteHeader(out, kGraphKind, kFormatVersion);
  for (const std::string& id : graph.nodes()) {
    CheckId(id);
    out << "node " << id << '\n';
  }
  for (const auto& [pair, data] : graph.edges()) {
    out << "edge " << pair.first << ' ' << pair.second << ' ' << F(data.score)
        << '\n';
  }
  const auto components = ConnectedComponents(graph);
  for (std::size_t i = 0; i < components.size(); ++i) {
    out << "component " << i << ' ' << components[i].size();
    for (const std::string& id : components[i]) out << ' ' << id;
    out << '\n';
  }
}

// ---- synthetic ground truth -----------------------------------------------

void WriteGroundTruth(std::ostream& out, const SynthScene& scene) {
  WriteHeader(out, kGroundTruthKind, kFormatVersion);
  for (std::size_t i = 0; i < scene.cameras.size(); ++i) {
    out << "side " << scene.cameras[i].id << ' ' << scene.side[i] << '\n';
  }
  for (const auto& [pair, truth] : scene.gt_pair_labels) {
    out << "truth " << pair.first << ' ' << pair.second << ' '
        << PairTruthName(truth) << '\n';
  }
}

GroundTruthFile ReadGroundTruth(std::istream& in, const std::string& source) {
  RecordReader reader(in, source);
  reader.ExpectHeader(kGroundTruthKind, kFormatVersion);
  GroundTruthFile file;
  TextRecord record;
  while (reader.Next(&record)) {
    const std::string& kind = record.tokens[0];
    if (kind == "side") {
      reader.ExpectFieldCount(record, 3, 3);
      file.sides.emplace_back(record.tokens[1], reader.Int(record, 2, "side"));
    } else if (kind == "truth") {
      reader.ExpectFieldCount(record, 4, 4);
      auto [a, b] = RecordPair(reader, record, 1);
      PairTruth truth;
      if (record.tokens[3] == PairTruthName(PairTruth::kTrueMatch)) {
        truth = PairTruth::kTrueMatch;
      } else if (record.tokens[3] == PairTruthName(PairTruth::kDoppelganger)) {
        truth = PairTruth::kDoppelganger;
      } else {
        reader.Fail(record, "unknown truth label '" + record.tokens[3] + "'");
      }
      file.truths.push_back({ImagePair{a, b}, truth});
    } else {
      reader.Fail(record, "unknown ground-truth record kind '" + kind + "'");
    }
  }
  return file;
}

// ---- file helpers ----------------------------------------------------------

std::ifstream OpenForRead(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open '" + path + "' for reading");
  return in;
}

std::ofstream OpenForWrite(const std::string& path) {
  std::ofstream out(path, std::ios::out | std::ios::trunc);
  if (!out) throw UsageError("cannot open '" + path + "' for writing");
  return out;
}

}  // namespace dgkit
