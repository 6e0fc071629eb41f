#ifndef DGKIT_APPIO_FORMATS_H_
#define DGKIT_APPIO_FORMATS_H_

#include <fstream>
#include <istream>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "dgkit/disambig/scene_graph.h"
#include "dgkit/disambig/voting.h"
#include "dgkit/geomcore/camera.h"
#include "dgkit/geoverify/inlier_ratio.h"
#include "dgkit/pairmine/pair_mining.h"
#include "dgkit/synth/synthetic_scene.h"

// Text formats. Each file starts with "<kind> <version>"; '#' starts a
// comment line; fields are whitespace separated; floats carry 9 significant
// digits.
//
//   dgkit-cameras 1
//   <id> <lat> <lon> <alt> <heading_deg> <pitch_deg> <fx> <fy> <cx> <cy> <width> <height>
//
//   dgkit-pairs 1
//   match <id_a> <id_b> [<num_inliers>]
//   quad  <id_a> <id_b> <s1> <s2> <s3> <s4>
//   score <id_a> <id_b> <score>
//
//   dgkit-labels 1
//   label <id_a> <id_b> <verdict> <rule> [<num_inliers>]
//
//   dgkit-probes 1
//   <probe_id> <component_id> <model_x> <model_y> <model_z> <lat> <lon> <alt>
//
//   dgkit-graph 1
//   node <id>
//   edge <id_a> <id_b> <score>
//   component <index> <size> <id>...
//
//   dgkit-groundtruth 1
//   side <id> <side>
//   truth <id_a> <id_b> <TrueMatch|Doppelganger>
namespace dgkit {

// ---- cameras ---------------------------------------------------------------

std::vector<GeoCamera> ReadCameras(std::istream& in, const std::string& source);
void WriteCameras(std::ostream& out, const std::vector<GeoCamera>& cameras);

// ---- pairs -----------------------------------------------------------------

enum class PairRecordKind { kMatch, kQuad, kScore };

// One pair line. Ids are normalized so that id_a < id_b; for quads the two
// input-order halves are swapped along with the ids.
struct PairRecord {
  PairRecordKind kind = PairRecordKind::kMatch;
  std::string id_a;
  std::string id_b;
  std::optional<int> num_inliers;  // kMatch
  ScoreQuad quad;                  // kQuad
  double score = 0.0;              // kScore

  static PairRecord Match(std::string a, std::string b,
                          std::optional<int> num_inliers);
  static PairRecord Quad(std::string a, std::string b, const ScoreQuad& quad);
  static PairRecord Score(std::string a, std::string b, double score);

  // The edge payload: aggregated quad or pass-through score. Throws UsageError
  // for match records, which carry no score.
  EdgeData ToEdgeData() const;
};

std::vector<PairRecord> ReadPairs(std::istream& in, const std::string& source);
void WritePairs(std::ostream& out, const std::vector<PairRecord>& pairs);

// ---- labels ----------------------------------------------------------------

std::vector<LabeledPair> ReadLabels(std::istream& in, const std::string& source);
void WriteLabels(std::ostream& out, const std::vector<LabeledPair>& labels);

// ---- probes ----------------------------------------------------------------

struct ProbeRecord {
  std::string probe_id;
  std::string component_id;
  Eigen::Vector3d model_pos = Eigen::Vector3d::Zero();
  GeodeticPoint geotag;
};

// Rejects repeated probe ids.
std::vector<ProbeRecord> ReadProbes(std::istream& in, const std::string& source);
void WriteProbes(std::ostream& out, const std::vector<ProbeRecord>& probes);

// Groups records by component in order of first appearance, converting
// geotags to ECEF.
std::vector<ProbeComponent> GroupProbes(const std::vector<ProbeRecord>& probes);
// Inverse of GroupProbes.
std::vector<ProbeRecord> FlattenProbes(const std::vector<ProbeComponent>& components);

// ---- graphs ----------------------------------------------------------------

struct GraphFile {
  SceneGraph graph;
  std::vector<std::vector<std::string>> components;
};

// Component lines, when present, must match the graph's connected components.
GraphFile ReadGraph(std::istream& in, const std::string& source);
void WriteGraph(std::ostream& out, const SceneGraph& graph);

// ---- synthetic ground truth -----------------------------------------------

void WriteGroundTruth(std::ostream& out, const SynthScene& scene);

struct GroundTruthFile {
  std::vector<std::pair<std::string, int>> sides;
  std::vector<std::pair<ImagePair, PairTruth>> truths;
};
GroundTruthFile ReadGroundTruth(std::istream& in, const std::string& source);

// ---- file helpers ----------------------------------------------------------

// Throw UsageError naming the path when it cannot be opened.
std::ifstream OpenForRead(const std::string& path);
std::ofstream OpenForWrite(const std::string& path);

}  // namespace dgkit

#endif  // DGKIT_APPIO_FORMATS_H_
