#ifndef DGKIT_APPIO_COMMANDS_H_
#define DGKIT_APPIO_COMMANDS_H_

#include <optional>
#include <ostream>
#include <string>

#include "dgkit/disambig/scene_graph.h"
#include "dgkit/geoverify/ransac_similarity.h"
#include "dgkit/pairmine/pair_mining.h"
#include "dgkit/synth/synthetic_scene.h"

// Pipeline commands behind the dgkit CLI. Each returns a process exit code,
// writes its summary to `out` and diagnostics to `err`, and never modifies
// its inputs.
namespace dgkit {

struct MinePairsOptions {
  std::string cameras_path;
  std::string pairs_path;
  std::string out_path;
  std::optional<std::string> report_path;
  MiningConfig config;
};
int RunMinePairs(const MinePairsOptions& options, std::ostream& out,
                 std::ostream& err);

struct VoteOptions {
  std::string pairs_path;
  std::string out_path;
};
int RunVote(const VoteOptions& options, std::ostream& out, std::ostream& err);

struct PruneGraphOptions {
  std::string pairs_path;
  // Adds isolated images as nodes when given.
  std::optional<std::string> cameras_path;
  double tau = kDefaultPruneThreshold;
  std::string out_path;
  std::optional<std::string> report_path;
};
int RunPruneGraph(const PruneGraphOptions& options, std::ostream& out,
                  std::ostream& err);

struct VerifyGeoOptions {
  std::string probes_path;
  RansacConfig config;
  std::optional<std::string> report_path;
};
int RunVerifyGeo(const VerifyGeoOptions& options, std::ostream& out,
                 std::ostream& err);

// Writes cameras.txt, matches.txt, scores.txt, probes_corrected.txt,
// probes_corrupted.txt and groundtruth.txt into out_dir.
struct SynthSceneOptions {
  SynthConfig config;
  double flip_fraction = 0.0;
  std::string out_dir;
};
int RunSynthScene(const SynthSceneOptions& options, std::ostream& out,
                  std::ostream& err);

struct ImportColmapOptions {
  std::string database_path;
  std::string out_path;
  int min_inliers = 1;
};
int RunImportColmap(const ImportColmapOptions& options, std::ostream& out,
                    std::ostream& err);

}  // namespace dgkit

#endif  // DGKIT_APPIO_COMMANDS_H_
