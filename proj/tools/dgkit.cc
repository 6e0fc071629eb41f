// dgkit: doppelganger-aware scene-graph tooling.
//
//   dgkit synth-scene   --out-dir DIR [--seed N] ...
//   dgkit mine-pairs    --cameras F --pairs F --out F [--report F] ...
//   dgkit vote          --pairs F --out F
//   dgkit prune-graph   --pairs F --out F [--tau 0.8] [--cameras F] [--report F]
//   dgkit verify-geo    --probes F [--inlier-threshold-m 5] [--seed N] [--report F]
//   dgkit import-colmap --database F --out F [--min-inliers N]

#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"

#include "dgkit/appio/commands.h"

namespace {

void AddReportOption(CLI::App* command, std::optional<std::string>* target) {
  command
      ->add_option_function<std::string>(
          "--report", [target](const std::string& path) { *target = path; },
          "Write a JSON report")
      ->type_name("FILE");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Doppelganger-aware scene-graph mining, pruning and verification"};
  app.require_subcommand(1);

  dgkit::SynthSceneOptions synth;
  auto* synth_cmd = app.add_subcommand(
      "synth-scene", "Generate a synthetic symmetric scene with ground truth");
  synth_cmd->add_option("--out-dir", synth.out_dir, "Output directory")->required();
  synth_cmd->add_option("--seed", synth.config.seed, "Random seed")
      ->capture_default_str();
  synth_cmd->add_option("--sides", synth.config.sides, "Rotational symmetry order")
      ->capture_default_str();
  synth_cmd->add_option("--cams-per-side", synth.config.cams_per_side)
      ->capture_default_str();
  synth_cmd->add_option("--ring-radius-m", synth.config.ring_radius)
      ->capture_default_str();
  synth_cmd->add_option("--structure-radius-m", synth.config.structure_radius)
      ->capture_default_str();
  synth_cmd->add_option("--noise-std-m", synth.config.noise_std,
                        "Horizontal GPS error (2D RMS)")
      ->capture_default_str();
  synth_cmd->add_option("--lat", synth.config.geo_anchor.lat)->capture_default_str();
  synth_cmd->add_option("--lon", synth.config.geo_anchor.lon)->capture_default_str();
  synth_cmd->add_option("--alt", synth.config.geo_anchor.alt)->capture_default_str();
  synth_cmd->add_option("--flip-fraction", synth.flip_fraction,
                        "Fraction of edges given ambiguous score quads")
      ->capture_default_str();

  dgkit::MinePairsOptions mine;
  auto* mine_cmd = app.add_subcommand(
      "mine-pairs", "Label matched pairs as doppelganger/true match from geotags");
  mine_cmd->add_option("--cameras", mine.cameras_path, "Cameras file")->required();
  mine_cmd->add_option("--pairs", mine.pairs_path, "Pairs file")->required();
  mine_cmd->add_option("--out", mine.out_path, "Labels file to write")->required();
  mine_cmd->add_option("--distant-threshold-m", mine.config.distant_threshold)
      ->capture_default_str();
  mine_cmd->add_option("--max-front-angle-deg", mine.config.max_front_angle)
      ->capture_default_str();
  mine_cmd->add_option("--near-positive-distance-m",
                       mine.config.near_positive_distance)
      ->capture_default_str();
  mine_cmd->add_option("--max-positive-angle-deg", mine.config.max_positive_angle)
      ->capture_default_str();
  mine_cmd->add_option("--min-inliers", mine.config.min_candidate_inliers)
      ->capture_default_str();
  mine_cmd->add_option("--near", mine.config.frustum.near, "Frustum near plane (m)")
      ->capture_default_str();
  mine_cmd->add_option("--far", mine.config.frustum.far, "Frustum far plane (m)")
      ->capture_default_str();
  AddReportOption(mine_cmd, &mine.report_path);

  dgkit::VoteOptions vote;
  auto* vote_cmd =
      app.add_subcommand("vote", "Aggregate score quads into final scores");
  vote_cmd->add_option("--pairs", vote.pairs_path, "Pairs file with quads")
      ->required();
  vote_cmd->add_option("--out", vote.out_path, "Scored pairs file to write")
      ->required();

  dgkit::PruneGraphOptions prune;
  auto* prune_cmd = app.add_subcommand(
      "prune-graph", "Drop scene-graph edges scoring below tau");
  prune_cmd->add_option("--pairs", prune.pairs_path, "Scored pairs file")->required();
  prune_cmd->add_option("--out", prune.out_path, "Graph file to write")->required();
  prune_cmd->add_option("--tau", prune.tau, "Pruning threshold")
      ->capture_default_str();
  prune_cmd->add_option_function<std::string>(
      "--cameras", [&prune](const std::string& p) { prune.cameras_path = p; },
      "Cameras file; its images become nodes even when isolated");
  AddReportOption(prune_cmd, &prune.report_path);

  dgkit::VerifyGeoOptions verify;
  auto* verify_cmd = app.add_subcommand(
      "verify-geo", "Align registered probes to their geotags, report inlier ratio");
  verify_cmd->add_option("--probes", verify.probes_path, "Probes file")->required();
  verify_cmd->add_option("--inlier-threshold-m", verify.config.inlier_threshold)
      ->capture_default_str();
  verify_cmd->add_option("--max-iterations", verify.config.max_iterations)
      ->capture_default_str();
  verify_cmd->add_option("--confidence", verify.config.confidence)
      ->capture_default_str();
  verify_cmd->add_option("--seed", verify.config.seed)->capture_default_str();
  AddReportOption(verify_cmd, &verify.report_path);

  dgkit::ImportColmapOptions colmap;
  auto* colmap_cmd = app.add_subcommand(
      "import-colmap", "Convert verified pairs of a COLMAP database to a pairs file");
  colmap_cmd->add_option("--database", colmap.database_path, "COLMAP database.db")
      ->required();
  colmap_cmd->add_option("--out", colmap.out_path, "Pairs file to write")->required();
  colmap_cmd->add_option("--min-inliers", colmap.min_inliers)->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  if (*synth_cmd) return dgkit::RunSynthScene(synth, std::cout, std::cerr);
  if (*mine_cmd) return dgkit::RunMinePairs(mine, std::cout, std::cerr);
  if (*vote_cmd) return dgkit::RunVote(vote, std::cout, std::cerr);
  if (*prune_cmd) return dgkit::RunPruneGraph(prune, std::cout, std::cerr);
  if (*verify_cmd) return dgkit::RunVerifyGeo(verify, std::cout, std::cerr);
  if (*colmap_cmd) return dgkit::RunImportColmap(colmap, std::cout, std::cerr);
  return 1;
}
