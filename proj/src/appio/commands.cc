#include "dgkit/appio/commands.h"

#include <exception>
#include <filesystem>
#include <fstream>
#include <set>

#include "dgkit/appio/colmap_import.h"
#include "dgkit/appio/formats.h"
#include "dgkit/appio/report.h"
#include "dgkit/appio/text_format.h"
#include "dgkit/disambig/voting.h"
#include "dgkit/geoverify/inlier_ratio.h"
#include "dgkit/util/errors.h"

namespace dgkit {
namespace {

template <typename Body>
int Guarded(const char* command, std::ostream& err, Body&& body) {
  try {
    return body();
  } catch (const std::exception& e) {
    err << "dgkit " << command << ": error: " << e.what() << '\n';
    return 1;
  }
}

std::vector<GeoCamera> LoadCameras(const std::string& path) {
  std::ifstream in = OpenForRead(path);
  return ReadCameras(in, path);
}

std::vector<PairRecord> LoadPairs(const std::string& path) {
  std::ifstream in = OpenForRead(path);
  return ReadPairs(in, path);
}

template <typename Writer>
void WriteFile(const std::string& path, Writer&& writer) {
  std::ofstream out = OpenForWrite(path);
  writer(out);
  out.flush();
  if (!out) throw UsageError("failed writing '" + path + "'");
}

}  // namespace

int RunMinePairs(const MinePairsOptions& options, std::ostream& out,
                 std::ostream& err) {
  return Guarded("mine-pairs", err, [&] {
    const std::vector<GeoCamera> cameras = LoadCameras(options.cameras_path);
    std::vector<MatchCandidate> candidates;
    for (const PairRecord& record : LoadPairs(options.pairs_path)) {
      candidates.push_back(MatchCandidate::Make(
          record.id_a, record.id_b,
          record.kind == PairRecordKind::kMatch ? record.num_inliers
                                                : std::nullopt));
    }
    const MiningResult result = MineDataset(cameras, candidates, options.config);
    WriteFile(options.out_path,
              [&](std::ostream& file) { WriteLabels(file, result.pairs); });

    out << "pairs " << result.pairs.size() << '\n';
    for (std::size_t i = 0; i < kNumMiningRules; ++i) {
      out << "  " << MiningRuleName(static_cast<MiningRule>(i)) << ' '
          << result.rule_counts[i] << '\n';
    }
    out << "negative " << result.Count(Verdict::kNegative) << " positive "
        << result.Count(Verdict::kPositive) << " unknown "
        << result.Count(Verdict::kUnknown) << '\n';

    if (options.report_path) {
      nlohmann::json report = NewReport();
      report["mining"] = MiningSection(result);
      WriteReportFile(*options.report_path, report);
    }
    return 0;
  });
}

int RunVote(const VoteOptions& options, std::ostream& out, std::ostream& err) {
  return Guarded("vote", err, [&] {
    std::vector<PairRecord> scored;
    std::size_t aggregated = 0;
    for (const PairRecord& record : LoadPairs(options.pairs_path)) {
      if (record.kind == PairRecordKind::kMatch) {
        throw UsageError("pair (" + record.id_a + ", " + record.id_b +
                         ") has no scores to vote on");
      }
      scored.push_back(
          PairRecord::Score(record.id_a, record.id_b, record.ToEdgeData().score));
      aggregated += record.kind == PairRecordKind::kQuad;
    }
    WriteFile(options.out_path,
              [&](std::ostream& file) { WritePairs(file, scored); });
    out << "pairs " << scored.size() << " aggregated " << aggregated << '\n';
    return 0;
  });
}

int RunPruneGraph(const PruneGraphOptions& options, std::ostream& out,
                  std::ostream& err) {
  return Guarded("prune-graph", err, [&] {
    if (!(options.tau >= 0.0 && options.tau <= 1.0)) {
      throw UsageError("--tau must lie in [0, 1]");
    }
    const std::vector<PairRecord> records = LoadPairs(options.pairs_path);
    std::vector<std::string> nodes;
    if (options.cameras_path) {
      for (const GeoCamera& camera : LoadCameras(*options.cameras_path)) {
        nodes.push_back(camera.id);
      }
    } else {
      std::set<std::string> endpoints;
      for (const PairRecord& record : records) {
        endpoints.insert(record.id_a);
        endpoints.insert(record.id_b);
      }
      nodes.assign(endpoints.begin(), endpoints.end());
    }
    std::vector<ScoredPair> pairs;
    pairs.reserve(records.size());
    for (const PairRecord& record : records) {
      pairs.push_back({record.id_a, record.id_b, record.ToEdgeData()});
    }
    const SceneGraph graph = BuildSceneGraph(nodes, pairs);
    const PruneResult result = PruneSceneGraph(graph, options.tau);
    WriteFile(options.out_path,
              [&](std::ostream& file) { WriteGraph(file, result.graph); });

    out << "tau " << FormatDouble(options.tau) << '\n'
        << "edges " << graph.NumEdges() << " kept " << result.report.kept
        << " removed " << result.report.removed << '\n'
        << "components " << result.report.components.size() << '\n';
    for (std::size_t i = 0; i < result.report.components.size(); ++i) {
      out << "  component " << i << " size "
          << result.report.components[i].size() << '\n';
    }
    if (options.report_path) {
      nlohmann::json report = NewReport();
      report["prune"] = PruneSection(graph, result, options.tau);
      WriteReportFile(*options.report_path, report);
    }
    return 0;
  });
}

int RunVerifyGeo(const VerifyGeoOptions& options, std::ostream& out,
                 std::ostream& err) {
  return Guarded("verify-geo", err, [&] {
    std::ifstream in = OpenForRead(options.probes_path);
    const std::vector<ProbeComponent> components =
        GroupProbes(ReadProbes(in, options.probes_path));
    if (components.empty()) {
      throw UsageError("'" + options.probes_path + "' contains no probes");
    }
    const AlignmentReport report = VerifyModel(components, options.config);

    bool all_unverifiable = true;
    for (const ComponentAlignment& c : report.per_component) {
      out << "component " << c.component_id << " inliers " << c.count.inliers
          << " probes " << c.count.probes << '\n';
      if (c.unverifiable) {
        err << "warning: component " << c.component_id << " has only "
            << c.count.probes << " probes; counted with 0 inliers\n";
      } else {
        all_unverifiable = false;
        if (!c.transform) {
          err << "warning: component " << c.component_id
              << " could not be aligned (degenerate probe geometry)\n";
        }
      }
    }
    if (all_unverifiable) {
      err << "warning: no component has 3 or more probes; inlier ratio is 0\n";
    }
    out << "inlier_ratio " << FormatDouble(report.inlier_ratio) << '\n';

    if (options.report_path) {
      nlohmann::json json = NewReport();
      json["alignment"] = AlignmentSection(report, options.config);
      WriteReportFile(*options.report_path, json);
    }
    return 0;
  });
}

int RunSynthScene(const SynthSceneOptions& options, std::ostream& out,
                  std::ostream& err) {
  return Guarded("synth-scene", err, [&] {
    const SynthScene scene = GenerateScene(options.config);
    const std::filesystem::path dir(options.out_dir);
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) {
      throw UsageError("cannot create directory '" + options.out_dir +
                       "': " + ec.message());
    }

    std::vector<PairRecord> matches;
    for (const auto& [pair, data] : scene.match_graph.edges()) {
      matches.push_back(PairRecord::Match(pair.first, pair.second, data.num_inliers));
    }
    std::vector<PairRecord> scores;
    for (const ScoredQuadPair& q : AdversarialQuads(scene, options.flip_fraction)) {
      scores.push_back(PairRecord::Quad(q.pair.first, q.pair.second, q.quad));
    }

    WriteFile((dir / "cameras.txt").string(),
              [&](std::ostream& f) { WriteCameras(f, scene.cameras); });
    WriteFile((dir / "matches.txt").string(),
              [&](std::ostream& f) { WritePairs(f, matches); });
    WriteFile((dir / "scores.txt").string(),
              [&](std::ostream& f) { WritePairs(f, scores); });
    WriteFile((dir / "probes_corrected.txt").string(), [&](std::ostream& f) {
      WriteProbes(f, FlattenProbes(MakeProbeComponents(scene, LayoutKind::kCorrected)));
    });
    WriteFile((dir / "probes_corrupted.txt").string(), [&](std::ostream& f) {
      WriteProbes(f, FlattenProbes(MakeProbeComponents(scene, LayoutKind::kCorrupted)));
    });
    WriteFile((dir / "groundtruth.txt").string(),
              [&](std::ostream& f) { WriteGroundTruth(f, scene); });

    out << "cameras " << scene.cameras.size() << " edges "
        << scene.match_graph.NumEdges() << " written to " << options.out_dir
        << '\n';
    return 0;
  });
}

int RunImportColmap(const ImportColmapOptions& options, std::ostream& out,
                    std::ostream& err) {
  return Guarded("import-colmap", err, [&] {
    const std::vector<PairRecord> pairs =
        ImportColmapMatches(options.database_path, options.min_inliers);
    WriteFile(options.out_path, [&](std::ostream& f) { WritePairs(f, pairs); });
    out << "pairs " << pairs.size() << '\n';
    return 0;
  });
}

}  // namespace dgkit
