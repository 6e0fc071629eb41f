#include <unistd.h>

#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>

#include <gtest/gtest.h>
#include <sqlite3.h>

#include "dgkit/appio/colmap_import.h"
#include "dgkit/appio/formats.h"
#include "dgkit/appio/report.h"
#include "dgkit/appio/text_format.h"
#include "dgkit/synth/synthetic_scene.h"
#include "dgkit/util/errors.h"

namespace dgkit {
namespace {

namespace fs = std::filesystem;

fs::path ScratchDir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() /
                       ("dgkit_appio_" + name + "_" + std::to_string(::getpid()));
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

template <typename T, typename Writer>
std::string Save(const T& value, Writer writer) {
  std::ostringstream out;
  writer(out, value);
  return out.str();
}

int ParseErrorLine(const std::function<void()>& body) {
  try {
    body();
  } catch (const ParseError& e) {
    return e.line();
  }
  return -1;
}

TEST(TextFormat, FloatFormatting) {
  EXPECT_EQ(FormatDouble(0.1), "0.1");
  EXPECT_EQ(FormatDouble(47.376912345678), "47.3769123");
  EXPECT_EQ(FormatDouble(1e-12), "1e-12");
  EXPECT_EQ(std::stod(FormatDouble(123456789.0)), 123456789.0);
}

TEST(TextFormat, CommentsAndBlankLines) {
  std::istringstream in("# leading comment\n\ndgkit-pairs 1\n  # note\n\nscore a b 0.5\n");
  const auto pairs = ReadPairs(in, "mem");
  ASSERT_EQ(pairs.size(), 1u);
  EXPECT_EQ(pairs[0].score, 0.5);
}

TEST(TextFormat, HeaderErrors) {
  std::istringstream wrong_kind("dgkit-cameras 1\n");
  EXPECT_THROW(ReadPairs(wrong_kind, "mem"), ParseError);
  std::istringstream wrong_version("dgkit-pairs 7\n");
  EXPECT_THROW(ReadPairs(wrong_version, "mem"), ParseError);
  std::istringstream empty("");
  EXPECT_THROW(ReadPairs(empty, "mem"), ParseError);
}

std::vector<GeoCamera> RandomCameras(std::mt19937_64& rng, int n) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<GeoCamera> cameras;
  for (int i = 0; i < n; ++i) {
    GeoCamera c;
    c.id = "img_" + std::to_string(i) + ".jpg";
    c.position = {-80.0 + 160.0 * unit(rng), -180.0 + 359.0 * unit(rng), 1000.0 * unit(rng)};
    c.heading = 359.0 * unit(rng);
    c.pitch = -20.0 + 40.0 * unit(rng);
    c.intrinsics = {500.0 + 1000.0 * unit(rng), 500.0 + 1000.0 * unit(rng),
                    1000.0 * unit(rng), 700.0 * unit(rng)};
    c.width = 2000;
    c.height = 1500;
    cameras.push_back(c);
  }
  return cameras;
}

TEST(Cameras, LoadSaveRoundTrip) {
  std::mt19937_64 rng(61);
  const auto cameras = RandomCameras(rng, 50);
  const std::string text = Save(cameras, WriteCameras);
  std::istringstream in(text);
  const auto loaded = ReadCameras(in, "mem");
  ASSERT_EQ(loaded.size(), cameras.size());
  for (std::size_t i = 0; i < cameras.size(); ++i) {
    EXPECT_EQ(loaded[i].id, cameras[i].id);
    EXPECT_NEAR(loaded[i].position.lat, cameras[i].position.lat, 1e-8 * 90);
    EXPECT_NEAR(loaded[i].position.lon, cameras[i].position.lon, 1e-8 * 180);
    EXPECT_NEAR(loaded[i].heading, cameras[i].heading, 1e-8 * 360);
    EXPECT_NEAR(loaded[i].intrinsics.fx, cameras[i].intrinsics.fx, 1e-8 * 1500);
    EXPECT_EQ(loaded[i].width, cameras[i].width);
  }
  // Formatted values are fixed points of load/save.
  EXPECT_EQ(Save(loaded, WriteCameras), text);
}

TEST(Cameras, ParseErrors) {
  const std::string header = "dgkit-cameras 1\n";
  const std::string good = "a 47 8 400 0 0 500 500 400 300 800 600\n";
  EXPECT_EQ(ParseErrorLine([&] {
              std::istringstream in(header + good + "b 47 8 nan 0 0 500 500 400 300 800 600\n");
              ReadCameras(in, "cams");
            }),
            3);
  EXPECT_EQ(ParseErrorLine([&] {
              std::istringstream in(header + good + "# c\nb 47 8 inf 0 0 500 500 400 300 800 600\n");
              ReadCameras(in, "cams");
            }),
            4);
  EXPECT_EQ(ParseErrorLine([&] {
              std::istringstream in(header + good + good);
              ReadCameras(in, "cams");
            }),
            3);
  EXPECT_EQ(ParseErrorLine([&] {
              std::istringstream in(header + "a 47 8 400 0 0 500 500 400\n");
              ReadCameras(in, "cams");
            }),
            2);
  EXPECT_EQ(ParseErrorLine([&] {
              std::istringstream in(header + "a 147 8 400 0 0 500 500 400 300 800 600\n");
              ReadCameras(in, "cams");
            }),
            2);
  EXPECT_EQ(ParseErrorLine([&] {
              std::istringstream in(header + "a 47 8 400 0 0 500x 500 400 300 800 600\n");
              ReadCameras(in, "cams");
            }),
            2);
  try {
    std::istringstream in(header + good + "b 47 8 400 0 0 -5 500 400 300 800 600\n");
    ReadCameras(in, "cams.txt");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find("cams.txt:3"), std::string::npos);
  }
}

TEST(Pairs, LoadSaveRoundTrip) {
  std::mt19937_64 rng(62);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<PairRecord> pairs;
  for (int i = 0; i < 60; ++i) {
    const std::string a = "i" + std::to_string(i), b = "j" + std::to_string(i);
    switch (i % 3) {
      case 0:
        pairs.push_back(PairRecord::Match(b, a, i % 2 ? std::optional<int>(i) : std::nullopt));
        break;
      case 1:
        pairs.push_back(
            PairRecord::Quad(a, b, ScoreQuad{{unit(rng), unit(rng), unit(rng), unit(rng)}}));
        break;
      default:
        pairs.push_back(PairRecord::Score(a, b, unit(rng)));
    }
  }
  const std::string text = Save(pairs, WritePairs);
  std::istringstream in(text);
  const auto loaded = ReadPairs(in, "mem");
  ASSERT_EQ(loaded.size(), pairs.size());
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    EXPECT_EQ(loaded[i].kind, pairs[i].kind);
    EXPECT_EQ(loaded[i].id_a, pairs[i].id_a);
    EXPECT_EQ(loaded[i].id_b, pairs[i].id_b);
    EXPECT_LT(loaded[i].id_a, loaded[i].id_b);
    EXPECT_EQ(loaded[i].num_inliers, pairs[i].num_inliers);
    for (int k = 0; k < 4; ++k) EXPECT_NEAR(loaded[i].quad.s[k], pairs[i].quad.s[k], 1e-9);
    EXPECT_NEAR(loaded[i].score, pairs[i].score, 1e-9);
  }
  EXPECT_EQ(Save(loaded, WritePairs), text);
}

TEST(Pairs, QuadOrientationFollowsIds) {
  const PairRecord r = PairRecord::Quad("q", "p", ScoreQuad{{0.1, 0.2, 0.3, 0.4}});
  EXPECT_EQ(r.id_a, "p");
  EXPECT_EQ(r.quad.s, (std::array<double, 4>{0.3, 0.4, 0.1, 0.2}));
  EXPECT_DOUBLE_EQ(r.ToEdgeData().score, AggregateScores(ScoreQuad{{0.1, 0.2, 0.3, 0.4}}));
  EXPECT_THROW(PairRecord::Match("a", "b", 3).ToEdgeData(), UsageError);
}

TEST(Pairs, ParseErrors) {
  const auto line_of = [](const std::string& body) {
    return ParseErrorLine([&] {
      std::istringstream in("dgkit-pairs 1\n" + body);
      ReadPairs(in, "pairs");
    });
  };
  EXPECT_EQ(line_of("score a b 1.5\n"), 2);
  EXPECT_EQ(line_of("match a b 3\nquad a b 0.1 0.2 0.3\n"), 3);
  EXPECT_EQ(line_of("match a a\n"), 2);
  EXPECT_EQ(line_of("match a b -2\n"), 2);
  EXPECT_EQ(line_of("\n\nfoo a b\n"), 4);
  EXPECT_EQ(line_of("score a b nan\n"), 2);
}

TEST(Labels, LoadSaveRoundTrip) {
  std::vector<LabeledPair> labels;
  for (std::size_t i = 0; i < kNumMiningRules; ++i) {
    labels.push_back({MatchCandidate::Make("a" + std::to_string(i), "b",
                                           i % 2 ? std::optional<int>(10 * i) : std::nullopt),
                      PairLabel::FromRule(static_cast<MiningRule>(i))});
  }
  const std::string text = Save(labels, WriteLabels);
  std::istringstream in(text);
  const auto loaded = ReadLabels(in, "mem");
  ASSERT_EQ(loaded.size(), labels.size());
  for (std::size_t i = 0; i < labels.size(); ++i) {
    EXPECT_EQ(loaded[i].label, labels[i].label);
    EXPECT_EQ(loaded[i].candidate.id_a, labels[i].candidate.id_a);
    EXPECT_EQ(loaded[i].candidate.num_inliers, labels[i].candidate.num_inliers);
  }
  EXPECT_EQ(Save(loaded, WriteLabels), text);

  std::istringstream bad("dgkit-labels 1\nlabel a b Positive Distant\n");
  EXPECT_THROW(ReadLabels(bad, "mem"), ParseError);
}

TEST(Probes, LoadSaveRoundTrip) {
  const SynthScene scene = GenerateScene({});
  const auto records = FlattenProbes(MakeProbeComponents(scene, LayoutKind::kCorrected));
  const std::string text = Save(records, WriteProbes);
  std::istringstream in(text);
  const auto loaded = ReadProbes(in, "mem");
  ASSERT_EQ(loaded.size(), records.size());
  for (std::size_t i = 0; i < records.size(); ++i) {
    EXPECT_EQ(loaded[i].probe_id, records[i].probe_id);
    EXPECT_EQ(loaded[i].component_id, records[i].component_id);
    EXPECT_LT((loaded[i].model_pos - records[i].model_pos).norm(),
              1e-7 * (1.0 + records[i].model_pos.norm()));
    EXPECT_NEAR(loaded[i].geotag.lat, records[i].geotag.lat, 1e-7);
  }
  EXPECT_EQ(Save(loaded, WriteProbes), text);

  const auto groups = GroupProbes(loaded);
  ASSERT_EQ(groups.size(), 2u);
  EXPECT_EQ(groups[0].component_id, "side0");
  EXPECT_EQ(groups[1].correspondences.size(), 40u);

  std::istringstream dup("dgkit-probes 1\np c 0 0 0 47 8 400\np c 1 0 0 47 8 400\n");
  EXPECT_EQ(ParseErrorLine([&] { ReadProbes(dup, "mem"); }), 3);
}

TEST(Graph, LoadSaveRoundTrip) {
  const SynthScene scene = GenerateScene({});
  const PruneResult pruned = PruneSceneGraph(ScoredSceneGraph(scene, AdversarialQuads(scene, 0.0)));
  const std::string text = Save(pruned.graph, WriteGraph);
  std::istringstream in(text);
  const GraphFile file = ReadGraph(in, "mem");
  EXPECT_EQ(file.graph.nodes(), pruned.graph.nodes());
  EXPECT_EQ(file.graph.NumEdges(), pruned.graph.NumEdges());
  EXPECT_EQ(file.components, pruned.report.components);
  EXPECT_EQ(Save(file.graph, WriteGraph), text);

  std::istringstream inconsistent(
      "dgkit-graph 1\nnode a\nnode b\nedge a b 0.9\ncomponent 0 1 a\ncomponent 1 1 b\n");
  EXPECT_THROW(ReadGraph(inconsistent, "mem"), ParseError);
}

TEST(GroundTruth, RoundTrip) {
  const SynthScene scene = GenerateScene({});
  std::ostringstream out;
  WriteGroundTruth(out, scene);
  std::istringstream in(out.str());
  const GroundTruthFile file = ReadGroundTruth(in, "mem");
  EXPECT_EQ(file.sides.size(), 80u);
  EXPECT_EQ(file.truths.size(), scene.gt_pair_labels.size());
  for (const auto& [pair, truth] : file.truths) {
    EXPECT_EQ(scene.Truth(pair.first, pair.second), truth);
  }
}

TEST(Files, MissingFile) {
  EXPECT_THROW(OpenForRead("/nonexistent/dgkit/file.txt"), UsageError);
  EXPECT_THROW(OpenForWrite("/nonexistent/dgkit/file.txt"), UsageError);
}

TEST(Report, ValidatesOnWriteAndRead) {
  const fs::path dir = ScratchDir("report");
  const SynthScene scene = GenerateScene({});
  const SceneGraph graph = ScoredSceneGraph(scene, AdversarialQuads(scene, 0.0));
  const PruneResult pruned = PruneSceneGraph(graph, 0.8);
  RansacConfig config;
  config.inlier_threshold = 2.0;
  const AlignmentReport alignment =
      VerifyModel(MakeProbeComponents(scene, LayoutKind::kCorrected), config);

  nlohmann::json report = NewReport();
  report["prune"] = PruneSection(graph, pruned, 0.8);
  report["alignment"] = AlignmentSection(alignment, config);
  const std::string path = (dir / "report.json").string();
  WriteReportFile(path, report);
  const nlohmann::json loaded = ReadReportFile(path);
  EXPECT_EQ(loaded["prune"]["kept"], pruned.report.kept);
  EXPECT_EQ(loaded["alignment"]["inlier_ratio"].get<double>(), alignment.inlier_ratio);

  nlohmann::json broken = report;
  broken["prune"]["kept"] = pruned.report.kept + 1;
  EXPECT_THROW(WriteReportFile(path, broken), ReportError);
  broken = report;
  broken["alignment"]["inlier_ratio"] = 0.5;
  EXPECT_THROW(ValidateReport(broken), ReportError);
  broken = report;
  broken["alignment"]["components"][0]["inliers"] = 1000;
  EXPECT_THROW(ValidateReport(broken), ReportError);
  broken = report;
  broken["prune"]["components"][0]["nodes"].push_back("s1_c000");
  EXPECT_THROW(ValidateReport(broken), ReportError);

  std::ofstream(dir / "tampered.json") << broken.dump();
  EXPECT_THROW(ReadReportFile((dir / "tampered.json").string()), ReportError);
  std::ofstream(dir / "garbage.json") << "{not json";
  EXPECT_THROW(ReadReportFile((dir / "garbage.json").string()), ReportError);
  fs::remove_all(dir);
}

TEST(Report, MiningSectionIsConsistent) {
  MiningResult result;
  result.pairs.resize(3);
  result.rule_counts[0] = 2;
  result.rule_counts[4] = 1;
  nlohmann::json report = NewReport();
  report["mining"] = MiningSection(result);
  EXPECT_NO_THROW(ValidateReport(report));
  EXPECT_EQ(report["mining"]["verdicts"]["Negative"], 2);
  report["mining"]["total"] = 4;
  EXPECT_THROW(ValidateReport(report), ReportError);
}

void Exec(sqlite3* db, const std::string& sql) {
  char* message = nullptr;
  ASSERT_EQ(sqlite3_exec(db, sql.c_str(), nullptr, nullptr, &message), SQLITE_OK)
      << (message ? message : "");
}

TEST(ColmapImport, ReadsTwoViewGeometries) {
  const fs::path dir = ScratchDir("colmap");
  const std::string path = (dir / "database.db").string();
  sqlite3* db = nullptr;
  ASSERT_EQ(sqlite3_open(path.c_str(), &db), SQLITE_OK);
  Exec(db, "CREATE TABLE images (image_id INTEGER PRIMARY KEY, name TEXT, camera_id INTEGER);");
  Exec(db, "CREATE TABLE two_view_geometries (pair_id INTEGER PRIMARY KEY, rows INTEGER, "
           "cols INTEGER, data BLOB, config INTEGER);");
  Exec(db, "INSERT INTO images VALUES (1, 'b.jpg', 1), (2, 'a.jpg', 1), (3, 'c.jpg', 1);");
  Exec(db, "INSERT INTO two_view_geometries VALUES (" + std::to_string(ColmapPairId(1, 2)) +
               ", 40, 2, NULL, 2), (" + std::to_string(ColmapPairId(3, 2)) +
               ", 5, 2, NULL, 2), (" + std::to_string(ColmapPairId(1, 3)) + ", 0, 2, NULL, 1);");
  sqlite3_close(db);

  const auto pairs = ImportColmapMatches(path, 1);
  ASSERT_EQ(pairs.size(), 2u);
  EXPECT_EQ(pairs[0].id_a, "a.jpg");
  EXPECT_EQ(pairs[0].id_b, "b.jpg");
  EXPECT_EQ(pairs[0].num_inliers, 40);
  EXPECT_EQ(pairs[1].id_a, "a.jpg");
  EXPECT_EQ(pairs[1].id_b, "c.jpg");
  EXPECT_EQ(pairs[1].num_inliers, 5);
  EXPECT_EQ(ImportColmapMatches(path, 10).size(), 1u);

  EXPECT_THROW(ImportColmapMatches((dir / "missing.db").string()), UsageError);
  fs::remove_all(dir);
}

}  // namespace
}  // namespace dgkit
