#include <algorithm>
#include <random>

#include <Eigen/Geometry>
#include <gtest/gtest.h>

#include "dgkit/geomcore/geodesy.h"
#include "dgkit/geoverify/inlier_ratio.h"
#include "dgkit/geoverify/ransac_similarity.h"
#include "dgkit/geoverify/similarity_transform.h"
#include "dgkit/util/errors.h"
#include "test_oracles.h"

namespace dgkit {
namespace {

std::vector<Eigen::Vector3d> RandomPoints(std::mt19937_64& rng, int n, double extent) {
  std::uniform_real_distribution<double> coord(-extent, extent);
  std::vector<Eigen::Vector3d> points(n);
  for (auto& p : points) p = {coord(rng), coord(rng), coord(rng)};
  return points;
}

SimilarityTransform RandomTransform(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> log_scale(std::log(0.1), std::log(10.0));
  std::uniform_real_distribution<double> shift(-1000.0, 1000.0);
  SimilarityTransform t;
  t.scale = std::exp(log_scale(rng));
  t.rotation = testing::RandomRotation(rng);
  t.translation = {shift(rng), shift(rng), shift(rng)};
  return t;
}

std::vector<Eigen::Vector3d> ApplyAll(const SimilarityTransform& t,
                                      const std::vector<Eigen::Vector3d>& points) {
  std::vector<Eigen::Vector3d> out;
  for (const auto& p : points) out.push_back(t.Apply(p));
  return out;
}

TEST(Umeyama, Identity) {
  const std::vector<Eigen::Vector3d> src = {{0, 0, 0}, {1, 0, 0}, {0, 2, 1}};
  const SimilarityTransform t = EstimateSimilarityUmeyama(src, src);
  EXPECT_NEAR(t.scale, 1.0, 1e-12);
  EXPECT_LT((t.rotation - Eigen::Matrix3d::Identity()).cwiseAbs().maxCoeff(), 1e-12);
  EXPECT_LT(t.translation.norm(), 1e-12);
}

TEST(Umeyama, PureScaling) {
  const std::vector<Eigen::Vector3d> src = {{0, 0, 0}, {1, 0, 0}, {0, 2, 1}, {3, 1, 1}};
  std::vector<Eigen::Vector3d> dst;
  for (const auto& p : src) dst.push_back(2.0 * p);
  const SimilarityTransform t = EstimateSimilarityUmeyama(src, dst);
  EXPECT_NEAR(t.scale, 2.0, 1e-12);
  EXPECT_LT((t.rotation - Eigen::Matrix3d::Identity()).cwiseAbs().maxCoeff(), 1e-12);
  EXPECT_LT(t.translation.norm(), 1e-12);
}

TEST(Umeyama, DegenerateInput) {
  const std::vector<Eigen::Vector3d> two = {{0, 0, 0}, {1, 0, 0}};
  EXPECT_THROW(EstimateSimilarityUmeyama(two, two), DegenerateInputError);
  const std::vector<Eigen::Vector3d> line = {{0, 0, 0}, {1, 1, 1}, {2, 2, 2}, {5, 5, 5}};
  const std::vector<Eigen::Vector3d> other = {{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {1, 1, 1}};
  EXPECT_THROW(EstimateSimilarityUmeyama(line, other), DegenerateInputError);
  const std::vector<Eigen::Vector3d> same(4, Eigen::Vector3d(1, 2, 3));
  EXPECT_THROW(EstimateSimilarityUmeyama(same, other), DegenerateInputError);
  EXPECT_THROW(EstimateSimilarityUmeyama(other, {{0, 0, 0}, {1, 0, 0}, {0, 1, 0}}),
               DegenerateInputError);
}

TEST(Umeyama, RecoversRandomTransforms) {
  std::mt19937_64 rng(41);
  for (int i = 0; i < 100; ++i) {
    const SimilarityTransform truth = RandomTransform(rng);
    const auto src = RandomPoints(rng, 50, 100.0);
    const SimilarityTransform t = EstimateSimilarityUmeyama(src, ApplyAll(truth, src));
    EXPECT_TRUE(t.IsValid(1e-9));
    EXPECT_NEAR(t.scale, truth.scale, 1e-6 * truth.scale);
    EXPECT_LT((t.rotation - truth.rotation).norm(), 1e-6);
    EXPECT_LT((t.translation - truth.translation).norm(), 1e-6 * truth.translation.norm());
    EXPECT_LT(SumSquaredResiduals(t, src, ApplyAll(truth, src)), 1e-12 * truth.scale);
  }
}

TEST(Umeyama, ReflectionIsCorrected) {
  std::mt19937_64 rng(42);
  const auto src = RandomPoints(rng, 20, 10.0);
  std::vector<Eigen::Vector3d> dst;
  for (const auto& p : src) dst.emplace_back(p.x(), p.y(), -p.z());
  const SimilarityTransform t = EstimateSimilarityUmeyama(src, dst);
  EXPECT_TRUE(t.IsValid(1e-9));
  EXPECT_GT(t.rotation.determinant(), 0.0);
}

TEST(Umeyama, LocallyMinimal) {
  std::mt19937_64 rng(43);
  std::normal_distribution<double> noise(0.0, 1.0);
  for (int trial = 0; trial < 20; ++trial) {
    const SimilarityTransform truth = RandomTransform(rng);
    const auto src = RandomPoints(rng, 30, 50.0);
    auto dst = ApplyAll(truth, src);
    for (auto& p : dst) p += Eigen::Vector3d(noise(rng), noise(rng), noise(rng));
    const SimilarityTransform best = EstimateSimilarityUmeyama(src, dst);
    const double cost = SumSquaredResiduals(best, src, dst);
    for (int k = 0; k < 100; ++k) {
      SimilarityTransform perturbed = best;
      perturbed.scale *= 1.0 + 1e-3 * noise(rng);
      perturbed.rotation =
          Eigen::AngleAxisd(1e-3 * std::abs(noise(rng)), testing::RandomUnitVector(rng))
              .toRotationMatrix() *
          best.rotation;
      perturbed.translation += 1e-2 * Eigen::Vector3d(noise(rng), noise(rng), noise(rng));
      EXPECT_GE(SumSquaredResiduals(perturbed, src, dst), cost * (1.0 - 1e-12));
    }
  }
}

TEST(Umeyama, Equivariance) {
  std::mt19937_64 rng(44);
  std::normal_distribution<double> noise(0.0, 0.5);
  for (int trial = 0; trial < 50; ++trial) {
    const auto src = RandomPoints(rng, 25, 50.0);
    auto dst = ApplyAll(RandomTransform(rng), src);
    for (auto& p : dst) p += Eigen::Vector3d(noise(rng), noise(rng), noise(rng));
    const Eigen::Matrix3d q = testing::RandomRotation(rng);
    std::vector<Eigen::Vector3d> rotated;
    for (const auto& p : dst) rotated.push_back(q * p);
    const SimilarityTransform t = EstimateSimilarityUmeyama(src, dst);
    const SimilarityTransform tq = EstimateSimilarityUmeyama(src, rotated);
    EXPECT_NEAR(tq.scale, t.scale, 1e-9 * t.scale);
    EXPECT_LT((tq.rotation - q * t.rotation).cwiseAbs().maxCoeff(), 1e-9);
    EXPECT_LT((tq.translation - q * t.translation).norm(),
              1e-9 * (1.0 + t.translation.norm()));
  }
}

std::vector<ProbeCorrespondence> MakeCorrespondences(
    const std::vector<Eigen::Vector3d>& model, const SimilarityTransform& truth) {
  std::vector<ProbeCorrespondence> out;
  for (std::size_t i = 0; i < model.size(); ++i) {
    out.push_back({"p" + std::to_string(i), model[i],
                   EcefPoint::FromVector(truth.Apply(model[i]))});
  }
  return out;
}

SimilarityTransform GeoTransform(std::mt19937_64& rng) {
  SimilarityTransform truth = RandomTransform(rng);
  truth.translation += Wgs84ToEcef(47.0, 8.0, 400.0).ToVector();
  return truth;
}

TEST(Ransac, ExactCorrespondences) {
  std::mt19937_64 rng(45);
  const SimilarityTransform truth = GeoTransform(rng);
  const auto model = RandomPoints(rng, 20, 100.0 / truth.scale);
  RansacConfig config;
  const RansacResult result = EstimateSimilarityRansac(MakeCorrespondences(model, truth), config);
  ASSERT_TRUE(result.success);
  EXPECT_EQ(result.num_inliers, 20u);
  EXPECT_EQ(std::count(result.inlier_mask.begin(), result.inlier_mask.end(), true), 20);
  EXPECT_NEAR(result.transform.scale, truth.scale, 1e-6 * truth.scale);
  EXPECT_LT((result.transform.rotation - truth.rotation).norm(), 1e-6);
  EXPECT_LT((result.transform.translation - truth.translation).norm(), 1e-3);
}

TEST(Ransac, RejectsGrossOutliers) {
  std::mt19937_64 rng(46);
  const SimilarityTransform truth = GeoTransform(rng);
  const auto model = RandomPoints(rng, 20, 100.0 / truth.scale);
  auto corrs = MakeCorrespondences(model, truth);
  RansacConfig config;
  for (int i = 14; i < 20; ++i) {
    const Eigen::Vector3d moved =
        corrs[i].geo_pos.ToVector() + 600.0 * testing::RandomUnitVector(rng);
    corrs[i].geo_pos = EcefPoint::FromVector(moved);
  }
  const RansacResult result = EstimateSimilarityRansac(corrs, config);
  ASSERT_TRUE(result.success);
  for (int i = 0; i < 20; ++i) EXPECT_EQ(result.inlier_mask[i], i < 14) << i;
}

TEST(Ransac, DegenerateInputs) {
  const std::vector<ProbeCorrespondence> two = {{"a", {0, 0, 0}, {}}, {"b", {1, 0, 0}, {}}};
  EXPECT_THROW(EstimateSimilarityRansac(two, {}), DegenerateInputError);

  std::vector<ProbeCorrespondence> collinear;
  for (int i = 0; i < 6; ++i) {
    collinear.push_back({"p" + std::to_string(i), {double(i), 0, 0}, {double(i), 1, 2}});
  }
  RansacConfig config;
  config.max_iterations = 50;
  const RansacResult result = EstimateSimilarityRansac(collinear, config);
  EXPECT_FALSE(result.success);
  EXPECT_TRUE(result.inlier_mask.empty());
  EXPECT_EQ(result.num_iterations, 50);
}

TEST(Ransac, InvalidConfig) {
  RansacConfig config;
  config.inlier_threshold = 0.0;
  EXPECT_THROW(config.Validate(), std::domain_error);
  config = {};
  config.confidence = 1.0;
  EXPECT_THROW(config.Validate(), std::domain_error);
}

TEST(Ransac, DeterministicAndMaskConsistent) {
  std::mt19937_64 rng(47);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::normal_distribution<double> noise(0.0, 1.0);
  for (int trial = 0; trial < 30; ++trial) {
    const SimilarityTransform truth = GeoTransform(rng);
    const auto model = RandomPoints(rng, 40, 80.0 / truth.scale);
    auto corrs = MakeCorrespondences(model, truth);
    for (auto& c : corrs) {
      Eigen::Vector3d offset(noise(rng), noise(rng), noise(rng));
      if (unit(rng) < 0.3) offset *= 50.0;
      c.geo_pos = EcefPoint::FromVector(c.geo_pos.ToVector() + offset);
    }
    RansacConfig config;
    config.inlier_threshold = 3.0;
    config.seed = trial;
    const RansacResult a = EstimateSimilarityRansac(corrs, config);
    const RansacResult b = EstimateSimilarityRansac(corrs, config);
    ASSERT_TRUE(a.success);
    EXPECT_EQ(a.inlier_mask, b.inlier_mask);
    EXPECT_EQ(a.transform.scale, b.transform.scale);
    EXPECT_EQ(a.transform.rotation, b.transform.rotation);
    EXPECT_EQ(a.transform.translation, b.transform.translation);
    EXPECT_TRUE(a.transform.IsValid());
    std::size_t count = 0;
    for (std::size_t i = 0; i < corrs.size(); ++i) {
      const double residual =
          (a.transform.Apply(corrs[i].model_pos) - corrs[i].geo_pos.ToVector()).norm();
      if (a.inlier_mask[i]) {
        ++count;
        EXPECT_LE(residual, config.inlier_threshold);
      }
    }
    EXPECT_EQ(count, a.num_inliers);
  }
}

TEST(Ransac, RequiredIterations) {
  EXPECT_EQ(RequiredRansacIterations(1.0, 0.999, 10000), 1);
  EXPECT_EQ(RequiredRansacIterations(0.0, 0.999, 10000), 10000);
  // log(0.001) / log(1 - 0.125) = 51.7
  EXPECT_EQ(RequiredRansacIterations(0.5, 0.999, 10000), 52);
  EXPECT_EQ(RequiredRansacIterations(0.01, 0.999, 10000), 10000);
}

TEST(PooledInlierRatio, Examples) {
  EXPECT_NEAR(PooledInlierRatio({{5, 10}, {3, 5}}), 8.0 / 15.0, 1e-15);
  EXPECT_DOUBLE_EQ(PooledInlierRatio({{7, 10}}), 0.7);
  EXPECT_DOUBLE_EQ(PooledInlierRatio({{10, 10}, {0, 10}}), 0.5);
  EXPECT_THROW(PooledInlierRatio({}), UndefinedRatioError);
  EXPECT_THROW(PooledInlierRatio({{0, 0}}), UndefinedRatioError);
  EXPECT_THROW(PooledInlierRatio({{3, 2}}), std::domain_error);
}

TEST(PooledInlierRatio, EqualsWeightedAverage) {
  std::mt19937_64 rng(48);
  for (int i = 0; i < 1000; ++i) {
    const int k = std::uniform_int_distribution<int>(1, 10)(rng);
    std::vector<InlierCount> counts;
    double total = 0.0;
    for (int j = 0; j < k; ++j) {
      const std::size_t t = std::uniform_int_distribution<std::size_t>(1, 500)(rng);
      counts.push_back({std::uniform_int_distribution<std::size_t>(0, t)(rng), t});
      total += static_cast<double>(t);
    }
    double weighted = 0.0;
    for (const auto& c : counts) {
      const double ti = static_cast<double>(c.probes);
      weighted += static_cast<double>(c.inliers) / ti * (ti / total);
    }
    const double ratio = PooledInlierRatio(counts);
    EXPECT_NEAR(ratio, weighted, 1e-12);
    EXPECT_GE(ratio, 0.0);
    EXPECT_LE(ratio, 1.0);
  }
}

std::vector<ProbeComponent> RandomComponents(std::mt19937_64& rng) {
  std::vector<ProbeComponent> components;
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int k = 0; k < 4; ++k) {
    const SimilarityTransform truth = GeoTransform(rng);
    const auto model = RandomPoints(rng, 15 + 5 * k, 60.0 / truth.scale);
    ProbeComponent component{"comp" + std::to_string(k), MakeCorrespondences(model, truth)};
    for (auto& c : component.correspondences) {
      c.probe_id = component.component_id + "_" + c.probe_id;
      if (unit(rng) < 0.25) {
        c.geo_pos = EcefPoint::FromVector(c.geo_pos.ToVector() +
                                          200.0 * testing::RandomUnitVector(rng));
      }
    }
    components.push_back(std::move(component));
  }
  return components;
}

TEST(VerifyModel, SingleExactComponent) {
  std::mt19937_64 rng(49);
  const SimilarityTransform truth = GeoTransform(rng);
  const auto model = RandomPoints(rng, 20, 50.0);
  const AlignmentReport report =
      VerifyModel({{"model", MakeCorrespondences(model, truth)}}, RansacConfig{});
  EXPECT_DOUBLE_EQ(report.inlier_ratio, 1.0);
  ASSERT_EQ(report.per_component.size(), 1u);
  EXPECT_TRUE(report.per_component[0].transform.has_value());
  EXPECT_EQ(report.per_component[0].count.inliers, 20u);
}

TEST(VerifyModel, SmallComponentsAreUnverifiable) {
  std::mt19937_64 rng(50);
  auto components = RandomComponents(rng);
  components.push_back({"tiny", {{"t0", {0, 0, 0}, {}}, {"t1", {1, 0, 0}, {}}}});
  const AlignmentReport report = VerifyModel(components, RansacConfig{});
  const ComponentAlignment& tiny = report.per_component.back();
  EXPECT_TRUE(tiny.unverifiable);
  EXPECT_FALSE(tiny.transform.has_value());
  EXPECT_EQ(tiny.count.inliers, 0u);
  EXPECT_EQ(tiny.count.probes, 2u);

  const AlignmentReport only_tiny =
      VerifyModel({{"tiny", {{"t0", {0, 0, 0}, {}}, {"t1", {1, 0, 0}, {}}}}}, RansacConfig{});
  EXPECT_EQ(only_tiny.inlier_ratio, 0.0);
}

TEST(VerifyModel, Errors) {
  EXPECT_THROW(VerifyModel({}, RansacConfig{}), UsageError);
  const std::vector<ProbeCorrespondence> probes = {{"p", {0, 0, 0}, {}}};
  EXPECT_THROW(VerifyModel({{"a", probes}, {"b", probes}}, RansacConfig{}), UsageError);
  EXPECT_THROW(VerifyModel({{"a", probes}, {"a", {}}}, RansacConfig{}), UsageError);
}

TEST(VerifyModel, OrderInvariant) {
  std::mt19937_64 rng(51);
  for (int trial = 0; trial < 10; ++trial) {
    auto components = RandomComponents(rng);
    RansacConfig config;
    config.seed = 1000 + trial;
    const AlignmentReport reference = VerifyModel(components, config);
    for (int shuffle = 0; shuffle < 5; ++shuffle) {
      std::shuffle(components.begin(), components.end(), rng);
      for (auto& c : components) {
        std::shuffle(c.correspondences.begin(), c.correspondences.end(), rng);
      }
      const AlignmentReport report = VerifyModel(components, config);
      EXPECT_EQ(report.inlier_ratio, reference.inlier_ratio);
      for (const auto& alignment : report.per_component) {
        const auto it = std::find_if(
            reference.per_component.begin(), reference.per_component.end(),
            [&](const ComponentAlignment& r) { return r.component_id == alignment.component_id; });
        ASSERT_NE(it, reference.per_component.end());
        EXPECT_EQ(it->count.inliers, alignment.count.inliers);
      }
    }
  }
}

}  // namespace
}  // namespace dgkit
