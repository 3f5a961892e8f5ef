#include "fmdp/query_eval.hpp"

#include <cmath>
#include <random>

#include "fmdp/flat_sanitizers.hpp"
#include "gtest/gtest.h"

namespace fmdp {
namespace {

// The worked single-query example: partitions of volume 6, 4 and 8 with
// zero-noise counts 12, 2 and 4; a query covering one cell of the first
// and one cell of the second answers 12/6 + 2/4 = 2.5.
SanitizedMatrix FigureOneSanitized() {
  SanitizedMatrix sm;
  sm.extents = {3, 2, 3};
  Region p3({{0, 1}, {0, 2}, {0, 3}});
  Region p1({{1, 3}, {0, 2}, {0, 1}});
  Region p2({{1, 3}, {0, 2}, {1, 3}});
  sm.partitions.push_back({p3, 12.0, p3.Volume()});
  sm.partitions.push_back({p1, 2.0, p1.Volume()});
  sm.partitions.push_back({p2, 4.0, p2.Volume()});
  return sm;
}

TEST(Answer, WorkedUniformityExample) {
  SanitizedMatrix sm = FigureOneSanitized();
  RangeQuery q{Region({{0, 2}, {0, 1}, {0, 1}})};
  EXPECT_NEAR(Answer(sm, q), 2.5, 1e-12);
}

TEST(Answer, FullDomainSumsNoisyCounts) {
  SanitizedMatrix sm = FigureOneSanitized();
  RangeQuery q{Region({{0, 3}, {0, 2}, {0, 3}})};
  EXPECT_NEAR(Answer(sm, q), 18.0, 1e-12);
}

TEST(Answer, MatchesPerCellMaterializationOracle) {
  std::mt19937_64 rng(55);
  for (int it = 0; it < 20; ++it) {
    std::vector<Coord> pts;
    for (int i = 0; i < 200; ++i) {
      pts.push_back({static_cast<int64_t>(rng() % 20),
                     static_cast<int64_t>(rng() % 20)});
    }
    FrequencyMatrix m = FrequencyMatrix::FromPoints(pts, {20, 20});
    GridOptions opts;
    opts.seed = it;
    SanitizeResult res = SanitizeGrid(m, 0.5, Method::kEbp, opts);

    // Independent oracle: materialize per-cell values noisy/volume.
    std::vector<double> cell(20 * 20, 0.0);
    for (const auto& p : res.matrix.partitions) {
      const double v = p.noisy_count / static_cast<double>(p.volume);
      for (int64_t x = p.region.Bound(0).lo; x < p.region.Bound(0).hi; ++x) {
        for (int64_t y = p.region.Bound(1).lo; y < p.region.Bound(1).hi;
             ++y) {
          cell[static_cast<size_t>(x * 20 + y)] += v;
        }
      }
    }
    for (int probe = 0; probe < 50; ++probe) {
      const int64_t x0 = static_cast<int64_t>(rng() % 20);
      const int64_t x1 = x0 + 1 + static_cast<int64_t>(rng() % (20 - x0));
      const int64_t y0 = static_cast<int64_t>(rng() % 20);
      const int64_t y1 = y0 + 1 + static_cast<int64_t>(rng() % (20 - y0));
      RangeQuery q{Region({{x0, x1}, {y0, y1}})};
      double oracle = 0;
      for (int64_t x = x0; x < x1; ++x) {
        for (int64_t y = y0; y < y1; ++y) {
          oracle += cell[static_cast<size_t>(x * 20 + y)];
        }
      }
      EXPECT_NEAR(Answer(res.matrix, q), oracle, 1e-9);
    }
  }
}

TEST(Answer, RejectsQueryOutsideExtents) {
  SanitizedMatrix sm = FigureOneSanitized();
  EXPECT_THROW(Answer(sm, {Region({{0, 4}, {0, 2}, {0, 3}})}),
               std::invalid_argument);
}

TEST(MreTest, DirectFormula) {
  EXPECT_DOUBLE_EQ(Mre(100, 110), 10.0);
  EXPECT_DOUBLE_EQ(Mre(250, 250), 0.0);
}

TEST(MreTest, SmoothingFloorForEmptyQueries) {
  EXPECT_DOUBLE_EQ(Mre(0, 3), 300.0);
  EXPECT_DOUBLE_EQ(Mre(0, 3, 10.0), 30.0);
  EXPECT_THROW(Mre(0, 3, 0.0), std::invalid_argument);
}

TEST(Workload, FixedCoverageWidths) {
  WorkloadSpec spec;
  spec.kind = WorkloadKind::kFixedCoverage;
  spec.coverage = 0.10;
  spec.count = 200;
  spec.seed = 2;
  auto queries = GenerateWorkload(spec, {1000, 1000});
  ASSERT_EQ(queries.size(), 200u);
  for (const auto& q : queries) {
    EXPECT_EQ(q.region.Bound(0).Width(), 100);
    EXPECT_EQ(q.region.Bound(1).Width(), 100);
    EXPECT_TRUE(q.region.WithinExtents({1000, 1000}));
  }
}

TEST(Workload, TinyCoverageClampsToOneCell) {
  WorkloadSpec spec;
  spec.kind = WorkloadKind::kFixedCoverage;
  spec.coverage = 0.0001;
  spec.count = 10;
  auto queries = GenerateWorkload(spec, {50, 50});
  for (const auto& q : queries) {
    EXPECT_EQ(q.region.Bound(0).Width(), 1);
  }
}

TEST(Workload, RandomShapeSizeWithinExtentsAndExactCount) {
  WorkloadSpec spec;
  spec.kind = WorkloadKind::kRandomShapeSize;
  spec.count = 1000;
  spec.seed = 3;
  auto queries = GenerateWorkload(spec, {40, 7, 13});
  ASSERT_EQ(queries.size(), 1000u);
  for (const auto& q : queries) {
    EXPECT_TRUE(q.region.WithinExtents({40, 7, 13}));
  }
}

TEST(Workload, DeterministicUnderSeed) {
  WorkloadSpec spec;
  spec.count = 100;
  spec.seed = 77;
  auto a = GenerateWorkload(spec, {64, 64});
  auto b = GenerateWorkload(spec, {64, 64});
  for (size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].region, b[i].region);
  }
}

TEST(EvaluateTest, IdentityZeroNoiseGivesZeroError) {
  std::vector<Coord> pts = {{0, 0}, {1, 3}, {2, 2}};
  FrequencyMatrix m = FrequencyMatrix::FromPoints(pts, {4, 4}, {7, 2, 4});
  SanitizeOptions opts;
  opts.disable_noise = true;
  SanitizeResult res = SanitizeIdentity(m, 0.1, opts);
  WorkloadSpec spec;
  spec.count = 500;
  spec.seed = 5;
  auto workload = GenerateWorkload(spec, m.extents());
  EvalSummary eval = Evaluate(res.matrix, m, workload);
  EXPECT_DOUBLE_EQ(eval.mean_mre, 0.0);
  EXPECT_DOUBLE_EQ(eval.median_mre, 0.0);
}

TEST(EvaluateTest, UniformZeroNoiseOnUniformMatrixIsExact) {
  std::vector<Coord> pts;
  for (int64_t x = 0; x < 10; ++x) {
    for (int64_t y = 0; y < 10; ++y) pts.push_back({x, y});
  }
  FrequencyMatrix m = FrequencyMatrix::FromPoints(
      pts, {10, 10}, std::vector<int64_t>(100, 3));
  SanitizeOptions opts;
  opts.disable_noise = true;
  SanitizeResult res = SanitizeUniform(m, 0.1, opts);
  WorkloadSpec spec;
  spec.count = 300;
  spec.seed = 6;
  auto workload = GenerateWorkload(spec, m.extents());
  EvalSummary eval = Evaluate(res.matrix, m, workload);
  EXPECT_NEAR(eval.mean_mre, 0.0, 1e-9);
}

TEST(EvaluateTest, MeanIsArithmeticMeanOfPerQueryValues) {
  FrequencyMatrix m = FrequencyMatrix::FromPoints({{0, 0}}, {8, 8}, {10});
  SanitizeOptions opts;
  opts.seed = 9;
  SanitizeResult res = SanitizeIdentity(m, 0.2, opts);
  WorkloadSpec spec;
  spec.count = 111;
  spec.seed = 8;
  auto workload = GenerateWorkload(spec, m.extents());
  EvalSummary eval = Evaluate(res.matrix, m, workload);
  double sum = 0;
  for (const auto& r : eval.records) sum += r.mre;
  EXPECT_NEAR(eval.mean_mre, sum / 111.0, 1e-12);
}

TEST(EvaluateTest, PrefixEngineMatchesDirectPath) {
  // The same evaluation through the prefix-sum engine (small domain) and
  // through the per-partition fallback must agree.
  std::mt19937_64 rng(91);
  std::vector<Coord> pts;
  for (int i = 0; i < 300; ++i) {
    pts.push_back({static_cast<int64_t>(rng() % 30),
                   static_cast<int64_t>(rng() % 30)});
  }
  FrequencyMatrix m = FrequencyMatrix::FromPoints(pts, {30, 30});
  GridOptions opts;
  opts.seed = 14;
  SanitizeResult res = SanitizeGrid(m, 0.4, Method::kEug, opts);
  WorkloadSpec spec;
  spec.count = 200;
  spec.seed = 15;
  auto workload = GenerateWorkload(spec, m.extents());
  EvalSummary eval = Evaluate(res.matrix, m, workload);
  for (size_t i = 0; i < workload.size(); ++i) {
    EXPECT_NEAR(eval.records[i].noisy, Answer(res.matrix, workload[i]), 1e-9);
    EXPECT_DOUBLE_EQ(eval.records[i].truth,
                     static_cast<double>(TrueAnswer(m, workload[i])));
  }
}

TEST(EvaluateTest, RejectsExtentsMismatch) {
  FrequencyMatrix m = FrequencyMatrix::FromPoints({{0, 0}}, {8, 8}, {1});
  SanitizedMatrix sm = FigureOneSanitized();
  EXPECT_THROW(Evaluate(sm, m, {}), std::invalid_argument);
}

}  // namespace
}  // namespace fmdp
