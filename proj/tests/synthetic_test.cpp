#include "fmdp/synthetic.hpp"

#include <cmath>

#include "fmdp/noise.hpp"
#include "gtest/gtest.h"

namespace fmdp {
namespace {

TEST(DefaultExtentsTest, RootFloor) {
  EXPECT_EQ(DefaultExtents(2, 1'000'000), (std::vector<int64_t>{1000, 1000}));
  EXPECT_EQ(DefaultExtents(4, 1'000'000),
            (std::vector<int64_t>(4, 31)));  // floor(1e6^(1/4)) = 31
  EXPECT_EQ(DefaultExtents(6, 1'000'000), (std::vector<int64_t>(6, 10)));
  EXPECT_EQ(DefaultExtents(3, 7), (std::vector<int64_t>{1, 1, 1}));
}

TEST(GenGaussianTest, ZeroVarianceConcentratesInOneCell) {
  SyntheticSpec spec;
  spec.dims = 2;
  spec.n_points = 5000;
  spec.extents = {50, 50};
  spec.variance = 0;
  spec.seed = 1;
  FrequencyMatrix m = GenGaussian(spec);
  EXPECT_EQ(m.total(), 5000);
  EXPECT_EQ(m.NonZeroCells(), 1);
}

TEST(GenGaussianTest, SampleMeanNearCenter) {
  SyntheticSpec spec;
  spec.dims = 2;
  spec.n_points = 1'000'000;
  spec.extents = {1000, 1000};
  spec.variance = 2500;
  spec.seed = 10;
  FrequencyMatrix m = GenGaussian(spec);
  EXPECT_EQ(m.total(), 1'000'000);

  NoiseStream center_stream = NoiseStream(10).Child(0);
  const double cx = static_cast<double>(center_stream.NextInt(0, 1000));
  const double cy = static_cast<double>(center_stream.NextInt(0, 1000));
  double sx = 0, sy = 0;
  for (const Entry& e : m.entries()) {
    sx += static_cast<double>(e.coord[0] * e.count);
    sy += static_cast<double>(e.coord[1] * e.count);
  }
  const double n = static_cast<double>(m.total());
  // Sample mean within 1% of the center (the center is interior here, so
  // boundary truncation is negligible).
  EXPECT_NEAR(sx / n, cx, 0.01 * 1000);
  EXPECT_NEAR(sy / n, cy, 0.01 * 1000);
}

TEST(GenGaussianTest, DeterministicUnderSeed) {
  SyntheticSpec spec;
  spec.dims = 3;
  spec.n_points = 20'000;
  spec.extents = {30, 30, 30};
  spec.variance = 16;
  spec.seed = 7;
  FrequencyMatrix a = GenGaussian(spec);
  FrequencyMatrix b = GenGaussian(spec);
  ASSERT_EQ(a.NonZeroCells(), b.NonZeroCells());
  for (int64_t i = 0; i < a.NonZeroCells(); ++i) {
    EXPECT_EQ(a.entries()[i].coord, b.entries()[i].coord);
    EXPECT_EQ(a.entries()[i].count, b.entries()[i].count);
  }
}

TEST(GenGaussianTest, PathologicalAcceptanceRejected) {
  SyntheticSpec spec;
  spec.dims = 2;
  spec.n_points = 10'000;
  spec.extents = {2, 2};
  spec.variance = 1e8;  // nearly every draw lands outside a 2x2 grid
  spec.seed = 3;
  EXPECT_THROW(GenGaussian(spec), std::runtime_error);
}

TEST(GenZipfTest, ExtremeSkewPutsMassAtRankOne) {
  SyntheticSpec spec;
  spec.kind = SyntheticKind::kZipf;
  spec.dims = 2;
  spec.n_points = 100'000;
  spec.extents = {100, 100};
  spec.zipf_a = 20.0;
  spec.seed = 11;
  FrequencyMatrix m = GenZipf(spec);
  // P(rank 1) = 1/zeta_trunc(20) > 0.9999; both coordinates concentrate.
  EXPECT_GT(m.At({0, 0}), static_cast<int64_t>(0.99 * 100'000));
}

TEST(GenZipfTest, RankRatioFollowsPowerLaw) {
  SyntheticSpec spec;
  spec.kind = SyntheticKind::kZipf;
  spec.dims = 1;
  spec.n_points = 1'000'000;
  spec.extents = {1000};
  spec.zipf_a = 1.5;
  spec.seed = 19;
  FrequencyMatrix m = GenZipf(spec);
  const double c1 = static_cast<double>(m.At({0}));
  const double c2 = static_cast<double>(m.At({1}));
  // Frequency ratio of rank 1 to rank 2 approaches 2^a.
  EXPECT_NEAR(c1 / c2, std::pow(2.0, 1.5), 0.05 * std::pow(2.0, 1.5));
}

TEST(GenZipfTest, RejectsFlatSkew) {
  SyntheticSpec spec;
  spec.kind = SyntheticKind::kZipf;
  spec.zipf_a = 1.0;
  EXPECT_THROW(GenZipf(spec), std::invalid_argument);
}

TEST(GenZipfTest, DeterministicUnderSeed) {
  SyntheticSpec spec;
  spec.kind = SyntheticKind::kZipf;
  spec.dims = 2;
  spec.n_points = 50'000;
  spec.extents = {64, 64};
  spec.zipf_a = 1.4;
  spec.seed = 23;
  FrequencyMatrix a = GenZipf(spec);
  FrequencyMatrix b = GenZipf(spec);
  EXPECT_EQ(a.total(), b.total());
  ASSERT_EQ(a.NonZeroCells(), b.NonZeroCells());
  for (int64_t i = 0; i < a.NonZeroCells(); ++i) {
    EXPECT_EQ(a.entries()[i].coord, b.entries()[i].coord);
    EXPECT_EQ(a.entries()[i].count, b.entries()[i].count);
  }
}

}  // namespace
}  // namespace fmdp
