#include "fmdp/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "fmdp/noise.hpp"

namespace fmdp {

std::vector<int64_t> DefaultExtents(int dims, int64_t n_points) {
  if (dims < 1) throw std::invalid_argument("dims must be >= 1");
  if (n_points <= 0) throw std::invalid_argument("n_points must be > 0");
  // floor(n^(1/d)), corrected against float error at perfect powers.
  int64_t width = static_cast<int64_t>(
      std::floor(std::pow(static_cast<double>(n_points), 1.0 / dims)));
  while (std::pow(static_cast<double>(width + 1), dims) <=
         static_cast<double>(n_points)) {
    ++width;
  }
  width = std::max<int64_t>(width, 1);
  return std::vector<int64_t>(dims, width);
}

namespace {

std::vector<int64_t> ResolveExtents(const SyntheticSpec& spec) {
  if (!spec.extents.empty()) {
    if (static_cast<int>(spec.extents.size()) != spec.dims) {
      throw std::invalid_argument("extents do not match dims");
    }
    return spec.extents;
  }
  return DefaultExtents(spec.dims, spec.n_points);
}

}  // namespace

FrequencyMatrix GenGaussian(const SyntheticSpec& spec) {
  if (spec.variance < 0) throw std::invalid_argument("variance must be >= 0");
  const auto extents = ResolveExtents(spec);
  const int d = spec.dims;
  const double sigma = std::sqrt(spec.variance);
  NoiseStream stream(spec.seed);

  NoiseStream center_stream = stream.Child(0);
  std::vector<int64_t> center(d);
  for (int k = 0; k < d; ++k) center[k] = center_stream.NextInt(0, extents[k]);

  NoiseStream point_stream = stream.Child(1);
  std::vector<Coord> points;
  points.reserve(static_cast<size_t>(spec.n_points));
  int64_t attempts = 0;
  const int64_t max_attempts =
      std::max<int64_t>(spec.n_points * 1000, 1'000'000);
  Coord c(d);
  while (static_cast<int64_t>(points.size()) < spec.n_points) {
    if (++attempts > max_attempts) {
      std::ostringstream os;
      os << "gaussian acceptance rate below 1e-3: accepted " << points.size()
         << " of " << attempts << " draws (variance " << spec.variance
         << " vs extents " << extents[0] << ")";
      throw std::runtime_error(os.str());
    }
    bool ok = true;
    for (int k = 0; k < d; ++k) {
      const double x =
          static_cast<double>(center[k]) + sigma * point_stream.NextGaussian();
      const int64_t xi = std::llround(x);
      if (xi < 0 || xi >= extents[k]) {
        ok = false;
        break;
      }
      c[k] = xi;
    }
    if (ok) points.push_back(c);
  }
  return FrequencyMatrix::FromPoints(points, extents);
}

FrequencyMatrix GenZipf(const SyntheticSpec& spec) {
  if (spec.zipf_a <= 1.0) {
    throw std::invalid_argument("zipf skew a must be > 1");
  }
  const auto extents = ResolveExtents(spec);
  const int d = spec.dims;

  // Truncated-and-renormalized CDF over ranks 1..extent, one per distinct
  // extent.
  std::vector<std::vector<double>> cdfs(d);
  for (int k = 0; k < d; ++k) {
    auto& cdf = cdfs[k];
    cdf.resize(static_cast<size_t>(extents[k]));
    double sum = 0;
    for (int64_t rank = 1; rank <= extents[k]; ++rank) {
      sum += std::pow(static_cast<double>(rank), -spec.zipf_a);
      cdf[static_cast<size_t>(rank - 1)] = sum;
    }
    for (double& v : cdf) v /= sum;
    cdf.back() = 1.0;
  }

  NoiseStream point_stream = NoiseStream(spec.seed).Child(1);
  std::vector<Coord> points;
  points.reserve(static_cast<size_t>(spec.n_points));
  Coord c(d);
  for (int64_t i = 0; i < spec.n_points; ++i) {
    for (int k = 0; k < d; ++k) {
      const double u = point_stream.NextUniform();
      const auto& cdf = cdfs[k];
      const auto it = std::lower_bound(cdf.begin(), cdf.end(), u);
      c[k] = static_cast<int64_t>(it - cdf.begin());  // rank-1 -> cell 0
    }
    points.push_back(c);
  }
  return FrequencyMatrix::FromPoints(points, extents);
}

FrequencyMatrix Generate(const SyntheticSpec& spec) {
  return spec.kind == SyntheticKind::kGaussian ? GenGaussian(spec)
                                               : GenZipf(spec);
}

}  // namespace fmdp
