#include "fmdp/query_eval.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <stdexcept>

#include "fmdp/noise.hpp"

namespace fmdp {

double Answer(const SanitizedMatrix& sm, const RangeQuery& q) {
  if (!q.region.WithinExtents(sm.extents)) {
    throw std::invalid_argument("query " + q.region.ToString() +
                                " outside matrix extents");
  }
  double answer = 0;
  for (const SanitizedPartition& p : sm.partitions) {
    const int64_t overlap = p.region.IntersectionVolume(q.region);
    if (overlap == 0) continue;
    answer += p.noisy_count * (static_cast<double>(overlap) /
                               static_cast<double>(p.volume));
  }
  return answer;
}

int64_t TrueAnswer(const FrequencyMatrix& m, const RangeQuery& q) {
  return m.RegionSum(q.region);
}

double Mre(double true_count, double noisy_answer, double floor) {
  if (floor <= 0) throw std::invalid_argument("mre floor must be > 0");
  const double denom = std::max(true_count, floor);
  return std::abs(true_count - noisy_answer) / denom * 100.0;
}

std::vector<RangeQuery> GenerateWorkload(const WorkloadSpec& spec,
                                         const std::vector<int64_t>& extents) {
  if (spec.count < 0) throw std::invalid_argument("query count must be >= 0");
  if (spec.kind == WorkloadKind::kFixedCoverage &&
      !(spec.coverage > 0 && spec.coverage <= 1)) {
    throw std::invalid_argument("coverage must be in (0,1]");
  }
  const int d = static_cast<int>(extents.size());
  std::vector<RangeQuery> out;
  out.reserve(spec.count);
  NoiseStream root(spec.seed);
  for (int i = 0; i < spec.count; ++i) {
    NoiseStream qs = root.Child(static_cast<uint64_t>(i));
    std::vector<Interval> bounds(d);
    for (int k = 0; k < d; ++k) {
      if (spec.kind == WorkloadKind::kRandomShapeSize) {
        const int64_t lo = qs.NextInt(0, extents[k]);
        const int64_t hi = qs.NextInt(lo + 1, extents[k] + 1);
        bounds[k] = {lo, hi};
      } else {
        int64_t width = static_cast<int64_t>(
            std::ceil(spec.coverage * static_cast<double>(extents[k])));
        width = std::clamp<int64_t>(width, 1, extents[k]);
        const int64_t lo =
            width == extents[k] ? 0 : qs.NextInt(0, extents[k] - width + 1);
        bounds[k] = {lo, lo + width};
      }
    }
    out.push_back({Region(std::move(bounds))});
  }
  return out;
}

namespace {

// Summed-area tables over the (padded) cell grid: answering a range query
// costs 2^d lookups instead of a pass over all partitions. The per-cell
// values are exactly the uniformity-prorated partition counts, so the
// result matches Answer() up to float summation order.
class PrefixEngine {
 public:
  PrefixEngine(const SanitizedMatrix& sm, const FrequencyMatrix& m)
      : extents_(m.extents()), d_(m.Dims()) {
    padded_.resize(d_);
    stride_.assign(d_, 1);
    int64_t volume = 1;
    for (int k = 0; k < d_; ++k) padded_[k] = extents_[k] + 1;
    for (int k = d_ - 1; k >= 0; --k) {
      stride_[k] = volume;
      volume *= padded_[k];
    }
    noisy_.assign(static_cast<size_t>(volume), 0.0);
    truth_.assign(static_cast<size_t>(volume), 0);

    for (const Entry& e : m.entries()) {
      truth_[IndexOf(e.coord)] += e.count;
    }
    std::vector<int64_t> c(d_);
    for (const SanitizedPartition& p : sm.partitions) {
      const double per_cell =
          p.noisy_count / static_cast<double>(p.volume);
      for (int k = 0; k < d_; ++k) c[k] = p.region.Bound(k).lo;
      while (true) {
        noisy_[IndexOf(c)] += per_cell;
        int k = d_ - 1;
        for (; k >= 0; --k) {
          if (++c[k] < p.region.Bound(k).hi) break;
          c[k] = p.region.Bound(k).lo;
        }
        if (k < 0) break;
      }
    }
    // In-place prefix sums along each dimension.
    for (int k = 0; k < d_; ++k) {
      const int64_t n = static_cast<int64_t>(noisy_.size());
      const int64_t stride = stride_[k];
      const int64_t extent = padded_[k];
      for (int64_t i = 0; i < n; ++i) {
        const int64_t pos = (i / stride) % extent;
        if (pos > 0) {
          noisy_[i] += noisy_[i - stride];
          truth_[i] += truth_[i - stride];
        }
      }
    }
  }

  double Noisy(const Region& r) const { return Corners(noisy_, r); }
  int64_t Truth(const Region& r) const { return Corners(truth_, r); }

 private:
  size_t IndexOf(const Coord& c) const {
    int64_t idx = 0;
    for (int k = 0; k < d_; ++k) idx += (c[k] + 1) * stride_[k];
    return static_cast<size_t>(idx);
  }

  template <typename T>
  T Corners(const std::vector<T>& sat, const Region& r) const {
    T total = 0;
    // Inclusion-exclusion over the 2^d corners; sign is (-1)^(#lo picks).
    for (uint32_t mask = 0; mask < (1u << d_); ++mask) {
      int64_t idx = 0;
      int sign = 1;
      for (int k = 0; k < d_; ++k) {
        if (mask & (1u << k)) {
          idx += r.Bound(k).hi * stride_[k];
        } else {
          idx += r.Bound(k).lo * stride_[k];
          sign = -sign;
        }
      }
      total += sign > 0 ? sat[idx] : -sat[idx];
    }
    return total;
  }

  std::vector<int64_t> extents_;
  int d_;
  std::vector<int64_t> padded_;
  std::vector<int64_t> stride_;
  std::vector<double> noisy_;
  std::vector<int64_t> truth_;
};

}  // namespace

EvalSummary Evaluate(const SanitizedMatrix& sm, const FrequencyMatrix& m,
                     const std::vector<RangeQuery>& workload,
                     double mre_floor) {
  if (sm.extents != m.extents()) {
    throw std::invalid_argument(
        "sanitized matrix extents do not match the source matrix");
  }
  EvalSummary summary;
  summary.records.reserve(workload.size());

  int64_t padded_volume = 1;
  bool overflow = false;
  for (int64_t e : m.extents()) {
    if (padded_volume > kSatVolumeLimit / (e + 1)) {
      overflow = true;
      break;
    }
    padded_volume *= (e + 1);
  }
  const bool use_sat = !overflow && padded_volume <= kSatVolumeLimit;

  std::unique_ptr<PrefixEngine> engine;
  if (use_sat) engine = std::make_unique<PrefixEngine>(sm, m);

  for (size_t i = 0; i < workload.size(); ++i) {
    const RangeQuery& q = workload[i];
    double truth;
    double noisy;
    if (use_sat) {
      if (!q.region.WithinExtents(m.extents())) {
        throw std::invalid_argument("query outside matrix extents");
      }
      truth = static_cast<double>(engine->Truth(q.region));
      noisy = engine->Noisy(q.region);
    } else {
      truth = static_cast<double>(TrueAnswer(m, q));
      noisy = Answer(sm, q);
    }
    summary.records.push_back({static_cast<int>(i), truth, noisy,
                               Mre(truth, noisy, mre_floor)});
  }

  double sum = 0;
  std::vector<double> mres;
  mres.reserve(summary.records.size());
  for (const QueryRecord& r : summary.records) {
    sum += r.mre;
    mres.push_back(r.mre);
  }
  if (!mres.empty()) {
    summary.mean_mre = sum / static_cast<double>(mres.size());
    std::sort(mres.begin(), mres.end());
    const size_t n = mres.size();
    summary.median_mre = n % 2 == 1
                             ? mres[n / 2]
                             : 0.5 * (mres[n / 2 - 1] + mres[n / 2]);
  }
  return summary;
}

}  // namespace fmdp
