#include "fmdp/flat_sanitizers.hpp"

#include <algorithm>
#include <chrono>
#include <sstream>
#include <stdexcept>

#include "fmdp/io.hpp"

namespace fmdp {

namespace {

using Clock = std::chrono::steady_clock;

double Elapsed(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

void StampCommon(SanitizedMatrix& sm, const FrequencyMatrix& m, Method method,
                 double eps, const SanitizeOptions& opts,
                 const BudgetLedger& ledger) {
  sm.extents = m.extents();
  sm.method = method;
  sm.epsilon = eps;
  sm.seed = opts.seed;
  sm.noise_disabled = opts.disable_noise;
  sm.AddMeta("ledger_spent", FormatDouble(ledger.spent()));
  sm.AddMeta("ledger_entries", std::to_string(ledger.EntryCount()));
  if (opts.disable_noise) sm.AddMeta("warning", "noise disabled, not private");
}

}  // namespace

SanitizeResult SanitizeUniform(const FrequencyMatrix& m, double eps,
                               const SanitizeOptions& opts) {
  if (eps <= 0) throw std::invalid_argument("epsilon must be > 0");
  const auto start = Clock::now();
  SanitizeResult res;
  res.ledger = BudgetLedger(eps);
  NoiseStream stream = NoiseStream(opts.seed).Child(0);
  const double noisy =
      SanitizeCount(m.total(), 1.0, eps, stream, res.ledger, "total", {},
                    opts.disable_noise);
  Region domain = m.Domain();
  const int64_t volume = domain.Volume();
  res.matrix.partitions.push_back({std::move(domain), noisy, volume});
  res.ledger.AssertWithin();
  StampCommon(res.matrix, m, Method::kUniform, eps, opts, res.ledger);
  res.seconds = Elapsed(start);
  return res;
}

SanitizeResult SanitizeIdentity(const FrequencyMatrix& m, double eps,
                                const SanitizeOptions& opts,
                                int64_t cell_cap) {
  if (eps <= 0) throw std::invalid_argument("epsilon must be > 0");
  const int64_t volume = m.Volume();
  if (volume > cell_cap) {
    std::ostringstream os;
    os << "identity would enumerate " << volume
       << " cells (cap " << cell_cap
       << "); per-cell publication is intractable at this dimensionality";
    throw InfeasibleError(os.str());
  }
  const auto start = Clock::now();
  SanitizeResult res;
  res.ledger = BudgetLedger(eps);
  const int d = m.Dims();
  NoiseStream cells = NoiseStream(opts.seed).Child(1);

  if (!res.ledger.CanAbsorb(eps, {"cells"})) {
    throw BudgetOverflowError("cannot absorb identity budget");
  }
  res.matrix.partitions.reserve(static_cast<size_t>(volume));
  // Row-major enumeration matches the entry order, so a single merge
  // pointer yields each cell's true count.
  Coord c(d, 0);
  const auto& entries = m.entries();
  size_t next_entry = 0;
  std::vector<Interval> bounds(d);
  for (int64_t idx = 0; idx < volume; ++idx) {
    int64_t count = 0;
    if (next_entry < entries.size() && entries[next_entry].coord == c) {
      count = entries[next_entry].count;
      ++next_entry;
    }
    double noisy = static_cast<double>(count);
    if (!opts.disable_noise) {
      noisy += cells.Child(static_cast<uint64_t>(idx)).NextLaplace(1.0 / eps);
    }
    for (int k = 0; k < d; ++k) bounds[k] = {c[k], c[k] + 1};
    res.matrix.partitions.push_back({Region(bounds), noisy, 1});
    for (int k = d - 1; k >= 0; --k) {
      if (++c[k] < m.extents()[k]) break;
      c[k] = 0;
    }
  }
  res.ledger.Charge("cell noise", eps, {"cells"}, volume);
  res.ledger.AssertWithin();
  StampCommon(res.matrix, m, Method::kIdentity, eps, opts, res.ledger);
  res.seconds = Elapsed(start);
  return res;
}

SanitizeResult SanitizeGrid(const FrequencyMatrix& m, double eps_tot,
                            Method provider, const GridOptions& opts) {
  if (eps_tot <= 0) throw std::invalid_argument("epsilon must be > 0");
  if (!(opts.eps0_fraction > 0 && opts.eps0_fraction < 1)) {
    throw std::invalid_argument("eps0 fraction must be in (0,1)");
  }
  if (provider != Method::kEug && provider != Method::kEbp) {
    throw std::invalid_argument("grid provider must be eug or ebp");
  }
  const auto start = Clock::now();
  SanitizeResult res;
  res.ledger = BudgetLedger(eps_tot);
  NoiseStream root = NoiseStream(opts.seed);

  const double eps0 = opts.eps0_fraction * eps_tot;
  NoiseStream total_stream = root.Child(0);
  const double noisy_total =
      SanitizeCount(m.total(), 1.0, eps0, total_stream, res.ledger, "total",
                    {}, opts.disable_noise);
  const double eps_rem = eps_tot - eps0;

  const int d = m.Dims();
  const int64_t min_extent =
      *std::min_element(m.extents().begin(), m.extents().end());
  FanoutResult fanout;
  if (provider == Method::kEug) {
    GranularityConfig cfg;
    cfg.c0 = opts.c0;
    cfg.selectivity = opts.selectivity;
    cfg.dims = d;
    cfg.noisy_total = noisy_total;
    cfg.epsilon = eps_rem;
    fanout = opts.selectivity ? EugFanoutKnownR(cfg, min_extent)
                              : EugFanoutIntegrated(cfg, min_extent);
  } else {
    fanout = EbpFanout(noisy_total, eps_rem, d, min_extent);
  }
  const int64_t m_fanout = fanout.m;

  // Interval lists and split counts per dimension (min(m, extent) each).
  std::vector<std::vector<Interval>> dim_intervals(d);
  std::vector<int64_t> splits(d);
  int64_t num_partitions = 1;
  const Region domain = m.Domain();
  for (int k = 0; k < d; ++k) {
    auto parts = domain.SplitDim(k, m_fanout);
    splits[k] = static_cast<int64_t>(parts.size());
    dim_intervals[k].reserve(parts.size());
    for (const Region& r : parts) dim_intervals[k].push_back(r.Bound(k));
    num_partitions *= splits[k];
  }

  // One pass over the entries accumulates every partition's true count.
  std::vector<int64_t> sums(static_cast<size_t>(num_partitions), 0);
  for (const Entry& e : m.entries()) {
    int64_t idx = 0;
    for (int k = 0; k < d; ++k) {
      idx = idx * splits[k] + SplitBucket(domain.Bound(k), m_fanout, e.coord[k]);
    }
    sums[static_cast<size_t>(idx)] += e.count;
  }

  if (!res.ledger.CanAbsorb(eps_rem, {"partitions"})) {
    throw BudgetOverflowError("cannot absorb grid partition budget");
  }
  NoiseStream part_stream = root.Child(1);
  res.matrix.partitions.reserve(static_cast<size_t>(num_partitions));
  std::vector<int64_t> pos(d, 0);
  std::vector<Interval> bounds(d);
  for (int64_t idx = 0; idx < num_partitions; ++idx) {
    for (int k = 0; k < d; ++k) bounds[k] = dim_intervals[k][pos[k]];
    Region r(bounds);
    double noisy = static_cast<double>(sums[static_cast<size_t>(idx)]);
    if (!opts.disable_noise) {
      noisy += part_stream.Child(static_cast<uint64_t>(idx))
                   .NextLaplace(1.0 / eps_rem);
    }
    const int64_t volume = r.Volume();
    res.matrix.partitions.push_back({std::move(r), noisy, volume});
    for (int k = d - 1; k >= 0; --k) {
      if (++pos[k] < splits[k]) break;
      pos[k] = 0;
    }
  }
  res.ledger.Charge("partition noise", eps_rem, {"partitions"},
                    num_partitions);
  res.ledger.AssertWithin();
  StampCommon(res.matrix, m, provider, eps_tot, opts, res.ledger);
  res.matrix.AddMeta("fanout", std::to_string(m_fanout));
  res.matrix.AddMeta("eps0_fraction", FormatDouble(opts.eps0_fraction));
  if (fanout.degenerate) res.matrix.AddMeta("fanout_degenerate", "1");
  res.seconds = Elapsed(start);
  return res;
}

}  // namespace fmdp
