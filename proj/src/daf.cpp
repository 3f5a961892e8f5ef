#include "fmdp/daf.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "fmdp/granularity.hpp"
#include "fmdp/io.hpp"

namespace fmdp {

namespace {

constexpr double kSqrt2 = 1.4142135623730951;

using Clock = std::chrono::steady_clock;

// One cell projected onto the split dimension.
struct XCount {
  int64_t x;
  int64_t count;
};

// Scratch shared by the candidate evaluations of one node.
struct ScoreScratch {
  std::vector<XCount> cells;
  std::vector<uint32_t> buckets;
  std::vector<double> sums;
  std::vector<int64_t> nnz;
  std::vector<double> means;
};

// Homogeneity objective for one boundary set over the projected cells of a
// region with `width` cells along the split dimension and `cross` cells per
// slice. Zero cells inside a sub-region each deviate by its mean.
double ObjectiveOnCells(ScoreScratch& s, Interval iv, int64_t cross,
                        const int64_t* bnd, size_t bnd_size) {
  const size_t k = bnd_size + 1;
  s.buckets.resize(s.cells.size());
  s.sums.assign(k, 0.0);
  s.nnz.assign(k, 0);
  s.means.resize(k);
  for (size_t i = 0; i < s.cells.size(); ++i) {
    const uint32_t b = static_cast<uint32_t>(
        std::upper_bound(bnd, bnd + bnd_size, s.cells[i].x) - bnd);
    s.buckets[i] = b;
    s.sums[b] += static_cast<double>(s.cells[i].count);
    ++s.nnz[b];
  }
  double objective = 0;
  for (size_t j = 0; j < k; ++j) {
    const int64_t lo = j == 0 ? iv.lo : bnd[j - 1];
    const int64_t hi = j == bnd_size ? iv.hi : bnd[j];
    const int64_t vol = (hi - lo) * cross;
    s.means[j] = s.sums[j] / static_cast<double>(vol);
    objective += static_cast<double>(vol - s.nnz[j]) * s.means[j];
  }
  for (size_t i = 0; i < s.cells.size(); ++i) {
    objective += std::abs(static_cast<double>(s.cells[i].count) -
                          s.means[s.buckets[i]]);
  }
  return objective;
}

struct Builder {
  const FrequencyMatrix& fm;
  const DafConfig& cfg;
  bool homogeneity;
  int d;
  double eps_tot;
  BudgetLedger ledger;
  // Node-contiguous flat workspace: coordinates d-per-cell plus counts,
  // permuted in place as the tree partitions its spans.
  std::vector<int64_t> coords;
  std::vector<int64_t> counts;
  std::vector<int64_t> tmp_coords;
  std::vector<int64_t> tmp_counts;
  ScoreScratch scratch_score;
  std::vector<double> level_eps;  // index i in [1, d-1]
  int64_t m0 = 1;

  Builder(const FrequencyMatrix& m, const DafConfig& c, bool hom)
      : fm(m),
        cfg(c),
        homogeneity(hom),
        d(m.Dims()),
        eps_tot(c.eps_tot),
        ledger(c.eps_tot) {
    const auto& entries = m.entries();
    coords.resize(entries.size() * d);
    counts.resize(entries.size());
    for (size_t i = 0; i < entries.size(); ++i) {
      std::copy(entries[i].coord.begin(), entries[i].coord.end(),
                coords.begin() + i * d);
      counts[i] = entries[i].count;
    }
    tmp_coords.resize(coords.size());
    tmp_counts.resize(counts.size());
  }

  size_t CellCount() const { return counts.size(); }

  double Count(int64_t count, double eps, NoiseStream s, const char* label,
               const ScopePath& scope) {
    return SanitizeCount(count, 1.0, eps, s, ledger, label, scope,
                         cfg.disable_noise);
  }
  double ScoreNoise(NoiseStream s, double eps_per_candidate) {
    const double draw = s.NextLaplace(2.0 / eps_per_candidate);
    return cfg.disable_noise ? 0.0 : draw;
  }

  int64_t Fanout(double ncount, double eps_rem, int residual_dims,
                 int64_t width) const {
    if (ncount <= 0 || eps_rem <= 0) return 1;
    return EbpFanout(ncount, eps_rem, residual_dims, width).m;
  }

  void Build(DafNode& node, size_t begin, size_t end, double acc,
             const ScopePath& scope, const NoiseStream& stream) {
    const int depth = node.depth;
    if (depth == d) {
      const double eps_leaf = eps_tot - acc;
      node.ncount = Count(node.count, eps_leaf,
                          stream.Child(daf_streams::kCount), "leaf count",
                          scope);
      return;
    }

    const double eps_level =
        depth == 0 ? RootBudget(eps_tot) : level_eps[depth];
    const double eps_prt = homogeneity ? cfg.q * eps_level : 0.0;
    const double eps_data = eps_level - eps_prt;
    node.ncount = Count(node.count, eps_data,
                        stream.Child(daf_streams::kCount),
                        depth == 0 ? "root count" : "level count", scope);
    acc += eps_data;

    const int64_t width = node.region.Bound(depth).Width();
    int64_t m = Fanout(node.ncount, eps_tot - acc - eps_prt, d - depth, width);
    // Residual budget in the fanout formula assumes the full level was
    // consumed; align acc with what actually gets charged below.
    std::vector<int64_t> boundaries;  // interior splits; empty -> equal width
    if (homogeneity && m >= 2) {
      NoiseStream cand_stream = stream.Child(daf_streams::kCandidates);
      auto candidates =
          CandidateSplitSets(node.region, depth, m, cfg.candidate_sets,
                             cand_stream);
      const double eps_per = eps_prt / static_cast<double>(cfg.candidate_sets);
      // All candidates score the same cells projected onto the split
      // dimension; extract them once.
      scratch_score.cells.clear();
      scratch_score.cells.reserve(end - begin);
      for (size_t i = begin; i < end; ++i) {
        scratch_score.cells.push_back({coords[i * d + depth], counts[i]});
      }
      const Interval iv_score = node.region.Bound(depth);
      const int64_t cross = node.region.Volume() / iv_score.Width();
      double best_score = 0;
      size_t best_idx = 0;
      NoiseStream score_stream = stream.Child(daf_streams::kScores);
      for (size_t i = 0; i < candidates.size(); ++i) {
        const double o =
            ObjectiveOnCells(scratch_score, iv_score, cross,
                             candidates[i].data(), candidates[i].size() - 1);
        const double noisy =
            o + ScoreNoise(score_stream.Child(i), eps_per);
        if (i == 0 || noisy < best_score) {
          best_score = noisy;
          best_idx = i;
        }
      }
      boundaries.assign(candidates[best_idx].begin(),
                        candidates[best_idx].end() - 1);
      ledger.Charge("split scores", eps_prt, scope, cfg.candidate_sets);
      acc += eps_prt;
    }
    // With m < 2 no split positions are needed; the partitioning share is
    // simply not spent and the remainder flows to deeper levels.

    if (StopCondition(node.ncount, eps_tot - acc, cfg.stop_multiplier)) {
      const double eps_final = eps_tot - acc;
      node.ncount = Count(node.count, eps_final,
                          stream.Child(daf_streams::kFinal),
                          "prune re-estimate", scope);
      node.pruned = true;
      return;
    }

    if (depth == 0) {
      m0 = m;
      const double eps_prime = eps_tot - RootBudget(eps_tot);
      level_eps.assign(d, 0.0);
      for (int i = 1; i <= d - 1; ++i) {
        level_eps[i] = LevelBudget(i, d, m0, eps_prime);
      }
    }

    // Children partition dimension `depth`.
    std::vector<Region> child_regions;
    if (!boundaries.empty()) {
      const Interval iv = node.region.Bound(depth);
      int64_t prev = iv.lo;
      for (int64_t b : boundaries) {
        child_regions.push_back(node.region.WithBound(depth, {prev, b}));
        prev = b;
      }
      child_regions.push_back(node.region.WithBound(depth, {prev, iv.hi}));
    } else {
      child_regions = node.region.SplitDim(depth, m);
    }
    const size_t n_children = child_regions.size();

    // Stable bucket of the node's entries by child index.
    const Interval iv = node.region.Bound(depth);
    auto child_of = [&](int64_t x) -> size_t {
      if (!boundaries.empty()) {
        return static_cast<size_t>(
            std::upper_bound(boundaries.begin(), boundaries.end(), x) -
            boundaries.begin());
      }
      return static_cast<size_t>(SplitBucket(iv, m, x));
    };
    std::vector<size_t> offsets(n_children + 1, 0);
    std::vector<int64_t> child_counts(n_children, 0);
    for (size_t i = begin; i < end; ++i) {
      const size_t b = child_of(coords[i * d + depth]);
      ++offsets[b + 1];
      child_counts[b] += counts[i];
    }
    for (size_t j = 0; j < n_children; ++j) offsets[j + 1] += offsets[j];
    std::vector<size_t> cursor = offsets;
    for (size_t i = begin; i < end; ++i) {
      const size_t b = child_of(coords[i * d + depth]);
      const size_t dst = begin + cursor[b]++;
      std::copy(coords.begin() + i * d, coords.begin() + (i + 1) * d,
                tmp_coords.begin() + dst * d);
      tmp_counts[dst] = counts[i];
    }
    std::copy(tmp_coords.begin() + begin * d, tmp_coords.begin() + end * d,
              coords.begin() + begin * d);
    std::copy(tmp_counts.begin() + begin, tmp_counts.begin() + end,
              counts.begin() + begin);

    node.children.reserve(n_children);
    for (size_t j = 0; j < n_children; ++j) {
      auto child = std::make_unique<DafNode>();
      child->region = child_regions[j];
      child->depth = depth + 1;
      child->count = child_counts[j];
      ScopePath child_scope = scope;
      child_scope.push_back(std::to_string(j));
      Build(*child, begin + offsets[j], begin + offsets[j + 1], acc,
            child_scope, stream.Child(daf_streams::kChildBase + j));
      node.children.push_back(std::move(child));
    }
  }
};

void CollectLeaves(const DafNode& node, SanitizedMatrix& sm) {
  if (node.IsLeaf()) {
    sm.partitions.push_back({node.region, node.ncount, node.region.Volume()});
    return;
  }
  for (const auto& child : node.children) CollectLeaves(*child, sm);
}

DafResult RunDaf(const FrequencyMatrix& m, const DafConfig& cfg,
                 bool homogeneity) {
  if (cfg.eps_tot <= 0) throw std::invalid_argument("epsilon must be > 0");
  if (!(cfg.q > 0 && cfg.q < 1)) {
    throw std::invalid_argument("partitioning ratio q must be in (0,1)");
  }
  if (cfg.candidate_sets < 1) {
    throw std::invalid_argument("candidate set count must be >= 1");
  }
  if (cfg.stop_multiplier < 0) {
    throw std::invalid_argument("stop multiplier must be >= 0");
  }
  const auto start = Clock::now();

  Builder b(m, cfg, homogeneity);
  auto root = std::make_unique<DafNode>();
  root->region = m.Domain();
  root->depth = 0;
  root->count = m.total();
  b.Build(*root, 0, b.CellCount(), 0.0, {}, NoiseStream(cfg.seed));

  DafResult res;
  res.ledger = std::move(b.ledger);
  res.ledger.AssertWithin();
  CollectLeaves(*root, res.matrix);

  res.matrix.extents = m.extents();
  res.matrix.method =
      homogeneity ? Method::kDafHomogeneity : Method::kDafEntropy;
  res.matrix.epsilon = cfg.eps_tot;
  res.matrix.seed = cfg.seed;
  res.matrix.noise_disabled = cfg.disable_noise;
  res.matrix.AddMeta("ledger_spent", FormatDouble(res.ledger.spent()));
  res.matrix.AddMeta("root_fanout", std::to_string(b.m0));
  res.matrix.AddMeta("stop_multiplier", FormatDouble(cfg.stop_multiplier));
  if (homogeneity) {
    res.matrix.AddMeta("q", FormatDouble(cfg.q));
    res.matrix.AddMeta("candidate_sets", std::to_string(cfg.candidate_sets));
    res.matrix.AddMeta("candidate_rule", "interior-drop-largest");
  }
  if (cfg.disable_noise) {
    res.matrix.AddMeta("warning", "noise disabled, not private");
  }
  res.root = std::move(root);
  res.seconds = std::chrono::duration<double>(Clock::now() - start).count();
  return res;
}

}  // namespace

double RootBudget(double eps_tot) {
  if (eps_tot <= 0) throw std::invalid_argument("epsilon must be > 0");
  return eps_tot / 100.0;
}

double LevelBudget(int level, int dims, int64_t root_fanout,
                   double eps_tot_prime) {
  if (level < 1 || level > dims) {
    throw std::invalid_argument("level must be in [1, dims]");
  }
  if (root_fanout < 1) throw std::invalid_argument("root fanout must be >= 1");
  const double m0 = static_cast<double>(root_fanout);
  double denom = 0;
  for (int j = 1; j <= dims; ++j) denom += std::pow(m0, j / 3.0);
  return eps_tot_prime * std::pow(m0, level / 3.0) / denom;
}

bool StopCondition(double ncount, double remaining_eps, double multiplier) {
  if (multiplier <= 0) return false;
  return ncount < multiplier * kSqrt2 / remaining_eps;
}

std::vector<std::vector<int64_t>> CandidateSplitSets(const Region& r, int dim,
                                                     int64_t fanout,
                                                     int num_sets,
                                                     NoiseStream& stream) {
  const Interval iv = r.Bound(dim);
  if (fanout < 2) throw std::invalid_argument("candidate fanout must be >= 2");
  if (fanout > iv.Width()) {
    throw std::invalid_argument("fanout exceeds interval width");
  }
  auto parts = r.SplitDim(dim, fanout);
  std::vector<std::vector<int64_t>> sets;
  sets.reserve(num_sets);
  for (int c = 0; c < num_sets; ++c) {
    NoiseStream cs = stream.Child(static_cast<uint64_t>(c));
    std::vector<int64_t> set;
    set.reserve(fanout);
    int64_t prev = iv.lo;
    for (int64_t j = 0; j < fanout; ++j) {
      const Interval pj = parts[j].Bound(dim);
      // Uniform over the positions that keep the first fanout-1 draws
      // usable as interior boundaries of non-empty children: past the
      // region's lower edge and strictly increasing. At width-1 intervals
      // the position degenerates to the single feasible one.
      const int64_t lo_valid = std::max({pj.lo, prev + 1, iv.lo + 1});
      const int64_t draw =
          lo_valid < pj.hi ? cs.NextInt(lo_valid, pj.hi) : lo_valid;
      set.push_back(draw);
      prev = draw;
    }
    sets.push_back(std::move(set));
  }
  return sets;
}

double HomogeneityObjective(const FrequencyMatrix& m, const Region& r, int dim,
                            const std::vector<int64_t>& splits) {
  if (!r.WithinExtents(m.extents())) {
    throw std::invalid_argument("region outside matrix extents");
  }
  const Interval iv = r.Bound(dim);
  int64_t prev = iv.lo;
  for (int64_t s : splits) {
    if (s <= prev || s >= iv.hi) {
      throw std::invalid_argument(
          "splits must be strictly increasing and interior");
    }
    prev = s;
  }
  ScoreScratch scratch;
  for (const Entry& e : m.entries()) {
    if (r.Contains(e.coord)) scratch.cells.push_back({e.coord[dim], e.count});
  }
  return ObjectiveOnCells(scratch, iv, r.Volume() / iv.Width(), splits.data(),
                          splits.size());
}

DafResult DafEntropy(const FrequencyMatrix& m, const DafConfig& cfg) {
  return RunDaf(m, cfg, /*homogeneity=*/false);
}

DafResult DafHomogeneity(const FrequencyMatrix& m, const DafConfig& cfg) {
  return RunDaf(m, cfg, /*homogeneity=*/true);
}

namespace {

void DumpNode(const DafNode& node, bool include_true_counts, int indent,
              std::ostringstream& os) {
  for (int i = 0; i < indent; ++i) os << "  ";
  os << node.depth << "," << node.region.ToString() << ",";
  if (include_true_counts) os << node.count;
  os << "," << FormatDouble(node.ncount) << ","
     << (node.pruned ? "pruned" : "-") << "\n";
  for (const auto& child : node.children) {
    DumpNode(*child, include_true_counts, indent + 1, os);
  }
}

}  // namespace

std::string DumpTree(const DafNode& root, bool include_true_counts) {
  std::ostringstream os;
  if (include_true_counts) os << "# debug dump with true counts: not private\n";
  DumpNode(root, include_true_counts, 0, os);
  return os.str();
}

}  // namespace fmdp
