#ifndef FMDP_DAF_HPP
#define FMDP_DAF_HPP

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "fmdp/frequency_matrix.hpp"
#include "fmdp/noise.hpp"
#include "fmdp/sanitized_matrix.hpp"

namespace fmdp {

struct DafConfig {
  double eps_tot = 0.1;
  double q = 0.3;              // partitioning share of each level budget
  int candidate_sets = 8;      // p
  double stop_multiplier = 2.0;  // 0 disables the stop condition
  uint64_t seed = 0;
  bool disable_noise = false;
};

// Node of the hierarchical partitioning. Children split dimension `depth`
// of the parent's region; leaves are nodes at depth d or pruned nodes.
// Leaf regions form a disjoint cover of the domain.
struct DafNode {
  Region region;
  int depth = 0;
  int64_t count = 0;   // true region sum (not published)
  double ncount = 0;   // sanitized count; for pruned nodes, the final
                       // re-sanitized value
  bool pruned = false;
  std::vector<std::unique_ptr<DafNode>> children;

  bool IsLeaf() const { return children.empty(); }
};

struct DafResult {
  SanitizedMatrix matrix;
  BudgetLedger ledger{0};
  std::unique_ptr<DafNode> root;
  double seconds = 0;
};

// Budget reserved for the root count: eps_tot / 100.
double RootBudget(double eps_tot);

// Budget for tree level i (1-based, i <= d), minimizing per-level noise
// variance under a geometric fanout progression with root fanout m0:
//   eps_i = eps_tot' * m0^(i/3) / sum_{j=1..d} m0^(j/3).
// m0 = 1 degenerates to the uniform split eps_tot'/d.
double LevelBudget(int level, int dims, int64_t root_fanout,
                   double eps_tot_prime);

// True when the sanitized count falls below `multiplier` standard
// deviations of the Laplace noise the remaining budget would add:
//   ncount < multiplier * sqrt(2) / remaining_eps.
bool StopCondition(double ncount, double remaining_eps, double multiplier);

// Draws `num_sets` candidate split-position sets for dividing `dim` of `r`
// into `fanout` parts. Each set holds one uniformly random coordinate from
// each of the `fanout` equal-width intervals, sorted ascending; draws are
// nudged forward where needed so that the first fanout-1 positions always
// form valid interior boundaries (every child non-empty). Requires
// fanout >= 2 and fanout <= interval width.
std::vector<std::vector<int64_t>> CandidateSplitSets(const Region& r, int dim,
                                                     int64_t fanout,
                                                     int num_sets,
                                                     NoiseStream& stream);

// Homogeneity objective: sum over the sub-regions induced by `splits` of
// the total absolute deviation of cell counts from the sub-region mean
// (zero cells included). `splits` must lie strictly inside r's interval
// along `dim`, sorted ascending. Sensitivity to one record is 2.
double HomogeneityObjective(const FrequencyMatrix& m, const Region& r, int dim,
                            const std::vector<int64_t>& splits);

// DAF-Entropy: per-node fanout from the residual entropy-balance formula,
// equal-width splits, per-level budgets from LevelBudget, prune-on-low
// count with remaining-budget re-sanitization.
DafResult DafEntropy(const FrequencyMatrix& m, const DafConfig& cfg);

// DAF-Homogeneity: as DafEntropy, but each level budget is split into a
// data share (1-q) for the count and a partitioning share q that scores
// `candidate_sets` random split-position sets with the homogeneity
// objective (sensitivity 2, per-candidate budget q*eps/p); the noisy
// minimizer's positions become the child boundaries.
DafResult DafHomogeneity(const FrequencyMatrix& m, const DafConfig& cfg);

// Indented text dump, one node per line `depth,bounds,count?,ncount,pruned`.
// True counts are only included in debug mode; such dumps are not private.
std::string DumpTree(const DafNode& root, bool include_true_counts = false);

// Stream-path layout used by the builders for one node's draws; exposed so
// tests can reproduce candidate generation. A node's stream is
// NoiseStream(seed) at the root and parent.Child(kChildBase + child_index)
// below; draws hang off the reserved children listed here.
namespace daf_streams {
inline constexpr uint64_t kCount = 0;       // count sanitization
inline constexpr uint64_t kFinal = 1;       // prune-time re-sanitization
inline constexpr uint64_t kCandidates = 2;  // .Child(i) -> candidate set i
inline constexpr uint64_t kScores = 3;      // .Child(i) -> score noise i
inline constexpr uint64_t kChildBase = 16;
}  // namespace daf_streams

}  // namespace fmdp

#endif  // FMDP_DAF_HPP
