#ifndef FMDP_BUDGET_LEDGER_HPP
#define FMDP_BUDGET_LEDGER_HPP

#include <cstdint>
#include <map>
#include <mutex>
#include <stdexcept>
#include <string>
#include <vector>

namespace fmdp {

class BudgetOverflowError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Composition scope for a budget expenditure. Charges at the same path
// compose sequentially (their epsilons add). Sibling subtrees hold
// mechanisms that ran on disjoint data and compose in parallel: the scope
// tree contributes the maximum root-to-leaf path sum. A flat parallel
// scope (disjoint grid cells, siblings at one tree level) is the depth-one
// special case; hierarchical paths are what make a pruned-tree audit close
// exactly, since budget spent below one branch never touches a sibling
// branch's records.
using ScopePath = std::vector<std::string>;

// Append-only record of privacy-budget expenditures with an auditable
// sequential/parallel composition total.
class BudgetLedger {
 public:
  explicit BudgetLedger(double total_epsilon);

  BudgetLedger(const BudgetLedger& other);
  BudgetLedger& operator=(const BudgetLedger& other);

  // Sequential charge at the root scope.
  void Charge(const std::string& label, double epsilon);
  // Charge under a composition scope. `multiplicity` annotates how many
  // identical disjoint-data expenditures the entry aggregates (e.g. one
  // per grid partition); it does not change the accounting.
  void Charge(const std::string& label, double epsilon, const ScopePath& scope,
              int64_t multiplicity = 1);

  // True if charging `epsilon` at `scope` would keep spent() within total.
  bool CanAbsorb(double epsilon, const ScopePath& scope = {}) const;

  // Worst-case budget felt by any single record: the maximum root-to-leaf
  // sum over the scope tree.
  double spent() const;
  double total() const { return total_; }

  bool Within() const { return spent() <= total_ + kTolerance; }
  // Hard post-run audit; throws BudgetOverflowError with a full dump.
  void AssertWithin() const;

  size_t EntryCount() const;
  // One line per entry `label,scope,epsilon`, then a `spent/total` summary.
  std::string Dump() const;
  std::string Summary() const;

  static constexpr double kTolerance = 1e-9;

 private:
  struct Node {
    double own = 0;        // sum of charges at exactly this path
    double best_kids = 0;  // max over children's best; exact as a running
                           // max because charges only ever increase totals
    double best = 0;       // own + best_kids
    std::map<std::string, Node> kids;
  };
  struct EntryRec {
    std::string label;
    ScopePath scope;
    double epsilon;
    int64_t multiplicity;
  };

  void ChargeLocked(const std::string& label, double epsilon,
                    const ScopePath& scope, int64_t multiplicity);
  static double Apply(Node& node, const ScopePath& scope, size_t depth,
                      double epsilon);

  double total_ = 0;
  Node root_;
  std::vector<EntryRec> entries_;
  mutable std::mutex mu_;
};

}  // namespace fmdp

#endif  // FMDP_BUDGET_LEDGER_HPP
