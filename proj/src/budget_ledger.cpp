#include "fmdp/budget_ledger.hpp"

#include <algorithm>
#include <sstream>

#include "fmdp/io.hpp"

namespace fmdp {

BudgetLedger::BudgetLedger(double total_epsilon) : total_(total_epsilon) {
  if (total_epsilon < 0) {
    throw std::invalid_argument("budget total must be non-negative");
  }
}

BudgetLedger::BudgetLedger(const BudgetLedger& other) {
  std::lock_guard<std::mutex> lock(other.mu_);
  total_ = other.total_;
  root_ = other.root_;
  entries_ = other.entries_;
}

BudgetLedger& BudgetLedger::operator=(const BudgetLedger& other) {
  if (this == &other) return *this;
  std::scoped_lock lock(mu_, other.mu_);
  total_ = other.total_;
  root_ = other.root_;
  entries_ = other.entries_;
  return *this;
}

double BudgetLedger::Apply(Node& node, const ScopePath& scope, size_t depth,
                           double epsilon) {
  if (depth == scope.size()) {
    node.own += epsilon;
  } else {
    double kid_best = Apply(node.kids[scope[depth]], scope, depth + 1, epsilon);
    node.best_kids = std::max(node.best_kids, kid_best);
  }
  node.best = node.own + node.best_kids;
  return node.best;
}

void BudgetLedger::ChargeLocked(const std::string& label, double epsilon,
                                const ScopePath& scope,
                                int64_t multiplicity) {
  if (epsilon <= 0) throw std::invalid_argument("epsilon must be > 0");
  entries_.push_back({label, scope, epsilon, multiplicity});
  Apply(root_, scope, 0, epsilon);
}

void BudgetLedger::Charge(const std::string& label, double epsilon) {
  std::lock_guard<std::mutex> lock(mu_);
  ChargeLocked(label, epsilon, {}, 1);
}

void BudgetLedger::Charge(const std::string& label, double epsilon,
                          const ScopePath& scope, int64_t multiplicity) {
  std::lock_guard<std::mutex> lock(mu_);
  ChargeLocked(label, epsilon, scope, multiplicity);
}

bool BudgetLedger::CanAbsorb(double epsilon, const ScopePath& scope) const {
  std::lock_guard<std::mutex> lock(mu_);
  // Prospective spend: only leaves under the charged path grow, by epsilon.
  const Node* node = &root_;
  double path_sum = root_.own;
  bool exists = true;
  for (const std::string& part : scope) {
    auto it = node->kids.find(part);
    if (it == node->kids.end()) {
      exists = false;
      break;
    }
    node = &it->second;
    path_sum += node->own;
  }
  const double below = exists ? node->best_kids : 0.0;
  const double prospective = path_sum + below + epsilon;
  return std::max(prospective, root_.best) <= total_ + kTolerance;
}

double BudgetLedger::spent() const {
  std::lock_guard<std::mutex> lock(mu_);
  return root_.best;
}

void BudgetLedger::AssertWithin() const {
  if (!Within()) {
    throw BudgetOverflowError("privacy budget exceeded: " + Summary() + "\n" +
                              Dump());
  }
}

size_t BudgetLedger::EntryCount() const {
  std::lock_guard<std::mutex> lock(mu_);
  return entries_.size();
}

std::string BudgetLedger::Summary() const {
  std::ostringstream os;
  os << "spent " << FormatDouble(spent()) << " of " << FormatDouble(total_);
  return os.str();
}

std::string BudgetLedger::Dump() const {
  std::ostringstream os;
  {
    std::lock_guard<std::mutex> lock(mu_);
    for (const EntryRec& e : entries_) {
      os << e.label;
      if (e.multiplicity > 1) os << " x" << e.multiplicity;
      os << ",";
      for (size_t i = 0; i < e.scope.size(); ++i) {
        if (i) os << "/";
        os << e.scope[i];
      }
      os << "," << FormatDouble(e.epsilon) << "\n";
    }
  }
  os << "spent/total," << FormatDouble(spent()) << ","
     << FormatDouble(total_) << "\n";
  return os.str();
}

}  // namespace fmdp
