#pragma once

#include <cstdint>
#include <vector>

#include "quadpat/cnf.hpp"

namespace quadpat {

enum class SatVerdict { Satisfiable, Unsatisfiable, Unknown };

struct SatStats {
  std::uint64_t decisions = 0;
  std::uint64_t propagations = 0;
  std::uint64_t conflicts = 0;
};

/*
 * Plain DPLL: two watched literals, chronological backtracking, no clause
 * learning. Branch order is static, by summed 2^-len clause weight (short
 * clauses first), ties toward the lower variable; first phase is true.
 * Deterministic for fixed input.
 */
class SatSolver {
 public:
  SatSolver(int num_variables, const std::vector<std::vector<int>>& dimacs_clauses);
  explicit SatSolver(const CnfFormula& f) : SatSolver(f.num_variables, f.clauses) {}

  /* One-shot; repeated calls return the first verdict. max_decisions 0 means
   * no budget; hitting the budget yields Unknown. */
  SatVerdict solve(std::uint64_t max_decisions = 0);

  /* Truth value per 0-based variable; meaningful only after Satisfiable. */
  const std::vector<std::uint8_t>& model() const { return model_; }
  const SatStats& stats() const { return stats_; }

 private:
  int value(int lit) const {
    const std::int8_t a = assign_[lit >> 1];
    return a < 0 ? -1 : (a ^ (lit & 1));
  }
  void enqueue(int lit);
  bool propagate();

  int nvars_;
  bool empty_clause_ = false;
  std::vector<std::vector<int>> clauses_;  // internal literals, size >= 2
  std::vector<int> initial_units_;
  std::vector<std::vector<int>> watches_;  // by watched literal
  std::vector<std::int8_t> assign_;        // -1 unassigned, else truth of the variable
  std::vector<int> trail_;
  std::size_t qhead_ = 0;
  struct Frame {
    int var;
    std::size_t trail_pos;
    std::size_t order_head;
    bool flipped;
  };
  std::vector<Frame> frames_;
  std::vector<int> order_;
  std::vector<std::uint8_t> model_;
  SatStats stats_;
  bool solved_ = false;
  SatVerdict verdict_ = SatVerdict::Unknown;
};

}  // namespace quadpat
