#include "quadpat/solver.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace quadpat {

SatSolver::SatSolver(int num_variables, const std::vector<std::vector<int>>& dimacs_clauses)
    : nvars_(num_variables) {
  if (nvars_ < 0) throw std::invalid_argument("solver: negative variable count");
  assign_.assign(nvars_, -1);
  watches_.assign(std::size_t(2) * nvars_, {});

  std::vector<double> score(nvars_, 0.0);
  for (const auto& in : dimacs_clauses) {
    std::vector<int> lits;
    lits.reserve(in.size());
    for (int d : in) {
      if (d == 0 || std::abs(d) > nvars_) throw std::invalid_argument("solver: bad literal");
      lits.push_back(d > 0 ? 2 * (d - 1) : 2 * (-d - 1) + 1);
    }
    std::sort(lits.begin(), lits.end());
    lits.erase(std::unique(lits.begin(), lits.end()), lits.end());
    bool tautology = false;
    for (std::size_t i = 0; i + 1 < lits.size(); ++i)
      if ((lits[i] ^ 1) == lits[i + 1]) {
        tautology = true;
        break;
      }
    if (tautology) continue;
    const double w = std::ldexp(1.0, -int(std::min<std::size_t>(lits.size(), 512)));
    for (int l : lits) score[l >> 1] += w;
    if (lits.empty()) {
      empty_clause_ = true;
    } else if (lits.size() == 1) {
      initial_units_.push_back(lits[0]);
    } else {
      const int ci = int(clauses_.size());
      watches_[lits[0]].push_back(ci);
      watches_[lits[1]].push_back(ci);
      clauses_.push_back(std::move(lits));
    }
  }

  order_.resize(nvars_);
  for (int v = 0; v < nvars_; ++v) order_[v] = v;
  std::sort(order_.begin(), order_.end(), [&](int a, int b) {
    if (score[a] != score[b]) return score[a] > score[b];
    return a < b;
  });
}

void SatSolver::enqueue(int lit) {
  assign_[lit >> 1] = std::int8_t((lit & 1) ^ 1);
  trail_.push_back(lit);
}

bool SatSolver::propagate() {
  while (qhead_ < trail_.size()) {
    const int falsified = trail_[qhead_++] ^ 1;
    auto& ws = watches_[falsified];
    std::size_t keep = 0;
    for (std::size_t i = 0; i < ws.size(); ++i) {
      const int ci = ws[i];
      auto& cl = clauses_[ci];
      if (cl[0] == falsified) std::swap(cl[0], cl[1]);
      if (value(cl[0]) == 1) {  // already satisfied through the other watch
        ws[keep++] = ci;
        continue;
      }
      bool moved = false;
      for (std::size_t k = 2; k < cl.size(); ++k)
        if (value(cl[k]) != 0) {
          std::swap(cl[1], cl[k]);
          watches_[cl[1]].push_back(ci);
          moved = true;
          break;
        }
      if (moved) continue;
      ws[keep++] = ci;
      if (value(cl[0]) == 0) {  // conflict; keep the remaining watches intact
        for (++i; i < ws.size(); ++i) ws[keep++] = ws[i];
        ws.resize(keep);
        ++stats_.conflicts;
        return false;
      }
      if (value(cl[0]) == -1) {
        enqueue(cl[0]);
        ++stats_.propagations;
      }
    }
    ws.resize(keep);
  }
  return true;
}

SatVerdict SatSolver::solve(std::uint64_t max_decisions) {
  if (solved_) return verdict_;
  auto finish = [&](SatVerdict v) {
    solved_ = true;
    verdict_ = v;
    return v;
  };

  if (empty_clause_) return finish(SatVerdict::Unsatisfiable);
  for (int l : initial_units_) {
    const int s = value(l);
    if (s == 0) return finish(SatVerdict::Unsatisfiable);
    if (s == -1) enqueue(l);
  }
  if (!propagate()) return finish(SatVerdict::Unsatisfiable);

  for (;;) {
    if (trail_.size() == std::size_t(nvars_)) {
      model_.assign(nvars_, 0);
      for (int v = 0; v < nvars_; ++v) model_[v] = std::uint8_t(assign_[v] == 1);
      return finish(SatVerdict::Satisfiable);
    }
    if (max_decisions && stats_.decisions >= max_decisions) return SatVerdict::Unknown;
    ++stats_.decisions;
    std::size_t head = frames_.empty() ? 0 : frames_.back().order_head;
    while (assign_[order_[head]] >= 0) ++head;
    const int v = order_[head];
    frames_.push_back({v, trail_.size(), head, false});
    enqueue(2 * v);

    while (!propagate()) {
      while (!frames_.empty() && frames_.back().flipped) {
        const Frame fr = frames_.back();
        frames_.pop_back();
        while (trail_.size() > fr.trail_pos) {
          assign_[trail_.back() >> 1] = -1;
          trail_.pop_back();
        }
      }
      if (frames_.empty()) return finish(SatVerdict::Unsatisfiable);
      Frame& fr = frames_.back();
      while (trail_.size() > fr.trail_pos) {
        assign_[trail_.back() >> 1] = -1;
        trail_.pop_back();
      }
      qhead_ = trail_.size();
      fr.flipped = true;
      enqueue(2 * fr.var + 1);
    }
  }
}

}  // namespace quadpat
