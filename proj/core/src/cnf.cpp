#include "quadpat/cnf.hpp"

#include <algorithm>
#include <set>
#include <thread>

#include "quadpat/search.hpp"

namespace quadpat {

namespace {

/* Instance enumeration restricted to a range of first-variable values; the
 * remaining variables run their full odometer. Used to split encoding work
 * across threads without perturbing the global instance order. */
void instances_with_first_in(const GroundSet& g, const PatternTemplate& t, std::uint32_t first_lo,
                             std::uint32_t first_hi,
                             const std::function<void(const std::vector<std::uint32_t>&)>& fn) {
  const std::uint32_t size = g.size();
  std::vector<bool> zero_banned(t.num_vars, false);
  for (int v : t.nonzero_vars) zero_banned[v] = true;
  const auto zero = g.zero_index();
  const int vars = t.num_vars;

  std::vector<std::uint32_t> assign(vars, 0);
  std::vector<std::uint32_t> values(t.terms.size());
  for (std::uint32_t first = first_lo; first < first_hi; ++first) {
    std::fill(assign.begin(), assign.end(), 0);
    assign[0] = first;
    for (;;) {
      bool ok = true;
      if (zero) {
        for (int v = 0; v < vars && ok; ++v)
          if (zero_banned[v] && assign[v] == *zero) ok = false;
      }
      if (ok) {
        for (std::size_t ti = 0; ti < t.terms.size() && ok; ++ti) {
          auto r = eval_idx(t.terms[ti], assign, g);
          if (!r) ok = false;
          else values[ti] = *r;
        }
      }
      if (ok && t.require_distinct) {
        for (std::size_t a = 0; a + 1 < values.size() && ok; ++a)
          for (std::size_t b = a + 1; b < values.size(); ++b)
            if (values[a] == values[b]) {
              ok = false;
              break;
            }
      }
      if (ok) fn(values);

      int pos = vars - 1;
      while (pos >= 1 && ++assign[pos] == size) assign[pos--] = 0;
      if (pos < 1) break;
    }
  }
}

}  // namespace

CnfFormula encode_cnf(const GroundSet& g, int n, const PatternTemplate& t, int threads) {
  if (n < 2) throw std::invalid_argument("encode_cnf: need at least 2 colors");
  validate_pattern(t);
  if (threads < 1) threads = 1;

  CnfFormula f;
  f.ground_size = g.size();
  f.num_colors = n;
  f.num_variables = int(g.size()) * n;

  for (std::uint32_t e = 0; e < g.size(); ++e) {
    std::vector<int> alo;
    for (int c = 0; c < n; ++c) alo.push_back(f.var_of(e, c));
    f.clauses.push_back(std::move(alo));
    for (int c1 = 0; c1 < n; ++c1)
      for (int c2 = c1 + 1; c2 < n; ++c2)
        f.clauses.push_back({-f.var_of(e, c1), -f.var_of(e, c2)});
  }

  /* One bucket of element sets per thread, concatenated in first-variable
   * order, so instance order (and bytes) never depend on the thread count. */
  const std::uint32_t size = g.size();
  const std::uint32_t nthreads = std::min<std::uint32_t>(std::uint32_t(threads), std::max(1u, size));
  std::vector<std::vector<std::vector<std::uint32_t>>> buckets(nthreads);
  auto run_chunk = [&](std::uint32_t ti) {
    const std::uint32_t lo = size * ti / nthreads;
    const std::uint32_t hi = size * (ti + 1) / nthreads;
    instances_with_first_in(g, t, lo, hi, [&](const std::vector<std::uint32_t>& values) {
      std::vector<std::uint32_t> elems = values;
      std::sort(elems.begin(), elems.end());
      elems.erase(std::unique(elems.begin(), elems.end()), elems.end());
      buckets[ti].push_back(std::move(elems));
    });
  };
  if (nthreads == 1) {
    run_chunk(0);
  } else {
    std::vector<std::thread> pool;
    for (std::uint32_t ti = 0; ti < nthreads; ++ti) pool.emplace_back(run_chunk, ti);
    for (auto& th : pool) th.join();
  }

  std::set<std::vector<int>> seen;
  for (const auto& bucket : buckets)
    for (const auto& elems : bucket) {
      f.has_instances = true;
      for (int c = 0; c < n; ++c) {
        std::vector<int> clause;
        clause.reserve(elems.size());
        for (std::uint32_t e : elems) clause.push_back(-f.var_of(e, c));
        if (seen.insert(clause).second) f.clauses.push_back(std::move(clause));
      }
    }
  return f;
}

std::string to_dimacs(const CnfFormula& f) {
  std::string out = "p cnf " + std::to_string(f.num_variables) + " " +
                    std::to_string(f.clauses.size()) + "\n";
  for (const auto& clause : f.clauses) {
    for (int lit : clause) {
      out += std::to_string(lit);
      out += ' ';
    }
    out += "0\n";
  }
  return out;
}

}  // namespace quadpat
