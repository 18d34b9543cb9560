#include "quadpat/avoidance.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>

namespace quadpat {

namespace {

double elapsed_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::uint64_t count_ordered_instances(const GroundSet& g, const PatternTemplate& t) {
  std::uint64_t count = 0;
  for_each_instance(g, t, [&](const std::vector<std::uint32_t>&, const std::vector<std::uint32_t>&) {
    ++count;
    return true;
  });
  return count;
}

/* Distinct element sets touched by instances; the unit of conflict during
 * backtracking. */
std::vector<std::vector<std::uint32_t>> instance_supports(const GroundSet& g,
                                                          const PatternTemplate& t) {
  std::set<std::vector<std::uint32_t>> seen;
  for_each_instance(g, t, [&](const std::vector<std::uint32_t>&, const std::vector<std::uint32_t>& term_values) {
    std::vector<std::uint32_t> elems(term_values.begin(), term_values.end());
    std::sort(elems.begin(), elems.end());
    elems.erase(std::unique(elems.begin(), elems.end()), elems.end());
    seen.insert(std::move(elems));
    return true;
  });
  return {seen.begin(), seen.end()};
}

Coloring verified_avoiding(Coloring c, const PatternTemplate& t, bool external) {
  auto hits = find_instances(c, t, 1);
  if (!hits.empty()) {
    if (external) throw SolverError("external model does not avoid the pattern");
    throw std::logic_error("avoidance_search produced a coloring with a monochromatic instance");
  }
  return c;
}

AvoidanceResult exhaustive_search(const GroundSet& g, int n, const PatternTemplate& t,
                                  const AvoidanceOptions& opts) {
  auto t0 = std::chrono::steady_clock::now();
  const std::uint32_t size = g.size();
  const double bits = double(size) * std::log2(double(std::max(n, 1)));
  if (bits > opts.exhaustive_budget_bits) {
    std::ostringstream os;
    os << "exhaustive search over " << size << " elements with " << n << " colors needs "
       << bits << " bits; budget is " << opts.exhaustive_budget_bits;
    throw BudgetExceeded(os.str());
  }

  AvoidanceResult res;
  res.method = SearchMethod::Exhaustive;
  res.instance_count = count_ordered_instances(g, t);

  struct Inst {
    std::vector<std::uint32_t> elems;
    std::vector<std::uint16_t> per_color;
    std::uint32_t assigned = 0;
  };
  std::vector<Inst> insts;
  for (auto& support : instance_supports(g, t)) {
    Inst inst;
    inst.elems = std::move(support);
    inst.per_color.assign(std::size_t(n), 0);
    insts.push_back(std::move(inst));
  }
  std::vector<std::vector<std::uint32_t>> by_elem(size);
  for (std::uint32_t i = 0; i < insts.size(); ++i)
    for (std::uint32_t e : insts[i].elems) by_elem[e].push_back(i);

  /* Fail-first: handle the most constrained elements early. */
  std::vector<std::uint32_t> order(size);
  for (std::uint32_t e = 0; e < size; ++e) order[e] = e;
  std::stable_sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
    return by_elem[a].size() > by_elem[b].size();
  });

  std::vector<int> col(size, -1);
  std::uint64_t nodes = 0;

  auto apply = [&](std::uint32_t e, int c) {
    bool ok = true;
    for (std::uint32_t i : by_elem[e]) {
      Inst& inst = insts[i];
      ++inst.assigned;
      ++inst.per_color[std::size_t(c)];
      if (inst.assigned == inst.elems.size() && inst.per_color[std::size_t(c)] == inst.elems.size())
        ok = false;
    }
    return ok;
  };
  auto unapply = [&](std::uint32_t e, int c) {
    for (std::uint32_t i : by_elem[e]) {
      --insts[i].assigned;
      --insts[i].per_color[std::size_t(c)];
    }
  };

  std::function<bool(std::size_t)> dfs = [&](std::size_t pos) -> bool {
    if (pos == order.size()) return true;
    const std::uint32_t e = order[pos];
    /* Colors are interchangeable, so pinning the least element costs nothing. */
    const int limit = (e == 0) ? 1 : n;
    for (int c = 0; c < limit; ++c) {
      ++nodes;
      col[e] = c;
      if (apply(e, c) && dfs(pos + 1)) return true;
      unapply(e, c);
      col[e] = -1;
    }
    return false;
  };

  if (dfs(0)) {
    Coloring c = Coloring::constant(g, n, 0);
    for (std::uint32_t e = 0; e < size; ++e) c.set_color(e, col[e]);
    res.avoiding = verified_avoiding(std::move(c), t, false);
    res.forced = false;
  } else {
    res.forced = true;
  }
  res.work = nodes;
  res.seconds = elapsed_since(t0);
  return res;
}

Coloring coloring_from_model(const GroundSet& g, const CnfFormula& f,
                             const std::vector<std::uint8_t>& model, bool external) {
  Coloring c = Coloring::constant(g, f.num_colors, 0);
  for (std::uint32_t e = 0; e < f.ground_size; ++e) {
    int chosen = -1;
    for (int col = 0; col < f.num_colors; ++col) {
      const int var = f.var_of(e, col);
      if (var <= f.num_variables && model[std::size_t(var - 1)]) {
        if (chosen >= 0) {
          if (external) throw SolverError("external model assigns two colors to one element");
          throw std::logic_error("sat model assigns two colors to one element");
        }
        chosen = col;
      }
    }
    if (chosen < 0) {
      if (external) throw SolverError("external model leaves an element uncolored");
      throw std::logic_error("sat model leaves an element uncolored");
    }
    c.set_color(e, chosen);
  }
  return c;
}

AvoidanceResult sat_search(const GroundSet& g, int n, const PatternTemplate& t,
                           const AvoidanceOptions& opts) {
  auto t0 = std::chrono::steady_clock::now();
  AvoidanceResult res;
  res.method = SearchMethod::Sat;
  res.instance_count = count_ordered_instances(g, t);

  CnfFormula f = encode_cnf(g, n, t, opts.threads);
  if (!f.has_instances) {
    res.forced = false;
    res.avoiding = verified_avoiding(Coloring::constant(g, n, 0), t, false);
    res.seconds = elapsed_since(t0);
    return res;
  }
  /* Colors are interchangeable; pin the least element here rather than in the
   * encoder so exported formulas stay untouched. */
  CnfFormula pinned = f;
  pinned.clauses.push_back({f.var_of(0, 0)});

  SatSolver solver(pinned);
  const SatVerdict v = solver.solve(opts.max_decisions);
  res.work = solver.stats().decisions;
  if (v == SatVerdict::Unknown) throw BudgetExceeded("sat decision budget exhausted");
  if (v == SatVerdict::Unsatisfiable) {
    res.forced = true;
  } else {
    res.forced = false;
    res.avoiding = verified_avoiding(coloring_from_model(g, f, solver.model(), false), t, false);
  }
  res.seconds = elapsed_since(t0);
  return res;
}

AvoidanceResult sat_external_search(const GroundSet& g, int n, const PatternTemplate& t,
                                    const AvoidanceOptions& opts) {
  auto t0 = std::chrono::steady_clock::now();
  AvoidanceResult res;
  res.method = SearchMethod::SatExternal;
  res.instance_count = count_ordered_instances(g, t);

  CnfFormula f = encode_cnf(g, n, t, opts.threads);
  if (!opts.dimacs_path.empty()) {
    std::ofstream out(opts.dimacs_path, std::ios::binary);
    if (!out) throw SolverError("cannot write DIMACS file: " + opts.dimacs_path);
    out << to_dimacs(f);
    if (!out) throw SolverError("failed writing DIMACS file: " + opts.dimacs_path);
  }
  if (opts.output_path.empty())
    throw SolverError("sat-external requires a solver output file to ingest");
  std::ifstream in(opts.output_path, std::ios::binary);
  if (!in) throw SolverError("cannot read solver output file: " + opts.output_path);
  std::ostringstream buf;
  buf << in.rdbuf();

  const ExternalOutcome outcome = parse_solver_output(buf.str(), f.num_variables);
  if (outcome.verdict == SatVerdict::Unsatisfiable) {
    res.forced = true;
    res.externally_certified = true;
  } else {
    res.forced = false;
    res.avoiding = verified_avoiding(coloring_from_model(g, f, outcome.model, true), t, true);
  }
  res.seconds = elapsed_since(t0);
  return res;
}

}  // namespace

std::optional<SearchMethod> method_from_name(std::string_view name) {
  if (name == "exhaustive") return SearchMethod::Exhaustive;
  if (name == "sat") return SearchMethod::Sat;
  if (name == "sat-external") return SearchMethod::SatExternal;
  return std::nullopt;
}

std::string_view method_name(SearchMethod m) {
  switch (m) {
    case SearchMethod::Exhaustive: return "exhaustive";
    case SearchMethod::Sat: return "sat";
    case SearchMethod::SatExternal: return "sat-external";
  }
  return "?";
}

AvoidanceResult avoidance_search(const GroundSet& g, int n, const PatternTemplate& t,
                                 SearchMethod method, const AvoidanceOptions& opts) {
  if (n < 1 || n > 64) throw std::invalid_argument("avoidance_search: need 1 <= n <= 64");
  validate_pattern(t);
  switch (method) {
    case SearchMethod::Exhaustive: return exhaustive_search(g, n, t, opts);
    case SearchMethod::Sat: return sat_search(g, n, t, opts);
    case SearchMethod::SatExternal: return sat_external_search(g, n, t, opts);
  }
  throw std::invalid_argument("avoidance_search: unknown method");
}

ThresholdResult threshold_scan(std::int64_t lo, std::int64_t n_lo, std::int64_t n_hi, int n,
                               const PatternTemplate& t, SearchMethod method,
                               const AvoidanceOptions& opts) {
  if (n_lo < lo) throw std::invalid_argument("threshold_scan: n_lo below interval start");
  if (n_hi < n_lo) throw std::invalid_argument("threshold_scan: empty scan range");

  struct Probe {
    bool forced;
    double seconds;
  };
  std::vector<std::optional<Probe>> probes(std::size_t(n_hi - n_lo + 1));
  auto probe = [&](std::int64_t N) {
    auto& slot = probes[std::size_t(N - n_lo)];
    if (!slot) {
      const AvoidanceResult r =
          avoidance_search(GroundSet::interval(lo, N), n, t, method, opts);
      slot = Probe{r.forced, r.seconds};
    }
    return slot->forced;
  };

  ThresholdResult out;
  /* Forced is upward closed in N: an avoiding coloring of [lo..N] restricts
   * to one of any shorter interval. */
  if (!probe(n_hi)) {
    out.minimal_forced = std::nullopt;
  } else if (probe(n_lo)) {
    out.minimal_forced = n_lo;
  } else {
    std::int64_t lo_n = n_lo, hi_n = n_hi;  // lo_n avoiding, hi_n forced
    while (hi_n - lo_n > 1) {
      const std::int64_t mid = lo_n + (hi_n - lo_n) / 2;
      (probe(mid) ? hi_n : lo_n) = mid;
    }
    out.minimal_forced = hi_n;
    probe(hi_n - 1);  // verify the avoiding side of the boundary directly
  }

  for (std::int64_t N = n_lo; N <= n_hi; ++N) {
    ThresholdRow row;
    row.N = N;
    if (const auto& slot = probes[std::size_t(N - n_lo)]) {
      row.forced = slot->forced;
      row.seconds = slot->seconds;
      row.inferred = false;
    } else {
      row.forced = out.minimal_forced && N >= *out.minimal_forced;
      row.seconds = 0.0;
      row.inferred = true;
    }
    out.rows.push_back(row);
  }
  return out;
}

std::vector<FieldThresholdRow> field_threshold(int n, const PatternTemplate& t,
                                               const std::vector<std::int64_t>& primes,
                                               SearchMethod method, const AvoidanceOptions& opts) {
  std::vector<FieldThresholdRow> rows;
  for (std::int64_t p : primes) {
    const AvoidanceResult r = avoidance_search(GroundSet::prime_field(p), n, t, method, opts);
    rows.push_back({p, r.forced, r.seconds});
  }
  return rows;
}

ExternalOutcome parse_solver_output(const std::string& text, int num_variables) {
  ExternalOutcome out;
  bool have_status = false;
  std::vector<std::uint8_t> model(std::size_t(num_variables), 0);
  std::vector<std::uint8_t> seen(std::size_t(num_variables), 0);

  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == 'c') continue;
    if (line[0] == 's') {
      std::istringstream ls(line.substr(1));
      std::string status;
      ls >> status;
      if (status == "SATISFIABLE") {
        out.verdict = SatVerdict::Satisfiable;
      } else if (status == "UNSATISFIABLE") {
        out.verdict = SatVerdict::Unsatisfiable;
      } else {
        throw SolverError("unrecognized solver status line: " + line);
      }
      if (have_status) throw SolverError("duplicate solver status line");
      have_status = true;
    } else if (line[0] == 'v') {
      std::istringstream ls(line.substr(1));
      long long lit;
      while (ls >> lit) {
        if (lit == 0) continue;
        const long long var = lit > 0 ? lit : -lit;
        if (var > num_variables)
          throw SolverError("solver model mentions an out-of-range variable");
        model[std::size_t(var - 1)] = lit > 0;
        seen[std::size_t(var - 1)] = 1;
      }
      if (!ls.eof()) throw SolverError("malformed literal in solver model line: " + line);
    } else {
      throw SolverError("unrecognized solver output line: " + line);
    }
  }
  if (!have_status) throw SolverError("solver output has no status line");
  if (out.verdict == SatVerdict::Satisfiable) {
    for (int v = 0; v < num_variables; ++v)
      if (!seen[std::size_t(v)]) throw SolverError("solver model leaves a variable unassigned");
    out.model = std::move(model);
  }
  return out;
}

}  // namespace quadpat
