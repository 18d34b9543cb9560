#pragma once

#include <optional>
#include <string>
#include <vector>

#include "quadpat/cnf.hpp"
#include "quadpat/search.hpp"
#include "quadpat/solver.hpp"

namespace quadpat {

enum class SearchMethod { Exhaustive, Sat, SatExternal };

std::optional<SearchMethod> method_from_name(std::string_view name);
std::string_view method_name(SearchMethod m);

struct BudgetExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct SolverError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct AvoidanceOptions {
  /* Exhaustive precondition: |ground| * log2(n) must stay within this. */
  double exhaustive_budget_bits = 26.0;
  std::uint64_t max_decisions = 0;  // Sat method; 0 = unlimited
  int threads = 1;                  // encoder threads
  /* SatExternal: DIMACS is written to dimacs_path (when set) and the solver's
   * finished output is read from output_path. */
  std::string dimacs_path;
  std::string output_path;
};

struct AvoidanceResult {
  bool forced = false;
  std::optional<Coloring> avoiding;  // present iff !forced, re-verified instance-free
  std::uint64_t instance_count = 0;  // ordered template instances in the ground
  SearchMethod method = SearchMethod::Exhaustive;
  double seconds = 0.0;
  std::uint64_t work = 0;              // nodes (exhaustive) or decisions (sat)
  bool externally_certified = false;   // Forced verdicts taken from an external solver
};

/* Decides whether every n-coloring of the ground has a monochromatic
 * instance. Avoiding colorings are re-verified by find_instances; forced
 * verdicts from the built-in paths are exact. */
AvoidanceResult avoidance_search(const GroundSet& g, int n, const PatternTemplate& t,
                                 SearchMethod method, const AvoidanceOptions& opts = {});

struct ThresholdRow {
  std::int64_t N = 0;
  bool forced = false;
  double seconds = 0.0;
  bool inferred = false;  // filled in from monotonicity, not searched
};

struct ThresholdResult {
  std::vector<ThresholdRow> rows;
  std::optional<std::int64_t> minimal_forced;
};

/*
 * Intervals [lo..N] for N in [n_lo..n_hi]. Forced is upward closed (an
 * avoiding coloring restricts to an avoiding coloring), so the boundary is
 * found by binary search and both sides of it are searched directly; rows in
 * between are inferred.
 */
ThresholdResult threshold_scan(std::int64_t lo, std::int64_t n_lo, std::int64_t n_hi, int n,
                               const PatternTemplate& t, SearchMethod method,
                               const AvoidanceOptions& opts = {});

struct FieldThresholdRow {
  std::int64_t p = 0;
  bool forced = false;
  double seconds = 0.0;
};

/* Raw per-prime verdicts; no monotonicity is assumed across primes. */
std::vector<FieldThresholdRow> field_threshold(int n, const PatternTemplate& t,
                                               const std::vector<std::int64_t>& primes,
                                               SearchMethod method,
                                               const AvoidanceOptions& opts = {});

struct ExternalOutcome {
  SatVerdict verdict = SatVerdict::Unknown;
  std::vector<std::uint8_t> model;  // per 0-based variable, when satisfiable
};

/* Accepts "s SATISFIABLE"/"s UNSATISFIABLE" plus "v" literal lines; "c" lines
 * are ignored. Throws SolverError on anything else. */
ExternalOutcome parse_solver_output(const std::string& text, int num_variables);

}  // namespace quadpat
