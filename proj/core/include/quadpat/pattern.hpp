#pragma once

#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "quadpat/ground.hpp"
#include "quadpat/term.hpp"

namespace quadpat {

/* A pattern is a list of term expressions over shared variables; an instance is
 * monochromatic when every term value gets the same color. No two terms may be
 * the same expression after normalization. */
struct PatternTemplate {
  int num_vars = 0;
  std::vector<TermPtr> terms;
  std::set<int> nonzero_vars;
  bool require_distinct = false;
  std::string name;
};

/* Throws std::invalid_argument on out-of-range variables or duplicate terms. */
void validate_pattern(const PatternTemplate& t);

enum class BuiltinPattern { Schur, Moreira, Quad, QuadAp };

std::optional<BuiltinPattern> builtin_from_name(std::string_view name);

/* k must be supplied iff b == QuadAp (k >= 1). */
PatternTemplate builtin_pattern(BuiltinPattern b, std::optional<int> k = std::nullopt);

/*
 * Family over variables x0..xt: every consecutive product xi*...*xj, plus every
 * sum  x0*...*xi + h_{i+1}(x1..xi)*x_{i+1} + ... + h_t(x1..x_{t-1})*x_t  with
 * each coefficient h drawn from H. An h's Var(m) names its m-th argument, so an
 * h is usable at position s only when its arguments fit (max var < s-1);
 * constants fit everywhere. Positions where an h does not fit skip it; throws
 * std::invalid_argument only when some position has no usable h at all.
 * Terms are deduplicated by normal_key.
 */
PatternTemplate general_pattern(const std::vector<TermPtr>& coefficients, int t);

struct Instance {
  std::vector<Rational> assignment;
  std::vector<Rational> term_values;
};

enum class RejectReason { OutOfGround, ZeroViolation, DistinctnessViolation };
std::string_view reject_reason_name(RejectReason r);

using InstantiateResult = std::variant<Instance, RejectReason>;

/* Checks, in order: zero violations, assignment membership / evaluation staying
 * inside the ground, then term-value distinctness if required. */
InstantiateResult instantiate(const PatternTemplate& t, const std::vector<Rational>& assignment,
                              const GroundSet& g);

/* JSON object with keys numVars, terms (prefix strings), nonzeroVars, distinct,
 * and optional name; unknown keys are rejected with std::invalid_argument. */
std::string pattern_to_json(const PatternTemplate& t);
PatternTemplate pattern_from_json(std::string_view json_text);

}  // namespace quadpat
