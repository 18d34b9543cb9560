#include "quadpat/pattern.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#include <json.hpp>

namespace quadpat {

namespace {

void collect_vars(const TermPtr& t, std::set<int>& out) {
  switch (t->kind) {
    case TermExpr::Kind::Var:
      out.insert(t->var);
      break;
    case TermExpr::Kind::Const:
      break;
    default:
      collect_vars(t->lhs, out);
      collect_vars(t->rhs, out);
  }
}

}  // namespace

void validate_pattern(const PatternTemplate& t) {
  if (t.num_vars <= 0) throw std::invalid_argument("pattern: num_vars must be positive");
  if (t.terms.empty()) throw std::invalid_argument("pattern: needs at least one term");
  std::set<std::string> keys;
  for (const auto& term : t.terms) {
    if (!term) throw std::invalid_argument("pattern: null term");
    if (max_var_index(term) >= t.num_vars)
      throw std::invalid_argument("pattern: term references variable beyond num_vars");
    if (!keys.insert(normal_key(term)).second)
      throw std::invalid_argument("pattern: duplicate term " + to_prefix(term));
  }
  for (int v : t.nonzero_vars)
    if (v < 0 || v >= t.num_vars)
      throw std::invalid_argument("pattern: nonzero_vars entry out of range");
}

std::optional<BuiltinPattern> builtin_from_name(std::string_view name) {
  if (name == "schur") return BuiltinPattern::Schur;
  if (name == "moreira") return BuiltinPattern::Moreira;
  if (name == "quad") return BuiltinPattern::Quad;
  if (name == "quad-ap") return BuiltinPattern::QuadAp;
  return std::nullopt;
}

PatternTemplate builtin_pattern(BuiltinPattern b, std::optional<int> k) {
  if (b == BuiltinPattern::QuadAp) {
    if (!k || *k < 1) throw std::invalid_argument("quad-ap needs k >= 1");
  } else if (k) {
    throw std::invalid_argument("k only applies to quad-ap");
  }
  PatternTemplate t;
  t.num_vars = 2;
  const TermPtr x = t_var(0), y = t_var(1);
  switch (b) {
    case BuiltinPattern::Schur:
      t.name = "schur";
      t.terms = {x, y, t_add(x, y)};
      break;
    case BuiltinPattern::Moreira:
      t.name = "moreira";
      t.terms = {x, t_mul(x, y), t_add(x, y)};
      t.nonzero_vars = {1};
      break;
    case BuiltinPattern::Quad:
      t.name = "quad";
      t.terms = {x, y, t_mul(x, y), t_add(x, y)};
      t.nonzero_vars = {0, 1};
      break;
    case BuiltinPattern::QuadAp:
      t.name = "quad-ap" + std::to_string(*k);
      t.terms = {x, y, t_mul(x, y)};
      for (int i = 1; i <= *k; ++i)
        t.terms.push_back(t_add(x, i == 1 ? y : t_mul(t_const(Rational(i)), y)));
      t.nonzero_vars = {0, 1};
      break;
  }
  validate_pattern(t);
  return t;
}

namespace {

/* Rewrite an h's argument variables Var(m) -> Var(m+1), so that h(x1..xs) reads
 * its m-th argument from pattern variable x_{m+1}. */
TermPtr shift_vars(const TermPtr& t) {
  switch (t->kind) {
    case TermExpr::Kind::Var:
      return t_var(t->var + 1);
    case TermExpr::Kind::Const:
      return t;
    case TermExpr::Kind::Add:
      return t_add(shift_vars(t->lhs), shift_vars(t->rhs));
    case TermExpr::Kind::Mul:
      return t_mul(shift_vars(t->lhs), shift_vars(t->rhs));
  }
  throw std::logic_error("unreachable");
}

TermPtr product_range(int i, int j) {  // xi * ... * xj
  TermPtr acc = t_var(i);
  for (int v = i + 1; v <= j; ++v) acc = t_mul(acc, t_var(v));
  return acc;
}

}  // namespace

PatternTemplate general_pattern(const std::vector<TermPtr>& coefficients, int t) {
  if (t < 1) throw std::invalid_argument("general pattern: t must be >= 1");
  if (coefficients.empty()) throw std::invalid_argument("general pattern: empty coefficient set");
  for (const auto& h : coefficients)
    if (!h) throw std::invalid_argument("general pattern: null coefficient");

  PatternTemplate out;
  out.num_vars = t + 1;
  out.name = "general-t" + std::to_string(t);
  for (int v = 1; v <= t; ++v) out.nonzero_vars.insert(v);

  std::set<std::string> seen;
  auto push = [&](const TermPtr& term) {
    if (seen.insert(normal_key(term)).second) out.terms.push_back(term);
  };

  for (int i = 0; i <= t; ++i)
    for (int j = i; j <= t; ++j) push(product_range(i, j));

  /* usable[s] = coefficients whose arguments fit before position s (h_s may read
   * x1..x_{s-1}, i.e. argument vars 0..s-2). */
  std::vector<std::vector<TermPtr>> usable(t + 1);
  for (int s = 1; s <= t; ++s) {
    for (const auto& h : coefficients)
      if (max_var_index(h) <= s - 2) usable[s].push_back(shift_vars(h));
    if (usable[s].empty())
      throw std::invalid_argument("general pattern: no coefficient usable at position " +
                                  std::to_string(s));
  }

  for (int i = 0; i < t; ++i) {
    /* Sums x0..xi + h_{i+1} x_{i+1} + ... + h_t x_t over all coefficient choices,
     * enumerated odometer-style with the last position fastest. */
    std::vector<size_t> pick(t - i, 0);
    for (;;) {
      TermPtr sum = product_range(0, i);
      for (int s = i + 1; s <= t; ++s)
        sum = t_add(sum, t_mul(usable[s][pick[s - i - 1]], t_var(s)));
      push(sum);
      int pos = t - i - 1;
      while (pos >= 0 && ++pick[pos] == usable[i + 1 + pos].size()) pick[pos--] = 0;
      if (pos < 0) break;
    }
  }

  validate_pattern(out);
  return out;
}

std::string_view reject_reason_name(RejectReason r) {
  switch (r) {
    case RejectReason::OutOfGround: return "out-of-ground";
    case RejectReason::ZeroViolation: return "zero-violation";
    case RejectReason::DistinctnessViolation: return "distinctness-violation";
  }
  return "?";
}

InstantiateResult instantiate(const PatternTemplate& t, const std::vector<Rational>& assignment,
                              const GroundSet& g) {
  if (static_cast<int>(assignment.size()) != t.num_vars)
    throw std::invalid_argument("instantiate: assignment arity mismatch");
  for (int v : t.nonzero_vars)
    if (assignment[v].is_zero()) return RejectReason::ZeroViolation;

  std::vector<std::uint32_t> idx(assignment.size());
  for (size_t v = 0; v < assignment.size(); ++v) {
    auto i = g.index_of(assignment[v]);
    if (!i) return RejectReason::OutOfGround;
    idx[v] = *i;
  }

  Instance inst;
  inst.assignment = assignment;
  inst.term_values.reserve(t.terms.size());
  for (const auto& term : t.terms) {
    auto vi = eval_idx(term, idx, g);
    if (!vi) return RejectReason::OutOfGround;
    inst.term_values.push_back(g.value_at(*vi));
  }

  if (t.require_distinct) {
    auto sorted = inst.term_values;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
      return RejectReason::DistinctnessViolation;
  }
  return inst;
}

std::string pattern_to_json(const PatternTemplate& t) {
  nlohmann::json j;
  j["numVars"] = t.num_vars;
  auto& terms = j["terms"] = nlohmann::json::array();
  for (const auto& term : t.terms) terms.push_back(to_prefix(term));
  j["nonzeroVars"] = t.nonzero_vars;
  j["distinct"] = t.require_distinct;
  if (!t.name.empty()) j["name"] = t.name;
  return j.dump(2);
}

PatternTemplate pattern_from_json(std::string_view json_text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::invalid_argument(std::string("pattern json: ") + e.what());
  }
  if (!j.is_object()) throw std::invalid_argument("pattern json: expected object");
  static const std::set<std::string> allowed = {"numVars", "terms", "nonzeroVars", "distinct",
                                                "name"};
  for (const auto& [key, _] : j.items())
    if (!allowed.count(key)) throw std::invalid_argument("pattern json: unknown key '" + key + "'");

  PatternTemplate t;
  if (!j.contains("numVars") || !j["numVars"].is_number_integer())
    throw std::invalid_argument("pattern json: numVars must be an integer");
  t.num_vars = j["numVars"].get<int>();
  if (!j.contains("terms") || !j["terms"].is_array())
    throw std::invalid_argument("pattern json: terms must be an array");
  for (const auto& s : j["terms"]) {
    if (!s.is_string()) throw std::invalid_argument("pattern json: terms entries must be strings");
    t.terms.push_back(parse_term(s.get<std::string>()));
  }
  if (j.contains("nonzeroVars")) {
    if (!j["nonzeroVars"].is_array())
      throw std::invalid_argument("pattern json: nonzeroVars must be an array");
    for (const auto& v : j["nonzeroVars"]) {
      if (!v.is_number_integer())
        throw std::invalid_argument("pattern json: nonzeroVars entries must be integers");
      t.nonzero_vars.insert(v.get<int>());
    }
  }
  if (j.contains("distinct")) {
    if (!j["distinct"].is_boolean())
      throw std::invalid_argument("pattern json: distinct must be a boolean");
    t.require_distinct = j["distinct"].get<bool>();
  }
  if (j.contains("name")) {
    if (!j["name"].is_string()) throw std::invalid_argument("pattern json: name must be a string");
    t.name = j["name"].get<std::string>();
  }
  validate_pattern(t);
  return t;
}

}  // namespace quadpat
