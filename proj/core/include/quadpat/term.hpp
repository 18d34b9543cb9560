#pragma once

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "quadpat/ground.hpp"
#include "quadpat/rational.hpp"

namespace quadpat {

struct TermExpr;
using TermPtr = std::shared_ptr<const TermExpr>;

/* Immutable expression tree over variables x0, x1, ... and rational constants. */
struct TermExpr {
  enum class Kind { Var, Const, Add, Mul };
  Kind kind;
  int var = 0;       // Kind::Var
  Rational value;    // Kind::Const
  TermPtr lhs, rhs;  // Kind::Add / Kind::Mul
};

TermPtr t_var(int index);
TermPtr t_const(Rational value);
TermPtr t_add(TermPtr a, TermPtr b);
TermPtr t_mul(TermPtr a, TermPtr b);

int max_var_index(const TermPtr& t);  // -1 for constant expressions

/* Prefix notation: "(+ (* x0 x1) x0)", constants as "3" or "-2/3".
 * parse_term accepts n-ary (+ ...) and (* ...) and left-folds them;
 * throws std::invalid_argument with a position hint on malformed input. */
std::string to_prefix(const TermPtr& t);
TermPtr parse_term(std::string_view text);

/* Canonical key: +/* flattened to sorted operand lists with constants folded
 * (0*t -> 0, 1*t -> t, x0+x1 == x1+x0). Two terms are considered the same
 * expression iff their keys match. Evaluation always uses the original tree. */
std::string normal_key(const TermPtr& t);

/* Evaluates with all intermediates required to stay inside the ground
 * (PrimeField is closed, so only constant embedding can fail there).
 * nullopt means the value left the ground. */
std::optional<std::uint32_t> eval_idx(const TermPtr& t,
                                      std::span<const std::uint32_t> assignment,
                                      const GroundSet& g);
std::optional<Rational> eval_value(const TermPtr& t,
                                   std::span<const Rational> assignment,
                                   const GroundSet& g);

}  // namespace quadpat
