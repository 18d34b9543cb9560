#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "quadpat/index_set.hpp"
#include "quadpat/rational.hpp"

namespace quadpat {

enum class GroundKind { IntegerInterval, PrimeField, RationalGrid };

/*
 * Finite ground set with a fixed enumeration order:
 *   IntegerInterval(lo,hi)   lo, lo+1, ..., hi
 *   PrimeField(p)            residues 0, 1, ..., p-1; arithmetic mod p
 *   RationalGrid(maxN,maxD)  reduced a/b with |a| <= maxN, 1 <= b <= maxD,
 *                            ascending by value
 * PrimeField is closed under + and *; the other two are exact and results may
 * leave the set.
 */
class GroundSet {
 public:
  static GroundSet interval(std::int64_t lo, std::int64_t hi);
  static GroundSet prime_field(std::int64_t p);
  static GroundSet rational_grid(std::int64_t max_num, std::int64_t max_den);

  /* Grammar: "int:LO..HI" | "fp:P" | "qgrid:MAXNUM/MAXDEN". */
  static std::optional<GroundSet> parse(std::string_view spec);

  GroundKind kind() const { return kind_; }
  bool closed_under_ops() const { return kind_ == GroundKind::PrimeField; }
  std::string describe() const;

  std::uint32_t size() const;
  Rational value_at(std::uint32_t idx) const;
  std::optional<std::uint32_t> index_of(const Rational& v) const;
  bool contains(const Rational& v) const { return index_of(v).has_value(); }

  /* Raw arithmetic on member values (mod p for PrimeField, exact otherwise). */
  Rational add_value(const Rational& a, const Rational& b) const;
  Rational mul_value(const Rational& a, const Rational& b) const;

  /* Index arithmetic; nullopt when the result leaves a non-closed ground. */
  std::optional<std::uint32_t> add_idx(std::uint32_t a, std::uint32_t b) const;
  std::optional<std::uint32_t> mul_idx(std::uint32_t a, std::uint32_t b) const;
  /* PrimeField only. */
  std::optional<std::uint32_t> inv_idx(std::uint32_t a) const;
  std::optional<std::uint32_t> div_idx(std::uint32_t a, std::uint32_t b) const;

  /* Canonical image of an arbitrary rational constant, if it has one:
   * mod-p embedding for PrimeField (nullopt when p divides the denominator),
   * membership for the exact grounds. */
  std::optional<std::uint32_t> embed_constant(const Rational& c) const;

  std::optional<std::uint32_t> zero_index() const;
  std::optional<std::uint32_t> one_index() const;

  std::int64_t interval_lo() const { return lo_; }
  std::int64_t interval_hi() const { return hi_; }
  std::int64_t field_order() const { return p_; }

  friend bool operator==(const GroundSet& a, const GroundSet& b);

 private:
  GroundSet() = default;

  GroundKind kind_ = GroundKind::IntegerInterval;
  std::int64_t lo_ = 0, hi_ = 0;     // IntegerInterval
  std::int64_t p_ = 0;               // PrimeField
  std::int64_t max_num_ = 0, max_den_ = 0;  // RationalGrid
  std::vector<Rational> grid_vals_;
  std::map<Rational, std::uint32_t> grid_idx_;
};

IndexSet full_set(const GroundSet& g);
/* All indices whose value is nonzero; the multiplicative ambient. */
IndexSet nonzero_set(const GroundSet& g);
/* {a*s : s in S} intersected with the ground (dropped when the product leaves it). */
IndexSet scale_set(const GroundSet& g, std::uint32_t a, const IndexSet& s);

}  // namespace quadpat
