#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "quadpat/ground.hpp"
#include "quadpat/index_set.hpp"

namespace quadpat {

struct OutOfGroundError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

IndexSet index_set_of_values(const std::vector<Rational>& vals, const GroundSet& g);
std::vector<Rational> values_of_index_set(const IndexSet& s, const GroundSet& g);

/* Subset sums of a nonempty sequence over all nonempty index subsets, as a
 * sorted deduplicated value set (repeated entries in the sequence are fine).
 * Throws OutOfGroundError when a sum leaves a non-closed ground. */
std::vector<Rational> fs_set(const std::vector<Rational>& seq, const GroundSet& g);

struct IPrWitness {
  std::vector<Rational> sequence;  // r nonzero elements, FS(sequence) inside the host set
};

/* Lexicographically first (in ground enumeration order) sequence of r nonzero
 * elements of searchSpace whose subset sums all land in S. Entries may repeat;
 * coinciding sums are fine. Since FS ignores order, the lex-least witness is
 * non-decreasing, so the search walks non-decreasing sequences only. */
std::optional<IPrWitness> find_ipr_witness(const IndexSet& S, int r, const IndexSet& search_space,
                                           const GroundSet& g);

struct IpStarResult {
  bool star;
  std::optional<IPrWitness> refutation;  // an IP_r witness inside ambient minus S
};

/* S meets every IP_r subset of ambient, i.e. ambient minus S has no witness. */
IpStarResult is_ipr_star(const IndexSet& S, int r, const IndexSet& ambient, const GroundSet& g);

struct SyndeticWitness {
  std::vector<Rational> shifts;  // F with F*S covering ambient, |F| <= width bound
};

/* Smallest-cardinality F (ties lexicographic in enumeration order) of nonzero
 * ambient elements with union of f*S covering ambient; products leaving the
 * ground or ambient cover nothing. */
std::optional<SyndeticWitness> is_syndetic(const IndexSet& S, int width_bound,
                                           const IndexSet& ambient, const GroundSet& g);

/* Thickness at finite scale is relative to an explicit family of finite shift
 * targets; quantifying over all finite F trivializes in a finite group. */
struct ThickTestFamily {
  std::vector<std::vector<Rational>> members;  // each nonempty, sorted, inside the ground
};

/* All nonempty subsets of generators of size <= max_subset_size, plus one
 * geometric progression {gen^0..gen^(geo_len-1)} per generator (powers that
 * leave the ground are dropped). Members are deduplicated. */
ThickTestFamily make_thick_family(const GroundSet& g, const std::vector<Rational>& generators,
                                  int max_subset_size, int geo_len);
/* Generators = first three nonzero elements, subset size <= min(width, 3),
 * progressions of length 3. */
ThickTestFamily default_thick_family(const GroundSet& g, int width_bound);

struct ThickWitness {
  std::vector<Rational> shifts;  // shifts[i]*family.members[i] inside T
};

/* For every family member the least nonzero ambient shift a (enumeration
 * order) with a*F inside T, or nullopt if some member has none. */
std::optional<ThickWitness> is_thick(const IndexSet& T, const ThickTestFamily& family,
                                     const IndexSet& ambient, const GroundSet& g);

}  // namespace quadpat
