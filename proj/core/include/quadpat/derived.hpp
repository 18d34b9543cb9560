#pragma once

#include "quadpat/cover.hpp"

namespace quadpat {

struct UncoveredElement : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/* One occupied tuple (l, f_1..f_n) of the derived coloring; shifts align with
 * cover.Ys[l], and x carrying the tuple lies in shifts[pos]*C_{Ys[l][pos]} for
 * every position. */
struct DerivedTuple {
  int l = 0;
  std::vector<Rational> shifts;
  friend bool operator==(const DerivedTuple& a, const DerivedTuple& b) = default;
};

/*
 * The coloring of the ambient set by cover tuples. Tuples overlap as sets, so
 * each element is mapped to its lexicographically least qualifying tuple:
 * least color set Y_l (as a sorted color list), then componentwise first shift
 * in F order. Tuple ids follow that same order, so equal ids mean equal
 * tuples.
 */
class DerivedColoring {
 public:
  DerivedColoring(Coloring base, CoverDecomposition cover, IndexSet ambient,
                  std::vector<DerivedTuple> tuples, std::vector<int> id_by_ground_idx);

  const Coloring& base() const { return base_; }
  const CoverDecomposition& cover() const { return cover_; }
  const IndexSet& ambient() const { return ambient_; }

  int K() const { return int(tuples_.size()); }
  const std::vector<DerivedTuple>& tuples() const { return tuples_; }
  const DerivedTuple& tuple(int id) const { return tuples_.at(std::size_t(id)); }

  /* -1 outside the ambient set. */
  int tuple_id_of(std::uint32_t ground_idx) const { return id_by_ground_idx_[ground_idx]; }
  const IndexSet& tuple_class(int id) const { return classes_.at(std::size_t(id)); }
  /* Largest tuple class; ties break to the smallest id. */
  int densest_tuple() const;

 private:
  Coloring base_;
  CoverDecomposition cover_;
  IndexSet ambient_;
  std::vector<DerivedTuple> tuples_;
  std::vector<int> id_by_ground_idx_;
  std::vector<IndexSet> classes_;
};

/* Throws UncoveredElement if some ambient element admits no tuple, which
 * contradicts the cover's element certificates and signals a cover bug. */
DerivedColoring build_derived_coloring(const Coloring& base, const CoverDecomposition& cover,
                                       const IndexSet& ambient);

}  // namespace quadpat
