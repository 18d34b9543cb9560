#include "quadpat/derived.hpp"

#include <algorithm>
#include <map>

namespace quadpat {

namespace {

IndexSet dilated_class(const Coloring& base, int m, const Rational& f, const IndexSet& ambient) {
  const GroundSet& g = base.ground();
  IndexSet cls = base.class_set(m);
  cls &= ambient;
  const std::uint32_t fi = *g.index_of(f);
  IndexSet out(g.size());
  cls.for_each([&](std::uint32_t c) {
    auto p = g.mul_idx(fi, c);
    if (p && ambient.test(*p)) out.set(*p);
  });
  return out;
}

}  // namespace

DerivedColoring::DerivedColoring(Coloring base, CoverDecomposition cover, IndexSet ambient,
                                 std::vector<DerivedTuple> tuples,
                                 std::vector<int> id_by_ground_idx)
    : base_(std::move(base)),
      cover_(std::move(cover)),
      ambient_(std::move(ambient)),
      tuples_(std::move(tuples)),
      id_by_ground_idx_(std::move(id_by_ground_idx)) {
  classes_.assign(tuples_.size(), IndexSet(base_.ground().size()));
  for (std::uint32_t x = 0; x < id_by_ground_idx_.size(); ++x)
    if (id_by_ground_idx_[x] >= 0) classes_[std::size_t(id_by_ground_idx_[x])].set(x);
}

int DerivedColoring::densest_tuple() const {
  int best = 0;
  for (int id = 1; id < K(); ++id)
    if (classes_[std::size_t(id)].count() > classes_[std::size_t(best)].count()) best = id;
  return best;
}

DerivedColoring build_derived_coloring(const Coloring& base, const CoverDecomposition& cover,
                                       const IndexSet& ambient) {
  const GroundSet& g = base.ground();
  if (ambient.universe() != g.size())
    throw std::invalid_argument("build_derived_coloring: ambient universe mismatch");

  /* Membership tables x in f*C_m, recomputed from the raw classes rather than
   * trusted from the cover's certificates. */
  const std::size_t nf = cover.F.size();
  std::vector<std::vector<IndexSet>> dil(nf);
  for (std::size_t fr = 0; fr < nf; ++fr) {
    dil[fr].reserve(std::size_t(cover.num_colors));
    for (int m = 0; m < cover.num_colors; ++m)
      dil[fr].push_back(dilated_class(base, m, cover.F[fr], ambient));
  }

  /* Labels scanned in lexicographic order of their color sets. */
  std::vector<int> label_order(cover.Ys.size());
  for (std::size_t l = 0; l < cover.Ys.size(); ++l) label_order[l] = int(l);
  std::sort(label_order.begin(), label_order.end(),
            [&](int a, int b) { return cover.Ys[std::size_t(a)] < cover.Ys[std::size_t(b)]; });

  std::map<std::pair<int, std::vector<std::size_t>>, std::vector<std::uint32_t>> members_by_key;
  std::vector<std::pair<int, std::vector<std::size_t>>> key_by_element;  // ambient order
  bool uncovered = false;
  std::string uncovered_msg;
  ambient.for_each([&](std::uint32_t x) {
    if (uncovered) return;
    for (std::size_t rank = 0; rank < label_order.size(); ++rank) {
      const int l = label_order[rank];
      const auto& Y = cover.Ys[std::size_t(l)];
      std::vector<std::size_t> shift_ranks;
      bool fits = true;
      for (int m : Y) {
        std::size_t fr = 0;
        while (fr < nf && !dil[fr][std::size_t(m)].test(x)) ++fr;
        if (fr == nf) {
          fits = false;
          break;
        }
        shift_ranks.push_back(fr);
      }
      if (fits) {
        std::pair<int, std::vector<std::size_t>> key{int(rank), std::move(shift_ranks)};
        members_by_key[key].push_back(x);
        key_by_element.push_back(std::move(key));
        return;
      }
    }
    uncovered = true;
    uncovered_msg = "element " + g.value_at(x).str() + " fits no cover tuple";
  });
  if (uncovered) throw UncoveredElement(uncovered_msg);

  /* members_by_key iterates keys in (label rank, shift ranks) order, which is
   * exactly the lexicographic order on tuple content. */
  std::map<std::pair<int, std::vector<std::size_t>>, int> id_of_key;
  std::vector<DerivedTuple> tuples;
  for (const auto& [key, members] : members_by_key) {
    (void)members;
    DerivedTuple t;
    t.l = label_order[std::size_t(key.first)];
    for (std::size_t fr : key.second) t.shifts.push_back(cover.F[fr]);
    id_of_key.emplace(key, int(tuples.size()));
    tuples.push_back(std::move(t));
  }

  std::vector<int> id_by_ground_idx(g.size(), -1);
  std::size_t xi = 0;
  ambient.for_each([&](std::uint32_t x) { id_by_ground_idx[x] = id_of_key.at(key_by_element[xi++]); });

  return DerivedColoring(base, cover, ambient, std::move(tuples), std::move(id_by_ground_idx));
}

}  // namespace quadpat
