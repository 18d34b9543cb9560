#include "quadpat/structure.hpp"

#include <algorithm>
#include <functional>
#include <set>

namespace quadpat {

IndexSet index_set_of_values(const std::vector<Rational>& vals, const GroundSet& g) {
  IndexSet s(g.size());
  for (const auto& v : vals) {
    auto i = g.index_of(v);
    if (!i) throw std::invalid_argument("value " + v.str() + " not in ground " + g.describe());
    s.set(*i);
  }
  return s;
}

std::vector<Rational> values_of_index_set(const IndexSet& s, const GroundSet& g) {
  if (s.universe() != g.size()) throw std::invalid_argument("index set universe mismatch");
  std::vector<Rational> out;
  out.reserve(s.count());
  s.for_each([&](std::uint32_t i) { out.push_back(g.value_at(i)); });
  return out;
}

std::vector<Rational> fs_set(const std::vector<Rational>& seq, const GroundSet& g) {
  if (seq.empty()) throw std::invalid_argument("fs_set: empty sequence");
  std::vector<std::uint32_t> idx;
  idx.reserve(seq.size());
  for (const auto& v : seq) {
    auto i = g.index_of(v);
    if (!i) throw OutOfGroundError("fs_set: element " + v.str() + " not in ground");
    idx.push_back(*i);
  }
  std::vector<std::uint32_t> sums;  // indices of all subset sums so far
  for (std::uint32_t a : idx) {
    std::vector<std::uint32_t> next = sums;
    next.push_back(a);
    for (std::uint32_t s : sums) {
      auto ns = g.add_idx(s, a);
      if (!ns) throw OutOfGroundError("fs_set: subset sum leaves " + g.describe());
      next.push_back(*ns);
    }
    sums = std::move(next);
  }
  std::set<Rational> vals;
  for (std::uint32_t s : sums) vals.insert(g.value_at(s));
  return {vals.begin(), vals.end()};
}

std::optional<IPrWitness> find_ipr_witness(const IndexSet& S, int r, const IndexSet& search_space,
                                           const GroundSet& g) {
  if (r < 1) throw std::invalid_argument("find_ipr_witness: r must be positive");
  if (S.universe() != g.size() || search_space.universe() != g.size())
    throw std::invalid_argument("find_ipr_witness: index set universe mismatch");

  std::vector<std::uint32_t> candidates;
  search_space.for_each([&](std::uint32_t i) {
    if (!g.value_at(i).is_zero()) candidates.push_back(i);
  });

  std::vector<std::uint32_t> chosen;
  std::vector<std::uint32_t> sums;  // indices of all subset sums of `chosen`
  chosen.reserve(r);

  std::function<bool(std::size_t)> dfs = [&](std::size_t start) -> bool {
    if (static_cast<int>(chosen.size()) == r) return true;
    for (std::size_t ci = start; ci < candidates.size(); ++ci) {
      const std::uint32_t y = candidates[ci];
      if (!S.test(y)) continue;
      std::vector<std::uint32_t> added{y};
      bool ok = true;
      for (std::uint32_t s : sums) {
        auto ns = g.add_idx(s, y);
        if (!ns || !S.test(*ns)) {
          ok = false;
          break;
        }
        added.push_back(*ns);
      }
      if (!ok) continue;
      const std::size_t old_size = sums.size();
      sums.insert(sums.end(), added.begin(), added.end());
      chosen.push_back(y);
      if (dfs(ci)) return true;  // repetition allowed: restart at the same candidate
      chosen.pop_back();
      sums.resize(old_size);
    }
    return false;
  };

  if (!dfs(0)) return std::nullopt;
  IPrWitness w;
  for (std::uint32_t i : chosen) w.sequence.push_back(g.value_at(i));
  return w;
}

IpStarResult is_ipr_star(const IndexSet& S, int r, const IndexSet& ambient, const GroundSet& g) {
  if (!S.subset_of(ambient)) throw std::invalid_argument("is_ipr_star: S must lie inside ambient");
  IndexSet comp = ambient;
  comp.and_not(S);
  auto w = find_ipr_witness(comp, r, comp, g);
  if (w) return {false, std::move(w)};
  return {true, std::nullopt};
}

namespace {

/* Dilate f*S restricted to ambient; products leaving the ground cover nothing. */
IndexSet dilate(std::uint32_t f, const IndexSet& S, const IndexSet& ambient, const GroundSet& g) {
  IndexSet out(g.size());
  S.for_each([&](std::uint32_t s) {
    auto p = g.mul_idx(f, s);
    if (p && ambient.test(*p)) out.set(*p);
  });
  return out;
}

}  // namespace

std::optional<SyndeticWitness> is_syndetic(const IndexSet& S, int width_bound,
                                           const IndexSet& ambient, const GroundSet& g) {
  if (width_bound < 1) throw std::invalid_argument("is_syndetic: width bound must be positive");
  std::vector<std::uint32_t> shifts;
  std::vector<IndexSet> dilates;
  ambient.for_each([&](std::uint32_t f) {
    if (g.value_at(f).is_zero()) return;
    IndexSet d = dilate(f, S, ambient, g);
    if (d.empty()) return;  // never part of a minimum-cardinality cover
    shifts.push_back(f);
    dilates.push_back(std::move(d));
  });

  IndexSet reachable(g.size());
  for (const auto& d : dilates) reachable |= d;
  if (!ambient.subset_of(reachable)) return std::nullopt;

  std::vector<std::size_t> pick;
  std::function<bool(std::size_t, const IndexSet&, int)> dfs =
      [&](std::size_t start, const IndexSet& covered, int slots) -> bool {
    if (ambient.subset_of(covered)) return true;
    if (slots == 0) return false;
    for (std::size_t i = start; i + std::size_t(slots) <= shifts.size(); ++i) {
      IndexSet next = covered;
      next |= dilates[i];
      pick.push_back(i);
      if (dfs(i + 1, next, slots - 1)) return true;
      pick.pop_back();
    }
    return false;
  };

  /* Smallest cardinality first; within one cardinality the combination scan is
   * lexicographic in enumeration order. */
  for (int k = 1; k <= width_bound; ++k) {
    pick.clear();
    IndexSet none(g.size());
    if (dfs(0, none, k)) {
      SyndeticWitness w;
      for (std::size_t i : pick) w.shifts.push_back(g.value_at(shifts[i]));
      return w;
    }
  }
  return std::nullopt;
}

ThickTestFamily make_thick_family(const GroundSet& g, const std::vector<Rational>& generators,
                                  int max_subset_size, int geo_len) {
  if (generators.empty()) throw std::invalid_argument("thick family: no generators");
  if (max_subset_size < 1) throw std::invalid_argument("thick family: subset size must be positive");
  std::vector<std::uint32_t> gens;
  for (const auto& v : generators) {
    if (v.is_zero()) throw std::invalid_argument("thick family: zero generator");
    auto i = g.index_of(v);
    if (!i) throw std::invalid_argument("thick family: generator " + v.str() + " not in ground");
    gens.push_back(*i);
  }

  std::set<std::vector<std::uint32_t>> seen;
  ThickTestFamily fam;
  auto push = [&](std::vector<std::uint32_t> member) {
    std::sort(member.begin(), member.end());
    member.erase(std::unique(member.begin(), member.end()), member.end());
    if (member.empty()) return;
    if (!seen.insert(member).second) return;
    std::vector<Rational> vals;
    for (std::uint32_t i : member) vals.push_back(g.value_at(i));
    fam.members.push_back(std::move(vals));
  };

  const int limit = std::min<int>(max_subset_size, int(gens.size()));
  std::vector<std::size_t> pick;
  std::function<void(std::size_t)> subsets = [&](std::size_t start) {
    if (!pick.empty()) {
      std::vector<std::uint32_t> member;
      for (std::size_t i : pick) member.push_back(gens[i]);
      push(std::move(member));
    }
    if (int(pick.size()) == limit) return;
    for (std::size_t i = start; i < gens.size(); ++i) {
      pick.push_back(i);
      subsets(i + 1);
      pick.pop_back();
    }
  };
  subsets(0);

  for (std::uint32_t gi : gens) {
    std::vector<std::uint32_t> prog;
    std::optional<std::uint32_t> cur = g.one_index();
    for (int e = 0; e < geo_len && cur; ++e) {
      prog.push_back(*cur);
      cur = g.mul_idx(*cur, gi);
    }
    if (!prog.empty()) push(std::move(prog));
  }

  if (fam.members.empty()) throw std::invalid_argument("thick family: empty");
  return fam;
}

ThickTestFamily default_thick_family(const GroundSet& g, int width_bound) {
  std::vector<Rational> gens;
  for (std::uint32_t i = 0; i < g.size() && gens.size() < 3; ++i)
    if (!g.value_at(i).is_zero()) gens.push_back(g.value_at(i));
  return make_thick_family(g, gens, std::max(1, std::min(width_bound, 3)), 3);
}

std::optional<ThickWitness> is_thick(const IndexSet& T, const ThickTestFamily& family,
                                     const IndexSet& ambient, const GroundSet& g) {
  if (family.members.empty()) throw std::invalid_argument("is_thick: empty family");
  ThickWitness w;
  for (const auto& member : family.members) {
    std::vector<std::uint32_t> midx;
    for (const auto& v : member) {
      auto i = g.index_of(v);
      if (!i) throw std::invalid_argument("is_thick: family element not in ground");
      midx.push_back(*i);
    }
    std::optional<Rational> found;
    for (std::uint32_t a = 0; a < g.size() && !found; ++a) {
      if (!ambient.test(a) || g.value_at(a).is_zero()) continue;
      bool ok = true;
      for (std::uint32_t m : midx) {
        auto p = g.mul_idx(a, m);
        if (!p || !T.test(*p)) {
          ok = false;
          break;
        }
      }
      if (ok) found = g.value_at(a);
    }
    if (!found) return std::nullopt;
    w.shifts.push_back(*found);
  }
  return w;
}

}  // namespace quadpat
