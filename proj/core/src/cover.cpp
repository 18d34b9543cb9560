#include "quadpat/cover.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace quadpat {

namespace {

IndexSet class_on_ambient(const Coloring& col, int m, const IndexSet& ambient) {
  IndexSet s = col.class_set(m);
  s &= ambient;
  return s;
}

IndexSet union_of_classes(const Coloring& col, const std::vector<int>& Y, const IndexSet& ambient) {
  IndexSet u(col.ground().size());
  for (int m : Y) u |= class_on_ambient(col, m, ambient);
  return u;
}

std::vector<int> mask_to_set(unsigned mask) {
  std::vector<int> out;
  for (int m = 0; mask; ++m, mask >>= 1)
    if (mask & 1u) out.push_back(m);
  return out;
}

IndexSet dilate_set(std::uint32_t f, const IndexSet& S, const IndexSet& ambient,
                    const GroundSet& g) {
  IndexSet out(g.size());
  S.for_each([&](std::uint32_t s) {
    auto p = g.mul_idx(f, s);
    if (p && ambient.test(*p)) out.set(*p);
  });
  return out;
}

}  // namespace

CoverDecomposition cover_decomposition(const Coloring& coloring, int width_bound,
                                       const IndexSet& ambient, const ThickTestFamily& family) {
  const GroundSet& g = coloring.ground();
  const int n = coloring.num_colors();
  if (ambient.universe() != g.size()) throw std::invalid_argument("cover: ambient universe mismatch");
  if (n > 16) throw std::invalid_argument("cover: limited to 16 colors");

  std::vector<IndexSet> classes;
  for (int m = 0; m < n; ++m) classes.push_back(class_on_ambient(coloring, m, ambient));

  /* Syndetic scan over all nonempty color unions; remember minimal witnesses. */
  const unsigned full = (1u << n) - 1u;
  std::map<unsigned, SyndeticWitness> syndetic;
  for (unsigned mask = 1; mask <= full; ++mask) {
    IndexSet cy(g.size());
    for (int m = 0; m < n; ++m)
      if (mask & (1u << m)) cy |= classes[m];
    if (auto w = is_syndetic(cy, width_bound, ambient, g)) syndetic.emplace(mask, std::move(*w));
  }
  if (!syndetic.count(full))
    throw CoverError("syndetic-scan", "whole coloring is not syndetic within width " +
                                          std::to_string(width_bound));

  IndexSet f_idx(g.size());
  for (const auto& [mask, w] : syndetic)
    for (const auto& v : w.shifts) f_idx.set(*g.index_of(v));
  /* Closed under inverses in group grounds, so derived-coloring tuples can
   * quote shifts from F itself (x in f*C_m iff (1/f)*x in C_m). */
  if (g.kind() == GroundKind::PrimeField) {
    IndexSet inv(g.size());
    f_idx.for_each([&](std::uint32_t i) {
      if (auto j = g.inv_idx(i)) inv.set(*j);
    });
    f_idx |= inv;
  }

  /* reach[m] = set of x with x in f*C_m for some f in F, so A_x reads off by x. */
  std::vector<IndexSet> reach(n, IndexSet(g.size()));
  f_idx.for_each([&](std::uint32_t f) {
    for (int m = 0; m < n; ++m) reach[m] |= dilate_set(f, classes[m], ambient, g);
  });

  /* The duality step: Y qualifies when its complement is not syndetic. Members
   * are ordered lexicographically as sorted color lists. */
  std::vector<std::pair<std::vector<int>, unsigned>> tau;
  for (unsigned mask = 1; mask <= full; ++mask) {
    const unsigned comp = full & ~mask;
    if (comp != 0 && syndetic.count(comp)) continue;
    tau.emplace_back(mask_to_set(mask), mask);
  }
  std::sort(tau.begin(), tau.end());

  CoverDecomposition out;
  out.num_colors = n;
  out.F = values_of_index_set(f_idx, g);

  std::map<unsigned, int> label_of_mask;
  std::vector<unsigned> label_masks;
  std::vector<int> x_label;
  std::vector<std::uint32_t> x_index;
  {
    bool failed = false;
    std::string fail_msg;
    ambient.for_each([&](std::uint32_t x) {
      if (failed) return;
      unsigned ax = 0;
      for (int m = 0; m < n; ++m)
        if (reach[m].test(x)) ax |= (1u << m);
      const auto fit = std::find_if(tau.begin(), tau.end(),
                                    [&](const auto& y) { return (y.second & ~ax) == 0; });
      if (fit == tau.end()) {
        failed = true;
        fail_msg = "no qualifying color set fits A_x at x=" + g.value_at(x).str();
        return;
      }
      auto [it, fresh] = label_of_mask.try_emplace(fit->second, int(label_masks.size()));
      if (fresh) {
        label_masks.push_back(fit->second);
        out.Ys.push_back(fit->first);
      }
      x_label.push_back(it->second);
      x_index.push_back(x);
    });
    if (failed) throw CoverError("fit", fail_msg);
  }

  for (std::size_t l = 0; l < out.Ys.size(); ++l) {
    IndexSet u = union_of_classes(coloring, out.Ys[l], ambient);
    auto w = is_thick(u, family, ambient, g);
    if (!w)
      throw CoverError("thickness", "class union for Y_" + std::to_string(l) +
                                        " failed the thickness certification");
    out.thickness_certificates.push_back(std::move(*w));
  }

  for (std::size_t xi = 0; xi < x_index.size(); ++xi) {
    const std::uint32_t x = x_index[xi];
    CoverDecomposition::ElementCert cert;
    cert.l = x_label[xi];
    for (int m : out.Ys[cert.l]) {
      std::optional<Rational> shift;
      f_idx.for_each([&](std::uint32_t f) {
        if (shift) return;
        if (dilate_set(f, classes[m], ambient, g).test(x)) shift = g.value_at(f);
      });
      if (!shift)
        throw CoverError("fit", "certificate shift vanished at x=" + g.value_at(x).str());
      cert.shifts.push_back(std::move(*shift));
    }
    out.element_certs.push_back(std::move(cert));
  }

  std::string why;
  if (!verify_cover(out, coloring, ambient, family, &why)) throw CoverError("verify", why);
  return out;
}

bool verify_cover(const CoverDecomposition& cover, const Coloring& coloring,
                  const IndexSet& ambient, const ThickTestFamily& family, std::string* why) {
  const GroundSet& g = coloring.ground();
  auto fail = [&](std::string msg) {
    if (why) *why = std::move(msg);
    return false;
  };

  const int n = coloring.num_colors();
  if (cover.num_colors != n) return fail("color count mismatch");
  if (cover.Ys.empty()) return fail("no color sets");
  std::set<std::vector<int>> distinct;
  for (const auto& Y : cover.Ys) {
    if (Y.empty()) return fail("empty color set");
    if (!std::is_sorted(Y.begin(), Y.end())) return fail("unsorted color set");
    for (int m : Y)
      if (m < 0 || m >= n) return fail("color id out of range");
    if (!distinct.insert(Y).second) return fail("duplicate color set");
  }

  std::vector<std::uint32_t> f_indices;
  for (const auto& f : cover.F) {
    if (f.is_zero()) return fail("zero shift in F");
    auto i = g.index_of(f);
    if (!i) return fail("shift outside ground");
    f_indices.push_back(*i);
  }

  /* (i): stored shift maps really push each family member into the union. */
  if (cover.thickness_certificates.size() != cover.Ys.size())
    return fail("thickness certificate count mismatch");
  for (std::size_t l = 0; l < cover.Ys.size(); ++l) {
    IndexSet u(g.size());
    for (int m : cover.Ys[l]) {
      IndexSet c = coloring.class_set(m);
      c &= ambient;
      u |= c;
    }
    const auto& w = cover.thickness_certificates[l];
    if (w.shifts.size() != family.members.size()) return fail("thickness shift count mismatch");
    for (std::size_t i = 0; i < family.members.size(); ++i) {
      auto a = g.index_of(w.shifts[i]);
      if (!a || w.shifts[i].is_zero() || !ambient.test(*a))
        return fail("thickness shift not a nonzero ambient element");
      for (const auto& v : family.members[i]) {
        auto vi = g.index_of(v);
        if (!vi) return fail("family element outside ground");
        auto p = g.mul_idx(*a, *vi);
        if (!p || !u.test(*p))
          return fail("thickness certificate broken for Y_" + std::to_string(l));
      }
    }
  }

  /* (ii): per-element certificates, checked by scanning the classes directly. */
  if (cover.element_certs.size() != ambient.count()) return fail("element certificate count mismatch");
  std::size_t xi = 0;
  bool ok = true;
  std::string msg;
  ambient.for_each([&](std::uint32_t x) {
    if (!ok) return;
    const auto& cert = cover.element_certs[xi++];
    if (cert.l < 0 || cert.l >= int(cover.Ys.size())) {
      ok = false;
      msg = "certificate label out of range";
      return;
    }
    const auto& Y = cover.Ys[cert.l];
    if (cert.shifts.size() != Y.size()) {
      ok = false;
      msg = "certificate shift count mismatch";
      return;
    }
    for (std::size_t pos = 0; pos < Y.size(); ++pos) {
      const auto& f = cert.shifts[pos];
      if (std::find(cover.F.begin(), cover.F.end(), f) == cover.F.end()) {
        ok = false;
        msg = "certificate shift not in F";
        return;
      }
      const std::uint32_t fi = *g.index_of(f);
      bool witnessed = false;
      IndexSet c = coloring.class_set(Y[pos]);
      c &= ambient;
      c.for_each([&](std::uint32_t e) {
        if (witnessed) return;
        auto p = g.mul_idx(fi, e);
        if (p && *p == x) witnessed = true;
      });
      if (!witnessed) {
        ok = false;
        msg = "element " + g.value_at(x).str() + " not reached into class " +
              std::to_string(Y[pos]);
        return;
      }
    }
  });
  if (!ok) return fail(std::move(msg));
  return true;
}

}  // namespace quadpat
