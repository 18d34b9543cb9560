#include "quadpat/product.hpp"

#include <functional>

namespace quadpat {

ProdFamily lemma_prod_construct(const std::vector<IndexSet>& thick_sets, int r, int N,
                                const IndexSet& ambient, const ThickTestFamily& family,
                                const GroundSet& g) {
  const int k = int(thick_sets.size());
  if (k < 1) throw std::invalid_argument("prod: need at least one thick set");
  if (r < 1 || N < 1) throw std::invalid_argument("prod: r and N must be positive");
  for (int l = 0; l < k; ++l) {
    if (thick_sets[l].universe() != g.size())
      throw std::invalid_argument("prod: thick set universe mismatch");
    if (!is_thick(thick_sets[l], family, ambient, g))
      throw std::invalid_argument("prod: T_" + std::to_string(l) +
                                  " is not thick for the test family");
  }

  ProdFamily fam;
  fam.k = k;
  fam.N = N;
  fam.r = r;
  fam.S.assign(k, std::vector<std::vector<Rational>>(N));
  fam.witnesses.assign(k, std::vector<IPrWitness>(N));

  /* chains = all products s_{j+1}*...*s_{j'} over contiguous columns past the
   * one being chosen, any labels; every such product was itself admitted into
   * some T at choice time, so the multiplications below stay in the ground. */
  IndexSet chains(g.size());
  for (int j = N - 1; j >= 0; --j) {
    std::vector<IndexSet> column_sets(k, IndexSet(g.size()));
    for (int l = 0; l < k; ++l) {
      IndexSet D = thick_sets[l];
      D &= ambient;
      chains.for_each([&](std::uint32_t u) {
        IndexSet keep(g.size());
        D.for_each([&](std::uint32_t t) {
          auto p = g.mul_idx(t, u);
          if (p && thick_sets[l].test(*p)) keep.set(t);
        });
        D &= keep;
      });
      auto w = find_ipr_witness(D, r, D, g);
      if (!w)
        throw ProdError(j, "no IP_" + std::to_string(r) + " witness inside column " +
                               std::to_string(j) + " for label " + std::to_string(l));
      fam.S[l][j] = fs_set(w->sequence, g);
      fam.witnesses[l][j] = std::move(*w);
      column_sets[l] = index_set_of_values(fam.S[l][j], g);
    }
    IndexSet next(g.size());
    for (int l = 0; l < k; ++l) {
      column_sets[l].for_each([&](std::uint32_t s) {
        next.set(s);
        chains.for_each([&](std::uint32_t u) {
          auto p = g.mul_idx(s, u);
          if (p) next.set(*p);
        });
      });
    }
    chains = std::move(next);
  }

  std::string why;
  if (!verify_product_family(fam, thick_sets, g, &why))
    throw ProdError(-1, "constructed family failed verification: " + why);
  return fam;
}

bool verify_product_family(const ProdFamily& fam, const std::vector<IndexSet>& thick_sets,
                           const GroundSet& g, std::string* why) {
  auto fail = [&](std::string msg) {
    if (why) *why = std::move(msg);
    return false;
  };
  if (fam.k != int(thick_sets.size())) return fail("label count mismatch");
  if (fam.k < 1 || fam.N < 1) return fail("degenerate family");
  if (int(fam.S.size()) != fam.k || int(fam.witnesses.size()) != fam.k)
    return fail("matrix shape mismatch");

  std::vector<std::vector<std::vector<std::uint32_t>>> sidx(fam.k);
  for (int l = 0; l < fam.k; ++l) {
    if (int(fam.S[l].size()) != fam.N || int(fam.witnesses[l].size()) != fam.N)
      return fail("matrix shape mismatch");
    sidx[l].resize(fam.N);
    for (int j = 0; j < fam.N; ++j) {
      if (fam.S[l][j].empty()) return fail("empty set at (" + std::to_string(l) + "," +
                                           std::to_string(j) + ")");
      const auto fs = fs_set(fam.witnesses[l][j].sequence, g);
      if (fs != fam.S[l][j]) return fail("witness FS mismatch at (" + std::to_string(l) + "," +
                                         std::to_string(j) + ")");
      if (int(fam.witnesses[l][j].sequence.size()) != fam.r) return fail("witness length mismatch");
      for (const auto& v : fam.S[l][j]) {
        auto i = g.index_of(v);
        if (!i) return fail("set value outside ground");
        sidx[l][j].push_back(*i);
      }
    }
  }

  /* Every chain with start label l must stay inside T_l at every length; a
   * failing prefix is itself a violated containment, so report and stop. */
  std::string msg;
  std::function<bool(int, int, std::uint32_t)> extend = [&](int start_l, int col,
                                                            std::uint32_t prod) -> bool {
    if (col >= fam.N) return true;
    for (int l = 0; l < fam.k; ++l)
      for (std::uint32_t s : sidx[l][col]) {
        auto p = g.mul_idx(prod, s);
        if (!p || !thick_sets[start_l].test(*p)) {
          msg = "chain product left T_" + std::to_string(start_l) + " at column " +
                std::to_string(col);
          return false;
        }
        if (!extend(start_l, col + 1, *p)) return false;
      }
    return true;
  };

  for (int i = 0; i < fam.N; ++i)
    for (int l = 0; l < fam.k; ++l)
      for (std::uint32_t s : sidx[l][i]) {
        if (!thick_sets[l].test(s)) return fail("column set escapes its own T");
        if (!extend(l, i + 1, s)) return fail(std::move(msg));
      }
  return true;
}

}  // namespace quadpat
