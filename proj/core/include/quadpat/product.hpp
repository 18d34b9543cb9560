#pragma once

#include <string>
#include <vector>

#include "quadpat/structure.hpp"

namespace quadpat {

/*
 * Matrix of IP_r-witnessed sets S[l][j] (labels l < k, columns j < N) with the
 * product containment: for all i <= j and any label choice l_i..l_j, every
 * product s_i * s_{i+1} * ... * s_j with s_c drawn from S[l_c][c] lies in
 * T_{l_i}. Built by backward induction and verified exhaustively.
 */
struct ProdFamily {
  int k = 0;
  int N = 0;
  int r = 0;
  std::vector<std::vector<std::vector<Rational>>> S;  // S[l][j], sorted values
  std::vector<std::vector<IPrWitness>> witnesses;     // witnesses[l][j], FS = S[l][j]
};

struct ProdError : std::runtime_error {
  ProdError(int column_, std::string msg) : std::runtime_error(std::move(msg)), column(column_) {}
  int column;  // column where the induction got stuck
};

/* Throws std::invalid_argument when some T_l is not thick for the family
 * (precondition), ProdError when a column admits no witnessed set. */
ProdFamily lemma_prod_construct(const std::vector<IndexSet>& thick_sets, int r, int N,
                                const IndexSet& ambient, const ThickTestFamily& family,
                                const GroundSet& g);

/* Exhaustive walk of every chain product against T_{l_i}; independent of the
 * construction above. */
bool verify_product_family(const ProdFamily& fam, const std::vector<IndexSet>& thick_sets,
                           const GroundSet& g, std::string* why);

}  // namespace quadpat
