#pragma once

#include <string>
#include <vector>

#include "quadpat/coloring.hpp"
#include "quadpat/structure.hpp"

namespace quadpat {

/*
 * Decomposition of a coloring into color-index sets Y_1..Y_k and a bounded
 * shift set F such that
 *   (i)  for each l, the union of classes named by Y_l is thick (relative to
 *        the configured test family), and
 *   (ii) every ambient x has some l with x inside f*C_m for every m in Y_l.
 * Both are certified with explicit witnesses and re-verified before return.
 */
struct CoverDecomposition {
  int num_colors = 0;
  std::vector<std::vector<int>> Ys;  // k distinct sorted color-id sets
  std::vector<Rational> F;           // nonzero shifts, enumeration order
  /* Per Y_l: shift for each thick-family member certifying (i). */
  std::vector<ThickWitness> thickness_certificates;
  struct ElementCert {
    int l = 0;                    // index into Ys
    std::vector<Rational> shifts; // per m in Ys[l] order: f with x in f*C_m
  };
  /* Per ambient element, in enumeration order of the ambient set. */
  std::vector<ElementCert> element_certs;
};

struct CoverError : std::runtime_error {
  CoverError(std::string stage_, std::string msg) : std::runtime_error(std::move(msg)), stage(std::move(stage_)) {}
  std::string stage;  // "syndetic-scan" | "fit" | "thickness" | "verify"
};

/*
 * Follows the duality proof: syndetic color unions give F; A_x collects the
 * colors reachable from x through F; Y_x is the lex-least color set whose
 * complement is not syndetic and that fits inside A_x. Throws CoverError when
 * some x has no fitting Y_x or when a certificate fails re-verification.
 */
CoverDecomposition cover_decomposition(const Coloring& coloring, int width_bound,
                                       const IndexSet& ambient, const ThickTestFamily& family);

/* Independent re-check of (i) and (ii) from the stored certificates alone. */
bool verify_cover(const CoverDecomposition& cover, const Coloring& coloring,
                  const IndexSet& ambient, const ThickTestFamily& family, std::string* why);

}  // namespace quadpat
