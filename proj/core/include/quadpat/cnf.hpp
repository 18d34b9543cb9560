#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "quadpat/pattern.hpp"

namespace quadpat {

/*
 * "Some coloring of the ground with n colors avoids the template" as CNF.
 * Variable ids are dense and deterministic: element enumeration order major,
 * color minor, so var(e,c) = e*n + c + 1.
 */
struct CnfFormula {
  int num_variables = 0;
  std::vector<std::vector<int>> clauses;
  std::uint32_t ground_size = 0;
  int num_colors = 0;
  bool has_instances = false;  // degenerate (vacuously satisfiable) when false

  int var_of(std::uint32_t element, int color) const {
    return int(element) * num_colors + color + 1;
  }
};

/*
 * Per element: at-least-one clause then pairwise at-most-one clauses; then one
 * avoidance clause per instance per color over the distinct term-value
 * elements, in instance enumeration order, identical clauses kept once (first
 * occurrence). Output is byte-identical for any thread count.
 */
CnfFormula encode_cnf(const GroundSet& g, int n, const PatternTemplate& t, int threads = 1);

/* "p cnf V C" header then clauses in order, zero-terminated, no comments. */
std::string to_dimacs(const CnfFormula& f);

}  // namespace quadpat
