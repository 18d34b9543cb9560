#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "quadpat/coloring.hpp"
#include "quadpat/pattern.hpp"

namespace quadpat {

/*
 * Enumerates valid instances of a template over a ground set in lexicographic
 * assignment order (ground enumeration order per variable, last variable
 * fastest). The callback receives the assignment and term values as ground
 * indices; returning false stops the walk.
 */
void for_each_instance(const GroundSet& g, const PatternTemplate& t,
                       const std::function<bool(const std::vector<std::uint32_t>& assignment,
                                                const std::vector<std::uint32_t>& term_values)>& fn);

struct FoundInstance {
  Instance instance;
  int color;
};

/* Instances whose term values share one color, in assignment order, up to
 * limit when given. */
std::vector<FoundInstance> find_instances(const Coloring& coloring, const PatternTemplate& t,
                                          std::optional<std::size_t> limit = std::nullopt);

struct MonochromeCounts {
  std::vector<std::uint64_t> per_color;
  std::uint64_t total = 0;
};

/* Counts ordered assignments, so (x,y) and (y,x) count separately. */
MonochromeCounts count_monochromatic(const Coloring& coloring, const PatternTemplate& t);

}  // namespace quadpat
