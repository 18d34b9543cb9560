#include "quadpat/search.hpp"

namespace quadpat {

void for_each_instance(const GroundSet& g, const PatternTemplate& t,
                       const std::function<bool(const std::vector<std::uint32_t>&,
                                                const std::vector<std::uint32_t>&)>& fn) {
  validate_pattern(t);
  const std::uint32_t size = g.size();
  if (size == 0) return;
  std::vector<bool> zero_banned(t.num_vars, false);
  for (int v : t.nonzero_vars) zero_banned[v] = true;
  const auto zero = g.zero_index();

  std::vector<std::uint32_t> assign(t.num_vars, 0);
  std::vector<std::uint32_t> values(t.terms.size());
  const int vars = t.num_vars;
  for (;;) {
    bool ok = true;
    if (zero) {
      for (int v = 0; v < vars && ok; ++v)
        if (zero_banned[v] && assign[v] == *zero) ok = false;
    }
    if (ok) {
      for (std::size_t ti = 0; ti < t.terms.size() && ok; ++ti) {
        auto r = eval_idx(t.terms[ti], assign, g);
        if (!r) {
          ok = false;
          break;
        }
        values[ti] = *r;
      }
    }
    if (ok && t.require_distinct) {
      for (std::size_t a = 0; a + 1 < values.size() && ok; ++a)
        for (std::size_t b = a + 1; b < values.size(); ++b)
          if (values[a] == values[b]) {
            ok = false;
            break;
          }
    }
    if (ok && !fn(assign, values)) return;

    int pos = vars - 1;
    while (pos >= 0 && ++assign[pos] == size) assign[pos--] = 0;
    if (pos < 0) return;
  }
}

std::vector<FoundInstance> find_instances(const Coloring& coloring, const PatternTemplate& t,
                                          std::optional<std::size_t> limit) {
  const GroundSet& g = coloring.ground();
  std::vector<FoundInstance> out;
  if (limit && *limit == 0) return out;
  for_each_instance(g, t, [&](const auto& assign, const auto& values) {
    const std::uint8_t c = coloring.color_idx(values[0]);
    for (std::size_t i = 1; i < values.size(); ++i)
      if (coloring.color_idx(values[i]) != c) return true;
    FoundInstance f;
    f.color = c;
    for (std::uint32_t a : assign) f.instance.assignment.push_back(g.value_at(a));
    for (std::uint32_t v : values) f.instance.term_values.push_back(g.value_at(v));
    out.push_back(std::move(f));
    return !limit || out.size() < *limit;
  });
  return out;
}

MonochromeCounts count_monochromatic(const Coloring& coloring, const PatternTemplate& t) {
  MonochromeCounts counts;
  counts.per_color.assign(coloring.num_colors(), 0);
  for_each_instance(coloring.ground(), t, [&](const auto&, const auto& values) {
    const std::uint8_t c = coloring.color_idx(values[0]);
    for (std::size_t i = 1; i < values.size(); ++i)
      if (coloring.color_idx(values[i]) != c) return true;
    ++counts.per_color[c];
    ++counts.total;
    return true;
  });
  return counts;
}

}  // namespace quadpat
