#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "quadpat/ground.hpp"
#include "quadpat/index_set.hpp"

namespace quadpat {

/* A total assignment of colors 0..n-1 to every ground element, indexed by the
 * ground's enumeration order. */
class Coloring {
 public:
  Coloring(GroundSet ground, int num_colors, std::vector<std::uint8_t> colors);

  static Coloring constant(const GroundSet& g, int num_colors, int color);
  /* digits must have exactly g.size() characters from '0'..'9'; num_colors <= 10. */
  static Coloring from_digits(const GroundSet& g, int num_colors, std::string_view digits);
  /* mt19937_64 with rejection sampling, so one seed gives one coloring everywhere. */
  static Coloring uniform_random(const GroundSet& g, int num_colors, std::uint64_t seed);
  static Coloring from_function(const GroundSet& g, int num_colors,
                                const std::function<int(const Rational&)>& f);

  const GroundSet& ground() const { return ground_; }
  int num_colors() const { return num_colors_; }
  std::size_t size() const { return colors_.size(); }

  std::uint8_t color_idx(std::uint32_t idx) const { return colors_[idx]; }
  std::optional<std::uint8_t> color_value(const Rational& v) const;
  void set_color(std::uint32_t idx, int color);

  IndexSet class_set(int color) const;
  std::vector<std::size_t> class_counts() const;
  /* Largest class; ties break to the smallest color id. */
  int densest_class() const;

  std::string to_digits() const;

  bool operator==(const Coloring& o) const = default;

 private:
  GroundSet ground_;
  int num_colors_;
  std::vector<std::uint8_t> colors_;
};

}  // namespace quadpat
