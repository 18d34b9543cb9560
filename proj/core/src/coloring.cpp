#include "quadpat/coloring.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>

namespace quadpat {

Coloring::Coloring(GroundSet ground, int num_colors, std::vector<std::uint8_t> colors)
    : ground_(std::move(ground)), num_colors_(num_colors), colors_(std::move(colors)) {
  if (num_colors_ < 1 || num_colors_ > 64)
    throw std::invalid_argument("coloring: num_colors out of range");
  if (colors_.size() != ground_.size())
    throw std::invalid_argument("coloring: color vector size differs from ground size");
  for (std::uint8_t c : colors_)
    if (c >= num_colors_) throw std::invalid_argument("coloring: color id out of range");
}

Coloring Coloring::constant(const GroundSet& g, int num_colors, int color) {
  if (color < 0 || color >= num_colors) throw std::invalid_argument("coloring: bad constant color");
  return Coloring(g, num_colors, std::vector<std::uint8_t>(g.size(), std::uint8_t(color)));
}

Coloring Coloring::from_digits(const GroundSet& g, int num_colors, std::string_view digits) {
  if (num_colors > 10) throw std::invalid_argument("coloring: digit form limited to 10 colors");
  if (digits.size() != g.size())
    throw std::invalid_argument("coloring: digit string length differs from ground size");
  std::vector<std::uint8_t> cs(digits.size());
  for (std::size_t i = 0; i < digits.size(); ++i) {
    if (digits[i] < '0' || digits[i] > '9')
      throw std::invalid_argument("coloring: non-digit character");
    cs[i] = std::uint8_t(digits[i] - '0');
  }
  return Coloring(g, num_colors, std::move(cs));
}

Coloring Coloring::uniform_random(const GroundSet& g, int num_colors, std::uint64_t seed) {
  if (num_colors < 1 || num_colors > 64)
    throw std::invalid_argument("coloring: num_colors out of range");
  std::mt19937_64 rng(seed);
  const std::uint64_t n = std::uint64_t(num_colors);
  /* Reject the biased tail instead of using uniform_int_distribution, whose
   * draw order is implementation-defined. */
  const std::uint64_t rem = (UINT64_MAX % n + 1) % n;
  const std::uint64_t threshold = UINT64_MAX - rem + 1;  // == 0 means accept all
  std::vector<std::uint8_t> cs(g.size());
  for (auto& c : cs) {
    std::uint64_t r;
    do {
      r = rng();
    } while (rem != 0 && r >= threshold);
    c = std::uint8_t(r % n);
  }
  return Coloring(g, num_colors, std::move(cs));
}

Coloring Coloring::from_function(const GroundSet& g, int num_colors,
                                 const std::function<int(const Rational&)>& f) {
  std::vector<std::uint8_t> cs(g.size());
  for (std::uint32_t i = 0; i < g.size(); ++i) {
    int c = f(g.value_at(i));
    if (c < 0 || c >= num_colors) throw std::invalid_argument("coloring: function color out of range");
    cs[i] = std::uint8_t(c);
  }
  return Coloring(g, num_colors, std::move(cs));
}

std::optional<std::uint8_t> Coloring::color_value(const Rational& v) const {
  auto i = ground_.index_of(v);
  if (!i) return std::nullopt;
  return colors_[*i];
}

void Coloring::set_color(std::uint32_t idx, int color) {
  if (idx >= colors_.size()) throw std::out_of_range("coloring: index out of range");
  if (color < 0 || color >= num_colors_) throw std::invalid_argument("coloring: color out of range");
  colors_[idx] = std::uint8_t(color);
}

IndexSet Coloring::class_set(int color) const {
  IndexSet s(colors_.size());
  for (std::size_t i = 0; i < colors_.size(); ++i)
    if (colors_[i] == color) s.set(std::uint32_t(i));
  return s;
}

std::vector<std::size_t> Coloring::class_counts() const {
  std::vector<std::size_t> counts(num_colors_, 0);
  for (std::uint8_t c : colors_) ++counts[c];
  return counts;
}

int Coloring::densest_class() const {
  auto counts = class_counts();
  return int(std::max_element(counts.begin(), counts.end()) - counts.begin());
}

std::string Coloring::to_digits() const {
  if (num_colors_ > 10) throw std::logic_error("coloring: digit form limited to 10 colors");
  std::string s(colors_.size(), '0');
  for (std::size_t i = 0; i < colors_.size(); ++i) s[i] = char('0' + colors_[i]);
  return s;
}

}  // namespace quadpat
