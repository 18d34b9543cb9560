#include "quadpat/ground.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace quadpat {

namespace {

bool is_prime(std::int64_t p) {
  if (p < 2) return false;
  for (std::int64_t d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

std::int64_t mod_pow(std::int64_t base, std::int64_t exp, std::int64_t p) {
  std::int64_t acc = 1 % p;
  base %= p;
  while (exp > 0) {
    if (exp & 1) acc = acc * base % p;
    base = base * base % p;
    exp >>= 1;
  }
  return acc;
}

constexpr std::int64_t kMaxIntervalSize = std::int64_t{1} << 24;
constexpr std::int64_t kMaxFieldOrder = std::int64_t{1} << 30;
constexpr std::int64_t kMaxGridCells = std::int64_t{1} << 22;

}  // namespace

GroundSet GroundSet::interval(std::int64_t lo, std::int64_t hi) {
  if (lo > hi) throw std::invalid_argument("interval: lo > hi");
  if (hi - lo + 1 > kMaxIntervalSize) throw std::invalid_argument("interval: too large");
  GroundSet g;
  g.kind_ = GroundKind::IntegerInterval;
  g.lo_ = lo;
  g.hi_ = hi;
  return g;
}

GroundSet GroundSet::prime_field(std::int64_t p) {
  if (p > kMaxFieldOrder) throw std::invalid_argument("prime_field: p too large");
  if (!is_prime(p)) throw std::invalid_argument("prime_field: p is not prime");
  GroundSet g;
  g.kind_ = GroundKind::PrimeField;
  g.p_ = p;
  return g;
}

GroundSet GroundSet::rational_grid(std::int64_t max_num, std::int64_t max_den) {
  if (max_num < 1 || max_den < 1)
    throw std::invalid_argument("rational_grid: bounds must be positive");
  if ((2 * max_num + 1) * max_den > kMaxGridCells)
    throw std::invalid_argument("rational_grid: too large");
  GroundSet g;
  g.kind_ = GroundKind::RationalGrid;
  g.max_num_ = max_num;
  g.max_den_ = max_den;
  for (std::int64_t b = 1; b <= max_den; ++b)
    for (std::int64_t a = -max_num; a <= max_num; ++a)
      if (std::gcd(a < 0 ? -a : a, b) == 1 || (a == 0 && b == 1))
        g.grid_vals_.emplace_back(BigInt(a), BigInt(b));
  std::sort(g.grid_vals_.begin(), g.grid_vals_.end());
  for (std::uint32_t i = 0; i < g.grid_vals_.size(); ++i)
    g.grid_idx_.emplace(g.grid_vals_[i], i);
  return g;
}

std::optional<GroundSet> GroundSet::parse(std::string_view spec) {
  auto colon = spec.find(':');
  if (colon == std::string_view::npos) return std::nullopt;
  std::string_view head = spec.substr(0, colon);
  std::string_view body = spec.substr(colon + 1);
  auto to_i64 = [](std::string_view s) -> std::optional<std::int64_t> {
    auto r = Rational::parse(s);
    if (!r || !r->is_integer()) return std::nullopt;
    return r->as_int64();
  };
  try {
    if (head == "int") {
      auto dots = body.find("..");
      if (dots == std::string_view::npos) return std::nullopt;
      auto lo = to_i64(body.substr(0, dots));
      auto hi = to_i64(body.substr(dots + 2));
      if (!lo || !hi || *lo > *hi) return std::nullopt;
      return interval(*lo, *hi);
    }
    if (head == "fp") {
      auto p = to_i64(body);
      if (!p) return std::nullopt;
      return prime_field(*p);
    }
    if (head == "qgrid") {
      auto slash = body.find('/');
      if (slash == std::string_view::npos) return std::nullopt;
      auto n = to_i64(body.substr(0, slash));
      auto d = to_i64(body.substr(slash + 1));
      if (!n || !d) return std::nullopt;
      return rational_grid(*n, *d);
    }
  } catch (const std::exception&) {
    return std::nullopt;
  }
  return std::nullopt;
}

std::string GroundSet::describe() const {
  switch (kind_) {
    case GroundKind::IntegerInterval:
      return "int:" + std::to_string(lo_) + ".." + std::to_string(hi_);
    case GroundKind::PrimeField:
      return "fp:" + std::to_string(p_);
    case GroundKind::RationalGrid:
      return "qgrid:" + std::to_string(max_num_) + "/" + std::to_string(max_den_);
  }
  return "?";
}

std::uint32_t GroundSet::size() const {
  switch (kind_) {
    case GroundKind::IntegerInterval:
      return static_cast<std::uint32_t>(hi_ - lo_ + 1);
    case GroundKind::PrimeField:
      return static_cast<std::uint32_t>(p_);
    case GroundKind::RationalGrid:
      return static_cast<std::uint32_t>(grid_vals_.size());
  }
  return 0;
}

Rational GroundSet::value_at(std::uint32_t idx) const {
  switch (kind_) {
    case GroundKind::IntegerInterval:
      return Rational(lo_ + static_cast<std::int64_t>(idx));
    case GroundKind::PrimeField:
      return Rational(static_cast<std::int64_t>(idx));
    case GroundKind::RationalGrid:
      return grid_vals_[idx];
  }
  return Rational();
}

std::optional<std::uint32_t> GroundSet::index_of(const Rational& v) const {
  switch (kind_) {
    case GroundKind::IntegerInterval: {
      if (!v.is_integer()) return std::nullopt;
      auto i = v.as_int64();
      if (!i || *i < lo_ || *i > hi_) return std::nullopt;
      return static_cast<std::uint32_t>(*i - lo_);
    }
    case GroundKind::PrimeField: {
      if (!v.is_integer()) return std::nullopt;
      auto i = v.as_int64();
      if (!i || *i < 0 || *i >= p_) return std::nullopt;
      return static_cast<std::uint32_t>(*i);
    }
    case GroundKind::RationalGrid: {
      auto it = grid_idx_.find(v);
      if (it == grid_idx_.end()) return std::nullopt;
      return it->second;
    }
  }
  return std::nullopt;
}

Rational GroundSet::add_value(const Rational& a, const Rational& b) const {
  Rational s = a + b;
  if (kind_ != GroundKind::PrimeField) return s;
  auto i = embed_constant(s);
  return Rational(static_cast<std::int64_t>(*i));
}

Rational GroundSet::mul_value(const Rational& a, const Rational& b) const {
  Rational m = a * b;
  if (kind_ != GroundKind::PrimeField) return m;
  auto i = embed_constant(m);
  return Rational(static_cast<std::int64_t>(*i));
}

std::optional<std::uint32_t> GroundSet::add_idx(std::uint32_t a, std::uint32_t b) const {
  switch (kind_) {
    case GroundKind::IntegerInterval: {
      std::int64_t v = (lo_ + static_cast<std::int64_t>(a)) + (lo_ + static_cast<std::int64_t>(b));
      if (v < lo_ || v > hi_) return std::nullopt;
      return static_cast<std::uint32_t>(v - lo_);
    }
    case GroundKind::PrimeField:
      return (a + b) % static_cast<std::uint32_t>(p_);
    case GroundKind::RationalGrid:
      return index_of(grid_vals_[a] + grid_vals_[b]);
  }
  return std::nullopt;
}

std::optional<std::uint32_t> GroundSet::mul_idx(std::uint32_t a, std::uint32_t b) const {
  switch (kind_) {
    case GroundKind::IntegerInterval: {
      std::int64_t v = (lo_ + static_cast<std::int64_t>(a)) * (lo_ + static_cast<std::int64_t>(b));
      if (v < lo_ || v > hi_) return std::nullopt;
      return static_cast<std::uint32_t>(v - lo_);
    }
    case GroundKind::PrimeField:
      return static_cast<std::uint32_t>(static_cast<std::int64_t>(a) * b % p_);
    case GroundKind::RationalGrid:
      return index_of(grid_vals_[a] * grid_vals_[b]);
  }
  return std::nullopt;
}

std::optional<std::uint32_t> GroundSet::inv_idx(std::uint32_t a) const {
  if (kind_ != GroundKind::PrimeField || a == 0) return std::nullopt;
  return static_cast<std::uint32_t>(mod_pow(a, p_ - 2, p_));
}

std::optional<std::uint32_t> GroundSet::div_idx(std::uint32_t a, std::uint32_t b) const {
  auto ib = inv_idx(b);
  if (!ib) return std::nullopt;
  return mul_idx(a, *ib);
}

std::optional<std::uint32_t> GroundSet::embed_constant(const Rational& c) const {
  if (kind_ != GroundKind::PrimeField) return index_of(c);
  BigInt den_mod = c.den() % p_;
  if (den_mod == 0) return std::nullopt;
  BigInt num_mod = c.num() % p_;
  if (num_mod < 0) num_mod += p_;
  std::int64_t n = num_mod.convert_to<std::int64_t>();
  std::int64_t d = den_mod.convert_to<std::int64_t>();
  return static_cast<std::uint32_t>(n * mod_pow(d, p_ - 2, p_) % p_);
}

std::optional<std::uint32_t> GroundSet::zero_index() const { return index_of(Rational(0)); }
std::optional<std::uint32_t> GroundSet::one_index() const { return index_of(Rational(1)); }

bool operator==(const GroundSet& a, const GroundSet& b) {
  if (a.kind_ != b.kind_) return false;
  switch (a.kind_) {
    case GroundKind::IntegerInterval:
      return a.lo_ == b.lo_ && a.hi_ == b.hi_;
    case GroundKind::PrimeField:
      return a.p_ == b.p_;
    case GroundKind::RationalGrid:
      return a.max_num_ == b.max_num_ && a.max_den_ == b.max_den_;
  }
  return false;
}

IndexSet full_set(const GroundSet& g) { return IndexSet::full(g.size()); }

IndexSet nonzero_set(const GroundSet& g) {
  IndexSet s = IndexSet::full(g.size());
  if (auto z = g.zero_index()) s.reset(*z);
  return s;
}

IndexSet scale_set(const GroundSet& g, std::uint32_t a, const IndexSet& s) {
  IndexSet out(g.size());
  s.for_each([&](std::uint32_t i) {
    if (auto p = g.mul_idx(a, i)) out.set(*p);
  });
  return out;
}

}  // namespace quadpat
