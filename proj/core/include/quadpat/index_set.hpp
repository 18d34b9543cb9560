#pragma once

#include <cstdint>
#include <vector>

namespace quadpat {

/* Dense bitset over ground-set enumeration indices 0..n-1. */
class IndexSet {
 public:
  IndexSet() = default;
  explicit IndexSet(std::uint32_t universe)
      : n_(universe), w_((universe + 63) / 64, 0) {}

  static IndexSet full(std::uint32_t universe) {
    IndexSet s(universe);
    for (std::uint32_t i = 0; i < universe; ++i) s.set(i);
    return s;
  }

  std::uint32_t universe() const { return n_; }

  bool test(std::uint32_t i) const { return (w_[i >> 6] >> (i & 63)) & 1; }
  void set(std::uint32_t i) { w_[i >> 6] |= std::uint64_t{1} << (i & 63); }
  void reset(std::uint32_t i) { w_[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }

  std::uint32_t count() const {
    std::uint32_t c = 0;
    for (auto word : w_) c += static_cast<std::uint32_t>(__builtin_popcountll(word));
    return c;
  }
  bool empty() const {
    for (auto word : w_)
      if (word) return false;
    return true;
  }

  IndexSet& operator&=(const IndexSet& o) {
    for (std::size_t i = 0; i < w_.size(); ++i) w_[i] &= o.w_[i];
    return *this;
  }
  IndexSet& operator|=(const IndexSet& o) {
    for (std::size_t i = 0; i < w_.size(); ++i) w_[i] |= o.w_[i];
    return *this;
  }
  IndexSet& and_not(const IndexSet& o) {
    for (std::size_t i = 0; i < w_.size(); ++i) w_[i] &= ~o.w_[i];
    return *this;
  }

  bool subset_of(const IndexSet& o) const {
    for (std::size_t i = 0; i < w_.size(); ++i)
      if (w_[i] & ~o.w_[i]) return false;
    return true;
  }
  bool intersects(const IndexSet& o) const {
    for (std::size_t i = 0; i < w_.size(); ++i)
      if (w_[i] & o.w_[i]) return true;
    return false;
  }

  friend bool operator==(const IndexSet& a, const IndexSet& b) {
    return a.n_ == b.n_ && a.w_ == b.w_;
  }

  /* Ascending enumeration of members. */
  std::vector<std::uint32_t> to_vector() const {
    std::vector<std::uint32_t> out;
    for (std::uint32_t i = 0; i < n_; ++i)
      if (test(i)) out.push_back(i);
    return out;
  }

  template <typename Fn>
  void for_each(Fn&& fn) const {
    for (std::size_t wi = 0; wi < w_.size(); ++wi) {
      std::uint64_t word = w_[wi];
      while (word) {
        int b = __builtin_ctzll(word);
        word &= word - 1;
        fn(static_cast<std::uint32_t>(wi * 64 + b));
      }
    }
  }

 private:
  std::uint32_t n_ = 0;
  std::vector<std::uint64_t> w_;
};

}  // namespace quadpat
