#pragma once

#include <array>
#include <bit>
#include <compare>
#include <cstddef>
#include <cstdint>

namespace antichain {

/// Subset of a universe of at most 8 elements: bit i-1 set <=> element i present.
using SubsetMask = std::uint8_t;

inline constexpr int max_universe = 8;

/// Number of 64-bit blocks needed to index every subset of an n-element universe.
constexpr std::size_t blocks_for(int n) { return n <= 6 ? 1 : n == 7 ? 2 : 4; }

/// Set of subsets of the universe, stored as a 2^n-bit vector indexed by mask.
///
/// Used both as a downset representation of an antichain and as a plain family
/// of masks (interval posets, lattice levels). Bits at indices >= 2^n are kept
/// zero by every operation that takes a universe size.
template <std::size_t W>
class BasicMaskSet {
  static_assert(W == 1 || W == 2 || W == 4);

public:
  static constexpr std::size_t words = W;
  static constexpr int capacity = static_cast<int>(64 * W);

  constexpr BasicMaskSet() = default;

  static constexpr BasicMaskSet from_word(std::uint64_t w) {
    BasicMaskSet s;
    s.w_[0] = w;
    return s;
  }

  /// All 2^n subsets of the universe.
  static constexpr BasicMaskSet full(int n) {
    BasicMaskSet s;
    if (n >= 6) {
      for (std::size_t i = 0; i < (std::size_t{1} << (n - 6)) && i < W; ++i) s.w_[i] = ~std::uint64_t{0};
    } else {
      s.w_[0] = (std::uint64_t{1} << (1u << n)) - 1;
    }
    return s;
  }

  /// Indices m whose bit j is clear.
  static constexpr BasicMaskSet without_element(int j) {
    constexpr std::array<std::uint64_t, 6> pattern = {
        0x5555555555555555ull, 0x3333333333333333ull, 0x0F0F0F0F0F0F0F0Full,
        0x00FF00FF00FF00FFull, 0x0000FFFF0000FFFFull, 0x00000000FFFFFFFFull};
    BasicMaskSet s;
    for (std::size_t i = 0; i < W; ++i) {
      if (j < 6)
        s.w_[i] = pattern[static_cast<std::size_t>(j)];
      else
        s.w_[i] = ((i >> (j - 6)) & 1u) ? 0 : ~std::uint64_t{0};
    }
    return s;
  }

  constexpr bool test(unsigned m) const { return (w_[m >> 6] >> (m & 63)) & 1u; }
  constexpr void set(unsigned m) { w_[m >> 6] |= std::uint64_t{1} << (m & 63); }
  constexpr void reset(unsigned m) { w_[m >> 6] &= ~(std::uint64_t{1} << (m & 63)); }

  constexpr std::uint64_t word(std::size_t i) const { return w_[i]; }
  constexpr std::uint64_t& word(std::size_t i) { return w_[i]; }

  constexpr int count() const {
    int c = 0;
    for (auto w : w_) c += std::popcount(w);
    return c;
  }

  constexpr bool none() const {
    for (auto w : w_)
      if (w) return false;
    return true;
  }
  constexpr bool any() const { return !none(); }

  /// Smallest member index; capacity when empty.
  constexpr int lowest() const {
    for (std::size_t i = 0; i < W; ++i)
      if (w_[i]) return static_cast<int>(64 * i) + std::countr_zero(w_[i]);
    return capacity;
  }

  constexpr bool subset_of(const BasicMaskSet& o) const {
    for (std::size_t i = 0; i < W; ++i)
      if (w_[i] & ~o.w_[i]) return false;
    return true;
  }

  constexpr bool intersects(const BasicMaskSet& o) const {
    for (std::size_t i = 0; i < W; ++i)
      if (w_[i] & o.w_[i]) return true;
    return false;
  }

  constexpr BasicMaskSet& operator|=(const BasicMaskSet& o) {
    for (std::size_t i = 0; i < W; ++i) w_[i] |= o.w_[i];
    return *this;
  }
  constexpr BasicMaskSet& operator&=(const BasicMaskSet& o) {
    for (std::size_t i = 0; i < W; ++i) w_[i] &= o.w_[i];
    return *this;
  }
  constexpr BasicMaskSet& operator^=(const BasicMaskSet& o) {
    for (std::size_t i = 0; i < W; ++i) w_[i] ^= o.w_[i];
    return *this;
  }
  /// Set difference.
  constexpr BasicMaskSet& operator-=(const BasicMaskSet& o) {
    for (std::size_t i = 0; i < W; ++i) w_[i] &= ~o.w_[i];
    return *this;
  }

  friend constexpr BasicMaskSet operator|(BasicMaskSet a, const BasicMaskSet& b) { return a |= b; }
  friend constexpr BasicMaskSet operator&(BasicMaskSet a, const BasicMaskSet& b) { return a &= b; }
  friend constexpr BasicMaskSet operator^(BasicMaskSet a, const BasicMaskSet& b) { return a ^= b; }
  friend constexpr BasicMaskSet operator-(BasicMaskSet a, const BasicMaskSet& b) { return a -= b; }

  friend constexpr bool operator==(const BasicMaskSet&, const BasicMaskSet&) = default;

  /// Numeric order of the whole 2^n-bit word (highest block most significant).
  friend constexpr std::strong_ordering operator<=>(const BasicMaskSet& a, const BasicMaskSet& b) {
    for (std::size_t i = W; i-- > 0;)
      if (a.w_[i] != b.w_[i]) return a.w_[i] <=> b.w_[i];
    return std::strong_ordering::equal;
  }

  /// {m | {j} : m in this, j not in m}
  constexpr BasicMaskSet shift_up(int j) const {
    BasicMaskSet r;
    if (j < 6) {
      const auto keep = without_element(j);
      const unsigned s = 1u << j;
      for (std::size_t i = 0; i < W; ++i) r.w_[i] = (w_[i] & keep.w_[i]) << s;
    } else {
      const std::size_t s = std::size_t{1} << (j - 6);
      for (std::size_t i = 0; i < W; ++i)
        if ((i & s) && i - s < W) r.w_[i] = w_[i - s];
    }
    return r;
  }

  /// {m \ {j} : m in this, j in m}
  constexpr BasicMaskSet shift_down(int j) const {
    BasicMaskSet r;
    if (j < 6) {
      const auto keep = without_element(j);
      const unsigned s = 1u << j;
      for (std::size_t i = 0; i < W; ++i) r.w_[i] = (w_[i] >> s) & keep.w_[i];
    } else {
      const std::size_t s = std::size_t{1} << (j - 6);
      for (std::size_t i = 0; i < W; ++i)
        if (!(i & s) && i + s < W) r.w_[i] = w_[i + s];
    }
    return r;
  }

  /// Image under the universe relabeling that exchanges elements i and j.
  constexpr BasicMaskSet swap_elements(int i, int j) const {
    if (i == j) return *this;
    const auto no_i = without_element(i), no_j = without_element(j);
    BasicMaskSet has_i = full_capacity() - no_i, has_j = full_capacity() - no_j;
    BasicMaskSet fixed = *this - ((has_i & no_j) | (no_i & has_j));
    BasicMaskSet i_only = *this & has_i & no_j;
    BasicMaskSet j_only = *this & no_i & has_j;
    return fixed | i_only.shift_down(i).shift_up(j) | j_only.shift_down(j).shift_up(i);
  }

  /// Downward closure: every subset of a member becomes a member.
  constexpr BasicMaskSet down_closure(int n) const {
    BasicMaskSet r = *this;
    for (int j = 0; j < n; ++j) r |= r.shift_down(j);
    return r;
  }

  /// Upward closure within an n-element universe.
  constexpr BasicMaskSet up_closure(int n) const {
    BasicMaskSet r = *this;
    for (int j = 0; j < n; ++j) r |= r.shift_up(j);
    return r;
  }

  /// Members with no proper superset in the family.
  constexpr BasicMaskSet maximal(int n) const {
    BasicMaskSet covered;
    for (int j = 0; j < n; ++j) covered |= shift_down(j);
    return *this - covered.down_closure(n);
  }

  /// Members with no proper subset in the family.
  constexpr BasicMaskSet minimal(int n) const {
    BasicMaskSet covered;
    for (int j = 0; j < n; ++j) covered |= shift_up(j);
    return *this - covered.up_closure(n);
  }

  /// Masks of exactly `size` elements within an n-element universe.
  static constexpr BasicMaskSet of_cardinality(int n, int size) {
    BasicMaskSet r;
    for (unsigned m = 0; m < (1u << n); ++m)
      if (std::popcount(m) == size) r.set(m);
    return r;
  }

  template <class F>
  constexpr void for_each(F&& f) const {
    for (std::size_t i = 0; i < W; ++i)
      for (std::uint64_t w = w_[i]; w; w &= w - 1)
        f(static_cast<unsigned>(64 * i + static_cast<unsigned>(std::countr_zero(w))));
  }

  /// Gosper-free subset walk: visits every subset of *this, starting with the empty set.
  template <class F>
  constexpr void for_each_subset(F&& f) const {
    BasicMaskSet sub;
    do {
      f(static_cast<const BasicMaskSet&>(sub));
      sub = next_subset(sub);
    } while (sub.any());
  }

  /// (sub - this) & this with multiword borrow; wraps to the empty set after the last subset.
  constexpr BasicMaskSet next_subset(const BasicMaskSet& sub) const {
    BasicMaskSet r;
    std::uint64_t borrow = 0;
    for (std::size_t i = 0; i < W; ++i) {
      const std::uint64_t a = sub.w_[i], b = w_[i];
      const std::uint64_t d = a - b - borrow;
      borrow = (a < b) || (a - b < borrow) ? 1 : 0;
      r.w_[i] = d & b;
    }
    return r;
  }

  template <std::size_t V>
  constexpr BasicMaskSet<V> resized() const {
    BasicMaskSet<V> r;
    for (std::size_t i = 0; i < V && i < W; ++i) r.word(i) = w_[i];
    return r;
  }

  constexpr std::size_t hash() const {
    std::uint64_t h = 0x9E3779B97F4A7C15ull;
    for (auto w : w_) {
      h ^= w + 0x9E3779B97F4A7C15ull + (h << 6) + (h >> 2);
      h *= 0xBF58476D1CE4E5B9ull;
      h ^= h >> 31;
    }
    return static_cast<std::size_t>(h);
  }

private:
  static constexpr BasicMaskSet full_capacity() {
    BasicMaskSet s;
    for (auto& w : s.w_) w = ~std::uint64_t{0};
    return s;
  }

  std::array<std::uint64_t, W> w_{};
};

using MaskSet = BasicMaskSet<4>;

struct MaskSetHash {
  template <std::size_t W>
  std::size_t operator()(const BasicMaskSet<W>& s) const { return s.hash(); }
};

}  // namespace antichain
