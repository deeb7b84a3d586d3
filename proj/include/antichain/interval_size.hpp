#pragma once

#include "antichain/bigcount.hpp"
#include "antichain/interval_poset.hpp"

#include <atomic>
#include <bit>
#include <cstdint>
#include <mutex>
#include <shared_mutex>
#include <unordered_map>
#include <vector>

namespace antichain {

/// The interval poset split by cardinality: levels[i] holds the members of size l0 + i.
struct LevelStructure {
  Universe universe;
  int l0 = 0;
  std::vector<MaskSet> levels;

  const MaskSet& level(std::size_t i) const { return levels[i]; }
  std::size_t depth() const { return levels.size(); }
};

enum class Parity { even, odd };

namespace detail {

template <std::size_t W>
struct Levels {
  int n = 0;
  std::vector<BasicMaskSet<W>> lv;

  /// chi^+ : members of the next level whose immediate subsets inside this level all lie in chi.
  BasicMaskSet<W> up(std::size_t i, const BasicMaskSet<W>& chi) const {
    if (i + 1 >= lv.size()) return {};
    const BasicMaskSet<W> missing = lv[i] - chi;
    BasicMaskSet<W> blocked;
    for (int j = 0; j < n; ++j) blocked |= missing.shift_up(j);
    return lv[i + 1] - blocked;
  }

  /// chi^- : immediate subsets of members of chi that lie in the previous level.
  BasicMaskSet<W> down(std::size_t i, const BasicMaskSet<W>& chi) const {
    if (i == 0) return {};
    BasicMaskSet<W> r;
    for (int j = 0; j < n; ++j) r |= chi.shift_down(j);
    return r & lv[i - 1];
  }
};

template <std::size_t W>
Levels<W> make_levels(int n, const BasicMaskSet<W>& poset) {
  Levels<W> L;
  L.n = n;
  if (poset.none()) return L;
  int lo = n, hi = 0;
  poset.for_each([&](unsigned m) {
    lo = std::min(lo, std::popcount(m));
    hi = std::max(hi, std::popcount(m));
  });
  for (int l = lo; l <= hi; ++l) L.lv.push_back(poset & BasicMaskSet<W>::of_cardinality(n, l));
  return L;
}

inline Wide shl(unsigned e) { return Wide{1} << e; }

/// Memoized alternating-level sum. S(i, chi_i) sums over chi_{i+2} within chi_i^{++},
/// weighting by 2^{|chi_i^+| - |chi_{i+2}^-|}; past the last level the tail is 1 or 2^{|chi_i^+|}.
template <std::size_t W>
class LeveledSum {
public:
  explicit LeveledSum(const Levels<W>& L) : L_(L), memo_(L.lv.size()) {}

  Wide total(Parity parity) {
    const std::size_t last = L_.lv.size() - 1;
    Wide sum = 0;
    if (parity == Parity::even) {
      L_.lv[0].for_each_subset([&](const BasicMaskSet<W>& chi0) { sum += tail(0, chi0); });
      return sum;
    }
    const unsigned base = static_cast<unsigned>(L_.lv[0].count());
    if (last == 0) return shl(base);
    L_.lv[1].for_each_subset([&](const BasicMaskSet<W>& chi1) {
      sum += shl(base - static_cast<unsigned>(L_.down(1, chi1).count())) * tail(1, chi1);
    });
    return sum;
  }

private:
  Wide tail(std::size_t i, const BasicMaskSet<W>& chi) {
    const std::size_t last = L_.lv.size() - 1;
    if (i + 1 > last) return 1;
    const BasicMaskSet<W> plus = L_.up(i, chi);
    const unsigned free_sets = static_cast<unsigned>(plus.count());
    if (i + 2 > last) return shl(free_sets);
    auto& memo = memo_[i];
    if (auto it = memo.find(chi); it != memo.end()) return it->second;
    Wide sum = 0;
    L_.up(i + 1, plus).for_each_subset([&](const BasicMaskSet<W>& next) {
      sum += shl(free_sets - static_cast<unsigned>(L_.down(i + 2, next).count())) * tail(i + 2, next);
    });
    memo.emplace(chi, sum);
    return sum;
  }

  const Levels<W>& L_;
  std::vector<std::unordered_map<BasicMaskSet<W>, Wide, MaskSetHash>> memo_;
};

template <std::size_t W>
Wide leveled_size(int n, const BasicMaskSet<W>& poset, Parity parity) {
  if (poset.none()) return 1;
  const Levels<W> L = make_levels(n, poset);
  return LeveledSum<W>(L).total(parity);
}

/// Parity whose branching levels hold fewer masks.
template <std::size_t W>
Parity cheaper_parity(int n, const BasicMaskSet<W>& poset) {
  const Levels<W> L = make_levels(n, poset);
  int even = 0, odd = 0;
  for (std::size_t i = 0; i < L.lv.size(); ++i) (i % 2 ? odd : even) += L.lv[i].count();
  return odd < even ? Parity::odd : Parity::even;
}

/// Depth-first walk over the level decomposition. Calls f(downset) once per antichain.
template <std::size_t W, class F>
class IntervalWalker {
public:
  IntervalWalker(const Levels<W>& L, const BasicMaskSet<W>& floor, F& f) : L_(L), floor_(floor), f_(f) {}

  void run() {
    if (L_.lv.empty()) {
      f_(static_cast<const BasicMaskSet<W>&>(floor_));
      return;
    }
    L_.lv[0].for_each_subset([&](const BasicMaskSet<W>& chi0) { step(0, chi0, floor_ | chi0); });
  }

private:
  void step(std::size_t i, const BasicMaskSet<W>& chi, const BasicMaskSet<W>& acc) {
    if (i + 1 == L_.lv.size()) {
      f_(acc);
      return;
    }
    L_.up(i, chi).for_each_subset([&](const BasicMaskSet<W>& next) { step(i + 1, next, acc | next); });
  }

  const Levels<W>& L_;
  BasicMaskSet<W> floor_;
  F& f_;
};

}  // namespace detail

/// Splits the interval poset by cardinality. The poset must be nonempty.
inline LevelStructure level_sets(const Interval& iv) {
  const IntervalPoset p = poset_of_interval(iv);
  if (p.empty()) throw PreconditionError("interval has an empty poset (bottom == top); it has no levels");
  auto L = detail::make_levels(iv.universe().size(), p.members());
  LevelStructure out;
  out.universe = iv.universe();
  out.l0 = std::popcount(static_cast<unsigned>(L.lv[0].lowest()));
  out.levels = std::move(L.lv);
  return out;
}

namespace detail {
inline Levels<4> as_levels(const LevelStructure& L) { return Levels<4>{L.universe.size(), L.levels}; }

inline void check_level(const LevelStructure& L, std::size_t i, const MaskSet& chi) {
  if (i >= L.depth()) throw PreconditionError("level index beyond the poset");
  if (!chi.subset_of(L.levels[i])) throw PreconditionError("chi is not contained in the given level");
}
}  // namespace detail

/// chi^+ with respect to the level structure; chi must lie in level i.
inline MaskSet level_up(const MaskSet& chi, std::size_t i, const LevelStructure& L) {
  detail::check_level(L, i, chi);
  return detail::as_levels(L).up(i, chi);
}

/// chi^- with respect to the level structure; chi must lie in level i.
inline MaskSet level_down(const MaskSet& chi, std::size_t i, const LevelStructure& L) {
  detail::check_level(L, i, chi);
  return detail::as_levels(L).down(i, chi);
}

/// Interval size by the alternating powers-of-two sum over even or odd levels.
inline BigCount size_leveled(const Interval& iv, Parity parity) {
  if (iv.is_empty()) return 0;
  const int n = iv.universe().size();
  const MaskSet p = poset_of_interval(iv).members();
  switch (blocks_for(n)) {
    case 1: return to_big(detail::leveled_size<1>(n, p.resized<1>(), parity));
    case 2: return to_big(detail::leveled_size<2>(n, p.resized<2>(), parity));
    default: return to_big(detail::leveled_size<4>(n, p, parity));
  }
}

/// Calls f(downset) for each antichain of the interval, each exactly once.
template <std::size_t W = 4, class F>
void for_each_downset_in(const Interval& iv, F&& f) {
  if (iv.is_empty()) return;
  const int n = iv.universe().size();
  const MaskSet p = poset_of_interval(iv).members();
  const auto L = detail::make_levels<W>(n, p.template resized<W>());
  const auto floor = to_downset(iv.bottom()).template resized<W>();
  detail::IntervalWalker<W, std::remove_reference_t<F>>(L, floor, f).run();
}

/// Calls f(antichain) for each element of the interval.
template <class F>
void enumerate_interval(const Interval& iv, F&& f) {
  const Universe u = iv.universe();
  for_each_downset_in<4>(iv, [&](const MaskSet& d) { f(from_downset(u, d)); });
}

inline std::vector<Antichain> interval_elements(const Interval& iv) {
  std::vector<Antichain> out;
  enumerate_interval(iv, [&](Antichain a) { out.push_back(std::move(a)); });
  return out;
}

inline std::uint64_t count_by_enumeration(const Interval& iv) {
  std::uint64_t c = 0;
  const int n = iv.universe().size();
  auto tick = [&](const auto&) { ++c; };
  switch (blocks_for(n)) {
    case 1: for_each_downset_in<1>(iv, tick); break;
    case 2: for_each_downset_in<2>(iv, tick); break;
    default: for_each_downset_in<4>(iv, tick); break;
  }
  return c;
}

/// Exact interval sizes with a shared memo.
///
/// Reduction order: replace the interval by the smallest one with the same poset,
/// split along interval-graph components, turn upper intervals [beta, top] into
/// lower ones via duality, then look up the
/// canonical form of the remaining poset before falling back to the leveled sum.
/// Safe for concurrent use; identical inputs always give identical results.
class IntervalSizer {
public:
  struct Stats {
    std::uint64_t hits = 0;
    std::uint64_t misses = 0;
    std::uint64_t entries = 0;
  };

  /// Posets with at most this many members skip canonicalization.
  static constexpr int direct_limit = 12;

  BigCount size(const Interval& iv) {
    if (iv.is_empty()) return 0;
    return to_big(size_wide(iv));
  }

  BigCount size(const Antichain& bottom, const Antichain& top) {
    if (!leq(bottom, top)) return 0;
    return size(Interval(bottom, top));
  }

  Stats stats() const {
    std::shared_lock lock(mutex_);
    return {hits_.load(), misses_.load(), memo_.size()};
  }

  void clear() {
    std::unique_lock lock(mutex_);
    memo_.clear();
    hits_ = misses_ = 0;
  }

  Wide size_wide(const Interval& iv) {
    if (iv.is_empty()) return 0;
    // The size only depends on the poset, and removing shared members can change it.
    const Interval reduced = interval_of_poset(poset_of_interval(iv));
    if (reduced.top().is_bottom()) return 1;
    const auto parts = graph_decompose(reduced);
    if (parts.size() > 1) {
      Wide product = 1;
      for (const auto& part : parts) product *= size_wide(part);
      return product;
    }
    const Universe u = reduced.universe();
    if (reduced.top() == Antichain::top(u) && !reduced.bottom().is_bottom())
      return connected_size(Interval(Antichain::bottom(u), dual(reduced.bottom())));
    return connected_size(reduced);
  }

private:
  Wide connected_size(const Interval& iv) {
    const int n = iv.universe().size();
    const MaskSet p = poset_of_interval(iv).members();
    if (p.count() <= direct_limit || n > 7) return leveled(n, p);
    const MaskSet key = canonical_family(p, n).first;
    {
      std::shared_lock lock(mutex_);
      if (auto it = memo_.find(key); it != memo_.end()) {
        ++hits_;
        return it->second;
      }
    }
    ++misses_;
    const Wide v = leveled(n, key);
    std::unique_lock lock(mutex_);
    memo_.emplace(key, v);
    return v;
  }

  static Wide leveled(int n, const MaskSet& p) {
    switch (blocks_for(n)) {
      case 1: {
        const auto q = p.resized<1>();
        return detail::leveled_size<1>(n, q, detail::cheaper_parity<1>(n, q));
      }
      case 2: {
        const auto q = p.resized<2>();
        return detail::leveled_size<2>(n, q, detail::cheaper_parity<2>(n, q));
      }
      default: return detail::leveled_size<4>(n, p, detail::cheaper_parity<4>(n, p));
    }
  }

  mutable std::shared_mutex mutex_;
  std::unordered_map<MaskSet, Wide, MaskSetHash> memo_;
  std::atomic<std::uint64_t> hits_{0}, misses_{0};
};

inline IntervalSizer& default_sizer() {
  static IntervalSizer sizer;
  return sizer;
}

/// |[bottom, top]|, zero when bottom is not below top.
inline BigCount interval_size(const Antichain& bottom, const Antichain& top) {
  return default_sizer().size(bottom, top);
}

inline BigCount interval_size(const Interval& iv) { return default_sizer().size(iv); }

}  // namespace antichain
