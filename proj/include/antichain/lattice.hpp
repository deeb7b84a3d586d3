#pragma once

#include "antichain/errors.hpp"
#include "antichain/mask_set.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cctype>
#include <cstdint>
#include <mutex>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace antichain {

/// Ground set {1..n}, 0 <= n <= 8.
class Universe {
public:
  constexpr Universe() = default;
  constexpr explicit Universe(int n) : n_(n) {
    if (n < 0 || n > max_universe) throw InvalidInput("universe size must lie in [0, 8], got " + std::to_string(n));
  }

  constexpr int size() const { return n_; }
  constexpr SubsetMask all() const { return static_cast<SubsetMask>((1u << n_) - 1u); }
  constexpr unsigned subset_count() const { return 1u << n_; }
  constexpr bool contains(unsigned mask) const { return mask < subset_count(); }

  friend constexpr bool operator==(Universe, Universe) = default;

private:
  int n_ = 0;
};

/// Set of pairwise incomparable subsets, stored in strictly decreasing mask order.
///
/// The empty antichain is bottom, [0] is {emptyset}, and [2^n - 1] is top. Two
/// antichains over the same universe are equal iff their member sequences are.
class Antichain {
public:
  Antichain() = default;

  static Antichain bottom(Universe u) { return Antichain(u, {}); }
  static Antichain top(Universe u) { return Antichain(u, {u.all()}); }
  /// {emptyset}, the least non-bottom element.
  static Antichain empty_set(Universe u) { return Antichain(u, {0}); }

  /// Wraps `sets` without any checks; callers guarantee the invariants.
  static Antichain from_sorted_unchecked(Universe u, std::vector<SubsetMask> sets) {
    return Antichain(u, std::move(sets));
  }

  Universe universe() const { return u_; }
  const std::vector<SubsetMask>& sets() const { return sets_; }
  std::size_t size() const { return sets_.size(); }
  bool is_bottom() const { return sets_.empty(); }
  bool contains(SubsetMask m) const { return std::binary_search(sets_.begin(), sets_.end(), m, std::greater<>{}); }

  auto begin() const { return sets_.begin(); }
  auto end() const { return sets_.end(); }

  friend bool operator==(const Antichain&, const Antichain&) = default;

  /// Total order for use as a map key (not the lattice order).
  friend bool operator<(const Antichain& a, const Antichain& b) {
    if (a.u_.size() != b.u_.size()) return a.u_.size() < b.u_.size();
    return a.sets_ < b.sets_;
  }

private:
  Antichain(Universe u, std::vector<SubsetMask> sets) : u_(u), sets_(std::move(sets)) {}

  Universe u_;
  std::vector<SubsetMask> sets_;
};

using DownsetVector = MaskSet;

struct CanonicalForm {
  Antichain representative;
  std::uint64_t orbit_size = 1;
};

namespace detail {

inline void check_same(const Antichain& a, const Antichain& b) {
  if (a.universe() != b.universe())
    throw UniverseMismatch("antichains over universes of size " + std::to_string(a.universe().size()) + " and " +
                           std::to_string(b.universe().size()));
}

inline bool is_subset(unsigned a, unsigned b) { return (a & ~b) == 0; }

/// Maximal members of an arbitrary list, sorted descending. Consumes the list.
inline std::vector<SubsetMask> max_sets(std::vector<SubsetMask> v) {
  std::sort(v.begin(), v.end(), std::greater<>{});
  v.erase(std::unique(v.begin(), v.end()), v.end());
  std::vector<SubsetMask> out;
  out.reserve(v.size());
  // Any proper superset of m has a larger mask, so it was already considered.
  for (SubsetMask m : v)
    if (std::none_of(out.begin(), out.end(), [m](SubsetMask k) { return is_subset(m, k); })) out.push_back(m);
  return out;
}

}  // namespace detail

/// The max-operator: inclusion-maximal members of `sets`, sorted and deduplicated.
inline Antichain normalize(Universe u, std::span<const SubsetMask> sets) {
  for (SubsetMask m : sets)
    if (!u.contains(m))
      throw InvalidInput("mask " + std::to_string(m) + " out of range for universe of size " + std::to_string(u.size()));
  return Antichain::from_sorted_unchecked(u, detail::max_sets({sets.begin(), sets.end()}));
}

inline Antichain normalize(Universe u, std::initializer_list<SubsetMask> sets) {
  return normalize(u, std::span<const SubsetMask>(sets.begin(), sets.size()));
}

/// Builds an antichain from members that must already be pairwise incomparable.
inline Antichain make_antichain(Universe u, std::span<const SubsetMask> sets) {
  Antichain a = normalize(u, sets);
  std::vector<SubsetMask> uniq(sets.begin(), sets.end());
  std::sort(uniq.begin(), uniq.end());
  uniq.erase(std::unique(uniq.begin(), uniq.end()), uniq.end());
  if (uniq.size() != a.size()) throw InvalidInput("members are not pairwise incomparable");
  return a;
}

inline Antichain make_antichain(Universe u, std::initializer_list<SubsetMask> sets) {
  return make_antichain(u, std::span<const SubsetMask>(sets.begin(), sets.size()));
}

/// Every member of a lies below some member of b.
inline bool leq(const Antichain& a, const Antichain& b) {
  detail::check_same(a, b);
  return std::all_of(a.begin(), a.end(), [&](SubsetMask x) {
    return std::any_of(b.begin(), b.end(), [x](SubsetMask y) { return detail::is_subset(x, y); });
  });
}

inline Antichain join(const Antichain& a, const Antichain& b) {
  detail::check_same(a, b);
  std::vector<SubsetMask> v(a.begin(), a.end());
  v.insert(v.end(), b.begin(), b.end());
  return Antichain::from_sorted_unchecked(a.universe(), detail::max_sets(std::move(v)));
}

inline Antichain meet(const Antichain& a, const Antichain& b) {
  detail::check_same(a, b);
  std::vector<SubsetMask> v;
  v.reserve(a.size() * b.size());
  for (SubsetMask x : a)
    for (SubsetMask y : b) v.push_back(static_cast<SubsetMask>(x & y));
  return Antichain::from_sorted_unchecked(a.universe(), detail::max_sets(std::move(v)));
}

/// Union of all members.
inline SubsetMask span(const Antichain& a) {
  unsigned s = 0;
  for (SubsetMask m : a) s |= m;
  return static_cast<SubsetMask>(s);
}

/// {A | B : A in a, B in b} for antichains with disjoint spans.
inline Antichain direct_product(const Antichain& a, const Antichain& b) {
  detail::check_same(a, b);
  if (span(a) & span(b)) throw PreconditionError("direct product needs antichains with disjoint spans");
  std::vector<SubsetMask> v;
  v.reserve(a.size() * b.size());
  for (SubsetMask x : a)
    for (SubsetMask y : b) v.push_back(static_cast<SubsetMask>(x | y));
  return Antichain::from_sorted_unchecked(a.universe(), detail::max_sets(std::move(v)));
}

/// X^- = {X \ {x} : x in X}; the empty set has none.
inline Antichain immediate_subsets(Universe u, SubsetMask x) {
  if (!u.contains(x)) throw InvalidInput("mask out of range for universe");
  std::vector<SubsetMask> v;
  for (unsigned rest = x; rest; rest &= rest - 1) v.push_back(static_cast<SubsetMask>(x & ~(rest & -rest)));
  return Antichain::from_sorted_unchecked(u, detail::max_sets(std::move(v)));
}

inline DownsetVector to_downset(const Antichain& a) {
  DownsetVector d;
  for (SubsetMask m : a) {
    // Walk all submasks of m.
    unsigned sub = m;
    while (true) {
      d.set(sub);
      if (sub == 0) break;
      sub = (sub - 1) & m;
    }
  }
  return d;
}

/// Maximal elements of a downward-closed family.
inline Antichain from_downset(Universe u, const DownsetVector& d) {
  if (!d.subset_of(DownsetVector::full(u.size()))) throw InvalidInput("downset has bits outside the universe");
  if (d.down_closure(u.size()) != d) throw InvalidInput("vector is not downward closed");
  std::vector<SubsetMask> v;
  d.maximal(u.size()).for_each([&](unsigned m) { v.push_back(static_cast<SubsetMask>(m)); });
  std::reverse(v.begin(), v.end());
  return Antichain::from_sorted_unchecked(u, std::move(v));
}

/// Maximal elements of an arbitrary family of masks.
inline Antichain max_of(Universe u, const MaskSet& family) {
  std::vector<SubsetMask> v;
  family.maximal(u.size()).for_each([&](unsigned m) { v.push_back(static_cast<SubsetMask>(m)); });
  std::reverse(v.begin(), v.end());
  return Antichain::from_sorted_unchecked(u, std::move(v));
}

/// alpha^- : join of X^- over the members.
inline Antichain lower(const Antichain& a) {
  const int n = a.universe().size();
  MaskSet members;
  for (SubsetMask m : a) members.set(m);
  MaskSet below;
  for (int j = 0; j < n; ++j) below |= members.shift_down(j);
  return max_of(a.universe(), below);
}

/// alpha^+ : all X whose immediate subsets are all dominated by alpha.
inline Antichain upper(const Antichain& a) {
  const Universe u = a.universe();
  const DownsetVector d = to_downset(a);
  std::vector<SubsetMask> v;
  for (unsigned x = 0; x < u.subset_count(); ++x) {
    bool ok = true;
    for (unsigned rest = x; rest && ok; rest &= rest - 1) ok = d.test(x & ~(rest & -rest));
    if (ok) v.push_back(static_cast<SubsetMask>(x));
  }
  return Antichain::from_sorted_unchecked(u, detail::max_sets(std::move(v)));
}

/// Largest antichain dominating no member of chi.
///
/// check({A}) = {N \ {a} : a in A}, check(a v b) = check(a) ^ check(b), check(bottom) = top.
inline Antichain check_nondominating(const Antichain& chi) {
  const Universe u = chi.universe();
  Antichain result = Antichain::top(u);
  for (SubsetMask x : chi) {
    std::vector<SubsetMask> v;
    for (unsigned rest = x; rest; rest &= rest - 1) v.push_back(static_cast<SubsetMask>(u.all() & ~(rest & -rest)));
    result = meet(result, Antichain::from_sorted_unchecked(u, detail::max_sets(std::move(v))));
  }
  return result;
}

/// The lattice homomorphism chi -> alpha v (chi ^ beta) onto [alpha, beta].
inline Antichain interval_hom(const Antichain& alpha, const Antichain& beta, const Antichain& chi) {
  if (!leq(alpha, beta)) throw PreconditionError("interval_hom needs alpha <= beta");
  return join(alpha, meet(chi, beta));
}

/// Order-reversing involution: X is in the dual's downset iff N \ X is not in a's.
inline Antichain dual(const Antichain& a) {
  const Universe u = a.universe();
  const DownsetVector d = to_downset(a);
  DownsetVector r;
  for (unsigned x = 0; x < u.subset_count(); ++x)
    if (!d.test(u.all() & ~x)) r.set(x);
  return from_downset(u, r);
}

/// Applies the relabeling element i+1 -> perm[i]+1 to every member.
inline Antichain relabel(const Antichain& a, std::span<const int> perm) {
  const Universe u = a.universe();
  if (perm.size() != static_cast<std::size_t>(u.size())) throw InvalidInput("permutation length differs from universe size");
  std::vector<SubsetMask> v;
  for (SubsetMask m : a) {
    unsigned img = 0;
    for (int i = 0; i < u.size(); ++i)
      if (m >> i & 1u) img |= 1u << perm[static_cast<std::size_t>(i)];
    v.push_back(static_cast<SubsetMask>(img));
  }
  return Antichain::from_sorted_unchecked(u, detail::max_sets(std::move(v)));
}

/// Transposition sequence of Heap's algorithm: applying the swaps in order visits
/// every relabeling of an n-element universe exactly once after the identity.
inline const std::vector<std::pair<int, int>>& heap_swaps(int n) {
  static std::array<std::vector<std::pair<int, int>>, max_universe + 1> cache;
  static std::once_flag once;
  std::call_once(once, [] {
    for (int k = 0; k <= max_universe; ++k) {
      std::vector<int> c(static_cast<std::size_t>(k), 0);
      auto& out = cache[static_cast<std::size_t>(k)];
      int i = 1;
      while (i < k) {
        if (c[static_cast<std::size_t>(i)] < i) {
          out.emplace_back(i % 2 == 0 ? 0 : c[static_cast<std::size_t>(i)], i);
          ++c[static_cast<std::size_t>(i)];
          i = 1;
        } else {
          c[static_cast<std::size_t>(i)] = 0;
          ++i;
        }
      }
    }
  });
  return cache[static_cast<std::size_t>(n)];
}

inline std::uint64_t factorial_u64(int n) {
  std::uint64_t f = 1;
  for (int i = 2; i <= n; ++i) f *= static_cast<std::uint64_t>(i);
  return f;
}

/// Calls f(image) for every relabeling of a mask family, identity first.
template <std::size_t W, class F>
void for_each_relabeling(const BasicMaskSet<W>& s, int n, F&& f) {
  BasicMaskSet<W> cur = s;
  f(static_cast<const BasicMaskSet<W>&>(cur));
  for (auto [i, j] : heap_swaps(n)) {
    cur = cur.swap_elements(i, j);
    f(static_cast<const BasicMaskSet<W>&>(cur));
  }
}

/// Smallest image of a mask family under all relabelings, with its orbit size.
template <std::size_t W>
std::pair<BasicMaskSet<W>, std::uint64_t> canonical_family(const BasicMaskSet<W>& s, int n) {
  BasicMaskSet<W> best = s;
  std::uint64_t stabilizer = 0;
  for_each_relabeling(s, n, [&](const BasicMaskSet<W>& img) {
    if (img < best) best = img;
    if (img == s) ++stabilizer;
  });
  return {best, factorial_u64(n) / stabilizer};
}

/// Representative with the numerically smallest downset over all n! relabelings.
inline CanonicalForm canonicalize(const Antichain& a) {
  const Universe u = a.universe();
  if (u.size() > 7) throw UnsupportedSize("canonicalize supports universes of size at most 7");
  auto [best, orbit] = canonical_family(to_downset(a), u.size());
  return {from_downset(u, best), orbit};
}

// --- text grammar ---------------------------------------------------------

/// Renders "{{1,2},{3}}"; members appear in increasing mask order.
inline std::string format(const Antichain& a) {
  std::string s = "{";
  bool first = true;
  for (auto it = a.sets().rbegin(); it != a.sets().rend(); ++it) {
    if (!first) s += ',';
    first = false;
    s += '{';
    bool first_elem = true;
    for (int i = 0; i < a.universe().size(); ++i) {
      if (!(*it >> i & 1u)) continue;
      if (!first_elem) s += ',';
      first_elem = false;
      s += std::to_string(i + 1);
    }
    s += '}';
  }
  return s + "}";
}

inline std::string format_set(SubsetMask m, int n) {
  std::string s = "{";
  for (int i = 0; i < n; ++i)
    if (m >> i & 1u) s += (s.size() > 1 ? "," : "") + std::to_string(i + 1);
  return s + "}";
}

namespace detail {

class Parser {
public:
  Parser(std::string_view text, Universe u) : t_(text), u_(u) {}

  std::vector<SubsetMask> antichain() {
    std::vector<SubsetMask> sets;
    expect('{');
    if (peek() == '}') {
      get();
    } else {
      while (true) {
        sets.push_back(set());
        char c = get();
        if (c == '}') break;
        if (c != ',') fail("expected ',' or '}'");
      }
    }
    if (peek() != '\0') fail("trailing characters");
    return sets;
  }

private:
  SubsetMask set() {
    expect('{');
    unsigned m = 0;
    if (peek() == '}') {
      get();
      return 0;
    }
    while (true) {
      int e = integer();
      if (e < 1 || e > u_.size())
        fail("element " + std::to_string(e) + " outside 1.." + std::to_string(u_.size()));
      m |= 1u << (e - 1);
      char c = get();
      if (c == '}') break;
      if (c != ',') fail("expected ',' or '}' inside set");
    }
    return static_cast<SubsetMask>(m);
  }

  int integer() {
    skip();
    if (pos_ >= t_.size() || !std::isdigit(static_cast<unsigned char>(t_[pos_]))) fail("expected an element number");
    int v = 0;
    while (pos_ < t_.size() && std::isdigit(static_cast<unsigned char>(t_[pos_]))) {
      v = v * 10 + (t_[pos_++] - '0');
      if (v > 1000) fail("element number too large");
    }
    return v;
  }

  void skip() {
    while (pos_ < t_.size() && std::isspace(static_cast<unsigned char>(t_[pos_]))) ++pos_;
  }
  char peek() {
    skip();
    return pos_ < t_.size() ? t_[pos_] : '\0';
  }
  char get() {
    char c = peek();
    if (c == '\0') fail("unexpected end of input");
    ++pos_;
    return c;
  }
  void expect(char c) {
    if (get() != c) fail(std::string("expected '") + c + "'");
  }
  [[noreturn]] void fail(const std::string& why) {
    throw InvalidInput("cannot parse antichain '" + std::string(t_) + "' at offset " + std::to_string(pos_) + ": " + why);
  }

  std::string_view t_;
  Universe u_;
  std::size_t pos_ = 0;
};

}  // namespace detail

/// Parses the brace grammar. Without `normalize_input`, comparable members are rejected.
inline Antichain parse_antichain(std::string_view text, Universe u, bool normalize_input = false) {
  auto sets = detail::Parser(text, u).antichain();
  return normalize_input ? normalize(u, sets) : make_antichain(u, sets);
}

// --- enumeration of a whole lattice ----------------------------------------

/// All downsets of A_n (one per antichain), in increasing numeric order.
///
/// Built from the split on the last element: a downset is a pair D1 <= D0 of
/// downsets over n-1 elements, laid out as D0 in the low half and D1 in the high half.
template <std::size_t W>
std::vector<BasicMaskSet<W>> all_downsets_of_width(int n) {
  if (n < 0 || static_cast<std::size_t>(blocks_for(n)) > W) throw UnsupportedSize("downsets do not fit the mask width");
  using Set = BasicMaskSet<W>;
  std::vector<Set> cur = {Set{}, Set::from_word(1)};
  for (int k = 1; k <= n; ++k) {
    std::vector<Set> next;
    for (const auto& hi : cur) {
      const Set lifted = hi.shift_up(k - 1);
      for (const auto& lo : cur)
        if (hi.subset_of(lo)) next.push_back(lo | lifted);
    }
    std::sort(next.begin(), next.end());
    cur = std::move(next);
  }
  return cur;
}

inline std::vector<DownsetVector> all_downsets(Universe u) { return all_downsets_of_width<4>(u.size()); }

inline std::vector<Antichain> all_antichains(Universe u) {
  std::vector<Antichain> out;
  for (const auto& d : all_downsets(u)) out.push_back(from_downset(u, d));
  return out;
}

}  // namespace antichain
