#pragma once

#include "antichain/lattice.hpp"

#include <algorithm>
#include <numeric>
#include <optional>
#include <utility>
#include <vector>

namespace antichain {

/// [bottom, top] with bottom <= top, or the explicit empty interval.
class Interval {
public:
  Interval(Antichain bottom, Antichain top) : bottom_(std::move(bottom)), top_(std::move(top)) {
    if (!leq(bottom_, top_)) throw PreconditionError("interval bottom " + format(bottom_) + " is not below top " + format(top_));
  }

  /// [bottom, top] when bottom <= top, nothing otherwise.
  static std::optional<Interval> make(Antichain bottom, Antichain top) {
    if (!leq(bottom, top)) return std::nullopt;
    return Interval(std::move(bottom), std::move(top));
  }

  /// Contains no antichain. Only used as a placeholder in partitions.
  static Interval empty(Universe u) {
    Interval iv(Antichain::bottom(u), Antichain::bottom(u));
    iv.empty_ = true;
    return iv;
  }

  /// [bottom, top] of the whole lattice.
  static Interval full(Universe u) { return Interval(Antichain::bottom(u), Antichain::top(u)); }

  const Antichain& bottom() const { return bottom_; }
  const Antichain& top() const { return top_; }
  Universe universe() const { return top_.universe(); }
  bool is_empty() const { return empty_; }

  bool contains(const Antichain& x) const { return !empty_ && leq(bottom_, x) && leq(x, top_); }

  friend bool operator==(const Interval&, const Interval&) = default;

private:
  Antichain bottom_, top_;
  bool empty_ = false;
};

inline std::string format(const Interval& iv) {
  if (iv.is_empty()) return "empty";
  return format(iv.bottom()) + " ; " + format(iv.top());
}

/// Family of subsets ordered by inclusion, convex when it underlies an interval.
class IntervalPoset {
public:
  IntervalPoset() = default;
  IntervalPoset(Universe u, MaskSet members) : u_(u), members_(members) {
    if (!members_.subset_of(MaskSet::full(u.size()))) throw InvalidInput("poset member outside universe");
  }
  IntervalPoset(Universe u, std::initializer_list<SubsetMask> members) : u_(u) {
    for (SubsetMask m : members) {
      if (!u.contains(m)) throw InvalidInput("poset member outside universe");
      members_.set(m);
    }
  }

  Universe universe() const { return u_; }
  const MaskSet& members() const { return members_; }
  int size() const { return members_.count(); }
  bool empty() const { return members_.none(); }
  bool contains(SubsetMask m) const { return members_.test(m); }

  std::vector<SubsetMask> list() const {
    std::vector<SubsetMask> v;
    members_.for_each([&](unsigned m) { v.push_back(static_cast<SubsetMask>(m)); });
    return v;
  }

  friend bool operator==(const IntervalPoset&, const IntervalPoset&) = default;

private:
  Universe u_;
  MaskSet members_;
};

/// Vertices are the members of top; an edge joins A and B when {A & B} is not below bottom.
struct IntervalGraph {
  std::vector<SubsetMask> vertices;
  std::vector<std::pair<std::size_t, std::size_t>> edges;  // i < j
};

/// {X : {X} <= top, {X} not <= bottom}.
inline IntervalPoset poset_of_interval(const Interval& iv) {
  if (iv.is_empty()) return IntervalPoset(iv.universe(), MaskSet{});
  return IntervalPoset(iv.universe(), to_downset(iv.top()) - to_downset(iv.bottom()));
}

/// Convexity: A1 <= X <= A2 with A1, A2 in S forces X in S.
inline bool is_interval_poset(Universe u, const MaskSet& s) {
  const int n = u.size();
  return (s.up_closure(n) & s.down_closure(n)) == s;
}

inline bool is_interval_poset(const IntervalPoset& s) { return is_interval_poset(s.universe(), s.members()); }

/// The interval spanned by a convex family: [join of max(X^- \ S), join of {X}].
///
/// The empty family maps to [bottom, bottom].
inline Interval interval_of_poset(const IntervalPoset& s) {
  const Universe u = s.universe();
  if (!is_interval_poset(s)) throw PreconditionError("family is not convex, so it underlies no interval");
  if (s.empty()) return Interval(Antichain::bottom(u), Antichain::bottom(u));
  MaskSet floor;
  for (int j = 0; j < u.size(); ++j) floor |= s.members().shift_down(j);
  floor -= s.members();
  return Interval(max_of(u, floor), max_of(u, s.members()));
}

/// Union of two posets with no comparable cross pair.
inline IntervalPoset poset_disjoint_union(const IntervalPoset& a, const IntervalPoset& b) {
  if (a.universe() != b.universe()) throw UniverseMismatch("posets over different universes");
  const int n = a.universe().size();
  const MaskSet& x = a.members();
  const MaskSet& y = b.members();
  if ((x.up_closure(n) | x.down_closure(n)).intersects(y))
    throw PreconditionError("posets contain comparable members, the union is not a direct join");
  return IntervalPoset(a.universe(), x | y);
}

/// {X \ A : X in S} for S whose members all contain A.
inline IntervalPoset reduce_common_subset(const IntervalPoset& s, SubsetMask a) {
  MaskSet out;
  bool ok = true;
  s.members().for_each([&](unsigned x) {
    if ((x & a) != a) ok = false;
    out.set(x & ~static_cast<unsigned>(a));
  });
  if (!ok) throw PreconditionError("not every member contains " + format_set(a, s.universe().size()));
  return IntervalPoset(s.universe(), out);
}

/// Collapses a block A that members either contain fully or avoid, keeping element a.
inline IntervalPoset merge_block(const IntervalPoset& s, SubsetMask block, int element) {
  const unsigned a_bit = 1u << (element - 1);
  if (element < 1 || element > s.universe().size() || !(block & a_bit))
    throw PreconditionError("element " + std::to_string(element) + " is not in the block");
  MaskSet out;
  bool ok = true;
  s.members().for_each([&](unsigned x) {
    const unsigned hit = x & block;
    if (hit && hit != block) ok = false;
    out.set(hit ? ((x & ~static_cast<unsigned>(block)) | a_bit) : x);
  });
  if (!ok) throw PreconditionError("a member meets the block without containing it");
  return IntervalPoset(s.universe(), out);
}

/// [bottom \ top, top \ bottom] as member-list differences; the poset is unchanged.
inline Interval strip_common(const Interval& iv) {
  if (iv.is_empty()) return iv;
  std::vector<SubsetMask> b, t;
  for (SubsetMask m : iv.bottom())
    if (!iv.top().contains(m)) b.push_back(m);
  for (SubsetMask m : iv.top())
    if (!iv.bottom().contains(m)) t.push_back(m);
  const Universe u = iv.universe();
  return Interval(Antichain::from_sorted_unchecked(u, std::move(b)), Antichain::from_sorted_unchecked(u, std::move(t)));
}

/// Builds beta = {A} x chi and alpha = ({A} x chi') v (A^- x chi); returns ([alpha, beta], [chi', chi]).
inline std::pair<Interval, Interval> reduce_product_interval(SubsetMask a, const Antichain& chi_lo, const Antichain& chi_hi) {
  const Universe u = chi_hi.universe();
  if (a == 0) throw PreconditionError("the product reduction needs a nonempty set A");
  if (!u.contains(a)) throw InvalidInput("mask out of range for universe");
  if (!leq(chi_lo, chi_hi)) throw PreconditionError("chi' is not below chi");
  if (span(chi_hi) & a) throw PreconditionError("A intersects the span of chi");
  const Antichain single = Antichain::from_sorted_unchecked(u, {a});
  Antichain beta = direct_product(single, chi_hi);
  Antichain alpha = join(direct_product(single, chi_lo), direct_product(immediate_subsets(u, a), chi_hi));
  return {Interval(std::move(alpha), std::move(beta)), Interval(chi_lo, chi_hi)};
}

inline IntervalGraph interval_graph(const Interval& iv) {
  IntervalGraph g;
  if (iv.is_empty()) return g;
  const DownsetVector below = to_downset(iv.bottom());
  g.vertices.assign(iv.top().begin(), iv.top().end());
  for (std::size_t i = 0; i < g.vertices.size(); ++i)
    for (std::size_t j = i + 1; j < g.vertices.size(); ++j)
      if (!below.test(g.vertices[i] & g.vertices[j])) g.edges.emplace_back(i, j);
  return g;
}

/// Connected components of the vertex set, each as a list of members, ordered by smallest mask.
inline std::vector<std::vector<SubsetMask>> graph_components(const IntervalGraph& g) {
  std::vector<std::size_t> parent(g.vertices.size());
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (auto [i, j] : g.edges) parent[find(i)] = find(j);

  std::vector<std::vector<SubsetMask>> comps;
  std::vector<std::size_t> root_of_comp;
  for (std::size_t v = 0; v < g.vertices.size(); ++v) {
    const std::size_t r = find(v);
    auto it = std::find(root_of_comp.begin(), root_of_comp.end(), r);
    if (it == root_of_comp.end()) {
      root_of_comp.push_back(r);
      comps.emplace_back();
      it = root_of_comp.end() - 1;
    }
    comps[static_cast<std::size_t>(it - root_of_comp.begin())].push_back(g.vertices[v]);
  }
  for (auto& c : comps) std::sort(c.begin(), c.end(), std::greater<>{});
  std::sort(comps.begin(), comps.end(), [](const auto& x, const auto& y) { return x.back() < y.back(); });
  return comps;
}

/// One interval [bottom ^ nu, nu] per connected component nu of the interval graph.
///
/// The returned intervals form a direct join equal to iv, so their sizes multiply.
inline std::vector<Interval> graph_decompose(const Interval& iv) {
  if (iv.is_empty()) return {iv};
  const Universe u = iv.universe();
  std::vector<Interval> out;
  for (auto& comp : graph_components(interval_graph(iv))) {
    Antichain nu = Antichain::from_sorted_unchecked(u, std::move(comp));
    Antichain lo = meet(iv.bottom(), nu);
    out.emplace_back(std::move(lo), std::move(nu));
  }
  return out;
}

}  // namespace antichain
