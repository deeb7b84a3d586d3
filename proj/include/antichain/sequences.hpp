#pragma once

#include "antichain/interval_size.hpp"

#include <numeric>
#include <utility>
#include <vector>

namespace antichain {

/// S(n, k) by the triangular recurrence.
inline BigCount stirling2(int n, int k) {
  if (n < 0 || k < 0 || k > n) throw InvalidInput("stirling2 needs 0 <= k <= n");
  std::vector<BigCount> row(static_cast<std::size_t>(n) + 1, 0);
  row[0] = 1;
  for (int i = 1; i <= n; ++i) {
    for (int j = i; j >= 1; --j) row[j] = j * row[j] + row[j - 1];
    row[0] = 0;
  }
  return row[k];
}

inline BigCount binomial(int n, int k) {
  if (n < 0 || k < 0 || k > n) throw InvalidInput("binomial needs 0 <= k <= n");
  BigCount r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

inline BigCount factorial(int n) {
  if (n < 0) throw InvalidInput("factorial of a negative number");
  BigCount r = 1;
  for (int i = 2; i <= n; ++i) r *= i;
  return r;
}

inline BigCount multinomial(int n, const std::vector<int>& parts) {
  int total = 0;
  for (int p : parts) {
    if (p < 0) throw InvalidInput("multinomial part is negative");
    total += p;
  }
  if (total != n) throw InvalidInput("multinomial parts do not sum to n");
  BigCount r = factorial(n);
  for (int p : parts) r /= factorial(p);
  return r;
}

/// n = sum of m * k over terms (k, m), k strictly decreasing.
struct MultisetExpansion {
  std::vector<std::pair<int, int>> terms;

  friend bool operator==(const MultisetExpansion&, const MultisetExpansion&) = default;
};

/// Every integer partition of n as (part, multiplicity) terms, largest single part first.
inline std::vector<MultisetExpansion> expansions(int n) {
  if (n < 1) throw InvalidInput("expansions need n >= 1");
  std::vector<MultisetExpansion> out;
  MultisetExpansion cur;
  auto rec = [&](auto& self, int rest, int max_part) -> void {
    if (rest == 0) {
      out.push_back(cur);
      return;
    }
    for (int k = std::min(rest, max_part); k >= 1; --k)
      for (int m = rest / k; m >= 1; --m) {
        cur.terms.emplace_back(k, m);
        self(self, rest - m * k, k - 1);
        cur.terms.pop_back();
      }
  };
  rec(rec, n, n);
  return out;
}

/// Number of ways to split an n-set into blocks with these sizes and multiplicities.
inline BigCount expansion_weight(int n, const MultisetExpansion& e) {
  std::vector<int> parts;
  BigCount sym = 1;
  for (auto [k, m] : e.terms) {
    parts.insert(parts.end(), static_cast<std::size_t>(m), k);
    sym *= factorial(m);
  }
  return multinomial(n, parts) / sym;
}

namespace detail {

inline void need_rows(std::size_t have, std::size_t want) {
  if (have < want) throw InvalidInput("sequence is missing lower rows");
}

/// weight * prod c_k^m for every expansion of n except the single block n itself.
inline BigCount split_sum(int n, const std::vector<BigCount>& c) {
  BigCount s = 0;
  for (const auto& e : expansions(n)) {
    if (e.terms.size() == 1 && e.terms[0].first == n) continue;
    BigCount term = expansion_weight(n, e);
    for (auto [k, m] : e.terms) term *= pow(c[static_cast<std::size_t>(k)], static_cast<unsigned>(m));
    s += term;
  }
  return s;
}

}  // namespace detail

/// B_n = A_n - sum_{k<n} C(n,k) B_k.
inline std::vector<BigCount> b_from_a(const std::vector<BigCount>& a) {
  std::vector<BigCount> b;
  for (std::size_t n = 0; n < a.size(); ++n) {
    BigCount v = a[n];
    for (std::size_t k = 0; k < n; ++k) v -= binomial(static_cast<int>(n), static_cast<int>(k)) * b[k];
    b.push_back(v);
  }
  return b;
}

/// A_n = sum_k C(n,k) B_k.
inline std::vector<BigCount> a_from_b(const std::vector<BigCount>& b) {
  std::vector<BigCount> a;
  for (std::size_t n = 0; n < b.size(); ++n) {
    BigCount v = 0;
    for (std::size_t k = 0; k <= n; ++k) v += binomial(static_cast<int>(n), static_cast<int>(k)) * b[k];
    a.push_back(v);
  }
  return a;
}

/// D_0 = 2, D_n = B_n - sum_{k=1}^{n-1} S(n,k) D_k.
inline std::vector<BigCount> d_from_b(const std::vector<BigCount>& b) {
  std::vector<BigCount> d;
  for (std::size_t n = 0; n < b.size(); ++n) {
    if (n == 0) {
      d.push_back(2);
      continue;
    }
    BigCount v = b[n];
    // k = 0 would pair S(n,0) = 0 with D_0, so it is left out.
    for (std::size_t k = 1; k < n; ++k) v -= stirling2(static_cast<int>(n), static_cast<int>(k)) * d[k];
    d.push_back(v);
  }
  return d;
}

/// B_0 = D_0, B_n = sum_{k=1}^{n} S(n,k) D_k.
inline std::vector<BigCount> b_from_d(const std::vector<BigCount>& d) {
  std::vector<BigCount> b;
  for (std::size_t n = 0; n < d.size(); ++n) {
    if (n == 0) {
      b.push_back(d[0]);
      continue;
    }
    BigCount v = 0;
    for (std::size_t k = 1; k <= n; ++k) v += stirling2(static_cast<int>(n), static_cast<int>(k)) * d[k];
    b.push_back(v);
  }
  return b;
}

/// A_n = sum_k S(n+1, k+1) D_k.
inline std::vector<BigCount> a_from_d(const std::vector<BigCount>& d) {
  std::vector<BigCount> a;
  for (std::size_t n = 0; n < d.size(); ++n) {
    BigCount v = 0;
    for (std::size_t k = 0; k <= n; ++k) v += stirling2(static_cast<int>(n) + 1, static_cast<int>(k) + 1) * d[k];
    a.push_back(v);
  }
  return a;
}

/// C_0 = 2; C_n is B_n minus every expansion into more than one connected block.
inline std::vector<BigCount> c_from_b(const std::vector<BigCount>& b) {
  std::vector<BigCount> c;
  for (std::size_t n = 0; n < b.size(); ++n) {
    if (n == 0) {
      c.push_back(2);
      continue;
    }
    c.push_back(b[n] - detail::split_sum(static_cast<int>(n), c));
  }
  return c;
}

/// B_0 = C_0, B_n = sum over expansions of n of weight * prod C_k^m.
inline std::vector<BigCount> b_via_connected(const std::vector<BigCount>& c) {
  std::vector<BigCount> b;
  for (std::size_t n = 0; n < c.size(); ++n) {
    if (n == 0) {
      b.push_back(c[0]);
      continue;
    }
    b.push_back(c[n] + detail::split_sum(static_cast<int>(n), c));
  }
  return b;
}

/// Graphs on n labelled vertices without isolated vertices, by inclusion-exclusion.
inline BigCount covering_count(int n) {
  BigCount s = 0;
  for (int j = 0; j <= n; ++j) {
    const BigCount term = binomial(n, j) * pow2(static_cast<unsigned>((n - j) * (n - j - 1) / 2));
    if (j % 2) s -= term;
    else s += term;
  }
  return s;
}

/// Connected labelled graphs on 0..max_n vertices.
///
/// Coverings take the place of B_n in the connected-block recursion. A single vertex
/// has no covering edge set, so the recursion runs with 0 there; the returned list
/// reports the one-vertex graph (and the empty graph) as connected.
inline std::vector<BigCount> connected_graph_counts(int max_n) {
  if (max_n < 0) throw InvalidInput("max_n must be nonnegative");
  std::vector<BigCount> c(static_cast<std::size_t>(max_n) + 1, 0);
  for (int n = 2; n <= max_n; ++n) c[static_cast<std::size_t>(n)] = covering_count(n) - detail::split_sum(n, c);
  c[0] = 1;
  if (max_n >= 1) c[1] = 1;
  return c;
}

/// The Dedekind numbers for n = 0..8, as published.
inline const std::vector<BigCount>& known_dedekind() {
  static const std::vector<BigCount> a = {
      BigCount(2),
      BigCount(3),
      BigCount(6),
      BigCount(20),
      BigCount(168),
      BigCount(7581),
      BigCount(7828354),
      BigCount("2414682040998"),
      BigCount("56130437228687557907788"),
  };
  return a;
}

struct SequenceRow {
  BigCount a, b, c, d;
};

/// A, B, C, D for n = 0..a.size()-1, all derived from the A column.
struct SequenceTable {
  std::vector<SequenceRow> rows;

  static SequenceTable from_dedekind(const std::vector<BigCount>& a) {
    const auto b = b_from_a(a);
    const auto c = c_from_b(b);
    const auto d = d_from_b(b);
    SequenceTable t;
    for (std::size_t n = 0; n < a.size(); ++n) t.rows.push_back({a[n], b[n], c[n], d[n]});
    return t;
  }

  std::vector<BigCount> column(char which) const {
    std::vector<BigCount> v;
    for (const auto& r : rows) {
      switch (which) {
        case 'A': v.push_back(r.a); break;
        case 'B': v.push_back(r.b); break;
        case 'C': v.push_back(r.c); break;
        case 'D': v.push_back(r.d); break;
        default: throw InvalidInput(std::string("unknown column ") + which);
      }
    }
    return v;
  }

  /// Each row satisfies the three recursions.
  bool consistent() const {
    const auto a = column('A'), b = column('B'), c = column('C'), d = column('D');
    return a_from_b(b) == a && b_via_connected(c) == b && b_from_d(d) == b && a_from_d(d) == a;
  }
};

/// [{{1},...,{n}}, top].
inline Interval basic_interval(Universe u) {
  std::vector<SubsetMask> singles;
  for (int i = u.size() - 1; i >= 0; --i) singles.push_back(static_cast<SubsetMask>(1u << i));
  return Interval(Antichain::from_sorted_unchecked(u, std::move(singles)), Antichain::top(u));
}

namespace detail {

inline void check_direct(int n) {
  if (n < 0 || n > 5) throw UnsupportedSize("direct enumeration of basic intervals is limited to n <= 5");
}

/// Number of classes of elements that no member of a separates.
inline int separated_classes(const Antichain& a) {
  const int n = a.universe().size();
  std::vector<int> cls(static_cast<std::size_t>(n), -1);
  int classes = 0;
  for (int i = 0; i < n; ++i) {
    if (cls[i] >= 0) continue;
    cls[i] = classes;
    for (int j = i + 1; j < n; ++j) {
      bool together = true;
      for (SubsetMask m : a)
        if (((m >> i) & 1) != ((m >> j) & 1)) together = false;
      if (together) cls[j] = classes;
    }
    ++classes;
  }
  return classes;
}

/// Number of components of the graph joining elements that share a member.
inline int overlap_components(const Antichain& a) {
  const int n = a.universe().size();
  std::vector<int> parent(static_cast<std::size_t>(n));
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (SubsetMask m : a) {
    if (!m) continue;
    const int first = std::countr_zero(static_cast<unsigned>(m));
    for (int j = first + 1; j < n; ++j)
      if ((m >> j) & 1) parent[find(j)] = find(first);
  }
  int comps = 0;
  for (int i = 0; i < n; ++i) comps += find(i) == i;
  return comps;
}

}  // namespace detail

/// Counts of the basic interval of n by number of never-separated classes, index k = 0..n.
inline std::vector<BigCount> distinguishing_classes_direct(int n) {
  detail::check_direct(n);
  std::vector<BigCount> by_k(static_cast<std::size_t>(n) + 1, 0);
  if (n == 0) {
    by_k[0] = 2;
    return by_k;
  }
  enumerate_interval(basic_interval(Universe(n)), [&](const Antichain& a) { ++by_k[detail::separated_classes(a)]; });
  return by_k;
}

/// Elements of the basic interval that separate every pair of elements.
inline BigCount distinguishing_count_direct(int n) { return distinguishing_classes_direct(n)[static_cast<std::size_t>(n)]; }

/// Elements of the basic interval whose overlap graph on the universe is connected.
inline BigCount connected_count_direct(int n) {
  detail::check_direct(n);
  if (n == 0) return 2;
  BigCount c = 0;
  enumerate_interval(basic_interval(Universe(n)), [&](const Antichain& a) { c += detail::overlap_components(a) == 1; });
  return c;
}

}  // namespace antichain
