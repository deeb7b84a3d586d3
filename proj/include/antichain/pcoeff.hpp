#pragma once

#include "antichain/interval_size.hpp"

#include <atomic>
#include <functional>
#include <map>
#include <mutex>
#include <thread>
#include <vector>

#if __has_include(<sys/mman.h>)
#include <sys/mman.h>
#endif

namespace antichain {

/// chi split along the coordinates n1: coords[P] = max{X \ n1 : X in chi, P subset of X}.
///
/// The coordinate antichains live in the same universe and avoid n1.
struct CoordinateDecomposition {
  Universe universe;
  SubsetMask n1 = 0;
  std::map<SubsetMask, Antichain> coords;
};

inline CoordinateDecomposition decompose(const Antichain& chi, SubsetMask n1) {
  const Universe u = chi.universe();
  if (!u.contains(n1) || n1 == u.all()) throw PreconditionError("the projected coordinates must be a proper subset");
  CoordinateDecomposition d{u, n1, {}};
  for (unsigned p = n1;; p = (p - 1) & n1) {
    std::vector<SubsetMask> v;
    for (SubsetMask x : chi)
      if ((x & p) == p) v.push_back(static_cast<SubsetMask>(x & ~n1));
    d.coords.emplace(static_cast<SubsetMask>(p), normalize(u, v));
    if (p == 0) break;
  }
  return d;
}

/// Join over P of {P} x coords[P].
inline Antichain recompose(const CoordinateDecomposition& d) {
  std::vector<SubsetMask> v;
  for (const auto& [p, a] : d.coords) {
    if ((p & ~d.n1) != 0) throw InvalidInput("coordinate key outside the projected set");
    if (span(a) & d.n1) throw InvalidInput("coordinate antichain meets the projected set");
    for (SubsetMask y : a) v.push_back(static_cast<SubsetMask>(y | p));
  }
  return normalize(d.universe, v);
}

/// Count of order-reversing families (chi_P : P subset of K), |K| = k, over A_n with
/// chi_{} = rho2, chi_K = rho1, meet of the chi_{K\{i}} = rho1 and join of the chi_{{i}} = rho2.
struct PCoeffQuery {
  int n = 0;
  int k = 0;
  Antichain rho1, rho2;
};

/// Upper bound on the number of families the brute force may visit.
inline constexpr double pcoeff_brute_limit = 5e7;

inline BigCount pcoeff_bruteforce(const PCoeffQuery& q) {
  const Universe u(q.n);
  detail::check_same(q.rho1, q.rho2);
  if (q.rho1.universe() != u) throw UniverseMismatch("antichains are not over the query universe");
  if (q.k < 0 || q.k > 5) throw UnsupportedSize("brute force supports k <= 5");
  if (q.k == 0) return q.rho1 == q.rho2 ? 1 : 0;

  const MaskSet lo = to_downset(q.rho1), hi = to_downset(q.rho2);
  // chi_K <= chi_P <= chi_{} puts every coordinate in [rho1, rho2]; nothing else is assumed.
  if (!lo.subset_of(hi)) return 0;
  std::vector<MaskSet> cands;
  for_each_downset_in<4>(Interval(q.rho1, q.rho2), [&](const MaskSet& d) { cands.push_back(d); });

  const unsigned full = (1u << q.k) - 1;
  std::vector<unsigned> order;  // the free coordinates, by size so subsets come first
  for (int size = 1; size < q.k; ++size)
    for (unsigned p = 1; p < full; ++p)
      if (std::popcount(p) == size) order.push_back(p);
  double visits = 1;
  for (std::size_t i = 0; i < order.size(); ++i) visits *= static_cast<double>(cands.size());
  if (visits > pcoeff_brute_limit) throw UnsupportedSize("P-coefficient brute force is too large for this query");

  std::vector<MaskSet> value(std::size_t{1} << q.k);
  value[0] = hi;
  value[full] = lo;
  BigCount count = 0;
  auto finish = [&] {
    MaskSet meet_all = MaskSet::full(q.n), join_all;
    for (int i = 0; i < q.k; ++i) {
      meet_all &= value[full & ~(1u << i)];
      join_all |= value[1u << i];
    }
    if (meet_all == lo && join_all == hi) ++count;
  };
  auto rec = [&](auto& self, std::size_t idx) -> void {
    if (idx == order.size()) {
      finish();
      return;
    }
    const unsigned p = order[idx];
    for (const auto& c : cands) {
      bool ok = true;
      // Proper nonempty subsets were assigned earlier and must sit above.
      for (unsigned s = (p - 1) & p; s && ok; s = (s - 1) & p) ok = c.subset_of(value[s]);
      if (!ok) continue;
      value[p] = c;
      self(self, idx + 1);
    }
  };
  rec(rec, 0);
  return count;
}

namespace detail {

/// Components of the graph on the members of rho2 outside down, joined when their intersection is outside down.
template <class Down>
int free_components(const std::vector<SubsetMask>& members, const std::vector<SubsetMask>& meets, Down in_down) {
  const std::size_t r = members.size();
  std::uint32_t remaining = 0;
  for (std::size_t i = 0; i < r; ++i)
    if (!in_down(members[i])) remaining |= 1u << i;
  int comps = 0;
  while (remaining) {
    std::uint32_t frontier = remaining & (~remaining + 1);
    remaining &= ~frontier;
    ++comps;
    while (frontier) {
      const int v = std::countr_zero(frontier);
      frontier &= frontier - 1;
      for (std::uint32_t rest = remaining; rest; rest &= rest - 1) {
        const int j = std::countr_zero(rest);
        if (!in_down(meets[static_cast<std::size_t>(v) * r + static_cast<std::size_t>(j)])) {
          remaining &= ~(1u << j);
          frontier |= 1u << j;
        }
      }
    }
  }
  return comps;
}

inline std::vector<SubsetMask> pairwise_meets(const std::vector<SubsetMask>& members) {
  const std::size_t r = members.size();
  std::vector<SubsetMask> m(r * r);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j) m[i * r + j] = static_cast<SubsetMask>(members[i] & members[j]);
  return m;
}

}  // namespace detail

/// 2^c for k = 2, c the number of free components of [rho1, rho2]; 0 unless rho1 <= rho2.
inline BigCount pcoeff_k2(const Antichain& rho1, const Antichain& rho2) {
  detail::check_same(rho1, rho2);
  if (!leq(rho1, rho2)) return 0;
  const MaskSet down = to_downset(rho1);
  const std::vector<SubsetMask> members(rho2.begin(), rho2.end());
  if (members.size() > 32) throw UnsupportedSize("too many members for the component count");
  const int c = detail::free_components(members, detail::pairwise_meets(members), [&](SubsetMask x) { return down.test(x); });
  return pow2(static_cast<unsigned>(c));
}

/// Number of free components of [rho1, rho2], the exponent behind pcoeff_k2.
inline int pcoeff_k2_components(const Antichain& rho1, const Antichain& rho2) {
  if (!leq(rho1, rho2)) throw PreconditionError("rho1 is not below rho2");
  const MaskSet down = to_downset(rho1);
  const std::vector<SubsetMask> members(rho2.begin(), rho2.end());
  return detail::free_components(members, detail::pairwise_meets(members), [&](SubsetMask x) { return down.test(x); });
}

struct PCoeffOptions {
  unsigned threads = 1;
  /// Sum over one beta per relabeling class, weighted by the class size.
  bool use_symmetry = true;
  /// Called with (units done, units total); calls are serialized.
  std::function<void(std::size_t, std::size_t)> progress;
};

namespace detail {

/// Open-addressing map from a downset word (n <= 6) to |[bottom, alpha]|.
class LowerSizeTable {
public:
  explicit LowerSizeTable(std::size_t entries) {
    std::size_t cap = 16;
    while (cap < 2 * entries + 1) cap <<= 1;
    slots_.assign(cap, Slot{});
    shift_ = 64 - std::countr_zero(cap);
#ifdef MADV_HUGEPAGE
    madvise(slots_.data(), cap * sizeof(Slot), MADV_HUGEPAGE);
#endif
  }

  /// Inserts key if absent. Values are never zero.
  bool insert(std::uint64_t key, std::uint64_t value) {
    for (std::size_t i = home(key);; i = (i + 1) & (slots_.size() - 1)) {
      if (slots_[i].value == 0) {
        slots_[i] = {key, value};
        ++size_;
        return true;
      }
      if (slots_[i].key == key) return false;
    }
  }

  /// Zero when absent.
  std::uint64_t find(std::uint64_t key) const {
    for (std::size_t i = home(key);; i = (i + 1) & (slots_.size() - 1)) {
      if (slots_[i].value == 0 || slots_[i].key == key) return slots_[i].value;
    }
  }

  void prefetch(std::uint64_t key) const { __builtin_prefetch(&slots_[home(key)]); }

  std::size_t size() const { return size_; }

private:
  struct Slot {
    std::uint64_t key = 0;
    std::uint64_t value = 0;
  };
  std::size_t home(std::uint64_t key) const { return static_cast<std::size_t>((key * 0x9E3779B97F4A7C15ull) >> shift_); }

  std::vector<Slot> slots_;
  int shift_ = 0;
  std::size_t size_ = 0;
};

struct BetaUnit {
  std::uint64_t downset;
  std::uint64_t weight;
};

/// Downset of dual(beta): { N \ X : X not in down(beta) }.
inline std::uint64_t dual_downset_word(std::uint64_t d, int n) {
  const unsigned bits = 1u << n;
  std::uint64_t out = 0;
  for (unsigned x = 0; x < bits; ++x)
    if (!((d >> x) & 1)) out |= std::uint64_t{1} << ((bits - 1) ^ x);
  return out;
}

/// Fills |[bottom, alpha]| for every alpha of A_n and returns the beta work units.
inline std::vector<BetaUnit> prepare_units(int n, const std::vector<BasicMaskSet<1>>& downsets, bool symmetry,
                                           LowerSizeTable& table) {
  using Set = BasicMaskSet<1>;
  const std::uint64_t group = factorial_u64(n);
  std::vector<BetaUnit> units;
  // Increasing order means the first member met of each relabeling class is its smallest one.
  for (const Set& d : downsets) {
    const std::uint64_t w = d.word(0);
    if (table.find(w)) continue;
    const Wide size = leveled_size<1>(n, d, cheaper_parity<1>(n, d));
    std::uint64_t stabilizer = 0;
    for_each_relabeling(d, n, [&](const Set& img) {
      table.insert(img.word(0), static_cast<std::uint64_t>(size));
      if (img == d) ++stabilizer;
    });
    if (symmetry) units.push_back({w, group / stabilizer});
  }
  if (!symmetry)
    for (const Set& d : downsets) units.push_back({d.word(0), 1});
  return units;
}

/// Free components of [alpha, beta] for a fixed beta (n <= 6), from alpha's downset word.
///
/// Two members of beta are joined exactly when some set outside down(alpha) lies in both, and
/// it is enough to look at the minimal such sets. Each one links every member containing it.
class ComponentCounter {
public:
  ComponentCounter(int n, std::uint64_t beta_down) : n_(n), beta_(beta_down) {
    const Antichain beta = from_downset(Universe(n), BasicMaskSet<1>::from_word(beta_down).resized<4>());
    std::size_t i = 0;
    for (SubsetMask m : beta) {
      for (unsigned x = 0; x < (1u << n); ++x)
        if ((x & ~static_cast<unsigned>(m)) == 0) cover_[x] |= 1u << i;
      ++i;
    }
  }

  int operator()(std::uint64_t alpha_down) const {
    // down(beta) minus down(alpha) is convex, so a member is minimal when no immediate subset is present.
    const BasicMaskSet<1> outside = BasicMaskSet<1>::from_word(beta_ & ~alpha_down);
    BasicMaskSet<1> covered;
    for (int j = 0; j < n_; ++j) covered |= outside.shift_up(j);
    std::uint64_t minimal = (outside - covered).word(0);
    std::uint32_t comp[32];
    int k = 0;
    for (; minimal; minimal &= minimal - 1) {
      std::uint32_t h = cover_[std::countr_zero(minimal)];
      int w = 0;
      for (int i = 0; i < k; ++i) {
        if (comp[i] & h) h |= comp[i];
        else comp[w++] = comp[i];
      }
      comp[w++] = h;
      k = w;
    }
    return k;
  }

private:
  int n_;
  std::uint64_t beta_;
  std::uint32_t cover_[64] = {};
};

/// sum over alpha in [bottom, beta] of |[bottom, alpha]| * 2^c(alpha, beta).
inline Wide beta_block(int n, std::uint64_t beta_down, const LowerSizeTable& table) {
  using Set = BasicMaskSet<1>;
  const ComponentCounter components(n, beta_down);
  Wide sum = 0;
  // Table lookups are batched so their cache misses overlap.
  constexpr int batch = 32;
  std::uint64_t keys[batch];
  int shifts[batch];
  int pending = 0;
  auto flush = [&] {
    for (int i = 0; i < pending; ++i) sum += static_cast<Wide>(table.find(keys[i])) << shifts[i];
    pending = 0;
  };
  auto visit = [&](const Set& alpha) {
    const std::uint64_t a = alpha.word(0);
    table.prefetch(a);
    keys[pending] = a;
    shifts[pending] = components(a);
    if (++pending == batch) flush();
  };
  if (beta_down == 0) {
    visit(Set{});
  } else {
    const Set poset = Set::from_word(beta_down);
    const Levels<1> L = make_levels<1>(n, poset);
    IntervalWalker<1, decltype(visit)>(L, Set{}, visit).run();
  }
  flush();
  return sum;
}

inline BigCount dedekind_k2(int n, const PCoeffOptions& opt) {
  std::vector<BetaUnit> units;
  LowerSizeTable table(0);
  {
    const auto downsets = all_downsets_of_width<1>(n);
    table = LowerSizeTable(downsets.size());
    units = prepare_units(n, downsets, opt.use_symmetry, table);
  }

  std::atomic<std::size_t> next{0};
  std::mutex report;
  std::size_t done = 0;
  const unsigned threads = std::max(1u, opt.threads);
  std::vector<Wide> partial(threads, 0);
  auto worker = [&](unsigned t) {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= units.size()) return;
      const BetaUnit& unit = units[i];
      const Wide block = beta_block(n, unit.downset, table);
      const Wide upper = table.find(dual_downset_word(unit.downset, n));
      partial[t] += block * upper * unit.weight;
      if (opt.progress) {
        std::lock_guard lock(report);
        opt.progress(++done, units.size());
      }
    }
  };
  if (threads == 1) {
    worker(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker, t);
    for (auto& th : pool) th.join();
  }
  BigCount total = 0;
  for (Wide p : partial) total += to_big(p);
  return total;
}

}  // namespace detail

/// |A_{n+k}| as the sum over alpha <= beta in A_n of |[bottom, alpha]| * P(alpha, beta) * |[beta, top]|.
///
/// k = 2 uses the power-of-two coefficients (n <= 6); larger k uses the brute-force coefficients.
inline BigCount dedekind_pcoeff(int n, int k, const PCoeffOptions& opt = {}) {
  if (k < 2) throw UnsupportedSize("the expansion needs at least two projected coordinates");
  if (n < 0 || n + k > max_universe) throw UnsupportedSize("n + k must stay within 8 elements");
  if (k == 2) {
    if (n > 6) throw UnsupportedSize("the k = 2 path supports n <= 6");
    return detail::dedekind_k2(n, opt);
  }
  const Universe u(n);
  const auto lattice = all_antichains(u);
  BigCount total = 0;
  std::size_t done = 0;
  for (const auto& beta : lattice) {
    const BigCount upper = interval_size(beta, Antichain::top(u));
    for (const auto& alpha : lattice) {
      if (!leq(alpha, beta)) continue;
      total += interval_size(Antichain::bottom(u), alpha) * pcoeff_bruteforce({n, k, alpha, beta}) * upper;
    }
    if (opt.progress) opt.progress(++done, lattice.size());
  }
  return total;
}

}  // namespace antichain
