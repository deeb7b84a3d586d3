#include "antichain/interval_size.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

#include <random>
#include <set>
#include <thread>

using namespace antichain;

namespace {

Antichain ac(int n, const char* text) { return parse_antichain(text, Universe(n)); }

MaskSet masks(std::initializer_list<SubsetMask> ms) {
  MaskSet s;
  for (auto m : ms) s.set(m);
  return s;
}

Antichain all_pairs(int n) {
  std::vector<SubsetMask> v;
  for (unsigned m = 0; m < (1u << n); ++m)
    if (std::popcount(m) == 2) v.push_back(static_cast<SubsetMask>(m));
  return normalize(Universe(n), v);
}

// Random comparable pair, biased towards nontrivial intervals.
Interval random_interval(const std::vector<Antichain>& lattice, std::mt19937& rng) {
  std::uniform_int_distribution<std::size_t> pick(0, lattice.size() - 1);
  const Antichain& a = lattice[pick(rng)];
  const Antichain& b = lattice[pick(rng)];
  return Interval(meet(a, b), join(a, b));
}

}  // namespace

TEST(LevelSets, Examples) {
  const auto full = level_sets(Interval::full(Universe(2)));
  EXPECT_EQ(full.l0, 0);
  ASSERT_EQ(full.depth(), 3u);
  EXPECT_EQ(full.level(0), masks({0}));
  EXPECT_EQ(full.level(1), masks({1, 2}));
  EXPECT_EQ(full.level(2), masks({3}));

  const auto pairs = level_sets(Interval(ac(3, "{{}}"), all_pairs(3)));
  EXPECT_EQ(pairs.l0, 1);
  ASSERT_EQ(pairs.depth(), 2u);
  EXPECT_EQ(pairs.level(0).count(), 3);
  EXPECT_EQ(pairs.level(1).count(), 3);

  const auto small = level_sets(Interval(ac(2, "{{2}}"), ac(2, "{{1,2}}")));
  EXPECT_EQ(small.l0, 1);
  EXPECT_EQ(small.level(0), masks({0b01}));
  EXPECT_EQ(small.level(1), masks({0b11}));

  const Antichain a = ac(3, "{{1},{2,3}}");
  EXPECT_THROW(level_sets(Interval(a, a)), PreconditionError);
}

TEST(LevelSets, EveryMemberInExactlyOneLevel) {
  const auto lattice = all_antichains(Universe(4));
  for (const auto& a : lattice)
    for (const auto& b : lattice) {
      if (!leq(a, b) || a == b) continue;
      const Interval iv(a, b);
      const auto L = level_sets(iv);
      MaskSet seen;
      for (std::size_t i = 0; i < L.depth(); ++i) {
        EXPECT_FALSE(seen.intersects(L.level(i)));
        seen |= L.level(i);
        L.level(i).for_each([&](unsigned m) { EXPECT_EQ(std::popcount(m), L.l0 + static_cast<int>(i)); });
      }
      EXPECT_EQ(seen, poset_of_interval(iv).members());
    }
}

TEST(LevelOperators, Examples) {
  const auto L = level_sets(Interval::full(Universe(2)));
  EXPECT_EQ(level_up(masks({0}), 0, L), masks({1, 2}));
  EXPECT_EQ(level_up(MaskSet{}, 0, L), MaskSet{});
  EXPECT_EQ(level_up(masks({1}), 1, L), MaskSet{});
  EXPECT_EQ(level_up(masks({1, 2}), 1, L), masks({3}));
  EXPECT_EQ(level_down(masks({3}), 2, L), masks({1, 2}));
  EXPECT_EQ(level_down(masks({1}), 1, L), masks({0}));
  EXPECT_THROW(level_up(masks({1}), 0, L), PreconditionError);
  EXPECT_THROW(level_down(masks({0}), 2, L), PreconditionError);
}

TEST(LevelOperators, MatchDefinitionsOnFourElements) {
  const Interval iv(ac(4, "{{1}}"), ac(4, "{{1,2,3},{2,4},{3,4}}"));
  const auto L = level_sets(iv);
  std::mt19937 rng(3);
  for (std::size_t i = 0; i < L.depth(); ++i) {
    for (int trial = 0; trial < 50; ++trial) {
      MaskSet chi;
      L.level(i).for_each([&](unsigned m) {
        if (rng() & 1) chi.set(m);
      });
      MaskSet up, down;
      if (i + 1 < L.depth())
        L.level(i + 1).for_each([&](unsigned x) {
          bool ok = true;
          for (int j = 0; j < 4; ++j)
            if ((x >> j & 1) && L.level(i).test(x & ~(1u << j)) && !chi.test(x & ~(1u << j))) ok = false;
          if (ok) up.set(x);
        });
      if (i > 0)
        chi.for_each([&](unsigned x) {
          for (int j = 0; j < 4; ++j)
            if ((x >> j & 1) && L.level(i - 1).test(x & ~(1u << j))) down.set(x & ~(1u << j));
        });
      EXPECT_EQ(level_up(chi, i, L), up);
      EXPECT_EQ(level_down(chi, i, L), down);
    }
  }
}

TEST(SizeLeveled, Examples) {
  for (auto parity : {Parity::even, Parity::odd}) {
    EXPECT_EQ(size_leveled(Interval::full(Universe(3)), parity), 20);
    const Antichain a = ac(3, "{{1,2},{3}}");
    EXPECT_EQ(size_leveled(Interval(a, a), parity), 1);
    EXPECT_EQ(size_leveled(Interval(ac(3, "{{}}"), all_pairs(3)), parity), 18);
  }
}

TEST(SizeLeveled, PairsAboveTheEmptySetFollowTheGraphCount) {
  // Lower sets of the poset are a choice of singletons plus any set of pairs among them.
  for (int n = 2; n <= 6; ++n) {
    BigCount expected = 0;
    for (int i = 0; i <= n; ++i) expected += oracle::binom(n, i) * pow2(static_cast<unsigned>(i * (i - 1) / 2));
    const Interval iv(ac(n, "{{}}"), all_pairs(n));
    EXPECT_EQ(size_leveled(iv, Parity::even), expected) << n;
    EXPECT_EQ(size_leveled(iv, Parity::odd), expected) << n;
    if (n <= 5) {
      EXPECT_EQ(BigCount(count_by_enumeration(iv)), expected) << n;
    }
  }
}

TEST(SizeLeveled, FullLatticeBothParities) {
  const std::uint64_t dedekind[] = {2, 3, 6, 20, 168, 7581, 7828354};
  for (int n = 0; n <= 6; ++n) {
    EXPECT_EQ(size_leveled(Interval::full(Universe(n)), Parity::even), dedekind[n]) << n;
    EXPECT_EQ(size_leveled(Interval::full(Universe(n)), Parity::odd), dedekind[n]) << n;
  }
}

TEST(EnumerateInterval, Examples) {
  const Antichain a = ac(3, "{{1},{2,3}}");
  EXPECT_EQ(interval_elements(Interval(a, a)), std::vector<Antichain>{a});
  EXPECT_EQ(interval_elements(Interval::full(Universe(2))).size(), 6u);
  const auto got = interval_elements(Interval(ac(2, "{{}}"), ac(2, "{{1},{2}}")));
  const std::set<Antichain> want{ac(2, "{{}}"), ac(2, "{{1}}"), ac(2, "{{2}}"), ac(2, "{{1},{2}}")};
  EXPECT_EQ(got.size(), 4u);
  EXPECT_EQ(std::set<Antichain>(got.begin(), got.end()), want);
}

TEST(EnumerateInterval, YieldsEachElementOnce) {
  const auto lattice = all_antichains(Universe(4));
  std::mt19937 rng(17);
  for (int trial = 0; trial < 300; ++trial) {
    const Interval iv = random_interval(lattice, rng);
    const auto got = interval_elements(iv);
    std::set<Antichain> distinct(got.begin(), got.end());
    EXPECT_EQ(distinct.size(), got.size());
    std::set<Antichain> want;
    for (const auto& x : lattice)
      if (iv.contains(x)) want.insert(x);
    EXPECT_EQ(distinct, want) << format(iv);
  }
}

TEST(IntervalSize, Examples) {
  EXPECT_EQ(interval_size(ac(1, "{{1}}"), ac(1, "{{}}")), 0);
  EXPECT_EQ(interval_size(Interval::full(Universe(6))), 7828354);
  EXPECT_EQ(interval_size(Interval::empty(Universe(3))), 0);
}

TEST(IntervalSize, AllMethodsAgreeOnEveryIntervalOfFourElements) {
  const auto lattice = all_antichains(Universe(4));
  std::vector<oracle::Family> families;
  for (const auto& a : lattice) families.push_back(a.sets());
  IntervalSizer sizer;
  int pairs = 0;
  for (std::size_t i = 0; i < lattice.size(); ++i)
    for (std::size_t j = 0; j < lattice.size(); ++j) {
      if (!leq(lattice[i], lattice[j])) continue;
      const Interval iv(lattice[i], lattice[j]);
      const BigCount brute = oracle::interval_count(families, families[i], families[j]);
      ASSERT_EQ(size_leveled(iv, Parity::even), brute) << format(iv);
      ASSERT_EQ(size_leveled(iv, Parity::odd), brute) << format(iv);
      ASSERT_EQ(BigCount(count_by_enumeration(iv)), brute) << format(iv);
      ASSERT_EQ(sizer.size(iv), brute) << format(iv);
      ++pairs;
    }
  // Comparable pairs in the lattice of four elements number the Dedekind number of five.
  EXPECT_EQ(pairs, 7581);
}

TEST(IntervalSize, AllMethodsAgreeOnRandomFiveElementIntervals) {
  const auto lattice = all_antichains(Universe(5));
  std::mt19937 rng(99);
  IntervalSizer sizer;
  for (int trial = 0; trial < 10000; ++trial) {
    const Interval iv = random_interval(lattice, rng);
    const BigCount walked = count_by_enumeration(iv);
    ASSERT_EQ(size_leveled(iv, Parity::even), walked) << format(iv);
    ASSERT_EQ(size_leveled(iv, Parity::odd), walked) << format(iv);
    ASSERT_EQ(sizer.size(iv), walked) << format(iv);
  }
}

TEST(IntervalSize, FiveElementOracleSpotCheck) {
  // The walker shares the level operators with the sums, so compare against plain filtering too.
  const auto lattice = all_antichains(Universe(5));
  std::vector<oracle::Family> families;
  for (const auto& a : lattice) families.push_back(a.sets());
  std::mt19937 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    const Interval iv = random_interval(lattice, rng);
    const auto brute = oracle::interval_count(families, iv.bottom().sets(), iv.top().sets());
    ASSERT_EQ(count_by_enumeration(iv), brute) << format(iv);
  }
}

TEST(LevelDecomposition, ReconstructsEachElement) {
  const auto lattice = all_antichains(Universe(5));
  std::mt19937 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const Interval iv = random_interval(lattice, rng);
    if (iv.bottom() == iv.top()) continue;
    const auto L = level_sets(iv);
    const MaskSet floor = to_downset(iv.bottom());
    enumerate_interval(iv, [&](const Antichain& x) {
      const MaskSet d = to_downset(x);
      std::vector<MaskSet> chi(L.depth());
      MaskSet rebuilt = floor;
      for (std::size_t i = 0; i < L.depth(); ++i) {
        chi[i] = d & L.level(i);
        rebuilt |= chi[i];
        if (i > 0) {
          EXPECT_TRUE(chi[i].subset_of(level_up(chi[i - 1], i - 1, L)));
        }
      }
      EXPECT_EQ(from_downset(iv.universe(), rebuilt), x);
      // Decomposing the rebuilt element gives the same pieces.
      for (std::size_t i = 0; i < L.depth(); ++i) EXPECT_EQ(rebuilt & L.level(i), chi[i]);
    });
  }
}

TEST(Duality, UpperIntervalsMatchLowerIntervalsOfTheDual) {
  const auto l3 = all_antichains(Universe(3));
  for (const auto& b : l3) {
    const Universe u(3);
    EXPECT_EQ(count_by_enumeration(Interval(b, Antichain::top(u))),
              count_by_enumeration(Interval(Antichain::bottom(u), dual(b))))
        << format(b);
  }
  const auto l5 = all_antichains(Universe(5));
  std::mt19937 rng(4);
  std::uniform_int_distribution<std::size_t> pick(0, l5.size() - 1);
  const Universe u(5);
  for (int trial = 0; trial < 500; ++trial) {
    const Antichain& b = l5[pick(rng)];
    EXPECT_EQ(count_by_enumeration(Interval(b, Antichain::top(u))),
              count_by_enumeration(Interval(Antichain::bottom(u), dual(b))))
        << format(b);
  }
}

TEST(IntervalSizer, MemoIsConsistentAcrossThreads) {
  const auto lattice = all_antichains(Universe(5));
  std::mt19937 rng(21);
  std::vector<Interval> ivs;
  for (int i = 0; i < 2000; ++i) ivs.push_back(random_interval(lattice, rng));
  std::vector<BigCount> serial;
  for (const auto& iv : ivs) serial.push_back(count_by_enumeration(iv));

  IntervalSizer sizer;
  std::vector<BigCount> got(ivs.size());
  std::vector<std::thread> pool;
  for (int t = 0; t < 4; ++t)
    pool.emplace_back([&, t] {
      // Every thread walks all intervals, in a different order.
      for (std::size_t k = 0; k < ivs.size(); ++k) {
        const std::size_t i = (k * 7 + static_cast<std::size_t>(t) * 13) % ivs.size();
        const BigCount v = sizer.size(ivs[i]);
        if (t == 0) {
          got[i] = v;
        } else {
          EXPECT_EQ(v, serial[i]);
        }
      }
    });
  for (auto& th : pool) th.join();
  EXPECT_EQ(got, serial);
  const auto st = sizer.stats();
  EXPECT_GT(st.hits, 0u);
  EXPECT_GT(st.entries, 0u);
  sizer.clear();
  EXPECT_EQ(sizer.stats().entries, 0u);
}
