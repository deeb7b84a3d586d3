#include "antichain/lattice.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

#include <random>
#include <set>

using namespace antichain;

namespace {

Antichain ac(int n, const char* text) { return parse_antichain(text, Universe(n)); }

std::vector<Antichain> all(int n) { return all_antichains(Universe(n)); }

}  // namespace

TEST(Normalize, RemovesDominatedAndDuplicates) {
  const Universe u(2);
  EXPECT_EQ(normalize(u, {0b01, 0b11}), ac(2, "{{1,2}}"));
  EXPECT_EQ(normalize(u, {}), Antichain::bottom(u));
  EXPECT_EQ(normalize(u, {0b01, 0b10, 0b01}), ac(2, "{{1},{2}}"));
  EXPECT_THROW(normalize(u, {0b100}), InvalidInput);
}

TEST(Normalize, BottomAndEmptySetStayDistinct) {
  const Universe u(3);
  EXPECT_NE(Antichain::bottom(u), Antichain::empty_set(u));
  EXPECT_EQ(normalize(u, {0}), Antichain::empty_set(u));
  EXPECT_EQ(normalize(u, {0, 0b001}), ac(3, "{{1}}"));
}

TEST(Order, Examples) {
  EXPECT_TRUE(leq(ac(2, "{{1},{2}}"), ac(2, "{{1,2}}")));
  EXPECT_FALSE(leq(ac(2, "{{1,2}}"), ac(2, "{{1},{2}}")));
  for (const auto& a : all(3)) EXPECT_TRUE(leq(Antichain::bottom(Universe(3)), a));
  EXPECT_THROW(leq(ac(2, "{}"), ac(3, "{}")), UniverseMismatch);
}

TEST(JoinMeet, Examples) {
  EXPECT_EQ(join(ac(3, "{{1,2}}"), ac(3, "{{2,3}}")), ac(3, "{{1,2},{2,3}}"));
  EXPECT_EQ(meet(ac(3, "{{1,2}}"), ac(3, "{{2,3}}")), ac(3, "{{2}}"));
  const Antichain bot = Antichain::bottom(Universe(3));
  for (const auto& a : all(3)) {
    EXPECT_EQ(meet(a, bot), bot);
    EXPECT_EQ(join(a, bot), a);
  }
}

TEST(Span, Examples) {
  EXPECT_EQ(span(ac(3, "{{1,2},{3}}")), 0b111);
  EXPECT_EQ(span(ac(3, "{}")), 0);
  EXPECT_EQ(span(ac(3, "{{}}")), 0);
}

TEST(DirectProduct, Examples) {
  EXPECT_EQ(direct_product(ac(3, "{{1}}"), ac(3, "{{2},{3}}")), ac(3, "{{1,2},{1,3}}"));
  EXPECT_EQ(direct_product(ac(4, "{{1,2}}"), ac(4, "{{3,4}}")), ac(4, "{{1,2,3,4}}"));
  for (const auto& a : all(3)) EXPECT_EQ(direct_product(a, Antichain::empty_set(Universe(3))), a);
  EXPECT_THROW(direct_product(ac(3, "{{1,2}}"), ac(3, "{{2,3}}")), PreconditionError);
}

TEST(DirectProduct, SizeIsProductOfSizes) {
  const Universe u(4);
  for (const auto& a : all(4))
    for (const auto& b : all(4)) {
      if (span(a) & span(b)) continue;
      EXPECT_EQ(direct_product(a, b).size(), a.size() * b.size());
    }
}

TEST(ImmediateSubsets, Examples) {
  const Universe u(3);
  EXPECT_EQ(immediate_subsets(u, 0b111), ac(3, "{{1,2},{1,3},{2,3}}"));
  EXPECT_EQ(immediate_subsets(u, 0), Antichain::bottom(u));
  EXPECT_EQ(immediate_subsets(u, 0b001), Antichain::empty_set(u));
}

TEST(LowerUpper, Examples) {
  const Universe u2(2);
  EXPECT_EQ(lower(Antichain::empty_set(u2)), Antichain::bottom(u2));
  EXPECT_EQ(upper(Antichain::bottom(u2)), Antichain::empty_set(u2));
  EXPECT_EQ(upper(ac(2, "{{1},{2}}")), ac(2, "{{1,2}}"));
  EXPECT_EQ(lower(ac(3, "{{1,2},{3}}")), ac(3, "{{1},{2}}"));
}

TEST(LowerUpper, UpperMatchesDefinitionByBruteForce) {
  // alpha^+ is the join of all {X} with X^- <= alpha.
  for (int n = 0; n <= 3; ++n) {
    const Universe u(n);
    for (const auto& a : all(n)) {
      std::vector<SubsetMask> picked;
      for (unsigned x = 0; x < u.subset_count(); ++x)
        if (leq(immediate_subsets(u, static_cast<SubsetMask>(x)), a)) picked.push_back(static_cast<SubsetMask>(x));
      EXPECT_EQ(upper(a), normalize(u, picked));
    }
  }
}

TEST(Check, Examples) {
  EXPECT_EQ(check_nondominating(ac(3, "{{1,2}}")), ac(3, "{{1,3},{2,3}}"));
  EXPECT_EQ(check_nondominating(ac(3, "{}")), Antichain::top(Universe(3)));
  EXPECT_EQ(check_nondominating(Antichain::top(Universe(3))), immediate_subsets(Universe(3), 0b111));
}

TEST(Check, IsTheLargestNonDominatingAntichain) {
  for (int n = 0; n <= 3; ++n) {
    const Universe u(n);
    const auto lattice = all(n);
    for (const auto& chi : lattice) {
      auto dominates_none = [&](const Antichain& rho) {
        return std::none_of(chi.begin(), chi.end(), [&](SubsetMask x) {
          return leq(Antichain::from_sorted_unchecked(u, {x}), rho);
        });
      };
      const Antichain c = check_nondominating(chi);
      EXPECT_TRUE(dominates_none(c));
      for (const auto& rho : lattice) {
        if (dominates_none(rho)) {
          EXPECT_TRUE(leq(rho, c)) << format(chi) << " " << format(rho);
        }
      }
      // Adding any extra set that keeps an antichain breaks the property.
      for (unsigned x = 0; x < u.subset_count(); ++x) {
        if (c.contains(static_cast<SubsetMask>(x))) continue;
        std::vector<SubsetMask> v(c.begin(), c.end());
        v.push_back(static_cast<SubsetMask>(x));
        const Antichain bigger = normalize(u, v);
        if (bigger.size() != c.size() + 1) continue;
        EXPECT_FALSE(dominates_none(bigger));
      }
    }
  }
}

TEST(IntervalHom, Examples) {
  const Universe u(2);
  const Antichain bot = Antichain::bottom(u), top = Antichain::top(u);
  for (const auto& chi : all(2)) {
    EXPECT_EQ(interval_hom(bot, top, chi), chi);
    EXPECT_EQ(interval_hom(ac(2, "{{1}}"), top, bot), ac(2, "{{1}}"));
  }
  EXPECT_EQ(interval_hom(ac(2, "{{1}}"), top, ac(2, "{{2}}")), ac(2, "{{1},{2}}"));
  EXPECT_THROW(interval_hom(top, bot, bot), PreconditionError);
}

TEST(IntervalHom, IsALatticeHomomorphismIntoTheInterval) {
  const auto lattice = all(3);
  std::mt19937 rng(7);
  std::uniform_int_distribution<std::size_t> pick(0, lattice.size() - 1);
  for (int trial = 0; trial < 300; ++trial) {
    Antichain a = lattice[pick(rng)], b = lattice[pick(rng)];
    if (!leq(a, b)) std::swap(a, b);
    if (!leq(a, b)) continue;
    const auto& x = lattice[pick(rng)];
    const auto& y = lattice[pick(rng)];
    const Antichain hx = interval_hom(a, b, x), hy = interval_hom(a, b, y);
    EXPECT_TRUE(leq(a, hx) && leq(hx, b));
    EXPECT_EQ(interval_hom(a, b, join(x, y)), join(hx, hy));
    EXPECT_EQ(interval_hom(a, b, meet(x, y)), meet(hx, hy));
  }
}

TEST(Downset, Examples) {
  const Universe u(2);
  DownsetVector d = to_downset(ac(2, "{{1}}"));
  EXPECT_TRUE(d.test(0));
  EXPECT_TRUE(d.test(1));
  EXPECT_FALSE(d.test(2));
  EXPECT_FALSE(d.test(3));
  EXPECT_TRUE(to_downset(Antichain::bottom(u)).none());
  for (const auto& a : all(3)) EXPECT_EQ(from_downset(Universe(3), to_downset(a)), a);
  EXPECT_EQ(all(3).size(), 20u);
}

TEST(Downset, RejectsNonClosedVectors) {
  DownsetVector d;
  d.set(0b11);
  EXPECT_THROW(from_downset(Universe(2), d), InvalidInput);
  DownsetVector outside;
  outside.set(4);
  EXPECT_THROW(from_downset(Universe(2), outside), InvalidInput);
}

TEST(Dual, Examples) {
  const Universe u(2);
  EXPECT_EQ(dual(Antichain::bottom(u)), Antichain::top(u));
  EXPECT_EQ(dual(Antichain::top(u)), Antichain::bottom(u));
  EXPECT_EQ(dual(Antichain::empty_set(u)), ac(2, "{{1},{2}}"));
  EXPECT_EQ(dual(ac(2, "{{1}}")), ac(2, "{{1}}"));
}

TEST(Dual, IsAnOrderReversingInvolution) {
  for (int n = 0; n <= 3; ++n) {
    const auto lattice = all(n);
    for (const auto& a : lattice) {
      EXPECT_EQ(dual(dual(a)), a);
      for (const auto& b : lattice) EXPECT_EQ(leq(a, b), leq(dual(b), dual(a)));
    }
  }
}

TEST(Canonicalize, Examples) {
  const auto c = canonicalize(ac(2, "{{2}}"));
  EXPECT_EQ(c.representative, ac(2, "{{1}}"));
  EXPECT_EQ(c.orbit_size, 2u);
  for (int n = 0; n <= 5; ++n) {
    const auto b = canonicalize(Antichain::bottom(Universe(n)));
    EXPECT_EQ(b.representative, Antichain::bottom(Universe(n)));
    EXPECT_EQ(b.orbit_size, 1u);
  }
  const auto s = canonicalize(ac(2, "{{1},{2}}"));
  EXPECT_EQ(s.representative, ac(2, "{{1},{2}}"));
  EXPECT_EQ(s.orbit_size, 1u);
  EXPECT_THROW(canonicalize(Antichain::top(Universe(8))), UnsupportedSize);
}

TEST(Canonicalize, OrbitsPartitionTheLattice) {
  // Orbit sizes of the representatives add up to |A_n|; class counts are the
  // inequivalent-antichain numbers 2, 3, 5, 10, 30.
  const std::vector<std::size_t> classes = {2, 3, 5, 10, 30};
  for (int n = 0; n <= 4; ++n) {
    std::set<Antichain> reps;
    std::uint64_t total = 0;
    for (const auto& a : all(n)) {
      const auto c = canonicalize(a);
      if (reps.insert(c.representative).second) total += c.orbit_size;
    }
    EXPECT_EQ(reps.size(), classes[static_cast<std::size_t>(n)]);
    EXPECT_EQ(total, all(n).size());
  }
}

TEST(Canonicalize, InvariantUnderRelabeling) {
  auto check = [](const Antichain& a, std::vector<int> perm) {
    EXPECT_EQ(canonicalize(relabel(a, perm)).representative, canonicalize(a).representative);
    EXPECT_EQ(canonicalize(relabel(a, perm)).orbit_size, canonicalize(a).orbit_size);
  };
  for (int n = 1; n <= 3; ++n)
    for (const auto& a : all(n)) {
      std::vector<int> perm(static_cast<std::size_t>(n));
      std::iota(perm.begin(), perm.end(), 0);
      do check(a, perm);
      while (std::next_permutation(perm.begin(), perm.end()));
    }
  std::mt19937 rng(11);
  for (int n = 4; n <= 6; ++n) {
    const Universe u(n);
    for (int trial = 0; trial < 40; ++trial) {
      std::vector<SubsetMask> sets;
      for (int k = 0; k < 4; ++k) sets.push_back(static_cast<SubsetMask>(rng() % u.subset_count()));
      const Antichain a = normalize(u, sets);
      std::vector<int> perm(static_cast<std::size_t>(n));
      std::iota(perm.begin(), perm.end(), 0);
      std::shuffle(perm.begin(), perm.end(), rng);
      check(a, perm);
    }
  }
}

TEST(LatticeLaws, ExhaustiveOnFourElements) {
  const auto lattice = all(4);
  ASSERT_EQ(lattice.size(), 168u);
  for (const auto& a : lattice) {
    EXPECT_EQ(join(a, a), a);
    EXPECT_EQ(meet(a, a), a);
    for (const auto& b : lattice) {
      EXPECT_EQ(join(a, b), join(b, a));
      EXPECT_EQ(meet(a, b), meet(b, a));
      EXPECT_EQ(join(a, meet(a, b)), a);
      EXPECT_EQ(meet(a, join(a, b)), a);
    }
  }
  std::mt19937 rng(3);
  std::uniform_int_distribution<std::size_t> pick(0, lattice.size() - 1);
  // All 168^3 triples take a while in debug builds; sample most and cover a full slice.
  for (const auto& b : lattice)
    for (const auto& c : lattice) {
      const auto& a = lattice[pick(rng)];
      EXPECT_EQ(join(join(a, b), c), join(a, join(b, c)));
      EXPECT_EQ(meet(meet(a, b), c), meet(a, meet(b, c)));
      EXPECT_EQ(meet(a, join(b, c)), join(meet(a, b), meet(a, c)));
    }
}

TEST(LatticeLaws, OrderAgreesWithJoinMeetAndDownsets) {
  const auto lattice = all(3);
  for (const auto& a : lattice)
    for (const auto& b : lattice) {
      const bool le = leq(a, b);
      EXPECT_EQ(le, join(a, b) == b);
      EXPECT_EQ(le, meet(a, b) == a);
      const auto da = to_downset(a), db = to_downset(b);
      EXPECT_EQ(le, da.subset_of(db));
      EXPECT_EQ(to_downset(join(a, b)), da | db);
      EXPECT_EQ(to_downset(meet(a, b)), da & db);
    }
}

TEST(Enumeration, MatchesBruteForceFamilies) {
  for (int n = 0; n <= 4; ++n) {
    const auto brute = oracle::antichains_by_families(n);
    const auto mine = all(n);
    ASSERT_EQ(brute.size(), mine.size());
    std::set<std::vector<SubsetMask>> a, b;
    for (const auto& f : brute) a.insert(f);
    for (const auto& x : mine) b.insert(x.sets());
    EXPECT_EQ(a, b);
  }
  EXPECT_EQ(all_downsets(Universe(5)).size(), oracle::antichains_by_split(5).size());
}

TEST(Grammar, ParsesAndFormats) {
  EXPECT_EQ(format(ac(3, " { {1, 2} , {3} } ")), "{{1,2},{3}}");
  EXPECT_EQ(format(ac(3, "{}")), "{}");
  EXPECT_EQ(format(ac(3, "{{}}")), "{{}}");
  EXPECT_EQ(ac(3, "{{}}"), Antichain::empty_set(Universe(3)));
  EXPECT_THROW(ac(3, "{{4}}"), InvalidInput);
  EXPECT_THROW(ac(3, "{{0}}"), InvalidInput);
  EXPECT_THROW(ac(3, "{{1},{1,2}}"), InvalidInput);
  EXPECT_EQ(parse_antichain("{{1},{1,2}}", Universe(3), true), ac(3, "{{1,2}}"));
  EXPECT_THROW(ac(3, "{{1}"), InvalidInput);
  EXPECT_THROW(ac(3, "{{1}} x"), InvalidInput);
  EXPECT_THROW(ac(3, "{1}"), InvalidInput);
  for (const auto& a : all(4)) EXPECT_EQ(parse_antichain(format(a), Universe(4)), a);
}

TEST(Universe, RejectsOutOfRange) {
  EXPECT_THROW(Universe(9), InvalidInput);
  EXPECT_THROW(Universe(-1), InvalidInput);
  EXPECT_EQ(Universe(8).all(), 255);
}
