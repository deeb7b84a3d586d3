#pragma once

#include "antichain/interval_size.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace antichain {

/// Disjoint intervals covering a parent interval.
struct IntervalPartition {
  Interval parent;
  std::vector<Interval> parts;
  /// Parts dropped because bottom was not below top.
  std::size_t dropped_empty = 0;
};

namespace detail {

inline Antichain pick_members(const Antichain& a, std::uint64_t chosen, bool keep) {
  std::vector<SubsetMask> v;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (((chosen >> i) & 1) == keep) v.push_back(a.sets()[i]);
  return Antichain::from_sorted_unchecked(a.universe(), std::move(v));
}

inline void check_member_count(const Antichain& a) {
  if (a.size() > 40) throw UnsupportedSize("antichain has too many members to split into 2^k parts");
}

/// Moves bit i of x to the position of the i-th set bit of target.
inline SubsetMask deposit(unsigned x, SubsetMask target) {
  unsigned out = 0;
  for (unsigned t = target; t; t &= t - 1, x >>= 1)
    if (x & 1) out |= t & (~t + 1);
  return static_cast<SubsetMask>(out);
}

/// Antichains of the whole universe whose span lies in `part`.
inline std::vector<Antichain> antichains_on(Universe u, SubsetMask part) {
  const int k = std::popcount(static_cast<unsigned>(part));
  std::vector<Antichain> out;
  for (const auto& a : all_antichains(Universe(k))) {
    std::vector<SubsetMask> v;
    for (SubsetMask m : a) v.push_back(deposit(m, part));
    out.push_back(normalize(u, v));
  }
  return out;
}

}  // namespace detail

/// {[chi, check(alpha \ chi)] : chi a sub-list of alpha}, covering the whole lattice.
inline IntervalPartition lnd_partition(const Antichain& alpha) {
  detail::check_member_count(alpha);
  const Universe u = alpha.universe();
  IntervalPartition p{Interval::full(u), {}, 0};
  const std::uint64_t count = std::uint64_t{1} << alpha.size();
  p.parts.reserve(count);
  for (std::uint64_t s = 0; s < count; ++s) {
    Antichain chi = detail::pick_members(alpha, s, true);
    Antichain rest = detail::pick_members(alpha, s, false);
    p.parts.emplace_back(std::move(chi), check_nondominating(rest));
  }
  return p;
}

/// The same split restricted to iv: [bottom v chi, top ^ check(alpha' \ chi)], empty parts dropped.
inline IntervalPartition lnd_partition_interval(const Antichain& alpha, const Interval& iv) {
  detail::check_same(alpha, iv.bottom());
  if (!iv.contains(alpha)) throw PreconditionError(format(alpha) + " is not in the interval " + format(iv));
  detail::check_member_count(alpha);
  IntervalPartition p{iv, {}, 0};
  const std::uint64_t count = std::uint64_t{1} << alpha.size();
  for (std::uint64_t s = 0; s < count; ++s) {
    Antichain lo = join(iv.bottom(), detail::pick_members(alpha, s, true));
    Antichain hi = meet(iv.top(), check_nondominating(detail::pick_members(alpha, s, false)));
    if (auto part = Interval::make(std::move(lo), std::move(hi))) p.parts.push_back(std::move(*part));
    else ++p.dropped_empty;
  }
  return p;
}

/// [bottom, bottom] plus [a1 v a2, a1 (x) a2] for nonempty antichains a1 on n1 and a2 on n2.
inline IntervalPartition product_partition(Universe u, SubsetMask n1, SubsetMask n2) {
  if (!u.contains(n1) || !u.contains(n2)) throw InvalidInput("mask out of range for universe");
  if (n1 == 0 || n2 == 0 || (n1 & n2) != 0 || (n1 | n2) != u.all())
    throw PreconditionError("the two parts must be nonempty, disjoint and cover the universe");
  IntervalPartition p{Interval::full(u), {}, 0};
  p.parts.emplace_back(Antichain::bottom(u), Antichain::bottom(u));
  const auto first = detail::antichains_on(u, n1);
  const auto second = detail::antichains_on(u, n2);
  for (const auto& a1 : first) {
    if (a1.is_bottom()) continue;
    for (const auto& a2 : second) {
      if (a2.is_bottom()) continue;
      p.parts.emplace_back(join(a1, a2), direct_product(a1, a2));
    }
  }
  return p;
}

enum class VerifyMode { full, size };

struct PartitionCheck {
  bool ok = true;
  /// An element covered zero or several times, when the full check fails there.
  std::optional<Antichain> witness;
  std::string detail;
};

/// Full mode checks every parent element lies in exactly one part; size mode compares size sums.
inline PartitionCheck verify_partition(const IntervalPartition& p, VerifyMode mode = VerifyMode::full,
                                       IntervalSizer& sizer = default_sizer()) {
  PartitionCheck r;
  BigCount sum = 0;
  for (const auto& part : p.parts) sum += sizer.size(part);
  const BigCount whole = sizer.size(p.parent);
  if (mode == VerifyMode::full) {
    const int n = p.parent.universe().size();
    if (n > 5) throw UnsupportedSize("full partition check enumerates the parent; use size mode above 5 elements");
    enumerate_interval(p.parent, [&](const Antichain& x) {
      if (!r.ok) return;
      int hits = 0;
      for (const auto& part : p.parts) hits += part.contains(x);
      if (hits != 1) {
        r.ok = false;
        r.witness = x;
        r.detail = format(x) + " lies in " + std::to_string(hits) + " parts";
      }
    });
    if (!r.ok) return r;
  }
  if (sum != whole) {
    r.ok = false;
    r.detail = "part sizes sum to " + to_string(sum) + ", parent has " + to_string(whole);
    if (mode == VerifyMode::full) {
      // Every parent element is covered once, so some part reaches outside the parent.
      for (const auto& part : p.parts) {
        enumerate_interval(part, [&](const Antichain& x) {
          if (!r.witness && !p.parent.contains(x)) r.witness = x;
        });
        if (r.witness) break;
      }
    }
  }
  return r;
}

inline std::string format(const IntervalPartition& p) {
  std::string out;
  for (const auto& part : p.parts) out += format(part) + "\n";
  return out;
}

}  // namespace antichain
