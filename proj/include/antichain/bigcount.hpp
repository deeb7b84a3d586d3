#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

namespace antichain {

/// Exact nonnegative counts. Dedekind(8) needs 76 bits.
using BigCount = boost::multiprecision::cpp_int;

/// Internal accumulator for hot loops. Every interval of A_n with n <= 8 has
/// fewer than 2^76 elements, so sums of the terms built here stay far below 2^128.
using Wide = unsigned __int128;

inline BigCount to_big(Wide v) {
  BigCount hi = static_cast<std::uint64_t>(v >> 64);
  return (hi << 64) + static_cast<std::uint64_t>(v);
}

inline std::string to_string(const BigCount& v) { return v.str(); }

inline BigCount pow2(unsigned e) { return BigCount{1} << e; }

}  // namespace antichain
