#pragma once

#include <cstdint>

namespace shortedge {

// Exact integer helpers for the fractional powers that appear in the
// matching bounds (n^{3/4}, n^{1/2+1/(2d)}, ...). Every comparison is decided
// with arbitrary-precision integers, never with pow().

// Largest s >= 0 with s^den <= n^num. Requires den >= 1.
std::uint64_t floor_power_ratio(std::uint64_t n, unsigned num, unsigned den);

// x <= c * n^(num/den)
bool leq_scaled_root(std::uint64_t x, std::uint64_t c, std::uint64_t n, unsigned num,
                     unsigned den);

// x < n^(num/den)
bool less_than_root(std::uint64_t x, std::uint64_t n, unsigned num, unsigned den);

// max(0, ceil(n/2 - n^(num/den))), the target size of the low-stabbing
// matching: the smallest w that leaves at most 2 n^(num/den) vertices
// unmatched.
std::uint64_t half_minus_root_ceil(std::uint64_t n, unsigned num, unsigned den);

// C(m, k); throws RangeError when the value does not fit in 64 bits.
std::uint64_t binomial(std::uint64_t m, std::uint64_t k);

// C(m, k) saturated at `cap`.
std::uint64_t binomial_capped(std::uint64_t m, std::uint64_t k, std::uint64_t cap);

}  // namespace shortedge
