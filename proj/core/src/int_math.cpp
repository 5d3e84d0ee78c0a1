#include "shortedge/int_math.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>

#include "shortedge/errors.hpp"

namespace shortedge {

namespace {

using boost::multiprecision::cpp_int;

cpp_int ipow(std::uint64_t base, unsigned exp) {
  cpp_int result = 1;
  cpp_int b = base;
  while (exp != 0) {
    if (exp & 1U) result *= b;
    b *= b;
    exp >>= 1U;
  }
  return result;
}

}  // namespace

std::uint64_t floor_power_ratio(std::uint64_t n, unsigned num, unsigned den) {
  if (den == 0) throw RangeError("floor_power_ratio: zero denominator");
  const cpp_int target = ipow(n, num);
  auto guess = static_cast<std::uint64_t>(
      std::floor(std::pow(static_cast<long double>(n),
                          static_cast<long double>(num) / static_cast<long double>(den))));
  while (guess > 0 && ipow(guess, den) > target) --guess;
  while (ipow(guess + 1, den) <= target) ++guess;
  return guess;
}

bool leq_scaled_root(std::uint64_t x, std::uint64_t c, std::uint64_t n, unsigned num,
                     unsigned den) {
  return ipow(x, den) <= ipow(c, den) * ipow(n, num);
}

bool less_than_root(std::uint64_t x, std::uint64_t n, unsigned num, unsigned den) {
  return ipow(x, den) < ipow(n, num);
}

std::uint64_t half_minus_root_ceil(std::uint64_t n, unsigned num, unsigned den) {
  // w >= n/2 - n^(num/den)  <=>  (n - 2w)^den <= 2^den * n^num
  const cpp_int rhs = ipow(2, den) * ipow(n, num);
  std::uint64_t w = 0;
  while (2 * (w + 1) <= n && ipow(n - 2 * w, den) > rhs) ++w;
  return w;
}

std::uint64_t binomial(std::uint64_t m, std::uint64_t k) {
  if (k > m) return 0;
  k = std::min(k, m - k);
  cpp_int acc = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    acc *= (m - k + i);
    acc /= i;
  }
  if (acc > cpp_int(std::numeric_limits<std::uint64_t>::max())) {
    throw RangeError("binomial: C(" + std::to_string(m) + ", " + std::to_string(k) +
                     ") overflows 64 bits");
  }
  return static_cast<std::uint64_t>(acc);
}

std::uint64_t binomial_capped(std::uint64_t m, std::uint64_t k, std::uint64_t cap) {
  if (k > m) return 0;
  k = std::min(k, m - k);
  cpp_int acc = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    acc *= (m - k + i);
    acc /= i;
    // Partial products C(m-k+i, i) are nondecreasing in i.
    if (acc >= cap) return cap;
  }
  return static_cast<std::uint64_t>(acc);
}

}  // namespace shortedge
