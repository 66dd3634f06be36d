#pragma once

// Elementary integer arithmetic on conductors and rational primes. Trial
// division throughout; conductors stay well below 10^6.

#include <cstdint>
#include <numeric>
#include <utility>
#include <vector>

namespace placemeasure {

using natural = std::uint64_t;

namespace arith {

constexpr bool is_prime(natural n) noexcept {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (natural d = 3; d * d <= n; d += 2)
    if (n % d == 0) return false;
  return true;
}

inline natural next_prime(natural n) noexcept {
  natural c = n + 1;
  while (!is_prime(c)) ++c;
  return c;
}

/// Prime factorization as (prime, exponent) pairs in increasing order.
inline std::vector<std::pair<natural, unsigned>> factorize(natural n) {
  std::vector<std::pair<natural, unsigned>> out;
  for (natural d = 2; d * d <= n; ++d) {
    if (n % d != 0) continue;
    unsigned e = 0;
    while (n % d == 0) {
      n /= d;
      ++e;
    }
    out.emplace_back(d, e);
  }
  if (n > 1) out.emplace_back(n, 1u);
  return out;
}

inline natural euler_phi(natural n) {
  natural result = n;
  for (auto [p, e] : factorize(n)) result = result / p * (p - 1);
  return result;
}

/// Splits n = p^a * m with p coprime to m; returns {p^a, m}.
constexpr std::pair<natural, natural> split_prime_power(natural n, natural p) noexcept {
  natural pa = 1;
  while (n % p == 0) {
    n /= p;
    pa *= p;
  }
  return {pa, n};
}

/// Multiplicative order of a modulo m, for gcd(a, m) = 1. Returns 1 for m = 1.
inline natural multiplicative_order(natural a, natural m) noexcept {
  if (m == 1) return 1;
  a %= m;
  natural x = a;
  natural k = 1;
  while (x != 1) {
    x = x * a % m;
    ++k;
  }
  return k;
}

/// Position of a prime in the sequence 2, 3, 5, 7, ... (2 has position 1).
inline natural prime_position(natural p) {
  natural count = 0;
  std::vector<bool> composite(p + 1, false);
  for (natural i = 2; i <= p; ++i) {
    if (composite[i]) continue;
    ++count;
    for (natural j = i * i; j <= p; j += i) composite[j] = true;
  }
  return count;
}

}  // namespace arith
}  // namespace placemeasure
