#pragma once

// The directed system of cyclotomic fields Q(zeta_n) and their places.
//
// A place of Q(zeta_n) above a rational prime p is identified with a coset of
// the cyclic subgroup <p> in (Z/mZ)^*, where n = p^a * m with p coprime to m.
// The decomposition group of p in (Z/nZ)^* is the full preimage of <p>, so
// these cosets are in bijection with the places, compatibly with reduction
// mod divisors of n. The archimedean places are the cosets of {+1, -1}. Each
// coset is stored by its least element.

#include <algorithm>
#include <compare>
#include <numeric>
#include <ostream>
#include <string>
#include <vector>

#include "arith.hpp"
#include "errors.hpp"

namespace placemeasure {

/// Conductor of a cyclotomic field, kept canonical: 1, or n >= 3 with n != 2 mod 4.
class level {
 public:
  level() = default;

  /// Normalizes n = 2 mod 4 to n / 2, since Q(zeta_n) = Q(zeta_{n/2}) there.
  explicit level(natural n) : conductor_(canonical(n)) {}

  natural conductor() const noexcept { return conductor_; }
  natural degree() const { return arith::euler_phi(conductor_); }
  bool divides(level other) const noexcept { return other.conductor_ % conductor_ == 0; }

  friend auto operator<=>(level, level) = default;

 private:
  static natural canonical(natural n) {
    if (n == 0) throw domain_error(error_code::invalid_level, "conductor must be positive");
    return n % 4 == 2 ? n / 2 : n;
  }

  natural conductor_ = 1;
};

inline level canonical_conductor(natural n) { return level(n); }

inline level compositum(level a, level b) {
  return level(std::lcm(a.conductor(), b.conductor()));
}

inline level common_sublevel(level a, level b) {
  return level(std::gcd(a.conductor(), b.conductor()));
}

/// A place of Q: a finite prime or the archimedean place.
class rational_place {
 public:
  static rational_place infinite() noexcept { return rational_place(0); }

  static rational_place finite(natural p) {
    if (!arith::is_prime(p))
      throw domain_error(error_code::bad_prime, std::to_string(p) + " is not prime");
    return rational_place(p);
  }

  bool is_infinite() const noexcept { return prime_ == 0; }
  natural prime() const noexcept { return prime_; }

  /// Index in the fixed enumeration inf, 2, 3, 5, ... starting at 1.
  natural enumeration_index() const {
    return is_infinite() ? 1 : arith::prime_position(prime_) + 1;
  }

  /// Successor in the enumeration inf, 2, 3, 5, ...
  rational_place next() const {
    return rational_place(is_infinite() ? 2 : arith::next_prime(prime_));
  }

  std::string to_string() const { return is_infinite() ? "inf" : std::to_string(prime_); }

  // Enumeration order: inf first, then primes ascending.
  friend auto operator<=>(rational_place, rational_place) = default;

 private:
  explicit rational_place(natural p) noexcept : prime_(p) {}
  natural prime_ = 0;
};

namespace detail {

inline natural coset_min_finite(natural u, natural m, natural p) {
  if (m == 1) return 0;
  u %= m;
  natural best = u;
  for (natural x = u * p % m; x != u; x = x * p % m) best = std::min(best, x);
  return best;
}

inline natural coset_min_infinite(natural a, natural n) noexcept {
  if (n == 1) return 0;
  a %= n;
  return std::min(a, n - a);
}

/// Modulus of the coset space carrying the places of `lvl` above `base`.
inline natural coset_modulus(level lvl, rational_place base) noexcept {
  if (base.is_infinite()) return lvl.conductor();
  return arith::split_prime_power(lvl.conductor(), base.prime()).second;
}

inline natural canonical_rep(natural u, natural modulus, rational_place base) {
  return base.is_infinite() ? coset_min_infinite(u, modulus)
                            : coset_min_finite(u, modulus, base.prime());
}

inline std::vector<natural> coset_elements(natural rep, natural modulus, rational_place base) {
  if (modulus == 1) return {0};
  if (base.is_infinite()) {
    if (rep == modulus - rep) return {rep};
    return {rep, modulus - rep};
  }
  std::vector<natural> out{rep};
  for (natural x = rep * base.prime() % modulus; x != rep; x = x * base.prime() % modulus)
    out.push_back(x);
  return out;
}

}  // namespace detail

/// A place of Q(zeta_n): (conductor, rational place below, coset representative).
class place {
 public:
  struct unchecked_t {};
  static constexpr unchecked_t unchecked{};

  place() = default;

  place(level lvl, rational_place base, natural rep) : level_(lvl), base_(base), rep_(rep) {
    natural modulus = detail::coset_modulus(lvl, base);
    bool ok = modulus == 1 ? rep == 0
                           : rep < modulus && std::gcd(rep, modulus) == 1 &&
                                 detail::canonical_rep(rep, modulus, base) == rep;
    if (!ok)
      throw domain_error(error_code::invalid_place,
                         to_string() + " does not carry a canonical coset representative");
  }

  place(level lvl, rational_place base, natural rep, unchecked_t) noexcept
      : level_(lvl), base_(base), rep_(rep) {}

  level at() const noexcept { return level_; }
  rational_place base() const noexcept { return base_; }
  natural rep() const noexcept { return rep_; }

  std::string to_string() const {
    return std::to_string(level_.conductor()) + ":" + base_.to_string() + ":" + std::to_string(rep_);
  }

  friend auto operator<=>(const place&, const place&) = default;
  friend bool operator==(const place&, const place&) = default;

 private:
  level level_;
  rational_place base_ = rational_place::infinite();
  natural rep_ = 0;
};

inline std::ostream& operator<<(std::ostream& os, const place& v) { return os << v.to_string(); }
inline std::ostream& operator<<(std::ostream& os, rational_place p) { return os << p.to_string(); }
inline std::ostream& operator<<(std::ostream& os, level n) { return os << n.conductor(); }

/// The places of Q(zeta_n) above `base`, sorted by representative.
inline std::vector<place> places_above(level lvl, rational_place base) {
  natural modulus = detail::coset_modulus(lvl, base);
  std::vector<place> out;
  if (modulus == 1) {
    out.emplace_back(lvl, base, 0, place::unchecked);
    return out;
  }
  if (base.is_infinite()) {
    for (natural a = 1; 2 * a < modulus; ++a)
      if (std::gcd(a, modulus) == 1) out.emplace_back(lvl, base, a, place::unchecked);
    return out;
  }
  std::vector<bool> seen(modulus, false);
  natural p = base.prime() % modulus;
  for (natural u = 1; u < modulus; ++u) {
    if (seen[u] || std::gcd(u, modulus) != 1) continue;
    natural x = u;
    do {
      seen[x] = true;
      x = x * p % modulus;
    } while (x != u);
    out.emplace_back(lvl, base, u, place::unchecked);
  }
  return out;
}

/// [K_v : Q_p] = e * f.
inline natural local_degree(const place& v) {
  natural n = v.at().conductor();
  if (v.base().is_infinite()) return n == 1 ? 1 : 2;
  auto [pa, m] = arith::split_prime_power(n, v.base().prime());
  return arith::euler_phi(pa) * arith::multiplicative_order(v.base().prime(), m);
}

inline place restrict(const place& v, level sublevel) {
  if (!sublevel.divides(v.at()))
    throw domain_error(error_code::level_not_divisible,
                       std::to_string(sublevel.conductor()) + " does not divide " +
                           std::to_string(v.at().conductor()));
  natural modulus = detail::coset_modulus(sublevel, v.base());
  natural rep = modulus == 1 ? 0 : detail::canonical_rep(v.rep() % modulus, modulus, v.base());
  return place(sublevel, v.base(), rep, place::unchecked);
}

/// The places at `superlevel` lying over `v`, sorted and distinct.
inline std::vector<place> fiber(const place& v, level superlevel) {
  if (!v.at().divides(superlevel))
    throw domain_error(error_code::level_not_divisible,
                       std::to_string(v.at().conductor()) + " does not divide " +
                           std::to_string(superlevel.conductor()));
  natural small = detail::coset_modulus(v.at(), v.base());
  natural big = detail::coset_modulus(superlevel, v.base());
  std::vector<place> out;
  if (big == 1) {
    out.emplace_back(superlevel, v.base(), 0, place::unchecked);
    return out;
  }
  for (natural c : detail::coset_elements(v.rep(), small, v.base())) {
    for (natural u = c; u < big; u += small) {
      if (std::gcd(u, big) != 1) continue;
      out.emplace_back(superlevel, v.base(), detail::canonical_rep(u, big, v.base()),
                       place::unchecked);
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

/// lambda(Y(K, v)) as a numerator / denominator pair.
inline std::pair<natural, natural> lambda_mass(const place& v) {
  return {local_degree(v), v.at().degree()};
}

/// Extension seam for place systems beyond the cyclotomic tower.
class tower_provider {
 public:
  virtual ~tower_provider() = default;
  virtual std::vector<place> places_above(level lvl, rational_place base) const = 0;
  virtual natural local_degree(const place& v) const = 0;
  virtual place restrict(const place& v, level sublevel) const = 0;
  virtual std::vector<place> fiber(const place& v, level superlevel) const = 0;
  virtual level compositum(level a, level b) const = 0;
  virtual natural global_degree(level lvl) const = 0;
};

class cyclotomic_tower final : public tower_provider {
 public:
  std::vector<place> places_above(level lvl, rational_place base) const override {
    return placemeasure::places_above(lvl, base);
  }
  natural local_degree(const place& v) const override { return placemeasure::local_degree(v); }
  place restrict(const place& v, level sublevel) const override {
    return placemeasure::restrict(v, sublevel);
  }
  std::vector<place> fiber(const place& v, level superlevel) const override {
    return placemeasure::fiber(v, superlevel);
  }
  level compositum(level a, level b) const override { return placemeasure::compositum(a, b); }
  natural global_degree(level lvl) const override { return lvl.degree(); }
};

}  // namespace placemeasure
