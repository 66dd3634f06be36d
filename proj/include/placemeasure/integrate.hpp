#pragma once

#include <cmath>
#include <map>
#include <numbers>
#include <string>

#include "maps.hpp"

namespace placemeasure {

/// A function on Y that is constant on the basis sets of one level and
/// vanishes outside finitely many of them.
class simple_function {
 public:
  simple_function() = default;

  simple_function(level lvl, std::map<place, map_value> values) : level_(lvl) {
    for (auto& [v, value] : values) {
      if (v.at() != lvl)
        throw domain_error(error_code::invalid_place,
                           v.to_string() + " is not at level " + std::to_string(lvl.conductor()));
      if (!value.is_exact_zero()) values_.emplace(v, std::move(value));
    }
  }

  level at() const noexcept { return level_; }
  const std::map<place, map_value>& values() const noexcept { return values_; }

  map_value operator()(const place& v) const {
    if (auto it = values_.find(v); it != values_.end()) return it->second;
    return map_value::exact(0);
  }

  ring_set support() const {
    std::vector<place> s;
    for (const auto& [v, value] : values_)
      if (!value.is_zero()) s.push_back(v);
    return ring_set(level_, std::move(s));
  }

  friend simple_function lift(const simple_function& f, level superlevel) {
    if (!f.level_.divides(superlevel))
      throw domain_error(error_code::level_not_divisible,
                         std::to_string(f.level_.conductor()) + " does not divide " +
                             std::to_string(superlevel.conductor()));
    std::map<place, map_value> out;
    for (const auto& [v, value] : f.values_)
      for (const auto& w : fiber(v, superlevel)) out.emplace(w, value);
    return simple_function(superlevel, std::move(out));
  }

  friend simple_function operator+(const simple_function& f, const simple_function& g) {
    level top = compositum(f.level_, g.level_);
    auto lf = lift(f, top);
    auto lg = lift(g, top);
    auto out = lf.values_;
    for (const auto& [v, value] : lg.values_) {
      auto [it, fresh] = out.emplace(v, value);
      if (!fresh) it->second = it->second + value;
    }
    return simple_function(top, std::move(out));
  }

 private:
  level level_;
  std::map<place, map_value> values_;
};

/// sum over the support of f(v) * c(v).
inline map_value integrate(const simple_function& f, const consistent_map& c) {
  detail::require_validated(c);
  map_value sum;
  for (const auto& [v, value] : f.values()) sum = sum + value * evaluate(c, v);
  return sum;
}

/// Whether the lambda-integral vanishes: exactly for exact values, within
/// 1e-9 for doubles.
inline bool product_formula_check(const simple_function& f) {
  static const consistent_map lambda = make_builtin(builtin_map::lambda);
  auto total = integrate(f, lambda);
  if (total.is_exact()) return total.is_zero();
  return std::abs(total.to_double()) < 1e-9;
}

/// A class in Qbar^x / torsion with computable place values.
class algebraic_element {
 public:
  enum class kind { rational_number, cyclotomic_unit, explicit_function };

  static algebraic_element from_rational(const rational& q) {
    if (q == 0) throw domain_error(error_code::zero_element, "0 is not in the multiplicative group");
    algebraic_element e(kind::rational_number);
    e.value_ = abs(q);
    e.value_.canonicalize();
    return e;
  }

  /// The class of 1 - zeta_p.
  static algebraic_element from_cyclotomic_unit(natural p) {
    if (p < 3 || !arith::is_prime(p))
      throw domain_error(error_code::bad_prime, std::to_string(p) + " is not an odd prime");
    algebraic_element e(kind::cyclotomic_unit);
    e.prime_ = p;
    return e;
  }

  static algebraic_element from_function(simple_function f) {
    if (!product_formula_check(f))
      throw domain_error(error_code::not_in_group, "function violates the product formula");
    algebraic_element e(kind::explicit_function);
    e.function_ = std::move(f);
    return e;
  }

  kind type() const noexcept { return kind_; }
  const rational& value() const noexcept { return value_; }
  natural prime() const noexcept { return prime_; }
  const simple_function& function() const noexcept { return function_; }

 private:
  explicit algebraic_element(kind k) : kind_(k) {}

  kind kind_;
  rational value_;
  natural prime_ = 0;
  simple_function function_;
};

namespace detail {

// ord_p of a positive integer for every prime p dividing it.
inline std::map<natural, long> prime_valuations(mpz_class n) {
  std::map<natural, long> out;
  for (natural d = 2; mpz_class(d) * d <= n; ++d) {
    while (mpz_divisible_ui_p(n.get_mpz_t(), d)) {
      n /= d;
      ++out[d];
    }
  }
  if (n > 1) {
    if (!n.fits_ulong_p())
      throw domain_error(error_code::bad_prime, "prime factor exceeds machine range");
    ++out[n.get_ui()];
  }
  return out;
}

}  // namespace detail

/// f_alpha(y) = log ||alpha||_y.
inline simple_function f_alpha(const algebraic_element& alpha) {
  using kind = algebraic_element::kind;
  switch (alpha.type()) {
    case kind::rational_number: {
      std::map<natural, rational> infinite_logs;
      std::map<place, map_value> values;
      auto add = [&](const mpz_class& n, long sign) {
        for (auto [p, e] : detail::prime_valuations(n)) {
          infinite_logs[p] += sign * e;
          values.emplace(place(level(1), rational_place::finite(p), 0, place::unchecked),
                         map_value::log_of(p, rational(-sign * e)));
        }
      };
      add(alpha.value().get_num(), 1);
      add(alpha.value().get_den(), -1);
      if (!infinite_logs.empty())
        values.emplace(place(level(1), rational_place::infinite(), 0, place::unchecked),
                       map_value::log_linear(0, std::move(infinite_logs)));
      return simple_function(level(1), std::move(values));
    }
    case kind::cyclotomic_unit: {
      natural p = alpha.prime();
      level lvl(p);
      auto dp = static_cast<double>(p);
      std::map<place, map_value> values;
      values.emplace(place(lvl, rational_place::finite(p), 0, place::unchecked),
                     map_value::real(-std::log(dp) / (dp - 1)));
      for (const auto& v : places_above(lvl, rational_place::infinite())) {
        double a = static_cast<double>(v.rep());
        values.emplace(v, map_value::real(std::log(2 * std::sin(std::numbers::pi * a / dp))));
      }
      return simple_function(lvl, std::move(values));
    }
    case kind::explicit_function:
      return alpha.function();
  }
  return {};
}

/// Phi_c(alpha) = sum_v c(K, v) log ||alpha||_v.
inline map_value phi(const consistent_map& c, const algebraic_element& alpha) {
  return integrate(f_alpha(alpha), c);
}

}  // namespace placemeasure
