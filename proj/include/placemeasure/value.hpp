#pragma once

// Values of consistent maps, charges and integrals.
//
// Four representations: an exact rational q; q / log p for a single prime p;
// a log-linear form q0 + sum q_p log p; and a double. Sums and products stay
// exact whenever the result is representable in one of the exact forms, and
// fall back to double otherwise.

#include <gmpxx.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <string>
#include <variant>

#include "arith.hpp"

namespace placemeasure {

using rational = mpq_class;

inline rational canonical(rational q) {
  q.canonicalize();
  return q;
}

enum class value_kind { exact_rational, rational_over_log, log_linear, real };

/// Relative tolerance used whenever a comparison involves a double.
inline constexpr double float_tolerance = 1e-12;

class map_value {
 public:
  struct exact_part {
    rational q;
  };
  struct over_log_part {
    rational q;
    natural prime;
  };
  struct log_linear_part {
    rational constant;
    std::map<natural, rational> logs;  // nonzero coefficients only
  };
  struct real_part {
    double x;
  };

  map_value() : repr_(exact_part{rational(0)}) {}

  static map_value exact(const rational& q) { return map_value(exact_part{canonical(q)}); }
  static map_value exact(long n) { return exact(rational(n)); }

  static map_value over_log(const rational& q, natural p) {
    if (q == 0) return exact(0);
    return map_value(over_log_part{canonical(q), p});
  }

  static map_value log_linear(const rational& constant, std::map<natural, rational> logs) {
    std::erase_if(logs, [](const auto& entry) { return entry.second == 0; });
    for (auto& entry : logs) entry.second.canonicalize();
    return map_value(log_linear_part{canonical(constant), std::move(logs)});
  }

  /// q * log p.
  static map_value log_of(natural p, const rational& q = rational(1)) {
    return log_linear(rational(0), {{p, q}});
  }

  static map_value real(double x) { return map_value(real_part{x}); }

  value_kind kind() const noexcept { return static_cast<value_kind>(repr_.index()); }
  bool is_exact() const noexcept { return kind() != value_kind::real; }

  bool is_zero() const {
    return std::visit(
        [](const auto& r) -> bool {
          using T = std::decay_t<decltype(r)>;
          if constexpr (std::is_same_v<T, exact_part>) return r.q == 0;
          else if constexpr (std::is_same_v<T, over_log_part>) return r.q == 0;
          else if constexpr (std::is_same_v<T, log_linear_part>) return r.constant == 0 && r.logs.empty();
          else return r.x == 0.0;
        },
        repr_);
  }

  bool is_exact_zero() const { return is_exact() && is_zero(); }

  double to_double() const {
    return std::visit(
        [](const auto& r) -> double {
          using T = std::decay_t<decltype(r)>;
          if constexpr (std::is_same_v<T, exact_part>) return r.q.get_d();
          else if constexpr (std::is_same_v<T, over_log_part>)
            return r.q.get_d() / std::log(static_cast<double>(r.prime));
          else if constexpr (std::is_same_v<T, log_linear_part>) {
            double s = r.constant.get_d();
            for (const auto& [p, q] : r.logs) s += q.get_d() * std::log(static_cast<double>(p));
            return s;
          } else return r.x;
        },
        repr_);
  }

  const exact_part* if_exact() const { return std::get_if<exact_part>(&repr_); }
  const over_log_part* if_over_log() const { return std::get_if<over_log_part>(&repr_); }
  const log_linear_part* if_log_linear() const { return std::get_if<log_linear_part>(&repr_); }

  /// Sign of the value: -1, 0 or +1.
  int sign() const {
    double d = to_double();
    if (const auto* e = if_exact()) return sgn(e->q);
    if (const auto* o = if_over_log()) return sgn(o->q);
    return d > 0 ? 1 : (d < 0 ? -1 : 0);
  }

  map_value scaled(const rational& r) const {
    if (r == 0) return exact(0);
    return std::visit(
        [&](const auto& v) -> map_value {
          using T = std::decay_t<decltype(v)>;
          if constexpr (std::is_same_v<T, exact_part>) return exact(v.q * r);
          else if constexpr (std::is_same_v<T, over_log_part>) return over_log(v.q * r, v.prime);
          else if constexpr (std::is_same_v<T, log_linear_part>) {
            auto logs = v.logs;
            for (auto& [p, q] : logs) q *= r;
            return log_linear(v.constant * r, std::move(logs));
          } else return real(v.x * r.get_d());
        },
        repr_);
  }

  map_value operator-() const { return scaled(rational(-1)); }

  friend map_value operator+(const map_value& a, const map_value& b) {
    if (a.is_exact_zero()) return b;
    if (b.is_exact_zero()) return a;
    if (!a.is_exact() || !b.is_exact()) return real(a.to_double() + b.to_double());
    const auto* ea = a.if_exact();
    const auto* eb = b.if_exact();
    if (ea && eb) return exact(ea->q + eb->q);
    const auto* oa = a.if_over_log();
    const auto* ob = b.if_over_log();
    if (oa && ob && oa->prime == ob->prime) return over_log(oa->q + ob->q, oa->prime);
    if (oa || ob) return real(a.to_double() + b.to_double());
    // Remaining cases: rational or log-linear on both sides, at least one log-linear.
    auto la = a.as_log_linear();
    auto lb = b.as_log_linear();
    for (const auto& [p, q] : lb.logs) la.logs[p] += q;
    return log_linear(la.constant + lb.constant, std::move(la.logs));
  }

  friend map_value operator-(const map_value& a, const map_value& b) { return a + (-b); }

  /// Pointwise product, used to pair a function value with a map value.
  friend map_value operator*(const map_value& a, const map_value& b) {
    if (a.is_exact_zero() || b.is_exact_zero()) return exact(0);
    if (!a.is_exact() || !b.is_exact()) return real(a.to_double() * b.to_double());
    if (const auto* e = a.if_exact()) return b.scaled(e->q);
    if (const auto* e = b.if_exact()) return a.scaled(e->q);
    const auto* la = a.if_log_linear();
    const auto* lb = b.if_log_linear();
    if (la && la->logs.empty()) return b.scaled(la->constant);
    if (lb && lb->logs.empty()) return a.scaled(lb->constant);
    const auto* o = a.if_over_log() ? a.if_over_log() : b.if_over_log();
    const auto* l = la ? la : lb;
    // (q / log p) * (c log p) = q c.
    if (o && l && l->constant == 0 && l->logs.size() == 1 && l->logs.begin()->first == o->prime)
      return exact(o->q * l->logs.begin()->second);
    return real(a.to_double() * b.to_double());
  }

  std::string to_string() const {
    return std::visit(
        [](const auto& r) -> std::string {
          using T = std::decay_t<decltype(r)>;
          if constexpr (std::is_same_v<T, exact_part>) return r.q.get_str();
          else if constexpr (std::is_same_v<T, over_log_part>)
            return r.q.get_str() + "/log(" + std::to_string(r.prime) + ")";
          else if constexpr (std::is_same_v<T, log_linear_part>) {
            std::string s;
            auto append = [&s](const rational& q, const std::string& body) {
              if (s.empty()) {
                s = (q < 0 ? "-" : "") + body;
              } else {
                s += q < 0 ? " - " : " + ";
                s += body;
              }
            };
            for (const auto& [p, q] : r.logs)
              append(q, rational(abs(q)).get_str() + "*log(" + std::to_string(p) + ")");
            if (r.constant != 0 || s.empty()) append(r.constant, rational(abs(r.constant)).get_str());
            return s;
          } else {
            char buf[40];
            std::snprintf(buf, sizeof buf, "%.12g", r.x);
            return std::string("≈ ") + buf;
          }
        },
        repr_);
  }

 private:
  using repr = std::variant<exact_part, over_log_part, log_linear_part, real_part>;

  explicit map_value(repr r) : repr_(std::move(r)) {}

  log_linear_part as_log_linear() const {
    if (const auto* e = if_exact()) return {e->q, {}};
    return *if_log_linear();
  }

  repr repr_;
};

/// True when both values are exact and their difference is exactly zero.
inline bool exactly_equal(const map_value& a, const map_value& b) {
  if (!a.is_exact() || !b.is_exact()) return false;
  return (a - b).is_exact_zero();
}

/// Exact equality for exact values, otherwise agreement within `tol`
/// relative to max(1, |a|, |b|).
inline bool approx_equal(const map_value& a, const map_value& b, double tol = float_tolerance) {
  if (a.is_exact() && b.is_exact()) {
    auto d = a - b;
    if (d.is_exact()) return d.is_zero();
  }
  double x = a.to_double();
  double y = b.to_double();
  return std::abs(x - y) <= tol * std::max({1.0, std::abs(x), std::abs(y)});
}

inline std::ostream& operator<<(std::ostream& os, const map_value& v) { return os << v.to_string(); }

}  // namespace placemeasure
