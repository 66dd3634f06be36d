#pragma once

// Consistent maps c(K, v), given declaratively: a rule on the places of Q plus
// a finite chain of override tables at increasing levels. Below the deepest
// table covering a rational place, values are spread proportionally to lambda.
//
// Concretely, c is the charge of the set function
//   mu(A) = sum over level-D places x of c_D(x) * lambda(A n Y(D, x)) / lambda(Y(D, x)),
// where D is the deepest level with data above the relevant prime (D = 1 with
// the base rule when there are no overrides). Such a mu is finitely additive,
// so c is consistent as soon as the tables agree on fiber sums.

#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "sets.hpp"
#include "value.hpp"

namespace placemeasure {

/// Values assigned to rational places outside the explicit table, as a linear
/// combination of three families:
///   lambda:         c(Q, p) = q
///   reciprocal_log: c(Q, p) = q / log p        (finite p only)
///   alternating:    c(Q, p_n) = q * (-1)^n     (p_1 = inf, p_2 = 2, p_3 = 3, ...)
struct tail_rule {
  rational lambda;
  rational reciprocal_log;
  rational alternating;

  bool is_zero() const { return lambda == 0 && reciprocal_log == 0 && alternating == 0; }

  map_value at(rational_place p) const {
    map_value v = map_value::exact(lambda);
    if (alternating != 0) {
      rational s = p.enumeration_index() % 2 == 0 ? alternating : rational(-alternating);
      v = v + map_value::exact(s);
    }
    if (reciprocal_log != 0 && !p.is_infinite()) v = v + map_value::over_log(reciprocal_log, p.prime());
    return v;
  }

  friend tail_rule operator+(const tail_rule& a, const tail_rule& b) {
    return {a.lambda + b.lambda, a.reciprocal_log + b.reciprocal_log, a.alternating + b.alternating};
  }
  tail_rule scaled(const rational& r) const {
    return {lambda * r, reciprocal_log * r, alternating * r};
  }
  friend bool operator==(const tail_rule&, const tail_rule&) = default;
};

struct base_assignment {
  std::map<rational_place, map_value> table;
  tail_rule tail;

  map_value at(rational_place p) const {
    if (auto it = table.find(p); it != table.end()) return it->second;
    return tail.at(p);
  }
};

struct override_level {
  level at;
  std::map<place, map_value> entries;

  std::set<rational_place> bases() const {
    std::set<rational_place> out;
    for (const auto& [v, value] : entries) out.insert(v.base());
    return out;
  }
};

using override_chain = std::vector<override_level>;

enum class builtin_map { lambda, omega, alternating };

class consistent_map {
 public:
  /// Validates the override chain against the base rule.
  static consistent_map from_spec(base_assignment base, override_chain overrides) {
    consistent_map c(std::move(base), std::move(overrides));
    c.validate();
    c.validated_ = true;
    return c;
  }

  /// Builds without validation; evaluation refuses such maps.
  static consistent_map unchecked(base_assignment base, override_chain overrides) {
    return consistent_map(std::move(base), std::move(overrides));
  }

  bool validated() const noexcept { return validated_; }
  const base_assignment& base() const noexcept { return base_; }
  const override_chain& overrides() const noexcept { return overrides_; }

  /// Rational places carrying override data.
  std::set<rational_place> exceptional() const {
    std::set<rational_place> out;
    for (const auto& lvl : overrides_) {
      auto b = lvl.bases();
      out.insert(b.begin(), b.end());
    }
    return out;
  }

  /// The deepest override table above `p`, or nullptr.
  const override_level* deepest_for(rational_place p) const {
    for (auto it = overrides_.rbegin(); it != overrides_.rend(); ++it)
      for (const auto& [v, value] : it->entries)
        if (v.base() == p) return &*it;
    return nullptr;
  }

  /// Rational places whose value may differ from the tail rule.
  std::set<rational_place> special_places() const {
    auto out = exceptional();
    for (const auto& [p, v] : base_.table) out.insert(p);
    return out;
  }

 private:
  consistent_map(base_assignment base, override_chain overrides)
      : base_(std::move(base)), overrides_(std::move(overrides)) {}

  void validate() const {
    if (base_.tail.reciprocal_log != 0 && !base_.table.contains(rational_place::infinite()))
      throw domain_error(error_code::invalid_override,
                         "a reciprocal-log tail needs an explicit value at inf");
    for (std::size_t i = 0; i < overrides_.size(); ++i) {
      const auto& cur = overrides_[i];
      if (i > 0 && (!overrides_[i - 1].at.divides(cur.at) || overrides_[i - 1].at == cur.at))
        throw domain_error(error_code::not_a_chain,
                           std::to_string(overrides_[i - 1].at.conductor()) + " then " +
                               std::to_string(cur.at.conductor()));
      for (const auto& [v, value] : cur.entries)
        if (v.at() != cur.at)
          throw domain_error(error_code::invalid_override,
                             v.to_string() + " listed under level " +
                                 std::to_string(cur.at.conductor()));
      for (rational_place p : cur.bases()) {
        for (const auto& w : places_above(cur.at, p))
          if (!cur.entries.contains(w))
            throw domain_error(error_code::invalid_override, "partial fiber: missing " + w.to_string());
        check_fiber_sums(i, p);
      }
    }
  }

  void check_fiber_sums(std::size_t index, rational_place p) const {
    const auto& cur = overrides_[index];
    const override_level* parent = nullptr;
    for (std::size_t j = index; j-- > 0;)
      if (overrides_[j].bases().contains(p)) {
        parent = &overrides_[j];
        break;
      }
    std::vector<std::pair<place, map_value>> coarse;
    if (parent) {
      for (const auto& [v, value] : parent->entries)
        if (v.base() == p) coarse.emplace_back(v, value);
    } else {
      coarse.emplace_back(place(level(1), p, 0, place::unchecked), base_.at(p));
    }
    for (const auto& [v, expected] : coarse) {
      map_value sum;
      for (const auto& w : fiber(v, cur.at)) sum = sum + cur.entries.at(w);
      if (!approx_equal(sum, expected))
        throw domain_error(error_code::invalid_override,
                           "fiber sum over " + v.to_string() + " is " + sum.to_string() +
                               ", expected " + expected.to_string());
    }
  }

  base_assignment base_;
  override_chain overrides_;
  bool validated_ = false;
};

inline consistent_map make_builtin(builtin_map which) {
  base_assignment base;
  switch (which) {
    case builtin_map::lambda:
      base.tail.lambda = 1;
      break;
    case builtin_map::omega:
      base.table.emplace(rational_place::infinite(), map_value::exact(0));
      base.tail.reciprocal_log = -1;
      break;
    case builtin_map::alternating:
      base.tail.alternating = 1;
      break;
  }
  return consistent_map::from_spec(std::move(base), {});
}

namespace detail {

inline rational lambda_ratio(const place& fine, const place& coarse) {
  return canonical(rational(local_degree(fine) * coarse.at().degree(),
                           fine.at().degree() * local_degree(coarse)));
}

inline void require_validated(const consistent_map& c) {
  if (!c.validated())
    throw domain_error(error_code::not_validated, "map has not passed validation");
}

}  // namespace detail

inline map_value evaluate(const consistent_map& c, const place& w) {
  detail::require_validated(c);
  const override_level* deep = c.deepest_for(w.base());
  if (!deep) {
    place root(level(1), w.base(), 0, place::unchecked);
    return c.base().at(w.base()).scaled(detail::lambda_ratio(w, root));
  }
  level top = compositum(w.at(), deep->at);
  if (top == w.at()) {
    place x = restrict(w, deep->at);
    return deep->entries.at(x).scaled(detail::lambda_ratio(w, x));
  }
  map_value sum;
  for (const auto& y : fiber(w, top)) {
    place x = restrict(y, deep->at);
    sum = sum + deep->entries.at(x).scaled(detail::lambda_ratio(y, x));
  }
  return sum;
}

/// mu(A) = sum of c over the places representing A.
inline map_value charge(const consistent_map& c, const ring_set& a) {
  detail::require_validated(c);
  map_value sum;
  for (const auto& v : a.places()) sum = sum + evaluate(c, v);
  return sum;
}

/// c(Q, inf) = 0.
inline bool infinity_zero(const consistent_map& c) {
  return evaluate(c, place(level(1), rational_place::infinite(), 0, place::unchecked)).is_zero();
}

inline consistent_map scale(const rational& r, const consistent_map& c) {
  detail::require_validated(c);
  base_assignment base;
  for (const auto& [p, v] : c.base().table) base.table.emplace(p, v.scaled(r));
  base.tail = c.base().tail.scaled(r);
  override_chain chain = c.overrides();
  for (auto& lvl : chain)
    for (auto& [v, value] : lvl.entries) value = value.scaled(r);
  return consistent_map::from_spec(std::move(base), std::move(chain));
}

/// Pointwise sum. Override data of both operands is merged into a single table
/// at the compositum of their deepest levels.
inline consistent_map add(const consistent_map& c, const consistent_map& d) {
  detail::require_validated(c);
  detail::require_validated(d);
  base_assignment base;
  base.tail = c.base().tail + d.base().tail;
  std::set<rational_place> keys;
  for (const auto& [p, v] : c.base().table) keys.insert(p);
  for (const auto& [p, v] : d.base().table) keys.insert(p);
  auto exc = c.exceptional();
  for (auto p : d.exceptional()) exc.insert(p);
  keys.insert(exc.begin(), exc.end());
  for (auto p : keys) base.table.emplace(p, c.base().at(p) + d.base().at(p));

  override_chain chain;
  if (!exc.empty()) {
    level top(1);
    for (const auto& lvl : c.overrides()) top = compositum(top, lvl.at);
    for (const auto& lvl : d.overrides()) top = compositum(top, lvl.at);
    override_level merged{top, {}};
    for (auto p : exc)
      for (const auto& w : places_above(top, p))
        merged.entries.emplace(w, evaluate(c, w) + evaluate(d, w));
    chain.push_back(std::move(merged));
  }
  return consistent_map::from_spec(std::move(base), std::move(chain));
}

/// Rebuilds a map from the values of its charge on basis sets.
inline consistent_map map_from_charge(const consistent_map& c) {
  detail::require_validated(c);
  base_assignment base;
  base.tail = c.base().tail;
  for (auto p : c.special_places()) base.table.emplace(p, charge(c, rational_fiber(p)));
  override_chain chain;
  for (const auto& lvl : c.overrides()) {
    override_level rebuilt{lvl.at, {}};
    for (const auto& [w, value] : lvl.entries) rebuilt.entries.emplace(w, charge(c, basis_set(w)));
    chain.push_back(std::move(rebuilt));
  }
  return consistent_map::from_spec(std::move(base), std::move(chain));
}

}  // namespace placemeasure
