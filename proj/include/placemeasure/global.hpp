#pragma once

// Partitions of open sets by members of R, unconditional convergence of
// charge series over them, the index I(c), and extensions of a charge from R
// to the algebra A.
//
// A partition assigns to each rational place p a finite list of disjoint ring
// sets covering scope n Y(Q, p). Only finitely many places (the exceptional
// ones) carry an explicit list; every other place contributes its whole fiber
// in scope as a single part.

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "maps.hpp"

namespace placemeasure {

// ---------------------------------------------------------------------------
// Extended values in [-inf, inf].

class extended_value {
 public:
  enum class tag { finite, plus_infinity, minus_infinity };

  extended_value() = default;
  extended_value(map_value v) : value_(std::move(v)) {}  // NOLINT

  static extended_value plus_infinity() { return extended_value(tag::plus_infinity); }
  static extended_value minus_infinity() { return extended_value(tag::minus_infinity); }

  tag kind() const noexcept { return tag_; }
  bool is_finite() const noexcept { return tag_ == tag::finite; }
  const map_value& value() const noexcept { return value_; }

  extended_value operator-() const {
    switch (tag_) {
      case tag::plus_infinity: return minus_infinity();
      case tag::minus_infinity: return plus_infinity();
      case tag::finite: break;
    }
    return extended_value(-value_);
  }

  friend extended_value operator+(const extended_value& a, const extended_value& b) {
    if (a.is_finite() && b.is_finite()) return extended_value(a.value_ + b.value_);
    if (!a.is_finite() && !b.is_finite() && a.tag_ != b.tag_)
      throw domain_error(error_code::infinite_contradiction, "inf + (-inf) is undefined");
    return a.is_finite() ? b : a;
  }

  friend extended_value operator-(const extended_value& a, const extended_value& b) {
    return a + (-b);
  }

  std::string to_string() const {
    switch (tag_) {
      case tag::plus_infinity: return "+inf";
      case tag::minus_infinity: return "-inf";
      case tag::finite: break;
    }
    return value_.to_string();
  }

 private:
  explicit extended_value(tag t) : tag_(t) {}

  tag tag_ = tag::finite;
  map_value value_;
};

/// Same tag, and equal finite parts (exactly, or within the float tolerance).
inline bool same_value(const extended_value& a, const extended_value& b) {
  if (a.kind() != b.kind()) return false;
  return !a.is_finite() || approx_equal(a.value(), b.value());
}

inline std::ostream& operator<<(std::ostream& os, const extended_value& v) {
  return os << v.to_string();
}

// ---------------------------------------------------------------------------
// Partitions.

struct fiber_parts {
  rational_place base;
  std::vector<ring_set> parts;
};

class partition {
 public:
  /// The partition {Y(Q, p)} of Y.
  partition() : scope_(algebra_set::everything()) {}

  /// Validates that each listed fiber is split into disjoint nonempty parts
  /// covering scope n Y(Q, p) exactly.
  partition(algebra_set scope, std::vector<fiber_parts> exceptional,
            std::vector<rational_place> order = {})
      : scope_(std::move(scope)), order_(std::move(order)) {
    std::set<rational_place> seen;
    for (auto& entry : exceptional) {
      if (!seen.insert(entry.base).second)
        throw domain_error(error_code::not_a_partition,
                           "fiber " + entry.base.to_string() + " listed twice");
      for (auto& part : entry.parts) part = reduce(part);
      validate_fiber(entry);
      if (!is_default_split(entry)) exceptional_.push_back(std::move(entry));
    }
  }

  const algebra_set& scope() const noexcept { return scope_; }
  const std::vector<fiber_parts>& exceptional() const noexcept { return exceptional_; }
  const std::vector<rational_place>& order() const noexcept { return order_; }

  /// Only finitely many parts: the scope is compact.
  bool is_finite() const { return in_ring(scope_); }

  /// scope n Y(Q, p).
  ring_set target(rational_place p) const {
    return intersect(scope_, algebra_set(rational_fiber(p))).core();
  }

  std::vector<ring_set> parts_above(rational_place p) const {
    for (const auto& entry : exceptional_)
      if (entry.base == p) return entry.parts;
    auto t = target(p);
    if (t.empty()) return {};
    return {t};
  }

  /// Rational places where the partition or its scope is not the plain fiber.
  std::set<rational_place> touched() const {
    std::set<rational_place> out;
    for (const auto& entry : exceptional_) out.insert(entry.base);
    for (auto p : scope_.core().bases()) out.insert(p);
    return out;
  }

  /// Every part is a single basis set Y(K, v).
  bool is_basis() const {
    for (auto p : touched())
      for (const auto& part : parts_above(p))
        if (reduce(part).size() != 1) return false;
    return true;
  }

  /// Rational places in enumeration order: the declared order, then the
  /// exceptional fibers, then inf, 2, 3, 5, ...
  std::vector<rational_place> fiber_sequence(std::size_t min_parts) const {
    std::vector<rational_place> out;
    std::set<rational_place> seen;
    std::size_t parts = 0;
    auto visit = [&](rational_place p) {
      if (!seen.insert(p).second) return;
      auto n = parts_above(p).size();
      if (n == 0) return;
      out.push_back(p);
      parts += n;
    };
    for (auto p : order_) visit(p);
    for (const auto& entry : exceptional_) visit(entry.base);
    if (is_finite()) {
      for (auto p : scope_.core().bases()) visit(p);
      return out;
    }
    for (auto p = rational_place::infinite(); parts < min_parts; p = p.next()) visit(p);
    return out;
  }

  /// The first `count` parts in enumeration order (all of them, if fewer).
  std::vector<ring_set> first_parts(std::size_t count) const {
    std::vector<ring_set> out;
    for (auto p : fiber_sequence(count))
      for (auto& part : parts_above(p)) {
        if (out.size() == count) return out;
        out.push_back(std::move(part));
      }
    return out;
  }

  /// Same scope and the same parts above every place.
  friend bool operator==(const partition& a, const partition& b) {
    if (compare(a.scope_, b.scope_) != set_relation::equal) return false;
    auto places = a.touched();
    auto more = b.touched();
    places.insert(more.begin(), more.end());
    for (auto p : places) {
      auto pa = a.parts_above(p);
      auto pb = b.parts_above(p);
      if (pa.size() != pb.size()) return false;
      for (const auto& x : pa)
        if (std::none_of(pb.begin(), pb.end(), [&](const ring_set& y) { return x == y; }))
          return false;
    }
    return true;
  }

 private:
  void validate_fiber(const fiber_parts& entry) const {
    auto t = target(entry.base);
    ring_set covered;
    for (std::size_t i = 0; i < entry.parts.size(); ++i) {
      const auto& part = entry.parts[i];
      if (part.empty())
        throw domain_error(error_code::not_a_partition,
                           "empty part above " + entry.base.to_string());
      auto outside = subtract(part, t);
      if (!outside.empty())
        throw domain_error(error_code::not_a_partition,
                           "part " + part.to_string() + " leaves fiber " +
                               entry.base.to_string() + " in scope at " +
                               outside.places().front().to_string());
      auto overlap = intersect(part, covered);
      if (!overlap.empty())
        throw domain_error(error_code::not_a_partition,
                           "overlap at " + overlap.places().front().to_string());
      covered = unite(covered, part);
    }
    auto gap = subtract(t, covered);
    if (!gap.empty())
      throw domain_error(error_code::not_a_partition, "gap at " + gap.places().front().to_string());
  }

  bool is_default_split(const fiber_parts& entry) const {
    return entry.parts.size() == 1 && entry.parts.front() == target(entry.base);
  }

  algebra_set scope_;
  std::vector<fiber_parts> exceptional_;
  std::vector<rational_place> order_;
};

namespace detail {

inline void require_same_scope(const partition& a, const partition& b) {
  if (compare(a.scope(), b.scope()) != set_relation::equal)
    throw domain_error(error_code::scope_mismatch,
                       a.scope().to_string() + " vs " + b.scope().to_string());
}

inline std::set<rational_place> touched_by_both(const partition& a, const partition& b) {
  auto out = a.touched();
  auto more = b.touched();
  out.insert(more.begin(), more.end());
  return out;
}

}  // namespace detail

/// Grouping of the parts of a refinement: for each coarse part above a
/// touched fiber, the indices of the fine parts it is the union of.
struct refinement_result {
  bool refines = false;
  std::map<std::pair<rational_place, std::size_t>, std::vector<std::size_t>> groups;
};

inline refinement_result is_refinement(const partition& gamma, const partition& delta) {
  detail::require_same_scope(gamma, delta);
  refinement_result result;
  for (auto p : detail::touched_by_both(gamma, delta)) {
    auto fine = gamma.parts_above(p);
    auto coarse = delta.parts_above(p);
    for (std::size_t j = 0; j < coarse.size(); ++j) result.groups[{p, j}];
    for (std::size_t i = 0; i < fine.size(); ++i) {
      auto home = std::find_if(coarse.begin(), coarse.end(),
                               [&](const ring_set& b) { return is_subset(fine[i], b); });
      if (home == coarse.end()) {
        result.groups.clear();
        return result;
      }
      result.groups[{p, static_cast<std::size_t>(home - coarse.begin())}].push_back(i);
    }
  }
  result.refines = true;
  return result;
}

/// {A n B nonempty : A in gamma, B in delta}.
inline partition common_refinement(const partition& gamma, const partition& delta) {
  detail::require_same_scope(gamma, delta);
  std::vector<fiber_parts> exceptional;
  for (auto p : detail::touched_by_both(gamma, delta)) {
    fiber_parts entry{p, {}};
    for (const auto& a : gamma.parts_above(p))
      for (const auto& b : delta.parts_above(p))
        if (auto both = intersect(a, b); !both.empty()) entry.parts.push_back(std::move(both));
    if (!entry.parts.empty()) exceptional.push_back(std::move(entry));
  }
  return partition(gamma.scope(), std::move(exceptional), gamma.order());
}

struct prefix_check_result {
  bool holds = false;
  std::size_t coarse_terms = 0;  // N
  std::size_t fine_terms = 0;    // M_N
  map_value coarse_sum;
  map_value fine_sum;
};

/// Enumerates delta by `order` (falling back to delta's own order), lists the
/// parts of gamma group by group in the same order, and compares the first
/// M_N terms of the regrouped series with the first N terms of the coarse one.
inline prefix_check_result refine_prefix_check(const consistent_map& c, const partition& gamma,
                                               const partition& delta,
                                               const std::vector<rational_place>& order,
                                               std::size_t n) {
  detail::require_validated(c);
  auto grouping = is_refinement(gamma, delta);
  if (!grouping.refines)
    throw domain_error(error_code::not_a_refinement, "first partition does not refine the second");
  partition sequenced(delta.scope(), delta.exceptional(), order.empty() ? delta.order() : order);

  prefix_check_result result;
  for (auto p : sequenced.fiber_sequence(n)) {
    auto coarse = delta.parts_above(p);
    auto fine = gamma.parts_above(p);
    for (std::size_t j = 0; j < coarse.size() && result.coarse_terms < n; ++j) {
      result.coarse_sum = result.coarse_sum + charge(c, coarse[j]);
      ++result.coarse_terms;
      auto it = grouping.groups.find({p, j});
      if (it == grouping.groups.end()) {
        // Untouched fiber: the only fine part is the coarse part itself.
        result.fine_sum = result.fine_sum + charge(c, fine.front());
        ++result.fine_terms;
        continue;
      }
      for (auto i : it->second) {
        result.fine_sum = result.fine_sum + charge(c, fine[i]);
        ++result.fine_terms;
      }
    }
    if (result.coarse_terms == n) break;
  }
  result.holds = approx_equal(result.fine_sum, result.coarse_sum);
  return result;
}

// ---------------------------------------------------------------------------
// Unconditional convergence.

class classification {
 public:
  enum class tag { finite, plus_infinity, minus_infinity, conditional };

  static classification finite(map_value v) { return classification(tag::finite, std::move(v)); }
  static classification of(tag t) { return classification(t, {}); }

  tag kind() const noexcept { return tag_; }
  const map_value& value() const noexcept { return value_; }

  /// The limit, for non-conditional series.
  std::optional<extended_value> limit() const {
    switch (tag_) {
      case tag::finite: return extended_value(value_);
      case tag::plus_infinity: return extended_value::plus_infinity();
      case tag::minus_infinity: return extended_value::minus_infinity();
      case tag::conditional: break;
    }
    return std::nullopt;
  }

  std::string to_string() const {
    switch (tag_) {
      case tag::finite: return "finite " + value_.to_string();
      case tag::plus_infinity: return "+inf";
      case tag::minus_infinity: return "-inf";
      case tag::conditional: break;
    }
    return "conditional";
  }

 private:
  classification(tag t, map_value v) : tag_(t), value_(std::move(v)) {}
  tag tag_;
  map_value value_;
};

/// Whether the positive and the negative terms of the tail series diverge.
///
/// Over primes of one enumeration parity the tail term is A + r / log p with
/// A = lambda +- alternating. A nonzero A fixes the sign of all but finitely
/// many terms and makes them bounded away from 0; if A = 0 the terms are
/// r / log p, and sum 1 / log p diverges over either parity class.
inline std::pair<bool, bool> tail_divergence(const tail_rule& tail) {
  bool positive = false;
  bool negative = false;
  for (int s : {1, -1}) {
    rational a = tail.lambda + s * tail.alternating;
    int sign = a != 0 ? sgn(a) : sgn(tail.reciprocal_log);
    positive |= sign > 0;
    negative |= sign < 0;
  }
  return {positive, negative};
}

inline classification classify_series(const consistent_map& c, const partition& gamma) {
  detail::require_validated(c);
  auto special = gamma.touched();
  if (!gamma.is_finite()) {
    auto more = c.special_places();
    special.insert(more.begin(), more.end());
  }
  map_value sum;
  for (auto p : special)
    for (const auto& part : gamma.parts_above(p)) sum = sum + charge(c, part);
  if (gamma.is_finite()) return classification::finite(sum);

  using tag = classification::tag;
  auto [positive, negative] = tail_divergence(c.base().tail);
  if (positive && negative) return classification::of(tag::conditional);
  if (positive) return classification::of(tag::plus_infinity);
  if (negative) return classification::of(tag::minus_infinity);
  return classification::finite(sum);
}

inline bool is_globally_consistent(const consistent_map& c) {
  return classify_series(c, partition()).kind() != classification::tag::conditional;
}

/// I(c): the common unconditional sum over partitions of Y.
inline extended_value index(const consistent_map& c) {
  auto limit = classify_series(c, partition()).limit();
  if (!limit) throw domain_error(error_code::not_globally_consistent, "series over Y is conditional");
  return *limit;
}

/// The extension of the charge of c to A: mu on R, r - mu(A^c) on complements.
inline extended_value r_extension(const consistent_map& c, const extended_value& r,
                                  const algebra_set& a) {
  auto inner = extended_value(charge(c, a.core()));
  return in_ring(a) ? inner : r - inner;
}

/// The measure on A extending c; requires global consistency.
inline extended_value nu(const consistent_map& c, const algebra_set& a) {
  if (in_ring(a)) return extended_value(charge(c, a.core()));
  return r_extension(c, index(c), a);
}

/// Countable additivity of the r-extension.
inline bool countably_additive(const consistent_map& c, const extended_value& r) {
  return is_globally_consistent(c) && same_value(r, index(c));
}

// ---------------------------------------------------------------------------
// Additivity of nu on disjoint families.

enum class additivity_case {
  finite_ring,              // finitely many ring parts
  finite_with_complement,   // finitely many ring parts and one complemented part
  infinite_ring,            // infinitely many ring parts
  impossible_configuration  // infinitely many ring parts and one complemented part
};

inline std::string_view additivity_case_name(additivity_case k) {
  switch (k) {
    case additivity_case::finite_ring: return "I";
    case additivity_case::finite_with_complement: return "II";
    case additivity_case::infinite_ring: return "III";
    case additivity_case::impossible_configuration: return "IV (ImpossibleConfiguration)";
  }
  return "?";
}

struct additivity_report {
  additivity_case which = additivity_case::finite_ring;
  bool holds = false;
  extended_value sum;
  extended_value union_value;
};

inline additivity_report additivity_check(const consistent_map& c,
                                          const std::vector<algebra_set>& parts) {
  algebra_set all;
  std::size_t complemented = 0;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (!in_ring(parts[i])) ++complemented;
    if (!intersect(all, parts[i]).is_empty())
      throw domain_error(error_code::not_disjoint,
                         "part " + std::to_string(i) + " meets an earlier part");
    all = unite(all, parts[i]);
  }
  additivity_report report;
  report.which = complemented ? additivity_case::finite_with_complement : additivity_case::finite_ring;
  report.union_value = nu(c, all);
  for (const auto& part : parts) report.sum = report.sum + nu(c, part);
  report.holds = same_value(report.sum, report.union_value);
  return report;
}

/// A partition of an open set, together with one optional further part
/// disjoint from it.
inline additivity_report additivity_check(const consistent_map& c, const partition& gamma,
                                          const std::optional<algebra_set>& extra = std::nullopt) {
  if (gamma.is_finite()) {
    std::vector<algebra_set> parts;
    for (auto p : gamma.touched())
      for (const auto& part : gamma.parts_above(p)) parts.emplace_back(part);
    if (extra) parts.push_back(*extra);
    return additivity_check(c, parts);
  }
  additivity_report report;
  if (extra && !in_ring(*extra)) {
    // The union of infinitely many disjoint ring parts is never compact, and
    // two non-compact members of A always meet.
    report.which = additivity_case::impossible_configuration;
    return report;
  }
  report.which = additivity_case::infinite_ring;
  algebra_set all = gamma.scope();
  if (extra) {
    if (!intersect(all, *extra).is_empty())
      throw domain_error(error_code::not_disjoint, "extra part meets the partitioned set");
    all = unite(all, *extra);
  }
  report.union_value = nu(c, all);
  auto series = classify_series(c, gamma).limit();
  if (!series) return report;
  report.sum = *series;
  if (extra) report.sum = report.sum + nu(c, *extra);
  report.holds = same_value(report.sum, report.union_value);
  return report;
}

}  // namespace placemeasure
