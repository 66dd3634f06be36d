#pragma once

// The ring R of finite unions of basis sets Y(K, v), and the algebra
// A = R u {complements of members of R}.
//
// A ring_set stores a finite set of places at one common level; it denotes the
// union of their basis sets. Any member of R can be written at any multiple of
// its minimal level, and `reduce` picks the minimal one, so equality of reduced
// forms is equality of subsets of Y.

#include <algorithm>
#include <iterator>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "tower.hpp"

namespace placemeasure {

class ring_set {
 public:
  ring_set() = default;

  /// Places must all sit at `lvl`. The result is not reduced.
  ring_set(level lvl, std::vector<place> places) : level_(lvl), places_(std::move(places)) {
    for (const auto& v : places_)
      if (v.at() != lvl)
        throw domain_error(error_code::invalid_place,
                           v.to_string() + " is not at level " + std::to_string(lvl.conductor()));
    std::sort(places_.begin(), places_.end());
    places_.erase(std::unique(places_.begin(), places_.end()), places_.end());
    if (places_.empty()) level_ = level(1);
  }

  level at() const noexcept { return level_; }
  const std::vector<place>& places() const noexcept { return places_; }
  bool empty() const noexcept { return places_.empty(); }
  std::size_t size() const noexcept { return places_.size(); }

  /// The part of this set lying above one rational place.
  ring_set above(rational_place base) const {
    std::vector<place> kept;
    for (const auto& v : places_)
      if (v.base() == base) kept.push_back(v);
    return ring_set(level_, std::move(kept));
  }

  /// Rational places below members, in enumeration order.
  std::vector<rational_place> bases() const {
    std::vector<rational_place> out;
    for (const auto& v : places_)
      if (out.empty() || out.back() != v.base()) out.push_back(v.base());
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }

  std::string to_string() const {
    std::string s = "[";
    for (std::size_t i = 0; i < places_.size(); ++i) {
      if (i) s += ", ";
      s += places_[i].to_string();
    }
    return s + "]";
  }

  /// Syntactic equality; compare reduced forms for set equality.
  bool same_representation(const ring_set& other) const {
    return level_ == other.level_ && places_ == other.places_;
  }

 private:
  level level_;
  std::vector<place> places_;
};

inline ring_set lift(const ring_set& a, level superlevel) {
  if (!a.at().divides(superlevel))
    throw domain_error(error_code::level_not_divisible,
                       std::to_string(a.at().conductor()) + " does not divide " +
                           std::to_string(superlevel.conductor()));
  if (a.empty()) return a;
  std::vector<place> out;
  for (const auto& v : a.places()) {
    auto f = fiber(v, superlevel);
    out.insert(out.end(), f.begin(), f.end());
  }
  return ring_set(superlevel, std::move(out));
}

namespace detail {

inline std::vector<level> canonical_divisors(level n) {
  std::vector<level> out;
  natural c = n.conductor();
  for (natural d = 1; d * d <= c; ++d) {
    if (c % d != 0) continue;
    out.emplace_back(d);
    out.emplace_back(c / d);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

/// Number of places of the fiber of `lower` at `upper`'s level, given that
/// `upper` lies in that fiber. All places of a fiber share one local degree.
inline natural fiber_size(const place& lower, const place& upper) {
  return local_degree(lower) * upper.at().degree() / lower.at().degree() / local_degree(upper);
}

}  // namespace detail

/// Minimal-level representation of the same subset of Y.
inline ring_set reduce(const ring_set& a) {
  if (a.empty()) return ring_set();
  for (level sub : detail::canonical_divisors(a.at())) {
    if (sub == a.at()) return a;
    std::map<place, std::pair<natural, place>> counts;
    for (const auto& v : a.places()) {
      auto [it, fresh] = counts.try_emplace(restrict(v, sub), 0, v);
      ++it->second.first;
    }
    bool full = std::all_of(counts.begin(), counts.end(), [](const auto& entry) {
      return entry.second.first == detail::fiber_size(entry.first, entry.second.second);
    });
    if (!full) continue;
    std::vector<place> lowered;
    for (const auto& [lower, count] : counts) lowered.push_back(lower);
    return ring_set(sub, std::move(lowered));
  }
  return a;
}

inline bool operator==(const ring_set& a, const ring_set& b) {
  return reduce(a).same_representation(reduce(b));
}

inline ring_set basis_set(const place& v) { return reduce(ring_set(v.at(), {v})); }

/// Y(Q, p): every place above one rational place.
inline ring_set rational_fiber(rational_place base) {
  return ring_set(level(1), {place(level(1), base, 0, place::unchecked)});
}

enum class set_op { unite, intersect, subtract };

/// Boolean operation on members of R, computed at the compositum level.
inline ring_set combine(set_op op, const ring_set& a, const ring_set& b) {
  level top = compositum(a.at(), b.at());
  auto la = lift(a, top);
  auto lb = lift(b, top);
  std::vector<place> out;
  const auto& pa = la.places();
  const auto& pb = lb.places();
  switch (op) {
    case set_op::unite:
      std::set_union(pa.begin(), pa.end(), pb.begin(), pb.end(), std::back_inserter(out));
      break;
    case set_op::intersect:
      std::set_intersection(pa.begin(), pa.end(), pb.begin(), pb.end(), std::back_inserter(out));
      break;
    case set_op::subtract:
      std::set_difference(pa.begin(), pa.end(), pb.begin(), pb.end(), std::back_inserter(out));
      break;
  }
  return reduce(ring_set(top, std::move(out)));
}

inline ring_set unite(const ring_set& a, const ring_set& b) { return combine(set_op::unite, a, b); }
inline ring_set intersect(const ring_set& a, const ring_set& b) {
  return combine(set_op::intersect, a, b);
}
inline ring_set subtract(const ring_set& a, const ring_set& b) {
  return combine(set_op::subtract, a, b);
}

inline bool is_subset(const ring_set& a, const ring_set& b) { return subtract(a, b).empty(); }

/// Union of the basis sets of `parts`, as one canonical member of R.
inline ring_set disjoint_decomposition(const std::vector<place>& parts) {
  level top(1);
  for (const auto& v : parts) top = compositum(top, v.at());
  std::vector<place> out;
  for (const auto& v : parts) {
    auto f = fiber(v, top);
    out.insert(out.end(), f.begin(), f.end());
  }
  return reduce(ring_set(top, std::move(out)));
}

enum class polarity { positive, complemented };

/// A member of the algebra A: either a ring set or the complement of one.
class algebra_set {
 public:
  algebra_set() = default;
  algebra_set(const ring_set& core) : polarity_(polarity::positive), core_(reduce(core)) {}  // NOLINT
  algebra_set(polarity pol, const ring_set& core) : polarity_(pol), core_(reduce(core)) {}

  static algebra_set everything() { return algebra_set(polarity::complemented, ring_set()); }
  static algebra_set nothing() { return algebra_set(); }

  polarity kind() const noexcept { return polarity_; }
  const ring_set& core() const noexcept { return core_; }
  bool is_empty() const noexcept { return polarity_ == polarity::positive && core_.empty(); }

  std::string to_string() const {
    if (polarity_ == polarity::complemented && core_.empty()) return "Y";
    return (polarity_ == polarity::complemented ? "~" : "") + core_.to_string();
  }

  friend bool operator==(const algebra_set& a, const algebra_set& b) {
    return a.polarity_ == b.polarity_ && a.core_.same_representation(b.core_);
  }

 private:
  polarity polarity_ = polarity::positive;
  ring_set core_;
};

/// Membership in R; complemented sets are never compact.
inline bool in_ring(const algebra_set& a) { return a.kind() == polarity::positive; }

inline algebra_set complement(const algebra_set& a) {
  return algebra_set(in_ring(a) ? polarity::complemented : polarity::positive, a.core());
}

inline algebra_set combine(set_op op, const algebra_set& a, const algebra_set& b) {
  const auto& x = a.core();
  const auto& y = b.core();
  bool pa = in_ring(a);
  bool pb = in_ring(b);
  switch (op) {
    case set_op::unite:
      if (pa && pb) return unite(x, y);
      if (pa) return {polarity::complemented, subtract(y, x)};
      if (pb) return {polarity::complemented, subtract(x, y)};
      return {polarity::complemented, intersect(x, y)};
    case set_op::intersect:
      if (pa && pb) return intersect(x, y);
      if (pa) return subtract(x, y);
      if (pb) return subtract(y, x);
      return {polarity::complemented, unite(x, y)};
    case set_op::subtract:
      if (pa && pb) return subtract(x, y);
      if (pa) return intersect(x, y);                    // A n B^c, B^c = y
      if (pb) return {polarity::complemented, unite(x, y)};  // (A \ B)^c = A^c u B
      return subtract(y, x);                             // B^c \ A^c
  }
  return {};
}

inline algebra_set unite(const algebra_set& a, const algebra_set& b) {
  return combine(set_op::unite, a, b);
}
inline algebra_set intersect(const algebra_set& a, const algebra_set& b) {
  return combine(set_op::intersect, a, b);
}
inline algebra_set subtract(const algebra_set& a, const algebra_set& b) {
  return combine(set_op::subtract, a, b);
}

enum class set_relation { equal, subset, superset, disjoint, overlapping };

inline std::string_view relation_name(set_relation r) {
  switch (r) {
    case set_relation::equal: return "equal";
    case set_relation::subset: return "subset";
    case set_relation::superset: return "superset";
    case set_relation::disjoint: return "disjoint";
    case set_relation::overlapping: return "overlapping";
  }
  return "?";
}

inline set_relation compare(const algebra_set& a, const algebra_set& b) {
  bool sub = subtract(a, b).is_empty();
  bool super = subtract(b, a).is_empty();
  if (sub && super) return set_relation::equal;
  if (sub) return set_relation::subset;
  if (super) return set_relation::superset;
  if (intersect(a, b).is_empty()) return set_relation::disjoint;
  return set_relation::overlapping;
}

}  // namespace placemeasure
