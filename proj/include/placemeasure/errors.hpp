#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace placemeasure {

enum class error_code {
  invalid_level,
  invalid_place,
  level_not_divisible,
  invalid_override,
  not_a_chain,
  not_validated,
  zero_element,
  bad_prime,
  not_in_group,
  not_a_partition,
  scope_mismatch,
  not_a_refinement,
  not_globally_consistent,
  not_disjoint,
  infinite_contradiction,
};

constexpr std::string_view error_name(error_code code) noexcept {
  switch (code) {
    case error_code::invalid_level: return "InvalidLevel";
    case error_code::invalid_place: return "InvalidPlace";
    case error_code::level_not_divisible: return "LevelNotDivisible";
    case error_code::invalid_override: return "InvalidOverride";
    case error_code::not_a_chain: return "NotAChain";
    case error_code::not_validated: return "NotValidated";
    case error_code::zero_element: return "ZeroElement";
    case error_code::bad_prime: return "BadPrime";
    case error_code::not_in_group: return "NotInGroup";
    case error_code::not_a_partition: return "NotAPartition";
    case error_code::scope_mismatch: return "ScopeMismatch";
    case error_code::not_a_refinement: return "NotARefinement";
    case error_code::not_globally_consistent: return "NotGloballyConsistent";
    case error_code::not_disjoint: return "NotDisjoint";
    case error_code::infinite_contradiction: return "InfiniteContradiction";
  }
  return "Unknown";
}

/// Raised by library operations when a mathematical precondition fails.
class domain_error : public std::runtime_error {
 public:
  domain_error(error_code code, const std::string& detail)
      : std::runtime_error(std::string(error_name(code)) + ": " + detail), code_(code) {}

  error_code code() const noexcept { return code_; }
  std::string_view name() const noexcept { return error_name(code_); }

 private:
  error_code code_;
};

/// Raised by the text and file readers on malformed input.
class parse_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace placemeasure
