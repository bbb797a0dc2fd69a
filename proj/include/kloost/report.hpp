#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "json.hpp"
#include "kloost/gf2m.hpp"

namespace kloost {

namespace skip_reason {
inline constexpr const char* kExclusionZero = "exclusion_zero";
inline constexpr const char* kKArgZero = "k_arg_zero";
inline constexpr const char* kDomainError = "domain_error";
}  // namespace skip_reason

struct Counterexample {
  std::vector<Elem> point;  // {v} for identities, {b, c} for pair sweeps
  std::string relation;     // set when one report covers several relations
  Elem lhs_arg = 0;         // K arguments, for K(lhs_arg) = K(rhs_arg) checks
  Elem rhs_arg = 0;
  std::int64_t lhs = 0;     // the two compared values
  std::int64_t rhs = 0;
};

// Outcome of an exhaustive check. Accounting invariant:
//   checked + skipped_total() + excluded == domain_size.
struct VerificationReport {
  std::string name;
  int m = 0;
  Poly poly = 0;
  std::uint64_t domain_size = 0;
  std::uint64_t excluded = 0;
  std::uint64_t checked = 0;
  std::map<std::string, std::uint64_t> skipped;
  std::uint64_t counterexample_count = 0;
  std::vector<Counterexample> counterexamples;

  std::uint64_t skipped_total() const;
  bool passed() const { return counterexample_count == 0; }

  // Sums counts and appends counterexamples; call finalize() afterwards.
  void merge(const VerificationReport& part);
  // Sorts counterexamples by (point, relation) and keeps the first `cap`.
  void finalize(std::size_t cap);
};

std::string elem_hex(Elem e);

nlohmann::json to_json(const VerificationReport& report);

}  // namespace kloost
