#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "kloost/gf2m.hpp"
#include "kloost/ksum.hpp"
#include "kloost/report.hpp"

namespace kloost {

// Counting solutions of
//   x + y + z + u = 1
//   u^2 + xy + xz + xu + yz + yu + zu = b^2
//   x^3 + y^3 + z^3 + u^3 = c
// over pairwise distinct x, y, z, u in F.
//
// The counters return ORDERED tuples. The system is symmetric in (x, y, z),
// so the ordered count is always 6 * mu2, where mu2 counts solutions up to
// permuting (x, y, z); mu2 is the quantity the closed forms evaluate.

inline constexpr int kBruteforceGuard = 10;
inline constexpr int kSweepGuard = 8;
inline constexpr std::uint64_t kOrderedPerSolution = 6;

struct KPair {
  Elem k1;  // b^2 + c + 1
  Elem k2;  // b^2 + b + c + sqrt(c)
};

KPair k_pair(const Field& field, Elem b, Elem c);

// O(q^3) enumeration of (x, y, z), u forced by the first equation. Throws
// CostGuardError above kBruteforceGuard unless force.
std::uint64_t mu2_bruteforce(const Field& field, Elem b, Elem c, bool force = false);

// O(q^2): enumerate (x, u), recover y + z and yz from the first two
// equations, test the third, and count the roots of t^2 + (y+z) t + yz.
std::uint64_t mu2_fast(const Field& field, Elem b, Elem c);

// Ordered counts for every (b, c).
class Mu2Table {
 public:
  explicit Mu2Table(int m) : m_(m), counts_(std::size_t{1} << (2 * m), 0) {}

  int m() const { return m_; }
  std::uint32_t order() const { return std::uint32_t{1} << m_; }
  std::uint32_t at(Elem b, Elem c) const { return counts_[(std::size_t{b} << m_) | c]; }
  std::uint32_t& at(Elem b, Elem c) { return counts_[(std::size_t{b} << m_) | c]; }

  friend bool operator==(const Mu2Table&, const Mu2Table&) = default;

 private:
  int m_;
  std::vector<std::uint32_t> counts_;
};

// Buckets every ordered tuple by the (b, c) it solves: O(q^3) for all pairs.
// Guarded by kBruteforceGuard.
Mu2Table mu2_bruteforce_table(const Field& field, bool force = false);
// The mu2_fast reduction bucketed by c for each b: O(q^3) for all pairs.
// Guarded by kSweepGuard.
Mu2Table mu2_fast_table(const Field& field, bool force = false);
Mu2Table mu2_fast_table_serial(const Field& field, bool force = false);

enum class ClosedStatus { Value, NotApplicable, Inconsistent };

const char* to_string(ClosedStatus status);

// numerator = 6 * mu2, i.e. directly comparable with an ordered count.
struct ClosedForm {
  ClosedStatus status = ClosedStatus::NotApplicable;
  std::int64_t numerator = 0;

  std::optional<std::int64_t> value() const {
    if (status != ClosedStatus::Value) return std::nullopt;
    return numerator / 6;
  }
  bool matches(std::uint64_t ordered) const {
    return status == ClosedStatus::Value && numerator == static_cast<std::int64_t>(ordered);
  }
};

// Case (q - 8 + (-1)^Tr(b) (K - 3)) / 6 when m odd and Tr(c) = 1 or m even
// and Tr(c) = 0; otherwise (q - 2 - (-1)^Tr(b) (K + 3)) / 6. K = K(k1 k2).
// NotApplicable when k1 k2 = 0. A remainder mod 6 throws std::logic_error.
ClosedForm mu2_closed_corrected(const Field& field, const Spectrum& spec, Elem b, Elem c);

// Reconstructed original: the first case whenever Tr(c) = 1 and the second
// whenever Tr(c) = 0, whatever the parity of m. Non-integral or negative
// results come back Inconsistent.
ClosedForm mu2_closed_original(const Field& field, const Spectrum& spec, Elem b, Elem c);

struct Mu2Report {
  Elem b = 0, c = 0;
  KPair k{};
  std::optional<std::uint64_t> brute;
  std::optional<std::uint64_t> fast;
  ClosedForm closed_corrected;
  ClosedForm closed_original;

  bool applicable() const { return closed_corrected.status != ClosedStatus::NotApplicable; }
  // brute == fast, and the corrected closed form matches when applicable.
  bool agree() const;
  std::optional<bool> original_agrees() const;
};

// brute is filled when m <= kBruteforceGuard or force.
Mu2Report mu2_report(const Field& field, const Spectrum& spec, Elem b, Elem c, bool force = false);

nlohmann::json to_json(const Field& field, const Mu2Report& report);

// Symmetry relations on the ordered table, one instance per (relation, b, c):
//   m even: mu2(b,c) = mu2(b+1,c) and mu2(b,c) = mu2(b,c+1);
//   m odd:  mu2(b,c) + mu2(b+1,c) = (q-2)/3 if Tr(c) = 0, (q-8)/3 otherwise,
//           mu2(b,c) + mu2(b,c+1) = (q-2)/3 if Tr(key) = 1, (q-8)/3 otherwise.
// AsPrinted checks every pair with key = c. Restricted uses key = b and skips
// an instance (k_arg_zero) when k1 k2 = 0 at either end of it; the sum over
// {c, c+1} is symmetric while Tr(c) and Tr(c+1) differ for m odd, so the
// printed key cannot hold at both ends.
enum class SymmetryForm { AsPrinted, Restricted };
const char* to_string(SymmetryForm form);

VerificationReport symmetry_check(const Field& field, const Mu2Table& table, SymmetryForm form,
                                  std::size_t counterexample_cap = 16);
VerificationReport symmetry_check(const Field& field, SymmetryForm form, bool force = false,
                                  std::size_t counterexample_cap = 16);

// Compares a closed form against the table at every applicable (b, c).
// Counterexamples carry lhs = ordered count, rhs = closed-form numerator.
VerificationReport closed_form_check(const Field& field, const Spectrum& spec, const Mu2Table& table, bool original,
                                     std::size_t counterexample_cap = 16);

}  // namespace kloost
