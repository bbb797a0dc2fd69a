#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "kloost/dyadic.hpp"
#include "kloost/expr.hpp"
#include "kloost/gf2m.hpp"
#include "kloost/ksum.hpp"
#include "kloost/report.hpp"

namespace kloost {

// Claim K(lhs(v)) = K(rhs(v)) for every v outside the excluded values where
// all exclusions are nonzero and both sides are defined and nonzero.
struct Identity {
  std::string name;
  char var = 'a';
  Expr lhs = Expr::zero();
  Expr rhs = Expr::zero();
  std::vector<Expr> exclusions;
  bool exclude_zero = false;
  bool exclude_one = false;

  std::size_t excluded_value_count() const { return exclude_zero + exclude_one; }
};

// Checks that every expression uses only `var`; throws InvalidArgument.
Identity make_identity(std::string name, char var, Expr lhs, Expr rhs, std::vector<Expr> exclusions = {},
                       bool exclude_zero = false, bool exclude_one = false);

// NAME : VAR : LHS == RHS [ ; EXCLUDE e1, e2 ... ] [ ; NOTVALUES 0,1 ]
// Throws ParseError or InvalidArgument.
Identity parse_identity(std::string_view line);
std::string format_identity(const Identity& id);

std::vector<Identity> builtin_catalog();
std::optional<Identity> find_builtin(std::string_view name);

// K(L(n)) = K(R(n)) with L(n) = (c^(n+1)+c^n)^3 (c^(n+1)+1) / (c^(4n)+1) and
// R(n) the mirror with the cube on the second factor.
Identity family_note_thm4(const DyadicRational& n);
// Sides (b^(n+2)+b^k+1)(b^(n+2)+b^n+b^k)^3 / (b^(4n)+1) and mirror.
Identity family_thm5(const DyadicRational& n, const DyadicRational& k);
// Sides (b^(n+1)+b^2)(b^(n+1)+b^n+b^2+1)^3 / (b^(4n)+1) and mirror.
Identity family_thm6(const DyadicRational& n);

// Exhaustive check over F using the spectrum for K lookups.
VerificationReport verify(const Field& field, const Spectrum& spec, const Identity& id,
                          std::size_t counterexample_cap = 16);
VerificationReport verify(const Field& field, const Identity& id, std::size_t counterexample_cap = 16);

// K(k1 k2) = K(k1 k2 + k2) over all (b, c) with k1 k2 != 0, where
// k1 = b^2 + c + 1 and k2 = b^2 + b + c + sqrt(c).
VerificationReport verify_theorem2(const Field& field, const Spectrum& spec, std::size_t counterexample_cap = 16);

}  // namespace kloost
