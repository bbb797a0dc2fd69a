#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "kloost/dyadic.hpp"

namespace kloost {

// Field element: coefficient bits in the polynomial basis, value < 2^m.
using Elem = std::uint32_t;
// Polynomial over GF(2), bit i = coefficient of x^i.
using Poly = std::uint32_t;

inline constexpr int kMinDegree = 1;
inline constexpr int kMaxDegree = 24;

int poly_degree(Poly p);

// True iff p has no factor of degree 1..deg(p)-1. Uses Ben-Or's
// gcd(x^(2^i) - x, p) criterion. Throws InvalidArgument for deg(p) < 1.
bool is_irreducible(Poly p);

// Smallest irreducible polynomial of degree m, by integer value.
Poly default_poly(int m);

std::string poly_hex(Poly p);

// Roots of t^2 + s t + p.
struct QuadRoots {
  std::array<Elem, 2> root{};
  int count = 0;

  std::span<const Elem> view() const { return {root.data(), static_cast<std::size_t>(count)}; }
};

// Immutable description of GF(2^m). All arithmetic goes through a Field;
// it is safe to share between threads.
class Field {
 public:
  // poly defaults to default_poly(m). Throws InvalidArgument on a degree or
  // irreducibility failure.
  explicit Field(int m, std::optional<Poly> poly = std::nullopt);

  int m() const { return m_; }
  Poly poly() const { return poly_; }
  std::uint32_t order() const { return std::uint32_t{1} << m_; }
  Elem mask() const { return order() - 1; }

  static Elem add(Elem a, Elem b) { return a ^ b; }

  Elem mul(Elem a, Elem b) const {
    Elem r = 0;
    while (b) {
      if (b & 1) r ^= a;
      b >>= 1;
      a <<= 1;
      if (a & top_) a ^= poly_;
    }
    return r;
  }

  Elem square(Elem a) const { return apply_linear(square_basis_, a); }
  Elem sqrt(Elem a) const { return apply_linear(sqrt_basis_, a); }
  Elem cube(Elem a) const { return mul(square(a), a); }

  // Throws DomainError(ZeroInverse) on 0.
  Elem inv(Elem a) const;

  Elem pow(Elem a, std::uint64_t e) const;
  // Applies log2_den square roots, then raises to |num| and inverts when
  // num < 0. 0^r = 0 for r > 0; 0^r for r <= 0 throws
  // DomainError(ZeroToNonpositive).
  Elem pow(Elem a, const DyadicRational& r) const;

  unsigned trace(Elem a) const { return static_cast<unsigned>(__builtin_parity(a & trace_mask_)); }
  Elem trace_mask() const { return trace_mask_; }

  QuadRoots solve_quadratic(Elem s, Elem p) const;
  // Some w with w^2 + w = y, if Tr(y) = 0. Odd m uses the half-trace, even m
  // the precomputed elimination of w -> w^2 + w.
  std::optional<Elem> solve_artin_schreier(Elem y) const;

  // Row j of the dual matrix: bit i set iff Tr(x^i * x^j) = 1. The matrix is
  // symmetric.
  std::span<const Elem> dual_rows() const { return dual_rows_; }
  // Index w with Tr(a*x) = <w, x> for every x (w = T * a).
  Elem dual_index(Elem a) const {
    Elem w = 0;
    for (int j = 0; j < m_; ++j) w |= static_cast<Elem>(__builtin_parity(a & dual_rows_[j])) << j;
    return w;
  }

 private:
  static Elem apply_linear(const std::vector<Elem>& images, Elem a) {
    Elem r = 0;
    for (int i = 0; a; ++i, a >>= 1)
      if (a & 1) r ^= images[i];
    return r;
  }

  Elem half_trace(Elem y) const { return apply_linear(half_trace_basis_, y); }

  int m_;
  Poly poly_;
  Elem top_;
  Elem trace_mask_ = 0;
  std::vector<Elem> square_basis_;
  std::vector<Elem> sqrt_basis_;
  std::vector<Elem> half_trace_basis_;  // odd m only
  // Echelon form of {w^2 + w}: (image with unique leading bit, preimage).
  std::vector<std::pair<Elem, Elem>> as_echelon_;  // even m only
  std::vector<Elem> dual_rows_;
};

}  // namespace kloost
