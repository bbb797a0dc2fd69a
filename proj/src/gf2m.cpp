#include "kloost/gf2m.hpp"

#include <algorithm>
#include <bit>
#include <cstdio>
#include <stdexcept>

#include "kloost/errors.hpp"

namespace kloost {

namespace {

using Wide = std::uint64_t;

int wide_degree(Wide p) { return p ? 63 - std::countl_zero(p) : -1; }

Wide wide_mod(Wide a, Wide f) {
  const int df = wide_degree(f);
  for (int da = wide_degree(a); da >= df; da = wide_degree(a)) a ^= f << (da - df);
  return a;
}

Wide wide_mulmod(Wide a, Wide b, Wide f) {
  Wide r = 0;
  for (; b; b >>= 1, a <<= 1)
    if (b & 1) r ^= a;
  return wide_mod(r, f);
}

Wide wide_gcd(Wide a, Wide b) {
  while (b) {
    a = wide_mod(a, b);
    std::swap(a, b);
  }
  return a;
}

}  // namespace

const char* to_string(DomainErrorKind kind) {
  switch (kind) {
    case DomainErrorKind::ZeroInverse: return "zero_inverse";
    case DomainErrorKind::ZeroToNonpositive: return "zero_to_nonpositive";
    case DomainErrorKind::UndefinedArgument: return "undefined_argument";
  }
  return "?";
}

int poly_degree(Poly p) { return wide_degree(p); }

bool is_irreducible(Poly p) {
  const int d = poly_degree(p);
  if (d < 1) throw InvalidArgument("is_irreducible: polynomial must have degree >= 1");
  // x^(2^i) mod p for i = 1..d/2; p is irreducible iff no gcd(x^(2^i) - x, p)
  // is a proper factor.
  Wide power = wide_mod(0b10, p);
  for (int i = 1; i <= d / 2; ++i) {
    power = wide_mulmod(power, power, p);
    if (wide_gcd(p, power ^ 0b10) != 1) return false;
  }
  return true;
}

Poly default_poly(int m) {
  if (m < kMinDegree || m > kMaxDegree)
    throw InvalidArgument("m = " + std::to_string(m) + " outside 1..24");
  for (Poly p = Poly{1} << m;; ++p)
    if (is_irreducible(p)) return p;
}

std::string poly_hex(Poly p) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "0x%X", p);
  return buf;
}

Field::Field(int m, std::optional<Poly> poly)
    : m_(m), poly_(0), top_(0) {
  if (m < kMinDegree || m > kMaxDegree)
    throw InvalidArgument("m = " + std::to_string(m) + " outside 1..24");
  poly_ = poly ? *poly : default_poly(m);
  if (poly_degree(poly_) != m)
    throw InvalidArgument("polynomial " + poly_hex(poly_) + " does not have degree " + std::to_string(m));
  if (!is_irreducible(poly_))
    throw InvalidArgument("polynomial " + poly_hex(poly_) + " is reducible");
  top_ = Elem{1} << m;

  // x^k for k < 2m - 1.
  std::vector<Elem> xpow(2 * m);
  const Elem x = m > 1 ? 0b10 : (poly_ & 1);
  xpow[0] = 1;
  for (int k = 1; k < 2 * m; ++k) xpow[k] = mul(xpow[k - 1], x);

  auto slow_trace = [&](Elem a) {
    Elem t = 0;
    for (int k = 0; k < m; ++k, a = mul(a, a)) t ^= a;
    if (t > 1) throw std::logic_error("trace left GF(2)");
    return t;
  };

  square_basis_.resize(m);
  for (int i = 0; i < m; ++i) {
    square_basis_[i] = xpow[2 * i];
    trace_mask_ |= slow_trace(xpow[i]) << i;
  }

  // sqrt(a) = a^(2^(m-1))
  sqrt_basis_.resize(m);
  for (int i = 0; i < m; ++i) {
    Elem s = xpow[i];
    for (int k = 0; k < m - 1; ++k) s = square(s);
    sqrt_basis_[i] = s;
  }

  if (m % 2 == 1) {
    half_trace_basis_.resize(m);
    for (int i = 0; i < m; ++i) {
      Elem h = 0;
      Elem term = xpow[i];
      for (int k = 0; k <= (m - 1) / 2; ++k) {
        h ^= term;
        term = square(square(term));
      }
      half_trace_basis_[i] = h;
    }
  } else {
    for (int i = 0; i < m; ++i) {
      Elem image = square(xpow[i]) ^ xpow[i];
      Elem pre = xpow[i];
      for (const auto& [pivot, pivot_pre] : as_echelon_) {
        if (image & std::bit_floor(pivot)) {
          image ^= pivot;
          pre ^= pivot_pre;
        }
      }
      if (image) {
        as_echelon_.emplace_back(image, pre);
        std::sort(as_echelon_.begin(), as_echelon_.end(), std::greater<>());
      }
    }
    // The kernel of w -> w^2 + w is {0, 1}.
    if (static_cast<int>(as_echelon_.size()) != m - 1)
      throw std::logic_error("w^2 + w has unexpected rank");
  }

  dual_rows_.resize(m);
  for (int j = 0; j < m; ++j)
    for (int i = 0; i < m; ++i) dual_rows_[j] |= slow_trace(xpow[i + j]) << i;

  // Nondegeneracy of Tr(ab): the dual matrix must have full rank.
  std::vector<Elem> rows = dual_rows_;
  int rank = 0;
  for (int bit = m - 1; bit >= 0; --bit) {
    auto it = std::find_if(rows.begin() + rank, rows.end(), [&](Elem r) { return (r >> bit) & 1; });
    if (it == rows.end()) continue;
    std::iter_swap(rows.begin() + rank, it);
    for (int r = 0; r < m; ++r)
      if (r != rank && ((rows[r] >> bit) & 1)) rows[r] ^= rows[rank];
    ++rank;
  }
  if (rank != m) throw std::logic_error("trace form is degenerate");
}

Elem Field::inv(Elem a) const {
  if (a == 0) throw DomainError(DomainErrorKind::ZeroInverse, "inverse of zero");
  Wide u = a, v = poly_, g1 = 1, g2 = 0;
  while (u != 1) {
    int j = wide_degree(u) - wide_degree(v);
    if (j < 0) {
      std::swap(u, v);
      std::swap(g1, g2);
      j = -j;
    }
    u ^= v << j;
    g1 ^= g2 << j;
  }
  return static_cast<Elem>(g1);
}

Elem Field::pow(Elem a, std::uint64_t e) const {
  if (a == 0) {
    if (e == 0) throw DomainError(DomainErrorKind::ZeroToNonpositive, "0^0");
    return 0;
  }
  e %= order() - 1;
  Elem r = 1;
  for (; e; e >>= 1, a = square(a))
    if (e & 1) r = mul(r, a);
  return r;
}

Elem Field::pow(Elem a, const DyadicRational& r) const {
  if (a == 0) {
    if (r.sign() <= 0)
      throw DomainError(DomainErrorKind::ZeroToNonpositive, "0^" + r.to_string());
    return 0;
  }
  for (int i = 0; i < r.log2_den(); ++i) a = sqrt(a);
  const std::int64_t num = r.num();
  const Elem p = pow(a, static_cast<std::uint64_t>(num < 0 ? -num : num));
  return num < 0 ? inv(p) : p;
}

std::optional<Elem> Field::solve_artin_schreier(Elem y) const {
  if (trace(y)) return std::nullopt;
  if (m_ % 2 == 1) return half_trace(y);
  Elem w = 0;
  for (const auto& [pivot, pre] : as_echelon_) {
    if (y & std::bit_floor(pivot)) {
      y ^= pivot;
      w ^= pre;
    }
  }
  if (y != 0) throw std::logic_error("trace-zero element outside the image of w^2 + w");
  return w;
}

QuadRoots Field::solve_quadratic(Elem s, Elem p) const {
  QuadRoots out;
  if (s == 0) {
    out.root[0] = sqrt(p);
    out.count = 1;
    return out;
  }
  const auto w = solve_artin_schreier(mul(p, inv(square(s))));
  if (!w) return out;
  const Elem t = mul(s, *w);
  out.root = {std::min(t, t ^ s), std::max(t, t ^ s)};
  out.count = 2;
  return out;
}

}  // namespace kloost
