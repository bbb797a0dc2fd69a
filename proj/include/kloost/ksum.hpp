#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "kloost/gf2m.hpp"

namespace kloost {

// K(a) = sum over x in F* of (-1)^Tr(a x + 1/x), by direct enumeration.
// Throws DomainError(UndefinedArgument) for a = 0.
std::int64_t kloosterman(const Field& field, Elem a);

// K(a) for every a in F*, indexed by element value. Entry 0 is unused.
class Spectrum {
 public:
  Spectrum(int m, std::vector<std::int32_t> values) : m_(m), values_(std::move(values)) {}

  int m() const { return m_; }
  std::size_t size() const { return values_.size(); }

  // Throws DomainError(UndefinedArgument) for a = 0.
  std::int64_t at(Elem a) const;
  std::int64_t operator[](Elem a) const { return values_[a]; }

  // Entries for a = 1 .. q-1.
  std::span<const std::int32_t> nonzero() const { return std::span(values_).subspan(1); }

 private:
  int m_;
  std::vector<std::int32_t> values_;
};

// In-place unnormalized Walsh-Hadamard transform; size must be a power of
// two. The OpenMP version splits every butterfly stage across threads and is
// bit-identical to the serial one.
void walsh_hadamard(std::span<std::int64_t> data);
void walsh_hadamard_serial(std::span<std::int64_t> data);

// Full spectrum in O(q log q): transform h[x] = (-1)^Tr(1/x) (h[0] = 1) and
// read K(a) = H[T a] - 1, T being the field's dual matrix.
Spectrum spectrum(const Field& field);
Spectrum spectrum_serial(const Field& field);

// O(q^2) reference: kloosterman() at every point.
Spectrum spectrum_naive(const Field& field);

}  // namespace kloost
