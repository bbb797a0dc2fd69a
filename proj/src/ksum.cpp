#include "kloost/ksum.hpp"

#include <bit>
#include <stdexcept>

#include "kloost/errors.hpp"
#include "kloost/parallel.hpp"

namespace kloost {

std::int64_t kloosterman(const Field& field, Elem a) {
  if (a == 0) throw DomainError(DomainErrorKind::UndefinedArgument, "K(0) is undefined");
  std::int64_t sum = 0;
  for (Elem x = 1; x < field.order(); ++x)
    sum += field.trace(field.mul(a, x) ^ field.inv(x)) ? -1 : 1;
  return sum;
}

std::int64_t Spectrum::at(Elem a) const {
  if (a == 0) throw DomainError(DomainErrorKind::UndefinedArgument, "K(0) is undefined");
  if (a >= values_.size()) throw InvalidArgument("element outside the field");
  return values_[a];
}

void walsh_hadamard_serial(std::span<std::int64_t> data) {
  const std::size_t n = data.size();
  if (!std::has_single_bit(n)) throw InvalidArgument("transform length must be a power of two");
  for (std::size_t h = 1; h < n; h <<= 1) {
    for (std::size_t i = 0; i < n; i += 2 * h) {
      for (std::size_t j = i; j < i + h; ++j) {
        const std::int64_t u = data[j], v = data[j + h];
        data[j] = u + v;
        data[j + h] = u - v;
      }
    }
  }
}

void walsh_hadamard(std::span<std::int64_t> data) {
  const std::size_t n = data.size();
  if (!std::has_single_bit(n)) throw InvalidArgument("transform length must be a power of two");
  const std::int64_t half = static_cast<std::int64_t>(n / 2);
  const int threads = workers_for(n);
  std::int64_t* d = data.data();
  for (std::size_t h = 1; h < n; h <<= 1) {
    const std::int64_t hh = static_cast<std::int64_t>(h);
#pragma omp parallel for schedule(static) num_threads(threads)
    for (std::int64_t k = 0; k < half; ++k) {
      const std::int64_t j = (k / hh) * 2 * hh + k % hh;
      const std::int64_t u = d[j], v = d[j + hh];
      d[j] = u + v;
      d[j + hh] = u - v;
    }
  }
}

namespace {

template <bool Parallel>
Spectrum build_spectrum(const Field& field) {
  const std::int64_t q = field.order();
  const int threads = Parallel ? workers_for(static_cast<std::uint64_t>(q) * field.m()) : 1;
  std::vector<std::int64_t> h(static_cast<std::size_t>(q));
  h[0] = 1;
#pragma omp parallel for schedule(static) num_threads(threads) if (Parallel)
  for (std::int64_t x = 1; x < q; ++x) h[x] = field.trace(field.inv(static_cast<Elem>(x))) ? -1 : 1;

  if constexpr (Parallel)
    walsh_hadamard(h);
  else
    walsh_hadamard_serial(h);

  std::vector<std::int32_t> values(static_cast<std::size_t>(q), 0);
#pragma omp parallel for schedule(static) num_threads(threads) if (Parallel)
  for (std::int64_t a = 1; a < q; ++a)
    values[a] = static_cast<std::int32_t>(h[field.dual_index(static_cast<Elem>(a))] - 1);
  return Spectrum(field.m(), std::move(values));
}

}  // namespace

Spectrum spectrum(const Field& field) { return build_spectrum<true>(field); }
Spectrum spectrum_serial(const Field& field) { return build_spectrum<false>(field); }

Spectrum spectrum_naive(const Field& field) {
  const std::int64_t q = field.order();
  std::vector<std::int32_t> values(static_cast<std::size_t>(q), 0);
#pragma omp parallel for schedule(dynamic, 16) num_threads(workers_for(static_cast<std::uint64_t>(q) * q))
  for (std::int64_t a = 1; a < q; ++a)
    values[a] = static_cast<std::int32_t>(kloosterman(field, static_cast<Elem>(a)));
  return Spectrum(field.m(), std::move(values));
}

}  // namespace kloost
