#include "kloost/dyadic.hpp"

#include <bit>
#include <charconv>
#include <cstdlib>

#include "kloost/errors.hpp"

namespace kloost {

namespace {

std::int64_t parse_int(std::string_view text) {
  std::int64_t value = 0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last || text.empty())
    throw ParseError(ParseErrorKind::Syntax, 0, "malformed integer '" + std::string(text) + "'");
  return value;
}

}  // namespace

DyadicRational::DyadicRational(std::int64_t num, int log2_den) : num_(num), log2_den_(log2_den) {
  if (log2_den < 0 || log2_den > 60) throw InvalidArgument("dyadic denominator exponent out of range");
  if (num_ == 0) {
    log2_den_ = 0;
    return;
  }
  while (log2_den_ > 0 && (num_ & 1) == 0) {
    num_ /= 2;
    --log2_den_;
  }
}

DyadicRational DyadicRational::parse(std::string_view text) {
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return DyadicRational(parse_int(text));
  const std::int64_t num = parse_int(text.substr(0, slash));
  const std::int64_t den = parse_int(text.substr(slash + 1));
  if (den <= 0 || !std::has_single_bit(static_cast<std::uint64_t>(den)))
    throw ParseError(ParseErrorKind::NonDyadicExponent, slash + 1,
                     "exponent denominator " + std::to_string(den) + " is not a power of two");
  return DyadicRational(num, std::countr_zero(static_cast<std::uint64_t>(den)));
}

DyadicRational DyadicRational::operator-() const {
  DyadicRational r = *this;
  r.num_ = -r.num_;
  return r;
}

DyadicRational operator+(const DyadicRational& a, const DyadicRational& b) {
  const int den = std::max(a.log2_den_, b.log2_den_);
  return DyadicRational(a.num_ * (std::int64_t{1} << (den - a.log2_den_)) +
                            b.num_ * (std::int64_t{1} << (den - b.log2_den_)),
                        den);
}

DyadicRational operator*(const DyadicRational& a, const DyadicRational& b) {
  return DyadicRational(a.num_ * b.num_, a.log2_den_ + b.log2_den_);
}

std::strong_ordering operator<=>(const DyadicRational& a, const DyadicRational& b) {
  const int den = std::max(a.log2_den_, b.log2_den_);
  const std::int64_t lhs = a.num_ * (std::int64_t{1} << (den - a.log2_den_));
  const std::int64_t rhs = b.num_ * (std::int64_t{1} << (den - b.log2_den_));
  return lhs <=> rhs;
}

std::string DyadicRational::to_string() const {
  if (log2_den_ == 0) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(std::int64_t{1} << log2_den_);
}

}  // namespace kloost
