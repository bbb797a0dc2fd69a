#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace kloost {

// Exponent num / 2^log2_den, always kept reduced (num odd, or num == 0 with
// log2_den == 0) so that structural equality is numeric equality.
class DyadicRational {
 public:
  constexpr DyadicRational() = default;
  constexpr DyadicRational(std::int64_t integer) : num_(integer) {}  // NOLINT
  DyadicRational(std::int64_t num, int log2_den);

  // Accepts "3", "-2", "1/4", "-1/8". Throws ParseError(NonDyadicExponent)
  // when the denominator is not a power of two.
  static DyadicRational parse(std::string_view text);

  std::int64_t num() const { return num_; }
  int log2_den() const { return log2_den_; }
  bool is_integer() const { return log2_den_ == 0; }
  int sign() const { return (num_ > 0) - (num_ < 0); }

  DyadicRational operator-() const;
  friend DyadicRational operator+(const DyadicRational& a, const DyadicRational& b);
  friend DyadicRational operator-(const DyadicRational& a, const DyadicRational& b) {
    return a + (-b);
  }
  friend DyadicRational operator*(const DyadicRational& a, const DyadicRational& b);

  friend bool operator==(const DyadicRational&, const DyadicRational&) = default;
  friend std::strong_ordering operator<=>(const DyadicRational& a, const DyadicRational& b);

  // "3", "-2", "1/4", "-1/8"
  std::string to_string() const;

 private:
  std::int64_t num_ = 0;
  int log2_den_ = 0;
};

}  // namespace kloost
