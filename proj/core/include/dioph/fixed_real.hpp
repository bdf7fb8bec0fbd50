#pragma once

#include <compare>
#include <complex>
#include <cstdint>
#include <string>
#include <string_view>
#include <utility>

namespace dioph {

using u128 = unsigned __int128;
using i128 = __int128;

// Signed fixed-point real with 128 fractional bits.
//
// The value is whole + frac / 2^128 with whole = floor(value), so floor and
// fractional part are read off the representation directly. Addition,
// subtraction and multiplication by machine integers are exact; products of
// two FixedReal values and divisions are rounded toward minus infinity at
// 2^-128. Any result whose integer part leaves the signed 128-bit range
// raises ResourceError.
class FixedReal {
 public:
  static constexpr int kFracBits = 128;

  constexpr FixedReal() = default;
  constexpr FixedReal(i128 whole, u128 frac) : whole_(whole), frac_(frac) {}

  static constexpr FixedReal from_int(std::int64_t n) {
    return FixedReal(static_cast<i128>(n), 0);
  }
  // Exact conversion of the binary value of x, truncated toward minus
  // infinity below 2^-128.
  static FixedReal from_double(double x);
  // floor(num / den) at 2^-128 resolution; den must be nonzero.
  static FixedReal from_ratio(std::int64_t num, std::int64_t den);

  // Accepts an optional sign followed by a named constant ("sqrt2", "sqrt3",
  // "phi", "e", "pi"), a decimal literal ("12.345"), or an integer ratio
  // ("1/3"). Decimal literals of any length are truncated exactly.
  static FixedReal parse(std::string_view text);

  // The 128-bit truncation of a built-in irrational; throws ConfigError for
  // an unknown name.
  static FixedReal named_constant(std::string_view name);

  constexpr i128 floor() const { return whole_; }
  constexpr u128 frac_bits() const { return frac_; }
  constexpr FixedReal frac() const { return FixedReal(0, frac_); }
  constexpr bool is_zero() const { return whole_ == 0 && frac_ == 0; }
  constexpr bool is_negative() const { return whole_ < 0; }
  constexpr bool is_integer() const { return frac_ == 0; }

  double to_double() const;
  long double to_long_double() const;

  // Decimal rendering truncated to the given number of significant digits.
  std::string to_decimal(int significant_digits = 30) const;

  FixedReal operator-() const;
  FixedReal operator+(const FixedReal& other) const;
  FixedReal operator-(const FixedReal& other) const;
  FixedReal& operator+=(const FixedReal& other) { return *this = *this + other; }
  FixedReal& operator-=(const FixedReal& other) { return *this = *this - other; }

  // Exact product with a machine integer.
  FixedReal operator*(std::int64_t n) const;
  // Product rounded toward minus infinity.
  FixedReal operator*(const FixedReal& other) const;
  // Quotient rounded toward minus infinity; the divisor must be nonzero.
  FixedReal operator/(std::int64_t n) const;
  FixedReal operator/(const FixedReal& other) const;

  FixedReal abs() const { return is_negative() ? -*this : *this; }

  constexpr auto operator<=>(const FixedReal& other) const {
    if (whole_ != other.whole_) {
      return whole_ < other.whole_ ? std::strong_ordering::less
                                   : std::strong_ordering::greater;
    }
    if (frac_ != other.frac_) {
      return frac_ < other.frac_ ? std::strong_ordering::less
                                 : std::strong_ordering::greater;
    }
    return std::strong_ordering::equal;
  }
  constexpr bool operator==(const FixedReal& other) const = default;

  // Exact comparison against the binary value of a double.
  bool less_than(double x) const;

 private:
  i128 whole_ = 0;
  u128 frac_ = 0;
};

inline FixedReal operator*(std::int64_t n, const FixedReal& x) { return x * n; }

// A point of R/Z stored as t * 2^128; wrapping u128 arithmetic is exact
// arithmetic mod 1.
using Phase = u128;

constexpr Phase phase_of(const FixedReal& x) { return x.frac_bits(); }

// n * t mod 1 for any signed n (two's complement wrap is exact mod 2^128).
constexpr Phase phase_mul(Phase t, std::int64_t n) {
  return t * static_cast<u128>(static_cast<i128>(n));
}

// Distance to the nearest integer, exact as a phase in [0, 2^127].
constexpr u128 phase_distance_bits(Phase t) {
  const u128 neg = -t;
  return t < neg ? t : neg;
}

// ||t|| as a double.
double phase_distance(Phase t);

// t / 2^128 as a double in [0, 1).
double phase_to_double(Phase t);

// e(t) = exp(2 pi i t). The quadrant is taken from the top two bits so that
// multiples of 1/4 map to exact axis points.
std::complex<double> unit_root(Phase t);

// Exact test frac < x for the binary value of a double x (x <= 0: false,
// x >= 1: true).
bool phase_below(Phase frac, double x);

// Full 256-bit product of two u128 values as (high, low).
std::pair<u128, u128> mul_wide(u128 a, u128 b);

std::string to_string(i128 value);

}  // namespace dioph
