#include "dioph/fixed_real.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include "dioph/error.hpp"

namespace dioph {
namespace {

constexpr i128 kWholeMax = static_cast<i128>((~u128{0}) >> 1);
constexpr i128 kWholeMin = -kWholeMax - 1;
constexpr u128 kMagnitudeLimit = u128{1} << 127;

constexpr u128 make_u128(std::uint64_t hi, std::uint64_t lo) {
  return (static_cast<u128>(hi) << 64) | lo;
}

[[noreturn]] void overflow(const char* what) {
  throw ResourceError(std::string("FixedReal overflow in ") + what);
}

// Sign-magnitude view used by multiplication and division.
struct Magnitude {
  bool negative = false;
  u128 whole = 0;  // < 2^127, or == 2^127 only for the most negative value
  u128 frac = 0;
};

Magnitude magnitude_of(const FixedReal& x) {
  Magnitude m;
  if (!x.is_negative()) {
    m.whole = static_cast<u128>(x.floor());
    m.frac = x.frac_bits();
    return m;
  }
  m.negative = true;
  // -(w + f) = (-w - 1) + (1 - f) when f != 0.
  const u128 w = -static_cast<u128>(x.floor());  // |w| as unsigned
  if (x.frac_bits() == 0) {
    m.whole = w;
  } else {
    m.whole = w - 1;
    m.frac = -x.frac_bits();
  }
  return m;
}

// Rebuilds a FixedReal from a rounded-toward-zero magnitude. inexact marks
// discarded nonzero bits, which pushes negative results one ulp down.
FixedReal from_magnitude(bool negative, u128 whole, u128 frac, bool inexact,
                         const char* what) {
  if (!negative) {
    if (whole >= kMagnitudeLimit) overflow(what);
    return FixedReal(static_cast<i128>(whole), frac);
  }
  if (whole > kMagnitudeLimit) overflow(what);
  if (inexact) {
    // magnitude + ulp, then negate
    ++frac;
    if (frac == 0) ++whole;
    if (whole > kMagnitudeLimit) overflow(what);
  }
  if (frac == 0) {
    if (whole == kMagnitudeLimit) return FixedReal(kWholeMin, 0);
    return FixedReal(-static_cast<i128>(whole), 0);
  }
  if (whole >= kMagnitudeLimit) overflow(what);
  return FixedReal(-static_cast<i128>(whole) - 1, -frac);
}

// Exact binary expansion of 0.<digits> truncated to 128 bits: repeatedly
// double the decimal fraction and collect the carries.
u128 decimal_fraction_bits(std::string_view digits) {
  std::vector<std::uint8_t> d(digits.begin(), digits.end());
  for (auto& c : d) c = static_cast<std::uint8_t>(c - '0');
  while (!d.empty() && d.back() == 0) d.pop_back();
  u128 bits = 0;
  for (int i = 0; i < 128; ++i) {
    int carry = 0;
    for (std::size_t j = d.size(); j-- > 0;) {
      const int v = d[j] * 2 + carry;
      d[j] = static_cast<std::uint8_t>(v % 10);
      carry = v / 10;
    }
    bits = (bits << 1) | static_cast<u128>(carry);
    while (!d.empty() && d.back() == 0) d.pop_back();
  }
  return bits;
}

i128 parse_integer(std::string_view s, std::string_view full) {
  if (s.empty()) return 0;
  i128 v = 0;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) {
      throw ConfigError("malformed real literal '" + std::string(full) + "'");
    }
    if (__builtin_mul_overflow(v, i128{10}, &v) ||
        __builtin_add_overflow(v, i128{c - '0'}, &v)) {
      throw ResourceError("integer part too large in '" + std::string(full) +
                          "'");
    }
  }
  return v;
}

// Schoolbook shift-subtract division on little-endian 64-bit limbs.
template <std::size_t NumLimbs, std::size_t DenLimbs>
std::array<std::uint64_t, NumLimbs> long_divide(
    const std::array<std::uint64_t, NumLimbs>& num,
    const std::array<std::uint64_t, DenLimbs>& den, bool& remainder_nonzero) {
  std::array<std::uint64_t, NumLimbs> q{};
  std::array<std::uint64_t, DenLimbs + 1> r{};
  auto geq = [&] {
    if (r[DenLimbs] != 0) return true;
    for (std::size_t i = DenLimbs; i-- > 0;) {
      if (r[i] != den[i]) return r[i] > den[i];
    }
    return true;
  };
  for (std::size_t bit = NumLimbs * 64; bit-- > 0;) {
    std::uint64_t carry = (num[bit / 64] >> (bit % 64)) & 1u;
    for (auto& limb : r) {
      const std::uint64_t next = limb >> 63;
      limb = (limb << 1) | carry;
      carry = next;
    }
    if (geq()) {
      std::uint64_t borrow = 0;
      for (std::size_t i = 0; i <= DenLimbs; ++i) {
        const std::uint64_t sub = i < DenLimbs ? den[i] : 0;
        const u128 diff = static_cast<u128>(r[i]) - sub - borrow;
        r[i] = static_cast<std::uint64_t>(diff);
        borrow = static_cast<std::uint64_t>(diff >> 64) & 1u;
      }
      q[bit / 64] |= std::uint64_t{1} << (bit % 64);
    }
  }
  remainder_nonzero =
      std::any_of(r.begin(), r.end(), [](std::uint64_t v) { return v != 0; });
  return q;
}

}  // namespace

std::pair<u128, u128> mul_wide(u128 a, u128 b) {
  const u128 a0 = static_cast<std::uint64_t>(a), a1 = a >> 64;
  const u128 b0 = static_cast<std::uint64_t>(b), b1 = b >> 64;
  const u128 p00 = a0 * b0, p01 = a0 * b1, p10 = a1 * b0, p11 = a1 * b1;
  const u128 mid = (p00 >> 64) + static_cast<std::uint64_t>(p01) +
                   static_cast<std::uint64_t>(p10);
  const u128 lo = (mid << 64) | static_cast<std::uint64_t>(p00);
  const u128 hi = p11 + (p01 >> 64) + (p10 >> 64) + (mid >> 64);
  return {hi, lo};
}

std::string to_string(i128 value) {
  if (value == 0) return "0";
  const bool negative = value < 0;
  u128 mag = negative ? -static_cast<u128>(value) : static_cast<u128>(value);
  std::string out;
  while (mag != 0) {
    out.push_back(static_cast<char>('0' + static_cast<int>(mag % 10)));
    mag /= 10;
  }
  if (negative) out.push_back('-');
  std::reverse(out.begin(), out.end());
  return out;
}

FixedReal FixedReal::from_double(double x) {
  if (!std::isfinite(x)) throw ResourceError("non-finite double to FixedReal");
  const double fl = std::floor(x);
  if (std::fabs(fl) >= 0x1p126) overflow("from_double");
  const double rem = x - fl;  // exact for IEEE doubles
  return FixedReal(static_cast<i128>(fl),
                   static_cast<u128>(std::ldexp(rem, 128)));
}

FixedReal FixedReal::from_ratio(std::int64_t num, std::int64_t den) {
  return from_int(num) / den;
}

FixedReal FixedReal::named_constant(std::string_view name) {
  // 128-bit truncations of the fractional parts.
  if (name == "sqrt2") {
    return FixedReal(1, make_u128(0x6a09e667f3bcc908ULL, 0xb2fb1366ea957d3eULL));
  }
  if (name == "sqrt3") {
    return FixedReal(1, make_u128(0xbb67ae8584caa73bULL, 0x25742d7078b83b89ULL));
  }
  if (name == "phi") {
    return FixedReal(1, make_u128(0x9e3779b97f4a7c15ULL, 0xf39cc0605cedc834ULL));
  }
  if (name == "e") {
    return FixedReal(2, make_u128(0xb7e151628aed2a6aULL, 0xbf7158809cf4f3c7ULL));
  }
  if (name == "pi") {
    return FixedReal(3, make_u128(0x243f6a8885a308d3ULL, 0x13198a2e03707344ULL));
  }
  throw ConfigError("unknown named constant '" + std::string(name) + "'");
}

FixedReal FixedReal::parse(std::string_view text) {
  const std::string_view full = text;
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) {
    text.remove_prefix(1);
  }
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) {
    text.remove_suffix(1);
  }
  bool negative = false;
  if (!text.empty() && (text.front() == '-' || text.front() == '+')) {
    negative = text.front() == '-';
    text.remove_prefix(1);
  }
  if (text.empty()) throw ConfigError("empty real literal");

  FixedReal value;
  if (std::isalpha(static_cast<unsigned char>(text.front()))) {
    value = named_constant(text);
  } else if (const auto slash = text.find('/'); slash != std::string_view::npos) {
    const i128 num = parse_integer(text.substr(0, slash), full);
    const i128 den = parse_integer(text.substr(slash + 1), full);
    if (den == 0) throw ConfigError("zero denominator in '" + std::string(full) + "'");
    if (num > std::numeric_limits<std::int64_t>::max() ||
        den > std::numeric_limits<std::int64_t>::max()) {
      throw ResourceError("ratio terms exceed 64 bits in '" + std::string(full) + "'");
    }
    value = from_ratio(static_cast<std::int64_t>(num), static_cast<std::int64_t>(den));
  } else {
    const auto dot = text.find('.');
    const std::string_view int_digits = text.substr(0, dot);
    const std::string_view frac_digits =
        dot == std::string_view::npos ? std::string_view{} : text.substr(dot + 1);
    if (int_digits.empty() && frac_digits.empty()) {
      throw ConfigError("malformed real literal '" + std::string(full) + "'");
    }
    for (char c : frac_digits) {
      if (!std::isdigit(static_cast<unsigned char>(c))) {
        throw ConfigError("malformed real literal '" + std::string(full) + "'");
      }
    }
    const i128 whole = parse_integer(int_digits, full);
    if (whole > kWholeMax) overflow("parse");
    value = FixedReal(whole, decimal_fraction_bits(frac_digits));
  }
  return negative ? -value : value;
}

double FixedReal::to_double() const {
  return static_cast<double>(whole_) + std::ldexp(static_cast<double>(frac_), -128);
}

long double FixedReal::to_long_double() const {
  return static_cast<long double>(whole_) +
         std::ldexp(static_cast<long double>(frac_), -128);
}

std::string FixedReal::to_decimal(int significant_digits) const {
  const Magnitude m = magnitude_of(*this);
  std::string out = m.negative ? "-" : "";
  std::string int_part = to_string(static_cast<i128>(m.whole));
  if (m.whole == kMagnitudeLimit) int_part = "170141183460469231731687303715884105728";
  out += int_part;
  if (m.frac == 0) return out;
  int used = m.whole == 0 ? 0 : static_cast<int>(int_part.size());
  if (used >= significant_digits) return out;
  out.push_back('.');
  u128 f = m.frac;
  while (f != 0 && used < significant_digits) {
    const auto [digit, rest] = mul_wide(f, 10);
    out.push_back(static_cast<char>('0' + static_cast<int>(digit)));
    f = rest;
    if (used > 0 || digit != 0) ++used;
  }
  return out;
}

FixedReal FixedReal::operator-() const {
  if (frac_ == 0) {
    if (whole_ == kWholeMin) overflow("negation");
    return FixedReal(-whole_, 0);
  }
  return FixedReal(-whole_ - 1, -frac_);
}

FixedReal FixedReal::operator+(const FixedReal& other) const {
  const u128 f = frac_ + other.frac_;
  const i128 carry = f < frac_ ? 1 : 0;
  i128 w;
  if (__builtin_add_overflow(whole_, other.whole_, &w) ||
      __builtin_add_overflow(w, carry, &w)) {
    overflow("addition");
  }
  return FixedReal(w, f);
}

FixedReal FixedReal::operator-(const FixedReal& other) const {
  const u128 f = frac_ - other.frac_;
  const i128 borrow = frac_ < other.frac_ ? 1 : 0;
  i128 w;
  if (__builtin_sub_overflow(whole_, other.whole_, &w) ||
      __builtin_sub_overflow(w, borrow, &w)) {
    overflow("subtraction");
  }
  return FixedReal(w, f);
}

FixedReal FixedReal::operator*(std::int64_t n) const {
  if (n == 0) return FixedReal();
  const std::uint64_t m = n < 0 ? -static_cast<std::uint64_t>(n)
                                : static_cast<std::uint64_t>(n);
  i128 w;
  if (__builtin_mul_overflow(whole_, static_cast<i128>(m), &w)) {
    overflow("integer multiplication");
  }
  const auto [hi, lo] = mul_wide(frac_, m);
  if (__builtin_add_overflow(w, static_cast<i128>(hi), &w)) {
    overflow("integer multiplication");
  }
  const FixedReal product(w, lo);
  return n < 0 ? -product : product;
}

FixedReal FixedReal::operator*(const FixedReal& other) const {
  const Magnitude x = magnitude_of(*this);
  const Magnitude y = magnitude_of(other);
  const auto [ww_hi, ww] = mul_wide(x.whole, y.whole);
  const auto [h1, l1] = mul_wide(x.whole, y.frac);
  const auto [h2, l2] = mul_wide(x.frac, y.whole);
  const auto [h3, l3] = mul_wide(x.frac, y.frac);
  if (ww_hi != 0) overflow("multiplication");
  u128 frac = l1;
  u128 carry = 0;
  frac += l2;
  carry += frac < l2 ? 1 : 0;
  frac += h3;
  carry += frac < h3 ? 1 : 0;
  u128 whole = ww;
  for (u128 part : {h1, h2, carry}) {
    whole += part;
    if (whole < part) overflow("multiplication");
  }
  return from_magnitude(x.negative != y.negative, whole, frac, l3 != 0,
                        "multiplication");
}

FixedReal FixedReal::operator/(std::int64_t n) const {
  if (n == 0) throw ContractError("FixedReal division by zero");
  const Magnitude x = magnitude_of(*this);
  const std::uint64_t m = n < 0 ? -static_cast<std::uint64_t>(n)
                                : static_cast<std::uint64_t>(n);
  const u128 qw = x.whole / m;
  const u128 r = x.whole % m;
  u128 t = (r << 64) | static_cast<std::uint64_t>(x.frac >> 64);
  const u128 q1 = t / m;
  t = ((t % m) << 64) | static_cast<std::uint64_t>(x.frac);
  const u128 q0 = t / m;
  const bool inexact = (t % m) != 0;
  return from_magnitude(x.negative != (n < 0), qw, (q1 << 64) | q0, inexact,
                        "division");
}

FixedReal FixedReal::operator/(const FixedReal& other) const {
  if (other.is_zero()) throw ContractError("FixedReal division by zero");
  const Magnitude x = magnitude_of(*this);
  const Magnitude y = magnitude_of(other);
  // floor(|x| * 2^128 / |y|) with |x|, |y| as 256-bit integers scaled by 2^128.
  const std::array<std::uint64_t, 6> num{
      0, 0,
      static_cast<std::uint64_t>(x.frac), static_cast<std::uint64_t>(x.frac >> 64),
      static_cast<std::uint64_t>(x.whole), static_cast<std::uint64_t>(x.whole >> 64)};
  const std::array<std::uint64_t, 4> den{
      static_cast<std::uint64_t>(y.frac), static_cast<std::uint64_t>(y.frac >> 64),
      static_cast<std::uint64_t>(y.whole), static_cast<std::uint64_t>(y.whole >> 64)};
  bool inexact = false;
  const auto q = long_divide(num, den, inexact);
  if (q[4] != 0 || q[5] != 0) overflow("division");
  return from_magnitude(x.negative != y.negative, make_u128(q[3], q[2]),
                        make_u128(q[1], q[0]), inexact, "division");
}

bool FixedReal::less_than(double x) const {
  if (std::isnan(x)) return false;
  if (x == std::numeric_limits<double>::infinity()) return true;
  if (x == -std::numeric_limits<double>::infinity()) return false;
  const double fl = std::floor(x);
  if (fl >= 0x1p127) return true;
  if (fl < -0x1p127) return false;
  const i128 w = static_cast<i128>(fl);
  if (whole_ != w) return whole_ < w;
  return phase_below(frac_, x - fl);
}

double phase_distance(Phase t) {
  return std::ldexp(static_cast<double>(phase_distance_bits(t)), -128);
}

double phase_to_double(Phase t) { return std::ldexp(static_cast<double>(t), -128); }

std::complex<double> unit_root(Phase t) {
  const unsigned quadrant = static_cast<unsigned>(t >> 126);
  const u128 rest = t & ((u128{1} << 126) - 1);
  const double angle =
      std::ldexp(static_cast<double>(static_cast<std::uint64_t>(rest >> 62)), -64) *
      (std::numbers::pi / 2);
  const double c = std::cos(angle);
  const double s = std::sin(angle);
  switch (quadrant) {
    case 0: return {c, s};
    case 1: return {-s, c};
    case 2: return {-c, -s};
    default: return {s, -c};
  }
}

bool phase_below(Phase frac, double x) {
  if (!(x > 0)) return false;
  if (x >= 1) return true;
  const double scaled = std::ldexp(x, 128);
  const u128 whole = static_cast<u128>(scaled);
  if (static_cast<double>(whole) == scaled) return frac < whole;
  return frac <= whole;
}

}  // namespace dioph
