#include "sievelab/fraction.hpp"

#include <cmath>
#include <limits>
#include <ostream>
#include <stdexcept>

namespace sievelab {

namespace {

i128 gcd128(i128 a, i128 b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    const i128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

constexpr i128 kMax = std::numeric_limits<i64>::max();

}  // namespace

Fraction::Fraction(i64 num, i64 den) {
  if (den == 0) throw std::invalid_argument("Fraction: zero denominator");
  *this = from_wide(num, den);
}

Fraction Fraction::from_wide(i128 num, i128 den) {
  if (den == 0) throw std::domain_error("Fraction: division by zero");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  const i128 g = gcd128(num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
  if (num > kMax || num < -kMax || den > kMax) {
    throw std::overflow_error("Fraction: 64-bit overflow");
  }
  Fraction f;
  f.num_ = static_cast<i64>(num);
  f.den_ = static_cast<i64>(den);
  return f;
}

i64 Fraction::floor() const {
  i64 q = num_ / den_;
  if (num_ % den_ != 0 && num_ < 0) --q;
  return q;
}

i64 Fraction::ceil() const {
  i64 q = num_ / den_;
  if (num_ % den_ != 0 && num_ > 0) ++q;
  return q;
}

Fraction Fraction::frac() const { return *this - Fraction(floor()); }

Fraction operator+(const Fraction& a, const Fraction& b) {
  return Fraction::from_wide(static_cast<i128>(a.num_) * b.den_ + static_cast<i128>(b.num_) * a.den_,
                             static_cast<i128>(a.den_) * b.den_);
}

Fraction operator-(const Fraction& a, const Fraction& b) { return a + (-b); }

Fraction operator*(const Fraction& a, const Fraction& b) {
  return Fraction::from_wide(static_cast<i128>(a.num_) * b.num_,
                             static_cast<i128>(a.den_) * b.den_);
}

Fraction operator/(const Fraction& a, const Fraction& b) {
  return Fraction::from_wide(static_cast<i128>(a.num_) * b.den_,
                             static_cast<i128>(a.den_) * b.num_);
}

std::strong_ordering operator<=>(const Fraction& a, const Fraction& b) {
  return static_cast<i128>(a.num_) * b.den_ <=> static_cast<i128>(b.num_) * a.den_;
}

std::string Fraction::str() const {
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

std::ostream& operator<<(std::ostream& os, const Fraction& f) { return os << f.str(); }

Fraction distance_to_integer(const Fraction& x) {
  const Fraction r = x.frac();
  const Fraction other = Fraction(1) - r;
  return r < other ? r : other;
}

Fraction approximate(long double x, i64 max_den) {
  if (max_den < 1) throw std::invalid_argument("approximate: max_den < 1");
  if (!std::isfinite(x)) throw std::invalid_argument("approximate: non-finite input");
  const i64 whole = static_cast<i64>(std::floor(x));
  long double y = x - whole;
  // Convergents h/k of the fractional part.
  i64 h_prev = 1, k_prev = 0, h = 0, k = 1;
  while (y > 0) {
    const long double inv = 1.0L / y;
    const long double a_real = std::floor(inv);
    if (a_real * k + k_prev > static_cast<long double>(max_den)) {
      // Largest admissible semiconvergent, kept only if it beats h/k.
      const i64 t = (max_den - k_prev) / k;
      const i64 hs = t * h + h_prev, ks = t * k + k_prev;
      if (t > 0 && std::fabs(x - whole - static_cast<long double>(hs) / ks) <
                       std::fabs(x - whole - static_cast<long double>(h) / k)) {
        h = hs;
        k = ks;
      }
      break;
    }
    const i64 a = static_cast<i64>(a_real);
    const i64 k_next = a * k + k_prev;
    const i64 h_next = a * h + h_prev;
    h_prev = h;
    k_prev = k;
    h = h_next;
    k = k_next;
    y = inv - a;
  }
  return Fraction(whole) + Fraction(h, k);
}

}  // namespace sievelab
