#pragma once

// Exact rational numbers with 64-bit parts and 128-bit intermediates.
//
// Used for Farey points, window centres and radii so that membership tests
// near window edges are decided exactly.  Arithmetic that would overflow the
// 64-bit representation throws std::overflow_error.

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>

#include "sievelab/modmath.hpp"

namespace sievelab {

class Fraction {
 public:
  constexpr Fraction() = default;
  Fraction(i64 integer) : num_(integer), den_(1) {}  // NOLINT: implicit by design of the arithmetic
  Fraction(i64 num, i64 den);

  i64 num() const { return num_; }
  i64 den() const { return den_; }

  double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }
  long double to_long_double() const {
    return static_cast<long double>(num_) / static_cast<long double>(den_);
  }
  i64 floor() const;
  i64 ceil() const;
  /// Representative of this value modulo 1 in [0, 1).
  Fraction frac() const;
  Fraction abs() const { return num_ < 0 ? Fraction(-num_, den_) : *this; }

  friend Fraction operator+(const Fraction& a, const Fraction& b);
  friend Fraction operator-(const Fraction& a, const Fraction& b);
  friend Fraction operator*(const Fraction& a, const Fraction& b);
  friend Fraction operator/(const Fraction& a, const Fraction& b);
  Fraction operator-() const { return Fraction(-num_, den_); }

  friend bool operator==(const Fraction& a, const Fraction& b) = default;
  friend std::strong_ordering operator<=>(const Fraction& a, const Fraction& b);

  std::string str() const;

 private:
  static Fraction from_wide(i128 num, i128 den);

  i64 num_ = 0;
  i64 den_ = 1;
};

std::ostream& operator<<(std::ostream& os, const Fraction& f);

/// Distance from x to the nearest integer.
Fraction distance_to_integer(const Fraction& x);

/// Best rational approximation with denominator at most max_den (continued
/// fraction convergents and semiconvergents); used to turn real parameters
/// into exact window radii.
Fraction approximate(long double x, i64 max_den);

}  // namespace sievelab
