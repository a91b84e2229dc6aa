#pragma once

// Trigonometric sums, complete cubic exponential sums, the Fejer-type kernel
// phi(x) = (sin(pi x) / (2x))^2 with its Fourier transform, and the
// oscillatory integrals that arise after Poisson summation.

#include <complex>
#include <span>
#include <vector>

#include "sievelab/fraction.hpp"
#include "sievelab/modmath.hpp"

namespace sievelab {

using Complex = std::complex<double>;

/// Neumaier-compensated accumulator.
class CompensatedSum {
 public:
  void add(double x);
  double value() const { return sum_ + carry_; }

 private:
  double sum_ = 0;
  double carry_ = 0;
};

class CompensatedComplexSum {
 public:
  void add(Complex z) {
    re_.add(z.real());
    im_.add(z.imag());
  }
  Complex value() const { return {re_.value(), im_.value()}; }

 private:
  CompensatedSum re_, im_;
};

/// Coefficients a_{M+1}, ..., a_{M+N} of a trigonometric polynomial.
class CoeffSequence {
 public:
  CoeffSequence(i64 offset, std::vector<Complex> coeffs);

  i64 offset() const { return offset_; }
  std::size_t length() const { return coeffs_.size(); }
  std::span<const Complex> coeffs() const { return coeffs_; }
  /// Index n of coefficient i is offset + 1 + i.
  i64 index(std::size_t i) const { return offset_ + 1 + static_cast<i64>(i); }
  /// Z = sum |a_n|^2.
  double norm_squared() const { return norm_squared_; }

  CoeffSequence scaled(Complex c) const;
  /// Same coefficients attached to indices shifted by `shift`.
  CoeffSequence shifted(i64 shift) const;

 private:
  i64 offset_;
  std::vector<Complex> coeffs_;
  double norm_squared_ = 0;
};

/// e(x) = exp(2 pi i x).
Complex unit_phase(long double x);

/// sum a_n e(alpha n) for real alpha; alpha n is reduced mod 1 in long double.
Complex eval_exp_sum(const CoeffSequence& seq, double alpha);

/// sum a_n e(num n / den) with num n reduced mod den exactly.
Complex eval_exp_sum(const CoeffSequence& seq, i64 num, u64 den);
Complex eval_exp_sum(const CoeffSequence& seq, const Fraction& alpha);

/// sum_{d=1}^{c} e((k d^3 + l d) / c) with the argument reduced exactly.
/// Throws std::invalid_argument unless c >= 1 and gcd(k, c) = 1.
Complex complete_cubic_sum(u64 c, i64 kcoef, i64 l);

/// phi(x) = (sin(pi x) / (2x))^2, phi(0) = pi^2 / 4.
double kernel_phi(double x);
/// (pi^2 / 4) max(1 - |s|, 0).
double kernel_phi_hat(double s);

/// integral over R of phi(y) e(s y) dy by quadrature on [0, L] plus an
/// asymptotic expansion of the tail; independent of the closed form.
double kernel_phi_hat_numeric(double s);

/// sum_{|n| <= terms} phi(n / sigma).
double poisson_lattice_sum(double sigma, i64 terms);
/// sigma * sum_n phi_hat(n sigma); finite because phi_hat has support [-1, 1].
double poisson_dual_sum(double sigma);
/// Upper bound for the part of the lattice sum beyond |n| = terms.
double poisson_lattice_tail_bound(double sigma, i64 terms);

enum class OscillatoryCase {
  kConstant,   // j = 0, l = 0: the integral is the interval length Q0
  kLinear,     // j != 0, l = 0: bounded by 1 / (|j| z)
  kCubeRoot,   // j = 0, l != 0: bounded by c Q0^(2/3) / |l|
  kMixed,      // j != 0, l != 0: bounded by c sqrt(r) Q0^(5/6) / sqrt|l|
};

struct OscillatoryIntegral {
  Complex value;
  double error_estimate = 0;
  OscillatoryCase kind = OscillatoryCase::kConstant;
  // The analytic bound without its implied constant.
  double bound_shape = 0;
};

/// integral over [Q0, 2 Q0] of e(j y z - l y^(1/3) / r) dy to absolute
/// tolerance 1e-8.  Throws std::runtime_error when the quadrature does not
/// converge within the panel cap.
OscillatoryIntegral oscillatory_integral(i64 j, double z, i64 l, u64 r, double Q0);

/// (e(2 j Q0 z) - e(j Q0 z)) / (2 pi i j z): the l = 0 integral in closed form.
Complex linear_phase_integral(i64 j, double z, double Q0);

}  // namespace sievelab
