#include "sievelab/expsums.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>

#include "sievelab/quadrature.hpp"

namespace sievelab {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr long double kTwoPiL = 2.0L * std::numbers::pi_v<long double>;

// integral_L^inf cos(w y) / y^2 dy for w > 0 via repeated integration by
// parts; accurate when w L is large.
double cosine_tail(double w, double L) {
  if (w == 0) return 1.0 / L;
  const double s = std::sin(w * L), c = std::cos(w * L);
  // I_n = -s / (w L^n) + (n / w) J_{n+1},  J_n = c / (w L^n) - (n / w) I_{n+1}
  constexpr int kTerms = 10;
  double next_cos = 0, next_sin = 0;  // I_{n+1}, J_{n+1} from the deeper level
  for (int n = kTerms + 1; n >= 2; --n) {
    const double ln = std::pow(L, n);
    const double i_n = -s / (w * ln) + (n / w) * next_sin;
    const double j_n = c / (w * ln) - (n / w) * next_cos;
    next_cos = i_n;
    next_sin = j_n;
  }
  return next_cos;
}

}  // namespace

void CompensatedSum::add(double x) {
  const double t = sum_ + x;
  if (std::fabs(sum_) >= std::fabs(x)) {
    carry_ += (sum_ - t) + x;
  } else {
    carry_ += (x - t) + sum_;
  }
  sum_ = t;
}

CoeffSequence::CoeffSequence(i64 offset, std::vector<Complex> coeffs)
    : offset_(offset), coeffs_(std::move(coeffs)) {
  if (coeffs_.empty()) throw std::invalid_argument("CoeffSequence: N must be >= 1");
  CompensatedSum z;
  for (const Complex& a : coeffs_) z.add(std::norm(a));
  norm_squared_ = z.value();
}

CoeffSequence CoeffSequence::scaled(Complex c) const {
  std::vector<Complex> out(coeffs_);
  for (Complex& a : out) a *= c;
  return CoeffSequence(offset_, std::move(out));
}

CoeffSequence CoeffSequence::shifted(i64 shift) const {
  return CoeffSequence(offset_ + shift, coeffs_);
}

Complex unit_phase(long double x) {
  const long double r = x - std::floor(x);
  const long double angle = kTwoPiL * r;
  return {static_cast<double>(std::cos(angle)), static_cast<double>(std::sin(angle))};
}

Complex eval_exp_sum(const CoeffSequence& seq, double alpha) {
  CompensatedComplexSum sum;
  const auto coeffs = seq.coeffs();
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    const long double phase = static_cast<long double>(alpha) * seq.index(i);
    sum.add(coeffs[i] * unit_phase(phase));
  }
  return sum.value();
}

Complex eval_exp_sum(const CoeffSequence& seq, i64 num, u64 den) {
  if (den == 0) throw std::invalid_argument("eval_exp_sum: zero denominator");
  CompensatedComplexSum sum;
  const auto coeffs = seq.coeffs();
  const u64 step = reduce(num, den);
  u64 residue = mul_mod(step, reduce(seq.index(0), den), den);
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    sum.add(coeffs[i] * unit_phase(static_cast<long double>(residue) / den));
    residue += step;
    if (residue >= den) residue -= den;
  }
  return sum.value();
}

Complex eval_exp_sum(const CoeffSequence& seq, const Fraction& alpha) {
  return eval_exp_sum(seq, alpha.num(), static_cast<u64>(alpha.den()));
}

Complex complete_cubic_sum(u64 c, i64 kcoef, i64 l) {
  if (c == 0) throw std::invalid_argument("complete_cubic_sum: c must be >= 1");
  if (std::gcd(reduce(kcoef, c), c) != 1 && c != 1) {
    throw std::invalid_argument("complete_cubic_sum: gcd(k, c) must be 1");
  }
  const u64 kr = reduce(kcoef, c), lr = reduce(l, c);
  CompensatedComplexSum sum;
  for (u64 d = 1; d <= c; ++d) {
    const u64 d3 = mul_mod(mul_mod(d % c, d % c, c), d % c, c);
    const u64 arg = (mul_mod(kr, d3, c) + mul_mod(lr, d % c, c)) % c;
    sum.add(unit_phase(static_cast<long double>(arg) / c));
  }
  return sum.value();
}

double kernel_phi(double x) {
  if (std::fabs(x) < 1e-9) return kPi * kPi / 4.0;
  const double v = std::sin(kPi * x) / (2.0 * x);
  return v * v;
}

double kernel_phi_hat(double s) { return kPi * kPi / 4.0 * std::max(1.0 - std::fabs(s), 0.0); }

double kernel_phi_hat_numeric(double s) {
  const double as = std::fabs(s);
  const double w_s = 2 * kPi * as;
  const double w_plus = 2 * kPi * (1 + as);
  const double w_minus = 2 * kPi * std::fabs(1 - as);
  double smallest = w_plus;
  for (double w : {w_s, w_minus}) {
    if (w > 0) smallest = std::min(smallest, w);
  }
  const double L = std::ceil(std::max(1000.0, 400.0 / smallest));

  QuadratureOptions opts;
  opts.abs_tolerance = 1e-10;
  opts.initial_panels = static_cast<std::size_t>(2 * (1 + as) * L) + 1;
  const auto body = integrate(
      [s](double y) { return Complex(kernel_phi(y) * std::cos(2 * kPi * s * y), 0.0); }, 0.0, L,
      opts);
  // phi(y) cos(w_s y) = (cos(w_s y) - cos(w_+ y)/2 - cos(w_- y)/2) / (8 y^2)
  const double tail =
      (cosine_tail(w_s, L) - 0.5 * cosine_tail(w_plus, L) - 0.5 * cosine_tail(w_minus, L)) / 8.0;
  return 2.0 * (body.value.real() + tail);
}

double poisson_lattice_sum(double sigma, i64 terms) {
  if (!(sigma > 0)) throw std::invalid_argument("poisson_lattice_sum: sigma must be positive");
  CompensatedSum sum;
  // Add the small far terms first.
  for (i64 n = terms; n >= 1; --n) sum.add(2.0 * kernel_phi(static_cast<double>(n) / sigma));
  sum.add(kernel_phi(0.0));
  return sum.value();
}

double poisson_dual_sum(double sigma) {
  if (!(sigma > 0)) throw std::invalid_argument("poisson_dual_sum: sigma must be positive");
  const i64 reach = static_cast<i64>(std::floor(1.0 / sigma));
  CompensatedSum sum;
  for (i64 n = -reach; n <= reach; ++n) sum.add(kernel_phi_hat(static_cast<double>(n) * sigma));
  return sigma * sum.value();
}

double poisson_lattice_tail_bound(double sigma, i64 terms) {
  // phi(n / sigma) <= sigma^2 / (4 n^2) and sum_{n > L} 1/n^2 < 1/L.
  return sigma * sigma / (2.0 * static_cast<double>(terms));
}

Complex linear_phase_integral(i64 j, double z, double Q0) {
  if (j == 0 || z == 0) return {Q0, 0.0};
  const long double jz = static_cast<long double>(j) * z;
  const Complex numer = unit_phase(2 * jz * Q0) - unit_phase(jz * Q0);
  const Complex denom(0.0, static_cast<double>(kTwoPiL * jz));
  return numer / denom;
}

OscillatoryIntegral oscillatory_integral(i64 j, double z, i64 l, u64 r, double Q0) {
  if (!(Q0 >= 1)) throw std::invalid_argument("oscillatory_integral: Q0 must be >= 1");
  if (r == 0) throw std::invalid_argument("oscillatory_integral: r must be positive");
  OscillatoryIntegral out;
  const double aj = std::fabs(static_cast<double>(j));
  const double al = std::fabs(static_cast<double>(l));
  if (j == 0 && l == 0) {
    out.kind = OscillatoryCase::kConstant;
    out.value = Q0;
    out.bound_shape = Q0;
    return out;
  }
  if (l == 0) {
    out.kind = OscillatoryCase::kLinear;
    out.bound_shape = 1.0 / (aj * std::fabs(z));
  } else if (j == 0) {
    out.kind = OscillatoryCase::kCubeRoot;
    out.bound_shape = std::pow(Q0, 2.0 / 3.0) / al;
  } else {
    out.kind = OscillatoryCase::kMixed;
    out.bound_shape = std::sqrt(static_cast<double>(r)) * std::pow(Q0, 5.0 / 6.0) / std::sqrt(al);
  }

  const long double jz = static_cast<long double>(j) * z;
  const long double lr = static_cast<long double>(l) / static_cast<long double>(r);
  auto integrand = [jz, lr](double y) {
    return unit_phase(jz * y - lr * std::cbrt(static_cast<long double>(y)));
  };
  const double oscillations =
      aj * std::fabs(z) * Q0 + al / r * (std::cbrt(2 * Q0) - std::cbrt(Q0));
  QuadratureOptions opts;
  opts.abs_tolerance = 1e-8;
  opts.initial_panels =
      static_cast<std::size_t>(std::min(4.0 * std::ceil(oscillations) + 8.0, 262144.0));
  const auto q = integrate(integrand, Q0, 2 * Q0, opts);
  if (!q.converged) {
    throw std::runtime_error("oscillatory_integral: quadrature did not converge");
  }
  out.value = q.value;
  out.error_estimate = q.error_estimate;
  return out;
}

}  // namespace sievelab
