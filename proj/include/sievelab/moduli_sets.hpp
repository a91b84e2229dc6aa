#pragma once

// Sets of k-th power moduli in a dyadic range and the derived families
// S_t(Q0) = { q : t q is a k-th power in (Q0, 2 Q0] }.

#include <boost/multiprecision/cpp_int.hpp>
#include <vector>

#include "sievelab/modmath.hpp"

namespace sievelab {

using Rational = boost::multiprecision::cpp_rational;

struct PowerModuliFamily {
  unsigned k = 2;
  double Q0 = 1;
  u64 t = 1;
  u64 f_t = 1;
  u64 g_t = 1;
  // Integer form of the range: t q in (lower, upper].
  u64 lower = 1;
  u64 upper = 2;
  std::vector<u64> elements;  // sorted

  std::size_t size() const { return elements.size(); }
};

/// f_t = prod p^ceil(v/k) over t = prod p^v.
u64 power_closure(u64 t, unsigned k);

/// Builds S_t(Q0) as { q1^k g_t : Q0^(1/k)/f_t < q1 <= (2Q0)^(1/k)/f_t }
/// with all boundaries decided by exact integer roots.
PowerModuliFamily build_family(unsigned k, double Q0, u64 t);

/// The k-th powers in (Q0, 2 Q0], i.e. S_1(Q0).
std::vector<u64> kth_powers_in_dyadic_range(unsigned k, double Q0);

/// A_t(u, m, l): the largest number of elements q = l (mod m) inside a
/// half-open window (y, y + u] with Q0/t <= y <= 2 Q0/t.  For m = 1 every
/// element qualifies and l is ignored.
u64 count_in_window(const PowerModuliFamily& family, double u, u64 m, u64 l);

/// G(r) = sum over t | r of 1/f_t, exactly.
Rational divisor_gadget_sum(u64 r, unsigned k);

/// sum over t | r of |S_t(Q0)|.
u64 divisor_family_size_sum(u64 r, unsigned k, double Q0);

struct ConditionC5Report {
  u64 window_count = 0;     // A_t(u, m, l)
  u64 root_count = 0;       // delta_t(m, l)
  double density_factor = 0;  // 1 + (|S_t| / m) / (Q0 / t) * u
  double minimal_constant = 0;
  bool holds = false;  // for the supplied constant
};

/// Evaluates both sides of
///   A_t(u,m,l) <= C (1 + (|S_t|/m) u / (Q0/t)) delta_t(m,l)
/// for an instance inside the admissible ranges t <= sqrt N,
/// m <= sqrt N / t, m Q0 / sqrt N <= u <= Q0 / t.  Out-of-range parameters
/// throw std::invalid_argument.
ConditionC5Report verify_condition_c5(const PowerModuliFamily& family, u64 m, u64 l,
                                      double u, double constant, u64 N);

}  // namespace sievelab
