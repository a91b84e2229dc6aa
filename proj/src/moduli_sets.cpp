#include "sievelab/moduli_sets.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "sievelab/power_congruence.hpp"

namespace sievelab {

namespace {

// floor(Q0) and floor(2 Q0) as integers; both exact for doubles below 2^63.
std::pair<u64, u64> integer_range(double Q0) {
  if (!(Q0 >= 1) || Q0 >= 4e18) throw std::invalid_argument("Q0 must lie in [1, 4e18)");
  return {static_cast<u64>(std::floor(Q0)), static_cast<u64>(std::floor(2 * Q0))};
}

}  // namespace

u64 power_closure(u64 t, unsigned k) {
  u64 f = 1;
  const auto ft = factorize(t);
  for (const auto& [p, v] : ft.factors()) {
    const unsigned u = (v + k - 1) / k;
    for (unsigned i = 0; i < u; ++i) f *= p;
  }
  return f;
}

PowerModuliFamily build_family(unsigned k, double Q0, u64 t) {
  if (k < 2) throw std::invalid_argument("build_family: k must be >= 2");
  if (t == 0) throw std::invalid_argument("build_family: t must be positive");
  PowerModuliFamily fam;
  fam.k = k;
  fam.Q0 = Q0;
  fam.t = t;
  std::tie(fam.lower, fam.upper) = integer_range(Q0);
  fam.f_t = power_closure(t, k);
  const auto fk = checked_pow(fam.f_t, k);
  if (!fk) throw std::overflow_error("build_family: f_t^k overflows");
  fam.g_t = *fk / t;

  // s = q1 f_t ranges over (root(lower), root(upper)].
  const u64 s_lo = integer_root(fam.lower, k);
  const u64 s_hi = integer_root(fam.upper, k);
  const u64 q1_first = s_lo / fam.f_t + 1;
  const u64 q1_last = s_hi / fam.f_t;
  for (u64 q1 = q1_first; q1 <= q1_last; ++q1) {
    fam.elements.push_back(*checked_pow(q1, k) * fam.g_t);
  }
  return fam;
}

std::vector<u64> kth_powers_in_dyadic_range(unsigned k, double Q0) {
  if (k < 1) throw std::invalid_argument("kth_powers_in_dyadic_range: k must be >= 1");
  const auto [lo, hi] = integer_range(Q0);
  std::vector<u64> out;
  for (u64 s = integer_root(lo, k) + 1; s <= integer_root(hi, k); ++s) {
    out.push_back(*checked_pow(s, k));
  }
  return out;
}

u64 count_in_window(const PowerModuliFamily& family, double u, u64 m, u64 l) {
  if (!(u > 0)) throw std::invalid_argument("count_in_window: u must be positive");
  if (m == 0) throw std::invalid_argument("count_in_window: m must be positive");
  if (m > 1 && std::gcd(l % m, m) != 1) {
    throw std::invalid_argument("count_in_window: l must be coprime to m");
  }
  std::vector<u64> hits;
  for (u64 q : family.elements) {
    if (m == 1 || q % m == l % m) hits.push_back(q);
  }
  if (hits.empty()) return 0;

  // The count only changes when the right edge passes an element, so the
  // maximum is attained with the right edge on some element (or the window
  // clipped at y = Q0/t).  Windows whose left end falls below Q0/t count
  // no more than the clipped window, which contains every element <= its
  // right edge.
  const long double y0 = static_cast<long double>(family.Q0) / family.t;
  const long double ud = u;
  u64 best = static_cast<u64>(
      std::upper_bound(hits.begin(), hits.end(), y0 + ud,
                       [](long double v, u64 q) { return v < static_cast<long double>(q); }) -
      hits.begin());
  std::size_t left = 0;
  for (std::size_t right = 0; right < hits.size(); ++right) {
    while (static_cast<long double>(hits[right] - hits[left]) >= ud) ++left;
    best = std::max<u64>(best, right - left + 1);
  }
  return best;
}

Rational divisor_gadget_sum(u64 r, unsigned k) {
  if (r == 0) throw std::invalid_argument("divisor_gadget_sum: r must be positive");
  Rational sum = 0;
  for (u64 t : factorize(r).divisors()) sum += Rational(1, power_closure(t, k));
  return sum;
}

u64 divisor_family_size_sum(u64 r, unsigned k, double Q0) {
  u64 total = 0;
  for (u64 t : factorize(r).divisors()) total += build_family(k, Q0, t).size();
  return total;
}

ConditionC5Report verify_condition_c5(const PowerModuliFamily& family, u64 m, u64 l,
                                      double u, double constant, u64 N) {
  const long double root_n = std::sqrt(static_cast<long double>(N));
  const long double slack = 1e-12L;
  const u128 t2 = static_cast<u128>(family.t) * family.t;
  const u128 mt2 = static_cast<u128>(m * family.t) * (m * family.t);
  const long double u_lo = static_cast<long double>(m) * family.Q0 / root_n;
  const long double u_hi = static_cast<long double>(family.Q0) / family.t;
  if (t2 > N || mt2 > N || u < u_lo * (1 - slack) || u > u_hi * (1 + slack)) {
    throw std::invalid_argument("verify_condition_c5: parameters outside admissible range");
  }
  ConditionC5Report rep;
  rep.window_count = count_in_window(family, u, m, l);
  rep.root_count = delta_t(family.k, family.g_t, m, l).count;
  rep.density_factor = 1.0 + (static_cast<double>(family.size()) / m) /
                                 (family.Q0 / static_cast<double>(family.t)) * u;
  if (rep.window_count == 0) {
    rep.minimal_constant = 0;
  } else if (rep.root_count == 0) {
    rep.minimal_constant = std::numeric_limits<double>::infinity();
  } else {
    rep.minimal_constant = static_cast<double>(rep.window_count) /
                           (rep.density_factor * static_cast<double>(rep.root_count));
  }
  rep.holds = static_cast<double>(rep.window_count) <=
              constant * rep.density_factor * static_cast<double>(rep.root_count);
  return rep;
}

}  // namespace sievelab
