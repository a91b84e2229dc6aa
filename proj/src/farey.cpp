#include "sievelab/farey.hpp"

#include <algorithm>
#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "sievelab/moduli_sets.hpp"

namespace sievelab {

namespace {

using BigInt = boost::multiprecision::cpp_int;

void require_delta(const Fraction& Delta) {
  if (Delta <= Fraction(0) || Delta > Fraction(1, 2)) {
    throw std::invalid_argument("Delta must satisfy 0 < Delta <= 1/2");
  }
}

// Squarefree divisors of q with their Moebius signs.
std::vector<std::pair<u64, int>> moebius_divisors(u64 q) {
  std::vector<std::pair<u64, int>> out{{1, 1}};
  const auto fq = factorize(q);
  for (const auto& f : fq.factors()) {
    const std::size_t n = out.size();
    for (std::size_t i = 0; i < n; ++i) out.push_back({out[i].first * f.prime, -out[i].second});
  }
  return out;
}

i64 floor_div(i64 a, i64 b) {
  i64 q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

// Integers in [lo, hi] coprime to q.
u64 count_coprime(i64 lo, i64 hi, const std::vector<std::pair<u64, int>>& mu) {
  if (hi < lo) return 0;
  i64 total = 0;
  for (const auto& [d, sign] : mu) {
    const i64 di = static_cast<i64>(d);
    total += sign * (floor_div(hi, di) - floor_div(lo - 1, di));
  }
  return static_cast<u64>(total);
}

bool is_integral(double x) { return std::isfinite(x) && x == std::floor(x) && x < 9e18; }

}  // namespace

std::vector<Fraction> farey_points(double Q0, unsigned k) {
  const auto moduli = kth_powers_in_dyadic_range(k, Q0);
  u64 total = 0;
  for (u64 q : moduli) total += factorize(q).phi();
  if (total > kFareyPointLimit) throw std::invalid_argument("farey_points: more than 10^7 points");
  std::vector<Fraction> points;
  points.reserve(total);
  for (u64 q : moduli) {
    for (u64 a = 1; a <= q; ++a) {
      if (std::gcd(a, q) == 1) points.emplace_back(static_cast<i64>(a), static_cast<i64>(q));
    }
  }
  std::sort(points.begin(), points.end());
  return points;
}

u64 spacing_count(std::span<const Fraction> points, const Fraction& Delta) {
  require_delta(Delta);
  const std::size_t n = points.size();
  if (n == 0) return 0;
  if (Delta == Fraction(1, 2)) return n;
  std::vector<Fraction> x;
  x.reserve(n);
  for (const Fraction& p : points) x.push_back(p.frac());
  std::sort(x.begin(), x.end());
  const Fraction width = Delta + Delta;
  // The best arc can be slid until its left end sits on a point.
  u64 best = 0;
  std::size_t j = 0;
  for (std::size_t i = 0; i < n; ++i) {
    j = std::max(j, i);
    auto unwrapped = [&](std::size_t idx) {
      return idx < n ? x[idx] : x[idx - n] + Fraction(1);
    };
    while (j + 1 < i + n && unwrapped(j + 1) - x[i] <= width) ++j;
    best = std::max<u64>(best, j - i + 1);
  }
  return best;
}

u64 p_alpha(double Q0, unsigned k, const Fraction& alpha, const Fraction& Delta) {
  require_delta(Delta);
  u64 count = 0;
  for (u64 q : kth_powers_in_dyadic_range(k, Q0)) {
    if (Delta == Fraction(1, 2)) {
      count += factorize(q).phi();
      continue;
    }
    const Fraction qf(static_cast<i64>(q));
    const i64 lo = ((alpha - Delta) * qf).ceil();
    const i64 hi = ((alpha + Delta) * qf).floor();
    count += count_coprime(lo, hi, moebius_divisors(q));
  }
  return count;
}

DirichletApproximation dirichlet_approx(const Fraction& alpha, double tau) {
  if (!(tau >= 1)) throw std::invalid_argument("dirichlet_approx: tau must be >= 1");
  // Convergents p/q of alpha; stop at the last one with q <= tau.
  i64 p_prev = 1, q_prev = 0;
  i64 p = alpha.floor(), q = 1;
  Fraction rest = alpha - Fraction(p);
  DirichletApproximation out;
  while (rest != Fraction(0)) {
    const Fraction inv = Fraction(1) / rest;
    const i64 a = inv.floor();
    const i128 q_next = static_cast<i128>(a) * q + q_prev;
    if (static_cast<long double>(q_next) > static_cast<long double>(tau)) {
      out.next_denominator = static_cast<i64>(std::min<i128>(q_next, std::numeric_limits<i64>::max()));
      break;
    }
    const i64 p_next = a * p + p_prev;
    p_prev = p;
    q_prev = q;
    p = p_next;
    q = static_cast<i64>(q_next);
    rest = inv - Fraction(a);
  }
  out.b = p;
  out.r = q;
  out.z = alpha - Fraction(p, q);
  return out;
}

double FareyContext::natural_delta() const { return Q0 * Delta.to_double() / z.to_double(); }

void validate_context(const FareyContext& ctx, bool reduced) {
  const long double tau = ctx.tau;
  const long double delta = ctx.Delta.to_long_double();
  if (ctx.Delta <= Fraction(0) || ctx.Delta > Fraction(1, 2)) {
    throw std::invalid_argument("context: Delta outside (0, 1/2]");
  }
  if (tau < 1 || tau * tau * delta > 1 + 1e-12L) {
    throw std::invalid_argument("context: need 1 <= tau <= Delta^(-1/2)");
  }
  if (ctx.r < 1 || static_cast<long double>(ctx.r) > tau) {
    throw std::invalid_argument("context: need 1 <= r <= tau");
  }
  if (std::gcd(ctx.b, ctx.r) != 1) throw std::invalid_argument("context: need gcd(b, r) = 1");
  if (ctx.z.abs().to_long_double() * ctx.r * tau > 1 + 1e-12L) {
    throw std::invalid_argument("context: need |z| <= 1/(r tau)");
  }
  if (reduced && ctx.z < ctx.Delta) throw std::invalid_argument("context: need z >= Delta");
}

u64 pi_count(const FareyContext& ctx, double delta, double y) {
  const double zd = ctx.z.to_double();
  if (!(zd > 0)) throw std::invalid_argument("pi_count: z must be positive");
  const double lower = ctx.Q0 * ctx.Delta.to_double() / zd;
  if (delta < lower * (1 - 1e-12) || delta > ctx.Q0 * (1 + 1e-12)) {
    throw std::invalid_argument("pi_count: need Q0 Delta / z <= delta <= Q0");
  }
  const long double w = ctx.c6 * delta / std::pow(static_cast<long double>(ctx.Q0), 2.0L / 3.0L);
  const long double centre = std::cbrt(static_cast<long double>(y));
  const i64 q_lo = static_cast<i64>(std::ceil(centre - w));
  const i64 q_hi = static_cast<i64>(std::floor(centre + w));
  const long double rz = static_cast<long double>(ctx.r) * ctx.z.to_long_double();
  const long double m_lo = (y - 4.0L * delta) * rz;
  const long double m_hi = (y + 4.0L * delta) * rz;
  const i64 r = ctx.r;
  u64 count = 0;
  for (i64 q = q_lo; q <= q_hi; ++q) {
    const i128 q3 = static_cast<i128>(q) * q * q;
    i128 c = (-static_cast<i128>(ctx.b) * (q3 % r)) % r;
    if (c < 0) c += r;
    // m = c + r s with m in [m_lo, m_hi]
    const i64 s_lo = static_cast<i64>(std::ceil((m_lo - static_cast<long double>(c)) / r));
    const i64 s_hi = static_cast<i64>(std::floor((m_hi - static_cast<long double>(c)) / r));
    if (s_hi < s_lo) continue;
    count += static_cast<u64>(s_hi - s_lo + 1);
    if (c == 0 && m_lo <= 0 && m_hi >= 0) --count;  // m = 0 is excluded
  }
  return count;
}

PiIntegral pi_integral(const FareyContext& ctx, double delta) {
  const double Q0 = ctx.Q0;
  const long double w = ctx.c6 * delta / std::pow(static_cast<long double>(Q0), 2.0L / 3.0L);
  const long double rz = static_cast<long double>(ctx.r) * ctx.z.to_long_double();
  const long double a = Q0, b = 2.0L * Q0;

  constexpr std::size_t kMaxBreakpoints = 2'000'000;
  const long double expected = (std::cbrt(b) - std::cbrt(a) + 2 * w + 2) * 2 +
                               ((b + 4 * delta) * rz - (a - 4 * delta) * rz + 2) * 2;
  std::vector<long double> cuts{a, b};
  PiIntegral out;
  if (expected <= kMaxBreakpoints) {
    auto add = [&](long double y) {
      if (y > a && y < b) cuts.push_back(y);
    };
    // q-interval edges: y^(1/3) -+ w = n
    const i64 n_lo = static_cast<i64>(std::floor(std::cbrt(a) - w)) - 1;
    const i64 n_hi = static_cast<i64>(std::ceil(std::cbrt(b) + w)) + 1;
    for (i64 n = n_lo; n <= n_hi; ++n) {
      const long double up = n + w, down = n - w;
      add(up * up * up);
      add(down * down * down);
    }
    // m-interval edges: (y -+ 4 delta) r z = m
    const i64 m_lo = static_cast<i64>(std::floor((a - 4 * delta) * rz)) - 1;
    const i64 m_hi = static_cast<i64>(std::ceil((b + 4 * delta) * rz)) + 1;
    for (i64 m = m_lo; m <= m_hi; ++m) {
      add(m / rz + 4 * delta);
      add(m / rz - 4 * delta);
    }
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  } else {
    constexpr int kPanels = 4096;
    cuts.clear();
    for (int i = 0; i <= kPanels; ++i) cuts.push_back(a + (b - a) * i / kPanels);
    out.exact = false;
  }
  long double total = 0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const long double width = cuts[i + 1] - cuts[i];
    if (width <= 0) continue;
    const double mid = static_cast<double>(0.5L * (cuts[i] + cuts[i + 1]));
    total += width * pi_count(ctx, delta, mid);
  }
  out.value = static_cast<double>(total);
  out.pieces = cuts.size() - 1;
  return out;
}

double prop1_rhs(const FareyContext& ctx, double eps) {
  if (ctx.z < ctx.Delta) throw std::invalid_argument("prop1_rhs: need z >= Delta");
  const double D = ctx.Delta.to_double(), z = ctx.z.to_double();
  return 1.0 + std::pow(D, -eps) * (std::pow(ctx.Q0, 4.0 / 3.0) * D + ctx.Q0 * ctx.r * z);
}

double prop2_rhs(const FareyContext& ctx, double eps) {
  if (ctx.z < ctx.Delta) throw std::invalid_argument("prop2_rhs: need z >= Delta");
  const double D = ctx.Delta.to_double(), z = ctx.z.to_double();
  const double r = static_cast<double>(ctx.r);
  return std::pow(D, -eps) * (std::pow(ctx.Q0, 4.0 / 3.0) * D +
                              std::cbrt(ctx.Q0) * D / (std::cbrt(r) * z) +
                              std::sqrt(r * z / D));
}

TauDelta choose_tau_delta(double N, double Q0) {
  if (!(N >= 1) || !(Q0 >= 1)) throw std::invalid_argument("choose_tau_delta: need N, Q0 >= 1");
  bool too_large = false;
  bool large_branch = false;
  if (is_integral(N) && is_integral(Q0)) {
    const BigInt n(static_cast<u64>(N)), q(static_cast<u64>(Q0));
    too_large = BigInt(q * q) > BigInt(n * n * n);
    large_branch = boost::multiprecision::pow(q, 8) >= boost::multiprecision::pow(n, 7);
  } else {
    const double ln = std::log(N), lq = std::log(Q0);
    too_large = 2 * lq > 3 * ln;
    large_branch = 8 * lq >= 7 * ln;
  }
  if (too_large) throw std::invalid_argument("choose_tau_delta: need Q0 <= N^(3/2)");
  TauDelta out;
  out.large_q0 = large_branch;
  if (large_branch) {
    out.tau = std::exp(1.2 * std::log(N) - 0.8 * std::log(Q0));
    out.Delta = 1.0 / N;
  } else {
    out.tau = std::exp(4.0 / 7.0 * std::log(Q0));
    out.Delta = std::exp(-8.0 / 7.0 * std::log(Q0));
  }
  // 1 <= tau <= Delta^(-1/2), up to rounding in the exponentials.
  const double cap = 1.0 / std::sqrt(out.Delta);
  if (out.tau < 1 - 1e-12 || out.tau > cap * (1 + 1e-12)) {
    throw std::logic_error("choose_tau_delta: tau outside [1, Delta^(-1/2)]");
  }
  out.tau = std::clamp(out.tau, 1.0, cap);
  return out;
}

ReductionReport reduce_to_rational_centres(double Q0, unsigned k, const Fraction& Delta,
                                           double tau) {
  require_delta(Delta);
  if (!(tau >= 1) || static_cast<long double>(tau) * tau * Delta.to_long_double() > 1) {
    throw std::invalid_argument("reduce_to_rational_centres: need 1 <= tau <= Delta^(-1/2)");
  }
  const auto points = farey_points(Q0, k);
  ReductionReport rep;
  rep.spacing = spacing_count(points, Delta);
  for (const Fraction& x : points) {
    const Fraction anchor = (x + Delta).frac();
    const auto d = dirichlet_approx(anchor, tau);
    u64 value = 0;
    if (d.z >= Delta) {
      value = p_alpha(Q0, k, anchor, Delta);
    } else if (d.z <= -Delta) {
      // P(alpha) = P(-alpha) = P(-b/r + |z|)
      value = p_alpha(Q0, k, -anchor, Delta);
    } else {
      // |z| < Delta: the window sits inside the two windows centred at b/r -+ Delta.
      const Fraction centre(d.b, d.r);
      value = std::max(p_alpha(Q0, k, centre + Delta, Delta),
                       p_alpha(Q0, k, -centre + Delta, Delta));
    }
    rep.reduced_max = std::max(rep.reduced_max, value);
    ++rep.anchors;
  }
  return rep;
}

}  // namespace sievelab
