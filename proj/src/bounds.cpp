#include "sievelab/bounds.hpp"

#include <algorithm>
#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>
#include <initializer_list>
#include <limits>
#include <stdexcept>

namespace sievelab {

namespace {

double log_sum_exp(std::initializer_list<double> xs, bool max_only) {
  const double m = std::max(xs);
  if (max_only) return m;
  double s = 0;
  for (double x : xs) s += std::exp(x - m);
  return m + std::log(s);
}

void require_inputs(double N, double Q, double Z) {
  if (!(N >= 1) || !(Q >= 1) || !std::isfinite(N) || !std::isfinite(Q)) {
    throw std::invalid_argument("bounds: need finite N, Q >= 1");
  }
  if (!(Z > 0) || !std::isfinite(Z)) throw std::invalid_argument("bounds: need finite Z > 0");
}

void require_k(unsigned k) {
  if (k < 2) throw std::invalid_argument("bounds: need k >= 2");
}

bool small_integer(double x) { return x == std::floor(x) && x < 9007199254740992.0; }

double thm2_lower_log(double lN, double lQ, double eps) { return lN + (6.0 / 7.0 + eps) * lQ; }

double thm2_upper_log(double lN, double lQ, double eps, bool asymptotic) {
  return eps * lN + log_sum_exp({4 * lQ, 0.9 * lN + 1.2 * lQ}, asymptotic);
}

}  // namespace

double kappa(unsigned k) {
  if (k < 1 || k > 64) throw std::invalid_argument("kappa: need 1 <= k <= 64");
  return std::ldexp(1.0, static_cast<int>(k) - 1);
}

const char* to_string(BoundKind kind) {
  switch (kind) {
    case BoundKind::kClassicalA: return "classical_a";
    case BoundKind::kClassicalB: return "classical_b";
    case BoundKind::kZhao: return "zhao";
    case BoundKind::kThm1: return "thm1";
    case BoundKind::kThm2: return "thm2";
  }
  return "?";
}

double bound_log(BoundKind kind, double lN, double lQ, unsigned k, double eps, BoundForm form) {
  const double kk = k;
  const bool asymptotic = form == BoundForm::kLeadingTerm;
  switch (kind) {
    case BoundKind::kClassicalA:
      return log_sum_exp({(kk + 1) * lQ, lQ + lN}, asymptotic);
    case BoundKind::kClassicalB:
      return log_sum_exp({2 * kk * lQ, lN}, asymptotic);
    case BoundKind::kZhao: {
      require_k(k);
      const double kap = kappa(k);
      const double mid = log_sum_exp({lN + (1 - 1 / kap) * lQ, (1 - 1 / kap) * lN + (1 + kk / kap) * lQ},
                                     asymptotic);
      return log_sum_exp({(kk + 1) * lQ, eps * lN + mid}, asymptotic);
    }
    case BoundKind::kThm1: {
      require_k(k);
      const double core = log_sum_exp({(kk + 1) * lQ, lN, (0.5 + eps) * lN + kk * lQ}, asymptotic);
      if (form != BoundForm::kFull) return core;
      return (kk + 1) * std::log(std::log(std::log(10.0) + lN + lQ)) + core;
    }
    case BoundKind::kThm2:
      return 24 * lQ >= 7 * lN ? thm2_upper_log(lN, lQ, eps, asymptotic)
                               : thm2_lower_log(lN, lQ, eps);
  }
  throw std::logic_error("bound_log: unknown bound");
}

double thm1_rhs(double N, double Q, unsigned k, double eps, double Z) {
  require_inputs(N, Q, Z);
  require_k(k);
  return std::exp(bound_log(BoundKind::kThm1, std::log(N), std::log(Q), k, eps)) * Z;
}

Thm2Branches thm2_branches(double N, double Q, double eps, double Z) {
  require_inputs(N, Q, Z);
  const double lN = std::log(N), lQ = std::log(Q);
  Thm2Branches out;
  if (small_integer(N) && small_integer(Q)) {
    using boost::multiprecision::cpp_int;
    const cpp_int n(static_cast<std::uint64_t>(N)), q(static_cast<std::uint64_t>(Q));
    if (q * q > n) throw std::invalid_argument("thm2: need Q <= N^(1/2)");
    const cpp_int q24 = boost::multiprecision::pow(q, 24), n7 = boost::multiprecision::pow(n, 7);
    out.upper_selected = q24 >= n7;
    out.at_seam = q24 == n7;
  } else {
    if (2 * lQ > lN) throw std::invalid_argument("thm2: need Q <= N^(1/2)");
    out.upper_selected = 24 * lQ >= 7 * lN;
  }
  out.lower = std::exp(thm2_lower_log(lN, lQ, eps)) * Z;
  out.upper = std::exp(thm2_upper_log(lN, lQ, eps, false)) * Z;
  return out;
}

double thm2_rhs(double N, double Q, double eps, double Z) {
  const auto b = thm2_branches(N, Q, eps, Z);
  return b.upper_selected ? b.upper : b.lower;
}

double zhao_rhs(double N, double Q, unsigned k, double eps, double Z) {
  require_inputs(N, Q, Z);
  require_k(k);
  return std::exp(bound_log(BoundKind::kZhao, std::log(N), std::log(Q), k, eps)) * Z;
}

std::pair<double, double> classical_rhs(double N, double Q, unsigned k, double Z) {
  require_inputs(N, Q, Z);
  if (k < 1) throw std::invalid_argument("classical_rhs: need k >= 1");
  const double lN = std::log(N), lQ = std::log(Q);
  return {std::exp(bound_log(BoundKind::kClassicalA, lN, lQ, k, 0)) * Z,
          std::exp(bound_log(BoundKind::kClassicalB, lN, lQ, k, 0)) * Z};
}

std::vector<std::pair<std::string, double>> BoundReport::named_rhs() const {
  std::vector<std::pair<std::string, double>> out{{"classical_a", rhs_classical_a},
                                                  {"classical_b", rhs_classical_b},
                                                  {"zhao", rhs_zhao},
                                                  {"thm1", rhs_thm1}};
  if (rhs_thm2) out.emplace_back("thm2", *rhs_thm2);
  return out;
}

std::vector<std::pair<std::string, double>> BoundReport::ratios() const {
  std::vector<std::pair<std::string, double>> out;
  if (!lhs) return out;
  for (const auto& [name, rhs] : named_rhs()) out.emplace_back(name, *lhs / rhs);
  return out;
}

BoundReport make_bound_report(double N, double Q, unsigned k, double eps, double Z,
                              std::optional<double> lhs) {
  BoundReport r;
  r.N = N;
  r.Q = Q;
  r.k = k;
  r.epsilon = eps;
  r.Z = Z;
  r.lhs = lhs;
  std::tie(r.rhs_classical_a, r.rhs_classical_b) = classical_rhs(N, Q, k, Z);
  r.rhs_zhao = zhao_rhs(N, Q, k, eps, Z);
  r.rhs_thm1 = thm1_rhs(N, Q, k, eps, Z);
  if (k == 3 && Q * Q <= N) r.rhs_thm2 = thm2_rhs(N, Q, eps, Z);
  return r;
}

std::optional<RegimeWindow> RegimeTable::window(BoundKind bound) const {
  std::optional<RegimeWindow> widest;
  for (const auto& w : windows) {
    if (w.bound == bound && (!widest || w.hi - w.lo > widest->hi - widest->lo)) widest = w;
  }
  return widest;
}

RegimeTable regime_table(double N, unsigned k, double eps, const RegimeOptions& options) {
  require_k(k);
  if (!(N > 1) || !std::isfinite(N)) throw std::invalid_argument("regime_table: need N > 1");
  if (options.grid_points < 2) throw std::invalid_argument("regime_table: need >= 2 grid points");
  std::vector<BoundKind> kinds{BoundKind::kClassicalB, BoundKind::kClassicalA, BoundKind::kZhao,
                               BoundKind::kThm1};
  if (k == 3) kinds.push_back(BoundKind::kThm2);
  const double lN = std::log(N);
  auto value = [&](BoundKind kind, double x) {
    return bound_log(kind, lN, x * lN, k, eps, options.form);
  };

  RegimeTable table;
  table.N = N;
  table.k = k;
  table.epsilon = eps;
  table.form = options.form;
  const std::size_t n = options.grid_points;
  for (std::size_t i = 0; i < n; ++i) {
    RegimePoint p;
    p.exponent = 0.5 * static_cast<double>(i) / static_cast<double>(n - 1);
    double best = std::numeric_limits<double>::infinity();
    for (BoundKind kind : kinds) {
      const double v = value(kind, p.exponent);
      p.log_values.emplace_back(kind, v);
      if (v < best) {
        best = v;
        p.winner = kind;
      }
    }
    table.points.push_back(std::move(p));
  }

  double run_start = 0;
  for (std::size_t i = 1; i < n; ++i) {
    const BoundKind a = table.points[i - 1].winner, b = table.points[i].winner;
    if (a == b) continue;
    double lo = table.points[i - 1].exponent, hi = table.points[i].exponent;
    for (int it = 0; it < 100 && hi - lo > 1e-15; ++it) {
      const double mid = 0.5 * (lo + hi);
      (value(a, mid) <= value(b, mid) ? lo : hi) = mid;
    }
    const double x = 0.5 * (lo + hi);
    table.crossovers.push_back({a, b, x});
    table.windows.push_back({a, run_start, x});
    run_start = x;
  }
  table.windows.push_back({table.points.back().winner, run_start, 0.5});
  return table;
}

double thm1_zhao_crossover(unsigned k) {
  require_k(k);
  const double kap = kappa(k);
  return kap / (2 * (k - 1) * kap + 2);
}

FitResult fit_constant(const std::vector<std::pair<double, double>>& measurements) {
  if (measurements.empty()) throw std::invalid_argument("fit_constant: empty input");
  FitResult fit;
  fit.C = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < measurements.size(); ++i) {
    const auto [lhs, rhs] = measurements[i];
    if (!(rhs > 0)) throw std::invalid_argument("fit_constant: rhs must be positive");
    if (!std::isfinite(lhs)) throw std::invalid_argument("fit_constant: lhs must be finite");
    const double ratio = lhs / rhs;
    if (ratio > fit.C) {
      fit.C = ratio;
      fit.argmax = i;
    }
  }
  return fit;
}

}  // namespace sievelab
