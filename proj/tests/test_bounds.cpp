#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "sievelab/bounds.hpp"

using namespace sievelab;

namespace {

// Literal formulas in plain pow arithmetic, written independently of the
// log-domain implementation.
double thm1_direct(double N, double Q, unsigned k, double eps, double Z) {
  return std::pow(std::log(std::log(10 * N * Q)), k + 1) *
         (std::pow(Q, k + 1) + N + std::pow(N, 0.5 + eps) * std::pow(Q, k)) * Z;
}

double zhao_direct(double N, double Q, unsigned k, double eps, double Z) {
  const double kap = std::pow(2.0, k - 1);
  return (std::pow(Q, k + 1) +
          (N * std::pow(Q, 1 - 1 / kap) + std::pow(N, 1 - 1 / kap) * std::pow(Q, 1 + k / kap)) *
              std::pow(N, eps)) *
         Z;
}

double thm2_direct(double N, double Q, double eps, double Z) {
  if (Q < std::pow(N, 7.0 / 24)) return N * std::pow(Q, 6.0 / 7 + eps) * Z;
  return std::pow(N, eps) * (std::pow(Q, 4) + std::pow(N, 0.9) * std::pow(Q, 1.2)) * Z;
}

double edge(const RegimeTable& t, BoundKind kind) {
  const auto w = t.window(kind);
  REQUIRE(w.has_value());
  return w->hi;
}

}  // namespace

TEST_CASE("kappa") {
  CHECK(kappa(2) == 2);
  CHECK(kappa(3) == 4);
  CHECK(kappa(5) == 16);
}

TEST_CASE("thm1 examples") {
  const double lll = std::log(std::log(10.0));
  CHECK(thm1_rhs(1, 1, 2, 0, 1) == doctest::Approx(lll * lll * lll * 3).epsilon(1e-12));
  CHECK(thm1_rhs(1, 1, 2, 0, 1) == doctest::Approx(thm1_direct(1, 1, 2, 0, 1)).epsilon(1e-12));
  CHECK(thm1_rhs(1e4, 10, 3, 0.05, 1) == doctest::Approx(thm1_direct(1e4, 10, 3, 0.05, 1)).epsilon(1e-12));
  double last = 0;
  for (double Q = 1; Q <= 1000; Q *= 1.3) {
    const double v = thm1_rhs(1e6, Q, 3, 0.05, 2.5);
    CHECK(v >= last);
    last = v;
  }
  CHECK_THROWS(thm1_rhs(100, 0.5, 3, 0.05, 1));
  CHECK_THROWS(thm1_rhs(100, 2, 1, 0.05, 1));
}

TEST_CASE("thm2 branches") {
  CHECK(thm2_rhs(12345, 1, 0.05, 1) == doctest::Approx(12345));
  const auto seam = thm2_branches(std::ldexp(1.0, 24), std::ldexp(1.0, 7), 0.05, 1);
  CHECK(seam.at_seam);
  CHECK(seam.upper_selected);
  const double N = std::ldexp(1.0, 24), Q = 128;
  CHECK(seam.lower == doctest::Approx(N * std::pow(Q, 6.0 / 7 + 0.05)));
  CHECK(seam.upper == doctest::Approx(std::pow(N, 0.05) * (std::pow(Q, 4) + std::pow(N, 0.9) * std::pow(Q, 1.2))));
  const auto below = thm2_branches(N, 127, 0.05, 1);
  CHECK_FALSE(below.upper_selected);
  CHECK_FALSE(below.at_seam);
  CHECK(50 > std::pow(10.0, 28.0 / 24));
  CHECK(thm2_rhs(1e4, 50, 0.05, 1) == doctest::Approx(thm2_direct(1e4, 50, 0.05, 1)).epsilon(1e-12));
  CHECK(thm2_rhs(1e4, 14, 0.05, 1) == doctest::Approx(thm2_direct(1e4, 14, 0.05, 1)).epsilon(1e-12));
  CHECK_THROWS(thm2_rhs(1e4, 101, 0.05, 1));
  CHECK_THROWS(thm2_rhs(1e4, 0.5, 0.05, 1));
}

TEST_CASE("zhao and classical") {
  CHECK_THROWS(zhao_rhs(100, 2, 1, 0.05, 1));
  for (double Q : {1.0, 3.0, 17.0}) {
    const auto [a, b] = classical_rhs(Q, Q, 3, 2);
    CHECK(a == doctest::Approx((std::pow(Q, 4) + Q * Q) * 2));
    CHECK(b == doctest::Approx((std::pow(Q, 6) + Q) * 2));
  }
  const auto [a, b] = classical_rhs(1e6, 100, 3, 1);
  CHECK(a == doctest::Approx(1e8 + 1e8));
  CHECK(b == doctest::Approx(1e12 + 1e6));
  CHECK(zhao_rhs(1e6, 100, 3, 0.05, 1) == doctest::Approx(zhao_direct(1e6, 100, 3, 0.05, 1)).epsilon(1e-12));
  CHECK(thm1_rhs(1e6, 100, 3, 0.05, 1) == doctest::Approx(thm1_direct(1e6, 100, 3, 0.05, 1)).epsilon(1e-12));
}

TEST_CASE("every bound is homogeneous of degree one in Z") {
  for (double Z : {0.5, 3.0, 1e6}) {
    CHECK(thm1_rhs(1e5, 20, 3, 0.05, Z) == doctest::Approx(Z * thm1_rhs(1e5, 20, 3, 0.05, 1)).epsilon(1e-14));
    CHECK(thm2_rhs(1e5, 20, 0.05, Z) == doctest::Approx(Z * thm2_rhs(1e5, 20, 0.05, 1)).epsilon(1e-14));
    CHECK(zhao_rhs(1e5, 20, 4, 0.05, Z) == doctest::Approx(Z * zhao_rhs(1e5, 20, 4, 0.05, 1)).epsilon(1e-14));
    CHECK(classical_rhs(1e5, 20, 2, Z).first == doctest::Approx(Z * classical_rhs(1e5, 20, 2, 1).first).epsilon(1e-14));
  }
}

TEST_CASE("spot orderings at eps = 0, k = 2, Q = sqrt N") {
  for (double N : {1e4, 1e6, 1e8}) {
    const double Q = std::sqrt(N);
    const double zhao = zhao_rhs(N, Q, 2, 0, 1);
    const auto [a, b] = classical_rhs(N, Q, 2, 1);
    // Q^3 = N^1.5 = Q N, so classical_a = 2 N^1.5 and classical_b = N^2 + N.
    CHECK(a == doctest::Approx(2 * std::pow(N, 1.5)));
    CHECK(b > a);
    // Zhao: Q^3 + N Q^(1/2) + N^(1/2) Q^2 = N^1.5 + N^1.25 + N^1.5.
    CHECK(zhao == doctest::Approx(2 * std::pow(N, 1.5) + std::pow(N, 1.25)));
    CHECK(zhao > a);
  }
}

TEST_CASE("log-domain values match the direct formulas") {
  for (double N : {1e3, 1e8, 1e12})
    for (double Q : {1.0, 7.0, 300.0})
      for (unsigned k : {2u, 3u, 5u}) {
        const double lN = std::log(N), lQ = std::log(Q);
        CHECK(bound_log(BoundKind::kThm1, lN, lQ, k, 0.05) == doctest::Approx(std::log(thm1_direct(N, Q, k, 0.05, 1))));
        CHECK(bound_log(BoundKind::kZhao, lN, lQ, k, 0.05) == doctest::Approx(std::log(zhao_direct(N, Q, k, 0.05, 1))));
        CHECK(bound_log(BoundKind::kThm1, lN, lQ, k, 0.05, BoundForm::kPolynomial) ==
              doctest::Approx(std::log(std::pow(Q, k + 1) + N + std::pow(N, 0.55) * std::pow(Q, k))));
      }
  // Beyond double range the log form stays finite.
  CHECK(std::isfinite(bound_log(BoundKind::kThm1, std::log(1e300) * 3, std::log(1e300), 5, 0.05)));
}

TEST_CASE("bound report") {
  const auto r = make_bound_report(4096, 16, 3, 0.05, 2.0, 100.0);
  CHECK(r.rhs_thm2.has_value());
  CHECK(r.rhs_thm1 == doctest::Approx(thm1_rhs(4096, 16, 3, 0.05, 2.0)));
  for (const auto& [name, v] : r.named_rhs()) CHECK(v > 0);
  for (const auto& [name, ratio] : r.ratios()) {
    CHECK(std::isfinite(ratio));
    CHECK(ratio > 0);
  }
  CHECK(r.ratios().size() == r.named_rhs().size());
  CHECK_FALSE(make_bound_report(4096, 100, 3, 0.05, 1.0).rhs_thm2.has_value());
  CHECK_FALSE(make_bound_report(4096, 16, 4, 0.05, 1.0).rhs_thm2.has_value());
  CHECK(make_bound_report(4096, 16, 3, 0.05, 1.0).ratios().empty());
}

TEST_CASE("regime examples at N = 1e12, k = 3") {
  const double N = 1e12, eps = 0.01;
  auto winner = [&](double x) {
    const double lN = std::log(N), lQ = x * lN;
    BoundKind best = BoundKind::kClassicalB;
    double bv = INFINITY;
    for (auto kind : {BoundKind::kClassicalB, BoundKind::kClassicalA, BoundKind::kZhao, BoundKind::kThm1, BoundKind::kThm2}) {
      const double v = bound_log(kind, lN, lQ, 3, eps, BoundForm::kPolynomial);
      if (v < bv) {
        bv = v;
        best = kind;
      }
    }
    return best;
  };
  CHECK(winner(0.18) == BoundKind::kThm1);
  CHECK(winner(0.30) == BoundKind::kThm2);
  CHECK(winner(0.01) == BoundKind::kClassicalB);
  const auto t = regime_table(N, 3, eps, {2001, BoundForm::kPolynomial});
  const auto w1 = t.window(BoundKind::kThm1);
  REQUIRE(w1.has_value());
  CHECK(w1->lo < 0.18);
  CHECK(w1->hi > 0.18);
  const auto w2 = t.window(BoundKind::kThm2);
  REQUIRE(w2.has_value());
  CHECK(w2->lo < 0.30);
  CHECK(w2->hi > 0.30);
  for (const auto& p : t.points) CHECK(p.winner == winner(p.exponent));
  for (std::size_t i = 1; i < t.windows.size(); ++i) CHECK(t.windows[i].lo >= t.windows[i - 1].hi - 1e-12);
}

TEST_CASE("thm1 window edge approaches the Zhao crossover as N grows") {
  CHECK(thm1_zhao_crossover(3) == doctest::Approx(2.0 / 9));
  for (unsigned k : {3u, 4u, 5u}) {
    const double target = thm1_zhao_crossover(k);
    std::vector<double> gaps;
    for (double N : {1e6, 1e9, 1e12}) {
      const auto t = regime_table(N, k, 0.01, {4001, BoundForm::kPolynomial});
      gaps.push_back(std::fabs(edge(t, BoundKind::kThm1) - target));
    }
    CHECK(gaps.back() < 0.01);
    // The stated exponent (kappa - 2) / (2 (k - 1) kappa - 2k) lies inside the measured window.
    const double kap = kappa(k);
    const double stated = (kap - 2) / (2 * (k - 1) * kap - 2 * k);
    const auto t = regime_table(1e12, k, 0.01, {4001, BoundForm::kPolynomial});
    const auto w = t.window(BoundKind::kThm1);
    REQUIRE(w.has_value());
    CHECK(w->lo < stated);
    CHECK(w->hi > stated);
    MESSAGE("k=" << k << " edge gaps " << gaps[0] << " " << gaps[1] << " " << gaps[2]);
  }
}

TEST_CASE("leading-term exponents are exact at the crossover") {
  const auto t = regime_table(1e30, 3, 0.0, {4001, BoundForm::kLeadingTerm});
  const auto w = t.window(BoundKind::kThm1);
  REQUIRE(w.has_value());
  CHECK(w->lo == doctest::Approx(1.0 / 6).epsilon(1e-3));
  CHECK(w->hi == doctest::Approx(2.0 / 9).epsilon(1e-3));
}

TEST_CASE("fit_constant") {
  CHECK(fit_constant({{1, 1}}).C == 1);
  const auto f = fit_constant({{2, 1}, {1, 2}});
  CHECK(f.C == 2);
  CHECK(f.argmax == 0);
  CHECK_THROWS(fit_constant({}));
  CHECK_THROWS(fit_constant({{1, 0}}));
  const std::vector<std::pair<double, double>> m{{3, 7}, {5, 2}, {0.1, 0.01}};
  for (double s : {1e-3, 2.0, 1e9}) {
    std::vector<std::pair<double, double>> scaled;
    for (auto [l, r] : m) scaled.emplace_back(l * s, r * s);
    CHECK(fit_constant(scaled).C == doctest::Approx(fit_constant(m).C).epsilon(1e-14));
    CHECK(fit_constant(scaled).argmax == fit_constant(m).argmax);
  }
}
