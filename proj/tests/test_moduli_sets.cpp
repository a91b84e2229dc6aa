#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "sievelab/modmath.hpp"
#include "sievelab/moduli_sets.hpp"

using namespace sievelab;

namespace {

// {s^k / t : t | s^k, Q0 < s^k <= 2 Q0}
std::vector<u64> scan_family(unsigned k, double Q0, u64 t) {
  std::vector<u64> out;
  for (u64 s = 1;; ++s) {
    const auto sk = checked_pow(s, k);
    if (!sk || static_cast<double>(*sk) > 2 * Q0) break;
    if (static_cast<double>(*sk) > Q0 && *sk % t == 0) out.push_back(*sk / t);
  }
  return out;
}

// Max over y of the qualifying elements in (y, y + u]: the count only
// changes at y = s - u and y = s, so the maximum is taken at one of the
// points max(lo, s - u) or at lo itself.
u64 window_oracle(const PowerModuliFamily& f, double u, u64 m, u64 l) {
  const double lo = f.Q0 / static_cast<double>(f.t), hi = 2 * f.Q0 / static_cast<double>(f.t);
  std::vector<double> ys{lo};
  for (u64 s : f.elements) {
    const double y = std::max(lo, static_cast<double>(s) - u);
    if (y <= hi) ys.push_back(y);
  }
  u64 best = 0;
  for (double y : ys) {
    u64 n = 0;
    for (u64 s : f.elements)
      if (static_cast<double>(s) > y && static_cast<double>(s) <= y + u && (m == 1 || s % m == l)) ++n;
    best = std::max(best, n);
  }
  return best;
}

Rational ratio_power(u64 r, unsigned k) {
  const Rational base(static_cast<long long>(r), static_cast<long long>(factorize(r).phi()));
  Rational out = 1;
  for (unsigned i = 0; i < k; ++i) out *= base;
  return out;
}

}  // namespace

TEST_CASE("build_family examples") {
  const auto a = build_family(3, 100, 1);
  CHECK(a.f_t == 1);
  CHECK(a.g_t == 1);
  CHECK(a.elements == std::vector<u64>{125});
  const auto b = build_family(3, 500, 8);
  CHECK(b.f_t == 2);
  CHECK(b.g_t == 1);
  CHECK(b.elements == std::vector<u64>{64, 125});
  const auto c = build_family(3, 100, 1000);
  CHECK(c.f_t == 10);
  CHECK(c.elements.empty());
}

TEST_CASE("power_closure") {
  CHECK(power_closure(1, 3) == 1);
  CHECK(power_closure(12, 2) == 2 * 3);
  CHECK(power_closure(72, 3) == 2 * 3);  // 2^3 3^2
  CHECK(power_closure(16, 3) == 4);
}

TEST_CASE("build_family matches the scan and the size bound") {
  for (unsigned k = 2; k <= 5; ++k)
    for (double Q0 : {1e2, 1e3, 1e4})
      for (u64 t = 1; t <= 120; ++t) {
        const auto fam = build_family(k, Q0, t);
        REQUIRE(fam.elements == scan_family(k, Q0, t));
        REQUIRE(static_cast<double>(fam.size()) <=
                std::pow(2 * Q0, 1.0 / k) / static_cast<double>(fam.f_t) + 1e-9);
        for (u64 q : fam.elements) {
          const double tq = static_cast<double>(t) * static_cast<double>(q);
          REQUIRE(tq > Q0);
          REQUIRE(tq <= 2 * Q0);
        }
      }
}

TEST_CASE("kth_powers_in_dyadic_range") {
  CHECK(kth_powers_in_dyadic_range(3, 1000) == std::vector<u64>{1331, 1728});
  CHECK(kth_powers_in_dyadic_range(2, 8) == std::vector<u64>{9, 16});
  CHECK(kth_powers_in_dyadic_range(3, 30).empty());
}

TEST_CASE("count_in_window examples") {
  const auto fam = build_family(3, 1000, 1);
  CHECK(count_in_window(fam, 1000, 1, 0) == 2);
  CHECK(count_in_window(fam, 1000, 2, 1) == 1);
  const auto empty = build_family(3, 100, 1000);
  CHECK(count_in_window(empty, 5, 3, 1) == 0);
  CHECK_THROWS_AS(count_in_window(fam, 1000, 4, 2), std::invalid_argument);
}

TEST_CASE("count_in_window matches the endpoint oracle") {
  for (unsigned k = 2; k <= 3; ++k)
    for (u64 t : {u64{1}, u64{2}, u64{4}, u64{12}}) {
      const auto fam = build_family(k, 1e5, t);
      for (double u : {1.0, 37.5, 500.0, 4000.0, 1e5 / static_cast<double>(t)})
        for (u64 m : {u64{1}, u64{3}, u64{7}, u64{10}})
          for (u64 l = 0; l < m; ++l) {
            if (m > 1 && std::gcd(l, m) != 1) continue;
            REQUIRE(count_in_window(fam, u, m, l) == window_oracle(fam, u, m, l));
            if (m == 1) break;
          }
    }
}

TEST_CASE("G examples") {
  CHECK(divisor_gadget_sum(1, 3) == Rational(1));
  CHECK(divisor_gadget_sum(7, 2) == Rational(8, 7));
  CHECK(divisor_gadget_sum(7, 5) == Rational(8, 7));
  CHECK(divisor_gadget_sum(4, 2) == Rational(2));
}

TEST_CASE("G is multiplicative and bounded by (r/phi(r))^k") {
  for (unsigned k = 2; k <= 5; ++k) {
    for (u64 r1 = 1; r1 <= 60; ++r1)
      for (u64 r2 = 1; r2 <= 60; ++r2)
        if (std::gcd(r1, r2) == 1)
          REQUIRE(divisor_gadget_sum(r1 * r2, k) ==
                  divisor_gadget_sum(r1, k) * divisor_gadget_sum(r2, k));
    for (u64 r = 1; r <= 2000; ++r) REQUIRE(divisor_gadget_sum(r, k) <= ratio_power(r, k));
  }
}

TEST_CASE("divisor_family_size_sum") {
  u64 expect = 0;
  for (u64 t : factorize(12).divisors()) expect += build_family(3, 1e4, t).size();
  CHECK(divisor_family_size_sum(12, 3, 1e4) == expect);
}

TEST_CASE("condition C5 instances") {
  const auto empty = build_family(3, 100, 1000);
  // t = 1000 needs sqrt N >= 1000.
  const auto e = verify_condition_c5(empty, 1, 0, 0.1, 0.0, 1'000'000);
  CHECK(e.window_count == 0);
  CHECK(e.minimal_constant == 0.0);
  CHECK(e.holds);

  const auto fam = build_family(3, 500, 8);
  const auto r = verify_condition_c5(fam, 3, 1, 500.0 / 8, 10.0, 576);
  CHECK(r.window_count == count_in_window(fam, 500.0 / 8, 3, 1));
  CHECK(r.root_count == 1);  // x^3 = x mod 3
  CHECK(r.minimal_constant ==
        doctest::Approx(static_cast<double>(r.window_count) /
                        (r.density_factor * static_cast<double>(r.root_count))));
  CHECK(r.holds == (r.minimal_constant <= 10.0));

  const auto sq = build_family(2, 1e4, 1);
  CHECK_THROWS_AS(verify_condition_c5(sq, 5, 1, 1000, 1.0, 100), std::invalid_argument);
  const auto s = verify_condition_c5(sq, 5, 1, 5000, 1.0, 100);
  CHECK(s.window_count == count_in_window(sq, 5000, 5, 1));
  CHECK(s.root_count == 2);
  CHECK(s.minimal_constant > 0);
}
