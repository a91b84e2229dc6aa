#include <doctest.h>

#include <boost/multiprecision/cpp_int.hpp>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "sievelab/modmath.hpp"

using namespace sievelab;

namespace {

// Totient, divisor count and distinct prime count for all n <= limit by sieving.
struct SieveTables {
  std::vector<u64> phi, tau;
  std::vector<unsigned> omega;
};

SieveTables sieve_tables(u64 limit) {
  SieveTables t;
  t.phi.resize(limit + 1);
  t.tau.assign(limit + 1, 0);
  t.omega.assign(limit + 1, 0);
  std::iota(t.phi.begin(), t.phi.end(), u64{0});
  for (u64 p = 2; p <= limit; ++p) {
    if (t.omega[p] != 0) continue;  // composite
    for (u64 n = p; n <= limit; n += p) {
      t.phi[n] -= t.phi[n] / p;
      ++t.omega[n];
    }
  }
  for (u64 d = 1; d <= limit; ++d)
    for (u64 n = d; n <= limit; n += d) ++t.tau[n];
  return t;
}

}  // namespace

TEST_CASE("factorize examples") {
  CHECK(factorize(1).factors().empty());
  CHECK(factorize(360).factors() == std::vector<PrimePower>{{2, 3}, {3, 2}, {5, 1}});
  CHECK(factorize(97).factors() == std::vector<PrimePower>{{97, 1}});
  const u64 big = u64{4294967291} * 3;  // largest 32-bit prime times 3
  CHECK(factorize(big).factors() == std::vector<PrimePower>{{3, 1}, {4294967291, 1}});
  CHECK_THROWS_AS(factorize(0), std::invalid_argument);
}

TEST_CASE("factorization multiplies back and uses increasing primes") {
  for (u64 n = 1; n <= 200'000; ++n) {
    const auto f = factorize(n);
    u64 prod = 1, last = 1;
    bool ok = true;
    for (const auto& pp : f.factors()) {
      ok = ok && pp.prime > last && is_prime(pp.prime) && pp.exponent >= 1;
      last = pp.prime;
      for (unsigned i = 0; i < pp.exponent; ++i) prod *= pp.prime;
    }
    if (!ok || prod != n) FAIL("bad factorization of " << n);
  }
}

TEST_CASE("phi, omega and tau agree with sieved tables") {
  constexpr u64 kLimit = 100'000;
  const auto t = sieve_tables(kLimit);
  for (u64 n = 1; n <= kLimit; ++n) {
    const auto f = factorize(n);
    if (f.phi() != t.phi[n] || f.tau() != t.tau[n] || f.omega() != t.omega[n])
      FAIL("arithmetic function mismatch at " << n);
  }
}

TEST_CASE("divisors and radical") {
  const auto f = factorize(72);
  CHECK(f.divisors() == std::vector<u64>{1, 2, 3, 4, 6, 8, 9, 12, 18, 24, 36, 72});
  CHECK(f.radical() == 6);
  CHECK_THROWS(FactoredInteger(12, {{2, 2}, {5, 1}}));
  CHECK_THROWS(FactoredInteger(6, {{3, 1}, {2, 1}}));
}

TEST_CASE("is_prime") {
  CHECK_FALSE(is_prime(0));
  CHECK_FALSE(is_prime(1));
  CHECK(is_prime(2));
  CHECK(is_prime(18446744073709551557ull));        // largest 64-bit prime
  CHECK_FALSE(is_prime(3215031751ull));            // strong pseudoprime to 2, 3, 5, 7
  CHECK_FALSE(is_prime(u64{4294967291} * 4294967279ull));
}

TEST_CASE("mod_pow examples") {
  CHECK(mod_pow(2, 10, 1000) == 24);
  CHECK(mod_pow(5, 3, 7) == 6);
  CHECK(mod_pow(123, 0, 1) == 0);
  CHECK(mod_pow(-1, 3, 7) == 6);
  CHECK_THROWS(mod_pow(2, 3, 0));
  CHECK_THROWS(mod_pow(2, 3, kModulusLimit));
}

TEST_CASE("mod_pow matches repeated multiplication") {
  for (u64 m = 1; m <= 1000; ++m) {
    for (i64 base : {i64{-7}, i64{-1}, i64{0}, i64{1}, i64{2}, i64{3}, static_cast<i64>(m) - 1,
                     static_cast<i64>(m) + 5, i64{123456789}}) {
      u64 acc = 1 % m;
      for (u64 e = 0; e <= 20; ++e) {
        if (mod_pow(base, e, m) != acc) FAIL("mod_pow(" << base << "," << e << "," << m << ")");
        acc = acc * reduce(base, m) % m;
      }
    }
  }
}

TEST_CASE("mul_mod near the modulus limit matches multiprecision") {
  using boost::multiprecision::cpp_int;
  const u64 m = kModulusLimit - 25;
  u64 a = 0x7FFF'FFFF'FFFF'FFF0ull;
  for (int i = 0; i < 1000; ++i) {
    const u64 b = (a * 6364136223846793005ull + 1442695040888963407ull) % m;
    const cpp_int expect = (cpp_int(a % m) * cpp_int(b)) % cpp_int(m);
    CHECK(cpp_int(mul_mod(a % m, b, m)) == expect);
    a = b + i;
  }
}

TEST_CASE("mod_inverse") {
  CHECK(mod_inverse(3, 7) == u64{5});
  CHECK_FALSE(mod_inverse(2, 4).has_value());
  CHECK(mod_inverse(-2, 7) == u64{3});
  for (u64 m = 2; m <= 300; ++m)
    for (i64 a = 0; a < static_cast<i64>(m); ++a) {
      const auto inv = mod_inverse(a, m);
      const bool unit = std::gcd(static_cast<u64>(a), m) == 1;
      REQUIRE(inv.has_value() == unit);
      if (inv) REQUIRE(static_cast<u64>(a) * *inv % m == 1);
    }
}

TEST_CASE("crt_combine") {
  const std::vector<Congruence> two{{1, 2}, {2, 3}};
  CHECK(crt_combine(two) == Congruence{5, 6});
  const std::vector<Congruence> three{{2, 3}, {3, 5}, {2, 7}};
  CHECK(crt_combine(three) == Congruence{23, 105});
  const std::vector<Congruence> clash{{1, 4}, {3, 6}};
  CHECK_THROWS_AS(crt_combine(clash), std::invalid_argument);
  const std::vector<Congruence> zero{{0, 0}};
  CHECK_THROWS_AS(crt_combine(zero), std::invalid_argument);
  CHECK(crt_combine(std::vector<Congruence>{}) == Congruence{0, 1});
}

TEST_CASE("crt_combine solution satisfies every congruence") {
  const std::vector<u64> moduli{4, 9, 25, 7, 11};
  for (u64 seed = 0; seed < 500; ++seed) {
    std::vector<Congruence> sys;
    for (std::size_t i = 0; i < moduli.size(); ++i)
      sys.push_back({(seed * 2654435761u + i * 97) % moduli[i], moduli[i]});
    const auto c = crt_combine(sys);
    REQUIRE(c.modulus == 4 * 9 * 25 * 7 * 11);
    REQUIRE(c.residue < c.modulus);
    for (const auto& s : sys) REQUIRE(c.residue % s.modulus == s.residue);
  }
}

TEST_CASE("integer_root and checked_pow") {
  CHECK(integer_root(0, 3) == 0);
  CHECK(integer_root(26, 3) == 2);
  CHECK(integer_root(27, 3) == 3);
  CHECK(integer_root(~u64{0}, 2) == 4294967295ull);
  CHECK(integer_root(~u64{0}, 1) == ~u64{0});
  for (u64 n = 1; n < 5000; ++n)
    for (unsigned k = 2; k <= 5; ++k) {
      const u64 r = integer_root(n, k);
      REQUIRE(*checked_pow(r, k) <= n);
      REQUIRE(*checked_pow(r + 1, k) > n);
    }
  CHECK(checked_pow(10, 19) == u64{10'000'000'000'000'000'000ull});
  CHECK_FALSE(checked_pow(10, 20).has_value());
  CHECK_FALSE(checked_pow(2, 11, 1000).has_value());
  CHECK(checked_pow(7, 0) == u64{1});
}
