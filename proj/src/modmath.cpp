#include "sievelab/modmath.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace sievelab {

namespace {

void require_modulus(u64 m) {
  if (m == 0 || m >= kModulusLimit) {
    throw std::invalid_argument("modulus must lie in [1, 2^63), got " +
                                std::to_string(m));
  }
}

}  // namespace

FactoredInteger::FactoredInteger(u64 value, std::vector<PrimePower> factors)
    : value_(value), factors_(std::move(factors)) {
  if (value_ == 0) throw std::invalid_argument("FactoredInteger: zero value");
  u128 product = 1;
  u64 previous = 1;
  for (const auto& [p, e] : factors_) {
    if (p <= previous || e == 0) {
      throw std::invalid_argument("FactoredInteger: malformed factor list");
    }
    previous = p;
    for (unsigned i = 0; i < e; ++i) {
      product *= p;
      if (product > value_) break;
    }
  }
  if (product != value_) {
    throw std::invalid_argument("FactoredInteger: product mismatch");
  }
}

u64 FactoredInteger::phi() const {
  u64 result = 1;
  for (const auto& [p, e] : factors_) {
    result *= p - 1;
    for (unsigned i = 1; i < e; ++i) result *= p;
  }
  return result;
}

u64 FactoredInteger::tau() const {
  u64 result = 1;
  for (const auto& f : factors_) result *= f.exponent + 1;
  return result;
}

u64 FactoredInteger::radical() const {
  u64 result = 1;
  for (const auto& f : factors_) result *= f.prime;
  return result;
}

std::vector<u64> FactoredInteger::divisors() const {
  std::vector<u64> divs{1};
  for (const auto& [p, e] : factors_) {
    const std::size_t base = divs.size();
    u64 power = 1;
    for (unsigned i = 0; i < e; ++i) {
      power *= p;
      for (std::size_t j = 0; j < base; ++j) divs.push_back(divs[j] * power);
    }
  }
  std::sort(divs.begin(), divs.end());
  return divs;
}

FactoredInteger factorize(u64 n) {
  if (n == 0) throw std::invalid_argument("factorize: n must be positive");
  std::vector<PrimePower> factors;
  auto strip = [&](u64 p) {
    unsigned e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    if (e > 0) factors.push_back({p, e});
  };
  const u64 original = n;
  strip(2);
  strip(3);
  strip(5);
  // Offsets from 7 covering residues coprime to 30.
  static constexpr std::array<u64, 8> kWheel{4, 2, 4, 2, 4, 6, 2, 6};
  u64 d = 7;
  for (std::size_t i = 0; d <= n / d; d += kWheel[i], i = (i + 1) % 8) {
    strip(d);
  }
  if (n > 1) factors.push_back({n, 1});
  return FactoredInteger(original, std::move(factors));
}

u64 mul_mod(u64 a, u64 b, u64 m) {
  return static_cast<u64>(static_cast<u128>(a) * b % m);
}

u64 reduce(i64 a, u64 m) {
  const i128 r = static_cast<i128>(a) % static_cast<i128>(m);
  return static_cast<u64>(r < 0 ? r + m : r);
}

u64 mod_pow(i64 base, u64 exp, u64 m) {
  require_modulus(m);
  u64 b = reduce(base, m);
  u64 result = 1 % m;
  while (exp > 0) {
    if (exp & 1) result = mul_mod(result, b, m);
    b = mul_mod(b, b, m);
    exp >>= 1;
  }
  return result;
}

std::optional<u64> mod_inverse(i64 a, u64 m) {
  require_modulus(m);
  // Extended Euclid on (a mod m, m) in signed 128-bit.
  i128 old_r = reduce(a, m), r = m;
  i128 old_s = 1, s = 0;
  while (r != 0) {
    const i128 q = old_r / r;
    old_r -= q * r;
    std::swap(old_r, r);
    old_s -= q * s;
    std::swap(old_s, s);
  }
  if (old_r != 1 && m != 1) return std::nullopt;
  i128 x = old_s % static_cast<i128>(m);
  if (x < 0) x += m;
  return static_cast<u64>(x);
}

Congruence crt_combine(std::span<const Congruence> congruences) {
  Congruence acc{0, 1};
  for (const auto& c : congruences) {
    require_modulus(c.modulus);
    if (std::gcd(acc.modulus, c.modulus) != 1) {
      throw std::invalid_argument("crt_combine: moduli are not coprime");
    }
    const u128 product = static_cast<u128>(acc.modulus) * c.modulus;
    if (product >= kModulusLimit) {
      throw std::invalid_argument("crt_combine: modulus product too large");
    }
    const u64 m = static_cast<u64>(product);
    // x = acc.r + acc.m * t with t = (c.r - acc.r) * inv(acc.m) mod c.m
    const u64 inv = *mod_inverse(static_cast<i64>(acc.modulus % c.modulus), c.modulus);
    const u64 diff = (c.residue % c.modulus + c.modulus - acc.residue % c.modulus) % c.modulus;
    const u64 t = mul_mod(diff, inv, c.modulus);
    acc.residue = static_cast<u64>((acc.residue + static_cast<u128>(acc.modulus) * t) % m);
    acc.modulus = m;
  }
  return acc;
}

std::optional<u64> checked_pow(u64 base, unsigned exp, u64 limit) {
  u128 result = 1;
  for (unsigned i = 0; i < exp; ++i) {
    result *= base;
    if (result > limit) return std::nullopt;
  }
  return static_cast<u64>(result);
}

u64 integer_root(u64 n, unsigned k) {
  if (k == 0) throw std::invalid_argument("integer_root: k must be positive");
  if (k == 1 || n < 2) return n;
  u64 x = static_cast<u64>(std::pow(static_cast<long double>(n), 1.0L / k));
  // Correct the floating estimate in both directions.
  while (x > 0 && !checked_pow(x, k, n)) --x;
  while (checked_pow(x + 1, k, n)) ++x;
  return x;
}

bool is_prime(u64 n) {
  if (n < 2) return false;
  for (u64 p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    if (n % p == 0) return n == p;
  }
  u64 d = n - 1;
  unsigned s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  auto pow_mod = [n](u64 b, u64 e) {
    u64 r = 1;
    while (e) {
      if (e & 1) r = mul_mod(r, b, n);
      b = mul_mod(b, b, n);
      e >>= 1;
    }
    return r;
  };
  for (u64 a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    u64 x = pow_mod(a, d);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (unsigned i = 1; i < s; ++i) {
      x = mul_mod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

}  // namespace sievelab
