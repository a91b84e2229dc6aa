#pragma once

// Exact integer and modular arithmetic for moduli below 2^63.

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace sievelab {

using u64 = std::uint64_t;
using i64 = std::int64_t;
using u128 = unsigned __int128;
using i128 = __int128;

/// Largest modulus accepted by the modular routines (exclusive).
inline constexpr u64 kModulusLimit = u64{1} << 63;

struct PrimePower {
  u64 prime = 0;
  unsigned exponent = 0;

  friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

/// A positive integer together with its complete prime factorization.
///
/// Factors are sorted by prime and every prime appears once.  The arithmetic
/// functions are computed from the factorization, never by scanning.
class FactoredInteger {
 public:
  FactoredInteger() = default;
  /// Takes ownership of an already computed factorization; checks that the
  /// product matches `value` and that primes are strictly increasing.
  FactoredInteger(u64 value, std::vector<PrimePower> factors);

  u64 value() const { return value_; }
  const std::vector<PrimePower>& factors() const { return factors_; }

  /// Euler's totient.
  u64 phi() const;
  /// Number of distinct prime divisors.
  unsigned omega() const { return static_cast<unsigned>(factors_.size()); }
  /// Number of positive divisors.
  u64 tau() const;
  /// Product of the distinct primes.
  u64 radical() const;
  /// All positive divisors in increasing order.
  std::vector<u64> divisors() const;

 private:
  u64 value_ = 1;
  std::vector<PrimePower> factors_;
};

/// Trial division over a 2-3-5 wheel.  Throws std::invalid_argument for n = 0.
FactoredInteger factorize(u64 n);

/// Deterministic Miller-Rabin for 64-bit inputs.
bool is_prime(u64 n);

u64 mul_mod(u64 a, u64 b, u64 m);

/// Reduces a signed value into [0, m).
u64 reduce(i64 a, u64 m);

/// base^exp mod m.  Requires 1 <= m < 2^63; (x, 0, 1) yields 0.
u64 mod_pow(i64 base, u64 exp, u64 m);

/// Inverse of a modulo m, or nullopt when gcd(a, m) > 1.
std::optional<u64> mod_inverse(i64 a, u64 m);

struct Congruence {
  u64 residue = 0;
  u64 modulus = 1;

  friend bool operator==(const Congruence&, const Congruence&) = default;
};

/// Solves a system of congruences with pairwise coprime moduli.  The result
/// residue lies in [0, product of moduli).  Throws std::invalid_argument when
/// two moduli share a factor, a modulus is zero, or the product overflows.
Congruence crt_combine(std::span<const Congruence> congruences);

/// floor(n^(1/k)) computed exactly, k >= 1.
u64 integer_root(u64 n, unsigned k);

/// base^exp, or nullopt if the result exceeds `limit`.
std::optional<u64> checked_pow(u64 base, unsigned exp, u64 limit = ~u64{0});

}  // namespace sievelab
