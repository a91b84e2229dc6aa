#pragma once

// Counting and enumerating solutions of x^k * g = l (mod m).
//
// Counts are built prime power by prime power and multiplied together
// (Chinese remainder theorem).  Modulo p^e the solutions of x^k = a with a a
// unit are obtained from the solutions modulo p and lifted one level at a
// time: a root r with p not dividing f'(r) = k r^(k-1) lifts uniquely, a
// singular root lifts to all p candidates r + j p^e or to none of them.

#include <optional>
#include <vector>

#include "sievelab/modmath.hpp"

namespace sievelab {

struct RootCount {
  FactoredInteger modulus;
  unsigned k = 1;
  u64 g = 1;
  u64 l = 0;
  u64 count = 0;
  std::optional<std::vector<u64>> roots;
};

/// Number of x mod p^e with x^k = a (mod p^e).  Requires p prime, e >= 1 and
/// p not dividing a.
u64 count_power_roots_prime_power(unsigned k, u64 a, u64 p, unsigned e);

/// The solutions themselves, sorted.  Same preconditions; p^e <= 10^7.
std::vector<u64> power_roots_prime_power(unsigned k, u64 a, u64 p, unsigned e);

/// |{x in (Z/p^e)^* : x^k = 1}|.
u64 kernel_size(unsigned k, u64 p, unsigned e);

/// Upper bound prod |ker sigma_pi|^a over the prime factorization
/// k = prod pi^a; the exact kernel never exceeds it.
u64 kernel_size_prime_factor_bound(unsigned k, u64 p, unsigned e);

/// Number of x mod m with x^k g = l (mod m).  Zero whenever gcd(g, m) > 1.
/// Throws std::invalid_argument when gcd(l, m) > 1.
RootCount delta_t(unsigned k, u64 g, u64 m, u64 l);

inline constexpr u64 kEnumerationLimit = 10'000'000;

/// Sorted list of all solutions; m <= 10^7.
std::vector<u64> enumerate_power_roots(unsigned k, u64 g, u64 m, u64 l);

/// Exhaustive scan over x in [0, m); test oracle for the routines above.
u64 scan_power_roots(unsigned k, u64 g, u64 m, u64 l);

}  // namespace sievelab
