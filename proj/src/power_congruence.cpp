#include "sievelab/power_congruence.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>

namespace sievelab {

namespace {

void check_prime_power_args(unsigned k, u64 a, u64 p, unsigned e) {
  if (k == 0) throw std::invalid_argument("power roots: k must be positive");
  if (e == 0) throw std::invalid_argument("power roots: exponent must be >= 1");
  if (!is_prime(p)) {
    throw std::invalid_argument("power roots: " + std::to_string(p) + " is not prime");
  }
  if (a % p == 0) throw std::invalid_argument("power roots: target must be a unit mod p");
  if (!checked_pow(p, e, kModulusLimit - 1)) {
    throw std::invalid_argument("power roots: p^e exceeds 2^63");
  }
}

// Lifts the complete root set of x^k = a from modulus p^from to p^to.
std::vector<u64> lift_roots(std::vector<u64> roots, unsigned k, u64 a, u64 p,
                            unsigned from, unsigned to) {
  u64 pe = *checked_pow(p, from);
  for (unsigned level = from; level < to && !roots.empty(); ++level) {
    const u64 next = pe * p;
    const u64 target = a % next;
    std::vector<u64> lifted;
    for (u64 r : roots) {
      const u64 derivative = mul_mod(k % p, mod_pow(static_cast<i64>(r), k - 1, p), p);
      if (derivative != 0) {
        // Nonsingular: the unique lift is r - f(r)/f'(r) (mod p^(level+1)).
        const u64 fr = (mod_pow(static_cast<i64>(r), k, next) + next - target) % next;
        const u64 fprime = mul_mod(k % next, mod_pow(static_cast<i64>(r), k - 1, next), next);
        const u64 inv = *mod_inverse(static_cast<i64>(fprime), next);
        lifted.push_back((r + next - mul_mod(fr, inv, next)) % next);
      } else {
        for (u64 j = 0; j < p; ++j) {
          const u64 candidate = r + j * pe;
          if (mod_pow(static_cast<i64>(candidate), k, next) == target) lifted.push_back(candidate);
        }
      }
    }
    roots = std::move(lifted);
    pe = next;
  }
  std::sort(roots.begin(), roots.end());
  return roots;
}

std::vector<u64> roots_mod_prime_by_scan(unsigned k, u64 a, u64 p) {
  std::vector<u64> roots;
  const u64 target = a % p;
  for (u64 x = 1; x < p; ++x) {
    if (mod_pow(static_cast<i64>(x), k, p) == target) roots.push_back(x);
  }
  return roots;
}

}  // namespace

u64 count_power_roots_prime_power(unsigned k, u64 a, u64 p, unsigned e) {
  check_prime_power_args(k, a, p, e);
  u64 at_prime = 0;
  if (p == 2) {
    at_prime = 1;
  } else {
    // (Z/p)^* is cyclic of order p - 1.
    const u64 g = std::gcd(static_cast<u64>(k), p - 1);
    at_prime = mod_pow(static_cast<i64>(a % p), (p - 1) / g, p) == 1 ? g : 0;
  }
  if (at_prime == 0 || e == 1) return at_prime;
  if (k % p != 0) {
    // Every unit root is nonsingular, so each lifts uniquely at every level.
    return at_prime;
  }
  // p divides k, hence p <= k and the root sets stay small.
  return lift_roots(roots_mod_prime_by_scan(k, a, p), k, a, p, 1, e).size();
}

std::vector<u64> power_roots_prime_power(unsigned k, u64 a, u64 p, unsigned e) {
  check_prime_power_args(k, a, p, e);
  const u64 pe = *checked_pow(p, e);
  if (pe > kEnumerationLimit) {
    throw std::invalid_argument("power_roots_prime_power: modulus above enumeration limit");
  }
  return lift_roots(roots_mod_prime_by_scan(k, a, p), k, a, p, 1, e);
}

u64 kernel_size(unsigned k, u64 p, unsigned e) {
  return count_power_roots_prime_power(k, 1, p, e);
}

u64 kernel_size_prime_factor_bound(unsigned k, u64 p, unsigned e) {
  if (k == 0) throw std::invalid_argument("kernel bound: k must be positive");
  u64 bound = 1;
  const auto fk = factorize(k);
  for (const auto& [pi, a] : fk.factors()) {
    const u64 ker = kernel_size(static_cast<unsigned>(pi), p, e);
    for (unsigned i = 0; i < a; ++i) bound *= ker;
  }
  return bound;
}

RootCount delta_t(unsigned k, u64 g, u64 m, u64 l) {
  if (m == 0) throw std::invalid_argument("delta_t: modulus must be positive");
  if (std::gcd(l % m, m) != 1 && m != 1) {
    throw std::invalid_argument("delta_t: target must be coprime to the modulus");
  }
  RootCount result{factorize(m), k, g, l, 0, std::nullopt};
  if (std::gcd(g % m, m) != 1 && m != 1) return result;
  // x^k = g^-1 l (mod m)
  const u64 a = mul_mod(*mod_inverse(static_cast<i64>(g % m), m), l % m, m);
  u64 count = 1;
  for (const auto& [p, e] : result.modulus.factors()) {
    const u64 pe = *checked_pow(p, e);
    count *= count_power_roots_prime_power(k, a % pe, p, e);
    if (count == 0) break;
  }
  result.count = count;
  return result;
}

std::vector<u64> enumerate_power_roots(unsigned k, u64 g, u64 m, u64 l) {
  if (m == 0 || m > kEnumerationLimit) {
    throw std::invalid_argument("enumerate_power_roots: modulus outside [1, 10^7]");
  }
  if (m == 1) return {0};
  if (std::gcd(l % m, m) != 1) {
    throw std::invalid_argument("enumerate_power_roots: target must be coprime to the modulus");
  }
  if (std::gcd(g % m, m) != 1) return {};
  const u64 a = mul_mod(*mod_inverse(static_cast<i64>(g % m), m), l % m, m);

  std::vector<u64> combined{0};
  u64 modulus = 1;
  const auto fm = factorize(m);
  for (const auto& [p, e] : fm.factors()) {
    const u64 pe = *checked_pow(p, e);
    const auto local = power_roots_prime_power(k, a % pe, p, e);
    std::vector<u64> next;
    next.reserve(combined.size() * local.size());
    for (u64 x : combined) {
      for (u64 y : local) {
        const Congruence parts[] = {{x, modulus}, {y, pe}};
        next.push_back(crt_combine(parts).residue);
      }
    }
    combined = std::move(next);
    modulus *= pe;
  }
  std::sort(combined.begin(), combined.end());
  return combined;
}

u64 scan_power_roots(unsigned k, u64 g, u64 m, u64 l) {
  u64 count = 0;
  const u64 target = l % m;
  for (u64 x = 0; x < m; ++x) {
    if (mul_mod(mod_pow(static_cast<i64>(x), k, m), g % m, m) == target) ++count;
  }
  return count;
}

}  // namespace sievelab
