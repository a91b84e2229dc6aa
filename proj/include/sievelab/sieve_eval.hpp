#pragma once

// Left-hand sides of the large sieve inequalities: sums of |S(a/D)|^2 over
// reduced fractions a/D, with D running over k-th powers q^k (q <= Q), over
// the k-th powers in a dyadic range, or over all D <= Q.

#include <cstdint>
#include <span>
#include <vector>

#include "sievelab/expsums.hpp"

namespace sievelab {

enum class SieveMethod {
  kNaive,      // every S(a/D) summed term by term
  kTransform,  // coefficients folded mod D, one length-D DFT per modulus
};

const char* to_string(SieveMethod m);

struct SieveSumResult {
  double lhs = 0;
  u64 term_count = 0;  // number of fractions a/D summed
  double max_term = 0;  // largest single |S(a/D)|^2
  u64 N = 0;
  i64 M = 0;
  double Q = 0;  // Q, or Q0 for the dyadic sum
  unsigned k = 1;
  SieveMethod method = SieveMethod::kTransform;
};

/// Total number of fractions any single evaluation may sum.
inline constexpr u64 kFractionBudget = 1'000'000'000;

/// sum over denominators D of sum_{1 <= a <= D, (a, D) = 1} |S(a/D)|^2.
SieveSumResult sieve_sum_over_denominators(const CoeffSequence& seq,
                                           std::span<const u64> denominators,
                                           SieveMethod method = SieveMethod::kTransform);

/// sum_{q <= Q} sum_{a <= q^k, (a, q) = 1} |S(a / q^k)|^2.
/// Rejects Q^(k+1) > 10^9.
SieveSumResult sieve_sum_power_moduli(const CoeffSequence& seq, u64 Q, unsigned k,
                                      SieveMethod method = SieveMethod::kTransform);

/// Same sum restricted to the moduli q^k in (Q0, 2 Q0].
SieveSumResult sieve_sum_dyadic(const CoeffSequence& seq, double Q0, unsigned k,
                                SieveMethod method = SieveMethod::kTransform);

/// sum_{q <= Q} sum_{a <= q, (a, q) = 1} |S(a/q)|^2.
SieveSumResult classical_sieve_sum(const CoeffSequence& seq, u64 Q,
                                   SieveMethod method = SieveMethod::kTransform);

/// |S(a/D)|^2 for every a in [1, D] coprime to D, in increasing a.
std::vector<double> fraction_magnitudes(const CoeffSequence& seq, u64 D, SieveMethod method);

struct DyadicBlock {
  double Q0 = 0;
  std::vector<u64> moduli;  // k-th powers in (Q0, 2 Q0], bases <= Q
};

/// Partition of the moduli {q^k : q <= Q}: those with q^k <= sqrt N, and
/// dyadic blocks (Q0, 2 Q0] with Q0 = sqrt(N) 2^j.
struct DyadicCover {
  std::vector<u64> small_moduli;
  std::vector<DyadicBlock> blocks;
};

DyadicCover dyadic_cover(u64 Q, unsigned k, u64 N);

}  // namespace sievelab
