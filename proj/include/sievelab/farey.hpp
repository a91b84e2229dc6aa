#pragma once

// Farey fractions with k-th power denominators in a dyadic range and the
// counting functions used to bound how many of them fall into short
// intervals: K(Delta), P(alpha), the lattice count Pi(delta, y), and the
// two upper bounds for P(b/r + z).

#include <span>
#include <vector>

#include "sievelab/fraction.hpp"

namespace sievelab {

inline constexpr u64 kFareyPointLimit = 10'000'000;

/// Reduced fractions a/q with q a k-th power in (Q0, 2 Q0] and 1 <= a <= q,
/// sorted increasingly.
std::vector<Fraction> farey_points(double Q0, unsigned k);

/// K(Delta): the most points any closed arc of length 2 Delta on R/Z holds.
/// Requires 0 < Delta <= 1/2.
u64 spacing_count(std::span<const Fraction> points, const Fraction& Delta);

/// P(alpha): number of points a/q (q a k-th power in (Q0, 2 Q0]) with
/// ||a/q - alpha|| <= Delta.
u64 p_alpha(double Q0, unsigned k, const Fraction& alpha, const Fraction& Delta);

struct DirichletApproximation {
  i64 b = 0;
  i64 r = 1;
  Fraction z;  // alpha - b/r
  i64 next_denominator = 0;  // the first convergent denominator above tau (0 if none)
};

/// alpha = b/r + z with r <= tau, gcd(b, r) = 1 and |z| <= 1/(r tau), taken
/// from the last continued fraction convergent with denominator <= tau.
DirichletApproximation dirichlet_approx(const Fraction& alpha, double tau);

struct FareyContext {
  double Q0 = 1;
  unsigned k = 3;
  double tau = 1;
  Fraction Delta{1, 2};
  i64 b = 0;
  i64 r = 1;
  Fraction z;
  double c6 = 1.0;  // width constant of the q-interval in Pi(delta, y)

  Fraction alpha() const { return Fraction(b, r) + z; }
  /// delta = Q0 Delta / z.
  double natural_delta() const;
};

/// Checks 1 <= tau <= Delta^(-1/2), r <= tau, gcd(b, r) = 1,
/// |z| <= 1/(r tau) and, if `reduced` is set, z >= Delta.  Throws
/// std::invalid_argument naming the violated constraint.
void validate_context(const FareyContext& ctx, bool reduced);

/// Pi(delta, y) = #{(q, m) : q in I(delta, y), m in J(delta, y),
///                 m = -b q^3 (mod r), m != 0}
/// with I = [y^(1/3) - c6 delta / Q0^(2/3), y^(1/3) + c6 delta / Q0^(2/3)]
/// and J = [(y - 4 delta) r z, (y + 4 delta) r z].
/// Requires Q0 Delta / z <= delta <= Q0.
u64 pi_count(const FareyContext& ctx, double delta, double y);

struct PiIntegral {
  double value = 0;
  std::size_t pieces = 0;
  bool exact = true;  // false when the fixed-grid fallback was used
};

/// integral over y in [Q0, 2 Q0] of Pi(delta, y).  Pi is a step function
/// in y; the integral is summed piece by piece between its breakpoints, or
/// on a 4096-panel midpoint grid when there are too many breakpoints.
PiIntegral pi_integral(const FareyContext& ctx, double delta);

/// 1 + Delta^(-eps) (Q0^(4/3) Delta + Q0 r z).  Requires z >= Delta.
double prop1_rhs(const FareyContext& ctx, double eps);
/// Delta^(-eps) (Q0^(4/3) Delta + Q0^(1/3) Delta r^(-1/3) / z
///               + Delta^(-1/2) (r z)^(1/2)).  Requires z >= Delta.
double prop2_rhs(const FareyContext& ctx, double eps);

struct TauDelta {
  double tau = 1;
  double Delta = 0.5;
  bool large_q0 = false;  // branch N^(7/8) <= Q0 <= N^(3/2)
};

/// tau = N^(6/5) Q0^(-4/5), Delta = 1/N when N^(7/8) <= Q0 <= N^(3/2);
/// otherwise tau = Q0^(4/7), Delta = Q0^(-8/7).  The branch test is exact for
/// integral inputs.  Rejects Q0 < 1 and Q0 > N^(3/2).
TauDelta choose_tau_delta(double N, double Q0);

/// Reduction to rational centres: for every window anchor alpha = x_i + Delta
/// realising a local count, decompose alpha = b/r + z and evaluate
/// P(b/r + z) at the admissible z (z >= Delta after reflection, or z = Delta
/// when |z| < Delta).  Returns twice the largest such value.
struct ReductionReport {
  u64 spacing = 0;        // K(Delta)
  u64 reduced_max = 0;    // max P(b/r + z) over the realised decompositions
  std::size_t anchors = 0;
};
ReductionReport reduce_to_rational_centres(double Q0, unsigned k, const Fraction& Delta,
                                           double tau);

}  // namespace sievelab
