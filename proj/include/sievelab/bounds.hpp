#pragma once

// Right-hand sides of the large sieve bounds for power moduli, compared
// without implied constants.  Values are assembled from logarithms so that
// large N and Q do not overflow.

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace sievelab {

/// kappa = 2^(k-1).
double kappa(unsigned k);

/// (log log 10NQ)^(k+1) (Q^(k+1) + N + N^(1/2+eps) Q^k) Z.  Requires N, Q >= 1, k >= 2.
double thm1_rhs(double N, double Q, unsigned k, double eps, double Z);

struct Thm2Branches {
  double lower = 0;  // N Q^(6/7+eps) Z, for Q < N^(7/24)
  double upper = 0;  // N^eps (Q^4 + N^(9/10) Q^(6/5)) Z, for Q >= N^(7/24)
  bool upper_selected = false;
  bool at_seam = false;  // Q = N^(7/24) exactly
};

/// Both cubic branches.  The threshold test is exact when N and Q are
/// integers below 2^53.  Rejects Q < 1 and Q > N^(1/2).
Thm2Branches thm2_branches(double N, double Q, double eps, double Z);
double thm2_rhs(double N, double Q, double eps, double Z);

/// (Q^(k+1) + (N Q^(1-1/kappa) + N^(1-1/kappa) Q^(1+k/kappa)) N^eps) Z.
/// Rejects k < 2.
double zhao_rhs(double N, double Q, unsigned k, double eps, double Z);

/// {(Q^(k+1) + Q N) Z, (Q^(2k) + N) Z}.
std::pair<double, double> classical_rhs(double N, double Q, unsigned k, double Z);

enum class BoundKind { kClassicalB, kClassicalA, kZhao, kThm1, kThm2 };
const char* to_string(BoundKind kind);

/// kFull: the literal formula.  kPolynomial: without the log log factor.
/// kLeadingTerm: without log log and with each sum replaced by its largest
/// term, so that log value / log N is the exponent of N along Q = N^x.
enum class BoundForm { kFull, kPolynomial, kLeadingTerm };

/// Natural logarithm of a bound with Z = 1.
double bound_log(BoundKind kind, double log_N, double log_Q, unsigned k, double eps,
                 BoundForm form = BoundForm::kFull);

struct BoundReport {
  double N = 0, Q = 0;
  unsigned k = 2;
  double epsilon = 0;
  double Z = 0;
  std::optional<double> lhs;
  double rhs_classical_a = 0;
  double rhs_classical_b = 0;
  double rhs_zhao = 0;
  double rhs_thm1 = 0;
  std::optional<double> rhs_thm2;  // k = 3 and Q <= N^(1/2) only

  /// (name, rhs) pairs in a fixed order.
  std::vector<std::pair<std::string, double>> named_rhs() const;
  /// lhs / rhs per bound; empty without lhs.
  std::vector<std::pair<std::string, double>> ratios() const;
};

BoundReport make_bound_report(double N, double Q, unsigned k, double eps, double Z,
                              std::optional<double> lhs = std::nullopt);

struct RegimeOptions {
  std::size_t grid_points = 4001;
  BoundForm form = BoundForm::kPolynomial;
};

struct RegimePoint {
  double exponent = 0;  // Q = N^exponent
  BoundKind winner = BoundKind::kClassicalB;
  std::vector<std::pair<BoundKind, double>> log_values;
};

struct RegimeWindow {
  BoundKind bound = BoundKind::kClassicalB;
  double lo = 0, hi = 0;  // exponents
};

struct Crossover {
  BoundKind from = BoundKind::kClassicalB;
  BoundKind to = BoundKind::kClassicalB;
  double exponent = 0;  // refined by bisection
};

struct RegimeTable {
  double N = 0;
  unsigned k = 2;
  double epsilon = 0;
  BoundForm form = BoundForm::kPolynomial;
  std::vector<RegimePoint> points;
  std::vector<RegimeWindow> windows;  // maximal runs of a single winner
  std::vector<Crossover> crossovers;
  /// Widest run won by `bound`, if any.
  std::optional<RegimeWindow> window(BoundKind bound) const;
};

/// Sweeps Q = N^x for x on a uniform grid in [0, 1/2] and records the
/// smallest bound at each point; ties go to the earlier BoundKind.  The cubic
/// bound takes part for k = 3 only.
RegimeTable regime_table(double N, unsigned k, double eps, const RegimeOptions& options = {});

/// Exponent where the thm1 bound stops beating Zhao's bound, from the
/// asymptotic exponents: kappa / (2 (k-1) kappa + 2).
double thm1_zhao_crossover(unsigned k);

struct FitResult {
  double C = 0;
  std::size_t argmax = 0;
};

/// C = max lhs / rhs.  Rejects an empty list and rhs <= 0.
FitResult fit_constant(const std::vector<std::pair<double, double>>& measurements);

}  // namespace sievelab
