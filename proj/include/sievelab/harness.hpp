#pragma once

// Experiment orchestration: sequence generators, sweeps, CSV rows and
// pass/fail summaries for each verification mode.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sievelab/bounds.hpp"
#include "sievelab/expsums.hpp"
#include "sievelab/sieve_eval.hpp"

namespace sievelab {

/// SplitMix64.  state += 0x9E3779B97F4A7C15, then
/// z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9, z = (z ^ (z >> 27)) * 0x94D049BB133111EB,
/// z ^ (z >> 31).
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}
  std::uint64_t next();
  /// (next() >> 11) * 2^-53, in [0, 1).
  double uniform();
  /// Uniform in [0, bound) by rejection; bound >= 1.
  std::uint64_t below(std::uint64_t bound);

 private:
  std::uint64_t state_;
};

enum class SequenceKind { kAllOnes, kRandomUnit, kRandomComplex, kSingleSpike };
const char* to_string(SequenceKind kind);
std::optional<SequenceKind> parse_sequence_kind(const std::string& name);

/// a_n for n = M+1 .. M+N.  random-unit: e(u) with u uniform; random-complex:
/// real and imaginary parts 2u - 1, real part drawn first.
CoeffSequence generate_sequence(SequenceKind kind, std::size_t N, i64 M, std::uint64_t seed);

enum class Mode {
  kVerifyThm1,
  kVerifyThm2,
  kVerifyThm3,
  kVerifyLemma1,
  kVerifyLemma8,
  kDeltaOracle,
  kRegimeTable,
  kFareyStats,
};
const char* to_string(Mode mode);
std::optional<Mode> parse_mode(const std::string& name);

struct ExperimentSpec {
  Mode mode = Mode::kVerifyThm1;
  std::vector<u64> N;        // empty: mode default
  std::vector<double> Q;     // Q, or Q0 for the dyadic modes
  std::vector<unsigned> k;
  double epsilon = 0.05;
  std::vector<SequenceKind> generators;  // empty: mode default
  std::uint64_t seed = 1;
  unsigned sequences = 0;    // random sequences per random generator (0: default)
  i64 M = 0;
  SieveMethod method = SieveMethod::kTransform;
  u64 limit = 0;             // delta-oracle: max m; lemma8: max c (0: default)
  unsigned samples = 0;      // delta-oracle: (g, l) per m; lemma8: l per c
  std::vector<i64> delta_denominators;  // Delta = 1/D for the Farey modes
  unsigned contexts = 0;     // farey-stats: contexts per (Q0, Delta)
  std::size_t grid = 1001;   // regime-table grid points
  BoundForm form = BoundForm::kPolynomial;
  std::optional<double> c_max;  // optional ceiling for fitted constants
};

/// Fills empty ranges and zero counts with the mode defaults and validates
/// the result.  Throws std::invalid_argument on an invalid spec.
ExperimentSpec with_defaults(ExperimentSpec spec);

/// Applies one key=value setting.  Keys: mode, N, Q, k, eps, generator,
/// seed, sequences, M, method, limit, samples, delta, contexts, grid, form,
/// c_max.  Lists are comma separated.  Throws std::invalid_argument.
void apply_setting(ExperimentSpec& spec, const std::string& key, const std::string& value);

/// key=value lines with # comments and blank lines.
std::vector<std::pair<std::string, std::string>> parse_config(std::istream& in);

struct CsvRow {
  std::string mode;
  unsigned k = 0;
  double N = 0;
  double M = 0;
  double Q = 0;
  double epsilon = 0;
  std::string seed;
  double lhs = 0;
  std::string rhs_name;
  double rhs_value = 0;
  double ratio = 0;
};

struct Check {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct Summary {
  std::string mode;
  std::size_t rows = 0;
  std::vector<Check> checks;
  std::vector<std::pair<std::string, double>> constants;
  std::vector<std::string> notes;
  bool passed() const;
};

struct RunResult {
  std::vector<CsvRow> rows;  // canonical order
  Summary summary;
};

RunResult run(const ExperimentSpec& spec);

extern const char* const kCsvHeader;
void write_csv(std::ostream& out, const std::vector<CsvRow>& rows);
void print_summary(std::ostream& out, const Summary& summary);

}  // namespace sievelab
