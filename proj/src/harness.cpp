#include "sievelab/harness.hpp"

#include <algorithm>
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <istream>
#include <limits>
#include <numbers>
#include <numeric>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <tuple>

#include "sievelab/farey.hpp"
#include "sievelab/moduli_sets.hpp"
#include "sievelab/power_congruence.hpp"

namespace sievelab {

std::uint64_t SplitMix64::next() {
  std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

double SplitMix64::uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

std::uint64_t SplitMix64::below(std::uint64_t bound) {
  if (bound == 0) throw std::invalid_argument("SplitMix64::below: bound must be >= 1");
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % bound;
  std::uint64_t x;
  do {
    x = next();
  } while (x >= limit);
  return x % bound;
}

namespace {

struct Named {
  const char* name;
  int value;
};

constexpr Named kSequenceNames[] = {{"all-ones", 0}, {"random-unit", 1}, {"random-complex", 2},
                                    {"single-spike", 3}};
constexpr Named kModeNames[] = {{"verify-thm1", 0},  {"verify-thm2", 1},  {"verify-thm3", 2},
                                {"verify-lemma1", 3}, {"verify-lemma8", 4}, {"delta-oracle", 5},
                                {"regime-table", 6},  {"farey-stats", 7}};

}  // namespace

const char* to_string(SequenceKind kind) { return kSequenceNames[static_cast<int>(kind)].name; }

std::optional<SequenceKind> parse_sequence_kind(const std::string& name) {
  for (const auto& n : kSequenceNames) {
    if (name == n.name) return static_cast<SequenceKind>(n.value);
  }
  return std::nullopt;
}

const char* to_string(Mode mode) { return kModeNames[static_cast<int>(mode)].name; }

std::optional<Mode> parse_mode(const std::string& name) {
  for (const auto& n : kModeNames) {
    if (name == n.name) return static_cast<Mode>(n.value);
  }
  return std::nullopt;
}

CoeffSequence generate_sequence(SequenceKind kind, std::size_t N, i64 M, std::uint64_t seed) {
  if (N == 0) throw std::invalid_argument("generate_sequence: N must be >= 1");
  std::vector<Complex> a(N);
  SplitMix64 rng(seed);
  switch (kind) {
    case SequenceKind::kAllOnes:
      std::fill(a.begin(), a.end(), Complex(1, 0));
      break;
    case SequenceKind::kSingleSpike:
      a[0] = Complex(1, 0);
      break;
    case SequenceKind::kRandomUnit:
      for (auto& x : a) x = unit_phase(rng.uniform());
      break;
    case SequenceKind::kRandomComplex:
      for (auto& x : a) {
        const double re = 2 * rng.uniform() - 1;
        const double im = 2 * rng.uniform() - 1;
        x = Complex(re, im);
      }
      break;
  }
  return CoeffSequence(M, std::move(a));
}

// ---------------------------------------------------------------- settings

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_list(const std::string& value) {
  std::vector<std::string> out;
  std::stringstream ss(value);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  if (out.empty()) throw std::invalid_argument("empty list");
  return out;
}

double parse_double(const std::string& s) {
  std::size_t used = 0;
  const double v = std::stod(s, &used);
  if (used != s.size() || !std::isfinite(v)) throw std::invalid_argument("not a number: " + s);
  return v;
}

// Accepts plain integers and exact integral values such as 1e12.
u64 parse_u64(const std::string& s) {
  if (!s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; })) {
    return std::stoull(s);
  }
  const double v = parse_double(s);
  if (v < 0 || v != std::floor(v) || v >= 1.8e19) throw std::invalid_argument("not an integer: " + s);
  return static_cast<u64>(v);
}

i64 parse_i64(const std::string& s) {
  if (!s.empty() && s[0] == '-') return -static_cast<i64>(parse_u64(s.substr(1)));
  return static_cast<i64>(parse_u64(s));
}

}  // namespace

void apply_setting(ExperimentSpec& spec, const std::string& raw_key, const std::string& raw_value) {
  const std::string key = trim(raw_key), value = trim(raw_value);
  try {
    if (key == "mode") {
      const auto m = parse_mode(value);
      if (!m) throw std::invalid_argument("unknown mode");
      spec.mode = *m;
    } else if (key == "N") {
      spec.N.clear();
      for (const auto& s : split_list(value)) spec.N.push_back(parse_u64(s));
    } else if (key == "Q" || key == "Q0") {
      spec.Q.clear();
      for (const auto& s : split_list(value)) spec.Q.push_back(parse_double(s));
    } else if (key == "k") {
      spec.k.clear();
      for (const auto& s : split_list(value)) {
        const u64 k = parse_u64(s);
        if (k < 1 || k > 16) throw std::invalid_argument("k outside [1, 16]");
        spec.k.push_back(static_cast<unsigned>(k));
      }
    } else if (key == "eps" || key == "epsilon") {
      spec.epsilon = parse_double(value);
    } else if (key == "generator") {
      spec.generators.clear();
      for (const auto& s : split_list(value)) {
        const auto g = parse_sequence_kind(s);
        if (!g) throw std::invalid_argument("unknown generator " + s);
        spec.generators.push_back(*g);
      }
    } else if (key == "seed") {
      spec.seed = parse_u64(value);
    } else if (key == "sequences") {
      spec.sequences = static_cast<unsigned>(parse_u64(value));
    } else if (key == "M") {
      spec.M = parse_i64(value);
    } else if (key == "method") {
      if (value == "naive") {
        spec.method = SieveMethod::kNaive;
      } else if (value == "transform") {
        spec.method = SieveMethod::kTransform;
      } else {
        throw std::invalid_argument("method must be naive or transform");
      }
    } else if (key == "limit") {
      spec.limit = parse_u64(value);
    } else if (key == "samples") {
      spec.samples = static_cast<unsigned>(parse_u64(value));
    } else if (key == "delta") {
      spec.delta_denominators.clear();
      for (const auto& s : split_list(value)) spec.delta_denominators.push_back(parse_i64(s));
    } else if (key == "contexts") {
      spec.contexts = static_cast<unsigned>(parse_u64(value));
    } else if (key == "grid") {
      spec.grid = parse_u64(value);
    } else if (key == "form") {
      if (value == "full") {
        spec.form = BoundForm::kFull;
      } else if (value == "polynomial") {
        spec.form = BoundForm::kPolynomial;
      } else if (value == "leading") {
        spec.form = BoundForm::kLeadingTerm;
      } else {
        throw std::invalid_argument("form must be full, polynomial or leading");
      }
    } else if (key == "c_max") {
      spec.c_max = parse_double(value);
    } else {
      throw std::invalid_argument("unknown key");
    }
  } catch (const std::invalid_argument& e) {
    throw std::invalid_argument("setting '" + key + "=" + value + "': " + e.what());
  } catch (const std::out_of_range&) {
    throw std::invalid_argument("setting '" + key + "=" + value + "': value out of range");
  }
}

std::vector<std::pair<std::string, std::string>> parse_config(std::istream& in) {
  std::vector<std::pair<std::string, std::string>> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos || trim(line.substr(0, eq)).empty()) {
      throw std::invalid_argument("config line " + std::to_string(line_no) + ": expected key=value");
    }
    out.emplace_back(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
  return out;
}

ExperimentSpec with_defaults(ExperimentSpec spec) {
  auto fill = [](auto& v, auto def) {
    if (v.empty()) v = def;
  };
  const std::vector<SequenceKind> all_three{SequenceKind::kRandomUnit, SequenceKind::kAllOnes,
                                            SequenceKind::kSingleSpike};
  switch (spec.mode) {
    case Mode::kVerifyThm1:
    case Mode::kVerifyThm2:
      fill(spec.N, std::vector<u64>{256, 1024, 4096});
      fill(spec.Q, std::vector<double>{2, 4, 8, 16});
      fill(spec.k, spec.mode == Mode::kVerifyThm1 ? std::vector<unsigned>{2, 3, 4}
                                                  : std::vector<unsigned>{3});
      fill(spec.generators, all_three);
      if (spec.sequences == 0) spec.sequences = 10;
      break;
    case Mode::kVerifyThm3:
      fill(spec.N, std::vector<u64>{256, 1024, 4096});
      fill(spec.k, std::vector<unsigned>{2, 3});
      fill(spec.generators, all_three);
      if (spec.sequences == 0) spec.sequences = 3;
      break;
    case Mode::kVerifyLemma1:
      fill(spec.N, std::vector<u64>{256, 1024});
      fill(spec.Q, std::vector<double>{50, 200, 1000});
      fill(spec.k, std::vector<unsigned>{3});
      fill(spec.delta_denominators, std::vector<i64>{101, 1009, 10007});
      fill(spec.generators, std::vector<SequenceKind>{SequenceKind::kRandomUnit, SequenceKind::kAllOnes});
      if (spec.sequences == 0) spec.sequences = 2;
      break;
    case Mode::kVerifyLemma8:
      fill(spec.k, std::vector<unsigned>{3});
      if (spec.limit == 0) spec.limit = 1000;
      if (spec.samples == 0) spec.samples = 30;
      break;
    case Mode::kDeltaOracle:
      fill(spec.k, std::vector<unsigned>{2, 3});
      if (spec.limit == 0) spec.limit = 500;
      if (spec.samples == 0) spec.samples = 50;
      break;
    case Mode::kRegimeTable:
      fill(spec.N, std::vector<u64>{1'000'000'000'000ULL});
      fill(spec.k, std::vector<unsigned>{3});
      break;
    case Mode::kFareyStats:
      fill(spec.Q, std::vector<double>{1000, 4000});
      fill(spec.k, std::vector<unsigned>{3});
      if (spec.contexts == 0) spec.contexts = 60;
      break;
  }
  if (spec.sequences == 0) spec.sequences = 1;
  if (!(spec.epsilon >= 0)) throw std::invalid_argument("eps must be >= 0");
  for (u64 n : spec.N) {
    if (n < 1) throw std::invalid_argument("N must be >= 1");
  }
  for (double q : spec.Q) {
    if (!(q >= 1)) throw std::invalid_argument("Q must be >= 1");
  }
  for (i64 d : spec.delta_denominators) {
    if (d < 2) throw std::invalid_argument("delta denominators must be >= 2");
  }
  const bool integral_q = spec.mode == Mode::kVerifyThm1 || spec.mode == Mode::kVerifyThm2;
  for (double q : spec.Q) {
    if (integral_q && q != std::floor(q)) throw std::invalid_argument("Q must be an integer in this mode");
  }
  switch (spec.mode) {
    case Mode::kVerifyThm1:
    case Mode::kVerifyThm3:
    case Mode::kRegimeTable:
      for (unsigned k : spec.k) {
        if (k < 2) throw std::invalid_argument("k must be >= 2 in this mode");
      }
      break;
    case Mode::kVerifyThm2:
    case Mode::kVerifyLemma1:
    case Mode::kFareyStats:
    case Mode::kVerifyLemma8:
      for (unsigned k : spec.k) {
        if (k != 3) throw std::invalid_argument("this mode is cubic only (k = 3)");
      }
      break;
    case Mode::kDeltaOracle:
      break;
  }
  if (spec.mode == Mode::kRegimeTable) {
    for (u64 n : spec.N) {
      if (n < 2) throw std::invalid_argument("regime-table needs N >= 2");
    }
    if (spec.grid < 2) throw std::invalid_argument("grid must be >= 2");
  }
  if (spec.mode == Mode::kDeltaOracle && spec.limit > 100000) {
    throw std::invalid_argument("delta-oracle limit must be <= 10^5");
  }
  return spec;
}

// ---------------------------------------------------------------- summary

bool Summary::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed; });
}

const char* const kCsvHeader = "mode,k,N,M,Q_or_Q0,epsilon,seed,lhs,rhs_name,rhs_value,ratio";

namespace {

std::string fmt(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string fmt_short(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

auto row_key(const CsvRow& r) {
  auto num = [](double x) { return std::make_pair(std::isnan(x), std::isnan(x) ? 0.0 : x); };
  return std::make_tuple(r.mode, r.k, num(r.N), num(r.M), num(r.Q), num(r.epsilon), r.seed,
                         r.rhs_name, num(r.lhs), num(r.rhs_value), num(r.ratio));
}

}  // namespace

void write_csv(std::ostream& out, const std::vector<CsvRow>& rows) {
  out << kCsvHeader << '\n';
  for (const auto& r : rows) {
    out << r.mode << ',' << r.k << ',' << fmt(r.N) << ',' << fmt(r.M) << ',' << fmt(r.Q) << ','
        << fmt(r.epsilon) << ',' << r.seed << ',' << fmt(r.lhs) << ',' << r.rhs_name << ','
        << fmt(r.rhs_value) << ',' << fmt(r.ratio) << '\n';
  }
}

void print_summary(std::ostream& out, const Summary& s) {
  out << "mode     " << s.mode << '\n' << "rows     " << s.rows << '\n';
  std::size_t width = 0;
  for (const auto& c : s.checks) width = std::max(width, c.name.size());
  for (const auto& [name, v] : s.constants) width = std::max(width, name.size());
  auto pad = [&](const std::string& name) { return name + std::string(width - name.size() + 2, ' '); };
  if (!s.constants.empty()) out << "constants\n";
  for (const auto& [name, v] : s.constants) out << "  " << pad(name) << fmt_short(v) << '\n';
  if (!s.checks.empty()) out << "checks\n";
  for (const auto& c : s.checks) {
    out << "  " << (c.passed ? "PASS  " : "FAIL  ") << pad(c.name) << c.detail << '\n';
  }
  for (const auto& n : s.notes) out << "note     " << n << '\n';
  out << "result   " << (s.passed() ? "PASS" : "FAIL") << '\n';
}

// ---------------------------------------------------------------- modes

namespace {

struct Instance {
  SequenceKind kind;
  std::uint64_t seed;
  std::string label;
};

std::vector<Instance> instances(const ExperimentSpec& spec) {
  std::vector<Instance> out;
  for (SequenceKind kind : spec.generators) {
    const bool random = kind == SequenceKind::kRandomUnit || kind == SequenceKind::kRandomComplex;
    const unsigned count = random ? spec.sequences : 1;
    for (unsigned i = 0; i < count; ++i) {
      const std::uint64_t seed = random ? spec.seed + i : spec.seed;
      out.push_back({kind, seed, random ? std::string(to_string(kind)) + ":" + std::to_string(seed)
                                        : std::string(to_string(kind))});
    }
  }
  return out;
}

class Recorder {
 public:
  Recorder(const ExperimentSpec& spec, RunResult& result) : spec_(spec), result_(result) {
    result_.summary.mode = to_string(spec.mode);
  }

  CsvRow base(unsigned k, double N, double M, double Q, std::string seed) const {
    CsvRow r;
    r.mode = to_string(spec_.mode);
    r.k = k;
    r.N = N;
    r.M = M;
    r.Q = Q;
    r.epsilon = spec_.epsilon;
    r.seed = std::move(seed);
    return r;
  }

  void add(CsvRow row, double lhs, const std::string& name, double rhs) {
    row.lhs = lhs;
    row.rhs_name = name;
    row.rhs_value = rhs;
    row.ratio = lhs / rhs;
    result_.rows.push_back(std::move(row));
  }

  void error(CsvRow row, const std::string& what) {
    ++errors_;
    if (first_error_.empty()) first_error_ = what;
    row.lhs = row.rhs_value = row.ratio = std::numeric_limits<double>::quiet_NaN();
    row.rhs_name = "error";
    result_.rows.push_back(std::move(row));
  }

  void check(std::string name, bool passed, std::string detail) {
    result_.summary.checks.push_back({std::move(name), passed, std::move(detail)});
  }
  void constant(std::string name, double value) {
    result_.summary.constants.emplace_back(std::move(name), value);
  }
  void note(std::string text) { result_.summary.notes.push_back(std::move(text)); }

  // Fits max lhs/rhs over the rows named `rhs_name` and records it.
  std::optional<double> fit(const std::string& rhs_name, const std::string& constant_name) {
    std::vector<std::pair<double, double>> m;
    for (const auto& r : result_.rows) {
      if (r.rhs_name == rhs_name) m.emplace_back(r.lhs, r.rhs_value);
    }
    if (m.empty()) return std::nullopt;
    const double C = fit_constant(m).C;
    constant(constant_name, C);
    check(constant_name + " finite", std::isfinite(C), fmt_short(C));
    if (spec_.c_max) {
      check(constant_name + " <= c_max", C <= *spec_.c_max, fmt_short(C) + " vs " + fmt_short(*spec_.c_max));
    }
    return C;
  }

  void finish() {
    check("instances completed", errors_ == 0,
          errors_ == 0 ? "all" : std::to_string(errors_) + " failed, first: " + first_error_);
  }

 private:
  const ExperimentSpec& spec_;
  RunResult& result_;
  std::size_t errors_ = 0;
  std::string first_error_;
};

double max_ratio(const std::vector<CsvRow>& rows, const std::string& name) {
  double m = 0;
  for (const auto& r : rows) {
    if (r.rhs_name == name && !(r.ratio <= m)) m = r.ratio;
  }
  return m;
}

double floor_sqrt(u64 N) { return static_cast<double>(integer_root(N, 2)); }

void run_theorem_sweep(const ExperimentSpec& spec, Recorder& rec, RunResult& result) {
  const bool cubic = spec.mode == Mode::kVerifyThm2;
  for (u64 N : spec.N) {
    for (const auto& inst : instances(spec)) {
      std::optional<CoeffSequence> seq;
      try {
        seq = generate_sequence(inst.kind, N, spec.M, inst.seed);
      } catch (const std::exception& e) {
        rec.error(rec.base(0, N, spec.M, 0, inst.label), e.what());
        continue;
      }
      const double Z = seq->norm_squared();
      if (!cubic) {
        const double Qc = floor_sqrt(N);
        try {
          const auto c = classical_sieve_sum(*seq, static_cast<u64>(Qc), spec.method);
          rec.add(rec.base(1, N, spec.M, Qc, inst.label), c.lhs, "c20", 2.0 * N * Z);
        } catch (const std::exception& e) {
          rec.error(rec.base(1, N, spec.M, Qc, inst.label), e.what());
        }
      }
      for (unsigned k : spec.k) {
        for (double Q : spec.Q) {
          if (cubic && Q * Q > static_cast<double>(N)) continue;
          const auto row = rec.base(k, N, spec.M, Q, inst.label);
          try {
            const auto s = sieve_sum_power_moduli(*seq, static_cast<u64>(Q), k, spec.method);
            if (cubic) {
              const auto b = thm2_branches(N, Q, spec.epsilon, Z);
              if (b.at_seam) {
                rec.add(row, s.lhs, "thm2_lower", b.lower);
                rec.add(row, s.lhs, "thm2_upper", b.upper);
              }
              rec.add(row, s.lhs, "thm2", b.upper_selected ? b.upper : b.lower);
            } else {
              const auto report = make_bound_report(N, Q, k, spec.epsilon, Z, s.lhs);
              for (const auto& [name, rhs] : report.named_rhs()) {
                if (name != "thm2") rec.add(row, s.lhs, name, rhs);
              }
            }
          } catch (const std::exception& e) {
            rec.error(row, e.what());
          }
        }
      }
    }
  }
  if (cubic) {
    rec.fit("thm2", "C_thm2");
  } else {
    rec.fit("thm1", "C_thm1");
    for (const char* name : {"zhao", "classical_a", "classical_b"}) {
      std::vector<std::pair<double, double>> m;
      for (const auto& r : result.rows) {
        if (r.rhs_name == name) m.emplace_back(r.lhs, r.rhs_value);
      }
      if (!m.empty()) rec.constant(std::string("C_") + name, fit_constant(m).C);
    }
    const double c20 = max_ratio(result.rows, "c20");
    rec.check("classical sieve <= 2NZ", c20 <= 1.0, "max lhs/(2NZ) = " + fmt_short(c20));
  }
}

void run_thm3(const ExperimentSpec& spec, Recorder& rec) {
  for (u64 N : spec.N) {
    const u64 root = integer_root(N, 2);
    std::vector<double> q0s = spec.Q;
    if (q0s.empty()) {
      const double s = std::sqrt(static_cast<double>(N));
      q0s = {s, 2 * s, 4 * s};
    }
    for (unsigned k : spec.k) {
      unsigned max_omega = 0;
      for (u64 m = 1; m <= root; ++m) max_omega = std::max(max_omega, factorize(m).omega());
      const double X = std::pow(static_cast<double>(k), 2.0 * max_omega);
      for (double Q0 : q0s) {
        if (Q0 * Q0 < static_cast<double>(N) * (1 - 1e-12)) {
          rec.error(rec.base(k, N, spec.M, Q0, "-"), "need Q0 >= N^(1/2)");
          continue;
        }
        // max over r <= sqrt(N) of sum_{t | r} |S_t(Q0)|, and the
        // (log log 10r)^k Q0^(1/k) comparison at every r.
        double max_sum = 0, worst_ratio = -1, worst_sum = 0, worst_rhs = 1;
        for (u64 r = 1; r <= root; ++r) {
          const double sum = static_cast<double>(divisor_family_size_sum(r, k, Q0));
          max_sum = std::max(max_sum, sum);
          const double rhs = std::pow(std::log(std::log(10.0 * r)), k) * std::pow(Q0, 1.0 / k);
          if (sum / rhs > worst_ratio) {
            worst_ratio = sum / rhs;
            worst_sum = sum;
            worst_rhs = rhs;
          }
        }
        rec.add(rec.base(k, N, spec.M, Q0, "-"), worst_sum, "divisor_sum", worst_rhs);
        for (const auto& inst : instances(spec)) {
          const auto row = rec.base(k, N, spec.M, Q0, inst.label);
          try {
            const auto seq = generate_sequence(inst.kind, N, spec.M, inst.seed);
            const double Z = seq.norm_squared();
            const auto s = sieve_sum_dyadic(seq, Q0, k, spec.method);
            const double rhs = (std::min(Q0 * X, static_cast<double>(N)) + Q0) *
                               (std::sqrt(static_cast<double>(N)) * std::log(std::log(10.0 * N)) + max_sum) * Z;
            rec.add(row, s.lhs, "thm3", rhs);
          } catch (const std::exception& e) {
            rec.error(row, e.what());
          }
        }
      }
    }
  }
  rec.fit("thm3", "c0C_thm3");
  rec.fit("divisor_sum", "C_divisor_sum");
  rec.note("X = max k^(2 omega(m)) over m <= N^(1/2); only the product c0 C is fitted");
}

// Largest count of points in a closed arc of length 2 Delta centred on the
// grid j Delta / steps, j = 0, 1, ...
u64 grid_spacing_count(const std::vector<Fraction>& sorted_frac, const Fraction& Delta, i64 steps) {
  const i64 grid = steps * Delta.den() / Delta.num();
  u64 best = 0;
  const std::size_t n = sorted_frac.size();
  auto count_in = [&](const Fraction& lo, const Fraction& hi) -> u64 {
    const auto a = std::lower_bound(sorted_frac.begin(), sorted_frac.end(), lo);
    const auto b = std::upper_bound(sorted_frac.begin(), sorted_frac.end(), hi);
    return b > a ? static_cast<u64>(b - a) : 0;
  };
  for (i64 j = 0; j < grid; ++j) {
    const Fraction alpha(j, grid);
    const Fraction lo = alpha - Delta, hi = alpha + Delta;
    u64 c = count_in(lo, hi) + count_in(lo + Fraction(1), hi + Fraction(1)) +
            count_in(lo - Fraction(1), hi - Fraction(1));
    best = std::max<u64>(best, std::min<u64>(c, n));
  }
  return best;
}

void run_lemma1(const ExperimentSpec& spec, Recorder& rec) {
  u64 grid_mismatch = 0, lemma2_fail = 0;
  for (double Q0 : spec.Q) {
    for (unsigned k : spec.k) {
      std::vector<Fraction> points;
      try {
        points = farey_points(Q0, k);
      } catch (const std::exception& e) {
        rec.error(rec.base(k, 0, 0, Q0, "-"), e.what());
        continue;
      }
      std::vector<Fraction> frac;
      for (const auto& p : points) frac.push_back(p.frac());
      std::sort(frac.begin(), frac.end());
      for (i64 D : spec.delta_denominators) {
        const Fraction Delta(1, D);
        const auto row = rec.base(k, static_cast<double>(D), 0, Q0, "-");
        try {
          const u64 K = spacing_count(points, Delta);
          if (points.size() <= 10000) {
            const u64 grid = grid_spacing_count(frac, Delta, 100);
            if (grid != K) ++grid_mismatch;
            rec.add(row, K, "grid_max", grid);
          }
          const double tau = std::floor(std::sqrt(static_cast<double>(D)));
          const auto red = reduce_to_rational_centres(Q0, k, Delta, tau);
          if (K > 2 * red.reduced_max) ++lemma2_fail;
          rec.add(row, K, "lemma2", 2.0 * red.reduced_max);
          for (u64 N : spec.N) {
            for (const auto& inst : instances(spec)) {
              const auto srow = rec.base(k, N, static_cast<double>(D), Q0, inst.label);
              try {
                const auto seq = generate_sequence(inst.kind, N, spec.M, inst.seed);
                const auto s = sieve_sum_dyadic(seq, Q0, k, spec.method);
                rec.add(srow, s.lhs, "lemma1",
                        static_cast<double>(K) * (static_cast<double>(N) + D) * seq.norm_squared());
              } catch (const std::exception& e) {
                rec.error(srow, e.what());
              }
            }
          }
        } catch (const std::exception& e) {
          rec.error(row, e.what());
        }
      }
    }
  }
  rec.check("K(Delta) equals grid maximum", grid_mismatch == 0, std::to_string(grid_mismatch) + " mismatches");
  rec.check("K(Delta) <= 2 max P(b/r + z)", lemma2_fail == 0, std::to_string(lemma2_fail) + " violations");
  rec.fit("lemma1", "c1_lemma1");
  rec.note("lemma1 rows: N column is N, M column is 1/Delta; other rows: N column is 1/Delta");
}

i64 next_coprime(u64 c) {
  for (i64 k = 2;; ++k) {
    if (std::gcd(static_cast<u64>(k), c) == 1) return k;
  }
}

void run_lemma8(const ExperimentSpec& spec, Recorder& rec) {
  SplitMix64 rng(spec.seed);
  const std::string label = std::to_string(spec.seed);
  for (u64 c = 1; c <= spec.limit; ++c) {
    std::vector<i64> ls;
    if (c <= spec.samples) {
      for (u64 l = 0; l < c; ++l) ls.push_back(static_cast<i64>(l));
    } else {
      ls.push_back(0);
      std::vector<u64> pool(c - 1);
      std::iota(pool.begin(), pool.end(), 1);
      for (unsigned i = 0; i + 1 < spec.samples; ++i) {
        const u64 j = i + rng.below(pool.size() - i);
        std::swap(pool[i], pool[j]);
        ls.push_back(static_cast<i64>(pool[i]));
      }
    }
    for (i64 kcoef : {i64{1}, next_coprime(c)}) {
      for (i64 l : ls) {
        const auto row = rec.base(3, static_cast<double>(c), static_cast<double>(l), static_cast<double>(kcoef), label);
        try {
          const double mag = std::abs(complete_cubic_sum(c, kcoef, l));
          const double g = static_cast<double>(std::gcd(static_cast<u64>(l), c));
          rec.add(row, mag, "lemma8", std::pow(static_cast<double>(c), 0.55) * g);
          if (l == 0) rec.add(row, mag, "lemma8_l0", std::pow(static_cast<double>(c), 2.0 / 3.0));
        } catch (const std::exception& e) {
          rec.error(row, e.what());
        }
      }
    }
  }
  const auto C = rec.fit("lemma8", "C_lemma8");
  const auto C0 = rec.fit("lemma8_l0", "C_lemma8_l0");
  rec.check("C_lemma8 < 10", C && *C < 10, C ? fmt_short(*C) : "none");
  rec.check("C_lemma8_l0 < 10", C0 && *C0 < 10, C0 ? fmt_short(*C0) : "none");
  rec.note("columns: N = c, M = l, Q_or_Q0 = leading coefficient");
}

void run_delta_oracle(const ExperimentSpec& spec, Recorder& rec) {
  u64 mismatches = 0, c7_fail = 0, c6_fail = 0, instances_run = 0;
  for (unsigned k : spec.k) {
    for (u64 m = 1; m <= spec.limit; ++m) {
      SplitMix64 rng(spec.seed ^ (0x9E3779B97F4A7C15ULL * (k * 1000003ULL + m)));
      const auto fm = factorize(m);
      const double bound = std::pow(static_cast<double>(k), 2.0 * fm.omega());
      std::vector<u64> xk(m);
      for (u64 x = 0; x < m; ++x) xk[x] = mod_pow(static_cast<i64>(x), k, m);
      std::vector<u64> hist(m);
      u64 max_delta = 0;
      const std::string label = std::to_string(spec.seed);
      for (unsigned s = 0; s < spec.samples; ++s) {
        const u64 g = 1 + rng.below(10 * m);
        u64 l = 0;
        do {
          l = rng.below(m);
        } while (std::gcd(l, m) != 1);
        // Exhaustive scan: histogram of x^k g mod m over all residues x.
        std::fill(hist.begin(), hist.end(), 0);
        const u64 gm = g % m;
        for (u64 x = 0; x < m; ++x) ++hist[mul_mod(xk[x], gm, m)];
        const u64 d = delta_t(k, g, m, l).count;
        ++instances_run;
        if (d != hist[l]) ++mismatches;
        if (static_cast<double>(d) > bound) ++c7_fail;
        max_delta = std::max(max_delta, d);
        rec.add(rec.base(k, static_cast<double>(m), static_cast<double>(l), static_cast<double>(g), label),
                static_cast<double>(d), "scan", static_cast<double>(hist[l]));
        if (s == 0) {
          // Every residue class l coprime to m for this g.
          u64 total = 0;
          for (u64 l2 = 0; l2 < m; ++l2) {
            if (std::gcd(l2, m) != 1) continue;
            const u64 d2 = delta_t(k, g, m, l2).count;
            if (d2 != hist[l2]) ++mismatches;
            if (static_cast<double>(d2) > bound) ++c7_fail;
            total += d2;
          }
          if (total > m) ++c6_fail;
          rec.add(rec.base(k, static_cast<double>(m), 0, static_cast<double>(g), label),
                  static_cast<double>(total), "c6", static_cast<double>(m));
        }
      }
      rec.add(rec.base(k, static_cast<double>(m), 0, 0, label), static_cast<double>(max_delta), "k2omega", bound);
    }
  }
  rec.check("delta_t equals exhaustive scan", mismatches == 0,
            std::to_string(mismatches) + " mismatches over " + std::to_string(instances_run) + " sampled instances");
  rec.check("delta_t <= k^(2 omega(m))", c7_fail == 0, std::to_string(c7_fail) + " violations");
  rec.check("sum_l delta_t(m, l) <= m", c6_fail == 0, std::to_string(c6_fail) + " violations");
  rec.note("columns: N = m, M = l, Q_or_Q0 = g");
}

void run_regime(const ExperimentSpec& spec, Recorder& rec) {
  for (u64 N : spec.N) {
    for (unsigned k : spec.k) {
      const auto table = regime_table(static_cast<double>(N), k, spec.epsilon, {spec.grid, spec.form});
      const double lN = std::log(static_cast<double>(N));
      for (const auto& p : table.points) {
        double best = std::numeric_limits<double>::infinity();
        for (const auto& [kind, v] : p.log_values) best = std::min(best, v);
        const double Q = std::exp(p.exponent * lN);
        for (const auto& [kind, v] : p.log_values) {
          rec.add(rec.base(k, static_cast<double>(N), 0, Q, "-"), std::exp(best), to_string(kind), std::exp(v));
        }
      }
      const std::string tag = "k=" + std::to_string(k) + " N=" + fmt_short(static_cast<double>(N));
      for (const auto& w : table.windows) {
        if (w.hi > w.lo) {
          rec.note(tag + " " + to_string(w.bound) + " wins for exponents [" + fmt_short(w.lo) + ", " +
                   fmt_short(w.hi) + "]");
        }
      }
      auto expect = [&](BoundKind kind, double lo, double hi, const std::string& range) {
        const auto w = table.window(kind);
        const bool ok = w && w->lo >= lo && w->hi <= hi;
        rec.check(tag + " " + to_string(kind) + " window inside " + range, ok,
                  w ? "[" + fmt_short(w->lo) + ", " + fmt_short(w->hi) + "]" : "never wins");
      };
      if (k == 3) {
        expect(BoundKind::kThm1, 1.0 / 6 - 0.01, 1.0 / 5 + 0.01, "(1/6 - 0.01, 1/5 + 0.01)");
        expect(BoundKind::kThm2, 7.0 / 25 - 0.01, 1.0 / 3 + 0.01, "(7/25 - 0.01, 1/3 + 0.01)");
      } else {
        const double kap = kappa(k);
        const double edge = (kap - 2) / (2 * (k - 1) * kap - 2 * k);
        const auto w = table.window(BoundKind::kThm1);
        rec.check(tag + " thm1 upper edge within 0.01 of " + fmt_short(edge),
                  w && std::abs(w->hi - edge) <= 0.01, w ? fmt_short(w->hi) : "never wins");
      }
    }
  }
  rec.note("implied constants set to 1; form = " +
           std::string(spec.form == BoundForm::kFull ? "full"
                        : spec.form == BoundForm::kPolynomial ? "polynomial" : "leading"));
}

void run_farey_stats(const ExperimentSpec& spec, Recorder& rec) {
  std::size_t contexts = 0;
  for (double Q0 : spec.Q) {
    std::vector<i64> dens = spec.delta_denominators;
    if (dens.empty()) dens = {4 * static_cast<i64>(std::llround(Q0))};
    for (i64 D : dens) {
      const Fraction Delta(1, D);
      const double tau = std::floor(std::sqrt(static_cast<double>(D)));
      const auto base = rec.base(3, static_cast<double>(D), 0, Q0, "-");
      try {
        const auto points = farey_points(Q0, 3);
        rec.add(base, static_cast<double>(spacing_count(points, Delta)), "spacing",
                static_cast<double>(points.size()));
      } catch (const std::exception& e) {
        rec.error(base, e.what());
      }
      SplitMix64 rng(spec.seed ^ static_cast<std::uint64_t>(D) ^ (static_cast<std::uint64_t>(Q0) << 20));
      unsigned made = 0;
      for (unsigned attempt = 0; made < spec.contexts && attempt < 50 * spec.contexts; ++attempt) {
        FareyContext ctx;
        ctx.Q0 = Q0;
        ctx.k = 3;
        ctx.tau = tau;
        ctx.Delta = Delta;
        ctx.r = 1 + static_cast<i64>(rng.below(static_cast<u64>(tau)));
        do {
          ctx.b = static_cast<i64>(rng.below(static_cast<u64>(ctx.r)));
        } while (std::gcd(ctx.b, ctx.r) != 1);
        const double z_lo = Delta.to_double(), z_hi = 1.0 / (ctx.r * tau);
        if (z_hi < z_lo) continue;
        const double zr = z_lo * std::pow(z_hi / z_lo, rng.uniform());
        ctx.z = approximate(zr, 1'000'000);
        try {
          validate_context(ctx, true);
        } catch (const std::invalid_argument&) {
          continue;
        }
        const double d_lo = ctx.natural_delta();
        const double delta = d_lo * std::pow(Q0 / d_lo, rng.uniform());
        ++made;
        ++contexts;
        const auto row = rec.base(3, static_cast<double>(ctx.r), static_cast<double>(ctx.b), Q0,
                                  std::to_string(spec.seed) + "/" + std::to_string(D) + "/" + std::to_string(made));
        try {
          const double P = static_cast<double>(p_alpha(Q0, 3, ctx.alpha(), Delta));
          const auto integral = pi_integral(ctx, delta);
          rec.add(row, P, "lemma3", 1.0 + integral.value / delta);
          rec.add(row, P, "prop1", prop1_rhs(ctx, spec.epsilon));
          rec.add(row, P, "prop2", prop2_rhs(ctx, spec.epsilon));
        } catch (const std::exception& e) {
          rec.error(row, e.what());
        }
      }
    }
  }
  rec.fit("lemma3", "c5_lemma3");
  rec.fit("prop1", "c4_prop1");
  rec.fit("prop2", "c_prop2");
  rec.check("admissible contexts", contexts >= 100, std::to_string(contexts) + " (need >= 100)");
  rec.note("context rows: N = r, M = b; spacing rows: N = 1/Delta, rhs = point count");
}

}  // namespace

RunResult run(const ExperimentSpec& raw) {
  const ExperimentSpec spec = with_defaults(raw);
  RunResult result;
  Recorder rec(spec, result);
  switch (spec.mode) {
    case Mode::kVerifyThm1:
    case Mode::kVerifyThm2:
      run_theorem_sweep(spec, rec, result);
      break;
    case Mode::kVerifyThm3:
      run_thm3(spec, rec);
      break;
    case Mode::kVerifyLemma1:
      run_lemma1(spec, rec);
      break;
    case Mode::kVerifyLemma8:
      run_lemma8(spec, rec);
      break;
    case Mode::kDeltaOracle:
      run_delta_oracle(spec, rec);
      break;
    case Mode::kRegimeTable:
      run_regime(spec, rec);
      break;
    case Mode::kFareyStats:
      run_farey_stats(spec, rec);
      break;
  }
  rec.finish();
  std::sort(result.rows.begin(), result.rows.end(),
            [](const CsvRow& a, const CsvRow& b) { return row_key(a) < row_key(b); });
  result.summary.rows = result.rows.size();
  return result;
}

}  // namespace sievelab
