#include <doctest.h>

#include <cmath>
#include <cstring>
#include <sstream>
#include <stdexcept>

#include "sievelab/harness.hpp"

using namespace sievelab;

namespace {

std::string csv_of(const ExperimentSpec& spec) {
  std::ostringstream os;
  write_csv(os, run(with_defaults(spec)).rows);
  return os.str();
}

const Check* find_check(const Summary& s, const std::string& prefix) {
  for (const auto& c : s.checks)
    if (c.name.find(prefix) != std::string::npos) return &c;
  return nullptr;
}

}  // namespace

TEST_CASE("SplitMix64 reference outputs") {
  SplitMix64 g(0);
  CHECK(g.next() == 0xE220A8397B1DCDAFull);
  CHECK(g.next() == 0x6E789E6AA1B965F4ull);
  CHECK(g.next() == 0x06C45D188009454Full);
  SplitMix64 u(99);
  for (int i = 0; i < 10000; ++i) {
    const double x = u.uniform();
    REQUIRE(x >= 0.0);
    REQUIRE(x < 1.0);
    REQUIRE(u.below(7) < 7);
  }
  SplitMix64 a(5), b(5);
  const auto x = a.next();
  CHECK(b.uniform() == static_cast<double>(x >> 11) * 0x1p-53);
}

TEST_CASE("sequence generators") {
  const auto ones = generate_sequence(SequenceKind::kAllOnes, 4, 0, 1);
  CHECK(ones.norm_squared() == 4.0);
  const auto spike = generate_sequence(SequenceKind::kSingleSpike, 100, 5, 1);
  CHECK(spike.norm_squared() == 1.0);
  CHECK(spike.coeffs()[0] == Complex(1, 0));
  CHECK(spike.index(0) == 6);
  const auto r1 = generate_sequence(SequenceKind::kRandomUnit, 64, 0, 7);
  const auto r2 = generate_sequence(SequenceKind::kRandomUnit, 64, 0, 7);
  CHECK(std::fabs(r1.norm_squared() - 64.0) < 1e-12);
  for (const auto& a : r1.coeffs()) CHECK(std::fabs(std::abs(a) - 1.0) < 1e-15);
  CHECK(std::memcmp(r1.coeffs().data(), r2.coeffs().data(), 64 * sizeof(Complex)) == 0);
  const auto c = generate_sequence(SequenceKind::kRandomComplex, 1000, 0, 3);
  for (const auto& a : c.coeffs()) {
    CHECK(std::fabs(a.real()) <= 1.0);
    CHECK(std::fabs(a.imag()) <= 1.0);
  }
  // real part drawn first
  SplitMix64 g(3);
  const double re = 2 * g.uniform() - 1;
  const double im = 2 * g.uniform() - 1;
  CHECK(c.coeffs()[0] == Complex(re, im));
  CHECK(generate_sequence(SequenceKind::kRandomUnit, 64, 0, 8).coeffs()[0] != r1.coeffs()[0]);
}

TEST_CASE("names round trip") {
  for (auto k : {SequenceKind::kAllOnes, SequenceKind::kRandomUnit, SequenceKind::kRandomComplex,
                 SequenceKind::kSingleSpike})
    CHECK(parse_sequence_kind(to_string(k)) == k);
  for (auto m : {Mode::kVerifyThm1, Mode::kVerifyThm2, Mode::kVerifyThm3, Mode::kVerifyLemma1,
                 Mode::kVerifyLemma8, Mode::kDeltaOracle, Mode::kRegimeTable, Mode::kFareyStats})
    CHECK(parse_mode(to_string(m)) == m);
  CHECK_FALSE(parse_mode("verify-thm9").has_value());
  CHECK_FALSE(parse_sequence_kind("gaussian").has_value());
}

TEST_CASE("config parsing and settings") {
  std::istringstream in("# comment\nmode = verify-thm2\n\nN=256, 1024  # trailing\nk=3\neps=0.1\n");
  const auto kv = parse_config(in);
  REQUIRE(kv.size() == 4);
  CHECK(kv[0] == std::pair<std::string, std::string>{"mode", "verify-thm2"});
  CHECK(kv[1].second == "256, 1024");
  ExperimentSpec spec;
  for (const auto& [k, v] : kv) apply_setting(spec, k, v);
  CHECK(spec.mode == Mode::kVerifyThm2);
  CHECK(spec.N == std::vector<u64>{256, 1024});
  CHECK(spec.epsilon == 0.1);
  apply_setting(spec, "generator", "all-ones,single-spike");
  CHECK(spec.generators.size() == 2);
  apply_setting(spec, "form", "leading");
  CHECK(spec.form == BoundForm::kLeadingTerm);
  CHECK_THROWS_AS(apply_setting(spec, "colour", "red"), std::invalid_argument);
  CHECK_THROWS_AS(apply_setting(spec, "N", "abc"), std::invalid_argument);
  CHECK_THROWS_AS(apply_setting(spec, "generator", "gaussian"), std::invalid_argument);
  std::istringstream bad("novalue\n");
  CHECK_THROWS_AS(parse_config(bad), std::invalid_argument);
}

TEST_CASE("defaults and validation") {
  ExperimentSpec s;
  s.mode = Mode::kVerifyThm2;
  const auto d = with_defaults(s);
  CHECK(d.k == std::vector<unsigned>{3});
  CHECK_FALSE(d.N.empty());
  CHECK_FALSE(d.Q.empty());
  CHECK_FALSE(d.generators.empty());
  s.k = {4};
  CHECK_THROWS_AS(with_defaults(s), std::invalid_argument);
  ExperimentSpec t;
  t.k = {1};
  CHECK_THROWS_AS(with_defaults(t), std::invalid_argument);
}

TEST_CASE("delta-oracle run passes") {
  ExperimentSpec s;
  s.mode = Mode::kDeltaOracle;
  s.k = {2, 3};
  s.limit = 200;
  s.samples = 10;
  const auto r = run(with_defaults(s));
  CHECK(r.summary.passed());
  for (const auto& row : r.rows) {
    if (row.rhs_name == "scan") CHECK(row.lhs == row.rhs_value);
  }
}

TEST_CASE("verify-thm1 on all ones") {
  ExperimentSpec s;
  s.mode = Mode::kVerifyThm1;
  s.N = {256};
  s.Q = {4};
  s.k = {3};
  s.generators = {SequenceKind::kAllOnes};
  const auto r = run(with_defaults(s));
  CHECK(r.summary.passed());
  double C = -1;
  for (const auto& [name, v] : r.summary.constants)
    if (name == "C_thm1") C = v;
  REQUIRE(C > 0);
  bool seen = false;
  for (const auto& row : r.rows)
    if (row.rhs_name == "thm1") {
      seen = true;
      CHECK(row.ratio <= C);
      CHECK(row.ratio == doctest::Approx(row.lhs / row.rhs_value));
      CHECK(row.seed == "all-ones");
    }
  CHECK(seen);
}

TEST_CASE("runs are byte-identical and sorted") {
  ExperimentSpec s;
  s.mode = Mode::kVerifyThm1;
  s.N = {256};
  s.Q = {2, 4};
  s.k = {2, 3};
  s.sequences = 2;
  s.seed = 17;
  const auto a = csv_of(s);
  CHECK(a == csv_of(s));
  CHECK(a.rfind(std::string(kCsvHeader) + "\n", 0) == 0);
  CHECK(a.find("random-unit:") != std::string::npos);
  s.seed = 18;
  CHECK(a != csv_of(s));
}

TEST_CASE("regime run at the default point") {
  ExperimentSpec s;
  s.mode = Mode::kRegimeTable;
  s.epsilon = 0.01;
  s.grid = 401;
  const auto r = run(with_defaults(s));
  const auto* thm1 = find_check(r.summary, "thm1 window");
  REQUIRE(thm1 != nullptr);
  MESSAGE(thm1->name << ": " << thm1->detail);
  CHECK(r.rows.size() == 401 * 5);
}

TEST_CASE("csv formatting") {
  CsvRow row;
  row.mode = "verify-thm1";
  row.k = 3;
  row.N = 256;
  row.Q = 4;
  row.epsilon = 0.05;
  row.seed = "all-ones";
  row.lhs = 0.1;
  row.rhs_name = "thm1";
  row.rhs_value = 3;
  row.ratio = 0.1 / 3;
  std::ostringstream os;
  write_csv(os, {row});
  CHECK(os.str() == std::string(kCsvHeader) +
                        "\nverify-thm1,3,256,0,4,0.050000000000000003,all-ones,0.10000000000000001,thm1,3,"
                        "0.033333333333333333\n");
}
