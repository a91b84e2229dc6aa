#include "sievelab/sieve_eval.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <memory>
#include <mutex>
#include <stdexcept>

#include "sievelab/moduli_sets.hpp"
#include "sievelab/parallel.hpp"

namespace sievelab {

namespace {

// FFTW planning is not thread-safe; execution on distinct arrays is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

struct FftwFree {
  void operator()(fftw_complex* p) const { fftw_free(p); }
};
using FftwBuffer = std::unique_ptr<fftw_complex[], FftwFree>;

FftwBuffer make_buffer(std::size_t n) {
  auto* p = static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * n));
  if (p == nullptr) throw std::bad_alloc();
  return FftwBuffer(p);
}

class BackwardPlan {
 public:
  BackwardPlan(std::size_t n, fftw_complex* in, fftw_complex* out) {
    std::lock_guard lock(planner_mutex());
    plan_ = fftw_plan_dft_1d(static_cast<int>(n), in, out, FFTW_BACKWARD, FFTW_ESTIMATE);
    if (plan_ == nullptr) throw std::runtime_error("FFTW planning failed");
  }
  BackwardPlan(const BackwardPlan&) = delete;
  BackwardPlan& operator=(const BackwardPlan&) = delete;
  ~BackwardPlan() {
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(plan_);
  }
  void execute() const { fftw_execute(plan_); }

 private:
  fftw_plan plan_ = nullptr;
};

std::vector<u64> prime_support(u64 D) {
  std::vector<u64> primes;
  const auto fd = factorize(D);
  for (const auto& f : fd.factors()) primes.push_back(f.prime);
  return primes;
}

bool coprime_to(u64 a, const std::vector<u64>& primes) {
  return std::none_of(primes.begin(), primes.end(), [a](u64 p) { return a % p == 0; });
}

std::vector<double> magnitudes_naive(const CoeffSequence& seq, u64 D,
                                     const std::vector<u64>& primes) {
  std::vector<Complex> twiddle(D);
  for (u64 j = 0; j < D; ++j) twiddle[j] = unit_phase(static_cast<long double>(j) / D);
  const auto coeffs = seq.coeffs();
  const u64 first = reduce(seq.index(0), D);
  std::vector<double> out;
  for (u64 a = 1; a <= D; ++a) {
    if (!coprime_to(a, primes)) continue;
    const u64 step = a % D;
    u64 residue = mul_mod(step, first, D);
    CompensatedComplexSum sum;
    for (const Complex& c : coeffs) {
      sum.add(c * twiddle[residue]);
      residue += step;
      if (residue >= D) residue -= D;
    }
    out.push_back(std::norm(sum.value()));
  }
  return out;
}

std::vector<double> magnitudes_transform(const CoeffSequence& seq, u64 D,
                                         const std::vector<u64>& primes) {
  if (D > static_cast<u64>(std::numeric_limits<int>::max())) {
    throw std::invalid_argument("transform path: modulus too large");
  }
  auto in = make_buffer(D);
  auto out = make_buffer(D);
  BackwardPlan plan(D, in.get(), out.get());
  // Fold a_n into residue classes n mod D.
  std::vector<CompensatedComplexSum> folded(D);
  const auto coeffs = seq.coeffs();
  u64 residue = reduce(seq.index(0), D);
  for (const Complex& c : coeffs) {
    folded[residue].add(c);
    if (++residue == D) residue = 0;
  }
  for (u64 j = 0; j < D; ++j) {
    const Complex v = folded[j].value();
    in[j][0] = v.real();
    in[j][1] = v.imag();
  }
  plan.execute();  // out[a] = sum_j in[j] e(a j / D)
  std::vector<double> mags;
  for (u64 a = 1; a <= D; ++a) {
    if (!coprime_to(a, primes)) continue;
    const u64 idx = a % D;
    mags.push_back(out[idx][0] * out[idx][0] + out[idx][1] * out[idx][1]);
  }
  return mags;
}

}  // namespace

const char* to_string(SieveMethod m) {
  return m == SieveMethod::kNaive ? "naive" : "transform";
}

std::vector<double> fraction_magnitudes(const CoeffSequence& seq, u64 D, SieveMethod method) {
  if (D == 0) throw std::invalid_argument("fraction_magnitudes: zero denominator");
  const auto primes = prime_support(D);
  return method == SieveMethod::kNaive ? magnitudes_naive(seq, D, primes)
                                       : magnitudes_transform(seq, D, primes);
}

SieveSumResult sieve_sum_over_denominators(const CoeffSequence& seq,
                                           std::span<const u64> denominators,
                                           SieveMethod method) {
  u128 budget = 0;
  for (u64 D : denominators) budget += D;
  if (budget > kFractionBudget) {
    throw std::invalid_argument("sieve sum: more than 10^9 candidate fractions");
  }
  struct Partial {
    double sum = 0;
    double carry = 0;
    double max_term = 0;
    u64 count = 0;
  };
  std::vector<Partial> partial(denominators.size());
  parallel_for(denominators.size(), [&](std::size_t i) {
    const auto mags = fraction_magnitudes(seq, denominators[i], method);
    CompensatedSum s;
    Partial p;
    for (double m : mags) {
      s.add(m);
      p.max_term = std::max(p.max_term, m);
    }
    p.sum = s.value();
    p.count = mags.size();
    partial[i] = p;
  });
  SieveSumResult result;
  CompensatedSum total;
  for (const Partial& p : partial) {
    total.add(p.sum);
    result.term_count += p.count;
    result.max_term = std::max(result.max_term, p.max_term);
  }
  result.lhs = total.value();
  result.N = seq.length();
  result.M = seq.offset();
  result.method = method;
  return result;
}

SieveSumResult sieve_sum_power_moduli(const CoeffSequence& seq, u64 Q, unsigned k,
                                      SieveMethod method) {
  if (Q == 0 || k == 0) throw std::invalid_argument("sieve_sum_power_moduli: Q, k must be >= 1");
  if (!checked_pow(Q, k + 1, kFractionBudget)) {
    throw std::invalid_argument("sieve_sum_power_moduli: Q^(k+1) exceeds 10^9");
  }
  std::vector<u64> denominators;
  for (u64 q = 1; q <= Q; ++q) denominators.push_back(*checked_pow(q, k));
  auto result = sieve_sum_over_denominators(seq, denominators, method);
  result.Q = static_cast<double>(Q);
  result.k = k;
  return result;
}

SieveSumResult sieve_sum_dyadic(const CoeffSequence& seq, double Q0, unsigned k,
                                SieveMethod method) {
  const auto moduli = kth_powers_in_dyadic_range(k, Q0);
  auto result = sieve_sum_over_denominators(seq, moduli, method);
  result.Q = Q0;
  result.k = k;
  return result;
}

SieveSumResult classical_sieve_sum(const CoeffSequence& seq, u64 Q, SieveMethod method) {
  if (Q == 0) throw std::invalid_argument("classical_sieve_sum: Q must be >= 1");
  std::vector<u64> denominators;
  for (u64 q = 1; q <= Q; ++q) denominators.push_back(q);
  auto result = sieve_sum_over_denominators(seq, denominators, method);
  result.Q = static_cast<double>(Q);
  result.k = 1;
  return result;
}

DyadicCover dyadic_cover(u64 Q, unsigned k, u64 N) {
  if (Q == 0 || k == 0 || N == 0) throw std::invalid_argument("dyadic_cover: arguments must be >= 1");
  DyadicCover cover;
  u64 largest = 0;
  for (u64 q = 1; q <= Q; ++q) {
    const auto qk = checked_pow(q, k);
    if (!qk) throw std::overflow_error("dyadic_cover: q^k overflows");
    largest = *qk;
    const auto q2k = checked_pow(q, 2 * k);
    if (q2k && *q2k <= N) cover.small_moduli.push_back(*qk);
  }
  double Q0 = std::sqrt(static_cast<double>(N));
  while (std::floor(Q0) < static_cast<double>(largest)) {
    DyadicBlock block{Q0, {}};
    for (u64 m : kth_powers_in_dyadic_range(k, Q0)) {
      if (m <= largest) block.moduli.push_back(m);
    }
    cover.blocks.push_back(std::move(block));
    Q0 *= 2;
  }
  return cover;
}

}  // namespace sievelab
