#include "sievelab/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <queue>
#include <stdexcept>
#include <vector>

namespace sievelab {

namespace {

// Kronrod 15-point abscissae on [-1, 1] (non-negative half) and weights;
// even indices 1, 3, 5 are the embedded Gauss 7-point nodes.
constexpr std::array<double, 8> kNodes{
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kKronrod{
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kGauss{
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
  double a, b;
  std::complex<double> value;
  double error;
  bool operator<(const Panel& other) const { return error < other.error; }
};

Panel evaluate(const std::function<std::complex<double>(double)>& f, double a, double b) {
  const double centre = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const std::complex<double> fc = f(centre);
  std::complex<double> kronrod = fc * kKronrod[7];
  std::complex<double> gauss = fc * kGauss[3];
  for (int i = 0; i < 7; ++i) {
    const double dx = half * kNodes[i];
    const std::complex<double> sum = f(centre - dx) + f(centre + dx);
    kronrod += kKronrod[i] * sum;
    if (i % 2 == 1) gauss += kGauss[i / 2] * sum;
  }
  kronrod *= half;
  gauss *= half;
  return {a, b, kronrod, std::abs(kronrod - gauss)};
}

}  // namespace

QuadratureResult integrate(const std::function<std::complex<double>(double)>& f, double a,
                           double b, const QuadratureOptions& options) {
  if (!(b >= a)) throw std::invalid_argument("integrate: require a <= b");
  QuadratureResult result;
  if (a == b) {
    result.converged = true;
    return result;
  }
  const std::size_t initial = std::max<std::size_t>(1, options.initial_panels);
  std::vector<Panel> start;
  start.reserve(initial);
  const double width = (b - a) / static_cast<double>(initial);
  for (std::size_t i = 0; i < initial; ++i) {
    const double lo = a + width * static_cast<double>(i);
    const double hi = (i + 1 == initial) ? b : a + width * static_cast<double>(i + 1);
    start.push_back(evaluate(f, lo, hi));
  }
  std::priority_queue<Panel> heap(std::less<Panel>{}, std::move(start));

  auto totals = [&heap] {
    // Recomputed from scratch to avoid drift from incremental updates.
    auto copy = heap;
    std::complex<double> value = 0;
    double error = 0;
    while (!copy.empty()) {
      value += copy.top().value;
      error += copy.top().error;
      copy.pop();
    }
    return std::pair{value, error};
  };

  double error = totals().second;
  while (error > options.abs_tolerance && heap.size() < options.max_panels) {
    const Panel worst = heap.top();
    heap.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    if (mid <= worst.a || mid >= worst.b) {
      heap.push(worst);
      break;  // panel can no longer be split in double precision
    }
    const Panel left = evaluate(f, worst.a, mid);
    const Panel right = evaluate(f, mid, worst.b);
    error += left.error + right.error - worst.error;
    heap.push(left);
    heap.push(right);
  }
  const auto [value, total_error] = totals();
  result.value = value;
  result.error_estimate = total_error;
  result.panels = heap.size();
  result.converged = total_error <= options.abs_tolerance;
  return result;
}

}  // namespace sievelab
