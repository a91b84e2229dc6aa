#pragma once

// Globally adaptive Gauss-Kronrod (7/15) quadrature for complex integrands
// with an absolute error target.

#include <complex>
#include <cstddef>
#include <functional>

namespace sievelab {

struct QuadratureResult {
  std::complex<double> value;
  double error_estimate = 0;
  std::size_t panels = 0;
  bool converged = false;
};

struct QuadratureOptions {
  double abs_tolerance = 1e-8;
  std::size_t max_panels = std::size_t{1} << 20;
  // The interval is first cut into this many equal panels; callers set it
  // from the expected number of oscillations.
  std::size_t initial_panels = 1;
};

/// Repeatedly bisects the panel with the largest error estimate until the
/// summed estimate is below the tolerance or the panel cap is reached.
QuadratureResult integrate(const std::function<std::complex<double>(double)>& f, double a,
                           double b, const QuadratureOptions& options = {});

}  // namespace sievelab
