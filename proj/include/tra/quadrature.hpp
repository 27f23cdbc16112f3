#pragma once

#include <functional>

namespace tra {

struct QuadratureResult {
  double value;
  double error_estimate;
};

/// Adaptive Gauss-Kronrod integration; either limit may be infinite.
QuadratureResult integrate(const std::function<double(double)>& f, double lo,
                           double hi, double rel_tol = 1e-12,
                           unsigned max_depth = 18);

}  // namespace tra
