#include "tra/tridiag.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "tra/errors.hpp"

namespace tra {

std::size_t sturm_count(std::span<const double> d, std::span<const double> e, double x) {
  const double tiny = std::numeric_limits<double>::min() / std::numeric_limits<double>::epsilon();
  std::size_t negatives = 0;
  double q = 1.0;
  for (std::size_t i = 0; i < d.size(); ++i) {
    q = i == 0 ? d[0] - x : d[i] - x - e[i - 1] * e[i - 1] / q;
    if (q == 0.0) q = -tiny;
    if (q < 0.0) ++negatives;
  }
  return negatives;
}

std::vector<double> lowest_eigenvalues(std::span<const double> d, std::span<const double> e,
                                       std::size_t count) {
  if (d.empty() || e.size() + 1 != d.size())
    fail(ErrorCode::InvalidArgument, "tridiagonal matrix needs |e| = |d| - 1");
  count = std::min(count, d.size());
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (std::size_t i = 0; i < d.size(); ++i) {
    const double r = (i > 0 ? std::abs(e[i - 1]) : 0.0) + (i < e.size() ? std::abs(e[i]) : 0.0);
    lo = std::min(lo, d[i] - r);
    hi = std::max(hi, d[i] + r);
  }
  std::vector<double> out;
  out.reserve(count);
  for (std::size_t k = 0; k < count; ++k) {
    double a = out.empty() ? lo : out.back();
    double b = hi;
    for (int it = 0; it < 400; ++it) {
      const double mid = 0.5 * (a + b);
      if (mid <= a || mid >= b) break;
      if (b - a <= 2.0 * std::numeric_limits<double>::epsilon() * std::max(std::abs(a), std::abs(b)))
        break;
      if (sturm_count(d, e, mid) > k)
        b = mid;
      else
        a = mid;
    }
    out.push_back(0.5 * (a + b));
  }
  return out;
}

}  // namespace tra
