#include "tra/recurrence.hpp"

#include <cmath>
#include <string>

#include "tra/errors.hpp"

namespace tra {

namespace {

std::vector<double> forward(const RecursionCoeffs& c, double z, std::size_t n_max) {
  std::vector<double> p(n_max + 1);
  p[0] = 1.0;
  if (n_max == 0) return p;
  p[1] = (z - c.s[0]) / c.t[0];
  for (std::size_t n = 1; n < n_max; ++n)
    p[n + 1] = ((z - c.s[n]) * p[n] - c.t[n - 1] * p[n - 1]) / c.t[n];
  return p;
}

}  // namespace

PolySequence run_recursion(const RecursionCoeffs& coeffs, double z, std::size_t n_max) {
  if (n_max > kMaxRecursionOrder)
    fail(ErrorCode::InvalidArgument,
         "n_max " + std::to_string(n_max) + " exceeds " + std::to_string(kMaxRecursionOrder));
  if (n_max > 0 && (coeffs.s.size() < n_max || coeffs.t.size() < n_max))
    fail(ErrorCode::InvalidArgument, "coefficient streams shorter than n_max");
  for (std::size_t n = 0; n < n_max; ++n) {
    if (!std::isfinite(coeffs.t[n]) || !std::isfinite(coeffs.s[n]))
      fail(ErrorCode::InvalidArgument, "non-finite coefficient at n=" + std::to_string(n));
    if (coeffs.t[n] == 0.0)
      fail(ErrorCode::ZeroOffDiagonal, "t_" + std::to_string(n) + " = 0");
  }
  PolySequence seq;
  seq.values = forward(coeffs, z, n_max);
  seq.argument = z;
  seq.coeffs = coeffs;
  return seq;
}

double christoffel_darboux_check(const PolySequence& seq, double z, double h) {
  const std::size_t big_n = seq.values.size() - 1;
  if (big_n == 0) return 0.0;
  if (h <= 0.0) h = 1e-5 * std::max(1.0, std::abs(z));
  const std::vector<double> p = forward(seq.coeffs, z, big_n);
  const std::vector<double> up = forward(seq.coeffs, z + h, big_n);
  const std::vector<double> down = forward(seq.coeffs, z - h, big_n);
  double sum = 0.0;
  for (std::size_t n = 0; n < big_n; ++n) sum += p[n] * p[n];
  const double dn = (up[big_n] - down[big_n]) / (2.0 * h);
  const double dn1 = (up[big_n - 1] - down[big_n - 1]) / (2.0 * h);
  const double rhs = seq.coeffs.t[big_n - 1] * (dn * p[big_n - 1] - p[big_n] * dn1);
  return std::abs(sum - rhs);
}

}  // namespace tra
