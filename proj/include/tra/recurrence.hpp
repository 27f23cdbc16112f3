#pragma once

#include <algorithm>
#include <cstddef>
#include <vector>

namespace tra {

inline constexpr std::size_t kMaxRecursionOrder = 500;

/// Diagonal s_n and off-diagonal t_n of z P_n = s_n P_n + t_{n-1} P_{n-1} + t_n P_{n+1}.
struct RecursionCoeffs {
  std::vector<double> s;
  std::vector<double> t;

  std::size_t size() const { return std::min(s.size(), t.size()); }
};

struct PolySequence {
  std::vector<double> values;
  double argument = 0.0;
  RecursionCoeffs coeffs;
};

/// P_0..P_{n_max} by forward recursion. Needs t_0..t_{n_max-1} finite and nonzero.
PolySequence run_recursion(const RecursionCoeffs& coeffs, double z, std::size_t n_max);

/// |sum_{n<N} P_n^2 - t_{N-1}(P'_N P_{N-1} - P_N P'_{N-1})| with central-difference
/// derivatives of step h. A non-positive h selects 1e-5 * max(1, |z|).
double christoffel_darboux_check(const PolySequence& seq, double z, double h = 0.0);

}  // namespace tra
