#pragma once

#include <complex>
#include <span>

namespace tra {

using cplx = std::complex<double>;

/// Principal-branch log Gamma (Lanczos, g = 7, 9 terms) with reflection for Re z < 1/2.
cplx log_gamma(cplx z);

/// Real log|Gamma(x)| and the sign of Gamma(x). Throws DomainError at poles.
struct SignedLog {
  double log_abs;
  int sign;
};
SignedLog log_gamma_signed(double x);

double gamma_fn(double x);

/// |Gamma(x + iy)|^2
double gamma_abs_sq(double x, double y);

/// arg Gamma(z) reduced into (-pi, pi].
double arg_gamma(cplx z);

double wrap_angle(double phase);

/// Rising factorial (a)_n. Direct product for n <= 64, log-gamma beyond.
double pochhammer(double a, unsigned n);
cplx pochhammer(cplx a, unsigned n);

double log_factorial(unsigned n);
double binomial(unsigned n, unsigned k);

/// Terminating generalized hypergeometric sum over j = 0..terms. largest_term, when
/// given, receives max_j |term_j|.
cplx hypergeometric_sum(std::span<const cplx> upper,
                        std::span<const cplx> lower, cplx x, unsigned terms,
                        double* largest_term = nullptr);

}  // namespace tra
