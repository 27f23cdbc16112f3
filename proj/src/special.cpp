#include "tra/special.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

#include "tra/errors.hpp"

namespace tra {

namespace {

constexpr double kLanczosG = 7.0;
constexpr std::array<double, 9> kLanczos{
    0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
    771.32342877765313,      -176.61502916214059,   12.507343278686905,
    -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7};

constexpr unsigned kDirectPochhammerLimit = 64;

cplx lanczos_log_gamma(cplx z) {
  z -= 1.0;
  cplx series = kLanczos[0];
  for (std::size_t i = 1; i < kLanczos.size(); ++i)
    series += kLanczos[i] / (z + static_cast<double>(i));
  const cplx t = z + kLanczosG + 0.5;
  return 0.5 * std::log(2.0 * std::numbers::pi) + (z + 0.5) * std::log(t) - t +
         std::log(series);
}

bool is_nonpositive_integer(double x) {
  return x <= 0.0 && std::floor(x) == x;
}

// log sin(pi z), stable for large |Im z| (imaginary part defined mod 2 pi)
cplx log_sin_pi(cplx z) {
  constexpr double pi = std::numbers::pi;
  const cplx i(0.0, 1.0);
  if (z.imag() > 20.0)
    return -i * pi * z + std::log(cplx(0.0, 0.5)) + std::log(1.0 - std::exp(2.0 * i * pi * z));
  if (z.imag() < -20.0)
    return i * pi * z + std::log(cplx(0.0, -0.5)) + std::log(1.0 - std::exp(-2.0 * i * pi * z));
  return std::log(std::sin(pi * z));
}

}  // namespace

cplx log_gamma(cplx z) {
  if (z.imag() == 0.0 && is_nonpositive_integer(z.real()))
    fail(ErrorCode::DomainError, "log_gamma pole");
  if (z.real() < 0.5) {
    // reflection: Gamma(z) Gamma(1 - z) = pi / sin(pi z)
    return std::log(std::numbers::pi) - log_sin_pi(z) - lanczos_log_gamma(1.0 - z);
  }
  return lanczos_log_gamma(z);
}

SignedLog log_gamma_signed(double x) {
  if (is_nonpositive_integer(x)) fail(ErrorCode::DomainError, "gamma pole");
  if (x >= 0.5) return {lanczos_log_gamma(cplx(x, 0.0)).real(), 1};
  const double s = std::sin(std::numbers::pi * x);
  const SignedLog reflected = log_gamma_signed(1.0 - x);
  return {std::log(std::numbers::pi) - std::log(std::abs(s)) - reflected.log_abs,
          (s > 0 ? 1 : -1) * reflected.sign};
}

double gamma_fn(double x) {
  const SignedLog lg = log_gamma_signed(x);
  return lg.sign * std::exp(lg.log_abs);
}

double gamma_abs_sq(double x, double y) {
  if (y == 0.0) {
    const SignedLog lg = log_gamma_signed(x);
    return std::exp(2.0 * lg.log_abs);
  }
  return std::exp(2.0 * log_gamma(cplx(x, y)).real());
}

double wrap_angle(double phase) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  double r = std::fmod(phase, two_pi);
  if (r <= -std::numbers::pi) r += two_pi;
  if (r > std::numbers::pi) r -= two_pi;
  return r;
}

double arg_gamma(cplx z) {
  if (z.imag() == 0.0) {
    const SignedLog lg = log_gamma_signed(z.real());
    return lg.sign > 0 ? 0.0 : std::numbers::pi;
  }
  return wrap_angle(log_gamma(z).imag());
}

double pochhammer(double a, unsigned n) {
  if (n == 0) return 1.0;
  if (n <= kDirectPochhammerLimit) {
    double r = 1.0;
    for (unsigned j = 0; j < n; ++j) r *= a + j;
    return r;
  }
  if (is_nonpositive_integer(a) && -a < n) return 0.0;
  const SignedLog top = log_gamma_signed(a + n);
  const SignedLog bottom = log_gamma_signed(a);
  const double value = std::exp(top.log_abs - bottom.log_abs);
  if (!std::isfinite(value)) fail(ErrorCode::NumericalOverflow, "pochhammer");
  return top.sign * bottom.sign * value;
}

cplx pochhammer(cplx a, unsigned n) {
  if (a.imag() == 0.0) return pochhammer(a.real(), n);
  if (n <= kDirectPochhammerLimit) {
    cplx r = 1.0;
    for (unsigned j = 0; j < n; ++j) r *= a + static_cast<double>(j);
    return r;
  }
  const cplx value = std::exp(log_gamma(a + static_cast<double>(n)) - log_gamma(a));
  if (!std::isfinite(value.real()) || !std::isfinite(value.imag()))
    fail(ErrorCode::NumericalOverflow, "complex pochhammer");
  return value;
}

double log_factorial(unsigned n) {
  return log_gamma_signed(static_cast<double>(n) + 1.0).log_abs;
}

double binomial(unsigned n, unsigned k) {
  if (k > n) return 0.0;
  k = std::min(k, n - k);
  double r = 1.0;
  for (unsigned j = 1; j <= k; ++j) r = r * (n - k + j) / j;
  return r;
}

cplx hypergeometric_sum(std::span<const cplx> upper, std::span<const cplx> lower,
                        cplx x, unsigned terms, double* largest_term) {
  // extended precision: terminating sums at |x| = 1 cancel heavily
  using lcplx = std::complex<long double>;
  const lcplx lx(x.real(), x.imag());
  lcplx term = 1.0L;
  lcplx total = 1.0L;
  long double largest = 1.0L;
  for (unsigned j = 0; j < terms; ++j) {
    const long double jd = j;
    lcplx ratio = lx / (jd + 1.0L);
    for (const cplx& u : upper) ratio *= lcplx(u.real() + jd, u.imag());
    if (ratio == 0.0L) break;
    for (const cplx& l : lower) {
      const lcplx d(l.real() + jd, l.imag());
      if (d == 0.0L) fail(ErrorCode::DegenerateDenominator, "hypergeometric lower parameter");
      ratio /= d;
    }
    term *= ratio;
    if (term == 0.0L) break;
    total += term;
    largest = std::max(largest, std::abs(term));
  }
  if (largest_term) *largest_term = static_cast<double>(largest);
  return cplx(static_cast<double>(total.real()), static_cast<double>(total.imag()));
}

}  // namespace tra
