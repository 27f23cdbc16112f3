#include "tra/classical.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "tra/errors.hpp"
#include "tra/special.hpp"

namespace tra {

namespace {

bool negative_integer(double v) { return v < 0.0 && std::floor(v) == v; }

void check_index(unsigned n, double p, const char* name) {
  if (negative_integer(p) && static_cast<double>(n) > -p - 1.0)
    fail(ErrorCode::IndexOutOfValidity,
         std::string(name) + " = " + std::to_string(p) + " allows degree at most " +
             std::to_string(static_cast<long>(-p - 1.0)));
}

double divide(double num, double den, const char* what) {
  if (den == 0.0) fail(ErrorCode::DegenerateDenominator, what);
  return num / den;
}

}  // namespace

std::vector<double> laguerre_sequence(double nu, double x, std::size_t count) {
  if (count == 0) return {};
  check_index(static_cast<unsigned>(count - 1), nu, "nu");
  std::vector<double> v(count);
  v[0] = 1.0;
  if (count > 1) v[1] = nu + 1.0 - x;
  for (std::size_t k = 1; k + 1 < count; ++k)
    v[k + 1] = ((2.0 * k + nu + 1.0 - x) * v[k] - (k + nu) * v[k - 1]) / (k + 1.0);
  return v;
}

std::vector<double> jacobi_sequence(double mu, double nu, double x, std::size_t count) {
  if (count == 0) return {};
  check_index(static_cast<unsigned>(count - 1), mu, "mu");
  check_index(static_cast<unsigned>(count - 1), nu, "nu");
  std::vector<double> v(count);
  v[0] = 1.0;
  if (count > 1) v[1] = (mu + 1.0) + 0.5 * (mu + nu + 2.0) * (x - 1.0);
  for (std::size_t k = 1; k + 1 < count; ++k) {
    const double w = 2.0 * k + mu + nu;
    const double a = divide(2.0 * (k + 1.0) * (k + mu + nu + 1.0), (w + 1.0) * (w + 2.0),
                            "Jacobi a_n");
    const double b = divide(nu * nu - mu * mu, w * (w + 2.0), "Jacobi b_n");
    const double c = divide(2.0 * (k + mu) * (k + nu), w * (w + 1.0), "Jacobi c_n");
    v[k + 1] = divide((x - b) * v[k] - c * v[k - 1], a, "Jacobi a_n");
  }
  return v;
}

double laguerre(unsigned n, double nu, double x) {
  return laguerre_sequence(nu, x, n + 1).back();
}

double jacobi(unsigned n, double mu, double nu, double x) {
  return jacobi_sequence(mu, nu, x, n + 1).back();
}

double basis_norm(const BasisSpec& spec, unsigned n) {
  if (spec.kind == BasisKind::Laguerre) {
    const SignedLog g = log_gamma_signed(n + spec.nu + 1.0);
    if (g.sign < 0) fail(ErrorCode::RealityViolation, "Laguerre norm not real");
    return std::exp(0.5 * (log_factorial(n) - g.log_abs));
  }
  const double mu = spec.mu, nu = spec.nu;
  const double w = 2.0 * n + mu + nu + 1.0;
  const SignedLog a = log_gamma_signed(n + mu + nu + 1.0);
  const SignedLog b = log_gamma_signed(n + mu + 1.0);
  const SignedLog c = log_gamma_signed(n + nu + 1.0);
  const double sign = (w > 0 ? 1 : -1) * a.sign * b.sign * c.sign;
  if (sign < 0) fail(ErrorCode::RealityViolation, "Jacobi norm not real");
  return std::exp(0.5 * (std::log(std::abs(w)) - (mu + nu + 1.0) * std::log(2.0) +
                         log_factorial(n) + a.log_abs - b.log_abs - c.log_abs));
}

double basis_element(const BasisSpec& spec, unsigned n, double x) {
  if (spec.kind == BasisKind::Laguerre) {
    if (!(x >= 0.0)) fail(ErrorCode::DomainError, "Laguerre basis needs x >= 0");
    return basis_norm(spec, n) * std::pow(x, spec.alpha) * std::exp(-spec.beta * x) *
           laguerre(n, spec.nu, x);
  }
  if (!(x >= -1.0 && x <= 1.0)) fail(ErrorCode::DomainError, "Jacobi basis needs -1 <= x <= 1");
  return basis_norm(spec, n) * std::pow(1.0 - x, spec.alpha) * std::pow(1.0 + x, spec.beta) *
         jacobi(n, spec.mu, spec.nu, x);
}

std::vector<double> basis_values(const BasisSpec& spec, double x, std::size_t count) {
  std::vector<double> v;
  double envelope = 0.0;
  if (spec.kind == BasisKind::Laguerre) {
    if (!(x >= 0.0)) fail(ErrorCode::DomainError, "Laguerre basis needs x >= 0");
    v = laguerre_sequence(spec.nu, x, count);
    envelope = std::pow(x, spec.alpha) * std::exp(-spec.beta * x);
  } else {
    if (!(x >= -1.0 && x <= 1.0)) fail(ErrorCode::DomainError, "Jacobi basis needs -1 <= x <= 1");
    v = jacobi_sequence(spec.mu, spec.nu, x, count);
    envelope = std::pow(1.0 - x, spec.alpha) * std::pow(1.0 + x, spec.beta);
  }
  for (std::size_t n = 0; n < count; ++n) v[n] *= basis_norm(spec, static_cast<unsigned>(n)) * envelope;
  return v;
}

double basis_measure(const BasisSpec& spec, double x) {
  if (spec.kind == BasisKind::Laguerre)
    return std::pow(x, spec.nu - 2.0 * spec.alpha) * std::exp((2.0 * spec.beta - 1.0) * x);
  return std::pow(1.0 - x, spec.mu - 2.0 * spec.alpha) *
         std::pow(1.0 + x, spec.nu - 2.0 * spec.beta);
}

}  // namespace tra
