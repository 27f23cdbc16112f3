#pragma once

#include <cstddef>
#include <vector>

namespace tra {

/// Classical Laguerre L_n^nu(x) by its three-term recursion.
double laguerre(unsigned n, double nu, double x);

/// Classical Jacobi P_n^(mu,nu)(x) by its three-term recursion.
double jacobi(unsigned n, double mu, double nu, double x);

std::vector<double> laguerre_sequence(double nu, double x, std::size_t count);
std::vector<double> jacobi_sequence(double mu, double nu, double x, std::size_t count);

enum class BasisKind { Laguerre, Jacobi };

enum class Scenario { A7a, A7b, B12a, B12b, B12c };

/// Laguerre: phi_n = c_n x^alpha e^(-beta x) L_n^nu(x), x >= 0.
/// Jacobi:   phi_n = c_n (1-x)^alpha (1+x)^beta P_n^(mu,nu)(x), -1 <= x <= 1.
struct BasisSpec {
  BasisKind kind = BasisKind::Laguerre;
  double alpha = 0.0;
  double beta = 0.0;
  double mu = 0.0;  // Jacobi only
  double nu = 0.0;
  Scenario scenario = Scenario::A7a;
};

double basis_norm(const BasisSpec& spec, unsigned n);
double basis_element(const BasisSpec& spec, unsigned n, double x);
/// phi_0(x) .. phi_{count-1}(x).
std::vector<double> basis_values(const BasisSpec& spec, double x, std::size_t count);

/// Density of the measure d(zeta) against which the basis is orthonormal.
double basis_measure(const BasisSpec& spec, double x);

}  // namespace tra
