#pragma once

#include <cstddef>
#include <optional>
#include <string_view>
#include <vector>

#include "tra/classical.hpp"
#include "tra/families.hpp"
#include "tra/recurrence.hpp"

namespace tra {

enum class Equation { Laguerre, Jacobi };

/// Laguerre: [x y'' + (a + b x) y' + A+ x + A-/x] y = A0 y.
/// Jacobi:   {(1-x^2) y'' - [a - b + x(a + b)] y' + A+/(1+x) + A-/(1-x) + A1 x} y = A0 y.
struct OdeParams {
  Equation equation = Equation::Laguerre;
  double a = 0.0;
  double b = 0.0;
  double A_plus = 0.0;
  double A_minus = 0.0;
  double A_zero = 0.0;
  double A_one = 0.0;  // Jacobi only
};

void validate(const OdeParams& params);

enum class Branch { Plus, Minus };

inline constexpr double kDefaultFreeIndex = 1.3;
inline constexpr double kConstraintTol = 1e-9;

/// Sign branches for the indices fixed by a quadratic constraint, and the value of
/// the index left free by the scenario (A7b: nu, B12b: nu, B12c: mu).
struct BasisChoice {
  Branch mu_sign = Branch::Plus;
  Branch nu_sign = Branch::Plus;
  double free_index = kDefaultFreeIndex;
};

BasisSpec resolve_basis(const OdeParams& params, Scenario scenario,
                        const BasisChoice& choice = {});

std::string_view scenario_name(Scenario scenario) noexcept;

enum class TraForm { A8a, A8b, B13a, B13b, B13c };

std::string_view form_name(TraForm form) noexcept;

/// Normalized z f_n = s_n f_n + t_{n-1} f_{n-1} + t_n f_{n+1} for the expansion
/// coefficients. t_sq carries the sign so that negative-index bases are representable.
struct TraRecursion {
  TraForm form = TraForm::A8a;
  std::vector<double> s;
  std::vector<double> t_sq;
  std::vector<int> t_sign;
  double variable = 0.0;

  std::size_t size() const { return s.size(); }
  /// Real coefficients; RealityViolation if some t_n^2 < 0.
  RecursionCoeffs real_coeffs() const;
};

TraRecursion laguerre_st2r2(const OdeParams& params, const BasisSpec& spec, std::size_t count);
/// B13a under B12a, B13c under B12c, B13b under B12b.
TraRecursion jacobi_st2r2(const OdeParams& params, const BasisSpec& spec, std::size_t count);

/// family variable = scale * tra variable + offset, s^f_n = scale * s_n + offset,
/// (t^f_n)^2 = scale^2 * t_n^2 against the formal (signed) family coefficients.
struct SpectralMap {
  double scale = 1.0;
  double offset = 0.0;

  double apply(double tra_variable) const { return scale * tra_variable + offset; }
};

/// Largest relative deviation between mapped TRA coefficients and a family's formal ones.
double compare_formal(const TraRecursion& rec, const FormalCoeffs& family, const SpectralMap& map);

double check_identity_52(double mu, double nu, double chi, unsigned n);

struct B11Residuals {
  double b;
  double c;
};
B11Residuals check_identities_B11(double mu, double nu, unsigned n);

struct SwappedProblem {
  OdeParams params;
  BasisSpec spec;
};
/// mu <-> nu, a <-> b, alpha <-> beta, A+ <-> A-, with B12b <-> B12c.
SwappedProblem apply_B14(const OdeParams& params, const BasisSpec& spec);

}  // namespace tra
