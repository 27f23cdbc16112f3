#pragma once

#include <functional>
#include <string_view>
#include <variant>
#include <vector>

#include "tra/recurrence.hpp"
#include "tra/special.hpp"

namespace tra {

enum class FamilyKind {
  MeixnerPollaczek,
  Meixner,
  Krawtchouk,
  ContinuousDualHahn,
  DualHahn,
  Wilson,
  Racah,
  NewH,
  NewG,
};

std::string_view family_name(FamilyKind kind) noexcept;

struct MeixnerPollaczekParams {
  double mu;
  double theta;
};

struct MeixnerParams {
  double mu;
  double tau;
};

struct KrawtchoukParams {
  unsigned size;  // N
  double tau;
};

struct ContinuousDualHahnParams {
  double tau;
  double a;
  double b;
};

/// Standard dual Hahn parameters (gamma, delta) on the lattice k = 0..N.
struct DualHahnParams {
  unsigned size;
  double gamma;
  double delta;
};

struct WilsonParams {
  cplx a;
  cplx b;
  cplx c;
  cplx d;
};

/// Standard Racah parameters with gamma = -N - 1.
struct RacahParams {
  unsigned size;
  double alpha;
  double beta;
  double delta;
};

/// Racah record for the symmetric two-parameter form R(.; g; s, s).
RacahParams racah_symmetric(unsigned size, double g, double s);

/// Recursion-only family whose argument is cos(theta).
struct NewHParams {
  double mu;
  double nu;
  double theta;
  double sigma;
  double z;
};

/// Recursion-only discrete family; z is the spectral value supplied by the caller.
struct NewGParams {
  double mu;
  double nu;
  double tau;
  double sigma;
  double z;
};

using PolyFamily =
    std::variant<MeixnerPollaczekParams, MeixnerParams, KrawtchoukParams,
                 ContinuousDualHahnParams, DualHahnParams, WilsonParams,
                 RacahParams, NewHParams, NewGParams>;

FamilyKind kind_of(const PolyFamily& family) noexcept;

/// Jacobi-type coefficients C_n = (nu^2 - mu^2)/((2n+mu+nu)(2n+mu+nu+2)) and D_n.
double jacobi_c(double mu, double nu, double n);
double jacobi_d(double mu, double nu, double n);

/// Signed off-diagonal squares, no admissibility checks. Krawtchouk is
/// reported in its twisted form where t_n^2 = (n+1)(n-N).
struct FormalCoeffs {
  std::vector<double> s;
  std::vector<double> t_sq;
};

FormalCoeffs formal_coeffs(const PolyFamily& family, std::size_t count);

/// Validated real recursion coefficients for n = 0..count-1.
RecursionCoeffs family_coeffs(const PolyFamily& family, std::size_t count);

/// Throws InvalidFamilyParams when the record is not admissible.
void validate(const PolyFamily& family);

/// Number of lattice points for finite families, 0 otherwise.
unsigned finite_size(const PolyFamily& family) noexcept;

/// Maps the natural argument (z, index k, or y = x^2) to the recursion variable.
double recursion_variable(const PolyFamily& family, double arg);

/// Normalized polynomial by direct summation of its terminating hypergeometric form.
double closed_form(const PolyFamily& family, unsigned n, double arg);

/// Normalized polynomial at the k-th discrete mass point of a mixed family.
double closed_form_at_mass(const PolyFamily& family, unsigned n, unsigned k);

enum class WeightKind { Continuous, Discrete, Mixed };

struct Mass {
  unsigned index;
  double argument;  // natural argument of the polynomial
  double weight;
};

/// For ContinuousDualHahn and Wilson the density is over x > 0 with y = x^2.
struct WeightFunction {
  WeightKind kind;
  std::function<double(double)> density;
  double support_lo = 0.0;
  double support_hi = 0.0;
  std::vector<Mass> masses;
};

WeightFunction weight(const PolyFamily& family);

/// Discrete masses of a mixed CDH/Wilson family (empty when purely continuous).
std::vector<Mass> mixed_masses(const PolyFamily& family);

/// Mass of the k-th discrete point. IndexOutOfSpectrum if there is none.
double mass_at(const PolyFamily& family, unsigned k);

inline constexpr double kMeixnerTailMass = 1e-12;

}  // namespace tra
