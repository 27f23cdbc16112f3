#pragma once

#include <optional>
#include <span>
#include <vector>

#include "tra/tra.hpp"

namespace tra {

enum class SpectrumKind { Continuous, DiscreteInfinite, DiscreteFinite, Mixed };

std::string_view spectrum_kind_name(SpectrumKind kind) noexcept;

struct MatchResult {
  PolyFamily family;
  OdeParams params;
  BasisSpec spec;
  TraRecursion recursion;
  SpectralMap map;
  SpectrumKind spectrum_kind = SpectrumKind::Continuous;
  unsigned spectrum_size = 0;   // N: largest discrete index for finite and mixed spectra
  double family_variable = 0.0; // mapped spectral value in the family's recursion variable
  bool formal = false;          // coefficients match but the family record is not admissible
};

/// Picks the family whose constraint region contains the parameters.
MatchResult match_family(const OdeParams& params, Scenario scenario,
                         const BasisChoice& choice = {});

/// Forces a particular family; ScenarioMismatch if it cannot arise from the scenario.
MatchResult match_as(const OdeParams& params, Scenario scenario, FamilyKind kind,
                     const BasisChoice& choice = {});

inline constexpr std::size_t kDefaultTruncation = 60;
inline constexpr double kTailTolerance = 1e-8;

/// Which part of the solution to build: the continuum at the matched spectral value,
/// or the discrete point with index k.
struct Component {
  bool discrete = false;
  unsigned index = 0;

  static Component continuum() { return {false, 0}; }
  static Component bound(unsigned k) { return {true, k}; }
};

struct AssembleOptions {
  std::size_t truncation = kDefaultTruncation;
  bool check_tail = true;
};

struct SeriesSolution {
  std::vector<double> f;
  std::vector<double> basis_norms;
  BasisSpec spec;
  std::size_t truncation = 0;
  double norm_factor = 1.0;  // p(z) or p(k)
  double argument = 0.0;     // spectral value or index
  bool normalized = true;    // false for NewH/NewG
  bool twisted = false;      // coefficients carry an extra i^n (Krawtchouk)
  double tail_ratio = 0.0;   // |f_last| / max |f|
};

SeriesSolution assemble_solution(const MatchResult& match, Component component,
                                 const AssembleOptions& options = {});

/// y(x) = sum f_n phi_n(x).
double evaluate(const SeriesSolution& solution, double x);
std::vector<double> evaluate(const SeriesSolution& solution, std::span<const double> xs);

inline constexpr double kLaguerreMargin = 0.05;
inline constexpr double kJacobiMargin = 0.95;
/// Base step of the residual differences (scaled by max(|x|, 1) for Laguerre).
inline constexpr double kResidualStep = 1e-3;

/// max_x |L y - A0 y| / max(1, |y|) with Richardson-extrapolated central differences.
double ode_residual(const OdeParams& params, const SeriesSolution& solution,
                    std::span<const double> x_points);

}  // namespace tra
