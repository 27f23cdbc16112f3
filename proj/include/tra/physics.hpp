#pragma once

#include <optional>
#include <string_view>
#include <utility>
#include <vector>

#include "tra/solver.hpp"

namespace tra {

enum class CaseKind { Coulomb, IsotropicOscillator, Morse, PoschlTeller, Scarf, Eckart };

std::string_view case_name(CaseKind kind) noexcept;
/// Accepts the names printed by case_name in any letter case, plus short aliases.
std::optional<CaseKind> parse_case(std::string_view name);

/// Physical parameters in units hbar = m = 1. Fields not used by a case are ignored.
/// Scarf uses lambda = pi / L.
struct PotentialCase {
  CaseKind kind = CaseKind::Coulomb;
  double lambda = 1.0;
  double Z = 0.0;
  double omega = 0.0;
  double V1 = 0.0;
  std::optional<double> V2;  // Morse; defaults to lambda^2 / 8
  double A = 0.0;
  double B = 0.0;
  unsigned ell = 0;

  double morse_V2() const { return V2 ? *V2 : 0.125 * lambda * lambda; }
};

void validate(const PotentialCase& pc);

Equation equation_of(CaseKind kind) noexcept;
Scenario scenario_of(CaseKind kind) noexcept;
/// The fixed (a, b) pair of the case.
std::pair<double, double> ode_ab(CaseKind kind) noexcept;

struct RadialDomain {
  double lo;
  double hi;  // may be infinite
};

RadialDomain radial_domain(const PotentialCase& pc);
/// x(r).
double coordinate(const PotentialCase& pc, double r);
/// V(r) including the orbital term where the case has one.
double potential(const PotentialCase& pc, double r);

OdeParams to_ode_params(const PotentialCase& pc, double energy);

/// Sign branches of the basis indices for the case (derived from the physical parameters).
BasisChoice basis_choice(const PotentialCase& pc);

struct Level {
  unsigned m;
  double energy;
};

struct SpectrumOptions {
  unsigned m_max = 10;                // cap for infinite spectra
  bool coulomb_as_printed = false;    // -Z^2 / (2(m+l+1)) instead of the squared denominator
};

struct BoundSpectrum {
  std::vector<Level> levels;
  bool infinite = false;
  unsigned size = 0;                  // N for finite spectra
  std::optional<double> threshold;    // continuum threshold where there is a continuum
};

/// NoBoundStates when the case has none for these parameters.
BoundSpectrum bound_spectrum(const PotentialCase& pc, const SpectrumOptions& options = {});

bool has_continuum(CaseKind kind) noexcept;
double continuum_threshold(const PotentialCase& pc);

/// Asymptotic phase of the continuum solution, in (-pi, pi].
double phase_shift(const PotentialCase& pc, double energy, const BasisChoice& choice);
double phase_shift(const PotentialCase& pc, double energy);

/// Phase read off the matched family's large-n asymptotics at its spectral value.
double family_phase(const MatchResult& match);

struct Wavefunction {
  PotentialCase pc;
  double energy = 0.0;
  MatchResult match;
  SeriesSolution series;

  /// psi(r) = y(x(r)).
  double operator()(double r) const;
};

/// Bound state m (requires a discrete spectrum containing m). free_index overrides the
/// default value of the basis index left free by the scenario.
Wavefunction bound_wavefunction(const PotentialCase& pc, unsigned m,
                                const AssembleOptions& options = {},
                                std::optional<double> free_index = std::nullopt);
/// Continuum solution at energy E above threshold.
Wavefunction scattering_wavefunction(const PotentialCase& pc, double energy,
                                     const AssembleOptions& options = {},
                                     std::optional<double> free_index = std::nullopt);

/// Basis scale used for the Coulomb and oscillator bound states when lambda is left at 0.
double default_basis_scale(const PotentialCase& pc, unsigned m);

struct FdMesh {
  double r_lo = 0.0;
  double r_hi = 0.0;
  double h = 0.0;
};

struct FdOptions {
  unsigned levels = 3;
  double rel_tol = 1e-5;   // agreement required between steps h and h/2
  double abs_tol = 1e-7;   // floor for near-zero eigenvalues
  bool richardson = true;  // report the extrapolated value (4 E(h/2) - E(h)) / 3
};

FdMesh default_mesh(const PotentialCase& pc);

/// Lowest eigenvalues of -1/2 d^2/dr^2 + V(r) with Dirichlet ends, from a 3-point
/// Laplacian on meshes h and h/2. MeshTooCoarse when the two disagree.
std::vector<double> fd_oracle(const PotentialCase& pc, const FdMesh& mesh,
                              const FdOptions& options = {});

}  // namespace tra
