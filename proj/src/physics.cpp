#include "tra/physics.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numbers>
#include <string>

#include "tra/errors.hpp"
#include "tra/special.hpp"
#include "tra/tridiag.hpp"

namespace tra {

namespace {

constexpr double kMorseV2Tol = 1e-12;
constexpr double kIndexMatchTol = 1e-6;

void require(bool ok, const std::string& what) {
  if (!ok) fail(ErrorCode::InvalidArgument, what);
}

double sgn(double v) { return v < 0.0 ? -1.0 : 1.0; }

/// Bound states of the Coulomb case belong to the attractive sign of the coupling.
PotentialCase attractive(const PotentialCase& pc) {
  PotentialCase out = pc;
  if (pc.kind == CaseKind::Coulomb) out.Z = -std::abs(pc.Z);
  return out;
}

void require_morse_v2(const PotentialCase& pc) {
  const double want = 0.125 * pc.lambda * pc.lambda;
  if (std::abs(pc.morse_V2() - want) > kMorseV2Tol * want)
    fail(ErrorCode::ScenarioMismatch, "the Morse solution needs V2 = lambda^2/8");
}

double signed_nu(const PotentialCase& pc) {
  const double l = pc.lambda;
  switch (pc.kind) {
    case CaseKind::PoschlTeller: return sgn(pc.A) * (pc.A / l - 0.5);
    case CaseKind::Scarf: return sgn(pc.A - pc.B) * (pc.A / l - pc.B / l - 0.5);
    case CaseKind::Eckart: return sgn(pc.A) * (2.0 * pc.A / l - 1.0);
    default: return 0.0;
  }
}

unsigned last_negative(double shift) {
  return static_cast<unsigned>(std::ceil(-shift)) - 1u;
}

double wilson_like_phase(double z, cplx p1, cplx p2, double gamma) {
  const cplx iz(0.0, z);
  return wrap_angle(log_gamma(2.0 * iz).imag() - log_gamma(p1 + iz).imag() -
                    log_gamma(p2 + iz).imag() - 2.0 * log_gamma(gamma + iz).imag());
}

unsigned discrete_index(const MatchResult& match) {
  const FamilyKind kind = kind_of(match.family);
  const double v = match.family_variable;
  if (match.spectrum_kind == SpectrumKind::Mixed) {
    for (const Mass& m : mixed_masses(match.family)) {
      const double at = recursion_variable(match.family, m.argument);
      if (std::abs(at - v) <= kIndexMatchTol * std::max(1.0, std::abs(at))) return m.index;
    }
    fail(ErrorCode::IndexOutOfSpectrum, "energy does not sit on a discrete mass point");
  }
  if (kind == FamilyKind::Meixner || finite_size(match.family) > 0) {
    const double k = std::round(v);
    if (k >= 0.0 && std::abs(recursion_variable(match.family, k) - v) <=
                        kIndexMatchTol * std::max(1.0, std::abs(v)))
      return static_cast<unsigned>(k);
  }
  fail(ErrorCode::IndexOutOfSpectrum, "energy does not sit on a discrete point");
}

}  // namespace

std::string_view case_name(CaseKind kind) noexcept {
  switch (kind) {
    case CaseKind::Coulomb: return "Coulomb";
    case CaseKind::IsotropicOscillator: return "IsotropicOscillator";
    case CaseKind::Morse: return "Morse";
    case CaseKind::PoschlTeller: return "PoschlTeller";
    case CaseKind::Scarf: return "Scarf";
    case CaseKind::Eckart: return "Eckart";
  }
  return "?";
}

std::optional<CaseKind> parse_case(std::string_view name) {
  std::string s;
  for (char c : name)
    if (c != '-' && c != '_' && c != ' ') s += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  if (s == "coulomb") return CaseKind::Coulomb;
  if (s == "isotropicoscillator" || s == "oscillator") return CaseKind::IsotropicOscillator;
  if (s == "morse") return CaseKind::Morse;
  if (s == "poschlteller" || s == "pt") return CaseKind::PoschlTeller;
  if (s == "scarf") return CaseKind::Scarf;
  if (s == "eckart") return CaseKind::Eckart;
  return std::nullopt;
}

void validate(const PotentialCase& pc) {
  require(std::isfinite(pc.lambda) && pc.lambda > 0.0, "lambda must be positive");
  require(std::isfinite(pc.Z) && std::isfinite(pc.omega) && std::isfinite(pc.V1) &&
              std::isfinite(pc.A) && std::isfinite(pc.B) && std::isfinite(pc.morse_V2()),
          "physical parameters must be finite");
  if (pc.kind == CaseKind::IsotropicOscillator) require(pc.omega > 0.0, "omega must be positive");
  if (pc.kind == CaseKind::Morse) require(pc.morse_V2() >= 0.0, "V2 must be nonnegative");
}

Equation equation_of(CaseKind kind) noexcept {
  switch (kind) {
    case CaseKind::Coulomb:
    case CaseKind::IsotropicOscillator:
    case CaseKind::Morse: return Equation::Laguerre;
    default: return Equation::Jacobi;
  }
}

Scenario scenario_of(CaseKind kind) noexcept {
  switch (kind) {
    case CaseKind::Coulomb:
    case CaseKind::IsotropicOscillator: return Scenario::A7a;
    case CaseKind::Morse: return Scenario::A7b;
    default: return Scenario::B12c;
  }
}

std::pair<double, double> ode_ab(CaseKind kind) noexcept {
  switch (kind) {
    case CaseKind::Coulomb: return {0.0, 0.0};
    case CaseKind::IsotropicOscillator: return {0.5, 0.0};
    case CaseKind::Morse: return {1.0, 0.0};
    case CaseKind::PoschlTeller: return {1.0, 0.5};
    case CaseKind::Scarf: return {0.5, 0.5};
    case CaseKind::Eckart: return {1.0, 0.0};
  }
  return {0.0, 0.0};
}

RadialDomain radial_domain(const PotentialCase& pc) {
  const double inf = std::numeric_limits<double>::infinity();
  switch (pc.kind) {
    case CaseKind::Morse: return {-inf, inf};
    case CaseKind::Scarf: return {0.0, std::numbers::pi / pc.lambda};
    default: return {0.0, inf};
  }
}

double coordinate(const PotentialCase& pc, double r) {
  const double l = pc.lambda;
  switch (pc.kind) {
    case CaseKind::Coulomb: return l * r;
    case CaseKind::IsotropicOscillator: return 0.25 * l * l * r * r;
    case CaseKind::Morse: return std::exp(l * r);
    case CaseKind::PoschlTeller: {
      const double t = std::tanh(l * r / std::numbers::sqrt2);
      return 2.0 * t * t - 1.0;
    }
    case CaseKind::Scarf: return -std::cos(l * r);
    case CaseKind::Eckart: return 1.0 - 2.0 * std::exp(-l * r);
  }
  return 0.0;
}

double potential(const PotentialCase& pc, double r) {
  const double l = pc.lambda;
  const double orbital = 0.5 * pc.ell * (pc.ell + 1.0) / (r * r);
  switch (pc.kind) {
    case CaseKind::Coulomb: return orbital + pc.Z / r;
    case CaseKind::IsotropicOscillator: return orbital + 0.5 * pc.omega * pc.omega * r * r;
    case CaseKind::Morse: {
      const double e = std::exp(l * r);
      return pc.morse_V2() * e * e - pc.V1 * e;
    }
    case CaseKind::PoschlTeller: {
      const double u = l * r / std::numbers::sqrt2;
      const double sh = std::sinh(u), ch = std::cosh(u);
      return 0.25 * (pc.A * (pc.A - l) / (sh * sh) + l * pc.B / (ch * ch));
    }
    case CaseKind::Scarf: {
      const double s = std::sin(l * r);
      return ((pc.A * pc.A + pc.B * pc.B - l * pc.A) - pc.B * (2.0 * pc.A - l) * std::cos(l * r)) /
             (2.0 * s * s);
    }
    case CaseKind::Eckart: {
      const double e = std::exp(-l * r);
      return 0.5 / (1.0 - e) * (l * pc.B + pc.A * (pc.A - l) * e / (1.0 - e));
    }
  }
  return 0.0;
}

OdeParams to_ode_params(const PotentialCase& pc, double E) {
  validate(pc);
  const double l = pc.lambda, l2 = l * l;
  const auto [a, b] = ode_ab(pc.kind);
  OdeParams p;
  p.equation = equation_of(pc.kind);
  p.a = a;
  p.b = b;
  const double ll = pc.ell * (pc.ell + 1.0);
  switch (pc.kind) {
    case CaseKind::Coulomb:
      p.A_zero = 2.0 * pc.Z / l;
      p.A_minus = -ll;
      p.A_plus = 2.0 * E / l2;
      break;
    case CaseKind::IsotropicOscillator:
      p.A_plus = -4.0 * pc.omega * pc.omega / (l2 * l2);
      p.A_minus = -0.25 * ll;
      p.A_zero = -2.0 * E / l2;
      break;
    case CaseKind::Morse:
      p.A_plus = -2.0 * pc.morse_V2() / l2;
      p.A_zero = -2.0 * pc.V1 / l2;
      p.A_minus = 2.0 * E / l2;
      break;
    case CaseKind::PoschlTeller:
      p.A_plus = -pc.A * (pc.A - l) / (2.0 * l2);
      p.A_zero = pc.B / (4.0 * l);
      p.A_minus = 2.0 * E / l2;
      break;
    case CaseKind::Scarf: {
      const double d = pc.A / l - pc.B / l - 0.5, s = pc.A / l + pc.B / l - 0.5;
      p.A_plus = 0.5 * (0.25 - d * d);
      p.A_minus = 0.5 * (0.25 - s * s);
      p.A_zero = -2.0 * E / l2;
      break;
    }
    case CaseKind::Eckart:
      p.A_plus = -2.0 * (pc.A / l) * (pc.A / l - 1.0);
      p.A_zero = 2.0 * E / l2;
      p.A_minus = 2.0 * (2.0 * E - l * pc.B) / l2;
      break;
  }
  return p;
}

BasisChoice basis_choice(const PotentialCase& pc) {
  BasisChoice c;
  switch (pc.kind) {
    case CaseKind::PoschlTeller:
    case CaseKind::Scarf:
    case CaseKind::Eckart:
      c.nu_sign = signed_nu(pc) < 0.0 ? Branch::Minus : Branch::Plus;
      break;
    default: break;
  }
  return c;
}

bool has_continuum(CaseKind kind) noexcept {
  return kind != CaseKind::IsotropicOscillator && kind != CaseKind::Scarf;
}

double continuum_threshold(const PotentialCase& pc) {
  if (!has_continuum(pc.kind)) fail(ErrorCode::NoContinuum, std::string(case_name(pc.kind)) + " has no continuum");
  if (pc.kind == CaseKind::Eckart) return std::max(0.0, 0.5 * pc.lambda * pc.B);
  return 0.0;
}

BoundSpectrum bound_spectrum(const PotentialCase& pc, const SpectrumOptions& options) {
  validate(pc);
  const double l = pc.lambda, l2 = l * l;
  BoundSpectrum out;
  if (has_continuum(pc.kind)) out.threshold = continuum_threshold(pc);
  const auto none = [&](const std::string& why) -> BoundSpectrum {
    fail(ErrorCode::NoBoundStates, std::string(case_name(pc.kind)) + ": " + why);
  };
  switch (pc.kind) {
    case CaseKind::Coulomb: {
      if (pc.Z == 0.0) return none("Z = 0");
      out.infinite = true;
      for (unsigned m = 0; m <= options.m_max; ++m) {
        const double n = m + pc.ell + 1.0;
        const double den = options.coulomb_as_printed ? n : n * n;
        out.levels.push_back({m, -0.5 * pc.Z * pc.Z / den});
      }
      return out;
    }
    case CaseKind::IsotropicOscillator:
      out.infinite = true;
      for (unsigned m = 0; m <= options.m_max; ++m)
        out.levels.push_back({m, pc.omega * (2.0 * m + pc.ell + 1.5)});
      return out;
    case CaseKind::Morse: {
      require_morse_v2(pc);
      const double tau = 0.5 - 2.0 * pc.V1 / l2;
      if (tau >= 0.0) return none("needs V1 > lambda^2/4");
      out.size = last_negative(tau);
      for (unsigned m = 0; m <= out.size; ++m)
        out.levels.push_back({m, -0.5 * l2 * (m + tau) * (m + tau)});
      return out;
    }
    case CaseKind::PoschlTeller: {
      const double s = 0.25 - pc.B / l;
      if (s <= 0.0) return none("needs B < lambda/4");
      const double nu = signed_nu(pc);
      const double shift = 0.5 * (nu + 1.0) - 0.5 * std::sqrt(s);
      if (shift >= 0.0) return none("no level below threshold");
      out.size = last_negative(shift);
      for (unsigned m = 0; m <= out.size; ++m) {
        const double v = 2.0 * m + nu + 1.0 - std::sqrt(s);
        out.levels.push_back({m, -0.25 * l2 * v * v});
      }
      return out;
    }
    case CaseKind::Scarf: {
      const double nu = signed_nu(pc);
      out.infinite = true;
      for (unsigned m = 0; m <= options.m_max; ++m) {
        const double v = m + 0.5 * (nu + 1.0) + 0.5 * (pc.A / l + pc.B / l - 0.5);
        out.levels.push_back({m, 0.5 * l2 * v * v});
      }
      return out;
    }
    case CaseKind::Eckart: {
      if (pc.B >= 0.0) return none("needs B < 0");
      const double sigma = 0.5 * (signed_nu(pc) + 1.0);
      const double root = std::sqrt(-pc.B / l);
      if (sigma - root >= 0.0) return none("no level below threshold");
      out.size = last_negative(sigma - root);
      for (unsigned m = 0; m <= out.size; ++m) {
        const double s = m + sigma;
        const double v = s - (pc.B / l) / s;
        out.levels.push_back({m, -0.125 * l2 * v * v});
      }
      return out;
    }
  }
  return out;
}

double phase_shift(const PotentialCase& pc, double E) { return phase_shift(pc, E, basis_choice(pc)); }

double phase_shift(const PotentialCase& pc, double E, const BasisChoice& choice) {
  validate(pc);
  const double threshold = continuum_threshold(pc);
  if (!(E > threshold) || !(E > 0.0))
    fail(ErrorCode::BelowThreshold, "energy must lie above the continuum threshold");
  const double l = pc.lambda;
  const double kappa = std::sqrt(2.0 * E);
  switch (pc.kind) {
    case CaseKind::Coulomb: return arg_gamma(cplx(pc.ell + 1.0, -pc.Z / kappa));
    case CaseKind::Morse: {
      require_morse_v2(pc);
      const double z = kappa / l;
      const double tau = 0.5 - 2.0 * pc.V1 / (l * l);
      const double alpha = 0.5 * (choice.free_index + 1.0);
      const cplx iz(0.0, z);
      return wrap_angle(log_gamma(2.0 * iz).imag() - log_gamma(tau + iz).imag() -
                        2.0 * log_gamma(alpha + iz).imag());
    }
    case CaseKind::PoschlTeller: {
      const double nu = resolve_basis(to_ode_params(pc, E), Scenario::B12c, choice).nu;
      const double sigma = 0.5 * (nu + 1.0);
      const cplx tau = 0.5 * std::sqrt(cplx(pc.B / l - 0.25, 0.0));
      const cplx i(0.0, 1.0);
      return wilson_like_phase(std::sqrt(E) / l, sigma + i * tau, sigma - i * tau,
                               0.5 * (choice.free_index + 1.0));
    }
    case CaseKind::Eckart: {
      const double nu = resolve_basis(to_ode_params(pc, E), Scenario::B12c, choice).nu;
      const double sigma = 0.5 * (nu + 1.0);
      const double z = std::sqrt(kappa * kappa / (l * l) - pc.B / l);
      return wilson_like_phase(z, cplx(sigma, kappa / l), cplx(sigma, -kappa / l),
                               0.5 * (choice.free_index + 1.0));
    }
    default: break;
  }
  fail(ErrorCode::NoContinuum, std::string(case_name(pc.kind)) + " has no continuum");
}

double family_phase(const MatchResult& match) {
  const double v = match.family_variable;
  return std::visit(
      [&](const auto& f) -> double {
        using T = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<T, MeixnerPollaczekParams>) {
          return arg_gamma(cplx(f.mu, v));
        } else if constexpr (std::is_same_v<T, ContinuousDualHahnParams>) {
          if (!(v > 0.0)) fail(ErrorCode::BelowThreshold, "continuum needs y > 0");
          const cplx iz(0.0, std::sqrt(v));
          return wrap_angle(log_gamma(2.0 * iz).imag() - log_gamma(f.tau + iz).imag() -
                            log_gamma(f.a + iz).imag() - log_gamma(f.b + iz).imag());
        } else if constexpr (std::is_same_v<T, WilsonParams>) {
          if (!(v > 0.0)) fail(ErrorCode::BelowThreshold, "continuum needs y > 0");
          const cplx iz(0.0, std::sqrt(v));
          return wrap_angle(log_gamma(2.0 * iz).imag() - log_gamma(f.a + iz).imag() -
                            log_gamma(f.b + iz).imag() - log_gamma(f.c + iz).imag() -
                            log_gamma(f.d + iz).imag());
        } else {
          fail(ErrorCode::NoContinuum, std::string(family_name(kind_of(match.family))) +
                                           " has no continuous asymptotics");
        }
      },
      match.family);
}

double Wavefunction::operator()(double r) const { return evaluate(series, coordinate(pc, r)); }

Wavefunction bound_wavefunction(const PotentialCase& pc, unsigned m, const AssembleOptions& options,
                                std::optional<double> free_index) {
  SpectrumOptions so;
  so.m_max = m;
  const BoundSpectrum spec = bound_spectrum(pc, so);
  if (m >= spec.levels.size())
    fail(ErrorCode::IndexOutOfSpectrum,
         "level " + std::to_string(m) + " exceeds N = " + std::to_string(spec.size));
  Wavefunction w;
  w.pc = attractive(pc);
  w.energy = spec.levels[m].energy;
  BasisChoice choice = basis_choice(w.pc);
  if (free_index) choice.free_index = *free_index;
  w.match = match_family(to_ode_params(w.pc, w.energy), scenario_of(pc.kind), choice);
  w.series = assemble_solution(w.match, Component::bound(discrete_index(w.match)), options);
  return w;
}

Wavefunction scattering_wavefunction(const PotentialCase& pc, double E, const AssembleOptions& options,
                                     std::optional<double> free_index) {
  validate(pc);
  if (!(E > continuum_threshold(pc)) || !(E > 0.0))
    fail(ErrorCode::BelowThreshold, "energy must lie above the continuum threshold");
  Wavefunction w;
  w.pc = pc;
  w.energy = E;
  BasisChoice choice = basis_choice(pc);
  if (free_index) choice.free_index = *free_index;
  w.match = match_family(to_ode_params(pc, E), scenario_of(pc.kind), choice);
  w.series = assemble_solution(w.match, Component::continuum(), options);
  return w;
}

double default_basis_scale(const PotentialCase& pc, unsigned m) {
  switch (pc.kind) {
    case CaseKind::Coulomb: return std::abs(pc.Z) / (m + pc.ell + 1.0);
    case CaseKind::IsotropicOscillator: return std::sqrt(2.0 * pc.omega);
    default: return pc.lambda;
  }
}

FdMesh default_mesh(const PotentialCase& pc) {
  const double l = pc.lambda;
  switch (pc.kind) {
    case CaseKind::Coulomb: {
      const double z = std::max(std::abs(pc.Z), 1e-3);
      const double n = pc.ell + 3.0;
      return {0.0, (8.0 * n * n + 40.0) / z, 0.005 / z};
    }
    case CaseKind::IsotropicOscillator: {
      const double top = pc.omega * (2.0 * 3.0 + pc.ell + 1.5);
      const double hi = std::sqrt(2.0 * top) / pc.omega + 8.0 / std::sqrt(pc.omega);
      return {0.0, hi, hi / 6000.0};
    }
    case CaseKind::Morse: {
      const double v2 = pc.morse_V2();
      const double y = (pc.V1 + std::sqrt(pc.V1 * pc.V1 + 400.0 * v2)) / (2.0 * v2);
      return {-60.0 / l, std::log(y) / l, 0.002 / (l * std::sqrt(1.0 + 2.0 * pc.V1 / (l * l)))};
    }
    case CaseKind::Scarf: {
      const double hi = std::numbers::pi / l;
      return {0.0, hi, hi / 8000.0};
    }
    case CaseKind::PoschlTeller:
    case CaseKind::Eckart: {
      const double depth = std::abs(pc.B) / l + pc.A * pc.A / (l * l);
      return {0.0, 60.0 / l, 0.002 / (l * std::sqrt(1.0 + depth))};
    }
  }
  return {};
}

namespace {

std::vector<double> fd_levels(const PotentialCase& pc, const FdMesh& mesh, double h, unsigned count) {
  const auto n = static_cast<std::size_t>(std::llround((mesh.r_hi - mesh.r_lo) / h));
  if (n < 3 || n > 20'000'000) fail(ErrorCode::InvalidArgument, "mesh has an unusable number of points");
  const double step = (mesh.r_hi - mesh.r_lo) / static_cast<double>(n);
  std::vector<double> d(n - 1), e(n - 2, -0.5 / (step * step));
  for (std::size_t i = 1; i < n; ++i) {
    const double v = potential(pc, mesh.r_lo + static_cast<double>(i) * step);
    if (!std::isfinite(v)) fail(ErrorCode::DomainError, "potential is not finite on the mesh");
    d[i - 1] = 1.0 / (step * step) + v;
  }
  return lowest_eigenvalues(d, e, count);
}

}  // namespace

std::vector<double> fd_oracle(const PotentialCase& pc, const FdMesh& mesh, const FdOptions& options) {
  validate(pc);
  require(std::isfinite(mesh.r_lo) && std::isfinite(mesh.r_hi) && mesh.r_hi > mesh.r_lo,
          "mesh needs finite r_lo < r_hi");
  require(mesh.h > 0.0 && mesh.h < mesh.r_hi - mesh.r_lo, "mesh step out of range");
  const PotentialCase bound = attractive(pc);
  const std::vector<double> coarse = fd_levels(bound, mesh, mesh.h, options.levels);
  const std::vector<double> fine = fd_levels(bound, mesh, 0.5 * mesh.h, options.levels);
  std::vector<double> out(fine.size());
  for (std::size_t k = 0; k < fine.size(); ++k) {
    const double diff = std::abs(fine[k] - coarse[k]);
    if (diff > options.rel_tol * std::abs(fine[k]) + options.abs_tol)
      fail(ErrorCode::MeshTooCoarse, "level " + std::to_string(k) + " moved by " +
                                         std::to_string(diff) + " between h and h/2");
    out[k] = options.richardson ? (4.0 * fine[k] - coarse[k]) / 3.0 : fine[k];
  }
  return out;
}

}  // namespace tra
