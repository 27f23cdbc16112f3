#include "tra/solver.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "tra/errors.hpp"

namespace tra {

namespace {

constexpr double kBoundaryTol = 1e-12;
constexpr double kIndexTol = 1e-6;

bool negative_integer(double v, unsigned& size) {
  if (!(v <= -1.0) || std::floor(v) != v) return false;
  size = static_cast<unsigned>(-v - 1.0);
  return true;
}

bool near(double v, double target) {
  return std::abs(v - target) <= kBoundaryTol * std::max(1.0, std::abs(target));
}

bool admissible(const PolyFamily& family) {
  try {
    validate(family);
    return true;
  } catch (const Error& e) {
    if (e.code() == ErrorCode::InvalidFamilyParams) return false;
    throw;
  }
}

/// Number of nonnegative integers k with k + shift < 0, minus one.
unsigned last_below_zero(double shift) {
  return static_cast<unsigned>(std::ceil(-shift)) - 1u;
}

TraRecursion build(const OdeParams& params, const BasisSpec& spec, std::size_t count) {
  return params.equation == Equation::Laguerre ? laguerre_st2r2(params, spec, count)
                                                : jacobi_st2r2(params, spec, count);
}

struct Built {
  PolyFamily family;
  SpectralMap map;
  SpectrumKind kind = SpectrumKind::Continuous;
  unsigned size = 0;
};

[[noreturn]] void mismatch(FamilyKind kind, TraForm form) {
  fail(ErrorCode::ScenarioMismatch, std::string(family_name(kind)) + " does not arise from " +
                                        std::string(form_name(form)));
}

Built build_a8a(const OdeParams& p, const BasisSpec& spec, FamilyKind kind) {
  const double x = 4.0 * p.A_plus - p.b * p.b;
  const double g = 0.25 * (x + 1.0);
  const double nu = spec.nu;
  Built out;
  switch (kind) {
    case FamilyKind::MeixnerPollaczek: {
      if (!(x > 0.0)) fail(ErrorCode::NoFamilyApplies, "Meixner-Pollaczek needs 4A+ > b^2");
      const double theta = std::acos((x - 1.0) / (x + 1.0));
      out.family = MeixnerPollaczekParams{0.5 * (nu + 1.0), theta};
      out.map = {-g / std::sqrt(x), 0.0};
      out.kind = SpectrumKind::Continuous;
      return out;
    }
    case FamilyKind::Meixner: {
      if (!(x < -1.0)) fail(ErrorCode::NoFamilyApplies, "Meixner needs 4A+ < b^2 - 1");
      const double ch = (x - 1.0) / (x + 1.0);
      const double theta = std::acosh(ch);
      out.family = MeixnerParams{0.5 * (nu + 1.0), std::exp(-2.0 * theta)};
      out.map = {-g * (ch - 1.0) / std::sinh(theta), -0.5 * (nu + 1.0)};
      out.kind = SpectrumKind::DiscreteInfinite;
      return out;
    }
    case FamilyKind::Krawtchouk: {
      unsigned n = 0;
      if (!negative_integer(nu, n) || n == 0)
        fail(ErrorCode::NoFamilyApplies, "Krawtchouk needs nu = -N-1 with N >= 1");
      const double theta = std::asinh(-(x - 1.0) / (x + 1.0));
      out.family = KrawtchoukParams{n, 0.5 * (1.0 + std::tanh(theta))};
      out.map = {1.0, n * std::cosh(theta)};
      out.kind = SpectrumKind::DiscreteFinite;
      out.size = n;
      return out;
    }
    default: mismatch(kind, TraForm::A8a);
  }
}

Built build_a8b(const OdeParams& p, const BasisSpec& spec, FamilyKind kind) {
  const double nu = spec.nu;
  Built out;
  switch (kind) {
    case FamilyKind::ContinuousDualHahn: {
      const double tau = p.A_zero + 0.5 * (p.a * p.b + 1.0);
      const double half = 0.5 * (nu + 1.0);
      if (tau <= 0.0 && std::floor(tau) == tau)
        fail(ErrorCode::AmbiguousRegion, "tau is a nonpositive integer (threshold state)");
      out.family = ContinuousDualHahnParams{tau, half, half};
      out.map = {1.0, 0.25 * (1.0 - nu * nu)};
      if (tau > 0.0) {
        out.kind = SpectrumKind::Continuous;
      } else {
        out.kind = SpectrumKind::Mixed;
        out.size = last_below_zero(tau);
      }
      return out;
    }
    case FamilyKind::DualHahn: {
      unsigned n = 0;
      if (!negative_integer(nu, n) || n == 0)
        fail(ErrorCode::NoFamilyApplies, "dual Hahn needs nu = -N-1 with N >= 1");
      const double xx = 2.0 * p.A_zero + p.a * p.b;
      out.family = DualHahnParams{n, 0.5 * (xx - n - 1.0), 0.5 * (-xx - n - 1.0)};
      out.map = {-1.0, 0.5 * n + 0.25 * n * n};
      out.kind = SpectrumKind::DiscreteFinite;
      out.size = n;
      return out;
    }
    default: mismatch(kind, TraForm::A8b);
  }
}

Built build_b13a(const OdeParams& p, const BasisSpec& spec, FamilyKind kind) {
  const double ab1 = 0.25 * (p.a + p.b - 1.0) * (p.a + p.b - 1.0);
  const double xh = (p.A_zero - ab1) / p.A_one;
  Built out;
  switch (kind) {
    case FamilyKind::NewH: {
      if (!(std::abs(xh) < 1.0)) fail(ErrorCode::NoFamilyApplies, "NewH needs A1^2 > (A0 - (a+b-1)^2/4)^2");
      const double theta = std::acos(xh);
      out.family = NewHParams{spec.mu, spec.nu, theta, 0.0, -p.A_one * std::sin(theta)};
      out.map = {1.0, 0.0};
      out.kind = SpectrumKind::Continuous;
      return out;
    }
    case FamilyKind::NewG: {
      if (!(std::abs(xh) > 1.0)) fail(ErrorCode::NoFamilyApplies, "NewG needs A1^2 < (A0 - (a+b-1)^2/4)^2");
      const double sh = std::sqrt(xh * xh - 1.0);
      const double root = std::abs(xh) - sh;
      if (xh > 1.0) {
        out.family = NewGParams{spec.mu, spec.nu, root * root, 0.0, -p.A_one * sh};
        out.map = {1.0, 0.0};
      } else {
        out.family = NewGParams{spec.nu, spec.mu, root * root, 0.0, p.A_one * sh};
        out.map = {-1.0, 0.0};
      }
      out.kind = SpectrumKind::DiscreteInfinite;
      return out;
    }
    default: mismatch(kind, TraForm::B13a);
  }
}

Built build_b13c(const OdeParams& p, const BasisSpec& spec, FamilyKind kind) {
  const double mu = spec.mu, nu = spec.nu;
  const double ab = (p.a + p.b - 1.0) * (p.a + p.b - 1.0);
  Built out;
  switch (kind) {
    case FamilyKind::Wilson: {
      const double sigma = 0.5 * (nu + 1.0), gamma = 0.5 * (mu + 1.0);
      const double t4 = 4.0 * p.A_zero - ab;
      out.map = {-0.5, -0.25 * (mu + 1.0) * (mu + 1.0)};
      out.kind = SpectrumKind::Continuous;
      if (t4 >= 0.0) {
        const double tau = 0.5 * std::sqrt(t4);
        out.family = WilsonParams{cplx(sigma, tau), cplx(sigma, -tau), gamma, gamma};
      } else {
        const double tau = 0.5 * std::sqrt(-t4);
        out.family = WilsonParams{sigma - tau, sigma + tau, gamma, gamma};
        const double low = sigma - tau;
        if (low <= 0.0 && std::floor(low) == low)
          fail(ErrorCode::AmbiguousRegion, "sigma - |tau| is a nonpositive integer (threshold state)");
        if (low < 0.0) {
          out.kind = SpectrumKind::Mixed;
          out.size = last_below_zero(low);
        }
      }
      return out;
    }
    case FamilyKind::Racah: {
      unsigned n = 0;
      if (!negative_integer(mu, n) || n == 0)
        fail(ErrorCode::NoFamilyApplies, "Racah needs mu = -N-1 with N >= 1");
      const double d = ab - 4.0 * p.A_zero;
      if (d < 0.0) fail(ErrorCode::NoFamilyApplies, "Racah needs (a+b-1)^2 >= 4A0");
      const double r = std::sqrt(d);
      out.family = RacahParams{n, 0.5 * (mu + nu - r), 0.5 * (mu + nu + r), 0.0};
      out.map = {0.5, 0.25 * n * n};
      out.kind = SpectrumKind::DiscreteFinite;
      out.size = n;
      return out;
    }
    default: mismatch(kind, TraForm::B13c);
  }
}

FamilyKind auto_kind(const OdeParams& p, const BasisSpec& spec, TraForm form) {
  unsigned n = 0;
  switch (form) {
    case TraForm::A8a: {
      if (negative_integer(spec.nu, n)) return FamilyKind::Krawtchouk;
      const double x = 4.0 * p.A_plus - p.b * p.b;
      if (near(x, 0.0) || near(x, -1.0))
        fail(ErrorCode::AmbiguousRegion, "4A+ - b^2 sits on a region boundary");
      if (x > 0.0) return FamilyKind::MeixnerPollaczek;
      if (x < -1.0) return FamilyKind::Meixner;
      fail(ErrorCode::NoFamilyApplies, "b^2 - 1 < 4A+ < b^2 admits no family");
    }
    case TraForm::A8b:
      return negative_integer(spec.nu, n) ? FamilyKind::DualHahn : FamilyKind::ContinuousDualHahn;
    case TraForm::B13a: {
      const double ab1 = 0.25 * (p.a + p.b - 1.0) * (p.a + p.b - 1.0);
      const double xh = (p.A_zero - ab1) / p.A_one;
      if (near(std::abs(xh), 1.0))
        fail(ErrorCode::AmbiguousRegion, "A1^2 = (A0 - (a+b-1)^2/4)^2");
      return std::abs(xh) < 1.0 ? FamilyKind::NewH : FamilyKind::NewG;
    }
    case TraForm::B13b:
    case TraForm::B13c:
      return negative_integer(spec.mu, n) ? FamilyKind::Racah : FamilyKind::Wilson;
  }
  fail(ErrorCode::NoFamilyApplies, "unknown recursion form");
}

MatchResult finish(const OdeParams& params, const BasisSpec& spec, FamilyKind kind,
                   bool automatic) {
  MatchResult m;
  m.params = params;
  m.spec = spec;
  m.recursion = build(params, spec, 1);
  // B13b is matched through the exchange symmetry onto B13c
  OdeParams fp = params;
  BasisSpec fs = spec;
  if (m.recursion.form == TraForm::B13b) {
    const SwappedProblem sw = apply_B14(params, spec);
    fp = sw.params;
    fs = sw.spec;
  }
  if (automatic) kind = auto_kind(fp, fs, m.recursion.form);
  Built b;
  switch (m.recursion.form) {
    case TraForm::A8a: b = build_a8a(fp, fs, kind); break;
    case TraForm::A8b: b = build_a8b(fp, fs, kind); break;
    case TraForm::B13a: b = build_b13a(fp, fs, kind); break;
    case TraForm::B13b:
    case TraForm::B13c: b = build_b13c(fp, fs, kind); break;
  }
  m.family = b.family;
  m.map = b.map;
  m.spectrum_kind = b.kind;
  m.spectrum_size = b.size;
  m.family_variable = b.map.apply(m.recursion.variable);
  if (!admissible(b.family)) {
    if (kind != FamilyKind::DualHahn && kind != FamilyKind::Racah)
      fail(ErrorCode::NoFamilyApplies,
           std::string(family_name(kind)) + " parameters fall outside the admissible region");
    m.formal = true;
  }
  return m;
}

std::vector<double> sign_pattern(const TraRecursion& rec, const RecursionCoeffs& fam,
                                 const SpectralMap& map, std::size_t count) {
  std::vector<double> eps(count, 1.0);
  for (std::size_t n = 0; n + 1 < count; ++n) {
    const double tra_sign = rec.t_sign[n] * (map.scale < 0.0 ? -1.0 : 1.0);
    const double fam_sign = fam.t[n] < 0.0 ? -1.0 : 1.0;
    eps[n + 1] = eps[n] * tra_sign * fam_sign;
  }
  return eps;
}

double continuum_factor(const PolyFamily& family, double arg) {
  const WeightFunction w = weight(family);
  switch (kind_of(family)) {
    case FamilyKind::ContinuousDualHahn:
    case FamilyKind::Wilson:
      if (arg < 0.0) fail(ErrorCode::IndexOutOfSpectrum, "continuum needs y >= 0");
      return std::sqrt(w.density(std::sqrt(arg)));
    default: return std::sqrt(w.density(arg));
  }
}

std::vector<double> basis_norms(const BasisSpec& spec, std::size_t count) {
  std::vector<double> c(count);
  for (std::size_t n = 0; n < count; ++n) c[n] = basis_norm(spec, static_cast<unsigned>(n));
  return c;
}

}  // namespace

std::string_view spectrum_kind_name(SpectrumKind kind) noexcept {
  switch (kind) {
    case SpectrumKind::Continuous: return "continuous";
    case SpectrumKind::DiscreteInfinite: return "discrete_infinite";
    case SpectrumKind::DiscreteFinite: return "discrete_finite";
    case SpectrumKind::Mixed: return "mixed";
  }
  return "unknown";
}

MatchResult match_family(const OdeParams& params, Scenario scenario, const BasisChoice& choice) {
  return finish(params, resolve_basis(params, scenario, choice), FamilyKind::Wilson, true);
}

MatchResult match_as(const OdeParams& params, Scenario scenario, FamilyKind kind,
                     const BasisChoice& choice) {
  return finish(params, resolve_basis(params, scenario, choice), kind, false);
}

SeriesSolution assemble_solution(const MatchResult& match, Component component,
                                 const AssembleOptions& options) {
  if (match.formal)
    fail(ErrorCode::InvalidFamilyParams, "a formal match has no admissible weight to assemble");
  const FamilyKind kind = kind_of(match.family);
  const unsigned finite = finite_size(match.family);
  std::size_t count = finite > 0 ? finite + 1 : options.truncation;
  if (count == 0 || count > kMaxRecursionOrder + 1)
    fail(ErrorCode::InvalidArgument, "truncation must be in 1.." + std::to_string(kMaxRecursionOrder + 1));

  SeriesSolution sol;
  sol.spec = match.spec;
  sol.truncation = count;
  sol.twisted = kind == FamilyKind::Krawtchouk;
  sol.normalized = kind != FamilyKind::NewH && kind != FamilyKind::NewG;

  const TraRecursion rec = build(match.params, match.spec, count);
  std::vector<double> poly(count);
  const bool discrete_family = kind == FamilyKind::Meixner || finite > 0 || kind == FamilyKind::NewG;

  if (component.discrete) {
    const unsigned k = component.index;
    if (match.spectrum_kind == SpectrumKind::Continuous)
      fail(ErrorCode::IndexOutOfSpectrum, "the matched spectrum has no discrete part");
    if ((match.spectrum_kind == SpectrumKind::Mixed || finite > 0) && k > match.spectrum_size)
      fail(ErrorCode::IndexOutOfSpectrum,
           "index " + std::to_string(k) + " exceeds N = " + std::to_string(match.spectrum_size));
    sol.argument = k;
    if (kind != FamilyKind::NewG) {
      double natural = k;
      if (match.spectrum_kind == SpectrumKind::Mixed) {
        for (const Mass& m : mixed_masses(match.family))
          if (m.index == k) natural = m.argument;
      }
      const double expected = recursion_variable(match.family, natural);
      if (std::abs(expected - match.family_variable) > kIndexTol * std::max(1.0, std::abs(expected)))
        fail(ErrorCode::InvalidArgument, "the equation parameters do not sit at discrete point " +
                                             std::to_string(k));
    }
    if (kind == FamilyKind::NewG) {
      const PolySequence seq = run_recursion(family_coeffs(match.family, count), match.family_variable, count - 1);
      poly = seq.values;
    } else if (match.spectrum_kind == SpectrumKind::Mixed) {
      for (std::size_t n = 0; n < count; ++n)
        poly[n] = closed_form_at_mass(match.family, static_cast<unsigned>(n), k);
      sol.norm_factor = std::sqrt(mass_at(match.family, k));
    } else {
      for (std::size_t n = 0; n < count; ++n)
        poly[n] = closed_form(match.family, static_cast<unsigned>(n), double(k));
      sol.norm_factor = std::sqrt(mass_at(match.family, k));
    }
  } else {
    if (discrete_family)
      fail(ErrorCode::IndexOutOfSpectrum, "a discrete family needs a discrete index");
    sol.argument = match.family_variable;
    const RecursionCoeffs fc = family_coeffs(match.family, count);
    poly = run_recursion(fc, match.family_variable, count - 1).values;
    if (sol.normalized) sol.norm_factor = continuum_factor(match.family, match.family_variable);
  }

  std::vector<double> eps(count, 1.0);
  if (!sol.twisted) eps = sign_pattern(rec, family_coeffs(match.family, count), match.map, count);
  sol.f.resize(count);
  double biggest = 0.0;
  for (std::size_t n = 0; n < count; ++n) {
    sol.f[n] = sol.norm_factor * eps[n] * poly[n];
    if (!std::isfinite(sol.f[n])) fail(ErrorCode::NumericalOverflow, "expansion coefficient");
    biggest = std::max(biggest, std::abs(sol.f[n]));
  }
  sol.tail_ratio = biggest > 0.0 ? std::abs(sol.f.back()) / biggest : 0.0;
  if (finite == 0 && options.check_tail && sol.tail_ratio > kTailTolerance)
    fail(ErrorCode::TruncationTooSmall,
         "tail |f_n| / max|f| = " + std::to_string(sol.tail_ratio) + " at n = " +
             std::to_string(count - 1));
  if (!sol.twisted) sol.basis_norms = basis_norms(match.spec, count);
  return sol;
}

double evaluate(const SeriesSolution& sol, double x) {
  if (sol.twisted || sol.basis_norms.size() != sol.f.size())
    fail(ErrorCode::DomainError, "basis with a negative integer index cannot be evaluated");
  const BasisSpec& spec = sol.spec;
  std::vector<double> poly;
  double envelope = 0.0;
  if (spec.kind == BasisKind::Laguerre) {
    if (!(x >= 0.0)) fail(ErrorCode::DomainError, "Laguerre basis needs x >= 0");
    poly = laguerre_sequence(spec.nu, x, sol.f.size());
    envelope = std::pow(x, spec.alpha) * std::exp(-spec.beta * x);
  } else {
    if (!(x >= -1.0 && x <= 1.0)) fail(ErrorCode::DomainError, "Jacobi basis needs -1 <= x <= 1");
    poly = jacobi_sequence(spec.mu, spec.nu, x, sol.f.size());
    envelope = std::pow(1.0 - x, spec.alpha) * std::pow(1.0 + x, spec.beta);
  }
  double y = 0.0;
  for (std::size_t n = 0; n < sol.f.size(); ++n) y += sol.f[n] * sol.basis_norms[n] * poly[n];
  return y * envelope;
}

std::vector<double> evaluate(const SeriesSolution& sol, std::span<const double> xs) {
  std::vector<double> out;
  out.reserve(xs.size());
  for (double x : xs) out.push_back(evaluate(sol, x));
  return out;
}

double ode_residual(const OdeParams& p, const SeriesSolution& sol, std::span<const double> xs) {
  validate(p);
  const bool laguerre = p.equation == Equation::Laguerre;
  for (double x : xs) {
    if (laguerre ? !(x >= kLaguerreMargin) : !(std::abs(x) <= kJacobiMargin))
      fail(ErrorCode::SingularPointTooClose, "x = " + std::to_string(x) + " is too close to a singular point");
  }
  if (std::all_of(sol.f.begin(), sol.f.end(), [](double v) { return v == 0.0; })) return 0.0;
  double worst = 0.0;
  for (double x : xs) {
    const double h = kResidualStep * (laguerre ? std::max(std::abs(x), 1.0) : 1.0);
    const auto y = [&](double t) { return evaluate(sol, t); };
    const double y0 = y(x);
    const auto d1 = [&](double s) { return (y(x + s) - y(x - s)) / (2.0 * s); };
    const auto d2 = [&](double s) { return (y(x + s) - 2.0 * y0 + y(x - s)) / (s * s); };
    const double dy = (4.0 * d1(0.5 * h) - d1(h)) / 3.0;
    const double ddy = (4.0 * d2(0.5 * h) - d2(h)) / 3.0;
    double lhs = 0.0;
    if (laguerre) {
      lhs = x * ddy + (p.a + p.b * x) * dy + (p.A_plus * x + p.A_minus / x) * y0;
    } else {
      lhs = (1.0 - x * x) * ddy - (p.a - p.b + x * (p.a + p.b)) * dy +
            (p.A_plus / (1.0 + x) + p.A_minus / (1.0 - x) + p.A_one * x) * y0;
    }
    worst = std::max(worst, std::abs(lhs - p.A_zero * y0) / std::max(1.0, std::abs(y0)));
  }
  return worst;
}

}  // namespace tra
