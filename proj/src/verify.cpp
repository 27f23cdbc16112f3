#include "tra/verify.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <functional>
#include <random>
#include <sstream>

#include "tra/errors.hpp"
#include "tra/physics.hpp"
#include "tra/quadrature.hpp"

namespace tra {

namespace {

constexpr double kPi = 3.14159265358979323846;

class Draw {
public:
  explicit Draw(std::uint64_t seed) : gen_(seed) {}

  double real(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(gen_); }
  unsigned integer(unsigned lo, unsigned hi) {
    return std::uniform_int_distribution<unsigned>(lo, hi)(gen_);
  }

private:
  std::mt19937_64 gen_;
};

struct Report {
  Suite suite;
  std::vector<Check>& out;

  void add(const std::string& name, double value, double tolerance, const std::string& detail = {}) {
    out.push_back({std::string(suite_name(suite)), name, value, tolerance,
                   std::isfinite(value) && value <= tolerance, detail});
  }
  void error(const std::string& name, double tolerance, const Error& e) {
    out.push_back({std::string(suite_name(suite)), name, INFINITY, tolerance, false,
                   std::string(error_name(e.code())) + ": " + e.what()});
  }
};

double rel(double got, double want) { return std::abs(got - want) / std::max(1.0, std::abs(want)); }

// -------- polynomials

struct Sample {
  PolyFamily family;
  double arg;
};

/// Random admissible record with an argument in its support, by rejection.
Sample draw_family(FamilyKind kind, Draw& d) {
  for (;;) {
    Sample s{MeixnerPollaczekParams{1.0, 1.0}, 0.0};
    switch (kind) {
      case FamilyKind::MeixnerPollaczek:
        s = {MeixnerPollaczekParams{d.real(0.1, 3.0), d.real(0.1, kPi - 0.1)}, d.real(-3.0, 3.0)};
        break;
      case FamilyKind::Meixner:
        s = {MeixnerParams{d.real(0.1, 3.0), d.real(0.05, 0.9)}, double(d.integer(0, 15))};
        break;
      case FamilyKind::Krawtchouk: {
        const unsigned n = d.integer(10, 20);
        s = {KrawtchoukParams{n, d.real(0.05, 0.95)}, double(d.integer(0, n))};
        break;
      }
      case FamilyKind::ContinuousDualHahn:
        s = {ContinuousDualHahnParams{d.real(0.1, 2.0), d.real(0.1, 2.0), d.real(0.1, 2.0)},
             std::pow(d.real(0.0, 3.0), 2)};
        break;
      case FamilyKind::DualHahn: {
        const unsigned n = d.integer(10, 20);
        s = {DualHahnParams{n, d.real(-0.9, 3.0), d.real(-0.9, 3.0)}, double(d.integer(0, n))};
        break;
      }
      case FamilyKind::Wilson: {
        const double sigma = d.real(0.1, 1.5), tau = d.real(0.0, 1.5);
        s = {WilsonParams{cplx(sigma, tau), cplx(sigma, -tau), d.real(0.1, 1.5), d.real(0.1, 1.5)},
             std::pow(d.real(0.0, 3.0), 2)};
        break;
      }
      case FamilyKind::Racah: {
        const unsigned n = d.integer(10, 16);
        const double alpha = d.real(0.1, 3.0);
        s = {RacahParams{n, alpha, d.real(0.1, 3.0), alpha + n + d.real(0.5, 5.0)},
             double(d.integer(0, n))};
        break;
      }
      default: fail(ErrorCode::NoClosedForm, "family has no closed form");
    }
    try {
      validate(s.family);
      return s;
    } catch (const Error& e) {
      if (e.code() != ErrorCode::InvalidFamilyParams) throw;
    }
  }
}

constexpr FamilyKind kClosedForm[] = {
    FamilyKind::MeixnerPollaczek, FamilyKind::Meixner, FamilyKind::Krawtchouk,
    FamilyKind::ContinuousDualHahn, FamilyKind::DualHahn, FamilyKind::Wilson, FamilyKind::Racah,
};

void polynomials(Report& r, const VerifyOptions& o) {
  Draw d(o.seed);
  for (FamilyKind kind : kClosedForm) {
    const std::string name = "recursion_vs_closed_form/" + std::string(family_name(kind));
    try {
      double worst = 0.0;
      for (unsigned i = 0; i < o.draws; ++i) {
        const Sample s = draw_family(kind, d);
        const PolySequence seq =
            run_recursion(family_coeffs(s.family, 11), recursion_variable(s.family, s.arg), 10);
        for (unsigned n = 0; n <= 10; ++n)
          worst = std::max(worst, rel(seq.values[n], closed_form(s.family, n, s.arg)));
      }
      r.add(name, worst, 1e-10, std::to_string(o.draws) + " draws, n <= 10");
    } catch (const Error& e) {
      r.error(name, 1e-10, e);
    }
  }
}

// -------- weights

std::vector<double> values_at(const PolyFamily& f, double arg, unsigned n_max) {
  return run_recursion(family_coeffs(f, n_max + 1), recursion_variable(f, arg), n_max).values;
}

/// Meixner masses continued past the stored truncation until k^12 rho(k) is negligible.
std::vector<Mass> extended_meixner(const MeixnerParams& p, std::vector<Mass> masses) {
  double term = masses.back().weight;
  for (unsigned k = masses.back().index; k < 100000; ++k) {
    term *= (k + 2.0 * p.mu) * p.tau / (k + 1.0);
    if (term * std::pow(k + 1.0, 12) < 1e-20) break;
    masses.push_back({k + 1, k + 1.0, term});
  }
  return masses;
}

void discrete_family(Report& r, const std::string& label, const PolyFamily& f, double sum_tol) {
  try {
    WeightFunction w = weight(f);
    double total = 0.0;
    for (const Mass& m : w.masses) total += m.weight;
    r.add("mass_sum/" + label, std::abs(total - 1.0), sum_tol);
    if (const auto* m = std::get_if<MeixnerParams>(&f)) w.masses = extended_meixner(*m, w.masses);
    const unsigned n_max = std::min(6u, finite_size(f) > 0 ? finite_size(f) : 6u);
    std::vector<std::vector<double>> p;
    for (const Mass& m : w.masses) p.push_back(values_at(f, m.argument, n_max));
    double worst = 0.0;
    for (unsigned n = 0; n <= n_max; ++n)
      for (unsigned m = 0; m <= n_max; ++m) {
        double s = 0.0;
        for (std::size_t k = 0; k < w.masses.size(); ++k) s += w.masses[k].weight * p[k][n] * p[k][m];
        worst = std::max(worst, std::abs(s - (n == m ? 1.0 : 0.0)));
      }
    r.add("orthonormality/" + label, worst, 1e-10, "n, m <= " + std::to_string(n_max));
  } catch (const Error& e) {
    r.error("weights/" + label, sum_tol, e);
  }
}

void continuous_family(Report& r, const std::string& label, const PolyFamily& f, bool squared) {
  try {
    const WeightFunction w = weight(f);
    const auto arg = [squared](double x) { return squared ? x * x : x; };
    const QuadratureResult total = integrate(w.density, w.support_lo, w.support_hi);
    double masses = 0.0;
    for (const Mass& m : w.masses) masses += m.weight;
    r.add("density_integral/" + label, std::abs(total.value + masses - 1.0), 1e-7);
    constexpr unsigned n_max = 6;
    double worst = 0.0;
    for (unsigned n = 0; n <= n_max; ++n)
      for (unsigned m = n; m <= n_max; ++m) {
        const auto g = [&](double x) {
          const std::vector<double> v = values_at(f, arg(x), n_max);
          return w.density(x) * v[n] * v[m];
        };
        double s = integrate(g, w.support_lo, w.support_hi, 1e-11).value;
        for (const Mass& mass : w.masses) {
          const std::vector<double> v = values_at(f, mass.argument, n_max);
          s += mass.weight * v[n] * v[m];
        }
        worst = std::max(worst, std::abs(s - (n == m ? 1.0 : 0.0)));
      }
    r.add("orthonormality/" + label, worst, 1e-6, "quadrature, n, m <= 6");
  } catch (const Error& e) {
    r.error("weights/" + label, 1e-6, e);
  }
}

void weights(Report& r) {
  discrete_family(r, "Krawtchouk", KrawtchoukParams{12, 0.35}, 1e-10);
  discrete_family(r, "DualHahn", DualHahnParams{10, 0.7, 1.6}, 1e-10);
  discrete_family(r, "Racah", RacahParams{12, 0.6, 0.9, 14.5}, 1e-10);
  discrete_family(r, "Meixner", MeixnerParams{0.8, 0.4}, 1e-8);
  continuous_family(r, "MeixnerPollaczek", MeixnerPollaczekParams{0.9, 1.2}, false);
  continuous_family(r, "ContinuousDualHahn", ContinuousDualHahnParams{0.7, 0.9, 1.3}, true);
  continuous_family(r, "Wilson", WilsonParams{cplx(0.6, 0.4), cplx(0.6, -0.4), 0.8, 1.1}, true);
  continuous_family(r, "ContinuousDualHahn_mixed", ContinuousDualHahnParams{-1.5, 1.15, 1.15}, true);
}

// -------- tra

struct Pairing {
  const char* label;
  OdeParams params;
  Scenario scenario;
  FamilyKind kind;
  BasisChoice choice;
};

TraRecursion build(const MatchResult& m, std::size_t count) {
  return m.params.equation == Equation::Laguerre ? laguerre_st2r2(m.params, m.spec, count)
                                                  : jacobi_st2r2(m.params, m.spec, count);
}

void tra_suite(Report& r, const VerifyOptions& o) {
  const OdeParams lag{Equation::Laguerre, 0.2, 0.4, 0.6, -0.5, 0.7, 0.0};
  OdeParams meixner = lag;
  meixner.A_plus = -1.0;
  const OdeParams kraw{Equation::Laguerre, 0.0, 0.4, 0.6, -8.75, 0.7, 0.0};
  const OdeParams morse_like{Equation::Laguerre, 1.0, 0.6, -0.16, 0.3, 0.5, 0.0};
  const OdeParams jac{Equation::Jacobi, 0.3, 0.6, -0.4, -0.2, 0.5, 1.7};
  OdeParams jac0 = jac;
  jac0.A_one = 0.0;
  OdeParams racah = jac0;
  racah.A_zero = -1.0;
  const Pairing pairings[] = {
      {"A8a/MeixnerPollaczek", lag, Scenario::A7a, FamilyKind::MeixnerPollaczek, {}},
      {"A8a/Meixner", meixner, Scenario::A7a, FamilyKind::Meixner, {}},
      {"A8a/Krawtchouk", kraw, Scenario::A7a, FamilyKind::Krawtchouk, {Branch::Plus, Branch::Minus, 1.3}},
      {"A8b/ContinuousDualHahn", morse_like, Scenario::A7b, FamilyKind::ContinuousDualHahn, {}},
      {"A8b/DualHahn", morse_like, Scenario::A7b, FamilyKind::DualHahn, {Branch::Plus, Branch::Plus, -6.0}},
      {"B13a/NewH", jac, Scenario::B12a, FamilyKind::NewH, {}},
      {"B13c/Wilson", jac0, Scenario::B12c, FamilyKind::Wilson, {}},
      {"B13c/Racah", racah, Scenario::B12c, FamilyKind::Racah, {Branch::Plus, Branch::Plus, -6.0}},
  };
  for (const Pairing& p : pairings) {
    const std::string name = std::string("coefficients/") + p.label;
    try {
      const MatchResult m = match_as(p.params, p.scenario, p.kind, p.choice);
      const double dev = compare_formal(build(m, 16), formal_coeffs(m.family, 16), m.map);
      r.add(name, dev, 1e-10, m.formal ? "n <= 15, formal record" : "n <= 15");
    } catch (const Error& e) {
      r.error(name, 1e-10, e);
    }
  }

  Draw d(o.seed + 1);
  double worst = 0.0;
  unsigned used = 0;
  while (used < 1000) {
    const double mu = d.real(-5.0, 5.0), nu = d.real(-5.0, 5.0), chi = d.real(-50.0, 50.0);
    const unsigned n = d.integer(0, 20);
    try {
      worst = std::max(worst, check_identity_52(mu, nu, chi, n));
      ++used;
    } catch (const Error& e) {
      if (e.code() != ErrorCode::DegenerateDenominator) throw;
    }
  }
  r.add("identity_52", worst, 1e-11, "1000 draws");

  try {
    const BasisSpec spec = resolve_basis(jac0, Scenario::B12b);
    const TraRecursion b = jacobi_st2r2(jac0, spec, 11);
    const SwappedProblem sw = apply_B14(jac0, spec);
    const TraRecursion c = jacobi_st2r2(sw.params, sw.spec, 11);
    double dev = rel(b.variable, c.variable);
    for (std::size_t n = 0; n < 11; ++n) {
      dev = std::max({dev, rel(b.s[n], c.s[n]), rel(b.t_sq[n], c.t_sq[n])});
      if (b.t_sign[n] != -c.t_sign[n]) dev = INFINITY;
    }
    const SwappedProblem back = apply_B14(sw.params, sw.spec);
    const bool involution = back.params.A_plus == jac0.A_plus && back.params.a == jac0.a &&
                            back.spec.mu == spec.mu && back.spec.alpha == spec.alpha &&
                            back.spec.scenario == spec.scenario;
    if (!involution) dev = INFINITY;
    r.add("B14_symmetry", dev, 1e-10, "B13b vs B13c(B14), n <= 10, twisted t_n");
  } catch (const Error& e) {
    r.error("B14_symmetry", 1e-10, e);
  }
}

// -------- physics

PotentialCase make(CaseKind kind, double lambda, double p1, double p2, unsigned ell = 0) {
  PotentialCase pc;
  pc.kind = kind;
  pc.lambda = lambda;
  pc.ell = ell;
  switch (kind) {
    case CaseKind::Coulomb: pc.Z = p1; break;
    case CaseKind::IsotropicOscillator: pc.omega = p1; break;
    case CaseKind::Morse: pc.V1 = p1; break;
    default: pc.A = p1; pc.B = p2; break;
  }
  return pc;
}

std::string describe(const PotentialCase& pc) {
  std::ostringstream s;
  s << case_name(pc.kind) << " lambda=" << pc.lambda;
  switch (pc.kind) {
    case CaseKind::Coulomb: s << " Z=" << pc.Z << " ell=" << pc.ell; break;
    case CaseKind::IsotropicOscillator: s << " omega=" << pc.omega << " ell=" << pc.ell; break;
    case CaseKind::Morse: s << " V1=" << pc.V1; break;
    default: s << " A=" << pc.A << " B=" << pc.B; break;
  }
  return s.str();
}

void spectrum_vs_oracle(Report& r, const PotentialCase& pc) {
  const std::string name = "spectrum_vs_fd/" + describe(pc);
  try {
    const BoundSpectrum bs = bound_spectrum(pc, {2});
    const unsigned levels = std::min<unsigned>(3, bs.levels.size());
    FdOptions fo;
    fo.levels = levels;
    const std::vector<double> fd = fd_oracle(pc, default_mesh(pc), fo);
    double worst = 0.0;
    for (unsigned k = 0; k < levels; ++k) {
      const double e = bs.levels[k].energy;
      const double diff = std::abs(fd[k] - e);
      // near-zero levels are judged on the absolute scale
      worst = std::max(worst, std::abs(e) < 0.1 ? diff * 10.0 : diff / std::abs(e));
    }
    r.add(name, worst, 1e-3, std::to_string(levels) + " levels");
  } catch (const Error& e) {
    r.error(name, 1e-3, e);
  }
}

void phase_consistency(Report& r, const PotentialCase& pc, double energy) {
  const std::string name = "phase_vs_family/" + describe(pc);
  try {
    const Wavefunction w = scattering_wavefunction(pc, energy, {kDefaultTruncation, false});
    const double a = phase_shift(pc, energy), b = family_phase(w.match);
    r.add(name, std::abs(wrap_angle(a - b)), 1e-10, "E=" + std::to_string(energy));
  } catch (const Error& e) {
    r.error(name, 1e-10, e);
  }
}

void physics(Report& r) {
  const PotentialCase draws[] = {
      make(CaseKind::Coulomb, 1.0, 1.0, 0.0, 0),
      make(CaseKind::Coulomb, 1.0, 2.0, 0.0, 1),
      make(CaseKind::IsotropicOscillator, 1.0, 1.0, 0.0, 0),
      make(CaseKind::IsotropicOscillator, 1.0, 0.5, 0.0, 2),
      make(CaseKind::Morse, 1.0, 1.0, 0.0),
      make(CaseKind::Morse, 1.5, 5.0, 0.0),
      make(CaseKind::PoschlTeller, 1.0, 2.0, -30.0),
      make(CaseKind::PoschlTeller, 1.0, 3.0, -50.0),
      make(CaseKind::Scarf, 1.0, 3.0, 1.0),
      make(CaseKind::Scarf, 1.0, 1.0, 3.0),
      make(CaseKind::Eckart, 1.0, 2.0, -17.3),
      make(CaseKind::Eckart, 1.0, 1.5, -30.6),
  };
  for (const PotentialCase& pc : draws) spectrum_vs_oracle(r, pc);
  phase_consistency(r, make(CaseKind::Coulomb, 1.0, 1.0, 0.0, 1), 0.5);
  phase_consistency(r, make(CaseKind::PoschlTeller, 1.0, 2.0, -30.0), 0.7);
  phase_consistency(r, make(CaseKind::Eckart, 1.0, 2.0, -17.3), 0.7);
}

// -------- residual

struct ResidualCase {
  PotentialCase pc;
  unsigned m;
  double r_lo;
  double r_hi;
};

void residuals(Report& r) {
  const ResidualCase cases[] = {
      {make(CaseKind::Coulomb, 0.3, 1.0, 0.0, 0), 0, 0.2, 8.0},
      {make(CaseKind::IsotropicOscillator, 1.4, 1.0, 0.0, 0), 0, 0.5, 3.0},
      {make(CaseKind::Morse, 1.0, 4.0, 0.0), 0, -2.5, 1.5},
      {make(CaseKind::PoschlTeller, 1.0, 2.0, -100.0), 0, 0.3, 2.0},
      {make(CaseKind::Scarf, 1.0, 6.0, 2.0), 0, 0.4, 2.7},
      {make(CaseKind::Eckart, 1.0, 2.0, -17.3), 0, 0.2, 3.0},
  };
  for (const ResidualCase& c : cases) {
    const std::string name = "bound_state_residual/" + describe(c.pc);
    try {
      const Wavefunction w = bound_wavefunction(c.pc, c.m, {120, false});
      std::vector<double> xs;
      for (int i = 0; i < 25; ++i)
        xs.push_back(coordinate(w.pc, c.r_lo + (c.r_hi - c.r_lo) * i / 24.0));
      r.add(name, ode_residual(w.match.params, w.series, xs), 1e-5,
            std::string(family_name(kind_of(w.match.family))) + ", truncation " +
                std::to_string(w.series.truncation));
    } catch (const Error& e) {
      r.error(name, 1e-5, e);
    }
  }
}

// -------- NewH

void newh(Report& r) {
  const double mu = 0.5, nu = 1.5;
  try {
    const FormalCoeffs f = formal_coeffs(NewHParams{mu, nu, 0.8, 0.25, 1e8}, 11);
    double worst = 0.0;
    for (unsigned n = 0; n <= 10; ++n) {
      const double w = 2.0 * n + mu + nu;
      const double b = (nu * nu - mu * mu) / (w * (w + 2.0));
      const double up = 2.0 * (n + 1.0) * (n + mu + nu + 1.0) / ((w + 1.0) * (w + 2.0));
      const double down = 2.0 * (n + mu + 1.0) * (n + nu + 1.0) / ((w + 2.0) * (w + 3.0));
      worst = std::max({worst, rel(f.s[n], b), rel(f.t_sq[n], up * down)});
    }
    r.add("degeneration_to_jacobi", worst, 1e-6, "z = 1e8, n <= 10");
  } catch (const Error& e) {
    r.error("degeneration_to_jacobi", 1e-6, e);
  }
}

}  // namespace

std::string_view suite_name(Suite suite) noexcept {
  switch (suite) {
    case Suite::Polynomials: return "polynomials";
    case Suite::Weights: return "weights";
    case Suite::Tra: return "tra";
    case Suite::Physics: return "physics";
    case Suite::Residual: return "residual";
    case Suite::NewH: return "newh";
    case Suite::All: return "all";
  }
  return "unknown";
}

std::optional<Suite> parse_suite(std::string_view name) {
  std::string lower;
  for (char c : name) lower.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  for (Suite s : {Suite::Polynomials, Suite::Weights, Suite::Tra, Suite::Physics, Suite::Residual,
                  Suite::NewH, Suite::All})
    if (lower == suite_name(s)) return s;
  return std::nullopt;
}

std::vector<Check> run_checks(Suite suite, const VerifyOptions& options) {
  std::vector<Check> out;
  const auto run = [&](Suite s, const std::function<void(Report&)>& body) {
    if (suite != Suite::All && suite != s) return;
    Report r{s, out};
    body(r);
  };
  run(Suite::Polynomials, [&](Report& r) { polynomials(r, options); });
  run(Suite::Weights, [&](Report& r) { weights(r); });
  run(Suite::Tra, [&](Report& r) { tra_suite(r, options); });
  run(Suite::Physics, [&](Report& r) { physics(r); });
  run(Suite::Residual, [&](Report& r) { residuals(r); });
  run(Suite::NewH, [&](Report& r) { newh(r); });
  return out;
}

bool all_pass(const std::vector<Check>& checks) {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

}  // namespace tra
