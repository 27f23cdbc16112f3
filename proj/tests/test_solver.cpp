#include <cmath>
#include <vector>

#include "doctest.h"
#include "oracles.hpp"
#include "tra/errors.hpp"
#include "tra/physics.hpp"
#include "tra/solver.hpp"

using namespace tra;

namespace {

PotentialCase make(CaseKind kind, double lambda, double p1, double p2 = 0.0, unsigned ell = 0) {
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

struct Draw {
  PotentialCase pc;
  double r_lo;
  double r_hi;
};

double residual(const Draw& d, std::size_t truncation) {
  const Wavefunction w = bound_wavefunction(d.pc, 0, {truncation, false});
  std::vector<double> xs;
  for (int i = 0; i < 25; ++i) xs.push_back(coordinate(d.pc, d.r_lo + (d.r_hi - d.r_lo) * i / 24.0));
  return ode_residual(w.match.params, w.series, xs);
}

}  // namespace

TEST_CASE("oscillator parameters match Meixner at the levels") {
  const PotentialCase pc = make(CaseKind::IsotropicOscillator, 1.2, 1.0, 0.0, 1);
  for (unsigned m = 0; m < 4; ++m) {
    const double E = pc.omega * (2 * m + pc.ell + 1.5);
    const MatchResult r = match_family(to_ode_params(pc, E), scenario_of(pc.kind), basis_choice(pc));
    CHECK(std::holds_alternative<MeixnerParams>(r.family));
    CHECK(r.family_variable == doctest::Approx(m));
  }
}

TEST_CASE("Morse below the bound-state threshold is purely continuous") {
  const PotentialCase pc = make(CaseKind::Morse, 1.0, 0.2);
  const MatchResult r = match_family(to_ode_params(pc, 0.3), Scenario::A7b, basis_choice(pc));
  const auto* cdh = std::get_if<ContinuousDualHahnParams>(&r.family);
  REQUIRE(cdh);
  CHECK(cdh->tau > 0.0);
  CHECK(r.spectrum_kind == SpectrumKind::Continuous);
}

TEST_CASE("NewH solutions are unnormalized") {
  const OdeParams p{Equation::Jacobi, 0.3, 0.6, -0.4, -0.2, 0.5, 1.7};
  const MatchResult m = match_family(p, Scenario::B12a);
  REQUIRE(std::holds_alternative<NewHParams>(m.family));
  const SeriesSolution s = assemble_solution(m, Component::continuum(), {40, false});
  CHECK_FALSE(s.normalized);
  CHECK(s.f.size() == 40);
}

TEST_CASE("Krawtchouk series is finite") {
  const OdeParams p{Equation::Laguerre, 0.0, 0.4, 0.6, -3.75, 0.7, 0.0};
  const MatchResult m = match_family(p, Scenario::A7a, {Branch::Plus, Branch::Minus});
  REQUIRE(std::holds_alternative<KrawtchoukParams>(m.family));
  CHECK(m.spectrum_size == 3);
  const double g = p.A_plus - 0.25 * p.b * p.b + 0.25;
  for (unsigned k = 0; k <= 3; ++k) {
    OdeParams at = p;
    const double target = recursion_variable(m.family, k);
    at.A_zero = (target - m.map.offset) / m.map.scale * g - 0.5 * p.a * p.b;
    const MatchResult mk = match_family(at, Scenario::A7a, {Branch::Plus, Branch::Minus});
    CHECK(mk.family_variable == doctest::Approx(target));
    CHECK(assemble_solution(mk, Component::bound(k), {60, true}).f.size() == 4);
  }
  CHECK_THROWS_AS(assemble_solution(m, Component::bound(4)), Error);
}

TEST_CASE("hydrogen ground state shape") {
  const PotentialCase pc = make(CaseKind::Coulomb, 1.0, 1.0);
  const Wavefunction w = bound_wavefunction(pc, 0);
  std::vector<double> got, want;
  for (int i = 1; i <= 60; ++i) {
    const double r = 0.25 * i;
    got.push_back(w(r));
    want.push_back(r * std::exp(-r));
  }
  CHECK(std::abs(oracle::correlation(got, want)) > 0.999);
}

TEST_CASE("the Coulomb basis scale 2 kappa is the Meixner boundary") {
  CHECK_THROWS_AS(bound_wavefunction(make(CaseKind::Coulomb, 2.0, 1.0), 0), Error);
}

TEST_CASE("oscillator ground state residual") {
  CHECK(residual({make(CaseKind::IsotropicOscillator, 1.4, 1.0), 0.5, 3.0}, 40) < 1e-6);
}

TEST_CASE("residual of a zero series is zero") {
  const Wavefunction w = bound_wavefunction(make(CaseKind::IsotropicOscillator, 1.4, 1.0), 0, {20, false});
  SeriesSolution s = w.series;
  std::fill(s.f.begin(), s.f.end(), 0.0);
  const double xs[] = {0.5, 1.0, 2.0};
  CHECK(ode_residual(w.match.params, s, xs) == 0.0);
}

TEST_CASE("residual convergence under truncation doubling") {
  const Draw draws[] = {
      {make(CaseKind::Coulomb, 0.3, 1.0), 0.2, 8.0},
      {make(CaseKind::Coulomb, 0.5, 2.0, 0.0, 1), 0.2, 6.0},
      {make(CaseKind::Coulomb, 0.2, 0.5), 0.4, 16.0},
      {make(CaseKind::IsotropicOscillator, 1.4, 1.0), 0.5, 3.0},
      {make(CaseKind::IsotropicOscillator, 1.2, 0.5, 0.0, 1), 0.5, 3.0},
      {make(CaseKind::IsotropicOscillator, 2.0, 2.0), 0.3, 2.0},
      {make(CaseKind::Morse, 1.0, 4.0), -2.5, 1.5},
      {make(CaseKind::Morse, 1.0, 6.0), -2.5, 1.5},
      {make(CaseKind::Morse, 1.5, 9.0), -1.5, 1.0},
      {make(CaseKind::PoschlTeller, 1.0, 2.0, -100.0), 0.3, 2.0},
      {make(CaseKind::PoschlTeller, 1.0, 3.0, -120.0), 0.3, 2.0},
      {make(CaseKind::PoschlTeller, 1.5, 2.0, -150.0), 0.2, 1.5},
      {make(CaseKind::Scarf, 1.0, 6.0, 2.0), 0.4, 2.7},
      {make(CaseKind::Scarf, 1.0, 7.0, 3.0), 0.4, 2.7},
      {make(CaseKind::Scarf, 1.0, 2.0, 6.0), 0.4, 2.7},
      {make(CaseKind::Eckart, 1.0, 2.0, -17.3), 0.2, 3.0},
      {make(CaseKind::Eckart, 1.0, 2.0, -25.0), 0.2, 3.0},
      {make(CaseKind::Eckart, 1.0, 3.0, -30.0), 0.2, 3.0},
  };
  for (const Draw& d : draws) {
    INFO(case_name(d.pc.kind) << " lambda=" << d.pc.lambda);
    const double r20 = residual(d, 20), r40 = residual(d, 40), r120 = residual(d, 120);
    const bool continuous_family = d.pc.kind != CaseKind::Coulomb && d.pc.kind != CaseKind::IsotropicOscillator;
    if (continuous_family) CHECK((r40 <= 0.1 * r20 || r40 < 1e-8));
    CHECK(r120 < 1e-5);
  }
}

TEST_CASE("bound-state norms stabilize") {
  for (const PotentialCase& pc : {make(CaseKind::Coulomb, 0.3, 1.0), make(CaseKind::Morse, 1.0, 4.0),
                                  make(CaseKind::PoschlTeller, 1.0, 2.0, -100.0),
                                  make(CaseKind::Eckart, 1.0, 2.0, -17.3)}) {
    const Wavefunction w = bound_wavefunction(pc, 0, {100, false});
    double s80 = 0.0, s100 = 0.0;
    for (std::size_t n = 0; n < w.series.f.size(); ++n) {
      const double f2 = w.series.f[n] * w.series.f[n];
      if (n < 80) s80 += f2;
      s100 += f2;
    }
    CHECK(std::abs(s100 - s80) < 1e-10);
  }
}

TEST_CASE("evaluation is order independent") {
  const Wavefunction w = bound_wavefunction(make(CaseKind::Morse, 1.0, 4.0), 0);
  const double xs[] = {0.3, 1.7, 0.9, 4.0};
  const std::vector<double> all = evaluate(w.series, xs);
  for (int i = 3; i >= 0; --i) CHECK(evaluate(w.series, xs[i]) == all[i]);
}
