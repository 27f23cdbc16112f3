#include <cmath>
#include <random>
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

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::InvalidArgument;
}

}  // namespace

TEST_CASE("ODE parameters of the cases") {
  const OdeParams c = to_ode_params(make(CaseKind::Coulomb, 1.0, 1.0), 0.5);
  CHECK(c.A_zero == doctest::Approx(2.0));
  CHECK(c.A_minus == doctest::Approx(0.0));
  CHECK(c.A_plus == doctest::Approx(1.0));
  const OdeParams o = to_ode_params(make(CaseKind::IsotropicOscillator, 1.0, 1.0), 1.5);
  CHECK(o.A_plus == doctest::Approx(-4.0));
  CHECK(o.A_minus == doctest::Approx(0.0));
  CHECK(o.A_zero == doctest::Approx(-3.0));
  const OdeParams e = to_ode_params(make(CaseKind::Eckart, 1.0, 1.0, 0.0), 0.0);
  CHECK(e.A_plus == doctest::Approx(0.0));
}

TEST_CASE("spectrum examples") {
  const BoundSpectrum h = bound_spectrum(make(CaseKind::Coulomb, 1.0, 1.0), {1});
  CHECK(h.infinite);
  CHECK(h.levels[0].energy == doctest::Approx(-0.5));
  CHECK(h.levels[1].energy == doctest::Approx(-0.125));
  const BoundSpectrum printed = bound_spectrum(make(CaseKind::Coulomb, 1.0, 1.0), {1, true});
  CHECK(printed.levels[1].energy == doctest::Approx(-0.25));

  const BoundSpectrum o = bound_spectrum(make(CaseKind::IsotropicOscillator, 1.0, 1.0), {1});
  CHECK(o.levels[0].energy == doctest::Approx(1.5));
  CHECK(o.levels[1].energy == doctest::Approx(3.5));

  const BoundSpectrum m = bound_spectrum(make(CaseKind::Morse, 1.0, 1.0));
  CHECK(m.size == 1);
  REQUIRE(m.levels.size() == 2);
  CHECK(m.levels[0].energy == doctest::Approx(-1.125));
  CHECK(m.levels[1].energy == doctest::Approx(-0.125));
}

TEST_CASE("Morse without bound states") {
  CHECK(code_of([] { bound_spectrum(make(CaseKind::Morse, 1.0, 0.25)); }) == ErrorCode::NoBoundStates);
  PotentialCase pc = make(CaseKind::Morse, 1.0, 2.0);
  pc.V2 = 0.3;
  CHECK(code_of([&] { bound_spectrum(pc); }) == ErrorCode::ScenarioMismatch);
}

TEST_CASE("Scarf levels on both sides of A = B") {
  for (auto [A, B] : {std::pair{3.0, 1.0}, std::pair{1.0, 3.0}, std::pair{6.0, 2.0}, std::pair{2.5, 4.5}}) {
    const double l = 1.3;
    const BoundSpectrum s = bound_spectrum(make(CaseKind::Scarf, l, A, B), {5});
    for (unsigned k = 0; k <= 5; ++k) {
      const double v = A > B ? k + A / l : k + 0.5 + B / l;
      CHECK(s.levels[k].energy == doctest::Approx(0.5 * l * l * v * v).epsilon(1e-12));
    }
  }
}

TEST_CASE("spectrum size rules") {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 20; ++i) {
    const double l = 0.5 + u(rng);
    const double V1 = l * l * (0.3 + 6 * u(rng));
    CHECK(bound_spectrum(make(CaseKind::Morse, l, V1)).size == unsigned(std::floor(2 * V1 / (l * l) - 0.5)));
  }
  for (int i = 0; i < 20; ++i) {
    const double l = 0.5 + u(rng), A = l * (0.6 + 3 * u(rng)), B = -l * (10 + 150 * u(rng));
    const double nu = A / l - 0.5;
    const double N = std::floor(0.5 * std::sqrt(0.25 - B / l) - 0.5 * (nu + 1));
    if (N < 0) continue;
    CHECK(bound_spectrum(make(CaseKind::PoschlTeller, l, A, B)).size == unsigned(N));
  }
  for (int i = 0; i < 20; ++i) {
    const double l = 0.5 + u(rng), A = l * (0.6 + 3 * u(rng)), B = -l * (5 + 60 * u(rng));
    const double sigma = 0.5 * (2 * A / l - 1 + 1);
    const double N = std::floor(std::sqrt(-B / l) - sigma);
    if (N < 0) continue;
    CHECK(bound_spectrum(make(CaseKind::Eckart, l, A, B)).size == unsigned(N));
  }
  CHECK(bound_spectrum(make(CaseKind::Scarf, 1.0, 2.0, 1.0)).infinite);
}

TEST_CASE("Coulomb levels do not depend on the basis scale") {
  const PotentialCase base = make(CaseKind::Coulomb, 1.0, -1.0);
  for (unsigned m = 0; m <= 2; ++m) {
    const double E = -0.5 / ((m + 1.0) * (m + 1.0));
    for (double l : {0.3, 0.45}) {
      PotentialCase pc = base;
      pc.lambda = l;
      const MatchResult r = match_family(to_ode_params(pc, E), Scenario::A7a, basis_choice(pc));
      CHECK(r.family_variable == doctest::Approx(recursion_variable(r.family, m)).epsilon(1e-10));
    }
  }
}

TEST_CASE("Coulomb phase shift") {
  const double d = phase_shift(make(CaseKind::Coulomb, 1.0, 1.0), 0.5);
  CHECK(d == doctest::Approx(oracle::arg_gamma({1.0, -1.0})).epsilon(1e-12));
  CHECK(std::abs(d - 0.30164) < 1e-4);
  for (unsigned ell : {0u, 1u, 3u})
    for (double E : {0.1, 0.7, 3.0}) {
      const double k = std::sqrt(2 * E);
      CHECK(phase_shift(make(CaseKind::Coulomb, 1.0, 1.7, 0.0, ell), E) ==
            doctest::Approx(oracle::arg_gamma({ell + 1.0, -1.7 / k})).epsilon(1e-11));
    }
  CHECK(std::abs(phase_shift(make(CaseKind::Coulomb, 1.0, 1e-9), 0.5)) < 1e-8);
}

TEST_CASE("phase shifts are real and continuous on energy grids") {
  for (const PotentialCase& pc : {make(CaseKind::Morse, 1.0, 0.0), make(CaseKind::Morse, 1.0, 2.0),
                                  make(CaseKind::PoschlTeller, 1.0, 2.0, -30.0),
                                  make(CaseKind::PoschlTeller, 1.0, 2.0, 3.0)}) {
    double prev = NAN;
    for (int i = 0; i < 50; ++i) {
      const double E = 0.05 + 0.04 * i;
      const double d = phase_shift(pc, E);
      CHECK(std::isfinite(d));
      if (i > 0) CHECK(std::abs(oracle::wrap(d - prev)) < 0.3);
      prev = d;
    }
  }
}

TEST_CASE("Morse phase shift formula") {
  const PotentialCase pc = make(CaseKind::Morse, 1.2, 2.0);
  for (double E : {0.2, 1.0, 4.0}) {
    const double z = std::sqrt(2 * E) / 1.2, tau = 0.5 - 2 * 2.0 / 1.44, nu = kDefaultFreeIndex;
    const double want = oracle::wrap(oracle::lgamma({0.0, 2 * z}).imag() - oracle::lgamma({tau, z}).imag() -
                                     2 * oracle::lgamma({0.5 * (nu + 1), z}).imag());
    CHECK(std::abs(oracle::wrap(phase_shift(pc, E) - want)) < 1e-11);
  }
}

TEST_CASE("phase shift outside the continuum") {
  CHECK(code_of([] { phase_shift(make(CaseKind::IsotropicOscillator, 1.0, 1.0), 2.0); }) ==
        ErrorCode::NoContinuum);
  CHECK(code_of([] { phase_shift(make(CaseKind::Coulomb, 1.0, 1.0), -0.2); }) == ErrorCode::BelowThreshold);
}

TEST_CASE("finite-difference oracle") {
  FdOptions one;
  one.levels = 1;
  CHECK(fd_oracle(make(CaseKind::Coulomb, 1.0, 1.0), {0.0, 80.0, 0.005}, one)[0] ==
        doctest::Approx(-0.5).epsilon(2e-4));
  const PotentialCase osc = make(CaseKind::IsotropicOscillator, 1.0, 1.0);
  CHECK(std::abs(fd_oracle(osc, default_mesh(osc), one)[0] - 1.5) < 1e-5);

  const double l = 1.0, A = 2 * l, B = -50.0;
  const PotentialCase pt = make(CaseKind::PoschlTeller, l, A, B);
  FdOptions three;
  three.levels = 3;
  const std::vector<double> fd = fd_oracle(pt, default_mesh(pt), three);
  const double nu = A / l - 0.5;
  for (unsigned m = 0; m < 3; ++m) {
    const double v = 2 * m + nu + 1 - std::sqrt(0.25 - B / l);
    CHECK(oracle::rel(fd[m], -0.25 * l * l * v * v) < 1e-4);
  }
}

TEST_CASE("bound spectra against the finite-difference oracle") {
  const PotentialCase draws[] = {
      make(CaseKind::Coulomb, 1.0, 1.0, 0.0, 1),  make(CaseKind::IsotropicOscillator, 1.0, 0.5, 0.0, 2),
      make(CaseKind::Morse, 1.0, 3.0),            make(CaseKind::Scarf, 1.0, 1.0, 3.0),
      make(CaseKind::Eckart, 1.0, 1.5, -30.6),
  };
  for (const PotentialCase& pc : draws) {
    INFO(case_name(pc.kind));
    const BoundSpectrum bs = bound_spectrum(pc, {2});
    FdOptions o;
    o.levels = std::min<unsigned>(3, bs.levels.size());
    const std::vector<double> fd = fd_oracle(pc, default_mesh(pc), o);
    for (unsigned k = 0; k < o.levels; ++k) {
      const double e = bs.levels[k].energy;
      CHECK((oracle::rel(fd[k], e) < 1e-3 || std::abs(fd[k] - e) < 1e-4));
    }
  }
}
