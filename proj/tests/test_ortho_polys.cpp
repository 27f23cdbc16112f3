#include <cmath>
#include <numbers>

#include "doctest.h"
#include "oracles.hpp"
#include "tra/classical.hpp"
#include "tra/errors.hpp"
#include "tra/families.hpp"
#include "tra/recurrence.hpp"
#include "tra/verify.hpp"

using namespace tra;
using std::numbers::pi;

namespace {

double recursion_value(const PolyFamily& fam, unsigned n, double arg) {
  return run_recursion(family_coeffs(fam, n + 1), recursion_variable(fam, arg), n).values[n];
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

TEST_CASE("Meixner-Pollaczek first coefficients") {
  for (double nu : {0.0, 0.8, 3.0})
    for (double theta : {0.4, 1.2, 2.5}) {
      const RecursionCoeffs c = family_coeffs(MeixnerPollaczekParams{0.5 * (nu + 1), theta}, 1);
      CHECK(c.s[0] == doctest::Approx(-(nu + 1) * std::cos(theta) / (2 * std::sin(theta))));
      CHECK(c.t[0] == doctest::Approx(std::sqrt(nu + 1) / (2 * std::sin(theta))));
    }
}

TEST_CASE("Krawtchouk N=1 tau=1/2 diagonal") {
  const RecursionCoeffs c = family_coeffs(KrawtchoukParams{1, 0.5}, 1);
  CHECK(std::abs(c.s[0]) == doctest::Approx(1.0));
}

TEST_CASE("Wilson with equal parameters has positive off-diagonals") {
  for (double a : {0.2, 1.0, 3.5}) {
    const FormalCoeffs f = formal_coeffs(WilsonParams{a, a, a, a}, 11);
    for (unsigned n = 0; n <= 10; ++n) {
      CHECK(std::isfinite(f.s[n]));
      CHECK(f.t_sq[n] > 0.0);
    }
  }
}

TEST_CASE("closed forms of degree zero are one") {
  CHECK(closed_form(MeixnerPollaczekParams{0.7, 1.1}, 0, 0.3) == doctest::Approx(1.0));
  CHECK(closed_form(MeixnerParams{0.7, 0.3}, 0, 2.0) == doctest::Approx(1.0));
  CHECK(closed_form(KrawtchoukParams{5, 0.3}, 0, 2.0) == doctest::Approx(1.0));
  CHECK(closed_form(ContinuousDualHahnParams{0.5, 0.7, 0.9}, 0, 1.4) == doctest::Approx(1.0));
  CHECK(closed_form(DualHahnParams{6, 0.7, 1.6}, 0, 3.0) == doctest::Approx(1.0));
  CHECK(closed_form(WilsonParams{0.3, 0.4, 0.5, 0.6}, 0, 0.8) == doctest::Approx(1.0));
  CHECK(closed_form(RacahParams{6, 0.6, 0.9, 7.5}, 0, 2.0) == doctest::Approx(1.0));
}

TEST_CASE("closed form examples") {
  const PolyFamily meixner = MeixnerParams{0.5, 0.25};
  CHECK(closed_form(meixner, 1, 0.0) == doctest::Approx(recursion_value(meixner, 1, 0.0)));
  // sqrt(2) * (1/2 / 1/2)^(1/2) * 2F1(-1,-1;-2;2) = 0
  CHECK(std::abs(closed_form(KrawtchoukParams{2, 0.5}, 1, 1.0)) < 1e-14);
  const oracle::cplx two_f1 = oracle::hyp({-1.0, -1.0}, {-2.0}, 2.0, 1);
  CHECK(std::abs(two_f1) < 1e-15);
}

TEST_CASE("Meixner masses and orthonormality") {
  const double tau = 0.25;
  const WeightFunction w = weight(MeixnerParams{0.5, tau});
  REQUIRE(w.kind == WeightKind::Discrete);
  double total = 0.0;
  for (const Mass& m : w.masses) {
    CHECK(m.weight == doctest::Approx(0.75 * std::pow(tau, m.index)).epsilon(1e-12));
    total += m.weight;
  }
  CHECK(std::abs(total - 1.0) < 1e-8);

  // Masses from the generating binomial series, extended far into the tail.
  const double mu = 0.9, t = 0.4;
  for (unsigned n = 0; n <= 4; ++n)
    for (unsigned m = 0; m <= n; ++m) {
      double s = 0.0, rho = std::pow(1 - t, 2 * mu);
      for (unsigned k = 0; k < 400 && rho > 0.0; ++k) {
        s += rho * closed_form(MeixnerParams{mu, t}, n, k) * closed_form(MeixnerParams{mu, t}, m, k);
        rho *= (2 * mu + k) / (k + 1.0) * t;
      }
      CHECK(std::abs(s - (n == m)) < 1e-10);
    }
}

TEST_CASE("Krawtchouk binomial masses and orthonormality") {
  const WeightFunction w = weight(KrawtchoukParams{3, 0.5});
  REQUIRE(w.masses.size() == 4);
  const double want[] = {1 / 8.0, 3 / 8.0, 3 / 8.0, 1 / 8.0};
  for (unsigned k = 0; k < 4; ++k) CHECK(w.masses[k].weight == doctest::Approx(want[k]));

  const unsigned N = 9;
  const double t = 0.35;
  const PolyFamily fam = KrawtchoukParams{N, t};
  for (unsigned n = 0; n <= 6; ++n)
    for (unsigned m = 0; m <= 6; ++m) {
      double s = 0.0;
      for (unsigned k = 0; k <= N; ++k) {
        const double rho = oracle::factorial(N) / (oracle::factorial(k) * oracle::factorial(N - k)) *
                           std::pow(t, k) * std::pow(1 - t, N - k);
        s += rho * closed_form(fam, n, k) * closed_form(fam, m, k);
      }
      CHECK(std::abs(s - (n == m)) < 1e-10);
    }
}

TEST_CASE("Meixner-Pollaczek density and orthonormality") {
  const PolyFamily fam = MeixnerPollaczekParams{0.5, pi / 2};
  const WeightFunction w = weight(fam);
  REQUIRE(w.kind == WeightKind::Continuous);
  for (double z : {-2.0, 0.0, 0.3, 4.0})
    CHECK(w.density(z) == doctest::Approx(1.0 / std::cosh(pi * z)).epsilon(1e-12));
  const auto rho = [](double z) { return 1.0 / std::cosh(pi * z); };
  CHECK(oracle::simpson(rho, -30, 30) == doctest::Approx(1.0).epsilon(1e-9));
  for (unsigned n = 0; n <= 6; ++n)
    for (unsigned m = 0; m <= n; ++m) {
      const double s = oracle::simpson(
          [&](double z) { return rho(z) * recursion_value(fam, n, z) * recursion_value(fam, m, z); }, -30,
          30, 6000);
      CHECK(std::abs(s - (n == m)) < 1e-6);
    }
}

TEST_CASE("Wilson values are real under the conjugate parametrization") {
  const PolyFamily fam = WilsonParams{{0.7, 0.9}, {0.7, -0.9}, 1.2, 1.2};
  const RecursionCoeffs c = family_coeffs(fam, 12);
  for (std::size_t n = 0; n < 12; ++n) {
    CHECK(std::isfinite(c.s[n]));
    CHECK(std::isfinite(c.t[n]));
  }
  for (double y : {0.3, 2.0, 7.5})
    for (unsigned n = 0; n <= 10; ++n) {
      const double rec = recursion_value(fam, n, y);
      CHECK(std::abs(closed_form(fam, n, y) - rec) <= 1e-10 * std::max(1.0, std::abs(rec)));
    }
}

TEST_CASE("recursion-only families refuse closed forms and weights") {
  const PolyFamily h = NewHParams{0.5, 1.5, 0.8, 0.25, 3.0};
  const PolyFamily g = NewGParams{0.5, 1.5, 0.3, 0.25, 3.0};
  CHECK(code_of([&] { closed_form(h, 2, 0.1); }) == ErrorCode::NoClosedForm);
  CHECK(code_of([&] { weight(h); }) == ErrorCode::NoClosedForm);
  CHECK(code_of([&] { closed_form(g, 2, 1.0); }) == ErrorCode::NoClosedForm);
  CHECK(family_coeffs(h, 5).size() == 5);
}

TEST_CASE("inadmissible records are rejected") {
  CHECK(code_of([] { validate(PolyFamily{MeixnerParams{0.5, 1.5}}); }) == ErrorCode::InvalidFamilyParams);
  CHECK(code_of([] { validate(PolyFamily{KrawtchoukParams{4, 1.2}}); }) == ErrorCode::InvalidFamilyParams);
  CHECK(code_of([] { validate(PolyFamily{MeixnerPollaczekParams{-0.5, 1.0}}); }) ==
        ErrorCode::InvalidFamilyParams);
}

TEST_CASE("Laguerre basis elements") {
  const BasisSpec spec{BasisKind::Laguerre, 1.0, 0.5, 0.0, 1.0, Scenario::A7a};
  CHECK(basis_element(spec, 0, 0.0) == 0.0);
  CHECK(basis_element(spec, 0, 1.0) == doctest::Approx(std::exp(-0.5)));

  const BasisSpec s2{BasisKind::Laguerre, 1.0, 0.5, 0.0, 2.0, Scenario::A7a};
  for (unsigned n = 0; n <= 4; ++n)
    for (unsigned m = 0; m <= 4; ++m) {
      const double v = oracle::simpson(
          [&](double x) {
            return basis_element(s2, n, x) * basis_element(s2, m, x) * std::pow(x, s2.nu - 2 * s2.alpha) *
                   std::exp((2 * s2.beta - 1) * x);
          },
          1e-12, 80.0);
      CHECK(std::abs(v - (n == m)) < 1e-8);
    }
}

TEST_CASE("Jacobi basis orthonormality") {
  const BasisSpec spec{BasisKind::Jacobi, 0.8, 1.1, 0.6, 1.2, Scenario::B12a};
  for (unsigned n = 0; n <= 4; ++n)
    for (unsigned m = 0; m <= n; ++m) {
      const double v = oracle::simpson(
          [&](double t) {
            const double x = -std::cos(t);
            if (t <= 0.0 || t >= pi) return 0.0;
            return basis_element(spec, n, x) * basis_element(spec, m, x) *
                   std::pow(1 - x, spec.mu - 2 * spec.alpha) * std::pow(1 + x, spec.nu - 2 * spec.beta) *
                   std::sin(t);
          },
          0.0, pi);
      CHECK(std::abs(v - (n == m)) < 1e-8);
    }
}

TEST_CASE("weights suite") {
  for (const Check& c : run_checks(Suite::Weights)) {
    INFO(c.name << " " << c.detail);
    CHECK(c.pass);
  }
}
