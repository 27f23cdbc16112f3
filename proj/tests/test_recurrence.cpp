#include <cmath>
#include <numbers>

#include "doctest.h"
#include "oracles.hpp"
#include "tra/classical.hpp"
#include "tra/errors.hpp"
#include "tra/families.hpp"
#include "tra/recurrence.hpp"

using namespace tra;

TEST_CASE("run_recursion degree zero is one") {
  RecursionCoeffs c{{0.3, -1.0}, {2.0, 0.5}};
  const PolySequence seq = run_recursion(c, 17.0, 0);
  REQUIRE(seq.values.size() == 1);
  CHECK(seq.values[0] == 1.0);
}

TEST_CASE("run_recursion first step") {
  RecursionCoeffs c{{0.0}, {1.0}};
  const PolySequence seq = run_recursion(c, 2.0, 1);
  REQUIRE(seq.values.size() == 2);
  CHECK(seq.values[1] == doctest::Approx(2.0));
}

TEST_CASE("run_recursion rejects zero and non-finite off-diagonals") {
  CHECK_THROWS_AS(run_recursion(RecursionCoeffs{{0.0, 0.0}, {0.0, 1.0}}, 1.0, 2), Error);
  CHECK_THROWS_AS(run_recursion(RecursionCoeffs{{0.0, 0.0}, {NAN, 1.0}}, 1.0, 2), Error);
  CHECK_THROWS_AS(run_recursion(RecursionCoeffs{{0.0}, {1.0}}, 1.0, 5), Error);
}

TEST_CASE("Meixner-Pollaczek recursion against the 2F1 sum") {
  const double theta = std::numbers::pi / 2, mu = 0.5, z = 0.7;
  const PolyFamily fam = MeixnerPollaczekParams{mu, theta};
  const PolySequence seq = run_recursion(family_coeffs(fam, 6), recursion_variable(fam, z), 5);
  const oracle::cplx i(0.0, 1.0);
  for (unsigned n = 0; n <= 5; ++n) {
    const oracle::cplx f = oracle::hyp({-double(n), mu + i * z}, {2.0 * mu},
                                       1.0 - std::exp(-2.0 * i * theta), n);
    const oracle::cplx want = std::sqrt(oracle::poch(2 * mu, n) / oracle::factorial(n)) *
                              std::exp(i * (n * theta)) * f;
    CHECK(std::abs(want.imag()) < 1e-12);
    CHECK(std::abs(seq.values[n] - want.real()) <= 1e-12 * std::max(1.0, std::abs(want.real())));
  }
}

TEST_CASE("recursion is bit-reproducible") {
  const PolyFamily fam = WilsonParams{{0.6, 0.4}, {0.6, -0.4}, 0.8, 1.1};
  const RecursionCoeffs c = family_coeffs(fam, 20);
  const PolySequence a = run_recursion(c, 0.37, 19);
  const PolySequence b = run_recursion(c, 0.37, 19);
  CHECK(a.values == b.values);
}

TEST_CASE("Christoffel-Darboux residuals") {
  SUBCASE("one-term sum") {
    const PolyFamily fam = MeixnerParams{0.5, 0.25};
    const PolySequence seq = run_recursion(family_coeffs(fam, 2), 1.3, 1);
    CHECK(christoffel_darboux_check(seq, 1.3, 1e-4) < 1e-7);
  }
  SUBCASE("Meixner nu=0 tau=1/4 z=3 N=8") {
    const PolyFamily fam = MeixnerParams{0.5, 0.25};
    const double x = recursion_variable(fam, 3.0);
    const PolySequence seq = run_recursion(family_coeffs(fam, 9), x, 8);
    CHECK(christoffel_darboux_check(seq, x, 1e-5) < 1e-6);
  }
  SUBCASE("Wilson small parameters N=6") {
    const PolyFamily fam = WilsonParams{0.3, 0.4, 0.5, 0.6};
    const double x = recursion_variable(fam, 0.8);
    const PolySequence seq = run_recursion(family_coeffs(fam, 7), x, 6);
    CHECK(christoffel_darboux_check(seq, x, 1e-5) < 1e-6);
  }
  SUBCASE("h^2 scaling") {
    const PolyFamily fam = MeixnerPollaczekParams{0.9, 1.1};
    const PolySequence seq = run_recursion(family_coeffs(fam, 7), 0.4, 6);
    const double coarse = christoffel_darboux_check(seq, 0.4, 1e-2);
    const double fine = christoffel_darboux_check(seq, 0.4, 5e-3);
    CHECK(coarse > 1e-10);
    CHECK(fine / coarse == doctest::Approx(0.25).epsilon(0.05));
  }
}

TEST_CASE("classical polynomials") {
  CHECK(laguerre(0, 1.7, 3.0) == 1.0);
  CHECK(jacobi(0, 0.3, -0.2, 0.5) == 1.0);
  for (double nu : {0.0, 0.5, 2.0})
    for (double x : {0.0, 0.7, 4.0}) CHECK(laguerre(1, nu, x) == doctest::Approx(nu + 1 - x));
  for (double mu : {0.0, 1.5, -0.5}) CHECK(jacobi(1, mu, 0.7, 1.0) == doctest::Approx(mu + 1));
  // L_2^nu(x) = ((nu+1)(nu+2) - 2(nu+2)x + x^2)/2
  CHECK(laguerre(2, 0.5, 1.2) == doctest::Approx((1.5 * 2.5 - 2 * 2.5 * 1.2 + 1.44) / 2));
  // P_n^(mu,nu)(1) = (mu+1)_n / n!
  CHECK(jacobi(5, 0.4, 1.3, 1.0) == doctest::Approx(oracle::poch(1.4, 5) / 120.0));
}
