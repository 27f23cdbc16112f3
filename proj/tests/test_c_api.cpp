#include <cmath>
#include <cstring>
#include <string>
#include <vector>

#include "doctest.h"
#include "oracles.hpp"
#include "tra/tra_c.h"

namespace {

tra_case* new_case(const char* name, std::initializer_list<std::pair<const char*, double>> kv) {
  tra_case* pc = nullptr;
  REQUIRE(tra_case_new(name, &pc) == TRA_OK);
  for (auto [k, v] : kv) REQUIRE(tra_case_set(pc, k, v) == TRA_OK);
  return pc;
}

}  // namespace

TEST_CASE("status names and argument errors") {
  CHECK(std::string(tra_status_name(TRA_OK)) == "OK");
  CHECK(std::string(tra_status_name(TRA_NO_BOUND_STATES)) == "NoBoundStates");
  CHECK(std::string(tra_status_name(TRA_BUFFER_TOO_SMALL)) == "BufferTooSmall");
  CHECK(tra_case_new(nullptr, nullptr) == TRA_NULL_POINTER);
  tra_case* pc = nullptr;
  CHECK(tra_case_new("bogus", &pc) == TRA_INVALID_ARGUMENT);
  CHECK(pc == nullptr);
  CHECK(std::strlen(tra_last_error()) > 0);
  REQUIRE(tra_case_new("Coulomb", &pc) == TRA_OK);
  CHECK(tra_case_set(pc, "nonsense", 1.0) == TRA_INVALID_ARGUMENT);
  CHECK(tra_case_set(pc, "ell", 0.5) == TRA_INVALID_ARGUMENT);
  CHECK(tra_case_set(pc, "Z", NAN) == TRA_INVALID_ARGUMENT);
  tra_case_free(pc);
  tra_case_free(nullptr);
}

TEST_CASE("spectrum through the C API") {
  tra_case* pc = new_case("coulomb", {{"Z", 1.0}, {"ell", 1.0}});
  double e[4];
  size_t count = 0;
  int infinite = 0;
  REQUIRE(tra_bound_spectrum(pc, 3, 0, e, 4, &count, &infinite) == TRA_OK);
  CHECK(count == 4);
  CHECK(infinite == 1);
  for (unsigned m = 0; m < 4; ++m) CHECK(e[m] == doctest::Approx(-0.5 / ((m + 2.0) * (m + 2.0))));
  CHECK(tra_bound_spectrum(pc, 3, 0, e, 2, &count, &infinite) == TRA_BUFFER_TOO_SMALL);
  CHECK(count == 4);
  double fd[2];
  REQUIRE(tra_fd_oracle(pc, 0, 0, 0, 2, fd) == TRA_OK);
  CHECK(oracle::rel(fd[0], -0.125) < 1e-3);
  double threshold = 1.0;
  REQUIRE(tra_continuum_threshold(pc, &threshold) == TRA_OK);
  CHECK(threshold == 0.0);
  tra_case_free(pc);

  tra_case* osc = new_case("oscillator", {{"omega", 1.0}});
  REQUIRE(tra_continuum_threshold(osc, &threshold) == TRA_OK);
  CHECK(std::isnan(threshold));
  tra_case_free(osc);

  tra_case* morse = new_case("morse", {{"lambda", 1.0}, {"V1", 0.25}});
  CHECK(tra_bound_spectrum(morse, 3, 0, e, 4, &count, &infinite) == TRA_NO_BOUND_STATES);
  CHECK(std::string(tra_last_error()).find("V1") != std::string::npos);
  tra_case_free(morse);
}

TEST_CASE("Scarf accepts the box size") {
  tra_case* pc = new_case("scarf", {{"L", 2.0}, {"A", 3.0}, {"B", 1.0}});
  double l = 0.0;
  REQUIRE(tra_case_get(pc, "lambda", &l) == TRA_OK);
  CHECK(l == doctest::Approx(M_PI / 2));
  tra_case_free(pc);
}

TEST_CASE("phase shift through the C API") {
  tra_case* pc = new_case("coulomb", {{"Z", 1.0}});
  double d = 0.0;
  REQUIRE(tra_phase_shift(pc, 0.5, &d) == TRA_OK);
  CHECK(std::abs(d - 0.30164) < 1e-4);
  CHECK(tra_phase_shift(pc, -1.0, &d) == TRA_BELOW_THRESHOLD);
  tra_case_free(pc);
}

TEST_CASE("families through the C API") {
  const char* keys[] = {"nu", "tau"};
  const double values[] = {0.0, 0.25};
  tra_family* f = nullptr;
  REQUIRE(tra_family_new("meixner", keys, values, 2, &f) == TRA_OK);
  double p[6];
  REQUIRE(tra_family_values(f, 3.0, 0, p) == TRA_OK);
  CHECK(p[0] == 1.0);
  REQUIRE(tra_family_values(f, 3.0, 5, p) == TRA_OK);
  for (unsigned n = 0; n <= 5; ++n) {
    double c = 0.0;
    REQUIRE(tra_family_closed_form(f, n, 3.0, &c) == TRA_OK);
    CHECK(c == doctest::Approx(p[n]).epsilon(1e-10));
  }
  tra_family_free(f);

  const char* bad[] = {"nu", "theta"};
  CHECK(tra_family_new("meixner", bad, values, 2, &f) == TRA_INVALID_ARGUMENT);

  const char* hk[] = {"mu", "nu", "theta", "sigma", "z"};
  const double hv[] = {0.5, 1.5, 0.8, 0.25, 4.0};
  REQUIRE(tra_family_new("NewH", hk, hv, 5, &f) == TRA_OK);
  double c = 0.0;
  CHECK(tra_family_closed_form(f, 2, 0.1, &c) == TRA_NO_CLOSED_FORM);
  tra_family_free(f);
}

TEST_CASE("matching raw Laguerre parameters") {
  const tra_ode_params p{TRA_LAGUERRE, 0.2, 0.4, 0.6, -0.5, 0.7, 0.0};
  tra_match* m = nullptr;
  REQUIRE(tra_match_new(&p, "A7a", TRA_PLUS, TRA_PLUS, NAN, &m) == TRA_OK);
  tra_match_info info;
  REQUIRE(tra_match_get_info(m, &info) == TRA_OK);
  CHECK(std::string(info.family) == "MeixnerPollaczek");
  CHECK(std::string(info.form) == "A8a");
  double theta = NAN;
  for (size_t i = 0; i < info.param_count; ++i) {
    const char* name = nullptr;
    double re = 0.0, im = 0.0;
    REQUIRE(tra_match_param(m, i, &name, &re, &im) == TRA_OK);
    if (std::string(name) == "theta") theta = re;
  }
  const double q = 4 * p.A_plus - p.b * p.b;
  CHECK(std::cos(theta) == doctest::Approx((q - 1) / (q + 1)));
  tra_match_free(m);
  CHECK(tra_match_as(&p, "A7a", "Wilson", TRA_PLUS, TRA_PLUS, NAN, &m) != TRA_OK);
  CHECK(tra_match_new(&p, "Z9", TRA_PLUS, TRA_PLUS, NAN, &m) == TRA_INVALID_ARGUMENT);
}

TEST_CASE("case basis and ODE parameters") {
  tra_case* pc = new_case("eckart", {{"A", 2.0}, {"B", -17.3}});
  const char* scenario = nullptr;
  int mu = -1, nu = -1;
  double fi = 0.0;
  REQUIRE(tra_case_basis(pc, &scenario, &mu, &nu, &fi) == TRA_OK);
  CHECK(std::string(scenario) == "B12c");
  tra_ode_params p;
  REQUIRE(tra_case_ode_params(pc, 0.7, &p) == TRA_OK);
  CHECK(p.equation == TRA_JACOBI);
  tra_case_free(pc);
}

TEST_CASE("wavefunctions through the C API") {
  tra_case* pc = new_case("morse", {{"lambda", 1.0}, {"V1", 4.0}});
  tra_wavefunction* wf = nullptr;
  REQUIRE(tra_wavefunction_bound(pc, 0, 120, 0, NAN, &wf) == TRA_OK);
  tra_wavefunction_info info;
  REQUIRE(tra_wavefunction_get_info(wf, &info) == TRA_OK);
  CHECK(info.energy == doctest::Approx(-0.5 * 7.5 * 7.5));
  CHECK(std::string(info.family) == "ContinuousDualHahn");
  std::vector<double> r;
  for (int i = 0; i < 25; ++i) r.push_back(-2.5 + 4.0 * i / 24);
  double res = 1.0;
  REQUIRE(tra_wavefunction_residual(wf, r.data(), r.size(), &res) == TRA_OK);
  CHECK(res < 1e-5);
  double psi = 0.0;
  REQUIRE(tra_wavefunction_eval(wf, 0.0, &psi) == TRA_OK);
  CHECK(std::isfinite(psi));
  tra_wavefunction_free(wf);
  CHECK(tra_wavefunction_bound(pc, 40, 60, 0, NAN, &wf) == TRA_INDEX_OUT_OF_SPECTRUM);
  tra_case_free(pc);
}

TEST_CASE("verification reports") {
  tra_report* r = nullptr;
  CHECK(tra_verify_run("nonsense", 1, 1, &r) == TRA_INVALID_ARGUMENT);
  REQUIRE(tra_verify_run("newh", 1, 1, &r) == TRA_OK);
  REQUIRE(tra_report_count(r) > 0);
  tra_check_row row;
  REQUIRE(tra_report_row(r, 0, &row) == TRA_OK);
  CHECK(std::string(row.suite) == "newh");
  CHECK(row.pass == 1);
  CHECK(tra_report_row(r, tra_report_count(r), &row) == TRA_INVALID_ARGUMENT);
  tra_report_free(r);
}
