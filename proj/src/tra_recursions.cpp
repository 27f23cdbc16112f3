#include "tra/tra.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "tra/errors.hpp"

namespace tra {

namespace {

double signed_root(double square, Branch branch, const char* what) {
  if (square < 0.0) fail(ErrorCode::RealityViolation, std::string(what) + " is negative");
  const double r = std::sqrt(square);
  return branch == Branch::Plus ? r : -r;
}

bool close(double lhs, double rhs) {
  return std::abs(lhs - rhs) <= kConstraintTol * std::max({1.0, std::abs(lhs), std::abs(rhs)});
}

void require(bool ok, const std::string& what) {
  if (!ok) fail(ErrorCode::ScenarioMismatch, what);
}

bool is_laguerre_scenario(Scenario s) { return s == Scenario::A7a || s == Scenario::A7b; }

int sign_of(double v) { return v < 0.0 ? -1 : 1; }

double jacobi_d_sq(double mu, double nu, double n) {
  const double w = 2.0 * n + mu + nu;
  const double den = (w + 1.0) * (w + 3.0) * (w + 2.0) * (w + 2.0);
  if (den == 0.0) fail(ErrorCode::DegenerateDenominator, "Jacobi D_n");
  return 4.0 * (n + 1.0) * (n + mu + 1.0) * (n + nu + 1.0) * (n + mu + nu + 1.0) / den;
}

double ratio_or_zero(double num, double den, const char* what) {
  if (num == 0.0) return 0.0;
  if (den == 0.0) fail(ErrorCode::DegenerateDenominator, what);
  return num / den;
}

}  // namespace

void validate(const OdeParams& p) {
  for (double v : {p.a, p.b, p.A_plus, p.A_minus, p.A_zero, p.A_one})
    if (!std::isfinite(v)) fail(ErrorCode::InvalidArgument, "ODE parameters must be finite");
  if (p.equation == Equation::Laguerre && p.A_one != 0.0)
    fail(ErrorCode::InvalidArgument, "Laguerre-type equation has no A1 term");
}

std::string_view scenario_name(Scenario scenario) noexcept {
  switch (scenario) {
    case Scenario::A7a: return "A7a";
    case Scenario::A7b: return "A7b";
    case Scenario::B12a: return "B12a";
    case Scenario::B12b: return "B12b";
    case Scenario::B12c: return "B12c";
  }
  return "unknown";
}

std::string_view form_name(TraForm form) noexcept {
  switch (form) {
    case TraForm::A8a: return "A8a";
    case TraForm::A8b: return "A8b";
    case TraForm::B13a: return "B13a";
    case TraForm::B13b: return "B13b";
    case TraForm::B13c: return "B13c";
  }
  return "unknown";
}

BasisSpec resolve_basis(const OdeParams& p, Scenario scenario, const BasisChoice& choice) {
  validate(p);
  const bool laguerre = p.equation == Equation::Laguerre;
  if (laguerre != is_laguerre_scenario(scenario))
    fail(ErrorCode::ScenarioMismatch, "scenario does not belong to this equation type");
  BasisSpec spec;
  spec.kind = laguerre ? BasisKind::Laguerre : BasisKind::Jacobi;
  spec.scenario = scenario;
  const double a = p.a, b = p.b;
  switch (scenario) {
    case Scenario::A7a:
      spec.nu = signed_root((1.0 - a) * (1.0 - a) - 4.0 * p.A_minus, choice.nu_sign,
                            "(1-a)^2 - 4A-");
      spec.alpha = 0.5 * (spec.nu + 1.0 - a);
      spec.beta = 0.5 * (b + 1.0);
      break;
    case Scenario::A7b: {
      const double disc = 1.0 + 4.0 * p.A_plus;
      if (disc < 0.0) fail(ErrorCode::RealityViolation, "A7b needs A+ >= -1/4");
      spec.nu = choice.free_index;
      spec.alpha = 0.5 * (spec.nu + 2.0 - a);
      spec.beta = close(b * b, disc) ? 0.5 * (b + 1.0) : 0.5 * (1.0 + std::sqrt(disc));
      break;
    }
    case Scenario::B12a:
      spec.mu = signed_root((1.0 - a) * (1.0 - a) - 2.0 * p.A_minus, choice.mu_sign,
                            "(1-a)^2 - 2A-");
      spec.nu = signed_root((1.0 - b) * (1.0 - b) - 2.0 * p.A_plus, choice.nu_sign,
                            "(1-b)^2 - 2A+");
      spec.alpha = 0.5 * (spec.mu + 1.0 - a);
      spec.beta = 0.5 * (spec.nu + 1.0 - b);
      break;
    case Scenario::B12b:
      if (p.A_one != 0.0) fail(ErrorCode::ScenarioRequiresA1Zero, "B12b needs A1 = 0");
      spec.mu = signed_root((1.0 - a) * (1.0 - a) - 2.0 * p.A_minus, choice.mu_sign,
                            "(1-a)^2 - 2A-");
      spec.nu = choice.free_index;
      spec.alpha = 0.5 * (spec.mu + 1.0 - a);
      spec.beta = 0.5 * (spec.nu + 2.0 - b);
      break;
    case Scenario::B12c:
      if (p.A_one != 0.0) fail(ErrorCode::ScenarioRequiresA1Zero, "B12c needs A1 = 0");
      spec.nu = signed_root((1.0 - b) * (1.0 - b) - 2.0 * p.A_plus, choice.nu_sign,
                            "(1-b)^2 - 2A+");
      spec.mu = choice.free_index;
      spec.alpha = 0.5 * (spec.mu + 2.0 - a);
      spec.beta = 0.5 * (spec.nu + 1.0 - b);
      break;
  }
  return spec;
}

RecursionCoeffs TraRecursion::real_coeffs() const {
  RecursionCoeffs c;
  c.s = s;
  c.t.resize(t_sq.size());
  for (std::size_t n = 0; n < t_sq.size(); ++n) {
    if (t_sq[n] < 0.0)
      fail(ErrorCode::RealityViolation, "t_" + std::to_string(n) + "^2 < 0");
    c.t[n] = t_sign[n] * std::sqrt(t_sq[n]);
  }
  return c;
}

TraRecursion laguerre_st2r2(const OdeParams& p, const BasisSpec& spec, std::size_t count) {
  validate(p);
  require(p.equation == Equation::Laguerre && spec.kind == BasisKind::Laguerre,
          "Laguerre recursion needs a Laguerre equation and basis");
  const double a = p.a, b = p.b, nu = spec.nu;
  TraRecursion r;
  if (spec.scenario == Scenario::A7a) {
    require(close(2.0 * spec.alpha, nu + 1.0 - a) && close(2.0 * spec.beta, b + 1.0) &&
                close(nu * nu, (1.0 - a) * (1.0 - a) - 4.0 * p.A_minus),
            "basis violates A7a");
    const double g = p.A_plus - 0.25 * b * b + 0.25;
    const double h = p.A_plus - 0.25 * b * b - 0.25;
    if (std::abs(g) <= 1e-14 * std::max(1.0, std::abs(p.A_plus)))
      fail(ErrorCode::ZeroOffDiagonal, "A+ - b^2/4 + 1/4 = 0");
    r.form = TraForm::A8a;
    r.variable = (p.A_zero + 0.5 * a * b) / g;
    for (std::size_t i = 0; i < count; ++i) {
      const double n = double(i);
      r.s.push_back((2.0 * n + nu + 1.0) * h / g);
      r.t_sq.push_back((n + 1.0) * (n + nu + 1.0));
      r.t_sign.push_back(-1);
    }
    return r;
  }
  if (spec.scenario == Scenario::A7b) {
    require(close(2.0 * spec.alpha, nu + 2.0 - a) && close(2.0 * spec.beta, b + 1.0) &&
                close(b * b, 1.0 + 4.0 * p.A_plus),
            "basis violates A7b (needs b^2 = 1 + 4A+)");
    const double omega = p.A_zero + 0.5 * (nu + a * b + 1.0);
    r.form = TraForm::A8b;
    r.variable = p.A_minus + 0.25 * (nu * nu - 1.0) - 0.25 * (a - 1.0) * (a - 1.0);
    for (std::size_t i = 0; i < count; ++i) {
      const double n = double(i);
      const double k = n + omega + 0.5;
      r.s.push_back((2.0 * n + nu + 1.0) * (n + omega));
      r.t_sq.push_back(k * k * (n + 1.0) * (n + nu + 1.0));
      r.t_sign.push_back(-sign_of(k));
    }
    return r;
  }
  fail(ErrorCode::ScenarioMismatch, "Laguerre recursion needs scenario A7a or A7b");
}

TraRecursion jacobi_st2r2(const OdeParams& p, const BasisSpec& spec, std::size_t count) {
  validate(p);
  require(p.equation == Equation::Jacobi && spec.kind == BasisKind::Jacobi,
          "Jacobi recursion needs a Jacobi equation and basis");
  const double a = p.a, b = p.b, mu = spec.mu, nu = spec.nu;
  const double ab1 = 0.25 * (a + b - 1.0) * (a + b - 1.0);
  const auto energy = [&](double n) {
    const double w = 2.0 * n + mu + nu;
    return 0.25 * w * w - ab1 + p.A_zero;
  };
  const bool mu_fixed = close(mu * mu, (1.0 - a) * (1.0 - a) - 2.0 * p.A_minus);
  const bool nu_fixed = close(nu * nu, (1.0 - b) * (1.0 - b) - 2.0 * p.A_plus);
  TraRecursion r;
  switch (spec.scenario) {
    case Scenario::B12a: {
      require(close(2.0 * spec.alpha, mu + 1.0 - a) && close(2.0 * spec.beta, nu + 1.0 - b) &&
                  mu_fixed && nu_fixed,
              "basis violates B12a");
      if (p.A_one == 0.0) fail(ErrorCode::ZeroOffDiagonal, "B13a needs A1 != 0");
      r.form = TraForm::B13a;
      r.variable = (p.A_zero - ab1) / p.A_one;
      for (std::size_t i = 0; i < count; ++i) {
        const double n = double(i);
        const double m = n + 0.5 * (mu + nu + 1.0);
        r.s.push_back(jacobi_c(mu, nu, n) - m * m / p.A_one);
        r.t_sq.push_back(jacobi_d_sq(mu, nu, n));
        r.t_sign.push_back(1);
      }
      return r;
    }
    case Scenario::B12c:
    case Scenario::B12b: {
      if (p.A_one != 0.0) fail(ErrorCode::ScenarioRequiresA1Zero, "B13b/B13c need A1 = 0");
      const bool c_form = spec.scenario == Scenario::B12c;
      if (c_form)
        require(close(2.0 * spec.alpha, mu + 2.0 - a) && close(2.0 * spec.beta, nu + 1.0 - b) &&
                    nu_fixed,
                "basis violates B12c");
      else
        require(close(2.0 * spec.alpha, mu + 1.0 - a) && close(2.0 * spec.beta, nu + 2.0 - b) &&
                    mu_fixed,
                "basis violates B12b");
      r.form = c_form ? TraForm::B13c : TraForm::B13b;
      r.variable = c_form ? -(p.A_minus + 0.5 * (mu + 1.0) * (mu + 1.0) -
                              0.5 * (a - 1.0) * (a - 1.0))
                          : -(p.A_plus + 0.5 * (nu + 1.0) * (nu + 1.0) -
                              0.5 * (b - 1.0) * (b - 1.0));
      for (std::size_t i = 0; i < count; ++i) {
        const double n = double(i);
        const double e = energy(n + 1.0);
        const double cn = jacobi_c(mu, nu, n);
        const double lead =
            ratio_or_zero(2.0 * n * (n + (c_form ? nu : mu)), 2.0 * n + mu + nu, "2n + mu + nu");
        r.s.push_back(c_form ? lead + (cn - 1.0) * e : lead - (cn + 1.0) * e);
        r.t_sq.push_back(jacobi_d_sq(mu, nu, n) * e * e);
        r.t_sign.push_back(c_form ? sign_of(e) : -sign_of(e));
      }
      return r;
    }
    default: break;
  }
  fail(ErrorCode::ScenarioMismatch, "Jacobi recursion needs scenario B12a, B12b or B12c");
}

double compare_formal(const TraRecursion& rec, const FormalCoeffs& family, const SpectralMap& map) {
  const std::size_t n_max = std::min({rec.s.size(), family.s.size(), family.t_sq.size()});
  double worst = 0.0;
  for (std::size_t n = 0; n < n_max; ++n) {
    const double s = map.scale * rec.s[n] + map.offset;
    const double t2 = map.scale * map.scale * rec.t_sq[n];
    worst = std::max(worst, std::abs(s - family.s[n]) / std::max(1.0, std::abs(family.s[n])));
    worst = std::max(worst,
                     std::abs(t2 - family.t_sq[n]) / std::max(1.0, std::abs(family.t_sq[n])));
  }
  return worst;
}

double check_identity_52(double mu, double nu, double chi, unsigned n) {
  const double nd = n;
  const double w = 2.0 * nd + mu + nu;
  if (w + 1.0 == 0.0 || w + 2.0 == 0.0)
    fail(ErrorCode::DegenerateDenominator, "identity needs 2n+mu+nu+1, 2n+mu+nu+2 != 0");
  const double up = (w + 2.0) * (w + 2.0) + chi;
  double lhs = (nd + mu + 1.0) * (nd + mu + nu + 1.0) * up / ((w + 1.0) * (w + 2.0));
  double rhs = 0.5 * (1.0 + ratio_or_zero(mu * mu - nu * nu, w * (w + 2.0), "2n+mu+nu")) * up;
  if (n > 0) {
    if (w == 0.0) fail(ErrorCode::DegenerateDenominator, "2n+mu+nu = 0");
    lhs += nd * (nd + nu) * (w * w + chi) / (w * (w + 1.0));
    rhs -= 4.0 * nd * (nd + nu) / w;
  }
  return std::abs(lhs - rhs);
}

B11Residuals check_identities_B11(double mu, double nu, unsigned n) {
  if (n == 0) return {0.0, 0.0};
  const double nd = n;
  const double w = 2.0 * nd + mu + nu;
  if (w == 0.0 || w + 2.0 == 0.0) fail(ErrorCode::DegenerateDenominator, "2n+mu+nu");
  const double cn = jacobi_c(mu, nu, nd);
  const double common = 2.0 * nd * (nd + mu + nu + 1.0) / (w * (w + 2.0));
  const double rb = common * (mu - nu) - (2.0 * nd * (nd + mu) / w - nd * (cn + 1.0));
  const double rc = common * (nu - mu) - (2.0 * nd * (nd + nu) / w + nd * (cn - 1.0));
  return {std::abs(rb), std::abs(rc)};
}

SwappedProblem apply_B14(const OdeParams& params, const BasisSpec& spec) {
  if (params.equation != Equation::Jacobi || spec.kind != BasisKind::Jacobi)
    fail(ErrorCode::ScenarioMismatch, "the exchange symmetry applies to the Jacobi type only");
  SwappedProblem out{params, spec};
  std::swap(out.params.a, out.params.b);
  std::swap(out.params.A_plus, out.params.A_minus);
  out.params.A_one = -params.A_one;
  std::swap(out.spec.mu, out.spec.nu);
  std::swap(out.spec.alpha, out.spec.beta);
  if (spec.scenario == Scenario::B12b) out.spec.scenario = Scenario::B12c;
  else if (spec.scenario == Scenario::B12c) out.spec.scenario = Scenario::B12b;
  return out;
}

}  // namespace tra
