#include "tra/families.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include "tra/errors.hpp"

namespace tra {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

constexpr double kPi = std::numbers::pi;
constexpr double kRealityTol = 1e-10;
constexpr std::size_t kMixedCheckDepth = 64;

[[noreturn]] void bad(const std::string& what) { fail(ErrorCode::InvalidFamilyParams, what); }

double checked(double v, const char* what) {
  if (!std::isfinite(v)) fail(ErrorCode::NumericalOverflow, what);
  return v;
}

double real_part(cplx v, const char* what) {
  if (std::abs(v.imag()) > kRealityTol * std::max(1.0, std::abs(v.real())))
    fail(ErrorCode::RealityViolation, what);
  return v.real();
}

/// (a)_n / n! for a > 0.
double rising_over_factorial(double a, unsigned n) {
  if (n <= 64) {
    double r = 1.0;
    for (unsigned j = 0; j < n; ++j) r *= (a + j) / (j + 1.0);
    return r;
  }
  return std::exp(log_gamma_signed(a + n).log_abs - log_gamma_signed(a).log_abs -
                  log_factorial(n));
}

cplx hyp(std::initializer_list<cplx> upper, std::initializer_list<cplx> lower, cplx x,
         unsigned terms, double* largest_term = nullptr) {
  return hypergeometric_sum(std::span<const cplx>(upper.begin(), upper.size()),
                            std::span<const cplx>(lower.begin(), lower.size()), x, terms,
                            largest_term);
}

// ---------- Wilson ----------

struct WilsonOrdered {
  std::array<cplx, 4> p;  // p[0] is the distinguished (possibly negative real) parameter
  bool mixed = false;
};

cplx wilson_sum(const std::array<cplx, 4>& p) { return p[0] + p[1] + p[2] + p[3]; }

cplx wilson_A(const std::array<cplx, 4>& p, double n) {
  const cplx s = wilson_sum(p);
  return (n + s - 1.0) * (n + p[0] + p[1]) * (n + p[0] + p[2]) * (n + p[0] + p[3]) /
         ((2.0 * n + s - 1.0) * (2.0 * n + s));
}

cplx wilson_C(const std::array<cplx, 4>& p, double n) {
  if (n == 0.0) return 0.0;
  const cplx s = wilson_sum(p);
  return n * (n + p[1] + p[2] - 1.0) * (n + p[1] + p[3] - 1.0) * (n + p[2] + p[3] - 1.0) /
         ((2.0 * n + s - 2.0) * (2.0 * n + s - 1.0));
}

bool has_partner(const std::array<cplx, 4>& p, std::size_t i) {
  if (p[i].imag() == 0.0) return true;
  for (std::size_t j = 0; j < 4; ++j)
    if (j != i && std::abs(p[j] - std::conj(p[i])) <= 1e-12 * std::max(1.0, std::abs(p[i])))
      return true;
  return false;
}

WilsonOrdered wilson_order(const WilsonParams& w) {
  WilsonOrdered o{{w.a, w.b, w.c, w.d}, false};
  for (std::size_t i = 0; i < 4; ++i)
    if (!has_partner(o.p, i)) bad("Wilson parameters must be real or conjugate pairs");
  int nonpositive = 0;
  std::size_t which = 0;
  for (std::size_t i = 0; i < 4; ++i)
    if (o.p[i].real() <= 0.0) {
      ++nonpositive;
      which = i;
    }
  if (nonpositive == 0) {
    for (std::size_t i = 0; i < 4; ++i)
      if (o.p[i].imag() == 0.0) {
        std::swap(o.p[0], o.p[i]);
        break;
      }
    return o;
  }
  if (nonpositive > 1 || o.p[which].imag() != 0.0 || o.p[which].real() == 0.0)
    bad("Wilson needs Re(a,b,c,d) > 0 or a single negative real parameter");
  std::swap(o.p[0], o.p[which]);
  o.mixed = true;
  return o;
}

double wilson_t_sq(const std::array<cplx, 4>& p, double n) {
  return real_part(wilson_A(p, n) * wilson_C(p, n + 1.0), "Wilson t^2 not real");
}

double wilson_s(const std::array<cplx, 4>& p, double n) {
  return real_part(wilson_A(p, n) + wilson_C(p, n) - p[0] * p[0], "Wilson s not real");
}

/// W_n / sqrt(h_n) as lead / sqrt(h_n) times the 4F3, with the prefactor built from
/// ratios of size O(1) so that it does not overflow at large n.
/// cancellation, when given, receives max |term| / |sum| of the 4F3.
double wilson_value(const std::array<cplx, 4>& p, unsigned n, cplx up1, cplx up2,
                    double* cancellation = nullptr) {
  if (cancellation) *cancellation = 1.0;
  if (n == 0) return 1.0;
  const cplx s = wilson_sum(p);
  cplx lead_phase = 1.0, h_phase = 1.0;
  double log_ratio = 0.0;  // log(|lead|^2 / |h_n|)
  const auto take = [](cplx v, cplx& phase, bool divide) {
    const double m = std::abs(v);
    if (m == 0.0) bad("Wilson normalization vanishes");
    phase *= divide ? std::conj(v) / m : v / m;
    return std::log(m);
  };
  for (unsigned j = 0; j < n; ++j) {
    const double jd = j;
    for (const cplx& v : {p[0] + p[1] + jd, p[0] + p[2] + jd, p[0] + p[3] + jd})
      log_ratio += take(v, lead_phase, false);
    for (const cplx& v : {p[1] + p[2] + jd, p[1] + p[3] + jd, p[2] + p[3] + jd})
      log_ratio -= take(v, h_phase, false);
    log_ratio += take(s - 1.0 + jd, h_phase, true);
    log_ratio -= std::log(jd + 1.0);
  }
  log_ratio -= take((s - 1.0) / (2.0 * n + s - 1.0), h_phase, false);
  h_phase *= lead_phase;
  if (std::abs(h_phase - 1.0) > 1e-8) bad("Wilson norm not positive");
  double largest = 0.0;
  const cplx f = hyp({-double(n), double(n) + s - 1.0, up1, up2},
                     {p[0] + p[1], p[0] + p[2], p[0] + p[3]}, 1.0, n, &largest);
  if (cancellation) *cancellation = std::abs(f) > 0.0 ? largest / std::abs(f) : INFINITY;
  return checked(real_part(lead_phase * f, "Wilson value not real") * std::exp(0.5 * log_ratio),
                 "Wilson value");
}

// ---------- continuous dual Hahn ----------

double cdh_t_sq(const ContinuousDualHahnParams& c, double n) {
  return (n + c.tau + c.a) * (n + c.tau + c.b) * (n + 1.0) * (n + c.a + c.b);
}

double cdh_s(const ContinuousDualHahnParams& c, double n) {
  return (n + c.tau + c.a) * (n + c.tau + c.b) + n * (n + c.a + c.b - 1.0) - c.tau * c.tau;
}

double cdh_value(const ContinuousDualHahnParams& c, unsigned n, cplx up1, cplx up2) {
  if (n == 0) return 1.0;
  // lead / sqrt(h) with h = lead (a+b)_n n!, accumulated as O(1) ratios
  double sign = 1.0, log_ratio = 0.0;
  for (unsigned j = 0; j < n; ++j) {
    const double u = (j + c.tau + c.a) * (j + c.tau + c.b), w = (j + c.a + c.b) * (j + 1.0);
    if (u == 0.0 || w == 0.0) bad("continuous dual Hahn normalization vanishes");
    if (u < 0.0) sign = -sign;
    if (w < 0.0) sign = -sign;
    log_ratio += std::log(std::abs(u)) - std::log(std::abs(w));
  }
  double lead_sign = 1.0;
  for (unsigned j = 0; j < n; ++j)
    if ((j + c.tau + c.a) * (j + c.tau + c.b) < 0.0) lead_sign = -lead_sign;
  if (sign < 0.0) bad("continuous dual Hahn norm not positive");
  const cplx f = hyp({-double(n), up1, up2}, {c.tau + c.a, c.tau + c.b}, 1.0, n);
  return checked(lead_sign * real_part(f, "continuous dual Hahn value not real") *
                     std::exp(0.5 * log_ratio),
                 "continuous dual Hahn value");
}

// ---------- Racah ----------

double racah_gamma(const RacahParams& r) { return -static_cast<double>(r.size) - 1.0; }

double racah_A(const RacahParams& r, double n) {
  const double g = racah_gamma(r);
  const double ab = r.alpha + r.beta;
  return (n + r.alpha + 1.0) * (n + ab + 1.0) * (n + r.beta + r.delta + 1.0) * (n + g + 1.0) /
         ((2.0 * n + ab + 1.0) * (2.0 * n + ab + 2.0));
}

double racah_C(const RacahParams& r, double n) {
  if (n == 0.0) return 0.0;
  const double g = racah_gamma(r);
  const double ab = r.alpha + r.beta;
  return n * (n + ab - g) * (n + r.alpha - r.delta) * (n + r.beta) /
         ((2.0 * n + ab) * (2.0 * n + ab + 1.0));
}

double racah_offset(const RacahParams& r) {
  const double h = 0.5 * (racah_gamma(r) + r.delta + 1.0);
  return h * h;
}

double racah_norm(const RacahParams& r, unsigned n) {
  double h = 1.0;
  for (unsigned j = 0; j < n; ++j) h *= racah_C(r, j + 1.0) / racah_A(r, j);
  return h;
}

// ---------- coefficient streams ----------

struct CoeffVisitor {
  std::size_t count;

  FormalCoeffs operator()(const MeixnerPollaczekParams& p) const {
    FormalCoeffs f;
    const double sn = std::sin(p.theta);
    for (std::size_t i = 0; i < count; ++i) {
      const double n = double(i);
      f.s.push_back(-(2.0 * n + 2.0 * p.mu) * std::cos(p.theta) / (2.0 * sn));
      f.t_sq.push_back((n + 1.0) * (n + 2.0 * p.mu) / (4.0 * sn * sn));
    }
    return f;
  }
  FormalCoeffs operator()(const MeixnerParams& p) const {
    FormalCoeffs f;
    const double d = p.tau - 1.0;
    for (std::size_t i = 0; i < count; ++i) {
      const double n = double(i);
      f.s.push_back(-(n * (1.0 + p.tau) + 2.0 * p.mu * p.tau) / d);
      f.t_sq.push_back((n + 1.0) * (n + 2.0 * p.mu) * p.tau / (d * d));
    }
    return f;
  }
  FormalCoeffs operator()(const KrawtchoukParams& p) const {
    FormalCoeffs f;
    const double c = std::sqrt(p.tau * (1.0 - p.tau));
    const double big_n = p.size;
    for (std::size_t i = 0; i < count; ++i) {
      const double n = double(i);
      f.s.push_back((big_n * p.tau + n * (1.0 - 2.0 * p.tau)) / c);
      f.t_sq.push_back((n + 1.0) * (n - big_n));
    }
    return f;
  }
  FormalCoeffs operator()(const ContinuousDualHahnParams& p) const {
    FormalCoeffs f;
    for (std::size_t i = 0; i < count; ++i) {
      f.s.push_back(cdh_s(p, double(i)));
      f.t_sq.push_back(cdh_t_sq(p, double(i)));
    }
    return f;
  }
  FormalCoeffs operator()(const DualHahnParams& p) const {
    FormalCoeffs f;
    const double big_n = p.size;
    const double off = 0.5 * (p.gamma + p.delta + 1.0);
    for (std::size_t i = 0; i < count; ++i) {
      const double n = double(i);
      f.s.push_back((n + p.gamma + 1.0) * (big_n - n) + n * (big_n + p.delta + 1.0 - n) + off * off);
      f.t_sq.push_back((n + 1.0) * (n + p.gamma + 1.0) * (big_n - n) * (big_n - n + p.delta));
    }
    return f;
  }
  FormalCoeffs operator()(const WilsonParams& p) const {
    const std::array<cplx, 4> q{p.a, p.b, p.c, p.d};
    FormalCoeffs f;
    for (std::size_t i = 0; i < count; ++i) {
      f.s.push_back(wilson_s(q, double(i)));
      f.t_sq.push_back(wilson_t_sq(q, double(i)));
    }
    return f;
  }
  FormalCoeffs operator()(const RacahParams& p) const {
    FormalCoeffs f;
    for (std::size_t i = 0; i < count; ++i) {
      const double n = double(i);
      f.s.push_back(-(racah_A(p, n) + racah_C(p, n)) + racah_offset(p));
      f.t_sq.push_back(racah_A(p, n) * racah_C(p, n + 1.0));
    }
    return f;
  }
  FormalCoeffs operator()(const NewHParams& p) const {
    FormalCoeffs f;
    const double sn = std::sin(p.theta);
    for (std::size_t i = 0; i < count; ++i) {
      const double n = double(i);
      const double m = n + 0.5 * (p.mu + p.nu + 1.0);
      f.s.push_back(sn * (p.sigma + m * m) / p.z + jacobi_c(p.mu, p.nu, n));
      const double d = jacobi_d(p.mu, p.nu, n);
      f.t_sq.push_back(d * d);
    }
    return f;
  }
  FormalCoeffs operator()(const NewGParams& p) const {
    FormalCoeffs f;
    const double k = (1.0 - p.tau) / (2.0 * std::sqrt(p.tau));
    for (std::size_t i = 0; i < count; ++i) {
      const double n = double(i);
      const double m = n + 0.5 * (p.mu + p.nu + 1.0);
      f.s.push_back(k * (p.sigma + m * m) / p.z + jacobi_c(p.mu, p.nu, n));
      const double d = jacobi_d(p.mu, p.nu, n);
      f.t_sq.push_back(d * d);
    }
    return f;
  }
};

double sign_of(double v) { return v < 0.0 ? -1.0 : 1.0; }

}  // namespace

double jacobi_c(double mu, double nu, double n) {
  const double w = 2.0 * n + mu + nu;
  if (nu * nu == mu * mu) return 0.0;
  if (w == 0.0 || w + 2.0 == 0.0) fail(ErrorCode::DegenerateDenominator, "Jacobi C_n");
  return (nu * nu - mu * mu) / (w * (w + 2.0));
}

double jacobi_d(double mu, double nu, double n) {
  const double w = 2.0 * n + mu + nu;
  const double num = (n + 1.0) * (n + mu + 1.0) * (n + nu + 1.0) * (n + mu + nu + 1.0);
  const double den = (w + 1.0) * (w + 3.0);
  if (w + 2.0 == 0.0 || den == 0.0) fail(ErrorCode::DegenerateDenominator, "Jacobi D_n");
  const double r = num / den;
  if (r < 0.0) fail(ErrorCode::RealityViolation, "Jacobi D_n^2 < 0");
  return 2.0 / (w + 2.0) * std::sqrt(r);
}

std::string_view family_name(FamilyKind kind) noexcept {
  switch (kind) {
    case FamilyKind::MeixnerPollaczek: return "MeixnerPollaczek";
    case FamilyKind::Meixner: return "Meixner";
    case FamilyKind::Krawtchouk: return "Krawtchouk";
    case FamilyKind::ContinuousDualHahn: return "ContinuousDualHahn";
    case FamilyKind::DualHahn: return "DualHahn";
    case FamilyKind::Wilson: return "Wilson";
    case FamilyKind::Racah: return "Racah";
    case FamilyKind::NewH: return "NewH";
    case FamilyKind::NewG: return "NewG";
  }
  return "Unknown";
}

FamilyKind kind_of(const PolyFamily& family) noexcept {
  return static_cast<FamilyKind>(family.index());
}

RacahParams racah_symmetric(unsigned size, double g, double s) {
  return RacahParams{size, g, s, 0.0};
}

unsigned finite_size(const PolyFamily& family) noexcept {
  return std::visit(overloaded{
                        [](const KrawtchoukParams& p) { return p.size; },
                        [](const DualHahnParams& p) { return p.size; },
                        [](const RacahParams& p) { return p.size; },
                        [](const auto&) { return 0u; },
                    },
                    family);
}

void validate(const PolyFamily& family) {
  std::visit(
      overloaded{
          [](const MeixnerPollaczekParams& p) {
            if (!(p.mu > 0.0) || !(p.theta > 0.0 && p.theta < kPi))
              bad("Meixner-Pollaczek needs mu > 0 and 0 < theta < pi");
          },
          [](const MeixnerParams& p) {
            if (!(p.mu > 0.0) || !(p.tau > 0.0 && p.tau < 1.0))
              bad("Meixner needs mu > 0 and 0 < tau < 1");
          },
          [](const KrawtchoukParams& p) {
            if (p.size == 0 || !(p.tau > 0.0 && p.tau < 1.0))
              bad("Krawtchouk needs N >= 1 and 0 < tau < 1");
          },
          [](const ContinuousDualHahnParams& p) {
            if (!(p.a > 0.0 && p.b > 0.0)) bad("continuous dual Hahn needs a, b > 0");
            if (p.tau > 0.0) return;
            if (!(p.tau < 0.0) || std::floor(p.tau) == p.tau)
              bad("continuous dual Hahn tau must be positive or negative non-integer");
            for (std::size_t n = 0; n < kMixedCheckDepth; ++n)
              if (!(cdh_t_sq(p, double(n)) > 0.0))
                bad("continuous dual Hahn mixed case has t_n^2 <= 0");
          },
          [](const DualHahnParams& p) {
            const double lo = -static_cast<double>(p.size);
            const bool upper = p.gamma > -1.0 && p.delta > -1.0;
            const bool lower = p.gamma < lo && p.delta < lo;
            if (p.size == 0 || !(upper || lower))
              bad("dual Hahn needs gamma, delta > -1 or gamma, delta < -N");
          },
          [](const WilsonParams& p) {
            const WilsonOrdered o = wilson_order(p);
            for (std::size_t n = 0; n < kMixedCheckDepth; ++n) {
              const double t2 = wilson_t_sq(o.p, double(n));
              if (!(t2 > 0.0) || !std::isfinite(t2)) bad("Wilson t_n^2 <= 0");
            }
          },
          [](const RacahParams& p) {
            if (p.size == 0) bad("Racah needs N >= 1");
            for (unsigned n = 0; n < p.size; ++n) {
              const double t2 = racah_A(p, n) * racah_C(p, n + 1.0);
              if (!(t2 > 0.0) || !std::isfinite(t2)) bad("Racah A_n C_{n+1} <= 0");
            }
          },
          [](const NewHParams& p) {
            if (!(p.theta > 0.0 && p.theta < kPi) || p.z == 0.0)
              bad("NewH needs 0 < theta < pi and z != 0");
            if (!(p.mu > -1.0 && p.nu > -1.0)) bad("NewH needs mu, nu > -1");
          },
          [](const NewGParams& p) {
            if (!(p.tau > 0.0 && p.tau < 1.0) || p.z == 0.0)
              bad("NewG needs 0 < tau < 1 and z != 0");
            if (!(p.mu > -1.0 && p.nu > -1.0)) bad("NewG needs mu, nu > -1");
          },
      },
      family);
}

FormalCoeffs formal_coeffs(const PolyFamily& family, std::size_t count) {
  return std::visit(CoeffVisitor{count}, family);
}

RecursionCoeffs family_coeffs(const PolyFamily& family, std::size_t count) {
  validate(family);
  const unsigned big_n = finite_size(family);
  if (big_n > 0) count = std::min<std::size_t>(count, big_n + 1);
  const FormalCoeffs f = formal_coeffs(family, count);
  RecursionCoeffs c;
  c.s = f.s;
  c.t.resize(count);
  const FamilyKind kind = kind_of(family);
  for (std::size_t i = 0; i < count; ++i) {
    double t2 = f.t_sq[i];
    if (kind == FamilyKind::Krawtchouk) t2 = -t2;
    if (t2 < 0.0) {
      if (big_n > 0 && i == big_n) t2 = 0.0;
      else bad("negative t_n^2 at n=" + std::to_string(i));
    }
    const double mag = std::sqrt(t2);
    switch (kind) {
      case FamilyKind::MeixnerPollaczek:
      case FamilyKind::NewH:
      case FamilyKind::NewG: c.t[i] = mag; break;
      case FamilyKind::Meixner: c.t[i] = -mag; break;
      case FamilyKind::Racah:
        c.t[i] = sign_of(racah_A(std::get<RacahParams>(family), double(i))) * mag;
        break;
      default: c.t[i] = -mag; break;
    }
  }
  return c;
}

double recursion_variable(const PolyFamily& family, double arg) {
  return std::visit(
      overloaded{
          [&](const KrawtchoukParams& p) { return arg / std::sqrt(p.tau * (1.0 - p.tau)); },
          [&](const DualHahnParams& p) {
            const double v = arg + 0.5 * (p.gamma + p.delta + 1.0);
            return v * v;
          },
          [&](const RacahParams& p) {
            const double v = arg + 0.5 * (racah_gamma(p) + p.delta + 1.0);
            return v * v;
          },
          [&](const auto&) { return arg; },
      },
      family);
}

double closed_form(const PolyFamily& family, unsigned n, double arg) {
  validate(family);
  return std::visit(
      overloaded{
          [&](const MeixnerPollaczekParams& p) -> double {
            if (n == 0) return 1.0;
            const cplx i(0.0, 1.0);
            const cplx f = hyp({-double(n), p.mu + i * arg}, {2.0 * p.mu},
                               1.0 - std::exp(-2.0 * i * p.theta), n);
            const cplx v = std::sqrt(rising_over_factorial(2.0 * p.mu, n)) *
                           std::exp(i * (double(n) * p.theta)) * f;
            return checked(real_part(v, "Meixner-Pollaczek value not real"),
                           "Meixner-Pollaczek value");
          },
          [&](const MeixnerParams& p) -> double {
            if (n == 0) return 1.0;
            const cplx f = hyp({-double(n), -arg}, {2.0 * p.mu}, 1.0 - 1.0 / p.tau, n);
            return checked(std::sqrt(rising_over_factorial(2.0 * p.mu, n) *
                                     std::pow(p.tau, double(n))) *
                               f.real(),
                           "Meixner value");
          },
          [&](const KrawtchoukParams& p) -> double {
            if (n > p.size) fail(ErrorCode::IndexOutOfValidity, "Krawtchouk degree exceeds N");
            if (n == 0) return 1.0;
            // p_n(x; tau) = (-1)^n p_n(N - x; 1 - tau); sum whichever form cancels less
            const auto form = [&](double t, double x, double& cancel) {
              double largest = 0.0;
              const cplx f = hyp({-double(n), -x}, {-double(p.size)}, 1.0 / t, n, &largest);
              cancel = std::abs(f) > 0.0 ? largest / std::abs(f) : INFINITY;
              return std::sqrt(binomial(p.size, n) * std::pow(t / (1.0 - t), double(n))) * f.real();
            };
            double c1 = 0.0, c2 = 0.0;
            const double v1 = form(p.tau, arg, c1);
            const double v2 = (n % 2 ? -1.0 : 1.0) * form(1.0 - p.tau, p.size - arg, c2);
            return checked(c2 < c1 ? v2 : v1, "Krawtchouk value");
          },
          [&](const ContinuousDualHahnParams& p) -> double {
            const cplx ix = arg >= 0.0 ? cplx(0.0, std::sqrt(arg)) : cplx(std::sqrt(-arg), 0.0);
            return cdh_value(p, n, p.tau + ix, p.tau - ix);
          },
          [&](const DualHahnParams& p) -> double {
            if (n > p.size) fail(ErrorCode::IndexOutOfValidity, "dual Hahn degree exceeds N");
            if (n == 0) return 1.0;
            const double big_n = p.size;
            const double pre = pochhammer(p.gamma + 1.0, n) * pochhammer(big_n - n + 1.0, n) /
                               (std::exp(log_factorial(n)) *
                                pochhammer(big_n + p.delta - n + 1.0, n));
            if (!(pre > 0.0)) bad("dual Hahn prefactor not positive");
            const cplx f = hyp({-double(n), -arg, arg + p.gamma + p.delta + 1.0},
                               {p.gamma + 1.0, -big_n}, 1.0, n);
            return checked(std::sqrt(pre) * f.real(), "dual Hahn value");
          },
          [&](const WilsonParams& p) -> double {
            const WilsonOrdered o = wilson_order(p);
            const cplx ix = arg >= 0.0 ? cplx(0.0, std::sqrt(arg)) : cplx(std::sqrt(-arg), 0.0);
            if (o.mixed || o.p[0].imag() != 0.0) return wilson_value(o.p, n, o.p[0] + ix, o.p[0] - ix);
            // the 4F3 is symmetric in the parameters; lead with the real one that cancels least
            double best = 0.0, best_cancel = INFINITY;
            for (std::size_t i = 0; i < 4; ++i) {
              if (o.p[i].imag() != 0.0) continue;
              std::array<cplx, 4> q = o.p;
              std::swap(q[0], q[i]);
              double cancel = 0.0;
              const double v = wilson_value(q, n, q[0] + ix, q[0] - ix, &cancel);
              if (cancel < best_cancel) {
                best = v;
                best_cancel = cancel;
              }
            }
            return best;
          },
          [&](const RacahParams& p) -> double {
            if (n > p.size) fail(ErrorCode::IndexOutOfValidity, "Racah degree exceeds N");
            if (n == 0) return 1.0;
            const double g = racah_gamma(p);
            const cplx f =
                hyp({-double(n), n + p.alpha + p.beta + 1.0, -arg, arg + g + p.delta + 1.0},
                    {p.alpha + 1.0, p.beta + p.delta + 1.0, g + 1.0}, 1.0, n);
            return checked(f.real() / std::sqrt(racah_norm(p, n)), "Racah value");
          },
          [&](const NewHParams&) -> double {
            fail(ErrorCode::NoClosedForm, "NewH has no closed form");
          },
          [&](const NewGParams&) -> double {
            fail(ErrorCode::NoClosedForm, "NewG has no closed form");
          },
      },
      family);
}

double closed_form_at_mass(const PolyFamily& family, unsigned n, unsigned k) {
  validate(family);
  const double kd = k;
  if (const auto* c = std::get_if<ContinuousDualHahnParams>(&family)) {
    if (!(kd + c->tau < 0.0)) fail(ErrorCode::IndexOutOfSpectrum, "no such mass point");
    return cdh_value(*c, n, -kd, 2.0 * c->tau + kd);
  }
  if (const auto* w = std::get_if<WilsonParams>(&family)) {
    const WilsonOrdered o = wilson_order(*w);
    if (!o.mixed || !(kd + o.p[0].real() < 0.0))
      fail(ErrorCode::IndexOutOfSpectrum, "no such mass point");
    return wilson_value(o.p, n, -kd, 2.0 * o.p[0] + kd);
  }
  return closed_form(family, n, kd);
}

std::vector<Mass> mixed_masses(const PolyFamily& family) {
  std::vector<Mass> out;
  if (const auto* c = std::get_if<ContinuousDualHahnParams>(&family)) {
    if (c->tau > 0.0) return out;
    const double t = c->tau, a = c->a, b = c->b;
    const SignedLog g1 = log_gamma_signed(a - t), g2 = log_gamma_signed(b - t);
    const SignedLog g3 = log_gamma_signed(-2.0 * t), g4 = log_gamma_signed(a + b);
    const double base = g1.sign * g2.sign * g3.sign * g4.sign *
                        std::exp(g1.log_abs + g2.log_abs - g3.log_abs - g4.log_abs);
    for (unsigned k = 0; k + t < 0.0; ++k) {
      const double num = pochhammer(2.0 * t, k) * pochhammer(t + 1.0, k) *
                         pochhammer(t + a, k) * pochhammer(t + b, k);
      const double den = pochhammer(t, k) * pochhammer(t - a + 1.0, k) *
                         pochhammer(t - b + 1.0, k) * std::exp(log_factorial(k));
      const double rho = checked(base * num / den * ((k % 2) ? -1.0 : 1.0), "CDH mass");
      const double x = k + t;
      out.push_back({k, -x * x, rho});
    }
    return out;
  }
  if (const auto* w = std::get_if<WilsonParams>(&family)) {
    const WilsonOrdered o = wilson_order(*w);
    if (!o.mixed) return out;
    const auto& p = o.p;
    const double a = p[0].real();
    const cplx s = wilson_sum(p);
    const cplx lbase = log_gamma(s) + log_gamma(p[1] - a) + log_gamma(p[2] - a) +
                       log_gamma(p[3] - a) - log_gamma(-2.0 * a) - log_gamma(p[1] + p[2]) -
                       log_gamma(p[1] + p[3]) - log_gamma(p[2] + p[3]);
    const double base = real_part(std::exp(lbase), "Wilson mass base not real");
    for (unsigned k = 0; k + a < 0.0; ++k) {
      const cplx num = pochhammer(2.0 * a, k) * pochhammer(a + 1.0, k) *
                       pochhammer(p[0] + p[1], k) * pochhammer(p[0] + p[2], k) *
                       pochhammer(p[0] + p[3], k);
      const cplx den = pochhammer(a, k) * pochhammer(a - p[1] + 1.0, k) *
                       pochhammer(a - p[2] + 1.0, k) * pochhammer(a - p[3] + 1.0, k) *
                       std::exp(log_factorial(k));
      const double rho = checked(base * real_part(num / den, "Wilson mass not real"),
                                 "Wilson mass");
      const double x = k + a;
      out.push_back({k, -x * x, rho});
    }
  }
  return out;
}

double mass_at(const PolyFamily& family, unsigned k) {
  if (const auto* m = std::get_if<MeixnerParams>(&family)) {
    validate(family);
    const double l = 2.0 * m->mu * std::log(1.0 - m->tau) + k * std::log(m->tau) +
                     log_gamma_signed(k + 2.0 * m->mu).log_abs -
                     log_gamma_signed(2.0 * m->mu).log_abs - log_factorial(k);
    return std::exp(l);
  }
  const FamilyKind kind = kind_of(family);
  const std::vector<Mass> masses =
      (kind == FamilyKind::ContinuousDualHahn || kind == FamilyKind::Wilson)
          ? (validate(family), mixed_masses(family))
          : weight(family).masses;
  if (k >= masses.size())
    fail(ErrorCode::IndexOutOfSpectrum, "no discrete point with index " + std::to_string(k));
  return masses[k].weight;
}

WeightFunction weight(const PolyFamily& family) {
  validate(family);
  return std::visit(
      overloaded{
          [&](const MeixnerPollaczekParams& p) {
            WeightFunction w{WeightKind::Continuous, {}, -INFINITY, INFINITY, {}};
            const double lnorm = 2.0 * p.mu * std::log(2.0 * std::sin(p.theta)) -
                                 std::log(2.0 * kPi) - log_gamma_signed(2.0 * p.mu).log_abs;
            w.density = [p, lnorm](double z) {
              return std::exp(lnorm + (2.0 * p.theta - kPi) * z +
                              2.0 * log_gamma(cplx(p.mu, z)).real());
            };
            return w;
          },
          [&](const MeixnerParams& p) {
            WeightFunction w{WeightKind::Discrete, {}, 0.0, INFINITY, {}};
            double term = std::pow(1.0 - p.tau, 2.0 * p.mu);
            double total = 0.0;
            for (unsigned k = 0; total < 1.0 - kMeixnerTailMass && k < 100000; ++k) {
              w.masses.push_back({k, double(k), term});
              total += term;
              term *= (k + 2.0 * p.mu) * p.tau / (k + 1.0);
            }
            w.support_hi = double(w.masses.size() - 1);
            return w;
          },
          [&](const KrawtchoukParams& p) {
            WeightFunction w{WeightKind::Discrete, {}, 0.0, double(p.size), {}};
            for (unsigned k = 0; k <= p.size; ++k)
              w.masses.push_back({k, double(k),
                                  binomial(p.size, k) * std::pow(p.tau, double(k)) *
                                      std::pow(1.0 - p.tau, double(p.size - k))});
            return w;
          },
          [&](const ContinuousDualHahnParams& p) {
            WeightFunction w{WeightKind::Continuous, {}, 0.0, INFINITY, mixed_masses(family)};
            if (!w.masses.empty()) w.kind = WeightKind::Mixed;
            const SignedLog g1 = log_gamma_signed(p.tau + p.a);
            const SignedLog g2 = log_gamma_signed(p.tau + p.b);
            const SignedLog g3 = log_gamma_signed(p.a + p.b);
            const double sign = g1.sign * g2.sign * g3.sign;
            const double lnorm = -std::log(2.0 * kPi) - g1.log_abs - g2.log_abs - g3.log_abs;
            w.density = [p, sign, lnorm](double x) {
              if (!(x > 0.0)) return 0.0;
              const double l = lnorm + 2.0 * (log_gamma(cplx(p.tau, x)).real() +
                                              log_gamma(cplx(p.a, x)).real() +
                                              log_gamma(cplx(p.b, x)).real() -
                                              log_gamma(cplx(0.0, 2.0 * x)).real());
              return sign * std::exp(l);
            };
            return w;
          },
          [&](const DualHahnParams& p) {
            WeightFunction w{WeightKind::Discrete, {}, 0.0, double(p.size), {}};
            const double big_n = p.size;
            const double g = p.gamma, d = p.delta;
            for (unsigned k = 0; k <= p.size; ++k) {
              const double v = pochhammer(d + 1.0, p.size) * (2.0 * k + g + d + 1.0) *
                               pochhammer(g + 1.0, k) * pochhammer(big_n - k + 1.0, k) /
                               (pochhammer(k + g + d + 1.0, p.size + 1) *
                                pochhammer(d + 1.0, k) * std::exp(log_factorial(k)));
              w.masses.push_back({k, double(k), checked(v, "dual Hahn mass")});
            }
            return w;
          },
          [&](const WilsonParams& p) {
            const WilsonOrdered o = wilson_order(p);
            WeightFunction w{WeightKind::Continuous, {}, 0.0, INFINITY, mixed_masses(family)};
            if (o.mixed) w.kind = WeightKind::Mixed;
            const auto q = o.p;
            const cplx s = wilson_sum(q);
            cplx lnorm = log_gamma(s) - std::log(2.0 * kPi);
            for (std::size_t i = 0; i < 4; ++i)
              for (std::size_t j = i + 1; j < 4; ++j) lnorm -= log_gamma(q[i] + q[j]);
            const double norm = real_part(std::exp(lnorm), "Wilson weight norm not real");
            w.density = [q, norm](double x) {
              if (!(x > 0.0)) return 0.0;
              const cplx ix(0.0, x);
              double l = -2.0 * log_gamma(2.0 * ix).real();
              for (const cplx& v : q)
                l += log_gamma(v + ix).real() + log_gamma(v - ix).real();
              return norm * std::exp(l);
            };
            return w;
          },
          [&](const RacahParams& p) {
            WeightFunction w{WeightKind::Discrete, {}, 0.0, double(p.size), {}};
            const double g = racah_gamma(p);
            const double a = p.alpha, b = p.beta, d = p.delta;
            double total = 0.0;
            for (unsigned k = 0; k <= p.size; ++k) {
              const double num = pochhammer(a + 1.0, k) * pochhammer(b + d + 1.0, k) *
                                 pochhammer(g + 1.0, k) * pochhammer(g + d + 1.0, k) *
                                 (2.0 * k + g + d + 1.0);
              const double den = pochhammer(-a + g + d + 1.0, k) * pochhammer(-b + g + 1.0, k) *
                                 (g + d + 1.0) * pochhammer(d + 1.0, k) *
                                 std::exp(log_factorial(k));
              const double v = checked(num / den, "Racah mass");
              w.masses.push_back({k, double(k), v});
              total += v;
            }
            for (Mass& m : w.masses) {
              m.weight /= total;
              if (!(m.weight > 0.0)) bad("Racah masses not positive");
            }
            return w;
          },
          [&](const NewHParams&) -> WeightFunction {
            fail(ErrorCode::NoClosedForm, "NewH weight unknown");
          },
          [&](const NewGParams&) -> WeightFunction {
            fail(ErrorCode::NoClosedForm, "NewG weight unknown");
          },
      },
      family);
}

}  // namespace tra
