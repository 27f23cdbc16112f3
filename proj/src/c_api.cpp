#include "tra/tra_c.h"

#include <cctype>
#include <cmath>
#include <memory>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "tra/errors.hpp"
#include "tra/physics.hpp"
#include "tra/verify.hpp"

struct tra_case {
  tra::PotentialCase pc;
};

struct tra_match {
  tra::MatchResult match;
  std::vector<std::string> names;
  std::vector<tra::cplx> values;
};

struct tra_family {
  tra::PolyFamily family;
};

struct tra_wavefunction {
  tra::Wavefunction wf;
};

struct tra_report {
  std::vector<tra::Check> checks;
};

namespace {

thread_local std::string last_error;

int set_error(int status, const std::string& message) {
  last_error = message;
  return status;
}

template <typename F>
int guard(F&& body) {
  try {
    last_error.clear();
    body();
    return TRA_OK;
  } catch (const tra::Error& e) {
    return set_error(static_cast<int>(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return set_error(TRA_UNKNOWN_ERROR, "out of memory");
  } catch (const std::exception& e) {
    return set_error(TRA_UNKNOWN_ERROR, e.what());
  } catch (...) {
    return set_error(TRA_UNKNOWN_ERROR, "unknown failure");
  }
}

template <typename... P>
void need(const P*... ptrs) {
  if (((ptrs == nullptr) || ...)) tra::fail(tra::ErrorCode::InvalidArgument, "null pointer argument");
}

std::string fold(std::string_view s) {
  std::string out;
  for (char c : s)
    if (c != '_' && c != '-' && c != ' ') out += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

tra::Scenario parse_scenario(const char* name) {
  for (tra::Scenario s : {tra::Scenario::A7a, tra::Scenario::A7b, tra::Scenario::B12a,
                          tra::Scenario::B12b, tra::Scenario::B12c})
    if (fold(name) == fold(tra::scenario_name(s))) return s;
  tra::fail(tra::ErrorCode::InvalidArgument, std::string("unknown scenario ") + name);
}

tra::FamilyKind parse_family(const char* name) {
  using tra::FamilyKind;
  for (FamilyKind k : {FamilyKind::MeixnerPollaczek, FamilyKind::Meixner, FamilyKind::Krawtchouk,
                       FamilyKind::ContinuousDualHahn, FamilyKind::DualHahn, FamilyKind::Wilson,
                       FamilyKind::Racah, FamilyKind::NewH, FamilyKind::NewG})
    if (fold(name) == fold(tra::family_name(k))) return k;
  tra::fail(tra::ErrorCode::InvalidArgument, std::string("unknown family ") + name);
}

tra::Branch branch(int sign) { return sign == TRA_MINUS ? tra::Branch::Minus : tra::Branch::Plus; }

tra::OdeParams from_c(const tra_ode_params& p) {
  tra::OdeParams o;
  if (p.equation != TRA_LAGUERRE && p.equation != TRA_JACOBI)
    tra::fail(tra::ErrorCode::InvalidArgument, "equation must be TRA_LAGUERRE or TRA_JACOBI");
  o.equation = p.equation == TRA_JACOBI ? tra::Equation::Jacobi : tra::Equation::Laguerre;
  o.a = p.a;
  o.b = p.b;
  o.A_plus = p.A_plus;
  o.A_minus = p.A_minus;
  o.A_zero = p.A_zero;
  o.A_one = p.A_one;
  return o;
}

tra::BasisChoice choice_of(int mu_sign, int nu_sign, double free_index) {
  tra::BasisChoice c;
  c.mu_sign = branch(mu_sign);
  c.nu_sign = branch(nu_sign);
  if (!std::isnan(free_index)) c.free_index = free_index;
  return c;
}

void describe(tra_match& m) {
  const auto put = [&](const char* n, tra::cplx v) {
    m.names.emplace_back(n);
    m.values.push_back(v);
  };
  std::visit(
      [&](const auto& f) {
        using T = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<T, tra::MeixnerPollaczekParams>) {
          put("mu", f.mu);
          put("theta", f.theta);
        } else if constexpr (std::is_same_v<T, tra::MeixnerParams>) {
          put("mu", f.mu);
          put("tau", f.tau);
        } else if constexpr (std::is_same_v<T, tra::KrawtchoukParams>) {
          put("N", double(f.size));
          put("tau", f.tau);
        } else if constexpr (std::is_same_v<T, tra::ContinuousDualHahnParams>) {
          put("tau", f.tau);
          put("a", f.a);
          put("b", f.b);
        } else if constexpr (std::is_same_v<T, tra::DualHahnParams>) {
          put("N", double(f.size));
          put("gamma", f.gamma);
          put("delta", f.delta);
        } else if constexpr (std::is_same_v<T, tra::WilsonParams>) {
          put("a", f.a);
          put("b", f.b);
          put("c", f.c);
          put("d", f.d);
        } else if constexpr (std::is_same_v<T, tra::RacahParams>) {
          put("N", double(f.size));
          put("alpha", f.alpha);
          put("beta", f.beta);
          put("delta", f.delta);
        } else if constexpr (std::is_same_v<T, tra::NewHParams>) {
          put("mu", f.mu);
          put("nu", f.nu);
          put("theta", f.theta);
          put("sigma", f.sigma);
          put("z", f.z);
        } else {
          put("mu", f.mu);
          put("nu", f.nu);
          put("tau", f.tau);
          put("sigma", f.sigma);
          put("z", f.z);
        }
      },
      m.match.family);
}

class Keys {
public:
  Keys(const char* const* keys, const double* values, std::size_t count) {
    for (std::size_t i = 0; i < count; ++i) {
      need(keys[i]);
      pairs_.emplace_back(keys[i], values[i]);
    }
  }

  bool has(std::string_view key) const {
    for (const auto& [k, v] : pairs_)
      if (k == key) return true;
    return false;
  }
  double get(std::string_view key, std::optional<double> fallback = std::nullopt) const {
    for (const auto& [k, v] : pairs_)
      if (k == key) return v;
    if (fallback) return *fallback;
    tra::fail(tra::ErrorCode::InvalidArgument, "missing family parameter " + std::string(key));
  }
  unsigned size(std::string_view key) const {
    const double v = get(key);
    if (!(v >= 0.0) || std::floor(v) != v || v > 1e6)
      tra::fail(tra::ErrorCode::InvalidArgument, std::string(key) + " must be a nonnegative integer");
    return static_cast<unsigned>(v);
  }
  /// mu given directly or through nu with mu = (nu + 1) / 2.
  double mu() const { return has("nu") && !has("mu") ? 0.5 * (get("nu") + 1.0) : get("mu"); }
  void allow(std::initializer_list<std::string_view> names) const {
    for (const auto& [k, v] : pairs_) {
      bool ok = false;
      for (std::string_view n : names) ok = ok || k == n;
      if (!ok) tra::fail(tra::ErrorCode::InvalidArgument, "unexpected family parameter " + k);
    }
  }

private:
  std::vector<std::pair<std::string, double>> pairs_;
};

tra::PolyFamily make_family(tra::FamilyKind kind, const Keys& k) {
  using tra::FamilyKind;
  switch (kind) {
    case FamilyKind::MeixnerPollaczek:
      k.allow({"mu", "nu", "theta"});
      return tra::MeixnerPollaczekParams{k.mu(), k.get("theta")};
    case FamilyKind::Meixner:
      k.allow({"mu", "nu", "tau"});
      return tra::MeixnerParams{k.mu(), k.get("tau")};
    case FamilyKind::Krawtchouk:
      k.allow({"N", "tau"});
      return tra::KrawtchoukParams{k.size("N"), k.get("tau")};
    case FamilyKind::ContinuousDualHahn:
      k.allow({"tau", "a", "b"});
      return tra::ContinuousDualHahnParams{k.get("tau"), k.get("a"), k.get("b")};
    case FamilyKind::DualHahn:
      k.allow({"N", "gamma", "delta"});
      return tra::DualHahnParams{k.size("N"), k.get("gamma"), k.get("delta")};
    case FamilyKind::Wilson:
      k.allow({"a", "b", "c", "d", "a_im", "b_im", "c_im", "d_im"});
      return tra::WilsonParams{{k.get("a"), k.get("a_im", 0.0)},
                               {k.get("b"), k.get("b_im", 0.0)},
                               {k.get("c"), k.get("c_im", 0.0)},
                               {k.get("d"), k.get("d_im", 0.0)}};
    case FamilyKind::Racah:
      k.allow({"N", "alpha", "beta", "delta"});
      return tra::RacahParams{k.size("N"), k.get("alpha"), k.get("beta"), k.get("delta")};
    case FamilyKind::NewH:
      k.allow({"mu", "nu", "theta", "sigma", "z"});
      return tra::NewHParams{k.get("mu"), k.get("nu"), k.get("theta"), k.get("sigma"), k.get("z")};
    case FamilyKind::NewG:
      k.allow({"mu", "nu", "tau", "sigma", "z"});
      return tra::NewGParams{k.get("mu"), k.get("nu"), k.get("tau"), k.get("sigma"), k.get("z")};
  }
  tra::fail(tra::ErrorCode::InvalidArgument, "unknown family");
}

double* field(tra::PotentialCase& pc, std::string_view key) {
  if (key == "lambda") return &pc.lambda;
  if (key == "Z") return &pc.Z;
  if (key == "omega") return &pc.omega;
  if (key == "V1") return &pc.V1;
  if (key == "A") return &pc.A;
  if (key == "B") return &pc.B;
  return nullptr;
}

}  // namespace

extern "C" {

const char* tra_status_name(int status) {
  switch (status) {
    case TRA_OK: return "OK";
    case TRA_NULL_POINTER: return "NullPointer";
    case TRA_BUFFER_TOO_SMALL: return "BufferTooSmall";
    case TRA_UNKNOWN_ERROR: return "UnknownError";
    default: break;
  }
  if (status >= TRA_INVALID_ARGUMENT && status <= TRA_MESH_TOO_COARSE)
    return tra::error_name(static_cast<tra::ErrorCode>(status)).data();
  return "InvalidStatus";
}

const char* tra_last_error(void) { return last_error.c_str(); }

int tra_case_new(const char* name, tra_case** out) {
  if (!name || !out) return set_error(TRA_NULL_POINTER, "null pointer argument");
  return guard([&] {
    const auto kind = tra::parse_case(name);
    if (!kind) tra::fail(tra::ErrorCode::InvalidArgument, std::string("unknown case ") + name);
    auto* c = new tra_case;
    c->pc.kind = *kind;
    *out = c;
  });
}

void tra_case_free(tra_case* pc) { delete pc; }

int tra_case_name(const tra_case* pc, const char** name) {
  if (!pc || !name) return set_error(TRA_NULL_POINTER, "null pointer argument");
  *name = tra::case_name(pc->pc.kind).data();
  return TRA_OK;
}

int tra_case_set(tra_case* pc, const char* key, double value) {
  if (!pc || !key) return set_error(TRA_NULL_POINTER, "null pointer argument");
  return guard([&] {
    const std::string k = key;
    if (!std::isfinite(value)) tra::fail(tra::ErrorCode::InvalidArgument, k + " must be finite");
    if (k == "ell") {
      if (value < 0.0 || std::floor(value) != value || value > 1e6)
        tra::fail(tra::ErrorCode::InvalidArgument, "ell must be a nonnegative integer");
      pc->pc.ell = static_cast<unsigned>(value);
    } else if (k == "L") {
      if (!(value > 0.0)) tra::fail(tra::ErrorCode::InvalidArgument, "L must be positive");
      pc->pc.lambda = std::numbers::pi / value;
    } else if (k == "V2") {
      pc->pc.V2 = value;
    } else if (double* f = field(pc->pc, k)) {
      *f = value;
    } else {
      tra::fail(tra::ErrorCode::InvalidArgument, "unknown case parameter " + k);
    }
  });
}

int tra_case_get(const tra_case* pc, const char* key, double* value) {
  if (!pc || !key || !value) return set_error(TRA_NULL_POINTER, "null pointer argument");
  return guard([&] {
    tra::PotentialCase copy = pc->pc;
    const std::string k = key;
    if (k == "ell") *value = copy.ell;
    else if (k == "L") *value = std::numbers::pi / copy.lambda;
    else if (k == "V2") *value = copy.morse_V2();
    else if (double* f = field(copy, k)) *value = *f;
    else tra::fail(tra::ErrorCode::InvalidArgument, "unknown case parameter " + k);
  });
}

int tra_case_validate(const tra_case* pc) {
  if (!pc) return set_error(TRA_NULL_POINTER, "null pointer argument");
  return guard([&] { tra::validate(pc->pc); });
}

int tra_bound_spectrum(const tra_case* pc, unsigned m_max, int coulomb_as_printed, double* energies,
                       size_t capacity, size_t* count, int* infinite) {
  if (!pc || !count) return set_error(TRA_NULL_POINTER, "null pointer argument");
  int status = TRA_OK;
  const int rc = guard([&] {
    tra::SpectrumOptions o;
    o.m_max = m_max;
    o.coulomb_as_printed = coulomb_as_printed != 0;
    const tra::BoundSpectrum s = tra::bound_spectrum(pc->pc, o);
    *count = s.levels.size();
    if (infinite) *infinite = s.infinite ? 1 : 0;
    if (s.levels.size() > capacity || (!energies && !s.levels.empty())) {
      status = TRA_BUFFER_TOO_SMALL;
      return;
    }
    for (std::size_t i = 0; i < s.levels.size(); ++i) energies[i] = s.levels[i].energy;
  });
  if (rc != TRA_OK) return rc;
  if (status != TRA_OK) return set_error(status, "energy buffer holds fewer than the levels");
  return TRA_OK;
}

int tra_continuum_threshold(const tra_case* pc, double* threshold) {
  if (!pc || !threshold) return set_error(TRA_NULL_POINTER, "null pointer argument");
  return guard([&] {
    *threshold = tra::has_continuum(pc->pc.kind) ? tra::continuum_threshold(pc->pc) : NAN;
  });
}

int tra_phase_shift(const tra_case* pc, double energy, double* delta) {
  if (!pc || !delta) return set_error(TRA_NULL_POINTER, "null pointer argument");
  return guard([&] { *delta = tra::phase_shift(pc->pc, energy); });
}

int tra_fd_oracle(const tra_case* pc, double r_lo, double r_hi, double h, unsigned levels,
                  double* energies) {
  if (!pc || !energies) return set_error(TRA_NULL_POINTER, "null pointer argument");
  return guard([&] {
    const tra::FdMesh mesh = h > 0.0 ? tra::FdMesh{r_lo, r_hi, h} : tra::default_mesh(pc->pc);
    tra::FdOptions o;
    o.levels = levels;
    const std::vector<double> v = tra::fd_oracle(pc->pc, mesh, o);
    for (std::size_t i = 0; i < v.size(); ++i) energies[i] = v[i];
  });
}

int tra_case_ode_params(const tra_case* pc, double energy, tra_ode_params* out) {
  if (!pc || !out) return set_error(TRA_NULL_POINTER, "null pointer argument");
  return guard([&] {
    const tra::OdeParams p = tra::to_ode_params(pc->pc, energy);
    *out = {p.equation == tra::Equation::Jacobi ? TRA_JACOBI : TRA_LAGUERRE,
            p.a, p.b, p.A_plus, p.A_minus, p.A_zero, p.A_one};
  });
}

int tra_case_basis(const tra_case* pc, const char** scenario, int* mu_sign, int* nu_sign,
                   double* free_index) {
  if (!pc || !scenario || !mu_sign || !nu_sign || !free_index)
    return set_error(TRA_NULL_POINTER, "null pointer argument");
  return guard([&] {
    const tra::BasisChoice c = tra::basis_choice(pc->pc);
    *scenario = tra::scenario_name(tra::scenario_of(pc->pc.kind)).data();
    *mu_sign = c.mu_sign == tra::Branch::Minus ? TRA_MINUS : TRA_PLUS;
    *nu_sign = c.nu_sign == tra::Branch::Minus ? TRA_MINUS : TRA_PLUS;
    *free_index = c.free_index;
  });
}

int tra_match_new(const tra_ode_params* params, const char* scenario, int mu_sign, int nu_sign,
                  double free_index, tra_match** out) {
  if (!params || !scenario || !out) return set_error(TRA_NULL_POINTER, "null pointer argument");
  return guard([&] {
    auto m = std::make_unique<tra_match>();
    m->match = tra::match_family(from_c(*params), parse_scenario(scenario),
                                 choice_of(mu_sign, nu_sign, free_index));
    describe(*m);
    *out = m.release();
  });
}

int tra_match_as(const tra_ode_params* params, const char* scenario, const char* family,
                 int mu_sign, int nu_sign, double free_index, tra_match** out) {
  if (!params || !scenario || !family || !out)
    return set_error(TRA_NULL_POINTER, "null pointer argument");
  return guard([&] {
    auto m = std::make_unique<tra_match>();
    m->match = tra::match_as(from_c(*params), parse_scenario(scenario), parse_family(family),
                             choice_of(mu_sign, nu_sign, free_index));
    describe(*m);
    *out = m.release();
  });
}

void tra_match_free(tra_match* match) { delete match; }

int tra_match_get_info(const tra_match* match, tra_match_info* info) {
  if (!match || !info) return set_error(TRA_NULL_POINTER, "null pointer argument");
  const tra::MatchResult& m = match->match;
  info->family = tra::family_name(tra::kind_of(m.family)).data();
  info->form = tra::form_name(m.recursion.form).data();
  info->scenario = tra::scenario_name(m.spec.scenario).data();
  info->spectrum_kind = tra::spectrum_kind_name(m.spectrum_kind).data();
  info->spectrum_size = m.spectrum_size;
  info->formal = m.formal ? 1 : 0;
  info->tra_variable = m.recursion.variable;
  info->family_variable = m.family_variable;
  info->map_scale = m.map.scale;
  info->map_offset = m.map.offset;
  info->alpha = m.spec.alpha;
  info->beta = m.spec.beta;
  info->mu = m.spec.mu;
  info->nu = m.spec.nu;
  info->param_count = match->names.size();
  return TRA_OK;
}

int tra_match_param(const tra_match* match, size_t i, const char** name, double* re, double* im) {
  if (!match || !name || !re || !im) return set_error(TRA_NULL_POINTER, "null pointer argument");
  if (i >= match->names.size()) return set_error(TRA_INVALID_ARGUMENT, "parameter index out of range");
  *name = match->names[i].c_str();
  *re = match->values[i].real();
  *im = match->values[i].imag();
  return TRA_OK;
}

int tra_family_new(const char* name, const char* const* keys, const double* values, size_t count,
                   tra_family** out) {
  if (!name || !out || (count > 0 && (!keys || !values)))
    return set_error(TRA_NULL_POINTER, "null pointer argument");
  return guard([&] {
    auto f = std::make_unique<tra_family>(
        tra_family{make_family(parse_family(name), Keys(keys, values, count))});
    tra::validate(f->family);
    *out = f.release();
  });
}

void tra_family_free(tra_family* family) { delete family; }

int tra_family_name(const tra_family* family, const char** name) {
  if (!family || !name) return set_error(TRA_NULL_POINTER, "null pointer argument");
  *name = tra::family_name(tra::kind_of(family->family)).data();
  return TRA_OK;
}

int tra_family_values(const tra_family* family, double arg, unsigned n_max, double* values) {
  if (!family || !values) return set_error(TRA_NULL_POINTER, "null pointer argument");
  return guard([&] {
    const unsigned finite = tra::finite_size(family->family);
    if (finite > 0 && n_max > finite)
      tra::fail(tra::ErrorCode::IndexOutOfValidity, "degree exceeds N = " + std::to_string(finite));
    if (n_max > tra::kMaxRecursionOrder)
      tra::fail(tra::ErrorCode::InvalidArgument, "degree exceeds the recursion limit");
    const tra::PolySequence seq =
        tra::run_recursion(tra::family_coeffs(family->family, n_max + 1),
                           tra::recursion_variable(family->family, arg), n_max);
    for (unsigned n = 0; n <= n_max; ++n) values[n] = seq.values[n];
  });
}

int tra_family_closed_form(const tra_family* family, unsigned n, double arg, double* value) {
  if (!family || !value) return set_error(TRA_NULL_POINTER, "null pointer argument");
  return guard([&] { *value = tra::closed_form(family->family, n, arg); });
}

int tra_wavefunction_bound(const tra_case* pc, unsigned m, size_t truncation, int check_tail,
                           double free_index, tra_wavefunction** out) {
  if (!pc || !out) return set_error(TRA_NULL_POINTER, "null pointer argument");
  return guard([&] {
    tra::AssembleOptions o{truncation, check_tail != 0};
    std::optional<double> fi;
    if (!std::isnan(free_index)) fi = free_index;
    *out = new tra_wavefunction{tra::bound_wavefunction(pc->pc, m, o, fi)};
  });
}

int tra_wavefunction_scattering(const tra_case* pc, double energy, size_t truncation,
                                int check_tail, double free_index, tra_wavefunction** out) {
  if (!pc || !out) return set_error(TRA_NULL_POINTER, "null pointer argument");
  return guard([&] {
    tra::AssembleOptions o{truncation, check_tail != 0};
    std::optional<double> fi;
    if (!std::isnan(free_index)) fi = free_index;
    *out = new tra_wavefunction{tra::scattering_wavefunction(pc->pc, energy, o, fi)};
  });
}

void tra_wavefunction_free(tra_wavefunction* wf) { delete wf; }

int tra_wavefunction_eval(const tra_wavefunction* wf, double r, double* psi) {
  if (!wf || !psi) return set_error(TRA_NULL_POINTER, "null pointer argument");
  return guard([&] { *psi = wf->wf(r); });
}

int tra_wavefunction_get_info(const tra_wavefunction* wf, tra_wavefunction_info* info) {
  if (!wf || !info) return set_error(TRA_NULL_POINTER, "null pointer argument");
  info->energy = wf->wf.energy;
  info->family = tra::family_name(tra::kind_of(wf->wf.match.family)).data();
  info->truncation = wf->wf.series.truncation;
  info->tail_ratio = wf->wf.series.tail_ratio;
  info->argument = wf->wf.series.argument;
  return TRA_OK;
}

int tra_wavefunction_residual(const tra_wavefunction* wf, const double* r, size_t count,
                              double* residual) {
  if (!wf || !residual || (count > 0 && !r)) return set_error(TRA_NULL_POINTER, "null pointer argument");
  return guard([&] {
    std::vector<double> xs;
    for (std::size_t i = 0; i < count; ++i) xs.push_back(tra::coordinate(wf->wf.pc, r[i]));
    *residual = tra::ode_residual(wf->wf.match.params, wf->wf.series, xs);
  });
}

int tra_verify_run(const char* suite, uint64_t seed, unsigned draws, tra_report** out) {
  if (!suite || !out) return set_error(TRA_NULL_POINTER, "null pointer argument");
  return guard([&] {
    const auto s = tra::parse_suite(suite);
    if (!s) tra::fail(tra::ErrorCode::InvalidArgument, std::string("unknown suite ") + suite);
    tra::VerifyOptions o;
    o.seed = seed;
    if (draws > 0) o.draws = draws;
    *out = new tra_report{tra::run_checks(*s, o)};
  });
}

void tra_report_free(tra_report* report) { delete report; }

size_t tra_report_count(const tra_report* report) { return report ? report->checks.size() : 0; }

int tra_report_row(const tra_report* report, size_t i, tra_check_row* row) {
  if (!report || !row) return set_error(TRA_NULL_POINTER, "null pointer argument");
  if (i >= report->checks.size()) return set_error(TRA_INVALID_ARGUMENT, "row index out of range");
  const tra::Check& c = report->checks[i];
  *row = {c.suite.c_str(), c.name.c_str(), c.value, c.tolerance, c.pass ? 1 : 0, c.detail.c_str()};
  return TRA_OK;
}

}  // extern "C"
