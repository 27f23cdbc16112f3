#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "tra/tra_c.h"

using json = nlohmann::ordered_json;

namespace {

struct Failure {
  std::string code;
  std::string message;
};

[[noreturn]] void config_error(const std::string& message) { throw Failure{"ConfigError", message}; }

void check(int rc) {
  if (rc == TRA_OK) return;
  const std::string code = tra_status_name(rc);
  std::string message = tra_last_error();
  if (message.rfind(code + ": ", 0) == 0) message.erase(0, code.size() + 2);
  throw Failure{code, message};
}

template <typename T, void (*Free)(T*)>
struct Deleter {
  void operator()(T* p) const { Free(p); }
};
using CasePtr = std::unique_ptr<tra_case, Deleter<tra_case, tra_case_free>>;
using MatchPtr = std::unique_ptr<tra_match, Deleter<tra_match, tra_match_free>>;
using FamilyPtr = std::unique_ptr<tra_family, Deleter<tra_family, tra_family_free>>;
using WavePtr = std::unique_ptr<tra_wavefunction, Deleter<tra_wavefunction, tra_wavefunction_free>>;
using ReportPtr = std::unique_ptr<tra_report, Deleter<tra_report, tra_report_free>>;

const std::set<std::string> kCommands = {"spectrum", "phaseshift", "wavefunction",
                                         "polytable", "verify", "match"};
const std::set<std::string> kTopLevel = {
    "command", "case", "family", "suite", "scenario", "m_max", "m", "n_max", "z",
    "truncation", "tolerance", "seed", "draws", "format", "free_index", "mu_sign",
    "nu_sign", "coulomb_as_printed", "energy", "energies", "radii", "params", "ode"};
const std::map<std::string, std::string> kOdeKeys = {
    {"equation", "equation"}, {"a", "a"},           {"b", "b"},
    {"A_plus", "A_plus"},     {"A_minus", "A_minus"}, {"A0", "A0"},
    {"A_zero", "A0"},         {"A1", "A1"},         {"A_one", "A1"}};

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<json>> rows;
  std::set<std::string> json_only;
  json diagnostics = json::object();
  bool within_tolerance = true;
};

json parse_scalar(const std::string& s) {
  if (s == "true") return true;
  if (s == "false") return false;
  if (!s.empty() && s.find_first_not_of("+-0123456789") == std::string::npos &&
      s.find_first_of("0123456789") != std::string::npos) {
    try {
      std::size_t used = 0;
      const long long v = std::stoll(s, &used);
      if (used == s.size()) return v;
    } catch (const std::exception&) {
    }
  }
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (!s.empty() && end == s.c_str() + s.size()) return v;
  return s;
}

double number(const json& v, const std::string& what) {
  if (!v.is_number()) config_error(what + " must be a number");
  return v.get<double>();
}

unsigned count_of(const json& v, const std::string& what) {
  const double d = number(v, what);
  if (d < 0.0 || d != std::floor(d) || d > 1e9) config_error(what + " must be a nonnegative integer");
  return static_cast<unsigned>(d);
}

std::string text(const json& v, const std::string& what) {
  if (!v.is_string()) config_error(what + " must be a string");
  return v.get<std::string>();
}

std::vector<double> grid(const json& v, const std::string& what) {
  if (!v.is_array() || v.empty()) config_error(what + " must be a nonempty list of numbers");
  std::vector<double> out;
  for (const json& x : v) out.push_back(number(x, what));
  for (std::size_t i = 1; i < out.size(); ++i)
    if (!(out[i] > out[i - 1])) config_error(what + " must be strictly increasing");
  return out;
}

json linspace(double lo, double hi, unsigned count, const std::string& what) {
  if (count < 2) config_error(what + " grid needs at least 2 points");
  if (!(hi > lo)) config_error(what + " grid needs max > min");
  json out = json::array();
  for (unsigned i = 0; i < count; ++i)
    out.push_back(i + 1 == count ? hi : lo + (hi - lo) * i / (count - 1));
  return out;
}

json sorted_params(const json& in) {
  if (in.is_null()) return json::object();
  if (!in.is_object()) config_error("params must be an object");
  std::map<std::string, json> tmp;
  for (auto it = in.begin(); it != in.end(); ++it) tmp[it.key()] = it.value();
  json out = json::object();
  for (auto& [k, v] : tmp) {
    number(v, k);
    out[k] = v;
  }
  return out;
}

unsigned default_truncation() {
  if (const char* env = std::getenv("TRA_DEFAULT_TRUNCATION")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end == env || *end != '\0' || v < 1) config_error("TRA_DEFAULT_TRUNCATION must be a positive integer");
    return static_cast<unsigned>(v);
  }
  return 60;
}

int branch_of(const std::string& s) {
  if (s == "plus" || s == "+") return TRA_PLUS;
  if (s == "minus" || s == "-") return TRA_MINUS;
  config_error("branch sign must be plus or minus");
}

CasePtr make_case(const json& cfg) {
  tra_case* raw = nullptr;
  check(tra_case_new(cfg["case"].get<std::string>().c_str(), &raw));
  CasePtr pc(raw);
  for (auto& [k, v] : cfg["params"].items()) check(tra_case_set(pc.get(), k.c_str(), v.get<double>()));
  check(tra_case_validate(pc.get()));
  return pc;
}

// Fills defaults and keeps only the keys the command uses, in a fixed order.
json normalize(const json& in) {
  if (!in.is_object()) config_error("config must be a JSON object");
  for (auto it = in.begin(); it != in.end(); ++it)
    if (!kTopLevel.count(it.key())) config_error("unknown config key " + it.key());
  if (!in.contains("command")) config_error("no command given");
  const std::string command = text(in["command"], "command");
  if (!kCommands.count(command)) config_error("unknown command " + command);

  auto get = [&](const char* key) -> const json& {
    static const json null;
    return in.contains(key) ? in[key] : null;
  };
  json out = json::object();
  out["command"] = command;
  auto put_case = [&] {
    if (get("case").is_null()) config_error(command + " needs a case");
    out["case"] = text(get("case"), "case");
    out["params"] = sorted_params(get("params"));
  };

  if (command == "spectrum") {
    put_case();
    out["m_max"] = get("m_max").is_null() ? 2u : count_of(get("m_max"), "m_max");
    out["tolerance"] = get("tolerance").is_null() ? 1e-3 : number(get("tolerance"), "tolerance");
    out["coulomb_as_printed"] =
        get("coulomb_as_printed").is_null() ? false : get("coulomb_as_printed").get<bool>();
  } else if (command == "phaseshift") {
    put_case();
    grid(get("energies"), "energies");
    out["energies"] = get("energies");
  } else if (command == "wavefunction") {
    put_case();
    if (!get("m").is_null() == !get("energy").is_null())
      config_error("wavefunction needs exactly one of m (bound state) and energy (continuum)");
    if (!get("m").is_null()) out["m"] = count_of(get("m"), "m");
    else out["energy"] = number(get("energy"), "energy");
    grid(get("radii"), "radii");
    out["radii"] = get("radii");
    out["truncation"] =
        get("truncation").is_null() ? default_truncation() : count_of(get("truncation"), "truncation");
    if (!get("free_index").is_null()) out["free_index"] = number(get("free_index"), "free_index");
  } else if (command == "polytable") {
    if (get("family").is_null()) config_error("polytable needs a family");
    out["family"] = text(get("family"), "family");
    out["params"] = sorted_params(get("params"));
    if (get("z").is_null()) config_error("polytable needs z");
    out["z"] = number(get("z"), "z");
    out["n_max"] = get("n_max").is_null() ? 10u : count_of(get("n_max"), "n_max");
  } else if (command == "verify") {
    out["suite"] = get("suite").is_null() ? std::string("all") : text(get("suite"), "suite");
    out["seed"] = get("seed").is_null() ? 20240607u : count_of(get("seed"), "seed");
    out["draws"] = get("draws").is_null() ? 100u : count_of(get("draws"), "draws");
  } else {
    const bool has_case = !get("case").is_null();
    const bool has_ode = !get("ode").is_null();
    if (has_case == has_ode) config_error("match needs exactly one of a case and raw ODE parameters");
    std::string equation;
    json defaults = {{"scenario", nullptr}, {"mu_sign", "plus"}, {"nu_sign", "plus"}, {"free_index", nullptr}};
    if (has_case) {
      put_case();
      if (get("energy").is_null()) config_error("match with a case needs energy");
      out["energy"] = number(get("energy"), "energy");
      CasePtr pc = make_case(out);
      tra_ode_params p;
      check(tra_case_ode_params(pc.get(), out["energy"].get<double>(), &p));
      equation = p.equation == TRA_JACOBI ? "jacobi" : "laguerre";
      const char* scenario = nullptr;
      int mu = 0, nu = 0;
      double fi = 0.0;
      check(tra_case_basis(pc.get(), &scenario, &mu, &nu, &fi));
      defaults = {{"scenario", scenario}, {"mu_sign", mu == TRA_MINUS ? "minus" : "plus"},
                  {"nu_sign", nu == TRA_MINUS ? "minus" : "plus"}, {"free_index", fi}};
    } else {
      const json& ode = get("ode");
      if (!ode.is_object()) config_error("ode must be an object");
      for (auto it = ode.begin(); it != ode.end(); ++it)
        if (!kOdeKeys.count(it.key()) || kOdeKeys.at(it.key()) != it.key())
          config_error("unknown ode key " + it.key());
      equation = ode.contains("equation") ? text(ode["equation"], "equation") : "laguerre";
      if (equation != "laguerre" && equation != "jacobi") config_error("equation must be laguerre or jacobi");
      json o = json::object();
      o["equation"] = equation;
      for (const char* k : {"a", "b", "A_plus", "A_minus", "A0", "A1"})
        o[k] = ode.contains(k) ? number(ode[k], k) : 0.0;
      out["ode"] = o;
      defaults["scenario"] = equation == "jacobi" ? "B12a" : "A7a";
    }
    for (const char* k : {"scenario", "mu_sign", "nu_sign"})
      out[k] = get(k).is_null() ? defaults[k] : json(text(get(k), k));
    branch_of(out["mu_sign"]);
    branch_of(out["nu_sign"]);
    if (!get("free_index").is_null()) out["free_index"] = number(get("free_index"), "free_index");
    else if (!defaults["free_index"].is_null()) out["free_index"] = defaults["free_index"];
    if (!get("family").is_null()) out["family"] = text(get("family"), "family");
  }

  out["format"] = get("format").is_null() ? std::string("csv") : text(get("format"), "format");
  if (out["format"] != "csv" && out["format"] != "json") config_error("format must be csv or json");

  for (auto it = in.begin(); it != in.end(); ++it)
    if (!out.contains(it.key())) config_error("key " + it.key() + " is not used by " + command);
  return out;
}

double optional_number(const json& cfg, const char* key) {
  return cfg.contains(key) ? cfg[key].get<double>() : NAN;
}

Table cmd_spectrum(const json& cfg) {
  CasePtr pc = make_case(cfg);
  const unsigned m_max = cfg["m_max"];
  std::vector<double> energies(m_max + 1);
  std::size_t count = 0;
  int infinite = 0;
  check(tra_bound_spectrum(pc.get(), m_max, cfg["coulomb_as_printed"].get<bool>() ? 1 : 0,
                           energies.data(), energies.size(), &count, &infinite));
  energies.resize(count);

  Table t;
  t.header = {"m", "E", "E_oracle", "abs_diff"};
  std::vector<double> oracle(count, NAN);
  const int rc = count ? tra_fd_oracle(pc.get(), 0.0, 0.0, 0.0, static_cast<unsigned>(count), oracle.data())
                       : TRA_OK;
  if (rc != TRA_OK) {
    t.diagnostics["oracle_error"] = {{"code", tra_status_name(rc)}, {"message", tra_last_error()}};
    t.within_tolerance = false;
  }
  const double tol = cfg["tolerance"];
  double worst = 0.0;
  for (std::size_t m = 0; m < count; ++m) {
    const double diff = std::abs(energies[m] - oracle[m]);
    const double rel = diff / std::max(std::abs(energies[m]), 1e-300);
    if (!(rel <= tol)) t.within_tolerance = false;
    worst = std::max(worst, std::isnan(rel) ? INFINITY : rel);
    t.rows.push_back({static_cast<unsigned>(m), energies[m], oracle[m], diff});
  }
  double threshold = NAN;
  check(tra_continuum_threshold(pc.get(), &threshold));
  t.diagnostics["infinite_spectrum"] = infinite != 0;
  t.diagnostics["continuum_threshold"] = threshold;
  t.diagnostics["max_rel_diff"] = worst;
  t.diagnostics["within_tolerance"] = t.within_tolerance;
  return t;
}

Table cmd_phaseshift(const json& cfg) {
  CasePtr pc = make_case(cfg);
  Table t;
  t.header = {"E", "delta"};
  for (const json& e : cfg["energies"]) {
    double delta = 0.0;
    check(tra_phase_shift(pc.get(), e.get<double>(), &delta));
    t.rows.push_back({e, delta});
  }
  return t;
}

Table cmd_wavefunction(const json& cfg) {
  CasePtr pc = make_case(cfg);
  const double free_index = optional_number(cfg, "free_index");
  const std::size_t truncation = cfg["truncation"].get<unsigned>();
  tra_wavefunction* raw = nullptr;
  Table t;
  if (cfg.contains("m")) {
    const unsigned m = cfg["m"];
    const char* name = nullptr;
    check(tra_case_name(pc.get(), &name));
    const std::string kind = name;
    if (!cfg["params"].contains("lambda")) {
      double scale = NAN;
      if (kind == "Coulomb") {
        double Z = 0.0, ell = 0.0;
        check(tra_case_get(pc.get(), "Z", &Z));
        check(tra_case_get(pc.get(), "ell", &ell));
        scale = std::abs(Z) / (m + ell + 1.0);
      } else if (kind == "IsotropicOscillator") {
        double omega = 0.0;
        check(tra_case_get(pc.get(), "omega", &omega));
        scale = std::sqrt(2.0 * omega);
      }
      if (!std::isnan(scale)) {
        check(tra_case_set(pc.get(), "lambda", scale));
        t.diagnostics["basis_scale"] = scale;
      }
    }
    check(tra_wavefunction_bound(pc.get(), m, truncation, 1, free_index, &raw));
  } else {
    check(tra_wavefunction_scattering(pc.get(), cfg["energy"].get<double>(), truncation, 0,
                                      free_index, &raw));
  }
  WavePtr wf(raw);
  tra_wavefunction_info info;
  check(tra_wavefunction_get_info(wf.get(), &info));
  t.header = {"r", "psi"};
  std::vector<double> radii;
  for (const json& r : cfg["radii"]) {
    double psi = 0.0;
    check(tra_wavefunction_eval(wf.get(), r.get<double>(), &psi));
    t.rows.push_back({r, psi});
    radii.push_back(r.get<double>());
  }
  t.diagnostics["energy"] = info.energy;
  t.diagnostics["family"] = info.family;
  t.diagnostics["truncation"] = info.truncation;
  t.diagnostics["tail_ratio"] = info.tail_ratio;
  double residual = NAN;
  const int rc = tra_wavefunction_residual(wf.get(), radii.data(), radii.size(), &residual);
  if (rc == TRA_OK) t.diagnostics["max_residual"] = residual;
  else t.diagnostics["residual_error"] = {{"code", tra_status_name(rc)}, {"message", tra_last_error()}};
  return t;
}

Table cmd_polytable(const json& cfg) {
  std::vector<std::string> keys;
  std::vector<double> values;
  for (auto& [k, v] : cfg["params"].items()) {
    keys.push_back(k);
    values.push_back(v.get<double>());
  }
  std::vector<const char*> key_ptrs;
  for (const std::string& k : keys) key_ptrs.push_back(k.c_str());
  tra_family* raw = nullptr;
  check(tra_family_new(cfg["family"].get<std::string>().c_str(), key_ptrs.data(), values.data(),
                       keys.size(), &raw));
  FamilyPtr fam(raw);
  const unsigned n_max = cfg["n_max"];
  const double z = cfg["z"];
  std::vector<double> p(n_max + 1);
  check(tra_family_values(fam.get(), z, n_max, p.data()));
  Table t;
  t.header = {"n", "value"};
  double worst = 0.0;
  bool closed = true;
  for (unsigned n = 0; n <= n_max; ++n) {
    t.rows.push_back({n, p[n]});
    double cf = 0.0;
    if (closed && tra_family_closed_form(fam.get(), n, z, &cf) == TRA_OK)
      worst = std::max(worst, std::abs(p[n] - cf) / std::max(1.0, std::abs(cf)));
    else
      closed = false;
  }
  const char* name = nullptr;
  check(tra_family_name(fam.get(), &name));
  t.diagnostics["family"] = name;
  t.diagnostics["closed_form_max_rel_dev"] = closed ? json(worst) : json(nullptr);
  return t;
}

Table cmd_verify(const json& cfg) {
  tra_report* raw = nullptr;
  check(tra_verify_run(cfg["suite"].get<std::string>().c_str(), cfg["seed"].get<std::uint64_t>(),
                       cfg["draws"].get<unsigned>(), &raw));
  ReportPtr report(raw);
  Table t;
  t.header = {"suite", "name", "value", "tolerance", "pass", "detail"};
  t.json_only = {"detail"};
  std::size_t failed = 0;
  for (std::size_t i = 0; i < tra_report_count(report.get()); ++i) {
    tra_check_row row;
    check(tra_report_row(report.get(), i, &row));
    t.rows.push_back({row.suite, row.name, row.value, row.tolerance, row.pass != 0, row.detail});
    if (!row.pass) ++failed;
  }
  t.within_tolerance = failed == 0;
  t.diagnostics["checks"] = t.rows.size();
  t.diagnostics["failed"] = failed;
  return t;
}

Table cmd_match(const json& cfg) {
  tra_ode_params p{};
  if (cfg.contains("ode")) {
    const json& o = cfg["ode"];
    p = {o["equation"] == "jacobi" ? TRA_JACOBI : TRA_LAGUERRE,
         o["a"], o["b"], o["A_plus"], o["A_minus"], o["A0"], o["A1"]};
  } else {
    CasePtr pc = make_case(cfg);
    check(tra_case_ode_params(pc.get(), cfg["energy"].get<double>(), &p));
  }
  const std::string scenario = cfg["scenario"];
  const int mu = branch_of(cfg["mu_sign"]), nu = branch_of(cfg["nu_sign"]);
  const double free_index = optional_number(cfg, "free_index");
  tra_match* raw = nullptr;
  if (cfg.contains("family"))
    check(tra_match_as(&p, scenario.c_str(), cfg["family"].get<std::string>().c_str(), mu, nu,
                       free_index, &raw));
  else
    check(tra_match_new(&p, scenario.c_str(), mu, nu, free_index, &raw));
  MatchPtr match(raw);
  tra_match_info info;
  check(tra_match_get_info(match.get(), &info));
  Table t;
  t.header = {"key", "value"};
  t.rows = {{"family", info.family},
            {"form", info.form},
            {"scenario", info.scenario},
            {"spectrum_kind", info.spectrum_kind},
            {"spectrum_size", info.spectrum_size},
            {"formal", info.formal != 0},
            {"tra_variable", info.tra_variable},
            {"family_variable", info.family_variable},
            {"map_scale", info.map_scale},
            {"map_offset", info.map_offset},
            {"alpha", info.alpha},
            {"beta", info.beta},
            {"basis_mu", info.mu},
            {"basis_nu", info.nu}};
  for (std::size_t i = 0; i < info.param_count; ++i) {
    const char* name = nullptr;
    double re = 0.0, im = 0.0;
    check(tra_match_param(match.get(), i, &name, &re, &im));
    t.rows.push_back({name, re});
    if (im != 0.0) t.rows.push_back({std::string(name) + "_im", im});
  }
  return t;
}

std::string cell(const json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_boolean()) return v.get<bool>() ? "1" : "0";
  if (v.is_number_integer()) return std::to_string(v.get<long long>());
  if (v.is_number_unsigned()) return std::to_string(v.get<unsigned long long>());
  if (v.is_null()) return "nan";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v.get<double>());
  return buf;
}

std::string render(const json& cfg, const Table& t, const std::string& format) {
  std::ostringstream os;
  if (format == "csv") {
    std::vector<std::size_t> cols;
    for (std::size_t i = 0; i < t.header.size(); ++i)
      if (!t.json_only.count(t.header[i])) cols.push_back(i);
    for (std::size_t c = 0; c < cols.size(); ++c) os << (c ? "," : "") << t.header[cols[c]];
    os << '\n';
    for (const auto& row : t.rows) {
      for (std::size_t c = 0; c < cols.size(); ++c) os << (c ? "," : "") << cell(row[cols[c]]);
      os << '\n';
    }
    return os.str();
  }
  json doc = json::object();
  doc["config"] = cfg;
  doc["rows"] = json::array();
  for (const auto& row : t.rows) {
    json r = json::object();
    for (std::size_t i = 0; i < t.header.size(); ++i) r[t.header[i]] = row[i];
    doc["rows"].push_back(r);
  }
  doc["diagnostics"] = t.diagnostics;
  return doc.dump(2) + "\n";
}

void emit(const std::string& body, const std::string& path) {
  if (path.empty()) {
    std::cout << body << std::flush;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) config_error("cannot open " + path);
  f << body;
}

std::string route(const std::string& command, const std::string& key) {
  if (key == "E") return command == "phaseshift" ? "energies" : "energy";
  if (key == "r") return "radii";
  if (command == "match" && kOdeKeys.count(key)) return "ode." + kOdeKeys.at(key);
  if (kTopLevel.count(key) && key != "params" && key != "ode") return key;
  return "params." + key;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Tridiagonal representation solutions: spectra, phase shifts, wavefunctions, polynomial tables"};
  app.set_version_flag("--version", "tra_cli 1.0");

  std::vector<std::string> positional;
  std::string config_path, out_path;
  std::optional<std::string> format, case_name, family, suite, scenario, mu_sign, nu_sign, equation;
  std::map<std::string, std::optional<double>> num_flags;
  std::optional<unsigned> m_max, m, n_max, truncation, draws, e_count, r_count;
  std::optional<std::uint64_t> seed;
  std::optional<double> e_min, e_max, r_min, r_max;
  std::vector<double> e_list, r_list;
  std::vector<std::string> param_list;
  bool as_printed = false;

  app.add_option("args", positional, "command [case|family|suite] [key=value ...]");
  app.add_option("--config", config_path, "JSON config (bare or a previous JSON output)");
  app.add_option("--out", out_path, "output path (default standard output)");
  app.add_option("--format", format, "csv or json");
  app.add_option("--case", case_name, "coulomb, oscillator, morse, poschl_teller, scarf, eckart");
  app.add_option("--family", family, "polynomial family for polytable, or a forced family for match");
  app.add_option("--suite", suite, "verify suite");
  for (const char* k : {"Z", "lambda", "L", "omega", "V1", "V2", "A", "B", "z", "tolerance",
                        "free-index", "a", "b", "A-plus", "A-minus", "A0", "A1"})
    app.add_option(std::string("--") + k, num_flags[k]);
  app.add_option("--ell", num_flags["ell"], "angular momentum");
  app.add_option("--m-max", m_max, "highest level for spectrum");
  app.add_option("--m", m, "bound state index for wavefunction");
  app.add_option("--n-max", n_max, "highest degree for polytable");
  app.add_option("--truncation", truncation, "series truncation (default 60 or TRA_DEFAULT_TRUNCATION)");
  app.add_option("--E", e_list, "energies");
  app.add_option("--E-min", e_min);
  app.add_option("--E-max", e_max);
  app.add_option("--E-count", e_count);
  app.add_option("--r", r_list, "radii");
  app.add_option("--r-min", r_min);
  app.add_option("--r-max", r_max);
  app.add_option("--r-count", r_count);
  app.add_option("--param", param_list, "family or case parameter key=value");
  app.add_option("--seed", seed);
  app.add_option("--draws", draws);
  app.add_option("--scenario", scenario, "A7a, A7b, B12a, B12b, B12c");
  app.add_option("--mu-sign", mu_sign, "plus or minus");
  app.add_option("--nu-sign", nu_sign, "plus or minus");
  app.add_option("--equation", equation, "laguerre or jacobi");
  app.add_flag("--coulomb-as-printed", as_printed, "Coulomb levels with the unsquared denominator");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  std::string fmt = format.value_or("csv");
  json cfg;
  try {
    json in = json::object();
    if (!config_path.empty()) {
      std::ifstream f(config_path);
      if (!f) config_error("cannot open " + config_path);
      try {
        in = json::parse(f);
      } catch (const json::exception& e) {
        config_error(std::string("bad JSON in ") + config_path + ": " + e.what());
      }
      if (in.is_object() && in.contains("config") && in.contains("rows")) in = json(in["config"]);
      if (!in.is_object()) config_error("config must be a JSON object");
    }
    if (!format && in.contains("format") && in["format"].is_string()) fmt = in["format"];

    std::size_t next = 0;
    if (next < positional.size() && kCommands.count(positional[next])) in["command"] = positional[next++];
    if (!in.contains("command")) config_error("no command given");
    const std::string command = text(in["command"], "command");

    std::vector<std::pair<std::string, json>> assigns;
    if (next < positional.size() && positional[next].find('=') == std::string::npos) {
      const std::string slot = command == "polytable" ? "family" : command == "verify" ? "suite" : "case";
      assigns.emplace_back(slot, positional[next++]);
    }
    for (; next < positional.size(); ++next) {
      const std::string& tok = positional[next];
      const auto eq = tok.find('=');
      if (eq == std::string::npos || eq == 0) config_error("expected key=value, got " + tok);
      assigns.emplace_back(tok.substr(0, eq), parse_scalar(tok.substr(eq + 1)));
    }
    for (const std::string& tok : param_list) {
      const auto eq = tok.find('=');
      if (eq == std::string::npos || eq == 0) config_error("--param expects key=value, got " + tok);
      json v = parse_scalar(tok.substr(eq + 1));
      if (!v.is_number()) config_error("--param " + tok + " needs a number");
      assigns.emplace_back("params." + tok.substr(0, eq), v);
    }
    if (case_name) assigns.emplace_back("case", *case_name);
    if (family) assigns.emplace_back("family", *family);
    if (suite) assigns.emplace_back("suite", *suite);
    if (scenario) assigns.emplace_back("scenario", *scenario);
    if (mu_sign) assigns.emplace_back("mu_sign", *mu_sign);
    if (nu_sign) assigns.emplace_back("nu_sign", *nu_sign);
    if (equation) assigns.emplace_back("equation", *equation);
    if (format) assigns.emplace_back("format", *format);
    if (as_printed) assigns.emplace_back("coulomb_as_printed", true);
    for (auto& [k, v] : num_flags) {
      if (!v) continue;
      std::string key = k;
      for (char& c : key)
        if (c == '-') c = '_';
      assigns.emplace_back(key, *v);
    }
    if (m_max) assigns.emplace_back("m_max", *m_max);
    if (m) assigns.emplace_back("m", *m);
    if (n_max) assigns.emplace_back("n_max", *n_max);
    if (truncation) assigns.emplace_back("truncation", *truncation);
    if (seed) assigns.emplace_back("seed", *seed);
    if (draws) assigns.emplace_back("draws", *draws);

    json energies = json::array(), radii = json::array();
    for (double e : e_list) energies.push_back(e);
    for (double r : r_list) radii.push_back(r);
    for (auto& [k, v] : assigns) {
      const std::string path = k.rfind("params.", 0) == 0 ? k : route(command, k);
      if (path == "energies") energies.push_back(v);
      else if (path == "radii") radii.push_back(v);
      else if (path.rfind("params.", 0) == 0) in["params"][path.substr(7)] = v;
      else if (path.rfind("ode.", 0) == 0) in["ode"][path.substr(4)] = v;
      else in[path] = v;
    }
    if (e_min || e_max || e_count) {
      if (!energies.empty()) config_error("give either an energy list or an energy grid");
      if (!e_min || !e_max || !e_count) config_error("an energy grid needs --E-min, --E-max and --E-count");
      energies = linspace(*e_min, *e_max, *e_count, "energy");
    }
    if (r_min || r_max || r_count) {
      if (!radii.empty()) config_error("give either a radius list or a radius grid");
      if (!r_min || !r_max || !r_count) config_error("a radius grid needs --r-min, --r-max and --r-count");
      radii = linspace(*r_min, *r_max, *r_count, "radius");
    }
    if (!energies.empty()) {
      if (command == "phaseshift") in["energies"] = energies;
      else if (energies.size() == 1) in["energy"] = energies[0];
      else config_error(command + " takes a single energy");
    }
    if (!radii.empty()) in["radii"] = radii;

    cfg = normalize(in);
    fmt = cfg["format"];

    Table t;
    if (command == "spectrum") t = cmd_spectrum(cfg);
    else if (command == "phaseshift") t = cmd_phaseshift(cfg);
    else if (command == "wavefunction") t = cmd_wavefunction(cfg);
    else if (command == "polytable") t = cmd_polytable(cfg);
    else if (command == "verify") t = cmd_verify(cfg);
    else t = cmd_match(cfg);

    emit(render(cfg, t, fmt), out_path);
    return t.within_tolerance ? 0 : 2;
  } catch (const Failure& f) {
    std::cerr << "tra_cli: " << f.code << ": " << f.message << "\n";
    if (fmt == "json") {
      json doc = json::object();
      doc["config"] = cfg.is_null() ? json::object() : cfg;
      doc["rows"] = json::array();
      doc["diagnostics"] = {{"error", {{"code", f.code}, {"message", f.message}}}};
      try {
        emit(doc.dump(2) + "\n", out_path);
      } catch (const Failure&) {
      }
    }
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "tra_cli: ConfigError: " << e.what() << "\n";
    return 1;
  }
}
