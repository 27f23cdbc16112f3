#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "json.hpp"

namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::ostringstream s;
  s << f.rdbuf();
  return s.str();
}

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("tra_cli_test_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  return dir / name;
}

Run run(const std::string& args, const std::string& env = "") {
  const fs::path out = scratch("stdout"), err = scratch("stderr");
  const std::string cmd = env + " " + TRA_CLI_PATH + " " + args + " >" + out.string() + " 2>" + err.string();
  const int status = std::system(cmd.c_str());
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, slurp(out), slurp(err)};
}

void round_trip(const std::string& args) {
  const Run first = run(args + " --format json");
  REQUIRE(first.code == 0);
  const fs::path cfg = scratch("config.json");
  std::ofstream(cfg, std::ios::binary) << first.out;
  const Run second = run("--config " + cfg.string());
  CHECK(second.code == 0);
  CHECK(second.out == first.out);
  const nlohmann::json doc = nlohmann::json::parse(first.out);
  CHECK(doc.contains("config"));
  CHECK(doc.contains("rows"));
  CHECK(doc.contains("diagnostics"));
}

}  // namespace

TEST_CASE("spectrum examples") {
  const Run c = run("spectrum --case coulomb --Z 1 --ell 0 --m-max 2");
  CHECK(c.code == 0);
  std::istringstream lines(c.out);
  std::string header, row0;
  std::getline(lines, header);
  std::getline(lines, row0);
  CHECK(header == "m,E,E_oracle,abs_diff");
  CHECK(row0.rfind("0,-0.5,", 0) == 0);
  CHECK(c.out.find('\r') == std::string::npos);

  const Run o = run("spectrum oscillator omega=1 ell=1 m_max=1 --format json");
  CHECK(o.code == 0);
  const auto doc = nlohmann::json::parse(o.out);
  CHECK(doc["rows"][0]["E"].get<double>() == 2.5);
  CHECK(doc["rows"].size() == 2);

  const Run m = run("spectrum morse lambda=1 V1=0.25");
  CHECK(m.code == 1);
  CHECK(m.err.find("NoBoundStates") != std::string::npos);
  const Run mj = run("spectrum morse lambda=1 V1=0.2 --format json");
  CHECK(mj.code == 1);
  CHECK(nlohmann::json::parse(mj.out)["diagnostics"]["error"]["code"] == "NoBoundStates");
}

TEST_CASE("tolerance failures exit with 2") {
  CHECK(run("spectrum coulomb Z=1 --tolerance 1e-15").code == 2);
}

TEST_CASE("phase shift and polynomial table examples") {
  const Run p = run("phaseshift coulomb Z=1 ell=0 E=0.5");
  CHECK(p.code == 0);
  CHECK(p.out.find("0.5,0.3016") != std::string::npos);
  const Run t = run("polytable meixner nu=0 tau=0.25 z=3 n_max=0");
  CHECK(t.code == 0);
  CHECK(t.out == "n,value\n0,1\n");
}

TEST_CASE("match summary names the family") {
  const Run m = run("match --equation laguerre --a 0.2 --b 0.4 --A-plus 0.6 --A-minus -0.5 --A0 0.7");
  CHECK(m.code == 0);
  CHECK(m.out.find("family,MeixnerPollaczek") != std::string::npos);
  CHECK(m.out.find("\ntheta,") != std::string::npos);
}

TEST_CASE("config errors exit with 1") {
  CHECK(run("").code == 1);
  CHECK(run("spectrum").code == 1);
  CHECK(run("spectrum coulomb Z=1 --frobnicate 2").code == 1);
  CHECK(run("phaseshift coulomb Z=1 E=0.5 E=0.3").code == 1);
  CHECK(run("spectrum coulomb Z=1 --format xml").code == 1);
  CHECK(run("wavefunction coulomb Z=1 m=0").code == 1);
}

TEST_CASE("outputs are byte-stable") {
  const std::string args = "phaseshift poschl_teller A=2 B=-30 --E-min 0.1 --E-max 3 --E-count 50";
  const Run a = run(args), b = run(args);
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(std::count(a.out.begin(), a.out.end(), '\n') == 51);
}

TEST_CASE("JSON outputs round-trip as configs") {
  round_trip("spectrum coulomb Z=1 ell=1 m_max=2");
  round_trip("phaseshift morse lambda=1 V1=2 --E-min 0.1 --E-max 2 --E-count 7");
  round_trip("wavefunction coulomb Z=1 m=1 --r-min 0.5 --r-max 12 --r-count 9");
  round_trip("wavefunction eckart A=2 B=-17.3 E=0.7 r=0.5 r=1 r=2");
  round_trip("polytable wilson a=0.6 a_im=0.4 b=0.6 b_im=-0.4 c=0.8 d=1.1 z=0.7 n_max=6");
  round_trip("verify newh");
  round_trip("match eckart A=2 B=-17.3 E=0.7");
}

TEST_CASE("truncation default and output path") {
  const Run a = run("wavefunction oscillator omega=1 m=0 r=1 --format json", "TRA_DEFAULT_TRUNCATION=30");
  CHECK(a.code == 0);
  CHECK(nlohmann::json::parse(a.out)["config"]["truncation"] == 30);
  const Run b = run("wavefunction oscillator omega=1 m=0 r=1 --format json");
  CHECK(nlohmann::json::parse(b.out)["config"]["truncation"] == 60);
  const fs::path out = scratch("table.csv");
  const Run c = run("polytable krawtchouk N=5 tau=0.3 z=2 n_max=5 --out " + out.string());
  CHECK(c.code == 0);
  CHECK(c.out.empty());
  CHECK(slurp(out).rfind("n,value\n0,1\n", 0) == 0);
}

TEST_CASE("verify exits with 0 when all checks pass") {
  const Run v = run("verify tra");
  CHECK(v.code == 0);
  CHECK(v.out.rfind("suite,name,value,tolerance,pass\n", 0) == 0);
}
