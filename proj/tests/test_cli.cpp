#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <fstream>
#include <numbers>
#include <sstream>

#include <unistd.h>

#include "cli.hpp"
#include "io.hpp"

using namespace dwl;
using io::Json;
namespace fs = std::filesystem;
constexpr double kPi = std::numbers::pi;

namespace {

struct Result {
  int code = 0;
  std::string out, err;
  Json json() const { return Json::parse(out); }
};

Result dwl_run(std::vector<std::string> args, const cli::Hooks& hooks = {}) {
  std::ostringstream out, err;
  Result r;
  r.code = cli::run(args, out, err, hooks);
  r.out = out.str();
  r.err = err.str();
  return r;
}

struct TempDir {
  fs::path path;
  TempDir() {
    static int counter = 0;
    path = fs::temp_directory_path() / ("dwl_cli_test_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string operator/(const std::string& s) const { return (path / s).string(); }
};

std::vector<std::vector<double>> read_csv(const std::string& path) {
  std::ifstream in(path);
  std::string line;
  std::getline(in, line);
  std::vector<std::vector<double>> rows;
  while (std::getline(in, line)) {
    std::vector<double> row;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) row.push_back(std::stod(cell));
    rows.push_back(row);
  }
  return rows;
}

struct ScopedEnv {
  std::string name;
  ScopedEnv(const std::string& n, const std::string& v) : name(n) { ::setenv(n.c_str(), v.c_str(), 1); }
  ~ScopedEnv() { ::unsetenv(name.c_str()); }
};

// Points of a sampled surface in the JSON input format.
Json surface_points(int nu, int nv, double lu, double lv, const std::function<std::array<double, 3>(double, double)>& x) {
  Json pts = Json::array();
  for (int i = 0; i < nu; ++i)
    for (int j = 0; j < nv; ++j) {
      const auto p = x(i * lu / nu, j * lv / nv);
      pts.push_back({p[0], p[1], p[2]});
    }
  return {{"ambient", 3}, {"Nu", nu}, {"Nv", nv}, {"Lu", lu}, {"Lv", lv}, {"points", pts}};
}

}  // namespace

TEST_CASE("clifford-selfcheck") {
  SUBCASE("n = 4 passes all six suites") {
    const Result r = dwl_run({"clifford-selfcheck", "--dim", "4"});
    CHECK(r.code == 0);
    const Json j = r.json();
    CHECK(j["passed"] == true);
    REQUIRE(j["suites"].size() == 6);
    for (const Json& s : j["suites"]) CHECK(s["passed"] == true);
  }
  SUBCASE("n = 0 and n = 9 are usage errors") {
    CHECK(dwl_run({"clifford-selfcheck", "--dim", "0"}).code == 64);
    CHECK(dwl_run({"clifford-selfcheck", "--dim", "9"}).code == 64);
  }
  SUBCASE("sign-flipped product reports the offending blades") {
    cli::Hooks hooks;
    hooks.product = [](const clifford::MultiVector& a, const clifford::MultiVector& b) {
      const auto single = [](const clifford::MultiVector& m, std::uint32_t mask) {
        return m.terms().size() == 1 && m.terms().begin()->first.mask() == mask;
      };
      clifford::MultiVector p = a * b;
      if (single(a, 2) && single(b, 1)) p = p * -1.0;
      return p;
    };
    const Result r = dwl_run({"clifford-selfcheck", "--dim", "4"}, hooks);
    CHECK(r.code == 2);
    const Json j = r.json();
    CHECK(j["passed"] == false);
    const Json& anti = j["suites"][0];
    CHECK(anti["name"] == "anticommutation");
    CHECK(anti["passed"] == false);
    CHECK(anti["counterexample"]["blades"] == Json::parse("[[1],[2]]"));
    CHECK(r.err.find("anticommutation") != std::string::npos);
  }
}

TEST_CASE("curve subcommand") {
  TempDir tmp;
  SUBCASE("circle spectrum: central antiperiodic eigenvalues are integers") {
    const Result r = dwl_run({"curve", "spectrum", "--set", R"(input={"shape":"circle","samples":128})", "--sector",
                              "antiperiodic", "--out", tmp / "run"});
    REQUIRE(r.code == 0);
    const auto rows = read_csv(tmp / "run/spectrum_antiperiodic.csv");
    REQUIRE(rows.size() == 256);
    std::vector<double> lam;
    for (const auto& row : rows) lam.push_back(row[1]);
    std::sort(lam.begin(), lam.end(), [](double a, double b) { return std::abs(a) < std::abs(b); });
    for (int i = 0; i < 20; ++i) CHECK(std::abs(lam[i] - std::round(lam[i])) < 1e-10);
    CHECK(r.json()["sectors"][0]["kernel_dim"] == 2);
    CHECK(fs::exists(tmp / "run/manifest.json"));
  }
  SUBCASE("figure-eight rotation number") {
    const Result r = dwl_run({"curve", "analyze", "--set", R"(input={"shape":"figure_eight"})"});
    REQUIRE(r.code == 0);
    CHECK(r.json()["rotation_number"] == 0);
  }
  SUBCASE("point input round trip") {
    Json pts = Json::array();
    for (int i = 0; i < 64; ++i) pts.push_back({2 * std::cos(2 * kPi * i / 64), 2 * std::sin(2 * kPi * i / 64)});
    std::ofstream(tmp / "c.json") << Json{{"ambient", 2}, {"closed", true}, {"points", pts}}.dump();
    const Result r = dwl_run({"curve", "analyze", "--set", "input=" + Json(tmp / "c.json").dump(), "--out", tmp / "pts"});
    REQUIRE(r.code == 0);
    const Json j = r.json();
    CHECK(j["rotation_number"] == 1);
    CHECK(std::abs(j["euler_bernoulli"].get<double>() - kPi) < 1e-3);
    CHECK(fs::exists(tmp / "pts/curvature.csv"));
  }
  SUBCASE("schema violations exit 64") {
    CHECK(dwl_run({"curve", "analyze", "--set", R"(input={"ambient":2,"closed":true})"}).code == 64);
    CHECK(dwl_run({"curve", "analyze", "--set", R"(input={"shape":"circle"})", "--set", "colour=1"}).code == 64);
    CHECK(dwl_run({"curve", "analyze", "--set", R"(input={"shape":"spiral"})"}).code == 64);
    CHECK(dwl_run({"curve", "analyze", "--set", R"(input={"shape":"circle","params":{"radius":"big"}})"}).code == 64);
    CHECK(dwl_run({"curve", "analyze"}).code == 64);
    CHECK(dwl_run({"curve", "twist", "--set", R"(input={"shape":"circle"})"}).code == 64);
    CHECK(dwl_run({"curve", "spectrum", "--set", R"(input={"shape":"circle"})", "--sector", "sideways"}).code == 64);
  }
  SUBCASE("missing files exit 66") {
    CHECK(dwl_run({"curve", "analyze", "--config", tmp / "absent.json"}).code == 66);
    CHECK(dwl_run({"curve", "analyze", "--set", "input=" + Json(tmp / "absent.json").dump()}).code == 66);
  }
  SUBCASE("flow writes the series and the curve family") {
    const Result r = dwl_run({"curve", "flow", "--set", R"(input={"shape":"ellipse","params":{"a":1,"b":0.7},"samples":64})",
                              "--set", "flow.T=0.01", "--set", "flow.snapshots=2", "--out", tmp / "flow"});
    REQUIRE(r.code == 0);
    CHECK(read_csv(tmp / "flow/flow_series.csv").size() == 3);
    const Json fam = io::read_json_file(tmp / "flow/curve_family.json");
    CHECK(fam["snapshots"].size() == 3);
    const Json be = r.json()["bending_energy"];
    CHECK(std::abs(be[2].get<double>() - be[0].get<double>()) < 1e-6 * be[0].get<double>());
  }
}

TEST_CASE("surface subcommand") {
  SUBCASE("Clifford torus functionals") {
    const Result r = dwl_run({"surface", "analyze", "--set", R"(input={"shape":"clifford_torus"})"});
    REQUIRE(r.code == 0);
    const Json j = r.json();
    CHECK(std::abs(j["willmore"].get<double>() / (2 * kPi * kPi) - 1) < 1e-3);
    CHECK(std::abs(j["area"].get<double>() / (2 * kPi * kPi) - 1) < 1e-3);
    CHECK(j["chi"] == 0);
  }
  SUBCASE("cylinder kernel in (antiperiodic, periodic)") {
    const Result r = dwl_run({"surface", "spectrum", "--set", R"(input={"shape":"cylinder","Nu":16,"Nv":16})", "--sector",
                              "antiperiodic", "--sector", "periodic"});
    REQUIRE(r.code == 0);
    const Json j = r.json();
    CHECK(j["smallest_sv"][0].get<double>() < 1e-8);
    CHECK(j["kernel_dim"] == 2);
    CHECK(j["convention"] == "thm44_sigma3");
    CHECK(j["residuals"]["zero_mode"].get<double>() < 1e-8);
  }
  SUBCASE("sheared grid is not conformal") {
    const Json in = surface_points(16, 16, 2 * kPi, 2 * kPi, [](double u, double v) {
      return std::array<double, 3>{std::cos(u), std::sin(u), v + 0.5 * u};
    });
    const Result r = dwl_run({"surface", "analyze", "--set", "input=" + in.dump()});
    CHECK(r.code == 2);
    CHECK(r.err.find("node") != std::string::npos);
  }
  SUBCASE("surface sectors need one entry per axis") {
    CHECK(dwl_run({"surface", "spectrum", "--set", R"(input={"shape":"cylinder","Nu":8,"Nv":8})", "--sector",
                   "periodic"})
              .code == 64);
  }
}

TEST_CASE("mkdv subcommand") {
  TempDir tmp;
  const Result r = dwl_run({"mkdv", "--set", R"(v0={"kind":"cosine","mean":0.5,"amplitude":0.3})", "--set", "N=64", "--set",
                            "T=0.05", "--set", "snapshots=2", "--set", "curve_family=true", "--out", tmp / "m"});
  REQUIRE(r.code == 0);
  const Json j = r.json();
  CHECK(j["int_v2_relative_drift"].get<double>() < 1e-8);
  CHECK(j["isospectral"]["max_drift"].get<double>() < 1e-4);
  CHECK(read_csv(tmp / "m/series.csv").size() == 3);
  CHECK(read_csv(tmp / "m/spectra.csv").size() == 30);
  CHECK(fs::exists(tmp / "m/curve_family.json"));
  CHECK(dwl_run({"mkdv", "--set", R"(v0={"kind":"soliton","mean":1})"}).code == 64);
  CHECK(dwl_run({"mkdv", "--set", R"(v0={"kind":"cosine"})", "--set", "dt_factor=2"}).code == 64);
}

TEST_CASE("report bundle") {
  TempDir tmp;
  REQUIRE(dwl_run({"curve", "analyze", "--set", R"(input={"shape":"circle","samples":64})", "--out", tmp / "b/a"}).code == 0);
  REQUIRE(dwl_run({"surface", "analyze", "--set", R"(input={"shape":"clifford_torus","Nu":16,"Nv":16})", "--out",
                   tmp / "b/b"})
              .code == 0);

  const Result first = dwl_run({"report", tmp / "b"});
  REQUIRE(first.code == 0);
  const Json rec = first.json();
  CHECK(rec["entries"].size() == 2);
  CHECK(rec["entries"][0]["run"] == "a");
  CHECK(rec["entries"][0]["config_hash"] == io::sha256_hex(io::dump(rec["entries"][0]["config"])));
  CHECK(dwl_run({"report", tmp / "b"}).out == first.out);

  SUBCASE("tampered CSV") {
    std::ofstream(tmp / "b/a/curvature.csv", std::ios::app) << "0,0,0,0,0\n";
    CHECK(dwl_run({"report", tmp / "b"}).code == 65);
  }
  SUBCASE("deleted output") {
    fs::remove(tmp / "b/b/field.csv");
    CHECK(dwl_run({"report", tmp / "b"}).code == 66);
  }
  SUBCASE("empty or absent bundle") {
    fs::create_directories(tmp / "empty");
    CHECK(dwl_run({"report", tmp / "empty"}).code == 66);
    CHECK(dwl_run({"report", tmp / "nowhere"}).code == 66);
  }
  SUBCASE("report file") {
    REQUIRE(dwl_run({"report", tmp / "b", "--out", tmp / "rep"}).code == 0);
    CHECK(io::read_file(tmp / "rep/report.json") == first.out);
  }
}

TEST_CASE("determinism") {
  TempDir tmp;
  const std::vector<std::string> knot = {"curve", "analyze", "--set",
                                         R"(input={"shape":"torus_knot","params":{"p":2,"q":3},"samples":200})"};
  SUBCASE("repeated runs are byte-identical") {
    auto with_out = [&](std::vector<std::string> a, const std::string& dir) {
      a.push_back("--out");
      a.push_back(dir);
      return a;
    };
    REQUIRE(dwl_run(with_out(knot, tmp / "r1")).code == 0);
    REQUIRE(dwl_run(with_out(knot, tmp / "r2")).code == 0);
    for (const char* f : {"curvature.csv", "functionals.json", "manifest.json"})
      CHECK(io::read_file(tmp / "r1/" + std::string(f)) == io::read_file(tmp / "r2/" + std::string(f)));
  }
  SUBCASE("serial and threaded runs agree") {
    Json serial, threaded;
    {
      ScopedEnv env("DWL_THREADS", "1");
      serial = dwl_run(knot).json();
    }
    {
      ScopedEnv env("DWL_THREADS", "4");
      threaded = dwl_run(knot).json();
    }
    CHECK(std::abs(serial["writhe"].get<double>() - threaded["writhe"].get<double>()) <= 1e-14);
    CHECK(serial["length"] == threaded["length"]);
  }
  SUBCASE("DWL_THREADS must be a positive integer") {
    ScopedEnv env("DWL_THREADS", "many");
    CHECK(dwl_run(knot).code == 64);
  }
}

TEST_CASE("help and version") {
  CHECK(dwl_run({"--help"}).code == 0);
  CHECK(dwl_run({"--version"}).out.find(cli::kVersion) != std::string::npos);
  CHECK(dwl_run({}).code == 64);
  CHECK(dwl_run({"frobnicate"}).code == 64);
}
