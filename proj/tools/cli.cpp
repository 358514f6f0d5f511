#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <numbers>
#include <optional>

#include <CLI11.hpp>
#include <Eigen/Core>

#include "dwl/curvegeo.hpp"
#include "dwl/diracop.hpp"
#include "dwl/mkdvflow.hpp"
#include "dwl/surfgeo.hpp"
#include "io.hpp"

namespace dwl::cli {

namespace fs = std::filesystem;
using io::Json;
using io::Schema;
using spectral::Sector;
using T = Schema::Type;

int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::usage: return kExitUsage;
    case ErrorKind::numerical:
    case ErrorKind::invariant: return kExitNumerical;
    case ErrorKind::integrity: return kExitIntegrity;
    case ErrorKind::missing_input: return kExitMissing;
  }
  return kExitNumerical;
}

namespace {

constexpr double kPi = std::numbers::pi;

struct Common {
  std::string config_path;
  std::string out_dir;
  std::vector<std::string> sets;
  std::vector<std::string> sectors;
  std::string format = "csv";
};

// ---- schemas ----------------------------------------------------------------

Schema object_schema(std::map<std::string, Schema::Field> fields) {
  Schema s;
  s.fields = std::move(fields);
  return s;
}

const Schema kCurveGenerator = object_schema({{"shape", {T::string, true}}, {"params", {T::object}}, {"samples", {T::integer}}});
const Schema kCurvePoints = object_schema({{"ambient", {T::integer}}, {"closed", {T::boolean}}, {"points", {T::array, true}}});
const std::map<std::string, Schema> kCurveParams = {
    {"circle", object_schema({{"radius", {T::number}}, {"turns", {T::integer}}})},
    {"ellipse", object_schema({{"a", {T::number}}, {"b", {T::number}}})},
    {"figure_eight", object_schema({{"scale", {T::number}}})},
    {"helix", object_schema({{"a", {T::number}}, {"b", {T::number}}, {"turns", {T::number}}})},
    {"torus_knot", object_schema({{"p", {T::integer}}, {"q", {T::integer}}, {"R", {T::number}}, {"r", {T::number}}})},
};

const Schema kCurveSpectrum = object_schema({{"sectors", {T::array}},
                                             {"form", {T::string}},
                                             {"kernel_tol", {T::number}}});
const Schema kCurveFlow = object_schema({{"T", {T::number}}, {"snapshots", {T::integer}}, {"dt_factor", {T::number}}});
const Schema kCurveConfig = object_schema({{"input", {T::any, true}},
                                           {"resample", {T::integer}},
                                           {"scheme", {T::string}},
                                           {"spectrum", {T::object, false, &kCurveSpectrum}},
                                           {"flow", {T::object, false, &kCurveFlow}}});

const Schema kSurfaceGenerator = object_schema(
    {{"shape", {T::string, true}}, {"params", {T::object}}, {"Nu", {T::integer}}, {"Nv", {T::integer}}});
const Schema kSurfacePoints = object_schema({{"ambient", {T::integer, true}},
                                             {"Nu", {T::integer, true}},
                                             {"Nv", {T::integer, true}},
                                             {"Lu", {T::number, true}},
                                             {"Lv", {T::number, true}},
                                             {"periodic", {T::array}},
                                             {"period_shift", {T::array}},
                                             {"points", {T::array, true}}});
const std::map<std::string, Schema> kSurfaceParams = {
    {"cylinder", object_schema({{"radius", {T::number}}, {"Lv", {T::number}}})},
    {"clifford_torus", object_schema({{"scale", {T::number}}})},
    {"torus_of_revolution", object_schema({{"R", {T::number}}, {"r", {T::number}}})},
};
const Schema kSurfaceSpectrum = object_schema({{"sectors", {T::array}},
                                               {"convention", {T::string}},
                                               {"count", {T::integer}},
                                               {"kernel_tol", {T::number}}});
const Schema kSurfaceConfig = object_schema({{"input", {T::any, true}},
                                             {"swap_orientation", {T::boolean}},
                                             {"spectrum", {T::object, false, &kSurfaceSpectrum}}});

const Schema kMkdvV0 = object_schema({{"kind", {T::string, true}},
                                      {"mean", {T::number}},
                                      {"amplitude", {T::number}},
                                      {"mode", {T::integer}},
                                      {"alpha", {T::number}},
                                      {"center", {T::number}},
                                      {"curve", {T::any}}});
const Schema kMkdvConfig = object_schema({{"v0", {T::object, true, &kMkdvV0}},
                                          {"L", {T::number}},
                                          {"N", {T::integer}},
                                          {"T", {T::number}},
                                          {"snapshots", {T::integer}},
                                          {"dt_factor", {T::number}},
                                          {"levels", {T::integer}},
                                          {"sector", {T::string}},
                                          {"spectra", {T::boolean}},
                                          {"curve_family", {T::boolean}}});

const Schema kSelfcheckConfig = object_schema({{"dim", {T::integer}}, {"seed", {T::integer}}});

// ---- config and output plumbing ----------------------------------------------

Json load_config(const Common& c) {
  Json cfg = Json::object();
  if (!c.config_path.empty()) cfg = io::read_json_file(c.config_path);
  require(cfg.is_object(), ErrorKind::usage, "config must be a JSON object");
  for (const std::string& s : c.sets) io::apply_override(cfg, s);
  return cfg;
}

Json load_input(const Json& input) {
  if (input.is_string()) return io::read_json_file(input.get<std::string>());
  require(input.is_object(), ErrorKind::usage, "config.input: expected an object or a file path");
  return input;
}

std::vector<Sector> sectors_from(const Json& arr, std::size_t expected, const std::string& what) {
  std::vector<Sector> out;
  for (const Json& s : arr) {
    require(s.is_string(), ErrorKind::usage, what + ": sectors must be strings");
    out.push_back(spectral::sector_from_string(s.get<std::string>()));
  }
  if (expected) require(out.size() == expected, ErrorKind::usage, what + ": expected " + std::to_string(expected) + " sectors");
  return out;
}

Json sector_names(const std::vector<Sector>& s) {
  Json out = Json::array();
  for (Sector x : s) out.push_back(spectral::to_string(x));
  return out;
}

Json versions() {
  return {{"dwl", kVersion},
          {"eigen", std::to_string(EIGEN_WORLD_VERSION) + "." + std::to_string(EIGEN_MAJOR_VERSION) + "." +
                        std::to_string(EIGEN_MINOR_VERSION)},
          {"nlohmann_json", std::to_string(NLOHMANN_JSON_VERSION_MAJOR) + "." +
                                std::to_string(NLOHMANN_JSON_VERSION_MINOR) + "." +
                                std::to_string(NLOHMANN_JSON_VERSION_PATCH)}};
}

// Collects output files and writes manifest.json (file digests, config hash,
// conventions). Without --out nothing is written.
class Output {
 public:
  Output(const Common& c, std::string command, Json config)
      : command_(std::move(command)), config_(std::move(config)),
        format_(c.format == "json" ? io::Format::json : io::Format::csv) {
    if (!c.out_dir.empty()) {
      dir_ = c.out_dir;
      std::error_code ec;
      fs::create_directories(*dir_, ec);
      require(!ec && fs::is_directory(*dir_), ErrorKind::missing_input, "cannot create output directory " + c.out_dir);
    }
  }

  void conventions(Json j) { conventions_ = std::move(j); }

  void json(const std::string& stem, const Json& j) { write(stem + ".json", io::dump(j)); }

  void table(const std::string& stem, const io::Table& t) {
    if (format_ == io::Format::csv)
      write(stem + ".csv", t.csv());
    else
      write(stem + ".json", io::dump(t.json()));
  }

  void finish() {
    if (!dir_) return;
    Json m;
    m["tool"] = "dwl";
    m["command"] = command_;
    m["config"] = config_;
    m["config_hash"] = io::sha256_hex(io::dump(config_));
    m["versions"] = versions();
    m["conventions"] = conventions_;
    m["files"] = files_;
    io::write_file(*dir_ / "manifest.json", io::dump(m));
  }

 private:
  void write(const std::string& name, const std::string& content) {
    if (!dir_) return;
    io::write_file(*dir_ / name, content);
    files_[name] = io::sha256_hex(content);
  }

  std::string command_;
  Json config_;
  io::Format format_;
  std::optional<fs::path> dir_;
  Json conventions_ = Json::object();
  Json files_ = Json::object();
};

double number(const Json& j, const char* key, double fallback) { return j.contains(key) ? j[key].get<double>() : fallback; }
int integer(const Json& j, const char* key, int fallback) { return j.contains(key) ? j[key].get<int>() : fallback; }

// ---- curves -----------------------------------------------------------------

curve::ArclengthCurve load_curve(const Json& raw, const Json& cfg) {
  const Json input = load_input(raw);
  if (input.contains("shape")) {
    kCurveGenerator.validate(input, "config.input");
    const std::string shape = input["shape"];
    const auto ps = kCurveParams.find(shape);
    require(ps != kCurveParams.end(), ErrorKind::usage, "config.input.shape: unknown curve generator \"" + shape + "\"");
    const Json params = input.value("params", Json::object());
    ps->second.validate(params, "config.input.params");
    const int n = integer(input, "samples", 128);
    require(!cfg.contains("resample"), ErrorKind::usage, "config.resample applies to point input only");
    if (shape == "circle") return curve::generators::circle(number(params, "radius", 1), n, integer(params, "turns", 1));
    if (shape == "ellipse") return curve::generators::ellipse(number(params, "a", 1), number(params, "b", 0.5), n);
    if (shape == "figure_eight") return curve::generators::figure_eight(number(params, "scale", 1), n);
    if (shape == "helix")
      return curve::generators::helix(number(params, "a", 1), number(params, "b", 0.2), number(params, "turns", 2), n);
    return curve::generators::torus_knot(integer(params, "p", 2), integer(params, "q", 3), number(params, "R", 2),
                                         number(params, "r", 0.5), n);
  }
  kCurvePoints.validate(input, "config.input");
  curve::CurveSamples s;
  s.ambient = integer(input, "ambient", 2);
  s.closed = input.value("closed", true);
  require(s.ambient == 2 || s.ambient == 3, ErrorKind::usage, "config.input.ambient must be 2 or 3");
  for (const Json& p : input["points"]) {
    require(p.is_array() && static_cast<int>(p.size()) == s.ambient, ErrorKind::usage,
            "config.input.points: each point needs " + std::to_string(s.ambient) + " coordinates");
    curve::Point x = curve::Point::Zero();
    for (int a = 0; a < s.ambient; ++a) {
      require(p[a].is_number(), ErrorKind::usage, "config.input.points: coordinates must be numbers");
      x[a] = p[a].get<double>();
    }
    s.points.push_back(x);
  }
  s.validate();
  int n = static_cast<int>(s.points.size());
  if (s.closed && n % 2) ++n;
  n = integer(cfg, "resample", n);
  return curve::resample_arclength(s, n, s.closed);
}

curve::Differentiation scheme_from(const Json& cfg, const curve::ArclengthCurve& c) {
  if (!cfg.contains("scheme")) return c.closed && c.size() % 2 == 0 ? curve::Differentiation::spectral
                                                                     : curve::Differentiation::centered;
  const std::string s = cfg["scheme"];
  if (s == "spectral") return curve::Differentiation::spectral;
  if (s == "centered") return curve::Differentiation::centered;
  fail(ErrorKind::usage, "config.scheme must be spectral or centered");
}

Json curve_functionals(const curve::ArclengthCurve& c, const curve::CurvatureData& d) {
  Json j;
  j["ambient"] = c.ambient;
  j["closed"] = c.closed;
  j["samples"] = c.size();
  j["length"] = c.length;
  const curve::EulerBernoulli eb = curve::euler_bernoulli(d);
  j["euler_bernoulli"] = eb.integral;
  j["euler_bernoulli_normalized"] = eb.normalized;
  if (c.ambient == 2 && c.closed) {
    const curve::RotationNumber r = curve::rotation_number(c);
    j["rotation_number"] = r.value;
    j["rotation_raw"] = r.raw;
  }
  if (c.ambient == 3) {
    j["total_torsion"] = d.total_torsion;
    j["kappa_c_periodic"] = d.kappa_c_periodic;
    if (c.closed) {
      const curve::WritheResult w = curve::writhe(c);
      j["writhe"] = w.value;
      j["writhe_min_distance"] = w.min_distance;
      j["near_self_intersection"] = w.near_self_intersection;
    }
  }
  return j;
}

int cmd_curve(const std::string& action, const Common& common, std::ostream& out, std::ostream& err) {
  Json cfg = load_config(common);
  if (!common.sectors.empty()) cfg["spectrum"]["sectors"] = common.sectors;
  kCurveConfig.validate(cfg);
  Output o(common, "curve " + action, cfg);

  const curve::ArclengthCurve c = load_curve(cfg["input"], cfg);
  const curve::Differentiation scheme = scheme_from(cfg, c);
  const curve::CurvatureData d = curve::frenet_data(c, scheme);
  o.conventions({{"differentiation", scheme == curve::Differentiation::spectral ? "spectral" : "centered"},
                 {"plane_kappa_c", "signed curvature"}});

  if (action == "analyze") {
    io::Table t{{"s", "kappa", "tau", "re_kappa_c", "im_kappa_c"}, {}};
    for (int i = 0; i < d.size(); ++i)
      t.add({i * d.step, d.kappa[i], d.tau[i], d.kappa_c[i].real(), d.kappa_c[i].imag()});
    const Json f = curve_functionals(c, d);
    o.table("curvature", t);
    o.json("functionals", f);
    o.finish();
    out << io::dump(f);
    return kExitOk;
  }

  if (action == "spectrum") {
    const Json sp = cfg.value("spectrum", Json::object());
    const std::vector<Sector> sectors = sp.contains("sectors") ? sectors_from(sp["sectors"], 0, "config.spectrum")
                                                                : std::vector{Sector::periodic, Sector::antiperiodic};
    require(!sectors.empty(), ErrorKind::usage, "config.spectrum.sectors is empty");
    const std::string form_name = sp.value("form", "canonical");
    require(form_name == "canonical" || form_name == "intro", ErrorKind::usage,
            "config.spectrum.form must be canonical or intro");
    const dirac::CurveForm form = form_name == "canonical" ? dirac::CurveForm::canonical : dirac::CurveForm::intro;
    const double tol = number(sp, "kernel_tol", 1e-8);
    o.conventions({{"differentiation", scheme == curve::Differentiation::spectral ? "spectral" : "centered"},
                   {"curve_operator", form_name},
                   {"eigenvalues_of", form == dirac::CurveForm::canonical ? "iD" : "D"}});

    std::optional<curve::CurveSpinor> spinor;
    if (c.ambient == 2 && c.closed) spinor = curve::weierstrass_spinor_curve(c, scheme);

    Json report;
    report["convention"] = form_name;
    report["sectors"] = Json::array();
    for (Sector sector : sectors) {
      const dirac::OperatorMatrix op = dirac::curve_dirac(d, {{sector}}, form);
      const dirac::SpectrumResult r = dirac::spectrum(op, 0, tol);
      io::Table t{{"index", "re_lambda", "im_lambda"}, {}};
      for (Eigen::Index i = 0; i < r.eigenvalues.size(); ++i)
        t.add({static_cast<double>(i), r.eigenvalues[i].real(), r.eigenvalues[i].imag()});
      o.table("spectrum_" + spectral::to_string(sector), t);
      Json e;
      e["sector"] = spectral::to_string(sector);
      e["kernel_dim"] = r.kernel_dim;
      e["solver"] = r.solver;
      std::vector<double> smallest(r.singular_values.data(),
                                   r.singular_values.data() + std::min<Eigen::Index>(6, r.singular_values.size()));
      e["smallest_sv"] = smallest;
      e["residuals"]["structure"] = op.structure_residual;
      if (spinor && spinor->sector == sector && form == dirac::CurveForm::canonical)
        e["residuals"]["zero_mode"] = dirac::zero_mode_residual(op, dirac::curve_spinor_vector(*spinor));
      report["sectors"].push_back(e);
    }
    if (c.ambient == 2 && c.closed) {
      const dirac::IndexDiagnostics ix = dirac::index_diagnostics(c);
      report["index"] = {{"rotation_number", ix.rotation_number},
                         {"kernel_dim_periodic", ix.kernel_dim_periodic},
                         {"kernel_dim_antiperiodic", ix.kernel_dim_antiperiodic},
                         {"kernel_sector", spectral::to_string(ix.kernel_sector)},
                         {"parity_consistent", ix.parity_consistent}};
    }
    o.json("spectrum", report);
    o.finish();
    out << io::dump(report);
    return kExitOk;
  }

  // flow
  const Json fl = cfg.value("flow", Json::object());
  const double duration = number(fl, "T", 0.1);
  const int snapshots = integer(fl, "snapshots", 4);
  const double dt = mkdv::default_dt(c.size(), c.length, number(fl, "dt_factor", 1.0));
  o.conventions({{"pde", "v_t + 6 v^2 v_s + v_sss = 0, v = k/2"},
                 {"scheme", "integrating-factor RK4, 2/3 dealiasing"}});
  const std::vector<mkdv::CurveSnapshot> fam = mkdv::flow_curve(c, duration, snapshots, dt);
  io::Table series{{"t", "int_v", "int_v2", "max_v"}, {}};
  Json family;
  family["snapshots"] = Json::array();
  for (const auto& s : fam) {
    series.add({s.t, s.sample.int_v, s.sample.int_v2, s.sample.max_v});
    Json pts = Json::array();
    for (const auto& p : s.curve.points) pts.push_back({p[0], p[1]});
    family["snapshots"].push_back({{"t", s.t},
                                   {"closure_gap", s.closure_gap},
                                   {"closure_warning", s.closure_warning},
                                   {"bending_energy", s.bending_energy},
                                   {"rotation_number", s.rotation_number},
                                   {"points", pts}});
    if (s.closure_warning)
      err << "warning: closure gap " << io::format_double(s.closure_gap) << " exceeds 1e-2 L at t = "
          << io::format_double(s.t) << "\n";
  }
  o.table("flow_series", series);
  o.json("curve_family", family);
  o.finish();
  Json summary;
  summary["dt"] = dt;
  summary["snapshots"] = snapshots;
  summary["bending_energy"] = Json::array();
  summary["closure_gap"] = Json::array();
  for (const auto& s : fam) {
    summary["bending_energy"].push_back(s.bending_energy);
    summary["closure_gap"].push_back(s.closure_gap);
  }
  out << io::dump(summary);
  return kExitOk;
}

// ---- surfaces ---------------------------------------------------------------

surface::ConformalGrid load_surface(const Json& raw) {
  const Json input = load_input(raw);
  if (input.contains("shape")) {
    kSurfaceGenerator.validate(input, "config.input");
    const std::string shape = input["shape"];
    const auto ps = kSurfaceParams.find(shape);
    require(ps != kSurfaceParams.end(), ErrorKind::usage,
            "config.input.shape: unknown surface generator \"" + shape + "\"");
    const Json params = input.value("params", Json::object());
    ps->second.validate(params, "config.input.params");
    const int nu = integer(input, "Nu", 32), nv = integer(input, "Nv", 32);
    if (shape == "cylinder") return surface::generators::cylinder(number(params, "radius", 1), nu, nv, number(params, "Lv", 2 * kPi));
    if (shape == "clifford_torus") return surface::generators::clifford_torus(nu, nv, number(params, "scale", 1));
    return surface::generators::torus_of_revolution(number(params, "R", 2), number(params, "r", 1), nu, nv);
  }
  kSurfacePoints.validate(input, "config.input");
  surface::ConformalGrid s;
  s.ambient = input["ambient"];
  require(s.ambient == 3 || s.ambient == 4, ErrorKind::usage, "config.input.ambient must be 3 or 4");
  s.grid.nu = input["Nu"];
  s.grid.nv = input["Nv"];
  s.grid.lu = input["Lu"];
  s.grid.lv = input["Lv"];
  if (input.contains("periodic")) {
    require(input["periodic"].size() == 2 && input["periodic"][0].is_boolean() && input["periodic"][1].is_boolean(),
            ErrorKind::usage, "config.input.periodic must hold two booleans");
    s.grid.periodic = {input["periodic"][0].get<bool>(), input["periodic"][1].get<bool>()};
  }
  auto point = [&](const Json& p, const std::string& where) {
    require(p.is_array() && static_cast<int>(p.size()) == s.ambient, ErrorKind::usage,
            where + ": each point needs " + std::to_string(s.ambient) + " coordinates");
    surface::Point x = surface::Point::Zero();
    for (int a = 0; a < s.ambient; ++a) {
      require(p[a].is_number(), ErrorKind::usage, where + ": coordinates must be numbers");
      x[a] = p[a].get<double>();
    }
    return x;
  };
  for (const Json& p : input["points"]) s.points.push_back(point(p, "config.input.points"));
  if (input.contains("period_shift")) {
    require(input["period_shift"].size() == 2, ErrorKind::usage, "config.input.period_shift needs two vectors");
    for (int a = 0; a < 2; ++a) s.period_shift[a] = point(input["period_shift"][a], "config.input.period_shift");
  }
  s.validate();
  return s;
}

int cmd_surface(const std::string& action, const Common& common, std::ostream& out, std::ostream&) {
  Json cfg = load_config(common);
  if (!common.sectors.empty()) cfg["spectrum"]["sectors"] = common.sectors;
  kSurfaceConfig.validate(cfg);
  Output o(common, "surface " + action, cfg);
  const surface::ConformalGrid s = load_surface(cfg["input"]);
  const surface::CurvatureField f = surface::mean_curvature(s, cfg.value("swap_orientation", false));
  Json conv = {{"rho", "|X_u|^2"}, {"mean_curvature", "H = -Hvec . n"}};

  if (action == "analyze") {
    o.conventions(conv);
    const surface::WillmoreArea wa = surface::willmore_area(f);
    const surface::GaussBonnet gb = surface::gauss_bonnet(s.grid, f.rho);
    const surface::ConformalFactor cf = surface::conformal_factor(s);
    io::Table t{s.ambient == 3 ? std::vector<std::string>{"u", "v", "rho", "H"}
                               : std::vector<std::string>{"u", "v", "rho", "H1", "H2"},
                {}};
    for (int i = 0; i < s.grid.nu; ++i)
      for (int j = 0; j < s.grid.nv; ++j) {
        const int k = s.grid.index(i, j);
        std::vector<double> row{i * s.grid.du(), j * s.grid.dv(), f.rho[k]};
        if (s.ambient == 3)
          row.push_back(f.h[k]);
        else {
          row.push_back(f.h1[k]);
          row.push_back(f.h2[k]);
        }
        t.add(row);
      }
    Json summary{{"willmore", wa.willmore},
                 {"area", wa.area},
                 {"chi", gb.chi},
                 {"gauss_bonnet_raw", gb.raw},
                 {"gauss_bonnet_residual", gb.residual},
                 {"conformal_residual", cf.residual},
                 {"ambient", s.ambient},
                 {"Nu", s.grid.nu},
                 {"Nv", s.grid.nv}};
    o.table("field", t);
    o.json("summary", summary);
    o.finish();
    out << io::dump(summary);
    return kExitOk;
  }

  const Json sp = cfg.value("spectrum", Json::object());
  const std::vector<Sector> sectors = sp.contains("sectors") ? sectors_from(sp["sectors"], 2, "config.spectrum")
                                                              : std::vector{Sector::antiperiodic, Sector::antiperiodic};
  const std::string conv_name = sp.value("convention", "calibrated");
  require(conv_name == "calibrated" || conv_name == "printed", ErrorKind::usage,
          "config.spectrum.convention must be calibrated or printed");
  const dirac::SurfaceConvention convention =
      conv_name == "calibrated" ? dirac::SurfaceConvention::calibrated : dirac::SurfaceConvention::printed;
  const int count = integer(sp, "count", 4);
  require(count >= 0, ErrorKind::usage, "config.spectrum.count must be non-negative");
  const double tol = number(sp, "kernel_tol", 1e-8);

  const dirac::SpinStructure spin{sectors};
  const dirac::OperatorMatrix op = dirac::surface_dirac(f, spin, convention);
  const dirac::SpectrumResult r = dirac::spectrum(op, count, tol);
  conv["surface_operator"] = op.convention;
  o.conventions(conv);

  io::Table t{{"index", "sv"}, {}};
  for (Eigen::Index i = 0; i < r.singular_values.size(); ++i) t.add({static_cast<double>(i), r.singular_values[i]});

  Json report;
  report["sector"] = sector_names(sectors);
  report["kernel_dim"] = r.kernel_dim;
  std::vector<double> smallest(r.singular_values.data(),
                               r.singular_values.data() + std::min<Eigen::Index>(6, r.singular_values.size()));
  report["smallest_sv"] = smallest;
  report["solver"] = r.solver;
  report["convention"] = op.convention;
  report["residuals"]["structure"] = op.structure_residual;
  const dirac::OperatorMatrix intr = dirac::intrinsic_surface_dirac(f.grid, f.rho, f.ambient, spin, convention);
  report["residuals"]["intrinsic_plus_potential"] =
      (op.matrix - intr.matrix - dirac::mean_curvature_potential(f)).cwiseAbs().maxCoeff();
  report["residuals"]["zero_mode"] = nullptr;
  if (s.ambient == 3 && convention == dirac::SurfaceConvention::calibrated) {
    const surface::SurfaceSpinor ws = surface::weierstrass_spinor_surface(s);
    const dirac::CalibratedSpinor cs = dirac::calibrated_surface_spinor(ws, s.grid, f.rho);
    report["zero_mode_sector"] = sector_names({cs.sector[0], cs.sector[1]});
    if (cs.sector[0] == sectors[0] && cs.sector[1] == sectors[1])
      report["residuals"]["zero_mode"] = dirac::zero_mode_residual(op, cs.psi);
  }
  o.table("singular_values", t);
  o.json("spectrum", report);
  o.finish();
  out << io::dump(report);
  return kExitOk;
}

// ---- mkdv -------------------------------------------------------------------

int cmd_mkdv(const Common& common, std::ostream& out, std::ostream& err) {
  Json cfg = load_config(common);
  if (!common.sectors.empty()) {
    require(common.sectors.size() == 1, ErrorKind::usage, "mkdv takes a single --sector");
    cfg["sector"] = common.sectors.front();
  }
  kMkdvConfig.validate(cfg);
  Output o(common, "mkdv", cfg);
  o.conventions({{"pde", "v_t + 6 v^2 v_s + v_sss = 0, v = k/2"},
                 {"scheme", "integrating-factor RK4, 2/3 dealiasing"},
                 {"levels", "eigenvalues of iD, canonical curve operator, k = 2 v"}});

  const Json& v0 = cfg["v0"];
  const std::string kind = v0["kind"];
  mkdv::MkdvState s;
  auto reject = [&](std::initializer_list<const char*> keys) {
    for (const char* k : keys)
      require(!v0.contains(k), ErrorKind::usage, std::string("config.v0.") + k + " does not apply to kind " + kind);
  };
  if (kind == "from_curve") {
    require(v0.contains("curve"), ErrorKind::usage, "config.v0: from_curve needs a \"curve\"");
    reject({"mean", "amplitude", "mode", "alpha", "center"});
    require(!cfg.contains("L") && !cfg.contains("N"), ErrorKind::usage, "config: L and N come from the curve");
    const curve::ArclengthCurve c = load_curve(v0["curve"], Json::object());
    require(c.ambient == 2 && c.closed, ErrorKind::usage, "config.v0.curve must be a closed plane curve");
    s.v = 0.5 * curve::frenet_data(c).k;
    s.length = c.length;
  } else {
    const int n = integer(cfg, "N", 256);
    const double length = number(cfg, "L", 2 * kPi);
    if (kind == "cosine") {
      reject({"alpha", "center", "curve"});
      s = mkdv::cosine(n, length, number(v0, "mean", 0.5), number(v0, "amplitude", 0.3), integer(v0, "mode", 1));
    } else if (kind == "soliton") {
      reject({"mean", "amplitude", "mode", "curve"});
      s = mkdv::soliton(n, length, number(v0, "alpha", 1), number(v0, "center", length / 2));
    } else {
      fail(ErrorKind::usage, "config.v0.kind must be cosine, soliton or from_curve");
    }
  }
  s.validate();
  const double duration = number(cfg, "T", 1.0);
  const int snapshots = integer(cfg, "snapshots", 4);
  const double dt = mkdv::default_dt(s.size(), s.length, number(cfg, "dt_factor", 1.0));
  const int levels = integer(cfg, "levels", 10);
  const Sector sector = spectral::sector_from_string(cfg.value("sector", "antiperiodic"));

  mkdv::FlowDiagnostics diag;
  Json iso;
  if (cfg.value("spectra", true)) {
    const mkdv::IsospectralityReport rep = mkdv::isospectrality_check(s, duration, snapshots, dt, levels, sector);
    diag = rep.diagnostics;
    io::Table spectra{{"snapshot", "t", "level", "lambda"}, {}};
    for (std::size_t i = 0; i < rep.eigenvalues.size(); ++i)
      for (int l = 0; l < levels; ++l)
        spectra.add({static_cast<double>(i), rep.times[i], static_cast<double>(l), rep.eigenvalues[i][l]});
    o.table("spectra", spectra);
    iso = {{"sector", spectral::to_string(sector)},
           {"levels", levels},
           {"drift", rep.drift},
           {"max_drift", rep.max_drift},
           {"min_spacing", std::isfinite(rep.min_spacing) ? Json(rep.min_spacing) : Json(nullptr)},
           {"crossing_suspected", rep.crossing_suspected}};
    if (rep.crossing_suspected) err << "warning: level spacing below the measured drift; sorted matching may be wrong\n";
  } else {
    diag = mkdv::run(s, duration, snapshots, dt);
  }

  io::Table series{{"t", "int_v", "int_v2", "max_v"}, {}};
  for (const auto& x : diag.series) series.add({x.t, x.int_v, x.int_v2, x.max_v});
  o.table("series", series);

  if (cfg.value("curve_family", false)) {
    Json family;
    family["snapshots"] = Json::array();
    for (const auto& st : diag.states) {
      const curve::Reconstruction rec = curve::reconstruct_from_curvature(2 * st.v, st.length, true);
      Json pts = Json::array();
      for (const auto& p : rec.curve.points) pts.push_back({p[0], p[1]});
      family["snapshots"].push_back({{"t", st.t}, {"closure_gap", rec.closure_gap}, {"points", pts}});
    }
    o.json("curve_family", family);
  }

  const auto& first = diag.series.front();
  const auto& last = diag.series.back();
  Json summary;
  summary["N"] = s.size();
  summary["L"] = s.length;
  summary["T"] = duration;
  summary["dt"] = dt;
  summary["steps"] = diag.states.back().steps;
  summary["int_v_drift"] = std::abs(last.int_v - first.int_v);
  summary["int_v2_relative_drift"] =
      first.int_v2 > 0 ? std::abs(last.int_v2 - first.int_v2) / first.int_v2 : std::abs(last.int_v2 - first.int_v2);
  if (!iso.is_null()) summary["isospectral"] = iso;
  o.json("mkdv", summary);
  o.finish();
  out << io::dump(summary);
  return kExitOk;
}

// ---- report -----------------------------------------------------------------

int cmd_report(const std::string& bundle, const Common& common, std::ostream& out) {
  require(fs::exists(bundle), ErrorKind::missing_input, "bundle " + bundle + " does not exist");
  require(fs::is_directory(bundle), ErrorKind::usage, "bundle " + bundle + " is not a directory");
  std::vector<fs::path> runs;
  if (fs::is_regular_file(fs::path(bundle) / "manifest.json")) runs.push_back(bundle);
  for (const auto& e : fs::directory_iterator(bundle))
    if (e.is_directory() && fs::is_regular_file(e.path() / "manifest.json")) runs.push_back(e.path());
  std::sort(runs.begin(), runs.end());
  require(!runs.empty(), ErrorKind::missing_input, "no run outputs (manifest.json) under " + bundle);

  Json entries = Json::array();
  std::string combined;
  for (const fs::path& run : runs) {
    Json m;
    try {
      m = Json::parse(io::read_file(run / "manifest.json"));
    } catch (const Json::parse_error&) {
      fail(ErrorKind::integrity, (run / "manifest.json").string() + " is corrupt");
    }
    require(m.is_object() && m.contains("files") && m["files"].is_object() && m.contains("config_hash"),
            ErrorKind::integrity, (run / "manifest.json").string() + " is incomplete");
    const std::string name = run == fs::path(bundle) ? "." : run.filename().string();
    Json outputs = Json::object();
    for (auto it = m["files"].begin(); it != m["files"].end(); ++it) {
      const fs::path file = run / it.key();
      require(fs::is_regular_file(file), ErrorKind::missing_input, "missing run output " + file.string());
      const std::string content = io::read_file(file);
      require(io::sha256_hex(content) == it.value().get<std::string>(), ErrorKind::integrity,
              "checksum mismatch for " + file.string());
      if (file.extension() == ".json") outputs[it.key()] = Json::parse(content);
    }
    require(io::sha256_hex(io::dump(m["config"])) == m["config_hash"].get<std::string>(), ErrorKind::integrity,
            "config hash mismatch in " + (run / "manifest.json").string());
    combined += m["config_hash"].get<std::string>();
    entries.push_back({{"run", name},
                       {"command", m.value("command", "")},
                       {"config", m["config"]},
                       {"config_hash", m["config_hash"]},
                       {"conventions", m.value("conventions", Json::object())},
                       {"versions", m.value("versions", Json::object())},
                       {"files", m["files"]},
                       {"outputs", outputs}});
  }
  Json record{{"tool", "dwl"}, {"versions", versions()}, {"entries", entries}, {"bundle_hash", io::sha256_hex(combined)}};
  if (!common.out_dir.empty()) {
    std::error_code ec;
    fs::create_directories(common.out_dir, ec);
    require(!ec, ErrorKind::missing_input, "cannot create output directory " + common.out_dir);
    io::write_file(fs::path(common.out_dir) / "report.json", io::dump(record));
  }
  out << io::dump(record);
  return kExitOk;
}

// ---- clifford ---------------------------------------------------------------

int cmd_selfcheck(std::optional<int> dim, const Common& common, std::ostream& out, std::ostream& err,
                  const Hooks& hooks) {
  Json cfg = load_config(common);
  if (dim) cfg["dim"] = *dim;
  kSelfcheckConfig.validate(cfg);
  Output o(common, "clifford-selfcheck", cfg);
  o.conventions({{"signature", "e_i e_i = -1"}});
  const selfcheck::Report rep =
      selfcheck::run(integer(cfg, "dim", 4), static_cast<std::uint64_t>(integer(cfg, "seed", 1)), hooks.product);
  const Json j = rep.json();
  o.json("selfcheck", j);
  o.finish();
  out << io::dump(j);
  if (rep.passed()) return kExitOk;
  for (const auto& s : rep.suites)
    if (!s.passed) err << "clifford-selfcheck: suite " << s.name << " failed\n";
  return kExitNumerical;
}

void check_environment() {
  if (const char* env = std::getenv("DWL_THREADS")) {
    char* end = nullptr;
    const long n = std::strtol(env, &end, 10);
    require(*env && end && *end == '\0' && n >= 1, ErrorKind::usage,
            std::string("DWL_THREADS must be a positive integer (got \"") + env + "\")");
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err, const Hooks& hooks) {
  CLI::App app{"Discrete Dirac operators on curves and conformal surfaces", "dwl"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string("dwl ") + kVersion);

  Common common;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", common.config_path, "JSON run configuration");
    sub->add_option("--out", common.out_dir, "output directory");
    sub->add_option("--set", common.sets, "override a config key (dotted path), repeatable")->allow_extra_args(false);
    sub->add_option("--sector", common.sectors, "periodic|antiperiodic, once per axis")
        ->check(CLI::IsMember({"periodic", "antiperiodic"}))
        ->allow_extra_args(false);
    sub->add_option("--format", common.format, "tabular output format")->check(CLI::IsMember({"csv", "json"}));
  };

  std::optional<int> dim;
  CLI::App* cliff = app.add_subcommand("clifford-selfcheck", "exact Clifford algebra self-check");
  cliff->add_option("--dim", dim, "dimension n, 1..8");
  add_common(cliff);

  std::string curve_action, surface_action, bundle;
  CLI::App* curve_cmd = app.add_subcommand("curve", "curve analysis, spectra and MKdV flow");
  curve_cmd->add_option("action", curve_action)->required()->check(CLI::IsMember({"analyze", "spectrum", "flow"}));
  add_common(curve_cmd);
  CLI::App* surface_cmd = app.add_subcommand("surface", "conformal surface analysis and Dirac spectra");
  surface_cmd->add_option("action", surface_action)->required()->check(CLI::IsMember({"analyze", "spectrum"}));
  add_common(surface_cmd);
  CLI::App* mkdv_cmd = app.add_subcommand("mkdv", "MKdV evolution and isospectrality");
  add_common(mkdv_cmd);
  CLI::App* report_cmd = app.add_subcommand("report", "merge run outputs into one record");
  report_cmd->add_option("bundle", bundle, "directory of run outputs")->required();
  add_common(report_cmd);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForVersion&) {
    out << "dwl " << kVersion << "\n";
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    check_environment();
    if (*cliff) return cmd_selfcheck(dim, common, out, err, hooks);
    if (*curve_cmd) return cmd_curve(curve_action, common, out, err);
    if (*surface_cmd) return cmd_surface(surface_action, common, out, err);
    if (*mkdv_cmd) return cmd_mkdv(common, out, err);
    return cmd_report(bundle, common, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_code(e.kind());
  } catch (const Json::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitNumerical;
  }
}

}  // namespace dwl::cli
