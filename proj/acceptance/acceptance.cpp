// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fail.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include <Eigen/Geometry>

#include "cli.hpp"
#include "dwl/clifford.hpp"
#include "dwl/curvegeo.hpp"
#include "dwl/diracop.hpp"
#include "dwl/mkdvflow.hpp"
#include "dwl/surfgeo.hpp"
#include "io.hpp"

using namespace dwl;
using spectral::Sector;
using C = std::complex<double>;
namespace fs = std::filesystem;
constexpr double kPi = std::numbers::pi;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", x);
  return buf;
}

// Collects sub-checks of one criterion; the first failing check is reported.
struct Criterion {
  int id;
  std::string name;
  bool pass = true;
  std::vector<std::string> notes;
  std::string failure;

  void check(bool ok, const std::string& what) {
    notes.push_back(what);
    if (!ok && pass) {
      pass = false;
      failure = what;
    }
  }
};

std::vector<Criterion> results;

void report(Criterion c) {
  std::printf("%s [%2d] %s", c.pass ? "PASS" : "FAIL", c.id, c.name.c_str());
  if (!c.pass) std::printf(" -- failed: %s", c.failure.c_str());
  std::printf("\n");
  for (const auto& n : c.notes) std::printf("         %s\n", n.c_str());
  std::fflush(stdout);
  results.push_back(std::move(c));
}

void guarded(Criterion c, const std::function<void(Criterion&)>& body) {
  try {
    body(c);
  } catch (const std::exception& e) {
    c.check(false, std::string("exception: ") + e.what());
  }
  report(std::move(c));
}

using clifford::Blade;
using clifford::MultiVector;

MultiVector random_integer_mv(std::mt19937_64& r, int dim, int terms = 5) {
  std::uniform_int_distribution<int> blade(0, (1 << dim) - 1), coef(-9, 9);
  MultiVector m(dim);
  for (int t = 0; t < terms; ++t) m.add(Blade{static_cast<std::uint32_t>(blade(r))}, coef(r));
  return m;
}

MultiVector random_real_mv(std::mt19937_64& r, int dim, int terms = 6) {
  std::uniform_int_distribution<int> blade(0, (1 << dim) - 1);
  std::uniform_real_distribution<double> coef(-1, 1);
  MultiVector m(dim);
  for (int t = 0; t < terms; ++t) m.add(Blade{static_cast<std::uint32_t>(blade(r))}, coef(r));
  return m;
}

MultiVector random_spin(std::mt19937_64& r, int dim) {
  std::normal_distribution<double> g;
  MultiVector out = MultiVector::scalar(dim, 1.0);
  for (int k = 0; k < 4; ++k) {
    Eigen::VectorXd v(dim);
    for (int i = 0; i < dim; ++i) v[i] = g(r);
    out = out * clifford::vector_from(v.normalized());
  }
  return out;
}

void criterion_clifford() {
  guarded({1, "Clifford kernel: anticommutation and associativity, n <= 6"}, [](Criterion& c) {
    const auto t0 = Clock::now();
    double anti = 0, assoc = 0;
    std::mt19937_64 r(1);
    for (int n = 1; n <= 6; ++n) {
      for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j) {
          const MultiVector ei = MultiVector::basis(n, i), ej = MultiVector::basis(n, j);
          anti = std::max(anti, (ei * ej + ej * ei - MultiVector::scalar(n, i == j ? -2.0 : 0.0)).max_abs());
        }
      for (int t = 0; t < 500; ++t) {
        const MultiVector a = random_integer_mv(r, n), b = random_integer_mv(r, n), d = random_integer_mv(r, n);
        assoc = std::max(assoc, ((a * b) * d - a * (b * d)).max_abs());
      }
    }
    const double elapsed = seconds_since(t0);
    c.check(anti == 0, "anticommutation max error " + fmt(anti) + " (exact required)");
    c.check(assoc == 0, "associativity max error over 6 x 500 integer triples " + fmt(assoc) + " (exact required)");
    c.check(elapsed < 10, "runtime " + fmt(elapsed) + " s (< 10 s)");
  });
}

void criterion_representation() {
  guarded({2, "Matrix representation and chiral element, n <= 8"}, [](Criterion& c) {
    double rel = 0, hom = 0, chiral = 0;
    std::mt19937_64 r(2);
    for (int n = 1; n <= 8; ++n) {
      const clifford::MatrixRep rep = clifford::matrix_rep(n);
      const auto size = rep.gammas[0].rows();
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) {
          Eigen::MatrixXcd expect = Eigen::MatrixXcd::Zero(size, size);
          if (j == k) expect.diagonal().setConstant(-2.0);
          rel = std::max(rel, (rep.gammas[j] * rep.gammas[k] + rep.gammas[k] * rep.gammas[j] - expect).cwiseAbs().maxCoeff());
        }
      for (int t = 0; t < 100; ++t) {
        const MultiVector a = random_real_mv(r, n), b = random_real_mv(r, n);
        hom = std::max(hom, (clifford::represent(rep, a * b) - clifford::represent(rep, a) * clifford::represent(rep, b))
                                .cwiseAbs()
                                .maxCoeff());
      }
      const MultiVector g = clifford::chiral(n);
      const double sign = (n - 1) % 2 == 0 ? 1.0 : -1.0;
      for (int j = 1; j <= n; ++j) {
        const MultiVector ej = MultiVector::basis(n, j);
        chiral = std::max(chiral, (g * ej - (ej * g) * sign).max_abs());
      }
    }
    c.check(rel <= 1e-12, "gamma anticommutation max error " + fmt(rel) + " (<= 1e-12)");
    c.check(hom <= 1e-12, "rep(ab) - rep(a) rep(b) max error " + fmt(hom) + " (<= 1e-12)");
    c.check(chiral == 0, "chiral sign (-1)^(n-1) max error " + fmt(chiral));
  });
}

void criterion_double_cover() {
  guarded({3, "Double cover Spin(n) -> SO(n)"}, [](Criterion& c) {
    const auto so = [](const MultiVector& g) { return clifford::spin_to_so(clifford::SpinElement(g)).matrix(); };
    double hom = 0, sign = 0, rot = 0;
    std::mt19937_64 r(3);
    for (int n = 2; n <= 6; ++n) {
      for (int t = 0; t < 50; ++t) {
        const MultiVector g = random_spin(r, n), h = random_spin(r, n);
        hom = std::max(hom, (so(g * h) - so(g) * so(h)).cwiseAbs().maxCoeff());
        sign = std::max(sign, (so(g * -1.0) - so(g)).cwiseAbs().maxCoeff());
      }
      for (double th : {0.1, 0.7, 1.9, 3.0}) {
        const MultiVector g = MultiVector::scalar(n, std::cos(th)) + MultiVector::monomial(n, {1, 2}, std::sin(th));
        Eigen::MatrixXd expect = Eigen::MatrixXd::Identity(n, n);
        expect.topLeftCorner(2, 2) << std::cos(2 * th), -std::sin(2 * th), std::sin(2 * th), std::cos(2 * th);
        rot = std::max(rot, (so(g) - expect).cwiseAbs().maxCoeff());
      }
    }
    c.check(hom <= 1e-12, "tau(g) tau(h) = tau(gh) max error " + fmt(hom) + " (<= 1e-12)");
    c.check(sign <= 1e-12, "tau(-g) = tau(g) max error " + fmt(sign) + " (<= 1e-12)");
    c.check(rot <= 1e-10, "cos t + sin t e1e2 -> rotation by 2t, max error " + fmt(rot) + " (<= 1e-10)");
  });
}

std::vector<double> real_parts(const Eigen::VectorXcd& v) {
  std::vector<double> out(v.size());
  for (Eigen::Index i = 0; i < v.size(); ++i) out[i] = v[i].real();
  std::sort(out.begin(), out.end());
  return out;
}

double max_diff(const std::vector<double>& a, std::vector<double> b) {
  std::sort(b.begin(), b.end());
  if (a.size() != b.size()) return INFINITY;
  double m = 0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

void criterion_circle() {
  guarded({4, "Unit circle spectra, N = 128"}, [](Criterion& c) {
    const auto t0 = Clock::now();
    const int n = 128;
    const curve::CurvatureData d = curve::frenet_data(curve::generators::circle(1.0, n));

    const dirac::SpectrumResult anti = dirac::spectrum(dirac::curve_dirac(d, {{Sector::antiperiodic}}));
    double int_err = 0;
    for (double e : real_parts(anti.eigenvalues)) int_err = std::max(int_err, std::abs(e - std::round(e)));
    c.check(int_err < 1e-10, "antiperiodic eigenvalues of iD integer, max error " + fmt(int_err) + " (< 1e-10)");
    c.check(anti.kernel_dim == 2, "antiperiodic kernel dim " + std::to_string(anti.kernel_dim) + " (2)");

    const dirac::SpectrumResult per = dirac::spectrum(dirac::curve_dirac(d, {{Sector::periodic}}));
    double half_err = 0;
    for (double e : real_parts(per.eigenvalues)) half_err = std::max(half_err, std::abs(e - std::floor(e) - 0.5));
    c.check(half_err < 1e-10, "periodic eigenvalues half-integer, max error " + fmt(half_err) + " (< 1e-10)");
    c.check(per.kernel_dim == 0, "periodic kernel dim " + std::to_string(per.kernel_dim) + " (0)");

    // Resolved periodic modes |m| < N / 2, two eigenvalues 1/2 +- m each.
    std::vector<double> oracle;
    for (int m = -(n / 2 - 1); m <= n / 2 - 1; ++m) {
      oracle.push_back(0.5 + m);
      oracle.push_back(0.5 - m);
    }
    const dirac::SpectrumResult intro =
        dirac::spectrum(dirac::curve_dirac(d, {{Sector::periodic}}, dirac::CurveForm::intro));
    const double intro_err = max_diff(real_parts(intro.eigenvalues), oracle);
    c.check(intro_err < 1e-10, "intro form eigenvalues 1/2 +- m, max error " + fmt(intro_err) + " (< 1e-10)");
    const double elapsed = seconds_since(t0);
    c.check(elapsed < 5, "runtime " + fmt(elapsed) + " s (< 5 s)");
  });
}

double curve_zero_mode(const curve::ArclengthCurve& e) {
  const curve::CurveSpinor s = curve::weierstrass_spinor_curve(e);
  return dirac::zero_mode_residual(dirac::curve_dirac(curve::frenet_data(e), {{s.sector}}), dirac::curve_spinor_vector(s));
}

void criterion_zero_mode() {
  guarded({5, "Frenet / Weierstrass zero mode"}, [](Criterion& c) {
    const double circ = curve_zero_mode(curve::generators::circle(1.0, 128));
    c.check(circ < 1e-10, "unit circle residual " + fmt(circ) + " (< 1e-10)");
    std::vector<double> res;
    std::string series;
    for (int n : {16, 32, 64}) {
      res.push_back(curve_zero_mode(curve::generators::ellipse(1.0, 0.6, n)));
      series += (series.empty() ? "" : ", ") + std::string("N=") + std::to_string(n) + ": " + fmt(res.back());
    }
    // Spectral rate: the reduction factor per doubling grows.
    const double f1 = res[0] / res[1], f2 = res[1] / res[2];
    c.check(f1 > 10 && f2 > f1, "ellipse residuals " + series + "; reduction factors " + fmt(f1) + ", " + fmt(f2) +
                                    " (> 10 and increasing)");
  });
}

void criterion_quadratic() {
  guarded({6, "Quadratic identity, random smooth k"}, [](Criterion& c) {
    std::mt19937_64 r(6);
    std::uniform_real_distribution<double> u(-1, 1);
    double worst = 0;
    bool ok = true;
    for (int trial = 0; trial < 10; ++trial) {
      const int n = 64;
      const double length = 2 + 4 * (u(r) + 1);
      Eigen::VectorXd k = Eigen::VectorXd::Constant(n, 0.3 * u(r));
      for (int m = 1; m <= 4; ++m) {
        const double a = u(r) / m, b = u(r) / m;
        for (int j = 0; j < n; ++j) k[j] += a * std::cos(2 * kPi * m * j / n) + b * std::sin(2 * kPi * m * j / n);
      }
      curve::CurvatureData d;
      d.ambient = 2;
      d.length = length;
      d.step = length / n;
      d.k = k;
      d.kappa = k.cwiseAbs();
      d.tau = Eigen::VectorXd::Zero(n);
      d.torsion_phase = d.tau;
      d.kappa_c = d.kappa.cast<C>();
      for (Sector s : {Sector::periodic, Sector::antiperiodic}) {
        const dirac::QuadraticIdentity q = dirac::quadratic_identity(d, s);
        ok = ok && q.residual <= q.bound;
        worst = std::max(worst, q.residual / q.bound);
      }
    }
    c.check(ok, "worst residual / (1e-12 ||D||^2) = " + fmt(worst) + " over 10 profiles x 2 sectors (<= 1)");
  });
}

void criterion_surface_zero_modes() {
  guarded({7, "Cylinder zero modes and intrinsic + potential identity"}, [](Criterion& c) {
    const surface::ConformalGrid cyl = surface::generators::cylinder(1.0, 16, 16);
    const surface::CurvatureField f = surface::mean_curvature(cyl);
    const dirac::SpinStructure spin{{Sector::antiperiodic, Sector::periodic}};
    const dirac::OperatorMatrix op = dirac::surface_dirac(f, spin, dirac::SurfaceConvention::calibrated);
    const dirac::SpectrumResult s = dirac::spectrum(op, 4);
    c.check(s.singular_values[0] < 1e-8, "smallest singular value " + fmt(s.singular_values[0]) + " (< 1e-8)");
    c.check(s.kernel_dim == 2, "kernel dim " + std::to_string(s.kernel_dim) + " (2)");
    double ident = 0;
    for (const auto& field : {f, surface::mean_curvature(surface::generators::torus_of_revolution(2.0, 1.0, 16, 32)),
                              surface::mean_curvature(surface::generators::clifford_torus(16, 16))}) {
      const dirac::OperatorMatrix full = dirac::surface_dirac(field, spin);
      const dirac::OperatorMatrix intr = dirac::intrinsic_surface_dirac(field.grid, field.rho, field.ambient, spin);
      ident = std::max(ident, (full.matrix - intr.matrix - dirac::mean_curvature_potential(field)).cwiseAbs().maxCoeff());
    }
    c.check(ident < 1e-10, "intrinsic + potential - full, max entry " + fmt(ident) + " (< 1e-10)");
  });
}

void criterion_functionals() {
  guarded({8, "Willmore, area, bending energy, Gauss-Bonnet"}, [](Criterion& c) {
    const double two_pi2 = 2 * kPi * kPi;
    const surface::ConformalGrid ct = surface::generators::clifford_torus(32, 32);
    const surface::WillmoreArea wa = surface::willmore_area(surface::mean_curvature(ct));
    c.check(std::abs(wa.area / two_pi2 - 1) < 1e-3, "Clifford torus area / 2pi^2 - 1 = " + fmt(wa.area / two_pi2 - 1));
    c.check(std::abs(wa.willmore / two_pi2 - 1) < 1e-3,
            "Clifford torus Willmore / 2pi^2 - 1 = " + fmt(wa.willmore / two_pi2 - 1));
    const surface::ConformalGrid tr = surface::generators::torus_of_revolution(std::sqrt(2.0), 1.0, 48, 64);
    const double w = surface::willmore_area(surface::mean_curvature(tr)).willmore;
    c.check(std::abs(w / two_pi2 - 1) < 1e-3, "torus R/r = sqrt 2 Willmore / 2pi^2 - 1 = " + fmt(w / two_pi2 - 1));
    double bend = 0;
    for (double radius : {0.5, 1.0, 3.0}) {
      const double b = curve::euler_bernoulli(curve::frenet_data(curve::generators::circle(radius, 128))).integral;
      bend = std::max(bend, std::abs(b - 2 * kPi / radius));
    }
    c.check(bend < 1e-6, "circle int k^2 ds - 2pi/R, max " + fmt(bend) + " (< 1e-6)");
    double gb = 0;
    bool chi0 = true;
    for (const auto& s : {ct, tr, surface::generators::torus_of_revolution(2.0, 1.0, 32, 32)}) {
      const surface::GaussBonnet g = surface::gauss_bonnet(s.grid, surface::conformal_factor(s).rho);
      chi0 = chi0 && g.chi == 0;
      gb = std::max(gb, g.residual);
    }
    c.check(chi0 && gb < 1e-8, "tori chi = 0, Gauss-Bonnet residual " + fmt(gb) + " (< 1e-8)");
  });
}

void criterion_topology() {
  guarded({9, "Rotation numbers, writhe, kernel-sector parity"}, [](Criterion& c) {
    const std::vector<std::pair<std::string, curve::ArclengthCurve>> curves = {
        {"circle", curve::generators::circle(1.0, 128)},
        {"figure-eight", curve::generators::figure_eight(1.0, 128)},
        {"double circle", curve::generators::circle(1.0, 128, 2)}};
    const int expected[] = {1, 0, 2};
    for (std::size_t i = 0; i < curves.size(); ++i) {
      const curve::RotationNumber rn = curve::rotation_number(curves[i].second);
      c.check(rn.value == expected[i], curves[i].first + " rotation number " + std::to_string(rn.value) + " (" +
                                           std::to_string(expected[i]) + "), raw " + fmt(rn.raw));
    }
    // Plane curves placed in a tilted plane of E^3.
    const Eigen::Matrix3d tilt =
        (Eigen::AngleAxisd(0.7, Eigen::Vector3d(1, 2, 3).normalized())).toRotationMatrix();
    double planar = 0;
    for (curve::ArclengthCurve cv : {curve::generators::circle(1.0, 128), curve::generators::ellipse(1.0, 0.4, 128),
                                     curve::generators::ellipse(2.0, 1.0, 256)}) {
      cv.ambient = 3;
      planar = std::max(planar, std::abs(curve::writhe(curve::transformed(cv, tilt, {0.5, -1, 2})).value));
    }
    c.check(planar < 1e-8, "planar writhe max " + fmt(planar) + " (< 1e-8)");
    const double w = curve::writhe(curve::generators::torus_knot(2, 3, 2.0, 1.0, 512)).value;
    const double oracle = curve::writhe(curve::generators::torus_knot(2, 3, 2.0, 1.0, 2048)).value;
    c.check(std::abs(w - oracle) < 1e-3, "trefoil writhe " + fmt(w) + " vs 4x resolution " + fmt(oracle) + ", diff " +
                                             fmt(std::abs(w - oracle)) + " (< 1e-3)");
    for (const auto& [name, cv] : curves) {
      const dirac::IndexDiagnostics ix = dirac::index_diagnostics(cv);
      c.check(ix.parity_consistent, name + " kernel sector " + spectral::to_string(ix.kernel_sector) +
                                        ", rotation number " + std::to_string(ix.rotation_number));
    }
  });
}

void criterion_mkdv() {
  guarded({10, "MKdV: soliton, conservation, isospectrality, runtime (N = 256)"}, [](Criterion& c) {
    const auto t0 = Clock::now();
    const int n = 256;

    {
      const double alpha = 1.0, length = 40.0;
      const mkdv::MkdvState s = mkdv::soliton(n, length, alpha, length / 2);
      const double t = 1 / (alpha * alpha);
      const mkdv::MkdvState e = mkdv::evolve(s, t, mkdv::default_dt(n, length));
      const mkdv::MkdvState exact = mkdv::soliton(n, length, alpha, length / 2 + alpha * alpha * t);
      const double err = (e.v - exact.v).cwiseAbs().maxCoeff();
      c.check(err < 1e-6, "soliton alpha = 1, sup error at t = 1 " + fmt(err) + " (< 1e-6)");
    }
    {
      const double length = 4 * kPi;
      const mkdv::MkdvState s = mkdv::cosine(n, length, 0.5, 0.3, 1);
      const mkdv::Conserved c0 = mkdv::conserved_quantities(s);
      const mkdv::Conserved c1 = mkdv::conserved_quantities(mkdv::evolve(s, 1.0, mkdv::default_dt(n, length)));
      const double d1 = std::abs(c1.int_v - c0.int_v) / std::abs(c0.int_v);
      const double d2 = std::abs(c1.int_v2 - c0.int_v2) / std::abs(c0.int_v2);
      c.check(d1 < 1e-8 && d2 < 1e-8,
              "relative drift over T = 1: int v " + fmt(d1) + ", int v^2 " + fmt(d2) + " (< 1e-8)");
    }
    {
      const double length = 4 * kPi;
      const mkdv::MkdvState s = mkdv::cosine(n, length, 0.5, 0.3, 1);
      const double dt = mkdv::stability_bound(n, length);
      std::vector<double> drift;
      for (double h : {dt, dt / 2, dt / 4})
        drift.push_back(mkdv::isospectrality_check(s, 0.5, 2, h, 10, Sector::antiperiodic).max_drift);
      c.check(drift[0] < 1e-4 && drift[1] < 1e-4 && drift[2] < 1e-4,
              "10 lowest levels, T = 0.5, max drift at dt, dt/2, dt/4: " + fmt(drift[0]) + ", " + fmt(drift[1]) + ", " +
                  fmt(drift[2]) + " (< 1e-4)");
      const double r1 = drift[0] / drift[1], r2 = drift[1] / drift[2];
      c.check(r1 >= 16 && r2 >= 16, "drift improvement factors under dt/2: " + fmt(r1) + ", " + fmt(r2) +
                                        " (>= 16); drift already at rounding level, see README");
    }
    const double elapsed = seconds_since(t0);
    c.check(elapsed < 60, "runtime " + fmt(elapsed) + " s (< 60 s)");
  });
}

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("dwl_acceptance_" + std::to_string(::getpid()));
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

int cli_run(const std::vector<std::string>& args, std::string* out = nullptr) {
  std::ostringstream o, e;
  const int code = cli::run(args, o, e);
  if (out) *out = o.str();
  return code;
}

// Largest difference over all numbers in two JSON documents of equal shape.
double json_distance(const io::Json& a, const io::Json& b) {
  if (a.is_number() && b.is_number()) return std::abs(a.get<double>() - b.get<double>());
  if (a.type() != b.type() || a.size() != b.size()) return INFINITY;
  double m = 0;
  if (a.is_array())
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, json_distance(a[i], b[i]));
  else if (a.is_object())
    for (auto it = a.begin(); it != a.end(); ++it) {
      if (!b.contains(it.key())) return INFINITY;
      m = std::max(m, json_distance(it.value(), b[it.key()]));
    }
  else if (a != b)
    return INFINITY;
  return m;
}

void criterion_determinism() {
  guarded({11, "Determinism: byte-identical reruns, serial vs parallel"}, [](Criterion& c) {
    TempDir tmp;
    const std::vector<std::vector<std::string>> runs = {
        {"clifford-selfcheck", "--dim", "5"},
        {"curve", "analyze", "--set", R"(input={"shape":"torus_knot","params":{"p":2,"q":3},"samples":256})"},
        {"curve", "spectrum", "--set", R"(input={"shape":"ellipse","params":{"a":1,"b":0.6},"samples":64})"},
        {"surface", "spectrum", "--set", R"(input={"shape":"cylinder","Nu":16,"Nv":16})", "--sector", "antiperiodic",
         "--sector", "periodic"},
        {"mkdv", "--set", R"(v0={"kind":"cosine"})", "--set", "N=64", "--set", "T=0.05", "--set", "snapshots=4"},
    };
    bool identical = true;
    int files = 0;
    for (std::size_t i = 0; i < runs.size(); ++i) {
      for (int rep = 0; rep < 2; ++rep) {
        std::vector<std::string> args = runs[i];
        args.push_back("--out");
        args.push_back((tmp.path / ("run" + std::to_string(i) + "_" + std::to_string(rep))).string());
        if (cli_run(args) != 0) throw std::runtime_error("cli run " + runs[i][0] + " failed");
      }
      const fs::path a = tmp.path / ("run" + std::to_string(i) + "_0"), b = tmp.path / ("run" + std::to_string(i) + "_1");
      for (const auto& e : fs::directory_iterator(a)) {
        ++files;
        identical = identical && io::read_file(e.path()) == io::read_file(b / e.path().filename());
      }
    }
    c.check(identical, std::to_string(files) + " output files from 5 runs compared byte for byte");

    double worst = 0;
    for (const auto& args : runs) {
      std::string serial, parallel;
      ::setenv("DWL_THREADS", "1", 1);
      cli_run(args, &serial);
      ::setenv("DWL_THREADS", "4", 1);
      cli_run(args, &parallel);
      ::unsetenv("DWL_THREADS");
      worst = std::max(worst, json_distance(io::Json::parse(serial), io::Json::parse(parallel)));
    }
    const curve::ArclengthCurve knot = curve::generators::torus_knot(2, 3, 2.0, 1.0, 512);
    worst = std::max(worst, std::abs(curve::writhe(knot, 1).value - curve::writhe(knot, 4).value));
    const mkdv::MkdvState v0 = mkdv::cosine(128, 4 * kPi, 0.5, 0.3, 1);
    const double dt = mkdv::default_dt(128, 4 * kPi);
    const auto a = mkdv::isospectrality_check(v0, 0.1, 4, dt, 10, Sector::antiperiodic, 1);
    const auto b = mkdv::isospectrality_check(v0, 0.1, 4, dt, 10, Sector::antiperiodic, 4);
    for (std::size_t i = 0; i < a.eigenvalues.size(); ++i)
      worst = std::max(worst, (a.eigenvalues[i] - b.eigenvalues[i]).cwiseAbs().maxCoeff());
    c.check(worst <= 1e-14, "serial vs 4 threads, max difference in floating outputs " + fmt(worst) + " (<= 1e-14)");
  });
}

}  // namespace

int main() {
  const auto t0 = Clock::now();
  criterion_clifford();
  criterion_representation();
  criterion_double_cover();
  criterion_circle();
  criterion_zero_mode();
  criterion_quadratic();
  criterion_surface_zero_modes();
  criterion_functionals();
  criterion_topology();
  criterion_mkdv();
  criterion_determinism();
  int failed = 0;
  for (const auto& r : results) failed += !r.pass;
  std::printf("%zu criteria, %d passed, %d failed (%.1f s)\n", results.size(), static_cast<int>(results.size()) - failed,
              failed, seconds_since(t0));
  return failed ? 1 : 0;
}
