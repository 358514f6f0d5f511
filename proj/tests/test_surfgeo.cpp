#include <doctest.h>

#include <cmath>
#include <numbers>

#include "dwl/clifford.hpp"
#include "dwl/surfgeo.hpp"
#include "support.hpp"

using namespace dwl::surface;
using dwl::spectral::Sector;
constexpr double kPi = std::numbers::pi;

namespace {

ConformalGrid open_patch(int nu, int nv, double lu, double lv, const std::function<Point(double, double)>& x) {
  ConformalGrid s;
  s.grid = Grid2D{nu, nv, lu, lv, {false, false}};
  s.ambient = 3;
  for (int i = 0; i < nu; ++i)
    for (int j = 0; j < nv; ++j) s.points.push_back(x(i * s.grid.du(), j * s.grid.dv()));
  return s;
}

Grid2D periodic_grid(int n) { return Grid2D{n, n, 2 * kPi, 2 * kPi, {true, true}}; }

Eigen::VectorXd field(const Grid2D& g, const std::function<double(double, double)>& f) {
  Eigen::VectorXd out(g.size());
  for (int i = 0; i < g.nu; ++i)
    for (int j = 0; j < g.nv; ++j) out[g.index(i, j)] = f(i * g.du(), j * g.dv());
  return out;
}

Eigen::Matrix4d rotation3(testsupport::Rng& r) {
  Eigen::Matrix3d a;
  for (int i = 0; i < 9; ++i) a(i) = testsupport::uniform(r);
  Eigen::Matrix3d q = Eigen::HouseholderQR<Eigen::Matrix3d>(a).householderQ();
  if (q.determinant() < 0) q.col(0) *= -1;
  Eigen::Matrix4d m = Eigen::Matrix4d::Identity();
  m.topLeftCorner<3, 3>() = q;
  return m;
}

// Meridian angle by RK4 on r phi' = R + r cos phi (independent of the closed form).
double meridian_angle(double big_r, double small_r, double v) {
  const int steps = 4000;
  const double h = v / steps;
  double phi = 0;
  auto f = [&](double p) { return (big_r + small_r * std::cos(p)) / small_r; };
  for (int k = 0; k < steps; ++k) {
    const double k1 = f(phi), k2 = f(phi + h * k1 / 2), k3 = f(phi + h * k2 / 2), k4 = f(phi + h * k3);
    phi += h / 6 * (k1 + 2 * k2 + 2 * k3 + k4);
  }
  return phi;
}

double max_abs(const Eigen::VectorXd& v) { return v.cwiseAbs().maxCoeff(); }

}  // namespace

TEST_CASE("conformal factor") {
  const ConformalFactor cyl = conformal_factor(generators::cylinder(1.0, 32, 32));
  CHECK(max_abs(cyl.rho.array() - 1.0) < 1e-12);
  CHECK(cyl.residual < 1e-12);
  const ConformalFactor ct = conformal_factor(generators::clifford_torus(32, 32));
  CHECK(max_abs(ct.rho.array() - 0.5) < 1e-12);

  const ConformalGrid sheared = open_patch(16, 16, 1, 1, [](double u, double v) { return Point(u, v + 0.3 * u, 0, 0); });
  CHECK_THROWS_AS(conformal_factor(sheared), dwl::Error);
  try {
    conformal_factor(sheared);
  } catch (const dwl::Error& e) {
    CHECK(e.kind() == dwl::ErrorKind::numerical);
    CHECK(std::string(e.what()).find("node") != std::string::npos);
  }
  ConformalGrid bad = generators::cylinder(1.0, 32, 32);
  bad.grid.nu = 15;
  CHECK_THROWS_AS(conformal_factor(bad), dwl::Error);

  // Torus of revolution: conformality is built in, and the meridian angle
  // agrees with direct integration of the ODE.
  const double big_r = 2.0, small_r = 1.0;
  const ConformalGrid t = generators::torus_of_revolution(big_r, small_r, 32, 32);
  const ConformalFactor tf = conformal_factor(t);
  CHECK(tf.residual < 1e-6);
  for (int j : {1, 7, 20, 31}) {
    const Point p = t.points[t.grid.index(0, j)];
    const double phi = meridian_angle(big_r, small_r, j * t.grid.dv());
    CHECK(std::abs(p[2] - small_r * std::sin(phi)) < 1e-10);
    CHECK(std::abs(p[0] - (big_r + small_r * std::cos(phi))) < 1e-10);
  }
  // First fundamental form recovered from rho.
  CHECK(max_abs(tf.rho.array().sqrt() - field(t.grid, [&](double, double v) {
                  return big_r + small_r * std::cos(meridian_angle(big_r, small_r, v));
                }).array()) < 1e-9);
}

TEST_CASE("mean curvature") {
  for (double radius : {1.0, 2.5}) {
    const CurvatureField f = mean_curvature(generators::cylinder(radius, 32, 32));
    CHECK(max_abs(f.h.array() - 0.5 / radius) < 1e-10);
    CHECK(max_abs(f.p.array() - 0.25) < 1e-10);
  }
  const CurvatureField ct = mean_curvature(generators::clifford_torus(32, 32));
  CHECK(max_abs(ct.mean_curvature_norm_squared().array() - 1.0) < 1e-10);
  CHECK(max_abs(ct.hc.cwiseAbs().array() - 1.0) < 1e-10);

  const ConformalGrid plane = open_patch(16, 20, 1.0, 1.2, [](double u, double v) { return Point(u, v, 0, 0); });
  CHECK(max_abs(mean_curvature(plane).h) < 1e-12);

  // Spectral convergence against the analytic torus of revolution.
  const double big_r = 3.0, small_r = 1.0;
  double prev = 0;
  for (int n : {24, 48}) {
    const ConformalGrid t = generators::torus_of_revolution(big_r, small_r, n, n);
    const CurvatureField f = mean_curvature(t);
    Eigen::VectorXd exact(t.grid.size());
    for (int k = 0; k < t.grid.size(); ++k) {
      const double cosphi = (std::hypot(t.points[k][0], t.points[k][1]) - big_r) / small_r;
      exact[k] = 0.5 * (cosphi / (big_r + small_r * cosphi) + 1 / small_r);
    }
    const double sign = f.h[0] * exact[0] > 0 ? 1 : -1;
    const double err = max_abs(f.h - sign * exact);
    if (prev > 0) CHECK(prev / err > 4);
    prev = err;
  }
  CHECK(prev < 1e-6);
}

TEST_CASE("complex mean curvature") {
  // E^3 torus placed in E^4 at constant fourth coordinate.
  ConformalGrid t = generators::torus_of_revolution(2.0, 1.0, 32, 32);
  const CurvatureField f3 = mean_curvature(t);
  for (Point& p : t.points) p[3] = 0.7;
  t.ambient = 4;
  const CurvatureField f4 = mean_curvature(t);
  CHECK(max_abs(f4.h2) < 1e-10);
  CHECK(max_abs(f4.pc.imag()) < 1e-10);
  CHECK(max_abs(f4.pc.real() - f4.p) < 1e-10);
  CHECK(max_abs(f4.h1 - f3.h) < 1e-10);

  const ConformalGrid ct = generators::clifford_torus(32, 32);
  const CurvatureField a = mean_curvature(ct);
  const CurvatureField b = mean_curvature(ct, true);
  CHECK((a.hc - b.hc.conjugate()).cwiseAbs().maxCoeff() < 1e-12);
  const ComplexMeanCurvature c = complex_mean_curvature(a);
  CHECK((c.pc - 0.5 * a.rho.array().sqrt().matrix().cast<std::complex<double>>().cwiseProduct(a.hc))
            .cwiseAbs()
            .maxCoeff() < 1e-15);
}

TEST_CASE("rigid motions and scaling") {
  auto r = testsupport::rng(30);
  const ConformalGrid t = generators::torus_of_revolution(2.0, 0.8, 32, 32);
  const CurvatureField f0 = mean_curvature(t);
  const WillmoreArea w0 = willmore_area(f0);
  const ConformalGrid moved = transformed(t, rotation3(r), Point(0.3, -1, 2, 0));
  CHECK(moved.ambient == 3);
  const CurvatureField f1 = mean_curvature(moved);
  CHECK(max_abs(f1.rho - f0.rho) < 1e-10);
  CHECK(max_abs(f1.h - f0.h) < 1e-10);
  const WillmoreArea w1 = willmore_area(f1);
  CHECK(std::abs(w1.willmore - w0.willmore) < 1e-10);
  CHECK(std::abs(w1.area - w0.area) < 1e-10);
  for (double lambda : {0.5, 2.0, 3.0}) {
    const WillmoreArea ws = willmore_area(mean_curvature(transformed(t, Eigen::Matrix4d::Identity(), Point::Zero(), lambda)));
    CHECK(std::abs(ws.willmore - w0.willmore) < 1e-10 * w0.willmore);
    CHECK(ws.area == doctest::Approx(lambda * lambda * w0.area).epsilon(1e-12));
  }
  // Cylinder translated along its axis keeps period_shift consistent.
  const ConformalGrid cyl = transformed(generators::cylinder(1.0, 32, 32), rotation3(r), Point(1, 2, 3, 0));
  CHECK(max_abs(mean_curvature(cyl).h.array() - 0.5) < 1e-10);
}

TEST_CASE("Willmore energy and area") {
  const WillmoreArea ct = willmore_area(mean_curvature(generators::clifford_torus(32, 32)));
  CHECK(std::abs(ct.area - 2 * kPi * kPi) < 1e-3 * 2 * kPi * kPi);
  CHECK(std::abs(ct.willmore - 2 * kPi * kPi) < 1e-3 * 2 * kPi * kPi);
  const WillmoreArea sq = willmore_area(mean_curvature(generators::torus_of_revolution(std::sqrt(2.0), 1.0, 64, 64)));
  CHECK(std::abs(sq.willmore - 2 * kPi * kPi) < 1e-3 * 2 * kPi * kPi);
  for (double c : {1.5, 2.0, 3.0}) {
    const WillmoreArea w = willmore_area(mean_curvature(generators::torus_of_revolution(c, 1.0, 64, 64)));
    CHECK(w.willmore == doctest::Approx(torus_willmore_closed_form(c, 1.0)).epsilon(1e-8));
    CHECK(w.area == doctest::Approx(4 * kPi * kPi * c).epsilon(1e-8));
  }
}

TEST_CASE("Gauss-Bonnet") {
  for (const ConformalGrid& s :
       {generators::clifford_torus(32, 32), generators::torus_of_revolution(2.0, 1.0, 32, 32),
        generators::torus_of_revolution(std::sqrt(2.0), 1.0, 48, 64)}) {
    const GaussBonnet gb = gauss_bonnet(s.grid, conformal_factor(s).rho);
    CHECK(gb.chi == 0);
    CHECK(gb.residual < 1e-8);
  }
  const Grid2D open{16, 16, 1, 1, {false, true}};
  CHECK_THROWS_AS(gauss_bonnet(open, Eigen::VectorXd::Ones(256)), dwl::Error);
}

TEST_CASE("Christoffel symbols") {
  const Grid2D g = periodic_grid(16);
  const ConnectionField flat = christoffel_conformal(g, Eigen::VectorXd::Constant(g.size(), 2.0));
  for (auto& a : flat.gamma)
    for (auto& b : a)
      for (auto& c : b) CHECK(max_abs(c) == 0.0);

  // rho = exp(2u) on an open patch (finite differences, second order).
  const Grid2D patch{64, 16, 1.0, 1.0, {false, true}};
  const ConnectionField e = christoffel_conformal(patch, field(patch, [](double u, double) { return std::exp(2 * u); }));
  CHECK(max_abs(e.gamma[0][0][0].array() - 1) < 2e-3);
  CHECK(max_abs(e.gamma[0][1][1].array() + 1) < 2e-3);
  CHECK(max_abs(e.gamma[1][0][1].array() - 1) < 2e-3);
  CHECK(max_abs(e.gamma[1][1][0].array() - 1) < 2e-3);
  CHECK(max_abs(e.gamma[1][1][1]) == 0.0);
  CHECK(max_abs(e.gamma[0][0][1]) == 0.0);

  auto r = testsupport::rng(31);
  const Eigen::VectorXd rho = field(g, [&](double u, double v) { return 1.5 + 0.3 * std::sin(u + 0.4) * std::cos(2 * v); });
  const ConnectionField c = christoffel_conformal(g, rho);
  for (int a = 0; a < 2; ++a) CHECK(max_abs(c.gamma[a][0][1] - c.gamma[a][1][0]) == 0.0);
  CHECK(max_abs(c.gamma[0][0][0]) > 1e-3);
  CHECK_THROWS_AS(christoffel_conformal(g, -rho), dwl::Error);
}

TEST_CASE("spin connection") {
  const Grid2D g = periodic_grid(16);
  for (int ambient : {3, 4}) {
    const ConnectionField flat = spin_connection_conformal(g, Eigen::VectorXd::Constant(g.size(), 0.5), ambient);
    for (int a = 0; a < 2; ++a)
      for (const auto& w : flat.omega[a]) CHECK(w.cwiseAbs().maxCoeff() == 0.0);

    const Eigen::VectorXd rho = field(g, [](double u, double v) { return 2 + std::cos(u) * std::sin(v); });
    const ConnectionField c = spin_connection_conformal(g, rho, ambient);
    double nonzero = 0;
    for (int a = 0; a < 2; ++a)
      for (const auto& w : c.omega[a]) {
        CHECK((w + w.adjoint()).cwiseAbs().maxCoeff() < 1e-14);
        nonzero = std::max(nonzero, w.cwiseAbs().maxCoeff());
      }
    CHECK(nonzero > 1e-3);

    const Grid2D patch{32, 16, 1.0, 1.0, {false, true}};
    const ConnectionField e = spin_connection_conformal(patch, field(patch, [](double u, double) { return std::exp(2 * u); }), ambient);
    const auto gam = frame_gammas(ambient);
    const Eigen::MatrixXcd s12 = 0.5 * gam[0] * gam[1];
    for (int k = 0; k < patch.size(); ++k) {
      CHECK(e.omega[0][k].cwiseAbs().maxCoeff() == 0.0);
      // omega_2 = -1/2 rho^{-1} d_u rho sigma^{12} = -sigma^{12}
      CHECK((e.omega[1][k] + s12).cwiseAbs().maxCoeff() < 1e-2);
    }
  }
}

TEST_CASE("anti-self-adjoint factor") {
  const Grid2D g = periodic_grid(16);
  const Eigen::MatrixXd plain = grid_derivative_matrix(g, 0, Sector::periodic);
  CHECK((anti_self_adjoint_factor(g, Eigen::VectorXd::Ones(g.size()), 0) - plain).cwiseAbs().maxCoeff() < 1e-14);

  const Eigen::VectorXd rho = field(g, [](double u, double v) { return 1.2 + 0.5 * std::sin(u) * std::cos(v); });
  for (int axis = 0; axis < 2; ++axis)
    for (Sector sector : {Sector::periodic, Sector::antiperiodic}) {
      const Eigen::MatrixXd a = anti_self_adjoint_factor(g, rho, axis, sector);
      // Adjoint in <f, h> = sum rho f h.
      const Eigen::MatrixXd adj = rho.cwiseInverse().asDiagonal() * a.transpose() * rho.asDiagonal();
      CHECK((a + adj).cwiseAbs().maxCoeff() < 1e-10);
    }
  // Acting on constants gives (1/2) d log rho.
  const Grid2D fine = periodic_grid(32);
  const Eigen::VectorXd rho_f = field(fine, [](double u, double v) { return 1.2 + 0.5 * std::sin(u) * std::cos(v); });
  const Eigen::MatrixXd a = anti_self_adjoint_factor(fine, rho_f, 0);
  const Eigen::VectorXd half_log = 0.5 * grid_derivative(fine, Eigen::VectorXd(rho_f.array().log()), 0);
  CHECK(max_abs(a * Eigen::VectorXd::Ones(fine.size()) - half_log) < 1e-9);
  const Grid2D patch{32, 16, 1.0, 1.0, {false, true}};
  const Eigen::MatrixXd e = anti_self_adjoint_factor(patch, field(patch, [](double u, double) { return std::exp(2 * u); }), 0);
  CHECK(max_abs((e * Eigen::VectorXd::Ones(patch.size())).array() - 1.0) < 1e-2);

  CHECK_THROWS_AS(anti_self_adjoint_factor_metric(g, Eigen::VectorXd::Zero(g.size()), 0), dwl::Error);
  // Metric form agrees with the rho form when g = rho^2.
  CHECK((anti_self_adjoint_factor_metric(g, rho.array().square(), 1) - anti_self_adjoint_factor(g, rho, 1))
            .cwiseAbs()
            .maxCoeff() == 0.0);
}

TEST_CASE("surface Weierstrass spinor") {
  const ConformalGrid cyl = generators::cylinder(1.0, 32, 32);
  const SurfaceSpinor s = weierstrass_spinor_surface(cyl);
  CHECK(s.sector[0] == Sector::antiperiodic);
  CHECK(s.sector[1] == Sector::periodic);
  for (int k = 0; k < cyl.grid.size(); ++k) {
    const double u = (k / cyl.grid.nv) * cyl.grid.du();
    const std::complex<double> phase = std::polar(1.0, u / 2);
    // Both components are multiples of exp(i u / 2) with fixed coefficients.
    CHECK(std::abs(s.psi1[k] / phase - s.psi1[0]) < 1e-12);
    CHECK(std::abs(s.psi2[k] / phase - s.psi2[0]) < 1e-12);
    CHECK(std::norm(s.psi1[k]) == doctest::Approx(std::abs(s.dz[k])).epsilon(1e-12));
    CHECK(std::norm(s.psi2[k]) == doctest::Approx(std::abs(s.dz[k])).epsilon(1e-12));
  }
  const ConformalGrid t = generators::torus_of_revolution(2.0, 1.0, 32, 32);
  const SurfaceSpinor ts = weierstrass_spinor_surface(t);
  // dZ = (i/2) e^{iu} (R + r cos phi)(1 + sin phi): the smooth root passes
  // through the double zero and changes sign once per meridian.
  CHECK(ts.sector[0] == Sector::antiperiodic);
  CHECK(ts.sector[1] == Sector::antiperiodic);

  auto r = testsupport::rng(32);
  ConformalGrid noisy = generators::cylinder(1.0, 32, 32);
  for (Point& p : noisy.points) p[2] += 0.05 * testsupport::uniform(r);
  CHECK_THROWS_AS(weierstrass_spinor_surface(noisy), dwl::Error);
}
