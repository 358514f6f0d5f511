#include <doctest.h>

#include <cmath>
#include <numbers>

#include "dwl/curvegeo.hpp"
#include "support.hpp"

using namespace dwl::curve;
using dwl::spectral::Sector;
constexpr double kPi = std::numbers::pi;

namespace {

CurveSamples samples_of(const ArclengthCurve& c) {
  CurveSamples s;
  s.ambient = c.ambient;
  s.closed = c.closed;
  s.points = c.points;
  return s;
}

Eigen::Matrix3d random_rotation(testsupport::Rng& r) {
  Eigen::Matrix3d a;
  for (int i = 0; i < 9; ++i) a(i) = testsupport::uniform(r);
  Eigen::HouseholderQR<Eigen::Matrix3d> qr(a);
  Eigen::Matrix3d q = qr.householderQ();
  if (q.determinant() < 0) q.col(0) *= -1;
  return q;
}

ArclengthCurve as_space(const ArclengthCurve& c) {
  ArclengthCurve out = c;
  out.ambient = 3;
  return out;
}

// Largest distance between corresponding points after optimal rigid alignment.
double aligned_distance(const ArclengthCurve& a, const ArclengthCurve& b) {
  const int n = a.size();
  Eigen::MatrixXd p(3, n), q(3, n);
  for (int i = 0; i < n; ++i) {
    p.col(i) = a.points[i];
    q.col(i) = b.points[i];
  }
  const Eigen::Vector3d pc = p.rowwise().mean(), qc = q.rowwise().mean();
  p.colwise() -= pc;
  q.colwise() -= qc;
  Eigen::JacobiSVD<Eigen::Matrix3d> svd(q * p.transpose(), Eigen::ComputeFullU | Eigen::ComputeFullV);
  Eigen::Matrix3d d = Eigen::Matrix3d::Identity();
  d(2, 2) = (svd.matrixU() * svd.matrixV().transpose()).determinant() < 0 ? -1 : 1;
  const Eigen::Matrix3d rot = svd.matrixU() * d * svd.matrixV().transpose();
  return (rot * p - q).colwise().norm().maxCoeff();
}

ArclengthCurve double_circle(int n) { return generators::circle(1.0, n, 2); }

}  // namespace

TEST_CASE("resampling") {
  const ArclengthCurve circle = generators::circle(1.0, 64);
  const ArclengthCurve r = resample_arclength(samples_of(circle), 64);
  CHECK(std::abs(r.length - 2 * kPi) < 1e-4);
  double moved = 0;
  for (int i = 0; i < 64; ++i) moved = std::max(moved, (r.points[i] - circle.points[i]).norm());
  CHECK(moved < 1e-10);
  CHECK(resample_arclength(samples_of(circle), 128).length == doctest::Approx(r.length).epsilon(1e-12));

  CHECK_THROWS_AS(resample_arclength(samples_of(circle), 4), dwl::Error);
  CurveSamples open = samples_of(circle);
  open.closed = false;
  CHECK_THROWS_AS(resample_arclength(open, 64), dwl::Error);
  CHECK_NOTHROW(resample_arclength(open, 64, false));
  CurveSamples repeated = samples_of(circle);
  repeated.points[5] = repeated.points[4];
  CHECK_THROWS_AS(resample_arclength(repeated, 64), dwl::Error);
  CurveSamples tiny;
  tiny.points.assign(5, Point::Zero());
  CHECK_THROWS_AS(tiny.validate(), dwl::Error);

  // Non-uniform input: dense ellipse in its natural parameter, compared
  // against exact arclength samples.
  CurveSamples ell;
  for (int i = 0; i < 3000; ++i) {
    const double t = 2 * kPi * i / 3000;
    ell.points.emplace_back(2 * std::cos(t), std::sin(t), 0);
  }
  const ArclengthCurve got = resample_arclength(ell, 128);
  const ArclengthCurve exact = generators::ellipse(2, 1, 128);
  CHECK(got.length == doctest::Approx(exact.length).epsilon(1e-9));
  double worst = 0;
  for (int i = 0; i < 128; ++i) worst = std::max(worst, (got.points[i] - exact.points[i]).norm());
  CHECK(worst < 1e-8);
}

TEST_CASE("generators sit at uniform arclength") {
  const ArclengthCurve e = generators::ellipse(1.5, 0.7, 256);
  const ArclengthCurve fine = generators::ellipse(1.5, 0.7, 1024);
  for (int i = 0; i < 256; ++i) CHECK((e.points[i] - fine.points[4 * i]).norm() < 1e-12);
  CHECK(e.step * 256 == doctest::Approx(e.length));
}

TEST_CASE("Frenet data on analytic curves") {
  for (double radius : {0.5, 1.0, 3.0}) {
    const CurvatureData d = frenet_data(generators::circle(radius, 64));
    CHECK((d.kappa.array() - 1 / radius).abs().maxCoeff() < 1e-12);
    CHECK((d.k.array() - 1 / radius).abs().maxCoeff() < 1e-12);
    CHECK(d.tau.cwiseAbs().maxCoeff() == 0.0);
    CHECK((d.kappa_c.imag()).cwiseAbs().maxCoeff() == 0.0);
    CHECK((d.kappa_c.real() - d.kappa).cwiseAbs().maxCoeff() < 1e-15);
    CHECK(d.v()[3] == doctest::Approx(0.5 / radius));
  }
  // Space circle in a tilted plane.
  auto r = testsupport::rng(20);
  const ArclengthCurve tilted = transformed(as_space(generators::circle(2.0, 64)), random_rotation(r), {1, 2, 3});
  const CurvatureData dt = frenet_data(tilted);
  CHECK((dt.kappa.array() - 0.5).abs().maxCoeff() < 1e-10);
  CHECK(dt.tau.cwiseAbs().maxCoeff() < 1e-8);

  // Helix, open, centered differences: second-order convergence.
  const double a = 1.3, b = 0.4;
  const double kappa = a / (a * a + b * b), tau = b / (a * a + b * b);
  double prev_k = 0, prev_t = 0;
  for (int n : {200, 400, 800}) {
    const CurvatureData d = frenet_data(generators::helix(a, b, 2.0, n));
    const double ek = (d.kappa.array() - kappa).abs().maxCoeff();
    const double et = (d.tau.array() - tau).abs().maxCoeff();
    CHECK(ek < 1e-3);
    CHECK(et < 1e-3);
    if (prev_k > 0) {
      CHECK(prev_k / ek == doctest::Approx(4).epsilon(0.2));
      CHECK(prev_t / et == doctest::Approx(4).epsilon(0.2));
    }
    prev_k = ek;
    prev_t = et;
    // Complex curvature: constant modulus, phase slope tau.
    CHECK((d.kappa_c.cwiseAbs() - d.kappa).cwiseAbs().maxCoeff() < 1e-10);
    const double slope = d.torsion_phase[n - 1] / (d.step * (n - 1));
    CHECK(slope == doctest::Approx(tau).epsilon(1e-3));
  }

  // Straight polyline in space.
  ArclengthCurve line;
  line.ambient = 3;
  line.closed = false;
  line.step = 0.1;
  line.length = 0.1 * 19;
  for (int i = 0; i < 20; ++i) line.points.emplace_back(0.1 * i, 0.05 * i, 0);
  CHECK_THROWS_AS(frenet_data(line), dwl::Error);
}

TEST_CASE("centered differences converge at second order on closed curves") {
  double prev = 0;
  for (int n : {64, 128, 256}) {
    const ArclengthCurve c = generators::ellipse(1.0, 0.6, n);
    const CurvatureData fd = frenet_data(c, Differentiation::centered);
    const CurvatureData sp = frenet_data(c, Differentiation::spectral);
    const double err = (fd.k - sp.k).cwiseAbs().maxCoeff();
    if (prev > 0) CHECK(prev / err == doctest::Approx(4).epsilon(0.2));
    prev = err;
  }
}

TEST_CASE("complex curvature periodicity flag") {
  const int n = 64;
  const Eigen::VectorXd kappa = Eigen::VectorXd::Ones(n), tau = Eigen::VectorXd::Constant(n, 0.3);
  const double closing = 2 * kPi / 0.3;
  CHECK(complex_curvature(kappa, tau, closing / n, true).periodic);
  CHECK_FALSE(complex_curvature(kappa, tau, 1.1 * closing / n, true).periodic);
  CHECK(complex_curvature(kappa, tau, 1.1 * closing / n, false).periodic);
  const ComplexCurvature cc = complex_curvature(kappa, tau, 0.1, true);
  CHECK(cc.total_phase == doctest::Approx(0.3 * 0.1 * n));
}

TEST_CASE("rotation numbers") {
  CHECK(rotation_number(generators::circle(1.0, 128)).value == 1);
  CHECK(rotation_number(generators::figure_eight(1.0, 256)).value == 0);
  CHECK(rotation_number(double_circle(256)).value == 2);
  const RotationNumber rn = rotation_number(generators::ellipse(2, 1, 128));
  CHECK(rn.value == 1);
  CHECK(rn.residual < 1e-10);
  // Reflection (x -> -x) negates rotation number and signed curvature.
  const Eigen::Matrix3d flip = Eigen::Vector3d(-1, 1, 1).asDiagonal();
  const ArclengthCurve e = generators::ellipse(2, 1, 128);
  const ArclengthCurve m = transformed(e, flip, Eigen::Vector3d::Zero());
  CHECK(rotation_number(m).value == -1);
  const CurvatureData de = frenet_data(e), dm = frenet_data(m);
  CHECK((de.k + dm.k).cwiseAbs().maxCoeff() < 1e-10);
  CHECK((de.kappa - dm.kappa).cwiseAbs().maxCoeff() < 1e-10);
  CHECK_THROWS_AS(rotation_number(generators::torus_knot(2, 3, 2, 1, 64)), dwl::Error);
}

TEST_CASE("writhe") {
  auto r = testsupport::rng(21);
  const ArclengthCurve planar = transformed(as_space(generators::ellipse(2, 1, 256)), random_rotation(r), {0.5, -1, 2});
  CHECK(std::abs(writhe(planar).value) < 1e-8);

  const ArclengthCurve knot = generators::torus_knot(2, 3, 2.0, 1.0, 256);
  const double w = writhe(knot).value;
  const ArclengthCurve mirror = transformed(knot, Eigen::Vector3d(1, 1, -1).asDiagonal(), Eigen::Vector3d::Zero());
  CHECK(writhe(mirror).value == doctest::Approx(-w).epsilon(1e-12));
  const double oracle = writhe(generators::torus_knot(2, 3, 2.0, 1.0, 1024)).value;
  CHECK(std::abs(w - oracle) < 1e-3);
  CHECK_FALSE(writhe(knot).near_self_intersection);

  // Second-order convergence against the fine oracle.
  const double e1 = std::abs(writhe(generators::torus_knot(2, 3, 2.0, 1.0, 128)).value - oracle);
  const double e2 = std::abs(writhe(generators::torus_knot(2, 3, 2.0, 1.0, 256)).value - oracle);
  CHECK(e1 / e2 > 3.0);

  // Chunking does not change the sum.
  CHECK(writhe(knot, 1).value == writhe(knot, 4).value);
  CHECK(writhe(knot, 3).value == writhe(knot, 7).value);

  CHECK_THROWS_AS(writhe(generators::circle(1.0, 64)), dwl::Error);
}

TEST_CASE("near self-intersection is reported") {
  const ArclengthCurve pinched =
      arclength_parametrize([](double t) { return Point(std::cos(t), std::sin(2 * t) / 2, 0.002 * std::sin(t)); },
                            [](double t) { return Point(-std::sin(t), std::cos(2 * t), 0.002 * std::cos(t)); }, 0,
                            2 * kPi, 256, true, 3);
  CHECK(writhe(pinched).near_self_intersection);
}

TEST_CASE("Euler-Bernoulli functional") {
  for (double radius : {0.5, 1.0, 4.0}) {
    const EulerBernoulli eb = euler_bernoulli(frenet_data(generators::circle(radius, 128)));
    CHECK(std::abs(eb.integral - 2 * kPi / radius) < 1e-6);
    CHECK(eb.normalized == doctest::Approx(1 / radius));
  }
  const ArclengthCurve e = generators::ellipse(1.2, 0.8, 128);
  const double base = euler_bernoulli(frenet_data(e)).integral;
  for (double lambda : {0.5, 2.0, 3.0}) {
    const ArclengthCurve s = transformed(e, lambda * Eigen::Matrix3d::Identity(), Eigen::Vector3d::Zero());
    ArclengthCurve scaled = s;
    scaled.length = lambda * e.length;
    scaled.step = lambda * e.step;
    CHECK(euler_bernoulli(frenet_data(scaled)).integral == doctest::Approx(base / lambda).epsilon(1e-10));
  }
  ArclengthCurve seg;
  seg.ambient = 2;
  seg.closed = false;
  seg.step = 0.25;
  seg.length = 0.25 * 15;
  for (int i = 0; i < 16; ++i) seg.points.emplace_back(0.25 * i, 0, 0);
  CHECK(euler_bernoulli(frenet_data(seg)).integral == 0.0);
}

TEST_CASE("rigid-motion invariance") {
  auto r = testsupport::rng(22);
  const ArclengthCurve knot = generators::torus_knot(2, 3, 2.0, 0.8, 256);
  const CurvatureData d0 = frenet_data(knot);
  const double w0 = writhe(knot).value;
  const double b0 = euler_bernoulli(d0).integral;
  for (int t = 0; t < 3; ++t) {
    const Eigen::Vector3d shift(testsupport::uniform(r), testsupport::uniform(r), testsupport::uniform(r));
    const ArclengthCurve moved = transformed(knot, random_rotation(r), shift);
    const CurvatureData d = frenet_data(moved);
    CHECK((d.kappa - d0.kappa).cwiseAbs().maxCoeff() < 1e-10);
    CHECK((d.tau - d0.tau).cwiseAbs().maxCoeff() < 1e-10);
    CHECK(std::abs(writhe(moved).value - w0) < 1e-10);
    CHECK(std::abs(euler_bernoulli(d).integral - b0) < 1e-10);
  }
}

TEST_CASE("reconstruction") {
  // Constant curvature closes into a circle with O(h^4) gap.
  double prev_gap = 0;
  for (int n : {32, 64, 128}) {
    const double radius = 1.7;
    const Reconstruction rc = reconstruct_from_curvature(Eigen::VectorXd::Constant(n, 1 / radius), 2 * kPi * radius, true);
    const Point center(0, radius, 0);
    double dev = 0;
    for (const Point& p : rc.curve.points) dev = std::max(dev, std::abs((p - center).norm() - radius));
    CHECK(dev < 1e-4);
    if (prev_gap > 0) CHECK(prev_gap / rc.closure_gap == doctest::Approx(16).epsilon(0.2));
    prev_gap = rc.closure_gap;
  }
  // Zero curvature: straight line along e1.
  const Reconstruction line = reconstruct_from_curvature(Eigen::VectorXd::Zero(11), 5.0, false);
  for (int i = 0; i < 11; ++i) CHECK((line.curve.points[i] - Point(0.5 * i, 0, 0)).norm() < 1e-14);

  // Round trip on a random smooth open profile: sup-error O(h^2).
  auto r = testsupport::rng(23);
  const double phase = testsupport::uniform(r, 0, 2 * kPi);
  double prev = 0;
  for (int n : {129, 257, 513}) {
    Eigen::VectorXd k(n);
    for (int i = 0; i < n; ++i) {
      const double s = static_cast<double>(i) / (n - 1);
      k[i] = 1.0 + 0.5 * std::sin(3 * s) + 0.3 * std::cos(7 * s + phase);
    }
    const Reconstruction rc = reconstruct_from_curvature(k, 2.0, false);
    const CurvatureData d = frenet_data(rc.curve);
    const double err = (d.k - k).cwiseAbs().maxCoeff();
    CHECK(err < 1e-3);
    if (prev > 0) CHECK(prev / err == doctest::Approx(4).epsilon(0.25));
    prev = err;
  }
  // Space round trip.
  {
    const int n = 401;
    Eigen::VectorXd kappa(n), tau(n);
    for (int i = 0; i < n; ++i) {
      const double s = 3.0 * i / (n - 1);
      kappa[i] = 1.2 + 0.3 * std::cos(s);
      tau[i] = 0.4 * std::sin(2 * s);
    }
    const CurvatureData d = frenet_data(reconstruct_from_curvature(kappa, tau, 3.0, false).curve);
    CHECK((d.kappa - kappa).cwiseAbs().maxCoeff() < 1e-3);
    CHECK((d.tau - tau).cwiseAbs().maxCoeff() < 1e-3);
  }
}

TEST_CASE("reconstruct after frenet is the identity up to rigid motion") {
  double prev = 0;
  for (int n : {64, 128, 256}) {
    const ArclengthCurve e = generators::ellipse(1.4, 0.9, n);
    const CurvatureData d = frenet_data(e, Differentiation::centered);
    const Reconstruction rc = reconstruct_from_curvature(d.k, e.length, true);
    const double dist = aligned_distance(e, rc.curve);
    if (prev > 0) CHECK(prev / dist == doctest::Approx(4).epsilon(0.25));
    prev = dist;
  }
  CHECK(prev < 5e-3);
}

TEST_CASE("Weierstrass spinor of plane curves") {
  const ArclengthCurve c = generators::circle(1.0, 128);
  const CurveSpinor s = weierstrass_spinor_curve(c);
  CHECK(s.sector == Sector::antiperiodic);
  double err = 0;
  for (int i = 0; i < 128; ++i) {
    const double t = i * c.step;
    err = std::max(err, std::abs(s.psi1[i] - std::polar(1.0, (t + kPi / 2) / 2)));
    CHECK(std::norm(s.psi1[i]) == doctest::Approx(1.0).epsilon(1e-12));
  }
  CHECK(err < 1e-12);
  CHECK(((s.psi2.array() * s.psi2.array()) + (s.psi1.array() * s.psi1.array())).abs().maxCoeff() < 1e-12);

  // Sector parity follows the rotation number.
  for (const ArclengthCurve& curve : {generators::circle(1.0, 128), generators::figure_eight(1.0, 256),
                                      double_circle(256), generators::ellipse(2, 1, 128)}) {
    const int rot = rotation_number(curve).value;
    const Sector expected = (rot % 2 != 0) ? Sector::antiperiodic : Sector::periodic;
    CHECK(weierstrass_spinor_curve(curve).sector == expected);
  }
  CHECK(weierstrass_spinor_curve(double_circle(256)).sector == Sector::periodic);
  CHECK_THROWS_AS(weierstrass_spinor_curve(generators::torus_knot(2, 3, 2, 1, 64)), dwl::Error);
}
