#pragma once

// Discrete closed-curve geometry in E^2 and E^3.

#include <functional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "dwl/spectral.hpp"

namespace dwl::curve {

using Point = Eigen::Vector3d;  // plane curves keep z = 0
using Complex = std::complex<double>;

// Raw input samples.
struct CurveSamples {
  int ambient = 2;
  bool closed = true;
  std::vector<Point> points;

  void validate() const;
};

// Samples at uniform arclength step. Closed curves hold N samples with
// s_i = i h and L = N h; open curves hold N samples with L = (N - 1) h.
struct ArclengthCurve {
  int ambient = 2;
  bool closed = true;
  double length = 0;
  double step = 0;
  std::vector<Point> points;

  int size() const { return static_cast<int>(points.size()); }
  Eigen::VectorXd coordinate(int axis) const;
  Eigen::VectorXd arclength() const;
};

enum class Differentiation { spectral, centered };

struct CurvatureData {
  int ambient = 2;
  bool closed = true;
  double length = 0;
  double step = 0;
  Eigen::VectorXd kappa;          // >= 0
  Eigen::VectorXd tau;            // zero for plane curves
  Eigen::VectorXd k;              // signed curvature (plane curves), kappa otherwise
  Eigen::VectorXd torsion_phase;  // cumulative trapezoid of tau from s = 0
  Eigen::VectorXcd kappa_c;       // kappa exp(i torsion_phase)
  double total_torsion = 0;       // closed curves: integral over the full loop
  bool kappa_c_periodic = true;

  int size() const { return static_cast<int>(kappa.size()); }
  Eigen::VectorXd v() const { return 0.5 * k; }
  // Off-diagonal entry of the canonical curve Dirac operator: signed k for
  // plane curves, kappa_C for space curves.
  Eigen::VectorXcd dirac_potential() const;
};

// Generic arclength parametrization of t -> position(t) on [t0, t1] with
// quadrature on the given breakpoints (uniform if empty).
ArclengthCurve arclength_parametrize(const std::function<Point(double)>& position,
                                     const std::function<Point(double)>& velocity, double t0, double t1, int n,
                                     bool closed, int ambient, std::vector<double> breakpoints = {});

// Cubic-spline (chord-length parameter) resampling at uniform arclength.
ArclengthCurve resample_arclength(const CurveSamples& c, int n, bool require_closed = true);

CurvatureData frenet_data(const ArclengthCurve& c, Differentiation scheme);
// Spectral for closed curves, centered differences for open ones.
CurvatureData frenet_data(const ArclengthCurve& c);

struct ComplexCurvature {
  Eigen::VectorXcd values;
  Eigen::VectorXd phase;
  double total_phase = 0;
  bool periodic = true;
};

// kappa_C = kappa exp(i int_0^s tau); `periodic` is false for closed curves
// whose total torsion is not a multiple of 2 pi.
ComplexCurvature complex_curvature(const Eigen::VectorXd& kappa, const Eigen::VectorXd& tau, double step,
                                   bool closed);

struct RotationNumber {
  int value = 0;
  double raw = 0;       // (1/2pi) int k ds
  double residual = 0;  // |raw - value|
};

RotationNumber rotation_number(const ArclengthCurve& c);

struct WritheResult {
  double value = 0;
  double min_distance = 0;  // between samples more than 20 steps apart
  bool near_self_intersection = false;
};

// Gauss double integral with the |i - j| <= 1 band excluded.
WritheResult writhe(const ArclengthCurve& c, int threads = 0);

struct EulerBernoulli {
  double integral = 0;    // int kappa^2 ds
  double normalized = 0;  // (1/2pi) int kappa^2 ds
};

EulerBernoulli euler_bernoulli(const CurvatureData& d);

struct Reconstruction {
  ArclengthCurve curve;
  double closure_gap = 0;  // |X(L) - X(0)| for closed profiles
};

// Integrates the Frenet-Serret system with RK4 from X(0) = 0 and the frame
// (e1, e2, e3). Closed profiles are treated as periodic samples s_i = i L / N.
Reconstruction reconstruct_from_curvature(const Eigen::VectorXd& k, double length, bool closed);
Reconstruction reconstruct_from_curvature(const Eigen::VectorXd& kappa, const Eigen::VectorXd& tau, double length,
                                          bool closed);

struct CurveSpinor {
  Eigen::VectorXcd psi1;  // continuous sqrt of dX/ds, X = X1 + i X2
  Eigen::VectorXcd psi2;  // continuous sqrt of -dX/ds
  spectral::Sector sector = spectral::Sector::antiperiodic;
};

CurveSpinor weierstrass_spinor_curve(const ArclengthCurve& c, Differentiation scheme = Differentiation::spectral);

// Rigid motion x -> R x + t applied to every sample.
ArclengthCurve transformed(const ArclengthCurve& c, const Eigen::Matrix3d& rotation, const Eigen::Vector3d& shift);

namespace generators {
ArclengthCurve circle(double radius, int n, int turns = 1);
ArclengthCurve ellipse(double a, double b, int n);
// Lemniscate of Gerono scaled by `scale`: (cos t, sin t cos t).
ArclengthCurve figure_eight(double scale, int n);
// Open helix (a cos t, a sin t, b t), t in [0, 2 pi turns].
ArclengthCurve helix(double a, double b, double turns, int n);
// ((R + r cos(q t)) cos(p t), (R + r cos(q t)) sin(p t), r sin(q t)), t in [0, 2pi).
ArclengthCurve torus_knot(int p, int q, double big_r, double small_r, int n);
}  // namespace generators

}  // namespace dwl::curve
