#pragma once

// Pseudo-spectral MKdV flow v_t + 6 v^2 v_s + v_sss = 0 of a periodic
// curvature profile v = k / 2, with conserved quantities, isospectrality
// measurement for the curve Dirac operator and plane-curve reconstruction.

#include <memory>
#include <vector>

#include <Eigen/Dense>

#include "dwl/curvegeo.hpp"
#include "dwl/spectral.hpp"

namespace dwl::mkdv {

inline constexpr int kMinGrid = 64;
inline constexpr double kBlowUp = 1e6;
// Admissible steps satisfy |dt| <= kStabilityConstant (L / N)^3.
inline constexpr double kStabilityConstant = 1.0;
inline constexpr double kDefaultStepFactor = 0.25;

struct MkdvState {
  Eigen::VectorXd v;  // samples at s_j = j L / N
  double length = 0;
  double t = 0;
  long steps = 0;
  double last_dt = 0;

  int size() const { return static_cast<int>(v.size()); }
  double step() const { return length / v.size(); }
  void validate() const;
};

double stability_bound(int n, double length);
// 0.25 (L / N)^3 * factor, factor in (0, 1].
double default_dt(int n, double length, double factor = 1.0);

// Integrating-factor RK4 (Lawson) with fixed dt. Holds FFTW plans and the
// exponential factors, so repeated steps do not replan.
class Stepper {
 public:
  Stepper(int n, double length, double dt);
  ~Stepper();
  Stepper(const Stepper&) = delete;
  Stepper& operator=(const Stepper&) = delete;

  void step(MkdvState& s);
  double dt() const { return dt_; }

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
  double dt_;
};

MkdvState mkdv_step(const MkdvState& s, double dt);

// Advances by `duration` (may be negative) in ceil(|duration| / max_dt) equal steps.
MkdvState evolve(const MkdvState& s, double duration, double max_dt);

struct Conserved {
  double int_v = 0;
  double int_v2 = 0;
};

Conserved conserved_quantities(const MkdvState& s);

struct FlowSample {
  double t = 0;
  double int_v = 0;
  double int_v2 = 0;
  double max_v = 0;
};

struct FlowDiagnostics {
  std::vector<FlowSample> series;           // strictly increasing t
  std::vector<Eigen::VectorXd> spectra;     // per snapshot (isospectrality runs only)
  std::vector<MkdvState> states;
};

// Snapshots at t = j T / snapshots, j = 0..snapshots.
FlowDiagnostics run(const MkdvState& v0, double T, int snapshots, double max_dt);

struct IsospectralityReport {
  spectral::Sector sector = spectral::Sector::antiperiodic;
  int levels = 0;
  std::vector<double> times;
  std::vector<Eigen::VectorXd> eigenvalues;  // levels smallest-|lambda|, sorted ascending
  std::vector<double> drift;                 // max |lambda_j(t) - lambda_j(0)|
  double max_drift = 0;
  double min_spacing = 0;  // smallest gap between matched levels at t = 0
  bool crossing_suspected = false;
  FlowDiagnostics diagnostics;
};

// Eigenvalues of i D for the canonical operator with k = 2 v at a fixed sector.
Eigen::VectorXd lowest_levels(const MkdvState& s, int levels, spectral::Sector sector);

IsospectralityReport isospectrality_check(const MkdvState& v0, double T, int snapshots, double max_dt,
                                          int levels = 10,
                                          spectral::Sector sector = spectral::Sector::antiperiodic,
                                          int threads = 0);

struct CurveSnapshot {
  double t = 0;
  FlowSample sample;
  curve::ArclengthCurve curve;
  double closure_gap = 0;
  bool closure_warning = false;  // gap > 1e-2 L
  double bending_energy = 0;     // int k^2 ds = 4 int v^2 ds
  int rotation_number = 0;       // round((1/2pi) int k ds)
  double rotation_raw = 0;
};

std::vector<CurveSnapshot> flow_curve(const curve::ArclengthCurve& c, double T, int snapshots, double max_dt);

// alpha sech(alpha (s - center)) sampled on [0, L).
MkdvState soliton(int n, double length, double alpha, double center);
// mean + amplitude cos(2 pi mode s / L).
MkdvState cosine(int n, double length, double mean, double amplitude, int mode = 1);

}  // namespace dwl::mkdv
