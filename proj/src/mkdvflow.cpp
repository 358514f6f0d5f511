#include "dwl/mkdvflow.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <sstream>

#include <fftw3.h>

#include "dwl/diracop.hpp"
#include "dwl/errors.hpp"
#include "dwl/parallel.hpp"

namespace dwl::mkdv {

namespace {

using Complex = std::complex<double>;
constexpr double kPi = std::numbers::pi;
constexpr Complex kI{0, 1};

void check_grid(int n, double length) {
  require(n >= kMinGrid && n % 2 == 0, ErrorKind::usage,
          "MKdV grid size must be even and at least " + std::to_string(kMinGrid) + " (got " + std::to_string(n) + ")");
  require(std::isfinite(length) && length > 0, ErrorKind::usage, "MKdV domain length must be positive");
}

void check_dt(int n, double length, double dt) {
  require(std::isfinite(dt) && dt > 0, ErrorKind::usage, "MKdV step must be positive");
  const double bound = stability_bound(n, length);
  if (dt > bound * (1 + 1e-12)) {
    std::ostringstream os;
    os.precision(6);
    os << "MKdV step " << dt << " exceeds the stability bound " << bound;
    fail(ErrorKind::usage, os.str());
  }
}

}  // namespace

void MkdvState::validate() const {
  check_grid(size(), length);
  require(v.allFinite(), ErrorKind::usage, "MKdV profile has non-finite samples");
}

double stability_bound(int n, double length) { return kStabilityConstant * std::pow(length / n, 3); }

double default_dt(int n, double length, double factor) {
  require(factor > 0 && factor <= 1, ErrorKind::usage, "step factor must lie in (0, 1]");
  return kDefaultStepFactor * std::pow(length / n, 3) * factor;
}

struct Stepper::Impl {
  int n = 0, m = 0;
  double* real = nullptr;
  fftw_complex* spec = nullptr;
  fftw_plan forward = nullptr, backward = nullptr;
  Eigen::VectorXcd ik;  // -2 i k, dealiased
  Eigen::VectorXcd half, full;
  Eigen::VectorXcd vh, a, b, c, d, work;

  void transform(const Eigen::VectorXd& in, Eigen::VectorXcd& out) {
    std::copy(in.data(), in.data() + n, real);
    fftw_execute(forward);
    out.resize(m);
    for (int j = 0; j < m; ++j) out[j] = Complex(spec[j][0], spec[j][1]);
  }

  void inverse(const Eigen::VectorXcd& in, Eigen::VectorXd& out) {
    for (int j = 0; j < m; ++j) {
      spec[j][0] = in[j].real();
      spec[j][1] = in[j].imag();
    }
    fftw_execute(backward);
    out.resize(n);
    for (int i = 0; i < n; ++i) out[i] = real[i] / n;
  }

  // -2 d_s (v^3), 2/3-rule dealiased.
  void nonlinear(const Eigen::VectorXcd& in, Eigen::VectorXcd& out) {
    Eigen::VectorXd v;
    inverse(in, v);
    transform(v.array().cube().matrix(), out);
    out = out.cwiseProduct(ik);
  }
};

Stepper::Stepper(int n, double length, double dt) : impl_(std::make_unique<Impl>()), dt_(dt) {
  check_grid(n, length);
  require(std::isfinite(dt) && dt != 0, ErrorKind::usage, "MKdV step must be nonzero");
  check_dt(n, length, std::abs(dt));
  Impl& p = *impl_;
  p.n = n;
  p.m = n / 2 + 1;
  {
    std::lock_guard lock(spectral::fftw_planner_mutex());
    p.real = fftw_alloc_real(n);
    p.spec = fftw_alloc_complex(p.m);
    p.forward = fftw_plan_dft_r2c_1d(n, p.real, p.spec, FFTW_ESTIMATE);
    p.backward = fftw_plan_dft_c2r_1d(n, p.spec, p.real, FFTW_ESTIMATE);
  }
  p.ik.resize(p.m);
  p.half.resize(p.m);
  p.full.resize(p.m);
  for (int j = 0; j < p.m; ++j) {
    // Nyquist mode carries no odd derivative.
    const double k = j == n / 2 ? 0.0 : 2 * kPi * j / length;
    p.ik[j] = 3 * j <= n ? -2.0 * kI * k : Complex(0);
    const Complex lin = kI * k * k * k;
    p.half[j] = std::exp(lin * (dt / 2));
    p.full[j] = std::exp(lin * dt);
  }
}

Stepper::~Stepper() {
  std::lock_guard lock(spectral::fftw_planner_mutex());
  fftw_destroy_plan(impl_->forward);
  fftw_destroy_plan(impl_->backward);
  fftw_free(impl_->real);
  fftw_free(impl_->spec);
}

void Stepper::step(MkdvState& s) {
  Impl& p = *impl_;
  require(s.size() == p.n, ErrorKind::usage, "state size does not match the stepper");
  const double h = dt_;
  p.transform(s.v, p.vh);
  p.nonlinear(p.vh, p.a);
  p.nonlinear(p.half.cwiseProduct(p.vh + (h / 2) * p.a), p.b);
  p.nonlinear(p.half.cwiseProduct(p.vh) + (h / 2) * p.b, p.c);
  p.nonlinear(p.full.cwiseProduct(p.vh) + h * p.half.cwiseProduct(p.c), p.d);
  p.work = p.full.cwiseProduct(p.vh) +
           (h / 6) * (p.full.cwiseProduct(p.a) + 2.0 * p.half.cwiseProduct(p.b + p.c) + p.d);
  p.inverse(p.work, s.v);
  s.t += h;
  ++s.steps;
  s.last_dt = h;
  const double peak = s.v.allFinite() ? s.v.cwiseAbs().maxCoeff() : INFINITY;
  if (!(peak <= kBlowUp)) {
    std::ostringstream os;
    os.precision(6);
    os << "MKdV blow-up: max|v| = " << peak << " at t = " << s.t << " after " << s.steps << " steps (dt = " << h
       << ")";
    fail(ErrorKind::numerical, os.str());
  }
}

MkdvState mkdv_step(const MkdvState& s, double dt) {
  s.validate();
  MkdvState out = s;
  Stepper(s.size(), s.length, dt).step(out);
  return out;
}

MkdvState evolve(const MkdvState& s, double duration, double max_dt) {
  s.validate();
  check_dt(s.size(), s.length, max_dt);
  require(std::isfinite(duration), ErrorKind::usage, "MKdV duration must be finite");
  if (duration == 0) return s;
  const long count = std::max(1L, static_cast<long>(std::ceil(std::abs(duration) / max_dt * (1 - 1e-12))));
  Stepper stepper(s.size(), s.length, duration / count);
  MkdvState out = s;
  for (long i = 0; i < count; ++i) stepper.step(out);
  out.t = s.t + duration;
  return out;
}

Conserved conserved_quantities(const MkdvState& s) {
  const double h = s.length / s.size();
  return {h * s.v.sum(), h * s.v.squaredNorm()};
}

namespace {

FlowSample sample(const MkdvState& s) {
  const Conserved c = conserved_quantities(s);
  return {s.t, c.int_v, c.int_v2, s.v.cwiseAbs().maxCoeff()};
}

}  // namespace

FlowDiagnostics run(const MkdvState& v0, double T, int snapshots, double max_dt) {
  v0.validate();
  require(snapshots >= 1, ErrorKind::usage, "need at least one snapshot");
  require(std::isfinite(T) && T > 0, ErrorKind::usage, "flow time must be positive");
  check_dt(v0.size(), v0.length, max_dt);
  const double segment = T / snapshots;
  const long per = std::max(1L, static_cast<long>(std::ceil(segment / max_dt * (1 - 1e-12))));
  Stepper stepper(v0.size(), v0.length, segment / per);
  FlowDiagnostics out;
  MkdvState s = v0;
  out.series.push_back(sample(s));
  out.states.push_back(s);
  for (int j = 1; j <= snapshots; ++j) {
    for (long i = 0; i < per; ++i) stepper.step(s);
    s.t = v0.t + j * segment;
    out.series.push_back(sample(s));
    out.states.push_back(s);
  }
  return out;
}

Eigen::VectorXd lowest_levels(const MkdvState& s, int levels, spectral::Sector sector) {
  s.validate();
  require(levels >= 1 && levels <= 2 * s.size(), ErrorKind::usage, "level count out of range");
  curve::CurvatureData d;
  d.ambient = 2;
  d.closed = true;
  d.length = s.length;
  d.step = s.step();
  d.k = 2 * s.v;
  d.kappa = d.k.cwiseAbs();
  d.tau = Eigen::VectorXd::Zero(s.size());
  d.torsion_phase = d.tau;
  d.kappa_c = d.k.cast<Complex>();
  d.kappa_c_periodic = true;
  const dirac::SpectrumResult r = dirac::spectrum(dirac::curve_dirac(d, {{sector}}));
  std::vector<double> ev(r.eigenvalues.size());
  for (Eigen::Index i = 0; i < r.eigenvalues.size(); ++i) ev[i] = r.eigenvalues[i].real();
  // Contiguous window of the ascending spectrum with the smallest max |lambda|;
  // near-ties (symmetric pairs at the cutoff) go to the lowest window.
  const int count = static_cast<int>(ev.size());
  require(levels <= count, ErrorKind::usage, "level count exceeds the resolved spectrum");
  std::vector<double> cost(count - levels + 1);
  for (int w = 0; w + levels <= count; ++w) cost[w] = std::max(std::abs(ev[w]), std::abs(ev[w + levels - 1]));
  const double best = *std::min_element(cost.begin(), cost.end());
  int start = 0;
  while (cost[start] > best + 1e-9 * (1 + best)) ++start;
  ev = std::vector<double>(ev.begin() + start, ev.begin() + start + levels);
  return Eigen::Map<Eigen::VectorXd>(ev.data(), levels);
}

IsospectralityReport isospectrality_check(const MkdvState& v0, double T, int snapshots, double max_dt, int levels,
                                          spectral::Sector sector, int threads) {
  IsospectralityReport rep;
  rep.sector = sector;
  rep.levels = levels;
  rep.diagnostics = run(v0, T, snapshots, max_dt);
  const auto& states = rep.diagnostics.states;
  rep.eigenvalues.assign(states.size(), Eigen::VectorXd());
  parallel_for(
      states.size(),
      [&](std::size_t b, std::size_t e) {
        for (std::size_t i = b; i < e; ++i) rep.eigenvalues[i] = lowest_levels(states[i], levels, sector);
      },
      threads);
  rep.diagnostics.spectra = rep.eigenvalues;
  const Eigen::VectorXd& ref = rep.eigenvalues.front();
  rep.min_spacing = INFINITY;
  for (int i = 1; i < levels; ++i) {
    const double gap = ref[i] - ref[i - 1];
    if (gap > 1e-8) rep.min_spacing = std::min(rep.min_spacing, gap);
  }
  for (std::size_t i = 0; i < states.size(); ++i) {
    rep.times.push_back(states[i].t);
    const double dr = (rep.eigenvalues[i] - ref).cwiseAbs().maxCoeff();
    rep.drift.push_back(dr);
    rep.max_drift = std::max(rep.max_drift, dr);
  }
  rep.crossing_suspected = rep.max_drift > rep.min_spacing;
  return rep;
}

std::vector<CurveSnapshot> flow_curve(const curve::ArclengthCurve& c, double T, int snapshots, double max_dt) {
  require(c.ambient == 2, ErrorKind::usage, "curve flow is implemented for plane curves");
  require(c.closed, ErrorKind::usage, "curve flow needs a closed curve");
  check_grid(c.size(), c.length);
  const curve::CurvatureData d = curve::frenet_data(c);
  MkdvState v0;
  v0.v = 0.5 * d.k;
  v0.length = c.length;
  const FlowDiagnostics flow = run(v0, T, snapshots, max_dt);
  std::vector<CurveSnapshot> out;
  for (std::size_t i = 0; i < flow.states.size(); ++i) {
    const MkdvState& s = flow.states[i];
    CurveSnapshot snap;
    snap.t = s.t;
    snap.sample = flow.series[i];
    const Eigen::VectorXd k = 2 * s.v;
    const curve::Reconstruction rec = curve::reconstruct_from_curvature(k, s.length, true);
    snap.curve = rec.curve;
    snap.closure_gap = rec.closure_gap;
    snap.closure_warning = rec.closure_gap > 1e-2 * s.length;
    snap.bending_energy = 4 * conserved_quantities(s).int_v2;
    snap.rotation_raw = s.step() * k.sum() / (2 * kPi);
    snap.rotation_number = static_cast<int>(std::lround(snap.rotation_raw));
    out.push_back(std::move(snap));
  }
  return out;
}

MkdvState soliton(int n, double length, double alpha, double center) {
  check_grid(n, length);
  require(std::isfinite(alpha) && alpha > 0, ErrorKind::usage, "soliton amplitude must be positive");
  MkdvState s;
  s.length = length;
  s.v.resize(n);
  for (int j = 0; j < n; ++j) {
    // Nearest periodic image of the centre.
    const double x = std::remainder(j * length / n - center, length);
    s.v[j] = alpha / std::cosh(alpha * x);
  }
  return s;
}

MkdvState cosine(int n, double length, double mean, double amplitude, int mode) {
  check_grid(n, length);
  MkdvState s;
  s.length = length;
  s.v.resize(n);
  for (int j = 0; j < n; ++j) s.v[j] = mean + amplitude * std::cos(2 * kPi * mode * j / n);
  return s;
}

}  // namespace dwl::mkdv
