#include "dwl/curvegeo.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include <Eigen/Eigenvalues>
#include <Eigen/Sparse>
#include <Eigen/SparseLU>

#include "dwl/errors.hpp"
#include "dwl/parallel.hpp"

namespace dwl::curve {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kDegenerateKappa = 1e-8;

struct GaussRule {
  std::vector<double> x, w;  // on [-1, 1]
};

// Golub-Welsch.
const GaussRule& gauss10() {
  static const GaussRule rule = [] {
    const int n = 10;
    Eigen::MatrixXd j = Eigen::MatrixXd::Zero(n, n);
    for (int k = 1; k < n; ++k) {
      const double b = k / std::sqrt(4.0 * k * k - 1.0);
      j(k, k - 1) = j(k - 1, k) = b;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(j);
    GaussRule r;
    for (int k = 0; k < n; ++k) {
      r.x.push_back(es.eigenvalues()[k]);
      r.w.push_back(2.0 * es.eigenvectors()(0, k) * es.eigenvectors()(0, k));
    }
    return r;
  }();
  return rule;
}

double speed_integral(const std::function<Point(double)>& velocity, double a, double b) {
  const GaussRule& g = gauss10();
  const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  double acc = 0;
  for (std::size_t k = 0; k < g.x.size(); ++k) acc += g.w[k] * velocity(mid + half * g.x[k]).norm();
  return acc * half;
}

Eigen::VectorXd diff(const Eigen::VectorXd& f, const ArclengthCurve& c, int order, Differentiation scheme) {
  if (c.closed && scheme == Differentiation::spectral) return spectral::derivative(f, c.length, order);
  return spectral::fd_derivative(f, c.step, order, c.closed ? spectral::Boundary::periodic : spectral::Boundary::open);
}

Differentiation default_scheme(const ArclengthCurve& c) {
  return c.closed && c.size() % 2 == 0 ? Differentiation::spectral : Differentiation::centered;
}

void check_scheme(const ArclengthCurve& c, Differentiation scheme) {
  if (c.closed && scheme == Differentiation::spectral)
    require(c.size() % 2 == 0, ErrorKind::usage, "spectral differentiation needs an even sample count");
}

// Per-coordinate cubic spline in the parameter t (natural or periodic).
class Spline {
 public:
  Spline(const std::vector<double>& t, const std::vector<Point>& y, bool periodic, int dims)
      : t_(t), y_(y), periodic_(periodic), m_(y.size(), Point::Zero()) {
    const int n = static_cast<int>(y.size());  // number of knots carrying values
    const int segments = periodic ? n : n - 1;
    auto h = [&](int i) { return t_[i + 1] - t_[i]; };
    auto val = [&](int i) -> const Point& { return y_[((i % n) + n) % n]; };
    Eigen::SparseMatrix<double> a(n, n);
    std::vector<Eigen::Triplet<double>> trip;
    Eigen::MatrixXd rhs = Eigen::MatrixXd::Zero(n, dims);
    for (int i = 0; i < n; ++i) {
      if (!periodic && (i == 0 || i == n - 1)) {
        trip.emplace_back(i, i, 1.0);
        continue;
      }
      const int prev = (i - 1 + segments) % segments;
      const double hl = h(prev), hr = h(i % segments);
      trip.emplace_back(i, (i - 1 + n) % n, hl / 6.0);
      trip.emplace_back(i, i, (hl + hr) / 3.0);
      trip.emplace_back(i, (i + 1) % n, hr / 6.0);
      for (int d = 0; d < dims; ++d)
        rhs(i, d) = (val(i + 1)[d] - val(i)[d]) / hr - (val(i)[d] - val(i - 1)[d]) / hl;
    }
    a.setFromTriplets(trip.begin(), trip.end());
    Eigen::SparseLU<Eigen::SparseMatrix<double>> lu(a);
    require(lu.info() == Eigen::Success, ErrorKind::numerical, "spline system is singular");
    const Eigen::MatrixXd m = lu.solve(rhs);
    for (int i = 0; i < n; ++i)
      for (int d = 0; d < dims; ++d) m_[i][d] = m(i, d);
  }

  Point position(double t) const {
    const auto [i, a, b, hh] = locate(t);
    const int n = static_cast<int>(y_.size());
    const Point& m0 = m_[i];
    const Point& m1 = m_[(i + 1) % n];
    const Point& y0 = y_[i];
    const Point& y1 = y_[(i + 1) % n];
    return m0 * (b * b * b) / (6 * hh) + m1 * (a * a * a) / (6 * hh) + (y0 - m0 * hh * hh / 6) * (b / hh) +
           (y1 - m1 * hh * hh / 6) * (a / hh);
  }

  Point velocity(double t) const {
    const auto [i, a, b, hh] = locate(t);
    const int n = static_cast<int>(y_.size());
    const Point& m0 = m_[i];
    const Point& m1 = m_[(i + 1) % n];
    return -m0 * (b * b) / (2 * hh) + m1 * (a * a) / (2 * hh) + (y_[(i + 1) % n] - y_[i]) / hh -
           (m1 - m0) * hh / 6;
  }

 private:
  struct Loc {
    int i;
    double a, b, h;
  };

  Loc locate(double t) const {
    const int segments = static_cast<int>(t_.size()) - 1;
    int i = static_cast<int>(std::upper_bound(t_.begin(), t_.end(), t) - t_.begin()) - 1;
    i = std::clamp(i, 0, segments - 1);
    const double hh = t_[i + 1] - t_[i];
    return {i, t - t_[i], t_[i + 1] - t, hh};
  }

  std::vector<double> t_;
  std::vector<Point> y_;
  bool periodic_;
  std::vector<Point> m_;
};

}  // namespace

void CurveSamples::validate() const {
  require(ambient == 2 || ambient == 3, ErrorKind::usage, "ambient dimension must be 2 or 3");
  require(points.size() >= 8, ErrorKind::usage, "too few curve samples");
  for (const Point& p : points) {
    require(p.allFinite(), ErrorKind::usage, "non-finite curve sample");
    if (ambient == 2) require(p.z() == 0.0, ErrorKind::usage, "plane curve sample with nonzero z");
  }
  const std::size_t n = points.size();
  const std::size_t pairs = closed ? n : n - 1;
  for (std::size_t i = 0; i < pairs; ++i)
    require((points[(i + 1) % n] - points[i]).norm() > 0, ErrorKind::usage, "repeated consecutive curve sample");
}

Eigen::VectorXd ArclengthCurve::coordinate(int axis) const {
  Eigen::VectorXd out(size());
  for (int i = 0; i < size(); ++i) out[i] = points[i][axis];
  return out;
}

Eigen::VectorXd ArclengthCurve::arclength() const {
  Eigen::VectorXd s(size());
  for (int i = 0; i < size(); ++i) s[i] = i * step;
  return s;
}

Eigen::VectorXcd CurvatureData::dirac_potential() const {
  if (ambient == 2) return k.cast<Complex>();
  return kappa_c;
}

ArclengthCurve arclength_parametrize(const std::function<Point(double)>& position,
                                     const std::function<Point(double)>& velocity, double t0, double t1, int n,
                                     bool closed, int ambient, std::vector<double> breakpoints) {
  require(n >= (closed ? 8 : 4), ErrorKind::usage, "too few arclength samples requested");
  require(t1 > t0, ErrorKind::usage, "empty parameter interval");
  if (breakpoints.empty()) {
    const int panels = std::max(64, 4 * n);
    for (int p = 0; p <= panels; ++p) breakpoints.push_back(t0 + (t1 - t0) * p / panels);
  }
  const int panels = static_cast<int>(breakpoints.size()) - 1;
  std::vector<double> cumulative(panels + 1, 0.0);
  for (int p = 0; p < panels; ++p)
    cumulative[p + 1] = cumulative[p] + speed_integral(velocity, breakpoints[p], breakpoints[p + 1]);
  const double length = cumulative.back();
  require(length > 0 && std::isfinite(length), ErrorKind::numerical, "curve has zero or non-finite length");

  ArclengthCurve out;
  out.ambient = ambient;
  out.closed = closed;
  out.length = length;
  out.step = closed ? length / n : length / (n - 1);
  out.points.reserve(n);
  for (int i = 0; i < n; ++i) {
    const double s = i * out.step;
    if (!closed && i == n - 1) {
      out.points.push_back(position(t1));
      continue;
    }
    int p = static_cast<int>(std::upper_bound(cumulative.begin(), cumulative.end(), s) - cumulative.begin()) - 1;
    p = std::clamp(p, 0, panels - 1);
    const double a = breakpoints[p], b = breakpoints[p + 1];
    const double span = cumulative[p + 1] - cumulative[p];
    double t = a + (b - a) * (s - cumulative[p]) / span;
    for (int iter = 0; iter < 40; ++iter) {
      const double f = cumulative[p] + speed_integral(velocity, a, t) - s;
      const double speed = velocity(t).norm();
      require(speed > 1e-14, ErrorKind::numerical, "curve velocity vanishes");
      const double dt = f / speed;
      t = std::clamp(t - dt, a, b);
      if (std::abs(dt) <= 1e-15 * (b - a) + 1e-300) break;
    }
    out.points.push_back(position(t));
  }
  return out;
}

ArclengthCurve resample_arclength(const CurveSamples& c, int n, bool require_closed) {
  c.validate();
  require(n >= 16, ErrorKind::usage, "resampling needs at least 16 samples");
  if (require_closed) require(c.closed, ErrorKind::usage, "closed curve required");
  const int m = static_cast<int>(c.points.size());
  std::vector<double> t{0.0};
  const int segments = c.closed ? m : m - 1;
  for (int i = 0; i < segments; ++i) t.push_back(t.back() + (c.points[(i + 1) % m] - c.points[i]).norm());
  const Spline spline(t, c.points, c.closed, c.ambient);
  // Panels follow the knots so every quadrature panel sees one cubic piece.
  std::vector<double> breaks;
  const int sub = std::max(1, (4 * n + segments - 1) / segments);
  for (int i = 0; i < segments; ++i)
    for (int q = 0; q < sub; ++q) breaks.push_back(t[i] + (t[i + 1] - t[i]) * q / sub);
  breaks.push_back(t.back());
  ArclengthCurve out = arclength_parametrize([&](double x) { return spline.position(x); },
                                             [&](double x) { return spline.velocity(x); }, 0.0, t.back(), n,
                                             c.closed, c.ambient, breaks);
  if (c.ambient == 2)
    for (Point& p : out.points) p.z() = 0.0;
  return out;
}

ComplexCurvature complex_curvature(const Eigen::VectorXd& kappa, const Eigen::VectorXd& tau, double step,
                                   bool closed) {
  const int n = static_cast<int>(kappa.size());
  require(tau.size() == n && n >= 2, ErrorKind::usage, "curvature and torsion sizes differ");
  ComplexCurvature out;
  out.phase.resize(n);
  out.values.resize(n);
  out.phase[0] = 0;
  for (int i = 1; i < n; ++i) out.phase[i] = out.phase[i - 1] + 0.5 * step * (tau[i - 1] + tau[i]);
  out.total_phase = closed ? out.phase[n - 1] + 0.5 * step * (tau[n - 1] + tau[0]) : out.phase[n - 1];
  for (int i = 0; i < n; ++i) out.values[i] = std::polar(kappa[i], out.phase[i]);
  out.periodic = !closed || std::abs(std::remainder(out.total_phase, 2 * kPi)) < 1e-6;
  return out;
}

CurvatureData frenet_data(const ArclengthCurve& c) { return frenet_data(c, default_scheme(c)); }

CurvatureData frenet_data(const ArclengthCurve& c, Differentiation scheme) {
  const int n = c.size();
  require(n >= (c.closed ? 8 : 5), ErrorKind::usage, "too few samples for curvature");
  check_scheme(c, scheme);
  const int dims = c.ambient;
  const int orders = dims == 3 ? 3 : 2;
  std::vector<std::vector<Eigen::VectorXd>> d(orders, std::vector<Eigen::VectorXd>(3, Eigen::VectorXd::Zero(n)));
  for (int axis = 0; axis < dims; ++axis) {
    const Eigen::VectorXd x = c.coordinate(axis);
    for (int o = 0; o < orders; ++o) d[o][axis] = diff(x, c, o + 1, scheme);
  }
  CurvatureData out;
  out.ambient = c.ambient;
  out.closed = c.closed;
  out.length = c.length;
  out.step = c.step;
  out.kappa.resize(n);
  out.tau = Eigen::VectorXd::Zero(n);
  out.k.resize(n);
  for (int i = 0; i < n; ++i) {
    const Point x1(d[0][0][i], d[0][1][i], d[0][2][i]);
    const Point x2(d[1][0][i], d[1][1][i], d[1][2][i]);
    const Point cr = x1.cross(x2);
    const double speed = x1.norm();
    require(speed > 0, ErrorKind::numerical, "vanishing tangent");
    const double s3 = speed * speed * speed;
    out.kappa[i] = cr.norm() / s3;
    if (dims == 2) {
      out.k[i] = cr.z() / s3;
    } else {
      out.k[i] = out.kappa[i];
      require(out.kappa[i] >= kDegenerateKappa, ErrorKind::numerical,
              "degenerate Frenet frame: curvature vanishes at sample " + std::to_string(i));
      const Point x3(d[2][0][i], d[2][1][i], d[2][2][i]);
      out.tau[i] = cr.dot(x3) / cr.squaredNorm();
    }
  }
  const ComplexCurvature cc = complex_curvature(out.kappa, out.tau, c.step, c.closed);
  out.torsion_phase = cc.phase;
  out.kappa_c = cc.values;
  out.total_torsion = cc.total_phase;
  out.kappa_c_periodic = cc.periodic;
  return out;
}

RotationNumber rotation_number(const ArclengthCurve& c) {
  require(c.ambient == 2, ErrorKind::usage, "rotation number is defined for plane curves");
  require(c.closed, ErrorKind::usage, "rotation number needs a closed curve");
  const Differentiation scheme = default_scheme(c);
  const Eigen::VectorXd dx = diff(c.coordinate(0), c, 1, scheme);
  const Eigen::VectorXd dy = diff(c.coordinate(1), c, 1, scheme);
  const int n = c.size();
  double total = 0;
  for (int i = 0; i < n; ++i) {
    const int j = (i + 1) % n;
    const double jump = std::remainder(std::atan2(dy[j], dx[j]) - std::atan2(dy[i], dx[i]), 2 * kPi);
    require(std::abs(jump) < kPi / 2, ErrorKind::numerical, "tangent direction undersampled");
    total += jump;
  }
  RotationNumber r;
  r.value = static_cast<int>(std::lround(total / (2 * kPi)));
  const CurvatureData d = frenet_data(c, scheme);
  r.raw = c.step * d.k.sum() / (2 * kPi);
  r.residual = std::abs(r.raw - r.value);
  require(r.residual < 0.05, ErrorKind::numerical, "total curvature is not close to an integer multiple of 2 pi");
  return r;
}

WritheResult writhe(const ArclengthCurve& c, int threads) {
  require(c.ambient == 3, ErrorKind::usage, "writhe needs a space curve");
  require(c.closed, ErrorKind::usage, "writhe needs a closed curve");
  const int n = c.size();
  require(n >= 8, ErrorKind::usage, "too few samples for writhe");
  const Differentiation scheme = default_scheme(c);
  std::vector<Point> t(n);
  {
    Eigen::VectorXd d[3];
    for (int a = 0; a < 3; ++a) d[a] = diff(c.coordinate(a), c, 1, scheme);
    for (int i = 0; i < n; ++i) t[i] = Point(d[0][i], d[1][i], d[2][i]);
  }
  std::vector<double> rows(n, 0.0);
  std::vector<double> row_min(n, std::numeric_limits<double>::infinity());
  parallel_for(
      static_cast<std::size_t>(n),
      [&](std::size_t begin, std::size_t end) {
        for (std::size_t ii = begin; ii < end; ++ii) {
          const int i = static_cast<int>(ii);
          double acc = 0;
          double nearest = std::numeric_limits<double>::infinity();
          for (int j = 0; j < n; ++j) {
            const int gap = std::min(std::abs(i - j), n - std::abs(i - j));
            if (gap <= 1) continue;
            const Point r = c.points[i] - c.points[j];
            const double dist = r.norm();
            if (gap > 20) nearest = std::min(nearest, dist);
            acc += t[i].cross(t[j]).dot(r) / (dist * dist * dist);
          }
          rows[i] = acc;
          row_min[i] = nearest;
        }
      },
      threads);
  double sum = 0;
  for (double r : rows) sum += r;
  WritheResult w;
  w.value = sum * c.step * c.step / (4 * kPi);
  w.min_distance = *std::min_element(row_min.begin(), row_min.end());
  w.near_self_intersection = w.min_distance < 10 * c.step;
  return w;
}

EulerBernoulli euler_bernoulli(const CurvatureData& d) {
  const Eigen::VectorXd sq = d.kappa.array().square();
  double integral = sq.sum();
  if (!d.closed) integral -= 0.5 * (sq[0] + sq[d.size() - 1]);
  integral *= d.step;
  return {integral, integral / (2 * kPi)};
}

namespace {

// Fourth-order values at s_i + h/2 from four neighbouring samples.
Eigen::VectorXd midpoint_values(const Eigen::VectorXd& f, bool closed) {
  const int n = static_cast<int>(f.size());
  const int intervals = closed ? n : n - 1;
  Eigen::VectorXd mid(intervals);
  auto at = [&](int i) { return f[((i % n) + n) % n]; };
  for (int i = 0; i < intervals; ++i) {
    if (closed || (i >= 1 && i + 2 <= n - 1)) {
      mid[i] = (-at(i - 1) + 9 * at(i) + 9 * at(i + 1) - at(i + 2)) / 16.0;
    } else if (i == 0) {
      mid[i] = (5 * f[0] + 15 * f[1] - 5 * f[2] + f[3]) / 16.0;
    } else {
      mid[i] = (f[n - 4] - 5 * f[n - 3] + 15 * f[n - 2] + 5 * f[n - 1]) / 16.0;
    }
  }
  return mid;
}

using State = Eigen::Matrix<double, 12, 1>;  // X, T, N, B

State frenet_rhs(const State& y, double kappa, double tau) {
  State f;
  const Point t = y.segment<3>(3), nn = y.segment<3>(6), b = y.segment<3>(9);
  f.segment<3>(0) = t;
  f.segment<3>(3) = kappa * nn;
  f.segment<3>(6) = -kappa * t + tau * b;
  f.segment<3>(9) = -tau * nn;
  return f;
}

Reconstruction integrate(const Eigen::VectorXd& kappa, const Eigen::VectorXd& tau, double length, bool closed,
                         int ambient) {
  const int n = static_cast<int>(kappa.size());
  require(tau.size() == n, ErrorKind::usage, "curvature and torsion sizes differ");
  require(n >= (closed ? 8 : 4), ErrorKind::usage, "too few curvature samples");
  require(length > 0, ErrorKind::usage, "length must be positive");
  const double h = closed ? length / n : length / (n - 1);
  const Eigen::VectorXd km = midpoint_values(kappa, closed);
  const Eigen::VectorXd tm = midpoint_values(tau, closed);
  State y = State::Zero();
  y[3] = 1;
  y[7] = 1;
  y[11] = 1;
  Reconstruction r;
  r.curve.ambient = ambient;
  r.curve.closed = closed;
  r.curve.length = length;
  r.curve.step = h;
  r.curve.points.push_back(Point::Zero());
  const int steps = closed ? n : n - 1;
  for (int i = 0; i < steps; ++i) {
    const int j = (i + 1) % n;
    const State k1 = frenet_rhs(y, kappa[i], tau[i]);
    const State k2 = frenet_rhs(y + 0.5 * h * k1, km[i], tm[i]);
    const State k3 = frenet_rhs(y + 0.5 * h * k2, km[i], tm[i]);
    const State k4 = frenet_rhs(y + h * k3, kappa[j], tau[j]);
    y += h / 6.0 * (k1 + 2 * k2 + 2 * k3 + k4);
    if (i + 1 < n) r.curve.points.push_back(y.segment<3>(0));
  }
  if (closed) r.closure_gap = y.segment<3>(0).norm();
  if (ambient == 2)
    for (Point& p : r.curve.points) p.z() = 0.0;
  return r;
}

}  // namespace

Reconstruction reconstruct_from_curvature(const Eigen::VectorXd& k, double length, bool closed) {
  return integrate(k, Eigen::VectorXd::Zero(k.size()), length, closed, 2);
}

Reconstruction reconstruct_from_curvature(const Eigen::VectorXd& kappa, const Eigen::VectorXd& tau, double length,
                                          bool closed) {
  return integrate(kappa, tau, length, closed, 3);
}

namespace {

// Square roots of z_i chosen continuously along the samples, starting from
// the principal branch at index 0. Returns the sign needed to continue past
// the last sample back onto index 0.
double continuous_sqrt(const Eigen::VectorXcd& z, Eigen::VectorXcd& out) {
  const int n = static_cast<int>(z.size());
  out.resize(n);
  out[0] = std::sqrt(z[0]);
  auto follow = [](Complex prev, Complex candidate) {
    if (std::real(candidate * std::conj(prev)) < 0) candidate = -candidate;
    require(std::real(candidate * std::conj(prev)) > 0.5 * std::abs(candidate) * std::abs(prev),
            ErrorKind::numerical, "spinor branch jumps between samples");
    return candidate;
  };
  for (int i = 1; i < n; ++i) out[i] = follow(out[i - 1], std::sqrt(z[i]));
  const Complex wrapped = follow(out[n - 1], std::sqrt(z[0]));
  return std::real(wrapped * std::conj(out[0])) > 0 ? 1.0 : -1.0;
}

}  // namespace

CurveSpinor weierstrass_spinor_curve(const ArclengthCurve& c, Differentiation scheme) {
  require(c.ambient == 2, ErrorKind::usage, "curve spinor needs a plane curve");
  require(c.closed, ErrorKind::usage, "curve spinor needs a closed curve");
  check_scheme(c, scheme);
  const Eigen::VectorXd dx = diff(c.coordinate(0), c, 1, scheme);
  const Eigen::VectorXd dy = diff(c.coordinate(1), c, 1, scheme);
  Eigen::VectorXcd dz(c.size());
  for (int i = 0; i < c.size(); ++i) dz[i] = Complex(dx[i], dy[i]);
  CurveSpinor s;
  const double wrap = continuous_sqrt(dz, s.psi1);
  continuous_sqrt(-dz, s.psi2);
  // sqrt(-dZ) is +-i sqrt(dZ); take psi2 = -i psi1 so the pair is a zero mode
  // of the canonical operator with signed curvature.
  if (std::abs(s.psi2[0] + Complex(0, 1) * s.psi1[0]) > std::abs(s.psi2[0] - Complex(0, 1) * s.psi1[0]))
    s.psi2 = -s.psi2;
  s.sector = wrap > 0 ? spectral::Sector::periodic : spectral::Sector::antiperiodic;
  return s;
}

ArclengthCurve transformed(const ArclengthCurve& c, const Eigen::Matrix3d& rotation, const Eigen::Vector3d& shift) {
  ArclengthCurve out = c;
  for (Point& p : out.points) p = rotation * p + shift;
  if (c.ambient == 2)
    for (const Point& p : out.points)
      if (p.z() != 0.0) out.ambient = 3;
  return out;
}

namespace generators {

ArclengthCurve circle(double radius, int n, int turns) {
  require(radius > 0, ErrorKind::usage, "circle radius must be positive");
  require(turns >= 1, ErrorKind::usage, "circle turns must be positive");
  require(n >= 8, ErrorKind::usage, "too few circle samples");
  ArclengthCurve c;
  c.ambient = 2;
  c.closed = true;
  c.length = 2 * kPi * radius * turns;
  c.step = c.length / n;
  for (int i = 0; i < n; ++i) {
    const double t = 2 * kPi * turns * i / n;
    c.points.emplace_back(radius * std::cos(t), radius * std::sin(t), 0.0);
  }
  return c;
}

ArclengthCurve ellipse(double a, double b, int n) {
  require(a > 0 && b > 0, ErrorKind::usage, "ellipse axes must be positive");
  return arclength_parametrize([=](double t) { return Point(a * std::cos(t), b * std::sin(t), 0); },
                               [=](double t) { return Point(-a * std::sin(t), b * std::cos(t), 0); }, 0, 2 * kPi,
                               n, true, 2);
}

ArclengthCurve figure_eight(double scale, int n) {
  require(scale > 0, ErrorKind::usage, "figure-eight scale must be positive");
  return arclength_parametrize(
      [=](double t) { return Point(scale * std::cos(t), scale * std::sin(t) * std::cos(t), 0); },
      [=](double t) { return Point(-scale * std::sin(t), scale * std::cos(2 * t), 0); }, 0, 2 * kPi, n, true, 2);
}

ArclengthCurve helix(double a, double b, double turns, int n) {
  require(a > 0 && turns > 0, ErrorKind::usage, "helix radius and turns must be positive");
  require(n >= 5, ErrorKind::usage, "too few helix samples");
  const double speed = std::hypot(a, b);
  const double t_end = 2 * kPi * turns;
  ArclengthCurve c;
  c.ambient = 3;
  c.closed = false;
  c.length = speed * t_end;
  c.step = c.length / (n - 1);
  for (int i = 0; i < n; ++i) {
    const double t = t_end * i / (n - 1);
    c.points.emplace_back(a * std::cos(t), a * std::sin(t), b * t);
  }
  return c;
}

ArclengthCurve torus_knot(int p, int q, double big_r, double small_r, int n) {
  require(big_r > small_r && small_r > 0, ErrorKind::usage, "torus knot needs R > r > 0");
  require(p != 0 && q != 0, ErrorKind::usage, "torus knot winding numbers must be nonzero");
  const double pp = p, qq = q;
  return arclength_parametrize(
      [=](double t) {
        const double rho = big_r + small_r * std::cos(qq * t);
        return Point(rho * std::cos(pp * t), rho * std::sin(pp * t), small_r * std::sin(qq * t));
      },
      [=](double t) {
        const double rho = big_r + small_r * std::cos(qq * t);
        const double drho = -small_r * qq * std::sin(qq * t);
        return Point(drho * std::cos(pp * t) - rho * pp * std::sin(pp * t),
                     drho * std::sin(pp * t) + rho * pp * std::cos(pp * t), small_r * qq * std::cos(qq * t));
      },
      0, 2 * kPi, n, true, 3);
}

}  // namespace generators

}  // namespace dwl::curve
