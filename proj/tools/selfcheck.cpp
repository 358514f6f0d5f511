#include "selfcheck.hpp"

#include <cmath>
#include <random>

#include "dwl/errors.hpp"

namespace dwl::selfcheck {

using clifford::Blade;
using clifford::MultiVector;

namespace {

using Rng = std::mt19937_64;

// Small integer coefficients keep every product exact in double precision.
MultiVector random_integer(Rng& r, int dim, int terms = 5) {
  std::uniform_int_distribution<int> blade(0, (1 << dim) - 1), coef(-9, 9);
  MultiVector m(dim);
  for (int t = 0; t < terms; ++t) m.add(Blade{static_cast<std::uint32_t>(blade(r))}, coef(r));
  return m;
}

MultiVector random_real(Rng& r, int dim, int terms = 6) {
  std::uniform_int_distribution<int> blade(0, (1 << dim) - 1);
  std::uniform_real_distribution<double> coef(-1, 1);
  MultiVector m(dim);
  for (int t = 0; t < terms; ++t) m.add(Blade{static_cast<std::uint32_t>(blade(r))}, coef(r));
  return m;
}

MultiVector random_spin(Rng& r, int dim, const Product& mul) {
  std::normal_distribution<double> g;
  MultiVector out = MultiVector::scalar(dim, 1.0);
  for (int k = 0; k < 4; ++k) {
    Eigen::VectorXd v(dim);
    for (int i = 0; i < dim; ++i) v[i] = g(r);
    out = mul(out, clifford::vector_from(v.normalized()));
  }
  return out;
}

void record(Suite& s, double err, double tol, const std::function<io::Json()>& example) {
  ++s.checks;
  s.max_error = std::max(s.max_error, err);
  if (s.passed && !(err <= tol)) {
    s.passed = false;
    s.counterexample = example();
  }
}

Suite anticommutation(int n, const Product& mul) {
  Suite s{"anticommutation"};
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j) {
      const MultiVector ei = MultiVector::basis(n, i), ej = MultiVector::basis(n, j);
      const MultiVector got = mul(ei, ej) + mul(ej, ei);
      const MultiVector expected = MultiVector::scalar(n, i == j ? -2.0 : 0.0);
      record(s, (got - expected).max_abs(), 0.0, [&] {
        return io::Json{{"blades", {{i}, {j}}}, {"expected", multivector_json(expected)}, {"got", multivector_json(got)}};
      });
    }
  return s;
}

Suite associativity(int n, Rng& r, const Product& mul) {
  Suite s{"associativity"};
  for (int t = 0; t < 500; ++t) {
    const MultiVector a = random_integer(r, n), b = random_integer(r, n), c = random_integer(r, n);
    const MultiVector left = mul(mul(a, b), c), right = mul(a, mul(b, c));
    record(s, (left - right).max_abs(), 0.0, [&] {
      return io::Json{{"a", multivector_json(a)}, {"b", multivector_json(b)}, {"c", multivector_json(c)},
                      {"left", multivector_json(left)}, {"right", multivector_json(right)}};
    });
  }
  return s;
}

Suite reverse_suite(int n, Rng& r, const Product& mul) {
  Suite s{"reverse"};
  for (int t = 0; t < 200; ++t) {
    const MultiVector a = random_integer(r, n), b = random_integer(r, n);
    const MultiVector left = clifford::reverse(mul(a, b)), right = mul(clifford::reverse(b), clifford::reverse(a));
    record(s, (left - right).max_abs(), 0.0, [&] {
      return io::Json{{"a", multivector_json(a)}, {"b", multivector_json(b)}};
    });
  }
  return s;
}

Suite double_cover(int n, Rng& r, const Product& mul) {
  Suite s{"double_cover"};
  const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(n, n);
  const auto so = [](const MultiVector& g) { return clifford::spin_to_so(clifford::SpinElement(g)).matrix(); };
  record(s, (so(MultiVector::scalar(n, -1.0)) - id).cwiseAbs().maxCoeff(), 1e-12,
         [&] { return io::Json{{"element", "-1"}}; });
  if (n < 2) return s;
  for (double th : {0.3, 1.1, 2.5}) {
    const MultiVector g = MultiVector::scalar(n, std::cos(th)) + MultiVector::monomial(n, {1, 2}, std::sin(th));
    const Eigen::MatrixXd m = so(g);
    Eigen::MatrixXd expect = id;
    expect.topLeftCorner(2, 2) << std::cos(2 * th), -std::sin(2 * th), std::sin(2 * th), std::cos(2 * th);
    record(s, (m - expect).cwiseAbs().maxCoeff(), 1e-10, [&] {
      return io::Json{{"theta", th}, {"element", multivector_json(g)}};
    });
  }
  for (int t = 0; t < 50; ++t) {
    const MultiVector g = random_spin(r, n, mul), h = random_spin(r, n, mul);
    const double err = std::max((so(mul(g, h)) - so(g) * so(h)).cwiseAbs().maxCoeff(),
                                (so(-g) - so(g)).cwiseAbs().maxCoeff());
    record(s, err, 1e-12, [&] { return io::Json{{"g", multivector_json(g)}, {"h", multivector_json(h)}}; });
  }
  return s;
}

Suite representation(int n, Rng& r, const Product& mul) {
  Suite s{"representation"};
  const clifford::MatrixRep rep = clifford::matrix_rep(n);
  const auto size = rep.size();
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) {
      Eigen::MatrixXcd expect = Eigen::MatrixXcd::Zero(size, size);
      if (j == k) expect.diagonal().setConstant(-2.0);
      const Eigen::MatrixXcd got = rep.gammas[j] * rep.gammas[k] + rep.gammas[k] * rep.gammas[j];
      record(s, (got - expect).cwiseAbs().maxCoeff(), 1e-12, [&] { return io::Json{{"gammas", {j + 1, k + 1}}}; });
    }
  for (int t = 0; t < 100; ++t) {
    const MultiVector a = random_real(r, n), b = random_real(r, n);
    const Eigen::MatrixXcd lhs = clifford::represent(rep, mul(a, b));
    const Eigen::MatrixXcd rhs = clifford::represent(rep, a) * clifford::represent(rep, b);
    record(s, (lhs - rhs).cwiseAbs().maxCoeff(), 1e-12, [&] {
      return io::Json{{"a", multivector_json(a)}, {"b", multivector_json(b)}};
    });
  }
  return s;
}

Suite chiral_suite(int n, const Product& mul) {
  Suite s{"chiral"};
  const MultiVector g = clifford::chiral(n);
  const double sign = (n - 1) % 2 == 0 ? 1.0 : -1.0;
  for (int j = 1; j <= n; ++j) {
    const MultiVector ej = MultiVector::basis(n, j);
    const MultiVector left = mul(g, ej), right = mul(ej, g) * sign;
    record(s, (left - right).max_abs(), 0.0, [&] {
      return io::Json{{"blades", {{j}}}, {"left", multivector_json(left)}, {"right", multivector_json(right)}};
    });
  }
  return s;
}

}  // namespace

bool Report::passed() const {
  for (const Suite& s : suites)
    if (!s.passed) return false;
  return true;
}

io::Json Report::json() const {
  io::Json j;
  j["dim"] = dim;
  j["passed"] = passed();
  j["suites"] = io::Json::array();
  for (const Suite& s : suites) {
    io::Json e{{"name", s.name}, {"passed", s.passed}, {"checks", s.checks}, {"max_error", s.max_error}};
    if (!s.passed) e["counterexample"] = s.counterexample;
    j["suites"].push_back(e);
  }
  return j;
}

io::Json multivector_json(const MultiVector& m) {
  io::Json terms = io::Json::array();
  for (const auto& [b, c] : m.terms()) terms.push_back({{"blades", b.indices()}, {"re", c}, {"im", 0.0}});
  return {{"dim", m.dim()}, {"terms", terms}};
}

Report run(int dim, std::uint64_t seed, Product product) {
  require(dim >= 1 && dim <= 8, ErrorKind::usage, "clifford-selfcheck needs 1 <= dim <= 8 (got " + std::to_string(dim) + ")");
  if (!product) product = [](const MultiVector& a, const MultiVector& b) { return a * b; };
  Rng r(seed);
  Report rep;
  rep.dim = dim;
  rep.suites.push_back(anticommutation(dim, product));
  rep.suites.push_back(associativity(dim, r, product));
  rep.suites.push_back(reverse_suite(dim, r, product));
  rep.suites.push_back(double_cover(dim, r, product));
  rep.suites.push_back(representation(dim, r, product));
  rep.suites.push_back(chiral_suite(dim, product));
  return rep;
}

}  // namespace dwl::selfcheck
