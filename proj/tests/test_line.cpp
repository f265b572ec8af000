#include <catch2/catch_amalgamated.hpp>

#include <kappa/hilbert.hpp>
#include <kappa/interval_set.hpp>
#include <kappa/line_boundary.hpp>
#include <kappa/rational.hpp>

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

using namespace kappa;
using Eigen::MatrixXcd;
using Eigen::VectorXcd;

namespace {

constexpr double pi = std::numbers::pi;

// Midpoint-rule quadrature for oracle integrals of smooth integrands.
template <typename F>
cx brute(double a, double b, F f, int n = 20000) {
  cx acc(0.0);
  const double h = (b - a) / n;
  for (int k = 0; k < n; ++k) acc += f(a + (k + 0.5) * h);
  return acc * h;
}

PiecewiseLinearFunction random_real_pl(const IntervalSet& set, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  VectorXcd v(set.node_count());
  for (int k = 0; k < set.node_count(); ++k) v(k) = cx(unif(rng), 0.0);
  return PiecewiseLinearFunction(std::move(v));
}

// Random smooth function vanishing at the endpoints of every interval:
// per-interval sine series with decaying coefficients, unit sup norm.
PiecewiseLinearFunction random_smooth(const IntervalSet& set, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  const int modes = 6;
  std::vector<std::vector<double>> amp(set.intervals().size());
  for (auto& a : amp) {
    a.resize(modes);
    for (int k = 0; k < modes; ++k) a[k] = gauss(rng) / (1.0 + k * k);
  }
  VectorXcd v(set.node_count());
  for (int n = 0; n < set.node_count(); ++n) {
    const double x = set.node(n);
    double val = 0.0;
    for (std::size_t i = 0; i < set.intervals().size(); ++i) {
      const auto& [a, b] = set.intervals()[i];
      if (x >= a - 1e-12 && x <= b + 1e-12) {
        const double s = (x - a) / (b - a);
        for (int k = 0; k < modes; ++k) val += amp[i][k] * std::sin((k + 1) * pi * s);
        break;
      }
    }
    v(n) = val;
  }
  const double sup = v.cwiseAbs().maxCoeff();
  if (sup > 0.0) v /= sup;
  return PiecewiseLinearFunction(std::move(v));
}

// L2 norm of the nodal residual of H(phi H psi + (H phi) psi) = (H phi)(H psi) - phi psi.
double convolution_residual(const IntervalSet& set, std::mt19937_64& rng) {
  const auto phi = random_smooth(set, rng);
  const auto psi = random_smooth(set, rng);
  std::vector<double> nodes(set.node_count());
  for (int k = 0; k < set.node_count(); ++k) nodes[k] = set.node(k);
  const VectorXcd Hphi = finite_hilbert(set, phi, nodes);
  const VectorXcd Hpsi = finite_hilbert(set, psi, nodes);
  const PiecewiseLinearFunction g(
      VectorXcd(phi.values.cwiseProduct(Hpsi) + Hphi.cwiseProduct(psi.values)));
  const VectorXcd lhs = finite_hilbert(set, g, nodes);
  const VectorXcd rhs = Hphi.cwiseProduct(Hpsi) - phi.values.cwiseProduct(psi.values);
  const PiecewiseLinearFunction resid(VectorXcd(lhs - rhs));
  return std::sqrt(std::abs(l2_inner(set, resid, resid)));
}

}  // namespace

TEST_CASE("finite Hilbert transform of the indicator matches the log formula") {
  IntervalSet set({{-1.0, 1.0}}, 64);
  PiecewiseLinearFunction one(VectorXcd::Ones(set.node_count()));
  const auto oracle = [](double x) { return std::log(std::abs((1 - x) / (1 + x))) / pi; };

  auto vals = finite_hilbert(set, one, {0.0, 0.5, 0.25, -0.7});
  CHECK(std::abs(vals(0)) <= 1e-12);  // odd symmetry at the centre
  CHECK(std::abs(vals(1) - oracle(0.5)) <= 1e-8);
  CHECK(std::abs(vals(2) - oracle(0.25)) <= 1e-8);
  CHECK(std::abs(vals(3) - oracle(-0.7)) <= 1e-8);

  // evaluation exactly at an interior node (the transform is continuous there)
  auto at_node = finite_hilbert(set, one, {set.node(7)});
  CHECK(std::abs(at_node(0) - oracle(set.node(7))) <= 1e-8);
}

TEST_CASE("finite Hilbert transform is skew-adjoint on the interval") {
  IntervalSet set({{-1.0, 1.0}}, 64);
  std::mt19937_64 rng(11);
  double worst = 0.0;
  for (int t = 0; t < 5; ++t) {
    const auto f = random_real_pl(set, rng);
    const auto g = random_real_pl(set, rng);
    worst = std::max(worst,
                     std::abs(hilbert_inner(set, f, g) + std::conj(hilbert_inner(set, g, f))));
  }
  CHECK(worst <= 1e-8);
}

TEST_CASE("Cayley coefficients match direct quadrature") {
  IntervalSet set({{-1.0, 1.0}}, 64);
  VectorXcd v(set.node_count());
  for (int k = 0; k < set.node_count(); ++k) {
    const double x = set.node(k);
    v(k) = cx(std::exp(-x) * (1 + 0.5 * x), 0.0);
  }
  PiecewiseLinearFunction f(std::move(v));
  const auto d = detail::cayley_series(set, detail::panel_polys_from_linear(set, f), 5);
  const cx I(0.0, 1.0);
  for (int j : {0, 1, 5}) {
    const cx ref = brute(-1.0, 1.0, [&](double t) {
      const cx w = (t - I) / (t + I);
      return std::pow(w, j) * pl_eval(set, f, t) / (t + I);
    });
    CHECK(std::abs(d(j) - ref) <= 1e-6);
  }
}

TEST_CASE("Cayley basis coefficients satisfy Parseval for a smooth bump") {
  IntervalSet set({{-1.0, 1.0}}, 64);
  VectorXcd v(set.node_count());
  for (int k = 0; k < set.node_count(); ++k) {
    const double x = set.node(k);
    v(k) = cx((1 - x * x) * (1 - x * x), 0.0);
  }
  PiecewiseLinearFunction f(std::move(v));
  const auto coef = cayley_basis_coefficients(set, f, 128);
  const double sum = coef.squaredNorm();
  const double nrm = std::real(l2_inner(set, f, f));
  CHECK(std::abs(sum - nrm) <= 1e-6);
}

TEST_CASE("Cayley series resolves the analytic projection pairing") {
  // sum_j d_j(f) conj(d_j(g)) = (pi/2) [ <f,g> + i <Hf, g> ]
  IntervalSet set({{-1.0, 1.0}}, 64);
  VectorXcd v1(set.node_count()), v2(set.node_count());
  for (int k = 0; k < set.node_count(); ++k) {
    const double x = set.node(k);
    v1(k) = cx(1 - x * x, 0.0);
    v2(k) = cx((1 - x * x) * x, 0.0);
  }
  PiecewiseLinearFunction f(std::move(v1)), g(std::move(v2));
  const auto df = detail::cayley_series(set, detail::panel_polys_from_linear(set, f), 4096);
  const auto dg = detail::cayley_series(set, detail::panel_polys_from_linear(set, g), 4096);
  const cx series = df.cwiseProduct(dg.conjugate()).sum();
  const cx proj = 0.5 * pi * (l2_inner(set, f, g) + cx(0, 1) * hilbert_inner(set, f, g));
  CHECK(std::abs(series - proj) <= 1e-6);
}

TEST_CASE("transform convolution identity holds for smooth data") {
  std::mt19937_64 rng(12345);
  SECTION("single interval, fine mesh") {
    IntervalSet set({{-1.0, 1.0}}, 4096);
    CHECK(convolution_residual(set, rng) <= 1e-6);
  }
  SECTION("union of two intervals, moderate mesh") {
    IntervalSet set({{-1.0, -0.2}, {0.1, 1.0}}, 512);
    CHECK(convolution_residual(set, rng) <= 1e-3);
  }
}

TEST_CASE("divided-difference form of a constant symbol vanishes") {
  IntervalSet set({{-1.0, 1.0}}, 16);
  BoundaryDataLine f0(set, VectorXcd::Constant(set.node_count(), 3.0));
  const auto r = loewner_form(set, f0, hat_basis(set));
  CHECK(r.form.cwiseAbs().maxCoeff() <= 1e-12);
  CHECK(r.inertia.n_neg == 0);
  CHECK(r.inertia.n_pos == 0);
}

TEST_CASE("divided-difference form of the identity symbol is the rank-one integral form") {
  IntervalSet set({{-1.0, 1.0}}, 64);
  BoundaryDataLine f0(set, [](double t) { return cx(t); });
  const auto basis = hat_basis(set);
  const auto r1 = loewner_form(set, f0, basis);
  const auto r2 = loewner_real_form(set, f0, basis);

  const int n = static_cast<int>(basis.size());
  VectorXcd ints(n);
  for (int p = 0; p < n; ++p)
    ints(p) = detail::panel_polys_integral(
        set, detail::panel_polys_from_linear(set, basis[static_cast<std::size_t>(p)]));
  const MatrixXcd oracle = ints * ints.adjoint();

  CHECK((r1.form - oracle).cwiseAbs().maxCoeff() <= 1e-10);
  CHECK((r1.form - r2.form).cwiseAbs().maxCoeff() <= 1e-10);
  CHECK(r1.inertia.n_neg == 0);
  CHECK(r1.inertia.n_pos == 1);
  CHECK(r1.inertia.n_zero == n - 1);
  CHECK(r1.zero_band <= 1e-6);
}

TEST_CASE("both divided-difference assemblies agree for a cubic symbol") {
  IntervalSet set({{-1.0, 1.0}}, 8);
  BoundaryDataLine f0(set, [](double t) { return cx(t * t * t); });
  const auto basis = hat_basis(set);
  const auto r1 = loewner_form(set, f0, basis);
  const auto r2 = loewner_real_form(set, f0, basis);
  const double scale = r1.form.cwiseAbs().maxCoeff();
  CHECK((r1.form - r2.form).cwiseAbs().maxCoeff() <= 1e-12 * std::max(1.0, scale));
  // kernel of t^3 is s^2 + st + t^2: one negative and two positive directions
  CHECK(r1.inertia.n_neg == 1);
  CHECK(r1.inertia.n_pos == 2);
}

TEST_CASE("reciprocal symbol on a positive interval certifies one negative square") {
  for (int ppi : {16, 32}) {
    IntervalSet set({{1.0, 2.0}}, ppi);
    BoundaryDataLine f0(set, [](double t) { return cx(1.0 / t); });
    const auto r = loewner_real_form(set, f0, hat_basis(set));
    INFO("panels per interval: " << ppi);
    CHECK(r.inertia.n_neg == 1);
    CHECK(r.n_neg_refined == 1);
    CHECK(r.zero_band <= 1e-3);
  }
}

TEST_CASE("half-plane form with shifted data reproduces the divided-difference form") {
  IntervalSet set({{-1.0, 1.0}}, 24);
  const auto f = [](double t) { return t / (1.0 + t * t); };
  BoundaryDataLine f0(set, [&](double t) { return cx(f(t)); });
  BoundaryDataLine bb(set, [&](double t) { return cx(f(t), -1.0); });
  BoundaryDataLine cc(set, [&](double t) { return cx(f(t), 1.0); });
  const auto basis = hat_basis(set);
  const auto rl = loewner_form(set, f0, basis);
  const auto rh = boundary_form_halfplane(set, bb, cc, basis, 64);
  CHECK((rh.form - rl.form).cwiseAbs().maxCoeff() <= 1e-10);
  CHECK(rh.mismatch <= rh.tail_estimate + 1e-6);
  // conjugate pole pair at +-i gives exactly one negative square
  CHECK(rh.inertia.n_neg == 1);
}

TEST_CASE("half-plane form with vanishing b is positive semidefinite") {
  IntervalSet set({{-1.0, 1.0}}, 16);
  BoundaryDataLine bb(set, VectorXcd::Zero(set.node_count()));
  BoundaryDataLine cc(set, VectorXcd::Constant(set.node_count(), 1.0));
  const auto r = boundary_form_halfplane(set, bb, cc, hat_basis(set), 128);
  CHECK(r.inertia.n_neg == 0);
  CHECK(r.inertia.n_pos >= 1);
}

TEST_CASE("half-plane form of a unimodular quotient has a one-dimensional positive part") {
  IntervalSet set({{-1.0, 1.0}}, 24);
  BoundaryDataLine bb(set, [](double t) { return cx(t, -2.0) / cx(t, 2.0); });
  BoundaryDataLine cc(set, VectorXcd::Constant(set.node_count(), 1.0));
  const auto r = boundary_form_halfplane(set, bb, cc, hat_basis(set), 128);
  CHECK(r.inertia.n_neg == 0);
  CHECK(r.inertia.n_pos == 1);
  CHECK(r.inertia.n_zero == set.node_count() - 1);
}

TEST_CASE("dual form of a nonnegative density is positive semidefinite") {
  IntervalSet set({{-1.0, 1.0}}, 12);
  const auto basis = hat_basis(set);
  SECTION("unit density") {
    BoundaryDataLine g0(set, VectorXcd::Constant(set.node_count(), 1.0));
    const auto r = dual_loewner_form(set, g0, basis, 1e-9, 10);
    CHECK(r.inertia.n_neg == 0);
    CHECK(r.inertia.spectrum.front() >= -1e-10);
  }
  SECTION("zero density") {
    BoundaryDataLine g0(set, VectorXcd::Zero(set.node_count()));
    const auto r = dual_loewner_form(set, g0, basis, 1e-9, 10);
    CHECK(r.form.cwiseAbs().maxCoeff() <= 1e-12);
    CHECK(r.inertia.n_neg == 0);
    CHECK(r.inertia.n_pos == 0);
  }
}

TEST_CASE("Cauchy transform of the unit density") {
  IntervalSet set({{-1.0, 1.0}}, 16);
  BoundaryDataLine g0(set, VectorXcd::Constant(set.node_count(), 1.0));
  const cx I(0.0, 1.0);

  SECTION("value at i") {
    CHECK(std::abs(cauchy_transform(set, g0, I) - cx(0.0, 0.5)) <= 1e-8);
  }
  SECTION("log formula off the line") {
    const cx z(0.3, 0.7);
    const cx oracle = (std::log(cx(1.0) - z) - std::log(cx(-1.0) - z)) / pi;
    CHECK(std::abs(cauchy_transform(set, g0, z) - oracle) <= 1e-12);
  }
  SECTION("evaluation too close to the line is refused") {
    CHECK_THROWS_AS(cauchy_transform(set, g0, cx(0.0, 1e-12)), EvaluationTooCloseToLine);
  }
}

TEST_CASE("Cauchy transform of a nonnegative density maps the upper half-plane to itself") {
  IntervalSet set({{-1.0, 1.0}}, 64);
  BoundaryDataLine g0(set, [](double t) { return cx((1.0 - t) * (1.0 + t) + 0.2); });

  SECTION("nonnegative imaginary part above the line") {
    for (double x : {-1.5, -0.5, 0.0, 0.4, 1.2}) {
      for (double y : {0.05, 0.5, 2.0}) {
        CHECK(cauchy_transform(set, g0, cx(x, y)).imag() >= -1e-10);
      }
    }
  }
  SECTION("boundary values recover the density as the line is approached") {
    std::vector<double> defects;
    for (double eps : {1e-2, 1e-3, 1e-4}) {
      double defect = 0.0;
      for (double x : {-0.5, 0.0, 0.3, 0.7}) {
        const cx k = cauchy_transform(set, g0, cx(x, eps));
        const double target = (1.0 - x) * (1.0 + x) + 0.2;
        defect = std::max(defect, std::abs(k.imag() - target) / target);
      }
      defects.push_back(defect);
    }
    CHECK(defects[1] < defects[0]);
    CHECK(defects[2] < defects[1]);
    CHECK(defects[2] <= 1e-2);
  }
}

TEST_CASE("nodal-only data is certified through cubic transport across refinements") {
  // A monotone rational symbol, a conjugate-pole-pair term, and their sum,
  // given only by nodal samples (no resampler). The assembled forms are exact
  // for the piecewise-linear interpolants, whose kinks carry genuine
  // negativity at quadrature scale; the certificate must absorb it into the
  // zero band and report the counts of the underlying smooth symbols.
  const double slope = 1.110, level = -0.096;
  const double p0 = -2.120, c0 = 0.376, p1 = 2.957, c1 = 0.271;
  const double px = 0.059, py = 1.069, a1 = 0.260, b1 = 0.462;

  const auto monotone = [&](double t) {
    return level + slope * t + c0 / (p0 - t) + c1 / (p1 - t);
  };
  const auto pair_term = [&](double t) {
    return (a1 * t + b1) / ((t - px) * (t - px) + py * py);
  };

  const IntervalSet set({{-1.0, 1.0}}, 24);
  const auto basis = hat_basis(set);
  const auto nodal = [&](auto&& fn) {
    VectorXcd v(set.node_count());
    for (int k = 0; k < set.node_count(); ++k) v(k) = cx(fn(set.node(k)));
    return BoundaryDataLine(set, std::move(v));
  };

  SECTION("monotone part certifies zero negative squares") {
    const auto r = loewner_real_form(set, nodal(monotone), basis);
    CHECK(r.inertia.n_neg == 0);
    CHECK(r.n_neg_refined == 0);
  }
  SECTION("pole-pair term certifies one negative square") {
    const auto r = loewner_real_form(set, nodal(pair_term), basis);
    CHECK(r.inertia.n_neg == 1);
    CHECK(r.n_neg_refined == 1);
  }
  SECTION("sum certifies one negative square through both assemblies") {
    const auto sum = [&](double t) { return monotone(t) + pair_term(t); };
    const auto r1 = loewner_real_form(set, nodal(sum), basis);
    CHECK(r1.inertia.n_neg == 1);
    CHECK(r1.n_neg_refined == 1);
    const auto r2 = loewner_form(set, nodal(sum), basis);
    CHECK(r2.inertia.n_neg == 1);
  }
}
