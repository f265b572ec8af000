#include <catch2/catch_amalgamated.hpp>

#include <kappa/interior_forms.hpp>
#include <kappa/model_space.hpp>

#include <cmath>
#include <numbers>
#include <random>

using namespace kappa;

namespace {

std::vector<cx> random_distinct_zeros(std::mt19937_64& rng, int count) {
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::vector<cx> zeros;
  while (static_cast<int>(zeros.size()) < count) {
    const cx a = std::polar(0.15 + 0.6 * unif(rng), 2.0 * std::numbers::pi * unif(rng));
    bool ok = true;
    for (cx b : zeros) ok = ok && std::abs(a - b) > 0.1;
    if (ok) zeros.push_back(a);
  }
  return zeros;
}

}  // namespace

TEST_CASE("compressed shift on small model spaces") {
  SECTION("single zero at the origin") {
    const ModelSpace M{BlaschkeProduct({cx(0.0)})};
    REQUIRE(M.T().rows() == 1);
    CHECK(std::abs(M.T()(0, 0)) < 1e-10);
  }
  SECTION("double zero gives the nilpotent Jordan block") {
    const ModelSpace M{BlaschkeProduct({cx(0.0), cx(0.0)})};
    REQUIRE(M.T().rows() == 2);
    CHECK(std::abs(M.T()(1, 0) - cx(1.0)) < 1e-9);
    CHECK(std::abs(M.T()(0, 0)) < 1e-9);
    CHECK(std::abs(M.T()(0, 1)) < 1e-9);
    CHECK(std::abs(M.T()(1, 1)) < 1e-9);
    CHECK((M.T() * M.T()).cwiseAbs().maxCoeff() < 1e-9);
  }
  SECTION("single interior zero is its own compression") {
    const ModelSpace M{BlaschkeProduct({cx(0.5)})};
    REQUIRE(M.T().rows() == 1);
    CHECK(std::abs(M.T()(0, 0) - cx(0.5)) < 1e-10);
  }
  SECTION("degree zero is rejected") {
    CHECK_THROWS_AS(ModelSpace{BlaschkeProduct()}, DegreeZero);
  }
}

TEST_CASE("analytic functional calculus on the model space") {
  const ModelSpace M{BlaschkeProduct({cx(0.0), cx(0.0)})};
  SECTION("constants and the identity symbol") {
    const Eigen::MatrixXcd I2 = phi_of_T(RationalFunction(cx(1.0)), M);
    CHECK((I2 - Eigen::MatrixXcd::Identity(2, 2)).cwiseAbs().maxCoeff() < 1e-10);
    const RationalFunction idz(Polynomial({cx(0.0), cx(1.0)}), Polynomial({cx(1.0)}));
    CHECK((phi_of_T(idz, M) - M.T()).cwiseAbs().maxCoeff() < 1e-10);
  }
  SECTION("geometric series truncates against a nilpotent shift") {
    const RationalFunction geo(Polynomial({cx(1.0)}), Polynomial({cx(1.0), cx(-0.5)}));
    const Eigen::MatrixXcd expect =
        Eigen::MatrixXcd::Identity(2, 2) + 0.5 * M.T();
    CHECK((phi_of_T(geo, M) - expect).cwiseAbs().maxCoeff() < 1e-9);
  }
  SECTION("poles near the closed disk are rejected") {
    const RationalFunction bad(Polynomial({cx(1.0)}), Polynomial({cx(-0.5), cx(1.0)}));
    CHECK_THROWS_AS(phi_of_T(bad, M), PoleNearDisk);
  }
}

TEST_CASE("commutant defect certificates") {
  SECTION("identity commutant has zero defect") {
    const ModelSpace M{BlaschkeProduct({cx(0.2), cx(-0.4, 0.1)})};
    const CommutantCandidate R(Eigen::MatrixXcd::Identity(2, 2), M);
    const auto r = sarason_defect(R, M);
    CHECK(r.n_neg == 0);
    CHECK(r.n_zero == 2);
    CHECK(r.n_pos == 0);
  }
  SECTION("scalar two on the one-dimensional space") {
    const ModelSpace M{BlaschkeProduct({cx(0.0)})};
    const CommutantCandidate R(Eigen::MatrixXcd::Constant(1, 1, cx(2.0)), M);
    const auto r = sarason_defect(R, M);
    CHECK(r.n_neg == 1);
    CHECK(r.n_zero == 0);
    CHECK(r.n_pos == 0);
    REQUIRE(r.spectrum.size() == 1);
    CHECK(std::abs(r.spectrum[0] + 3.0) < 1e-9);
  }
  SECTION("non-commuting candidates are rejected") {
    const ModelSpace M{BlaschkeProduct({cx(0.2), cx(-0.4, 0.1)})};
    Eigen::MatrixXcd R(2, 2);
    R << cx(0.0), cx(1.0), cx(0.0), cx(0.0);
    CHECK_THROWS_AS(sarason_defect(CommutantCandidate(R, M), M), NotInCommutant);
  }
}

TEST_CASE("distinct-zero congruence with pick matrices") {
  // For diagonalizable commutants r(T) the orthonormal-basis defect
  // identity - R R* is congruent to the Pick matrix at (zeros, r(zeros)).
  std::mt19937_64 rng(41);
  std::uniform_real_distribution<double> unif(-0.5, 0.5);
  for (int trial = 0; trial < 8; ++trial) {
    const int deg = 2 + static_cast<int>(rng() % 4);  // degree 2..5
    const auto zeros = random_distinct_zeros(rng, deg);
    const ModelSpace M{BlaschkeProduct(zeros)};
    std::vector<cx> pcoef;
    for (int k = 0; k <= 3; ++k) pcoef.push_back(cx(unif(rng), unif(rng)) / double(k + 1));
    const RationalFunction r(Polynomial(pcoef), Polynomial({cx(1.0)}));
    const CommutantCandidate R(phi_of_T(r, M), M);
    const auto lhs = sarason_defect(R, M);
    std::vector<cx> rv;
    for (cx b : zeros) rv.push_back(r.eval(b));
    const auto rhs = inertia(pick_matrix(zeros, rv), 1e-9);
    CHECK(lhs.n_neg == rhs.n_neg);
    CHECK(lhs.n_zero == rhs.n_zero);
    CHECK(lhs.n_pos == rhs.n_pos);
  }
}

TEST_CASE("coefficient bridge through the shift jordan block") {
  // On the model space of z^(n+1) the compressed shift is the Jordan block,
  // and w(T) reproduces the Toeplitz-defect certificate.
  const std::vector<cx> w = {cx(0.3), cx(-0.2, 0.4), cx(1.5)};
  const ModelSpace M{BlaschkeProduct({cx(0.0), cx(0.0), cx(0.0)})};
  Eigen::MatrixXcd wT = Eigen::MatrixXcd::Zero(3, 3);
  Eigen::MatrixXcd Tk = Eigen::MatrixXcd::Identity(3, 3);
  for (std::size_t k = 0; k < w.size(); ++k) {
    wT += w[k] * Tk;
    Tk = Tk * M.T();
  }
  const auto lhs = sarason_defect(CommutantCandidate(wT, M), M);
  const auto rhs = inertia(HermitianMatrix(cf_matrices(w).defect), 1e-9);
  CHECK(lhs.n_neg == rhs.n_neg);
  CHECK(lhs.n_zero == rhs.n_zero);
  CHECK(lhs.n_pos == rhs.n_pos);
}

TEST_CASE("contractive-inclusion gram forms") {
  SECTION("inner symbol reduces to the isometric case") {
    const BlaschkeProduct C({cx(0.3), cx(-0.4)});
    const int N = 64;
    const Eigen::MatrixXcd L = detail::taylor_toeplitz(C.to_rational(), N);
    const Eigen::MatrixXcd G = Eigen::MatrixXcd::Identity(N, N) - L * L.adjoint();
    // the inclusion Gram of an inner function is a projection: eigenvalues 0/1
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(G);
    for (int i = 0; i < N; ++i) {
      const double lam = es.eigenvalues()(i);
      CHECK(std::min(std::abs(lam), std::abs(lam - 1.0)) < 1e-8);
    }
  }
  SECTION("zero commutant keeps the gram matrix itself") {
    const RationalFunction C(Polynomial({cx(0.0), cx(0.6)}), Polynomial({cx(1.0)}));
    const int N = 48;
    const auto r = gram_form_general(C, Eigen::MatrixXcd::Zero(N, N), N);
    CHECK(r.inertia.n_neg == 0);
  }
  SECTION("shift commutant under a strictly contractive symbol") {
    const RationalFunction C(Polynomial({cx(0.0), cx(0.6)}), Polynomial({cx(1.0)}));
    const int N = 48;
    Eigen::MatrixXcd Rz = Eigen::MatrixXcd::Zero(N, N);
    for (int i = 0; i + 1 < N; ++i) Rz(i + 1, i) = 1.0;
    const auto r = gram_form_general(C, Rz, N);
    CHECK(r.inertia.n_neg == 0);
    CHECK(r.n_neg_refined == 0);
  }
  SECTION("free space with half-shift commutant stays nonnegative") {
    const RationalFunction C(cx(0.0));
    const int N = 48;
    Eigen::MatrixXcd R = Eigen::MatrixXcd::Zero(N, N);
    for (int i = 0; i + 1 < N; ++i) R(i + 1, i) = 0.5;
    const auto r = gram_form_general(C, R, N);
    CHECK(r.inertia.n_neg == 0);
  }
}
