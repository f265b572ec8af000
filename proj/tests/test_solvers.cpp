#include <catch2/catch_amalgamated.hpp>

#include <kappa/blaschke.hpp>
#include <kappa/interior_forms.hpp>
#include <kappa/model_space.hpp>
#include <kappa/solvers.hpp>

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

using namespace kappa;

namespace {

RationalFunction random_schur(std::mt19937_64& rng, int degree) {
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::vector<cx> gammas;
  for (int k = 0; k <= degree; ++k) {
    const double r = 0.7 * unif(rng) * std::pow(0.85, k);
    const double th = 2.0 * std::numbers::pi * unif(rng);
    gammas.push_back(std::polar(r, th));
  }
  return detail::schur_completion(gammas);
}

double pair_residual(const SolveReport& r, const std::vector<cx>& pts,
                     const std::vector<cx>& vals) {
  double worst = 0.0;
  for (std::size_t j = 0; j < pts.size(); ++j)
    worst = std::max(worst, std::abs(r.pair.f.eval(pts[j]) -
                                     vals[j] * blaschke_eval(r.pair.B, pts[j])));
  return worst;
}

}  // namespace

TEST_CASE("contractive interpolation through a single interior node") {
  const auto r = solve_np0({cx(0.0)}, {cx(0.5)});
  REQUIRE(r.status == SolveStatus::Solved);
  CHECK(std::abs(r.pair.f.eval(cx(0.0)) - cx(0.5)) <= 1e-10);
  CHECK(r.interpolation_residual <= 1e-9);
}

TEST_CASE("samples of a contractive quotient are reproduced exactly") {
  RationalFunction f0(Polynomial(std::vector<cx>{cx(-0.5), cx(1.0)}),
                      Polynomial(std::vector<cx>{cx(1.0), cx(-0.5)}));
  const std::vector<cx> pts = {cx(0.0), cx(0.3), cx(-0.2, 0.4), cx(0.1, -0.6)};
  std::vector<cx> vals;
  for (cx z : pts) vals.push_back(f0.eval(z));
  const auto r = solve_np0(pts, vals);
  REQUIRE(r.status == SolveStatus::Solved);
  double resid = 0.0;
  for (std::size_t j = 0; j < pts.size(); ++j)
    resid = std::max(resid, std::abs(r.pair.f.eval(pts[j]) - vals[j]));
  CHECK(resid <= 1e-8);
}

TEST_CASE("a target outside the closed disk is infeasible without denominator zeros") {
  const auto r = solve_np0({cx(0.0)}, {cx(2.0)});
  CHECK(r.status == SolveStatus::Infeasible);
  CHECK(r.objective <= -1.0);  // the 1x1 form is (1 - 4) / 1 = -3
}

TEST_CASE("one large target is matched with a single denominator zero at the node") {
  const std::vector<cx> pts = {cx(0.0)};
  const std::vector<cx> vals = {cx(2.0)};
  const auto r = solve_pick_kappa(pts, vals);
  REQUIRE(r.status == SolveStatus::Solved);
  CHECK(r.pair.kappa == 1);
  REQUIRE(r.pair.B.zeros().size() == 1);
  CHECK(std::abs(r.pair.B.zeros()[0]) <= 1e-6);
  CHECK(std::abs(r.pair.f.eval(cx(0.3))) <= 1e-6);
  CHECK(pair_residual(r, pts, vals) <= 1e-8);
}

TEST_CASE("the boundary-feasible two-node problem pins the denominator zero") {
  // data whose form has eigenvalues (-15, 0): the solution is unique, with
  // the denominator zero at 1/2 and constant numerator 1
  const std::vector<cx> pts = {cx(0.0), cx(0.25)};
  const std::vector<cx> vals = {cx(-2.0), cx(-3.5)};
  const auto r = solve_pick_kappa(pts, vals);
  REQUIRE(r.status == SolveStatus::Solved);
  CHECK(r.pair.kappa == 1);
  REQUIRE(r.pair.B.zeros().size() == 1);
  CHECK(std::abs(r.pair.B.zeros()[0] - cx(0.5)) <= 1e-6);
  CHECK(std::abs(r.pair.f.eval(cx(0.7)) - cx(1.0)) <= 1e-6);
  CHECK(r.interpolation_residual <= 1e-8);
}

TEST_CASE("seeded interpolation round trips are solved soundly") {
  std::mt19937_64 rng(777);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  int solved = 0, sound = 0;
  const int total = 10;
  for (int trial = 0; trial < total; ++trial) {
    const int kap = 1 + (trial % 2);
    const RationalFunction f = random_schur(rng, 3);
    std::vector<cx> zeros;
    for (int i = 0; i < kap; ++i)
      zeros.push_back(std::polar(0.2 + 0.6 * unif(rng), 2 * std::numbers::pi * unif(rng)));
    const BlaschkeProduct B(zeros);
    std::vector<cx> pts, vals;
    while (static_cast<int>(pts.size()) < 6) {
      const cx z = std::polar(0.85 * std::sqrt(unif(rng)), 2 * std::numbers::pi * unif(rng));
      bool ok = true;
      for (cx a : zeros) ok = ok && std::abs(z - a) > 0.05;
      for (cx p : pts) ok = ok && std::abs(z - p) > 0.05;
      if (ok) pts.push_back(z);
    }
    for (cx z : pts) vals.push_back(f.eval(z) / blaschke_eval(B, z));
    const auto cert = inertia(pick_matrix(pts, vals), 1e-9);
    const auto r = solve_pick_kappa(pts, vals);
    if (r.status == SolveStatus::Solved && r.interpolation_residual <= 1e-6) ++solved;
    if (r.status != SolveStatus::Solved || r.pair.kappa >= cert.n_neg) ++sound;
  }
  CHECK(solved >= 8);
  CHECK(sound == total);
}

TEST_CASE("a single Taylor coefficient inside the disk needs no denominator") {
  const auto r = solve_cf_kappa({cx(0.5)});
  REQUIRE(r.status == SolveStatus::Solved);
  CHECK(r.pair.kappa == 0);
  CHECK(std::abs(r.pair.f.eval(cx(0.0)) - cx(0.5)) <= 1e-9);
}

TEST_CASE("the coefficient pair (0, 2) is matched with one denominator zero") {
  const auto r = solve_cf_kappa({cx(0.0), cx(2.0)});
  REQUIRE(r.status == SolveStatus::Solved);
  CHECK(r.pair.kappa == 1);
  CHECK(r.matching_order >= 1);
  CHECK(r.interpolation_residual <= 1e-8);
}

TEST_CASE("the jet completion for the coefficient pair (0, 2) at zero one-quarter") {
  // B with zero 1/4 multiplied into the jet (0, 2) leaves the jet (0, -1/2),
  // whose completion is f(z) = -z/2
  const BlaschkeProduct B14(std::vector<cx>{cx(0.25)});
  const auto jet = detail::blaschke_times_jet(B14, {cx(0.0), cx(2.0)});
  REQUIRE(jet.size() >= 2);
  CHECK(std::abs(jet[0]) <= 1e-12);
  CHECK(std::abs(jet[1] - cx(-0.5)) <= 1e-12);
  const auto gam = detail::schur_parameters(jet);
  const auto f = detail::schur_completion(gam);
  CHECK(std::abs(f.eval(cx(0.3)) + cx(0.15)) <= 1e-12);
  CHECK(std::abs(f.eval(cx(-0.4, 0.2)) - cx(0.2, -0.1)) <= 1e-12);
}

TEST_CASE("seeded coefficient round trips match to the required order") {
  std::mt19937_64 rng(4242);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  int solved = 0;
  for (int trial = 0; trial < 5; ++trial) {
    const RationalFunction f = random_schur(rng, 3);
    const std::vector<cx> zeros = {
        std::polar(0.3 + 0.4 * unif(rng), 2 * std::numbers::pi * unif(rng)),
        std::polar(0.3 + 0.4 * unif(rng), 2 * std::numbers::pi * unif(rng))};
    const BlaschkeProduct B0(zeros);
    const auto S = f / B0.to_rational();
    const auto w = S.taylor_at_zero(7);
    const auto cert = inertia(HermitianMatrix(cf_matrices(w).defect), 1e-9);
    const auto r = solve_cf_kappa(w);
    const bool sound = r.status != SolveStatus::Solved || r.pair.kappa >= cert.n_neg;
    CHECK(sound);
    if (r.status == SolveStatus::Solved && r.interpolation_residual <= 1e-6 &&
        r.matching_order >= 7 - r.pair.kappa)
      ++solved;
  }
  CHECK(solved >= 4);
}

TEST_CASE("the scalar commutant multiple of the shift is lifted exactly") {
  ModelSpace M{BlaschkeProduct(std::vector<cx>{cx(0.0)})};
  CommutantCandidate R(Eigen::MatrixXcd::Constant(1, 1, cx(2.0)), M);
  const auto r = solve_sarason(M, R);
  REQUIRE(r.status == SolveStatus::Solved);
  CHECK(r.pair.kappa == 1);
  CHECK(r.interpolation_residual <= 1e-8);
}

TEST_CASE("a function of the compressed shift lifts without denominator zeros") {
  ModelSpace M{BlaschkeProduct(std::vector<cx>{cx(0.1), cx(-0.3, 0.2), cx(0.4, 0.3)})};
  RationalFunction phi(Polynomial(std::vector<cx>{cx(0.3), cx(0.4)}),
                       Polynomial(std::vector<cx>{cx(1.0)}));
  CommutantCandidate R(phi_of_T(phi, M), M);
  const auto r = solve_sarason(M, R);
  REQUIRE(r.status == SolveStatus::Solved);
  CHECK(r.pair.kappa == 0);
  CHECK(r.certificate.n_neg == 0);
  CHECK(r.interpolation_residual <= 1e-6);
}

TEST_CASE("a commutant with one interior pole lifts with one denominator zero") {
  ModelSpace M{BlaschkeProduct(std::vector<cx>{cx(0.1), cx(-0.3, 0.2), cx(0.4, 0.3)})};
  std::mt19937_64 rng(99);
  const RationalFunction f = random_schur(rng, 2);
  const BlaschkeProduct B1(std::vector<cx>{cx(-0.5, -0.1)});
  const Eigen::MatrixXcd Rm = phi_of_T(f, M) * phi_of_T(B1.to_rational(), M).inverse();
  CommutantCandidate R(Rm, M);
  const auto r = solve_sarason(M, R);
  REQUIRE(r.status == SolveStatus::Solved);
  CHECK(r.pair.kappa == 1);
  CHECK(r.certificate.n_neg == 1);
  CHECK(r.interpolation_residual <= 1e-6);
}

TEST_CASE("repeated model-space zeros are rejected") {
  ModelSpace M{BlaschkeProduct(std::vector<cx>{cx(0.3), cx(0.3)})};
  CommutantCandidate R(Eigen::MatrixXcd::Identity(2, 2), M);
  CHECK_THROWS_AS(solve_sarason(M, R), RepeatedZeros);
}

TEST_CASE("searches are deterministic for a fixed configuration") {
  SearchConfig cfg;
  const auto a = solve_pick_kappa({cx(0.0), cx(0.25)}, {cx(-2.0), cx(-3.5)}, cfg);
  const auto b = solve_pick_kappa({cx(0.0), cx(0.25)}, {cx(-2.0), cx(-3.5)}, cfg);
  CHECK(a.status == b.status);
  CHECK(a.objective == b.objective);
  REQUIRE(a.status == SolveStatus::Solved);
  REQUIRE(a.pair.B.zeros().size() == b.pair.B.zeros().size());
  for (std::size_t i = 0; i < a.pair.B.zeros().size(); ++i)
    CHECK(a.pair.B.zeros()[i] == b.pair.B.zeros()[i]);
}
