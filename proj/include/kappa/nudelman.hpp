#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <unsupported/Eigen/KroneckerProduct>
#include <vector>

#include "kappa/errors.hpp"
#include "kappa/hermitian.hpp"
#include "kappa/schur.hpp"

/// The abstract interior form: data (A, b, c) on C^n with spectral radius of
/// A below 1, the Hermitian matrix M = sum_j A^j (cc* - bb*) (A*)^j obtained
/// as the solution of the Stein equation M = A M A* + (cc* - bb*), and
/// truncated-series verification of candidate certificate pairs against the
/// data. Specializing A to a diagonal of interpolation nodes recovers the
/// Pick matrix; the lower shift recovers the Toeplitz defect up to
/// congruence.

namespace kappa {

inline constexpr double kSpectralRadiusMargin = 1e-9;

/// Finite-dimensional data triple. The functional space acting on V = C^n is
/// the full coordinate dual throughout (pairing (x, x') = sum_i x_i x'_i).
struct NudelmanData {
  Eigen::MatrixXcd A;
  Eigen::VectorXcd b;
  Eigen::VectorXcd c;

  NudelmanData(Eigen::MatrixXcd A_in, Eigen::VectorXcd b_in, Eigen::VectorXcd c_in)
      : A(std::move(A_in)), b(std::move(b_in)), c(std::move(c_in)) {
    if (A.rows() != A.cols()) throw Error("NudelmanData: A is not square");
    if (b.size() != A.rows() || c.size() != A.rows())
      throw Error("NudelmanData: vector dimension does not match A");
    if (spectral_radius() >= 1.0 - kSpectralRadiusMargin)
      throw SpectralRadiusTooLarge("rho(A) = " + std::to_string(spectral_radius()));
  }

  Eigen::Index dim() const { return A.rows(); }

  double spectral_radius() const {
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(A, /*computeEigenvectors=*/false);
    double r = 0.0;
    for (Eigen::Index i = 0; i < A.rows(); ++i) r = std::max(r, std::abs(es.eigenvalues()(i)));
    return r;
  }

  /// Residual of the admissibility condition: functionals annihilating the
  /// whole orbit {A^j c} must annihilate {A^j b}. Equivalent (by
  /// Cayley-Hamilton) to span{A^j b : j < n} being contained in
  /// span{A^j c : j < n}; returns the relative defect of that containment.
  double admissible_defect() const {
    const Eigen::Index n = dim();
    Eigen::MatrixXcd Kc(n, n), Kb(n, n);
    Eigen::VectorXcd vc = c, vb = b;
    for (Eigen::Index j = 0; j < n; ++j) {
      Kc.col(j) = vc;
      Kb.col(j) = vb;
      vc = A * vc;
      vb = A * vb;
    }
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(Kc, Eigen::ComputeThinU);
    const double cutoff = 1e-12 * std::max(1.0, svd.singularValues()(0));
    Eigen::Index rank = 0;
    while (rank < svd.singularValues().size() && svd.singularValues()(rank) > cutoff) ++rank;
    const Eigen::MatrixXcd U = svd.matrixU().leftCols(rank);
    const double resid = (Kb - U * (U.adjoint() * Kb)).norm();
    return resid / std::max(1.0, Kb.norm());
  }
};

/// Solve M = A M A* + Q. Below dimension 64 the equation is vectorized with a
/// Kronecker product and solved directly; above, a squaring (doubling)
/// iteration M <- M + A_k M A_k*, A_k <- A_k^2 runs until the residual drops
/// below tol * (|M| + |Q|).
inline Eigen::MatrixXcd stein_solve(const Eigen::MatrixXcd& A, const Eigen::MatrixXcd& Q,
                                    double tol = 1e-12) {
  const Eigen::Index n = A.rows();
  if (n < 64) {
    const Eigen::Index n2 = n * n;
    Eigen::MatrixXcd K = Eigen::MatrixXcd::Identity(n2, n2) -
                         Eigen::kroneckerProduct(A.conjugate(), A).eval();
    Eigen::VectorXcd q(Eigen::Map<const Eigen::VectorXcd>(Q.data(), n2));
    Eigen::VectorXcd m = K.partialPivLu().solve(q);
    return Eigen::Map<const Eigen::MatrixXcd>(m.data(), n, n);
  }
  Eigen::MatrixXcd M = Q;
  Eigen::MatrixXcd Ak = A;
  double prev_resid = std::numeric_limits<double>::infinity();
  for (int it = 0; it < 80; ++it) {
    M = M + Ak * M * Ak.adjoint();
    Ak = (Ak * Ak).eval();
    const double resid = (M - A * M * A.adjoint() - Q).norm();
    const double gate = tol * (M.norm() + Q.norm());
    if (resid <= gate) return M;
    if (resid >= 0.5 * prev_resid && it > 8)
      throw NonConvergence("Stein doubling stalled at residual " + std::to_string(resid));
    prev_resid = resid;
  }
  throw NonConvergence("Stein doubling exhausted its iteration budget");
}

/// Matrix of the Hermitian form F in the coordinate-functional basis:
/// M = sum_{j>=0} A^j (cc* - bb*) (A*)^j, computed through the Stein equation
/// M = A M A* + (cc* - bb*). The Stein residual is re-checked against
/// tol * (|M| + |source|) as a postcondition.
inline HermitianMatrix nudelman_form(const NudelmanData& data, double tol = 1e-12) {
  const Eigen::MatrixXcd source =
      data.c * data.c.adjoint() - data.b * data.b.adjoint();
  Eigen::MatrixXcd M = stein_solve(data.A, source, tol);
  const double resid = (M - data.A * M * data.A.adjoint() - source).norm();
  if (resid > tol * (M.norm() + source.norm()) + 1e-13)
    throw NonConvergence("Stein residual " + std::to_string(resid) + " above tolerance");
  return HermitianMatrix(M);
}

/// Outcome of truncated-series verification of a pair against the data.
struct VerifyResult {
  double residual = 0.0;    ///< norm of the degree-<=J series mismatch
  double tail_bound = 0.0;  ///< geometric bound on the discarded tail
  bool verified = false;    ///< residual + tail_bound <= tol
};

/// Check sum_j f_j A^j c = sum_j B_j A^j b through order J, with a geometric
/// bound on the neglected tail. The tail uses |f_j| <= sup|f| and |B_j| <= 1
/// (Cauchy estimates on the unit circle) together with a decay rate
/// s = |A^m|^(1/m) < 1 found by powering A. Throws TruncationInsufficient if
/// the tail bound alone exceeds tol.
inline VerifyResult verify_pair(const NudelmanData& data, const SchurPair& pair, int J = 256,
                                double tol = 1e-9) {
  const RationalFunction Brat = pair.B.to_rational();
  const std::vector<cx> fc = pair.f.taylor_at_zero(J + 1);
  const std::vector<cx> Bc = Brat.taylor_at_zero(J + 1);

  Eigen::VectorXcd acc = Eigen::VectorXcd::Zero(data.dim());
  Eigen::VectorXcd vc = data.c, vb = data.b;
  for (int j = 0; j <= J; ++j) {
    acc += fc[static_cast<std::size_t>(j)] * vc - Bc[static_cast<std::size_t>(j)] * vb;
    vc = data.A * vc;
    vb = data.A * vb;
  }
  const double residual = acc.norm();

  // decay rate: find m <= 64 with |A^m|^(1/m) < 1, then |A^j| <= C s^j
  double s = 1.0, C = 1.0;
  {
    Eigen::MatrixXcd P = Eigen::MatrixXcd::Identity(data.dim(), data.dim());
    double max_ratio = 1.0;
    int m = 0;
    for (int k = 1; k <= 64; ++k) {
      P = (P * data.A).eval();
      const double nk = P.operatorNorm();
      const double sk = std::pow(nk, 1.0 / k);
      if (sk < 1.0) {
        s = sk;
        m = k;
        break;
      }
    }
    if (m == 0) throw TruncationInsufficient("no contracting power of A found up to order 64");
    P = Eigen::MatrixXcd::Identity(data.dim(), data.dim());
    for (int r = 0; r < m; ++r) {
      max_ratio = std::max(max_ratio, P.operatorNorm() / std::pow(s, r));
      P = (P * data.A).eval();
    }
    C = max_ratio;
  }
  const double sup_f = schur_class_check(pair.f, 1e-6).sup_estimate;
  const double tail = C * std::pow(s, J + 1) / (1.0 - s) *
                      (sup_f * data.c.norm() + data.b.norm());
  if (tail > tol)
    throw TruncationInsufficient("tail bound " + std::to_string(tail) +
                                 " exceeds tolerance at truncation order " + std::to_string(J));
  return {residual, tail, residual + tail <= tol};
}

}  // namespace kappa
