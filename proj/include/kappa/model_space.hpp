#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "kappa/blaschke.hpp"
#include "kappa/errors.hpp"
#include "kappa/hermitian.hpp"
#include "kappa/rational.hpp"
#include "kappa/schur.hpp"

/// Finite-dimensional model spaces H(C) = H^2 (-) C H^2 for a finite
/// Blaschke product C: orthonormal basis, the compressed shift T, rational
/// functional calculus phi(T), and the defect forms whose negative eigenvalue
/// counts certify commutant-lifting data. The last operation extends the
/// Gram-defect form to contractive (non-inner) C on a truncated Taylor
/// coefficient space.

namespace kappa {

/// H(C) for a finite Blaschke product C of degree n >= 1, carrying the
/// orthonormal basis of rational functions
///   phi_k(z) = sqrt(1-|a_k|^2)/(1 - conj(a_k) z) * prod_{j<k} (z-a_j)/(1 - conj(a_j) z)
/// built from the zeros a_0..a_{n-1} of C in their listed order, and the
/// matrix T of the compressed multiplication-by-z in that basis.
class ModelSpace {
 public:
  explicit ModelSpace(BlaschkeProduct C, int grid_n = kBoundaryGridDefault) : C_(std::move(C)) {
    if (C_.domain() != Domain::Disk) throw Error("ModelSpace: disk Blaschke products only");
    const int n = C_.degree();
    if (n == 0) throw DegreeZero("model space of a degree-0 Blaschke product is trivial");
    // Evaluate the basis on the uniform grid and project multiplication by z:
    // T_ij = <z phi_j, phi_i> with the H^2 inner product realized as the grid
    // mean. All entries are Fourier coefficients of smooth rational
    // functions, so the grid mean converges geometrically in grid_n.
    Eigen::MatrixXcd Phi(grid_n, n);
    Eigen::VectorXcd u(grid_n);
    for (int m = 0; m < grid_n; ++m) {
      const cx um = std::polar(1.0, 2.0 * std::numbers::pi * m / grid_n);
      u(m) = um;
      for (int k = 0; k < n; ++k) Phi(m, k) = basis_eval(k, um);
    }
    T_ = (Phi.adjoint() * u.asDiagonal() * Phi) / static_cast<double>(grid_n);
  }

  const BlaschkeProduct& blaschke() const { return C_; }
  int dim() const { return C_.degree(); }
  const Eigen::MatrixXcd& T() const { return T_; }

  /// Evaluate the k-th orthonormal basis element at z (factor-by-factor).
  cx basis_eval(int k, cx z) const {
    const auto& a = C_.zeros();
    const cx ak = a[static_cast<std::size_t>(k)];
    cx den = cx(1.0) - std::conj(ak) * z;
    if (std::abs(den) < kBlaschkePoleTol)
      throw PoleHit("model-space basis denominator vanishes at the evaluation point");
    cx acc = std::sqrt(1.0 - std::norm(ak)) / den;
    for (int j = 0; j < k; ++j) {
      const cx aj = a[static_cast<std::size_t>(j)];
      const cx dj = cx(1.0) - std::conj(aj) * z;
      if (std::abs(dj) < kBlaschkePoleTol)
        throw PoleHit("model-space basis denominator vanishes at the evaluation point");
      acc *= (z - aj) / dj;
    }
    return acc;
  }

  /// Coordinates of the reproducing kernel K_C(w, .) in the orthonormal
  /// basis: component k is conj(phi_k(w)).
  Eigen::VectorXcd kernel_coords(cx w) const {
    Eigen::VectorXcd v(dim());
    for (int k = 0; k < dim(); ++k) v(k) = std::conj(basis_eval(k, w));
    return v;
  }

 private:
  BlaschkeProduct C_;
  Eigen::MatrixXcd T_;
};

inline ModelSpace model_space_build(const BlaschkeProduct& C,
                                    int grid_n = kBoundaryGridDefault) {
  return ModelSpace(C, grid_n);
}

/// phi(T) for rational phi = p/q analytic on the closed disk, computed as
/// p(T) q(T)^{-1}. Poles must clear the closed disk by margin 1e-6.
inline Eigen::MatrixXcd phi_of_T(const RationalFunction& phi, const ModelSpace& M) {
  for (cx p : phi.poles())
    if (std::abs(p) < 1.0 + 1e-6)
      throw PoleNearDisk("pole of modulus " + std::to_string(std::abs(p)));
  const Eigen::Index n = M.dim();
  const Eigen::MatrixXcd I = Eigen::MatrixXcd::Identity(n, n);
  auto horner = [&](const Polynomial& poly) {
    Eigen::MatrixXcd acc = Eigen::MatrixXcd::Zero(n, n);
    for (int k = poly.degree(); k >= 0; --k) acc = M.T() * acc + poly.coeff(k) * I;
    return acc;
  };
  const Eigen::MatrixXcd P = horner(phi.num());
  const Eigen::MatrixXcd Q = horner(phi.den());
  Eigen::FullPivLU<Eigen::MatrixXcd> lu(Q);
  if (!lu.isInvertible())
    throw SingularDenominator("q(T) is numerically singular for the requested phi");
  Eigen::MatrixXcd X = lu.solve(P);
  // phi(T) = p(T) q(T)^{-1}; p and q commute with T, so the order of the
  // factors is immaterial and we solve from the left.
  if ((Q * X - P).norm() > 1e-8 * std::max(1.0, P.norm()))
    throw SingularDenominator("q(T) solve residual above tolerance");
  return X;
}

/// Candidate commutant operator: a matrix in the orthonormal basis together
/// with its measured commutation defect against T.
struct CommutantCandidate {
  Eigen::MatrixXcd R;
  double commutation_residual = 0.0;

  CommutantCandidate(Eigen::MatrixXcd R_in, const ModelSpace& M) : R(std::move(R_in)) {
    if (R.rows() != M.dim() || R.cols() != M.dim())
      throw Error("CommutantCandidate: dimension does not match the model space");
    commutation_residual = (M.T() * R - R * M.T()).norm();
  }
};

/// Inertia of I - R R* in the orthonormal basis of H(C). Rejects candidates
/// whose commutation residual exceeds tol.
inline Inertia sarason_defect(const CommutantCandidate& R, const ModelSpace& M, double tol = 1e-8,
                              double inertia_tol = 1e-9) {
  if (R.commutation_residual > tol)
    throw NotInCommutant("commutation residual " + std::to_string(R.commutation_residual));
  const Eigen::MatrixXcd defect =
      Eigen::MatrixXcd::Identity(M.dim(), M.dim()) - R.R * R.R.adjoint();
  return inertia(HermitianMatrix(defect), inertia_tol);
}

namespace detail {
/// Lower-triangular Toeplitz matrix of the first n Taylor coefficients of C.
inline Eigen::MatrixXcd taylor_toeplitz(const RationalFunction& C, Eigen::Index n) {
  const std::vector<cx> coeffs = C.taylor_at_zero(static_cast<int>(n));
  Eigen::MatrixXcd L = Eigen::MatrixXcd::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j <= i; ++j) L(i, j) = coeffs[static_cast<std::size_t>(i - j)];
  return L;
}

/// Diagonal means of a (nearly) Toeplitz matrix, lower triangle: symbol
/// coefficients r_0..r_{n-1}.
inline std::vector<cx> toeplitz_symbol(const Eigen::MatrixXcd& R) {
  const Eigen::Index n = R.rows();
  std::vector<cx> r(static_cast<std::size_t>(n), cx(0.0));
  for (Eigen::Index d = 0; d < n; ++d) {
    cx s(0.0);
    for (Eigen::Index i = d; i < n; ++i) s += R(i, i - d);
    r[static_cast<std::size_t>(d)] = s / static_cast<double>(n - d);
  }
  return r;
}

inline Eigen::MatrixXcd toeplitz_from_symbol(const std::vector<cx>& r, Eigen::Index n) {
  Eigen::MatrixXcd R = Eigen::MatrixXcd::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j <= i; ++j)
      if (static_cast<std::size_t>(i - j) < r.size()) R(i, j) = r[static_cast<std::size_t>(i - j)];
  return R;
}
}  // namespace detail

/// Result of the truncated Gram-defect certification for contractive C.
struct GramFormResult {
  Inertia inertia;          ///< inertia of the assembled form at truncation N
  int n_neg_refined = 0;    ///< negative count recomputed at truncation 2N
  double commutation_residual = 0.0;
  Eigen::MatrixXcd form;    ///< the assembled matrix (for diagnostics)
};

/// Defect form of a commutant candidate over H(C) for C holomorphic and
/// bounded by one (not necessarily inner), realized on the Taylor
/// coefficient space truncated at degree N.
///
/// The Gram matrix of the inclusion H(C) -> H^2 on the coefficient-kernel
/// basis is G = I - L L*, with L the lower-triangular Toeplitz matrix of the
/// Taylor coefficients of C (lower-triangularity makes the truncation exact
/// entrywise). The supplied R acts on Taylor coefficients and must commute
/// with the coefficient shift, i.e. be lower-triangular Toeplitz up to tol;
/// its adjoint is then the coefficient action of the candidate's H(C)-adjoint
/// through the inclusion. The form pairs the kernel basis through H^2:
///   F = G^2 - G R R* G,
/// whose negative eigenvalue count is the certificate. For inner C the
/// nonzero part of G is a rank-n identity and F reduces to the model-space
/// defect I - RR* compressed to H(C).
///
/// Stability: the negative count is recomputed at truncation 2N (C re-expanded,
/// R extended by its Toeplitz symbol); disagreement raises TruncationUnstable.
inline GramFormResult gram_form_general(const RationalFunction& C, const Eigen::MatrixXcd& R,
                                        Eigen::Index N = 256, double tol = 1e-8,
                                        double inertia_tol = 1e-9) {
  SchurCheck chk = schur_class_check(C, 1e-9);
  if (!chk.is_schur0)
    throw NotGeneralizedSchur("C has sup estimate " + std::to_string(chk.sup_estimate));
  if (R.rows() != N || R.cols() != N)
    throw Error("gram_form_general: R must act on the degree-N truncated space");

  // shift commutation: exact zero for lower-triangular Toeplitz R
  Eigen::MatrixXcd S = Eigen::MatrixXcd::Zero(N, N);
  for (Eigen::Index i = 0; i + 1 < N; ++i) S(i + 1, i) = 1.0;
  const double comm = (S * R - R * S).norm();
  if (comm > tol * std::max(1.0, R.norm()))
    throw NotInCommutant("shift-commutation residual " + std::to_string(comm));

  auto assemble = [&](Eigen::Index n, const Eigen::MatrixXcd& Rn) {
    const Eigen::MatrixXcd L = detail::taylor_toeplitz(C, n);
    const Eigen::MatrixXcd G = Eigen::MatrixXcd::Identity(n, n) - L * L.adjoint();
    return (G * G - G * Rn * Rn.adjoint() * G).eval();
  };

  GramFormResult out;
  out.commutation_residual = comm;
  out.form = assemble(N, R);
  out.inertia = inertia(HermitianMatrix(out.form), inertia_tol);

  const std::vector<cx> symbol = detail::toeplitz_symbol(R);
  const Eigen::MatrixXcd R2 = detail::toeplitz_from_symbol(symbol, 2 * N);
  const Inertia refined = inertia(HermitianMatrix(assemble(2 * N, R2)), inertia_tol);
  out.n_neg_refined = refined.n_neg;
  if (refined.n_neg != out.inertia.n_neg)
    throw TruncationUnstable("negative count " + std::to_string(out.inertia.n_neg) + " at N vs " +
                             std::to_string(refined.n_neg) + " at 2N");
  return out;
}

}  // namespace kappa
