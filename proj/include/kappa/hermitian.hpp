#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <vector>

#include "kappa/errors.hpp"

/// Hermitian matrices and their inertia (signature). Every quadratic form in
/// the library funnels through inertia(): counts of positive / negative /
/// zero eigenvalues with the spectrum attached so callers can report why a
/// certificate came out the way it did.

namespace kappa {

/// Eigenvalue counts of a Hermitian matrix at a given zero tolerance.
struct Inertia {
  int n_pos = 0;
  int n_neg = 0;
  int n_zero = 0;
  std::vector<double> spectrum;  ///< ascending real eigenvalues

  int dim() const { return n_pos + n_neg + n_zero; }
  bool operator==(const Inertia& o) const {
    return n_pos == o.n_pos && n_neg == o.n_neg && n_zero == o.n_zero;
  }
};

/// Wrapper that enforces Hermitian symmetry on construction: the input is
/// replaced by (H + H*)/2 after checking that the asymmetry defect is small
/// relative to the matrix scale. Guards against assembly bugs that would
/// otherwise be silently symmetrized away.
class HermitianMatrix {
 public:
  explicit HermitianMatrix(const Eigen::MatrixXcd& H, double defect_tol = 1e-8) {
    if (H.rows() != H.cols()) throw Error("HermitianMatrix: matrix is not square");
    const double scale = std::max(1.0, H.cwiseAbs().maxCoeff());
    const double defect = (H - H.adjoint()).cwiseAbs().maxCoeff();
    if (defect > defect_tol * scale)
      throw Error("HermitianMatrix: asymmetry defect " + std::to_string(defect) +
                  " exceeds tolerance at scale " + std::to_string(scale));
    m_ = 0.5 * (H + H.adjoint());
  }

  const Eigen::MatrixXcd& matrix() const { return m_; }
  Eigen::Index rows() const { return m_.rows(); }

 private:
  Eigen::MatrixXcd m_;
};

/// Inertia of a Hermitian matrix. An eigenvalue counts as zero iff
/// |lambda| <= tol * max(1, ||H||_2); the spectral norm of a Hermitian matrix
/// is its largest absolute eigenvalue, so the threshold comes from the
/// computed spectrum itself.
inline Inertia inertia(const HermitianMatrix& H, double tol = 1e-9) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(H.matrix(), Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw Error("inertia: eigenvalue iteration failed");
  Inertia out;
  const auto& ev = es.eigenvalues();
  double norm2 = 0.0;
  for (Eigen::Index i = 0; i < ev.size(); ++i) norm2 = std::max(norm2, std::abs(ev(i)));
  const double zero_band = tol * std::max(1.0, norm2);
  out.spectrum.reserve(static_cast<std::size_t>(ev.size()));
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    const double lam = ev(i);
    out.spectrum.push_back(lam);
    if (std::abs(lam) <= zero_band)
      ++out.n_zero;
    else if (lam > 0.0)
      ++out.n_pos;
    else
      ++out.n_neg;
  }
  return out;
}

inline Inertia inertia(const Eigen::MatrixXcd& H, double tol = 1e-9) {
  return inertia(HermitianMatrix(H), tol);
}

/// Inertia with a widened zero band. The zero threshold is
/// max(rel_tol * spectral_scale, abs_band), where abs_band is a caller-supplied
/// bound on the assembly error of the matrix (truncation tail, quadrature
/// defect, refinement disagreement). Returns the classification together with
/// the band actually used, so results can report how coarse the certificate is.
inline std::pair<Inertia, double> inertia_banded(const Eigen::MatrixXcd& H,
                                                 double rel_tol,
                                                 double abs_band) {
  Inertia raw = inertia(HermitianMatrix(H), rel_tol);
  double scale = 1.0;
  for (double lam : raw.spectrum) scale = std::max(scale, std::abs(lam));
  const double band = std::max(rel_tol * scale, abs_band);
  Inertia out;
  out.spectrum = raw.spectrum;
  for (double lam : raw.spectrum) {
    if (std::abs(lam) <= band)
      ++out.n_zero;
    else if (lam > 0.0)
      ++out.n_pos;
    else
      ++out.n_neg;
  }
  return {out, band};
}

}  // namespace kappa
