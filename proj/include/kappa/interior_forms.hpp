#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <functional>
#include <vector>

#include "kappa/errors.hpp"
#include "kappa/hermitian.hpp"
#include "kappa/rational.hpp"

/// Interior-data quadratic forms: Pick matrices from point/value data, sampled
/// reproducing-kernel matrices on the disk and the half-plane, and the
/// Toeplitz defect matrix of Caratheodory-Fejer (coefficient) data. The
/// negative eigenvalue count of each is the certificate the solvers consume.

namespace kappa {

inline constexpr double kBoundaryMargin = 1e-12;  ///< interior points must stay this far inside

namespace detail {
inline void require_distinct(const std::vector<cx>& pts) {
  for (std::size_t j = 0; j < pts.size(); ++j)
    for (std::size_t k = j + 1; k < pts.size(); ++k)
      if (pts[j] == pts[k]) throw DuplicatePoints("points " + std::to_string(j) + " and " +
                                                  std::to_string(k) + " coincide");
}
}  // namespace detail

/// Pick matrix of disk interpolation data: entry (j,k) is
/// (1 - w_j conj(w_k)) / (1 - z_j conj(z_k)).
inline HermitianMatrix pick_matrix(const std::vector<cx>& points, const std::vector<cx>& values) {
  if (points.size() != values.size()) throw Error("pick_matrix: points/values size mismatch");
  detail::require_distinct(points);
  for (cx z : points)
    if (std::abs(z) >= 1.0 - kBoundaryMargin)
      throw PointOnBoundary("interpolation node of modulus " + std::to_string(std::abs(z)));
  const auto n = static_cast<Eigen::Index>(points.size());
  Eigen::MatrixXcd P(n, n);
  for (Eigen::Index j = 0; j < n; ++j)
    for (Eigen::Index k = 0; k < n; ++k) {
      const cx num = cx(1.0) - values[static_cast<std::size_t>(j)] *
                                   std::conj(values[static_cast<std::size_t>(k)]);
      const cx den = cx(1.0) - points[static_cast<std::size_t>(j)] *
                                   std::conj(points[static_cast<std::size_t>(k)]);
      P(j, k) = num / den;
    }
  return HermitianMatrix(P);
}

/// Sampled disk kernel (1 - S(z_j) conj(S(z_k))) / (1 - z_j conj(z_k)) for a
/// callable S. Evaluation failures at a sample surface as SamplePole.
inline HermitianMatrix kernel_matrix_schur(const std::function<cx(cx)>& S,
                                           const std::vector<cx>& samples) {
  detail::require_distinct(samples);
  const auto n = static_cast<Eigen::Index>(samples.size());
  std::vector<cx> vals(samples.size());
  for (std::size_t j = 0; j < samples.size(); ++j) {
    try {
      vals[j] = S(samples[j]);
    } catch (const PoleHit& e) {
      throw SamplePole(std::string("sample ") + std::to_string(j) + ": " + e.what());
    }
    if (!std::isfinite(vals[j].real()) || !std::isfinite(vals[j].imag()))
      throw SamplePole("sample " + std::to_string(j) + ": non-finite value");
  }
  Eigen::MatrixXcd K(n, n);
  for (Eigen::Index j = 0; j < n; ++j)
    for (Eigen::Index k = 0; k < n; ++k) {
      const cx num = cx(1.0) - vals[static_cast<std::size_t>(j)] *
                                   std::conj(vals[static_cast<std::size_t>(k)]);
      const cx den = cx(1.0) - samples[static_cast<std::size_t>(j)] *
                                   std::conj(samples[static_cast<std::size_t>(k)]);
      K(j, k) = num / den;
    }
  return HermitianMatrix(K);
}

/// Rational overload: additionally rejects samples within 1e-12 of a pole of S.
inline HermitianMatrix kernel_matrix_schur(const RationalFunction& S,
                                           const std::vector<cx>& samples) {
  for (cx p : S.poles())
    for (std::size_t j = 0; j < samples.size(); ++j)
      if (std::abs(p - samples[j]) < 1e-12)
        throw SamplePole("sample " + std::to_string(j) + " within 1e-12 of a pole");
  return kernel_matrix_schur([&S](cx z) { return S.eval(z); }, samples);
}

/// Sampled half-plane kernel (f(z_j) - conj(f(z_k))) / (z_j - conj(z_k)) for a
/// callable f on C_+.
inline HermitianMatrix kernel_matrix_nevanlinna(const std::function<cx(cx)>& f,
                                                const std::vector<cx>& samples) {
  detail::require_distinct(samples);
  for (cx z : samples)
    if (z.imag() <= 0.0) throw Error("kernel_matrix_nevanlinna: sample not in the open upper half-plane");
  const auto n = static_cast<Eigen::Index>(samples.size());
  std::vector<cx> vals(samples.size());
  for (std::size_t j = 0; j < samples.size(); ++j) {
    try {
      vals[j] = f(samples[j]);
    } catch (const PoleHit& e) {
      throw SamplePole(std::string("sample ") + std::to_string(j) + ": " + e.what());
    }
    if (!std::isfinite(vals[j].real()) || !std::isfinite(vals[j].imag()))
      throw SamplePole("sample " + std::to_string(j) + ": non-finite value");
  }
  Eigen::MatrixXcd K(n, n);
  for (Eigen::Index j = 0; j < n; ++j)
    for (Eigen::Index k = 0; k < n; ++k) {
      const cx num = vals[static_cast<std::size_t>(j)] - std::conj(vals[static_cast<std::size_t>(k)]);
      const cx den = samples[static_cast<std::size_t>(j)] -
                     std::conj(samples[static_cast<std::size_t>(k)]);
      K(j, k) = num / den;
    }
  return HermitianMatrix(K);
}

/// Upper-triangular Toeplitz matrix of Taylor data w_0..w_n together with its
/// defect I - T*T. T_{jk} = w_{k-j} for k >= j, zero below the diagonal; T is
/// the matrix of multiplication by the polynomial on the truncated
/// coefficient space.
struct ToeplitzDefect {
  Eigen::MatrixXcd T;
  Eigen::MatrixXcd defect;  ///< I - T*T (Hermitian by construction)
};

inline ToeplitzDefect cf_matrices(const std::vector<cx>& w) {
  const auto n = static_cast<Eigen::Index>(w.size());
  if (n == 0) throw Error("cf_matrices: empty coefficient list");
  Eigen::MatrixXcd T = Eigen::MatrixXcd::Zero(n, n);
  for (Eigen::Index j = 0; j < n; ++j)
    for (Eigen::Index k = j; k < n; ++k) T(j, k) = w[static_cast<std::size_t>(k - j)];
  ToeplitzDefect out;
  out.T = T;
  out.defect = Eigen::MatrixXcd::Identity(n, n) - T.adjoint() * T;
  return out;
}

}  // namespace kappa
