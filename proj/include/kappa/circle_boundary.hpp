#pragma once

#include <Eigen/Dense>
#include <Eigen/SVD>
#include <cmath>
#include <complex>
#include <vector>

#include "kappa/blaschke.hpp"
#include "kappa/circle_grid.hpp"
#include "kappa/errors.hpp"
#include "kappa/hermitian.hpp"
#include "kappa/model_space.hpp"

/// Circle-side boundary certificates: the truncated-coefficient Hermitian
/// form of boundary data (b, c) on an arc set, the Hankel-matrix rank test
/// for boundary functions, and a grid verification of the multiplication /
/// projection identity M_B Q_- M_B* = Q_- + P_{uH(B)}.

namespace kappa {

/// Boundary data on the grid: samples of b and c at every node (values off
/// the arc set are ignored by the assembly). When require_c_nonvanishing is
/// set, c must be nonzero at every retained node.
struct BoundaryDataDisk {
  Eigen::VectorXcd b;
  Eigen::VectorXcd c;

  BoundaryDataDisk(Eigen::VectorXcd b_in, Eigen::VectorXcd c_in, const CircleGrid& grid,
                   bool require_c_nonvanishing = false)
      : b(std::move(b_in)), c(std::move(c_in)) {
    if (b.size() != grid.size() || c.size() != grid.size())
      throw Error("BoundaryDataDisk: sample vectors must match the grid");
    if (require_c_nonvanishing)
      for (int m = 0; m < grid.size(); ++m)
        if (grid.in_set(m) && std::abs(c(m)) == 0.0)
          throw Error("BoundaryDataDisk: c vanishes at retained node " + std::to_string(m));
  }
};

/// Assembled boundary form plus its stability diagnostics.
struct DiskFormResult {
  Eigen::MatrixXcd form;      ///< matrix at truncation J
  Inertia inertia;            ///< inertia at truncation J, zero band widened by the tail
  int n_neg_refined = 0;      ///< negative count recomputed at 2J
  double tail_estimate = 0.0; ///< bound on the operator norm of the dropped coefficient mass
  double zero_band = 0.0;     ///< effective zero-classification threshold used
  double ratio_sup = 0.0;     ///< max |b/c| over retained nodes with c != 0 (diagnostic)
};

/// Hermitian form of the boundary data against a basis of grid functions
/// supported on the arc set:
///   entry (p,q) = sum_{j=0}^{J} [ m_j(c phi_p) conj(m_j(c phi_q))
///                               - m_j(b phi_p) conj(m_j(b phi_q)) ],
/// with moments m_j(x) = integral over Delta of u^j x d sigma taken by FFT.
///
/// For a proper arc set the moments of indicator-cut data decay like 1/j, so
/// the series tail matters: the dropped mass sum_{j>J} |col_j|^2 is summed
/// exactly up to the grid's resolvable order N/2 (the columns come from the
/// same FFTs for free) and extrapolated geometrically beyond. That tail is an
/// operator-norm bound on the assembly error and widens the zero band of the
/// eigenvalue classification — without it, truncation noise masquerades as
/// negative squares. The negative count is recomputed at truncation 2J
/// (requires 2J <= N/2); disagreement raises TruncationUnstable.
inline DiskFormResult boundary_form_disk(const CircleGrid& grid, const BoundaryDataDisk& data,
                                         const std::vector<Eigen::VectorXcd>& basis, int J = 256,
                                         double inertia_tol = 1e-9) {
  const int jcap = grid.size() / 2;
  if (2 * J > jcap) throw Error("boundary_form_disk: truncation 2J exceeds N/2");
  const auto P = static_cast<Eigen::Index>(basis.size());
  if (P == 0) throw Error("boundary_form_disk: empty basis");

  // Moment rows up to the grid's resolvable order, one FFT per (weight, basis) pair.
  Eigen::MatrixXcd Mc(P, jcap + 1), Mb(P, jcap + 1);
  for (Eigen::Index p = 0; p < P; ++p) {
    const Eigen::VectorXcd phi = grid.restrict_to_set(basis[static_cast<std::size_t>(p)]);
    Mc.row(p) = grid.moments_plus(data.c.cwiseProduct(phi), jcap).transpose();
    Mb.row(p) = grid.moments_plus(data.b.cwiseProduct(phi), jcap).transpose();
  }

  auto assemble = [&](int order) {
    const Eigen::MatrixXcd Cc = Mc.leftCols(order + 1);
    const Eigen::MatrixXcd Bb = Mb.leftCols(order + 1);
    return (Cc * Cc.adjoint() - Bb * Bb.adjoint()).eval();
  };
  auto tail_from = [&](int order) {
    double t = 0.0;
    for (int j = order + 1; j <= jcap; ++j) t += Mc.col(j).squaredNorm() + Mb.col(j).squaredNorm();
    // Remainder beyond the grid's resolvable order: take the smaller of a
    // geometric model fitted to the last 8 columns and a 1/j power-law bound
    // (indicator-cut data decays no slower than 1/j, and near the Nyquist
    // order aliasing flattens the ratio, which would blow up the geometric
    // model).
    const double last = std::sqrt(Mc.col(jcap).squaredNorm() + Mb.col(jcap).squaredNorm());
    const double earlier = std::sqrt(Mc.col(jcap - 8).squaredNorm() + Mb.col(jcap - 8).squaredNorm());
    double factor = static_cast<double>(jcap); // sum_{j>jcap} (C/j)^2 with C = jcap*last
    if (earlier > 0.0 && last > 0.0) {
      const double r = std::pow(last / earlier, 1.0 / 8.0);
      if (r < 1.0) factor = std::min(factor, r * r / (1.0 - r * r));
    }
    return t + last * last * factor;
  };
  DiskFormResult out;
  out.form = assemble(J);
  out.tail_estimate = tail_from(J);
  auto [in_J, band] = inertia_banded(out.form, inertia_tol, out.tail_estimate);
  out.inertia = in_J;
  out.zero_band = band;
  const Inertia refined =
      inertia_banded(assemble(2 * J), inertia_tol, tail_from(2 * J)).first;
  out.n_neg_refined = refined.n_neg;

  for (int m = 0; m < grid.size(); ++m)
    if (grid.in_set(m) && std::abs(data.c(m)) > 0.0)
      out.ratio_sup = std::max(out.ratio_sup, std::abs(data.b(m) / data.c(m)));

  if (refined.n_neg != out.inertia.n_neg)
    throw TruncationUnstable("negative count " + std::to_string(out.inertia.n_neg) + " at J vs " +
                             std::to_string(refined.n_neg) + " at 2J");
  return out;
}

/// Monomial certification basis u^0..u^{count-1} restricted to the arc set.
inline std::vector<Eigen::VectorXcd> monomial_basis(const CircleGrid& grid, int count) {
  std::vector<Eigen::VectorXcd> basis;
  basis.reserve(static_cast<std::size_t>(count));
  for (int p = 0; p < count; ++p) {
    Eigen::VectorXcd v(grid.size());
    for (int m = 0; m < grid.size(); ++m)
      v(m) = grid.in_set(m) ? std::pow(grid.node(m), p) : cx(0.0);
    basis.push_back(std::move(v));
  }
  return basis;
}

/// Hankel rank certificate of a boundary function.
struct HankelRankResult {
  int rank = 0;
  std::vector<double> singular_values;
  double gap_ratio = 0.0;  ///< last retained / first discarded singular value
};

/// Build the m x m Hankel matrix with entries shat(-(j+k+1)) from the
/// negative Fourier coefficients of the full-circle samples s (the matrix of
/// h -> conj(u) Q_-(u S0 h) on monomials), and count singular values above
/// gap_tol * s_1. A clean certificate needs the retained/discarded ratio to
/// be at least 10; otherwise NoCleanGap is thrown.
inline HankelRankResult hankel_rank(const CircleGrid& grid, const Eigen::VectorXcd& s, int m,
                                    double gap_tol = 1e-6) {
  if (m > grid.size() / 4) throw Error("hankel_rank: size exceeds N/4");
  if (m <= 0) throw Error("hankel_rank: size must be positive");
  const Eigen::VectorXcd S = grid.dft(s);
  Eigen::MatrixXcd H(m, m);
  for (int j = 0; j < m; ++j)
    for (int k = 0; k < m; ++k) H(j, k) = CircleGrid::coeff(S, -(j + k + 1));
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(H);
  HankelRankResult out;
  out.singular_values.assign(svd.singularValues().data(),
                             svd.singularValues().data() + svd.singularValues().size());
  const double s1 = out.singular_values.empty() ? 0.0 : out.singular_values.front();
  const double scale = std::max(1.0, s.cwiseAbs().maxCoeff());
  if (s1 <= 1e-10 * scale) {
    out.rank = 0;
    out.gap_ratio = std::numeric_limits<double>::infinity();
    return out;
  }
  int r = 0;
  while (r < m && out.singular_values[static_cast<std::size_t>(r)] > gap_tol * s1) ++r;
  out.rank = r;
  const double retained = out.singular_values[static_cast<std::size_t>(r - 1)];
  const double discarded = (r < m) ? out.singular_values[static_cast<std::size_t>(r)] : 0.0;
  out.gap_ratio = (discarded > 0.0) ? retained / discarded
                                    : std::numeric_limits<double>::infinity();
  if (out.gap_ratio < 10.0)
    throw NoCleanGap("retained/discarded singular value ratio " + std::to_string(out.gap_ratio));
  return out;
}

/// Grid residual of the identity M_B Q_- M_B* = Q_- + P_{uH(B)} applied to h:
/// the projection onto u H(B) is built from the orthonormal model-space basis
/// of H(B) shifted by one power of u.
inline double mb_projection_check(const CircleGrid& grid, const BlaschkeProduct& B,
                                  const Eigen::VectorXcd& h) {
  if (B.degree() > grid.size() / 8) throw Error("mb_projection_check: degree exceeds N/8");
  Eigen::VectorXcd Bu(grid.size());
  for (int m = 0; m < grid.size(); ++m) Bu(m) = blaschke_eval(B, grid.node(m));

  const Eigen::VectorXcd left =
      Bu.cwiseProduct(q_minus_grid(grid, Bu.conjugate().cwiseProduct(h)));
  Eigen::VectorXcd right = q_minus_grid(grid, h);
  if (B.degree() > 0) {
    const ModelSpace M(B, grid.size());
    for (int k = 0; k < M.dim(); ++k) {
      Eigen::VectorXcd vk(grid.size());
      for (int m = 0; m < grid.size(); ++m) vk(m) = grid.node(m) * M.basis_eval(k, grid.node(m));
      right += grid.inner(h, vk) * vk;
    }
  }
  return grid.norm(left - right);
}

}  // namespace kappa
