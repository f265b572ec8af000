#pragma once

#include <kappa/errors.hpp>
#include <kappa/interval_set.hpp>

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <iostream>
#include <numbers>
#include <vector>

namespace kappa {

namespace detail {

/// Closed form of the compressed Hilbert transform of a piecewise
/// polynomial psi:
///   pi * (H psi)(x) = W(x) + sum_nodes c_y(x) * ln|x - y|,
/// where W is a polynomial (degree deg(psi) - 1) and c_y is the difference
/// of the polynomial pieces adjacent to node y, evaluated as a polynomial in
/// x. Both parts follow from dividing each panel polynomial by (t - x):
///   PV int_a^b P(t)/(t-x) dt = int_a^b (P(t)-P(x))/(t-x) dt
///                              + P(x) * (ln|b-x| - ln|a-x|).
struct HilbertRep {
  Eigen::VectorXcd W;          // ascending x-power coefficients
  Eigen::MatrixXcd node_coef;  // node_count x (deg+1): c_y as x-polynomials
  double coef_scale = 0.0;     // magnitude reference for coincidence tests
};

inline HilbertRep hilbert_transform_rep(const IntervalSet& set, const PanelPolys& psi) {
  const int d = psi.deg();
  HilbertRep rep;
  rep.W = Eigen::VectorXcd::Zero(std::max(1, d));
  rep.node_coef = Eigen::MatrixXcd::Zero(set.node_count(), d + 1);
  for (int q = 0; q < set.panel_count(); ++q) {
    const auto& p = set.panel(q);
    // log terms: + P_q(x) ln|b-x| - P_q(x) ln|a-x|, grouped by node
    rep.node_coef.row(p.left_node + 1) += psi.coef.row(q);
    rep.node_coef.row(p.left_node) -= psi.coef.row(q);
    // polynomial part: int (P(t) - P(x))/(t - x) dt
    //   = sum_m p_m sum_{r=0}^{m-1} (b^{r+1}-a^{r+1})/(r+1) x^{m-1-r}
    for (int m = 1; m <= d; ++m)
      for (int r = 0; r < m; ++r)
        rep.W(m - 1 - r) += psi.coef(q, m) *
                            (std::pow(p.b, r + 1) - std::pow(p.a, r + 1)) / (r + 1.0);
  }
  rep.coef_scale = std::max(rep.node_coef.cwiseAbs().maxCoeff(), rep.W.cwiseAbs().maxCoeff());
  return rep;
}

inline cx polyval_ascending(const Eigen::VectorXcd& c, double x) {
  cx acc(0.0);
  for (Eigen::Index m = c.size() - 1; m >= 0; --m) acc = acc * x + c(m);
  return acc;
}

/// Evaluate the transform at one point. A point that coincides with a node
/// is fine when the adjacent pieces join continuously there (the log
/// coefficient vanishes identically and the term is dropped); a genuine
/// discontinuity cannot be absorbed, so the point is nudged off the node by
/// 1e-12 with a warning.
inline cx hilbert_rep_eval(const IntervalSet& set, const HilbertRep& rep, double x,
                           int recursion = 0) {
  const double xscale = std::max(1.0, std::abs(x));
  double coincident_coeff_tol = 1e-9 * std::max(1.0, rep.coef_scale);
  for (int m = 0; m < rep.node_coef.cols(); ++m) coincident_coeff_tol *= std::max(1.0, xscale);
  cx acc = polyval_ascending(rep.W, x);
  for (int y = 0; y < set.node_count(); ++y) {
    const double u = x - set.node(y);
    const cx c = polyval_ascending(rep.node_coef.row(y).transpose(), x);
    if (std::abs(u) < 1e-12 * xscale) {
      if (std::abs(c) <= coincident_coeff_tol) continue; // continuous junction: exact cancellation
      if (recursion > 0) throw NodeCoincidence("evaluation point pinned to a node");
      std::cerr << "finite_hilbert: evaluation point " << x
                << " coincides with a discontinuity node; perturbing by 1e-12\n";
      return hilbert_rep_eval(set, rep, x + 1e-12 * xscale, recursion + 1);
    }
    acc += c * std::log(std::abs(u));
  }
  return acc / std::numbers::pi;
}

/// Primitive of u^k ln|u| (continuous through u = 0, value 0 there).
inline double log_primitive(int k, double u) {
  if (u == 0.0) return 0.0;
  const double kk = static_cast<double>(k + 1);
  return std::pow(u, kk) / kk * (std::log(std::abs(u)) - 1.0 / kk);
}

/// Exact integral over the set of (H psi)(x) * conj(B(x)) given the
/// transform representation of psi. The polynomial part integrates in closed
/// form; each log term integrates with the u^k ln|u| primitives after
/// rebasing to u = x - y.
inline cx hilbert_rep_ip(const IntervalSet& set, const HilbertRep& rep, const PanelPolys& B) {
  const Eigen::Index degB = B.coef.cols() - 1;
  cx acc(0.0);
  // polynomial part: int W(x) conj(B(x)) dx
  for (int q = 0; q < set.panel_count(); ++q) {
    const auto& p = set.panel(q);
    for (Eigen::Index m = 0; m < rep.W.size(); ++m)
      for (Eigen::Index r = 0; r <= degB; ++r) {
        const double mm = static_cast<double>(m + r + 1);
        acc += rep.W(m) * std::conj(B.coef(q, r)) *
               (std::pow(p.b, mm) - std::pow(p.a, mm)) / mm;
      }
  }
  // log terms: per node y and panel q, int c_y(x) conj(B_q(x)) ln|x-y| dx
  const Eigen::Index degC = rep.node_coef.cols() - 1;
  const Eigen::Index degR = degC + degB;
  std::vector<cx> r_coef(static_cast<std::size_t>(degR) + 1);
  std::vector<cx> s_coef(static_cast<std::size_t>(degR) + 1);
  std::vector<double> binom((static_cast<std::size_t>(degR) + 1) * (static_cast<std::size_t>(degR) + 1), 0.0);
  for (Eigen::Index m = 0; m <= degR; ++m) {
    binom[static_cast<std::size_t>(m * (degR + 1))] = 1.0;
    for (Eigen::Index k = 1; k <= m; ++k)
      binom[static_cast<std::size_t>(m * (degR + 1) + k)] =
          binom[static_cast<std::size_t>((m - 1) * (degR + 1) + k - 1)] +
          binom[static_cast<std::size_t>((m - 1) * (degR + 1) + k)];
  }
  for (int y = 0; y < set.node_count(); ++y) {
    if (rep.node_coef.row(y).cwiseAbs().maxCoeff() == 0.0) continue;
    const double ynode = set.node(y);
    for (int q = 0; q < set.panel_count(); ++q) {
      const auto& p = set.panel(q);
      // R(x) = c_y(x) * conj(B_q(x))
      std::fill(r_coef.begin(), r_coef.end(), cx(0.0));
      for (Eigen::Index m = 0; m <= degC; ++m)
        for (Eigen::Index r = 0; r <= degB; ++r)
          r_coef[static_cast<std::size_t>(m + r)] += rep.node_coef(y, m) * std::conj(B.coef(q, r));
      // rebase to u = x - y
      std::fill(s_coef.begin(), s_coef.end(), cx(0.0));
      for (Eigen::Index m = 0; m <= degR; ++m) {
        if (r_coef[static_cast<std::size_t>(m)] == cx(0.0)) continue;
        double ypow = 1.0;
        for (Eigen::Index k = m; k >= 0; --k) {
          s_coef[static_cast<std::size_t>(k)] += r_coef[static_cast<std::size_t>(m)] *
                                                 binom[static_cast<std::size_t>(m * (degR + 1) + k)] * ypow;
          ypow *= ynode;
        }
      }
      const double ua = p.a - ynode, ub = p.b - ynode;
      for (Eigen::Index k = 0; k <= degR; ++k)
        acc += s_coef[static_cast<std::size_t>(k)] *
               (log_primitive(static_cast<int>(k), ub) - log_primitive(static_cast<int>(k), ua));
    }
  }
  return acc / std::numbers::pi;
}

/// Coefficients d_j(psi) = int_Delta ((t-i)/(t+i))^j psi(t)/(t+i) dt for
/// j = 0..jmax, computed panelwise by exact antiderivative recursions in the
/// Cayley variable w = (t-i)/(t+i):
///   F_j = int w^j/(1-w) dw       = F_{j-1} - w^j/j,   F_0 = -Log(1-w)
///   G_j = int w^j/(1-w)^2 dw     = w^j/(1-w) - j F_{j-1}
///   Q_j = int w^j/(1-w)^3 dw     = w^j/(2(1-w)^2) - (j/2) G_{j-1}
/// and t = i(1+w)/(1-w), dt = 2i/(1-w)^2 dw gives
///   int t^0 psi dt -> Delta F_j, int t^1 -> i(2 Delta G_j - Delta F_j),
///   int t^2 -> -(4 Delta Q_j - 4 Delta G_j + Delta F_j).
/// 1-w stays in the right half-plane for real t, so the principal Log is
/// continuous along every panel.
inline Eigen::VectorXcd cayley_series(const IntervalSet& set, const PanelPolys& psi, int jmax) {
  if (psi.deg() > 2) throw Error("cayley_series: panel degree above 2 is not supported");
  const cx I(0.0, 1.0);
  struct EndState {
    cx w, one_minus_w, wpow, F, G, Q;
  };
  auto init = [&](double t) {
    EndState s;
    s.w = (t - I) / (t + I);
    s.one_minus_w = 1.0 - s.w;
    s.wpow = 1.0;
    s.F = -std::log(s.one_minus_w);
    s.G = 1.0 / s.one_minus_w;
    s.Q = 0.5 / (s.one_minus_w * s.one_minus_w);
    return s;
  };
  const int P = set.panel_count();
  std::vector<EndState> lo(static_cast<std::size_t>(P)), hi(static_cast<std::size_t>(P));
  for (int q = 0; q < P; ++q) {
    lo[static_cast<std::size_t>(q)] = init(set.panel(q).a);
    hi[static_cast<std::size_t>(q)] = init(set.panel(q).b);
  }
  Eigen::VectorXcd d = Eigen::VectorXcd::Zero(jmax + 1);
  for (int j = 0; j <= jmax; ++j) {
    for (int q = 0; q < P; ++q) {
      auto& A = lo[static_cast<std::size_t>(q)];
      auto& Bq = hi[static_cast<std::size_t>(q)];
      if (j > 0) {
        for (EndState* s : {&A, &Bq}) {
          s->wpow *= s->w;
          const cx Fprev = s->F, Gprev = s->G;
          s->G = s->wpow / s->one_minus_w - static_cast<double>(j) * Fprev;
          s->Q = s->wpow / (2.0 * s->one_minus_w * s->one_minus_w) -
                 0.5 * static_cast<double>(j) * Gprev;
          s->F = Fprev - s->wpow / static_cast<double>(j);
        }
      }
      const cx dF = Bq.F - A.F, dG = Bq.G - A.G, dQ = Bq.Q - A.Q;
      cx contrib = psi.coef(q, 0) * dF;
      if (psi.deg() >= 1) contrib += psi.coef(q, 1) * I * (2.0 * dG - dF);
      if (psi.deg() >= 2) contrib += psi.coef(q, 2) * (-(4.0 * dQ - 4.0 * dG + dF));
      d(j) += contrib;
    }
  }
  return d;
}

} // namespace detail

/// Finite (compressed) Hilbert transform of a piecewise-linear function,
/// evaluated at the given points:
///   (H_Delta phi)(x) = PV (1/pi) int_Delta phi(t)/(t-x) dt.
/// Exact closed form (each panel's linear piece contributes explicit
/// log terms), valid for x inside or outside the set.
inline Eigen::VectorXcd finite_hilbert(const IntervalSet& set, const PiecewiseLinearFunction& phi,
                                       const std::vector<double>& x) {
  const auto rep = detail::hilbert_transform_rep(set, detail::panel_polys_from_linear(set, phi));
  Eigen::VectorXcd out(static_cast<Eigen::Index>(x.size()));
  for (std::size_t k = 0; k < x.size(); ++k)
    out(static_cast<Eigen::Index>(k)) = detail::hilbert_rep_eval(set, rep, x[k]);
  return out;
}

/// L2(Delta) inner product <phi, psi> of piecewise-linear functions (exact).
inline cx l2_inner(const IntervalSet& set, const PiecewiseLinearFunction& phi,
                   const PiecewiseLinearFunction& psi) {
  return detail::panel_polys_ip(set, detail::panel_polys_from_linear(set, phi),
                                detail::panel_polys_from_linear(set, psi));
}

/// <H_Delta phi, psi> over the set, exact (log-primitive integration).
inline cx hilbert_inner(const IntervalSet& set, const PiecewiseLinearFunction& phi,
                        const PiecewiseLinearFunction& psi) {
  return detail::hilbert_rep_ip(set,
                                detail::hilbert_transform_rep(
                                    set, detail::panel_polys_from_linear(set, phi)),
                                detail::panel_polys_from_linear(set, psi));
}

/// Coefficients of phi against the orthonormal Cayley basis
/// e_j = (1/sqrt(pi)) ((t-i)/(t+i))^j / (t+i), j in Z, restricted to real
/// phi: <phi, e_j> = conj(d_j(phi))/sqrt(pi) for j >= 0 and
/// <phi, e_j> = d_{-j-1}(phi)/sqrt(pi) for j < 0, so one nonnegative-index
/// run serves both sides. Returns the 2*jmax+1 coefficients for
/// j = -jmax..jmax (index j + jmax); phi must be real-valued.
inline Eigen::VectorXcd cayley_basis_coefficients(const IntervalSet& set,
                                                  const PiecewiseLinearFunction& phi, int jmax) {
  if (phi.values.imag().cwiseAbs().maxCoeff() > 1e-12 * std::max(1.0, phi.values.cwiseAbs().maxCoeff()))
    throw Error("cayley_basis_coefficients: phi must be real-valued");
  const auto d = detail::cayley_series(set, detail::panel_polys_from_linear(set, phi), jmax);
  const double rpi = std::sqrt(std::numbers::pi);
  Eigen::VectorXcd out(2 * jmax + 1);
  for (int j = -jmax; j <= jmax; ++j)
    out(j + jmax) = (j >= 0 ? std::conj(d(j)) : d(-j - 1)) / rpi;
  return out;
}

} // namespace kappa
