#pragma once

#include <kappa/errors.hpp>
#include <kappa/polynomial.hpp>

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <functional>
#include <utility>
#include <vector>

namespace kappa {

/// A finite union of disjoint bounded closed intervals on the real line,
/// uniformly partitioned into panels. Panel boundaries are the nodes; the
/// hat functions on the nodes span the piecewise-linear functions used as
/// certification bases. Coordinates are assumed O(1)-scaled (|x| <= 1e3);
/// assembly uses global power-basis polynomials per panel, which would lose
/// accuracy on wildly scaled domains.
class IntervalSet {
 public:
  struct Panel {
    double a = 0.0;
    double b = 0.0;
    int interval = 0;
    int left_node = 0; ///< global index of the node at a; the node at b is left_node + 1
  };

  explicit IntervalSet(std::vector<std::pair<double, double>> intervals,
                       int panels_per_interval = 64)
      : intervals_(std::move(intervals)), panels_per_interval_(panels_per_interval) {
    if (intervals_.empty()) throw Error("IntervalSet: no intervals");
    if (panels_per_interval_ < 1) throw Error("IntervalSet: need at least one panel per interval");
    std::sort(intervals_.begin(), intervals_.end());
    for (std::size_t i = 0; i < intervals_.size(); ++i) {
      const auto& [a, b] = intervals_[i];
      if (!(b > a)) throw Error("IntervalSet: interval with nonpositive length");
      if (std::abs(a) > 1e3 || std::abs(b) > 1e3)
        throw Error("IntervalSet: coordinates exceed the supported O(1) scale");
      if (i > 0 && !(a > intervals_[i - 1].second))
        throw Error("IntervalSet: intervals must be disjoint");
    }
    for (std::size_t i = 0; i < intervals_.size(); ++i) {
      const auto& [a, b] = intervals_[i];
      const double h = (b - a) / panels_per_interval_;
      const int first_node = static_cast<int>(nodes_.size());
      for (int k = 0; k <= panels_per_interval_; ++k)
        nodes_.push_back(k == panels_per_interval_ ? b : a + k * h);
      for (int k = 0; k < panels_per_interval_; ++k)
        panels_.push_back(Panel{nodes_[static_cast<std::size_t>(first_node + k)],
                                nodes_[static_cast<std::size_t>(first_node + k + 1)],
                                static_cast<int>(i), first_node + k});
    }
  }

  int node_count() const { return static_cast<int>(nodes_.size()); }
  double node(int k) const { return nodes_.at(static_cast<std::size_t>(k)); }
  int panel_count() const { return static_cast<int>(panels_.size()); }
  const Panel& panel(int q) const { return panels_.at(static_cast<std::size_t>(q)); }
  int interval_count() const { return static_cast<int>(intervals_.size()); }
  const std::vector<std::pair<double, double>>& intervals() const { return intervals_; }
  int panels_per_interval() const { return panels_per_interval_; }

  double measure() const {
    double s = 0.0;
    for (const auto& [a, b] : intervals_) s += b - a;
    return s;
  }
  double diam() const { return intervals_.back().second - intervals_.front().first; }

  /// Same union of intervals with twice the panels; existing nodes are kept,
  /// so piecewise-linear functions on this set are exactly representable on
  /// the refined set.
  IntervalSet refined() const { return IntervalSet(intervals_, 2 * panels_per_interval_); }

  /// True if node k sits at the left or right end of its interval (the hat
  /// there is one-sided and the functions it carries may jump to zero).
  bool is_interval_end(int k) const {
    const int per = panels_per_interval_ + 1;
    const int offset = k % per;
    return offset == 0 || offset == panels_per_interval_;
  }

  /// Index of the panel containing x, or -1 if x lies outside the set
  /// (within a 1e-14 slack at interval ends).
  int locate(double x) const {
    for (int q = 0; q < panel_count(); ++q) {
      const auto& p = panels_[static_cast<std::size_t>(q)];
      const double slack = 1e-14 * std::max(1.0, std::abs(p.b));
      if (x >= p.a - slack && x <= p.b + slack) return q;
    }
    return -1;
  }

 private:
  std::vector<std::pair<double, double>> intervals_;
  int panels_per_interval_ = 0;
  std::vector<double> nodes_;
  std::vector<Panel> panels_;
};

/// A function that is linear on every panel of an IntervalSet and zero off
/// the set, stored by its nodal values. This is the concrete slice of the
/// class of bounded square-integrable test functions that the certification
/// bases are drawn from.
struct PiecewiseLinearFunction {
  Eigen::VectorXcd values;

  PiecewiseLinearFunction() = default;
  explicit PiecewiseLinearFunction(Eigen::VectorXcd v) : values(std::move(v)) {}
};

/// Hat function centered at node k (value one there, zero at all other nodes).
inline PiecewiseLinearFunction pl_hat(const IntervalSet& set, int k) {
  if (k < 0 || k >= set.node_count()) throw Error("pl_hat: node index out of range");
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(set.node_count());
  v(k) = 1.0;
  return PiecewiseLinearFunction(std::move(v));
}

/// All hat functions of the node set, in node order.
inline std::vector<PiecewiseLinearFunction> hat_basis(const IntervalSet& set) {
  std::vector<PiecewiseLinearFunction> out;
  out.reserve(static_cast<std::size_t>(set.node_count()));
  for (int k = 0; k < set.node_count(); ++k) out.push_back(pl_hat(set, k));
  return out;
}

/// Nodal sampling of a callable.
inline PiecewiseLinearFunction pl_sample(const IntervalSet& set,
                                         const std::function<cx(double)>& f) {
  Eigen::VectorXcd v(set.node_count());
  for (int k = 0; k < set.node_count(); ++k) v(k) = f(set.node(k));
  return PiecewiseLinearFunction(std::move(v));
}

/// Pointwise evaluation; zero outside the set.
inline cx pl_eval(const IntervalSet& set, const PiecewiseLinearFunction& phi, double x) {
  if (phi.values.size() != set.node_count())
    throw Error("pl_eval: nodal values do not match the set");
  const int q = set.locate(x);
  if (q < 0) return cx(0.0);
  const auto& p = set.panel(q);
  const double s = (x - p.a) / (p.b - p.a);
  return (1.0 - s) * phi.values(p.left_node) + s * phi.values(p.left_node + 1);
}

/// Nodal values of phi on another set covering the same intervals. Exact
/// when `to` refines `from` (nodes of `from` are nodes of `to`).
inline PiecewiseLinearFunction pl_resample(const IntervalSet& from,
                                           const PiecewiseLinearFunction& phi,
                                           const IntervalSet& to) {
  Eigen::VectorXcd v(to.node_count());
  for (int k = 0; k < to.node_count(); ++k) v(k) = pl_eval(from, phi, to.node(k));
  return PiecewiseLinearFunction(std::move(v));
}

namespace detail {

/// Piecewise polynomial on the panels of an IntervalSet, zero off the set.
/// Row q holds the global-coordinate coefficients (ascending powers of t) of
/// the polynomial on panel q.
struct PanelPolys {
  Eigen::MatrixXcd coef; // panel_count x (deg + 1)

  int deg() const { return static_cast<int>(coef.cols()) - 1; }
};

inline PanelPolys panel_polys_from_linear(const IntervalSet& set,
                                          const PiecewiseLinearFunction& phi) {
  if (phi.values.size() != set.node_count())
    throw Error("panel_polys_from_linear: nodal values do not match the set");
  PanelPolys out;
  out.coef.resize(set.panel_count(), 2);
  for (int q = 0; q < set.panel_count(); ++q) {
    const auto& p = set.panel(q);
    const cx va = phi.values(p.left_node), vb = phi.values(p.left_node + 1);
    const cx lambda = (vb - va) / (p.b - p.a);
    out.coef(q, 0) = va - lambda * p.a;
    out.coef(q, 1) = lambda;
  }
  return out;
}

inline PanelPolys panel_polys_multiply(const PanelPolys& A, const PanelPolys& B) {
  if (A.coef.rows() != B.coef.rows()) throw Error("panel_polys_multiply: panel count mismatch");
  PanelPolys out;
  out.coef = Eigen::MatrixXcd::Zero(A.coef.rows(), A.coef.cols() + B.coef.cols() - 1);
  for (Eigen::Index q = 0; q < A.coef.rows(); ++q)
    for (Eigen::Index m = 0; m < A.coef.cols(); ++m)
      for (Eigen::Index r = 0; r < B.coef.cols(); ++r)
        out.coef(q, m + r) += A.coef(q, m) * B.coef(q, r);
  return out;
}

inline PanelPolys panel_polys_conj(const PanelPolys& A) {
  PanelPolys out;
  out.coef = A.coef.conjugate();
  return out;
}

inline cx panel_polys_eval(const IntervalSet& set, const PanelPolys& A, double x) {
  const int q = set.locate(x);
  if (q < 0) return cx(0.0);
  cx acc(0.0);
  for (Eigen::Index m = A.coef.cols() - 1; m >= 0; --m) acc = acc * x + A.coef(q, m);
  return acc;
}

/// Integral over the set of the piecewise polynomial (exact).
inline cx panel_polys_integral(const IntervalSet& set, const PanelPolys& A) {
  cx acc(0.0);
  for (int q = 0; q < set.panel_count(); ++q) {
    const auto& p = set.panel(q);
    double pa = p.a, pb = p.b;
    for (Eigen::Index m = 0; m < A.coef.cols(); ++m) {
      const double mm = static_cast<double>(m + 1);
      acc += A.coef(q, m) * (std::pow(pb, mm) - std::pow(pa, mm)) / mm;
    }
  }
  return acc;
}

/// L2(set) inner product of piecewise polynomials: integral of A * conj(B)
/// (exact; the conjugation follows the first-argument-linear convention of
/// the paper's forms).
inline cx panel_polys_ip(const IntervalSet& set, const PanelPolys& A, const PanelPolys& B) {
  return panel_polys_integral(set, panel_polys_multiply(A, panel_polys_conj(B)));
}

} // namespace detail

} // namespace kappa
