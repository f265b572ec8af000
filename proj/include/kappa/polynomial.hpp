#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <complex>
#include <initializer_list>
#include <utility>
#include <vector>

#include "kappa/errors.hpp"

/// Dense univariate polynomials over complex<double>, coefficients stored in
/// ascending degree order. Provides the arithmetic, Euclidean division, GCD
/// at a coefficient tolerance, and companion-matrix root finding that the
/// rational layer is built on.

namespace kappa {

using cx = std::complex<double>;

inline constexpr double kGcdTol = 1e-10;  ///< default coefficient-norm tolerance for GCD reduction

class Polynomial {
 public:
  Polynomial() = default;
  Polynomial(std::initializer_list<cx> coeffs) : c_(coeffs) { trim(); }
  explicit Polynomial(std::vector<cx> coeffs) : c_(std::move(coeffs)) { trim(); }
  explicit Polynomial(cx constant) : c_{constant} { trim(); }

  /// z^k
  static Polynomial monomial(int k, cx coeff = cx(1.0)) {
    std::vector<cx> c(static_cast<std::size_t>(k) + 1, cx(0.0));
    c.back() = coeff;
    return Polynomial(std::move(c));
  }

  /// Monic polynomial with the given roots.
  static Polynomial from_roots(const std::vector<cx>& roots, cx leading = cx(1.0)) {
    Polynomial p(leading);
    for (cx r : roots) p = p * Polynomial{-r, cx(1.0)};
    return p;
  }

  bool is_zero() const { return c_.empty(); }
  /// Degree; -1 for the zero polynomial.
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  const std::vector<cx>& coeffs() const { return c_; }
  cx coeff(int k) const {
    return (k >= 0 && k < static_cast<int>(c_.size())) ? c_[static_cast<std::size_t>(k)] : cx(0.0);
  }
  cx leading() const { return c_.empty() ? cx(0.0) : c_.back(); }

  double max_abs_coeff() const {
    double m = 0.0;
    for (cx v : c_) m = std::max(m, std::abs(v));
    return m;
  }

  cx eval(cx z) const {  // Horner
    cx acc(0.0);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * z + *it;
    return acc;
  }

  Polynomial derivative() const {
    if (c_.size() <= 1) return Polynomial();
    std::vector<cx> d(c_.size() - 1);
    for (std::size_t k = 1; k < c_.size(); ++k) d[k - 1] = static_cast<double>(k) * c_[k];
    return Polynomial(std::move(d));
  }

  Polynomial conj_coeffs() const {
    std::vector<cx> d(c_.size());
    for (std::size_t k = 0; k < c_.size(); ++k) d[k] = std::conj(c_[k]);
    return Polynomial(std::move(d));
  }

  /// Coefficients reversed: z^n p(1/z) for n = degree.
  Polynomial reversed() const {
    std::vector<cx> d(c_.rbegin(), c_.rend());
    return Polynomial(std::move(d));
  }

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b) {
    std::vector<cx> c(std::max(a.c_.size(), b.c_.size()), cx(0.0));
    for (std::size_t k = 0; k < a.c_.size(); ++k) c[k] += a.c_[k];
    for (std::size_t k = 0; k < b.c_.size(); ++k) c[k] += b.c_[k];
    return Polynomial(std::move(c));
  }
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b) {
    std::vector<cx> c(std::max(a.c_.size(), b.c_.size()), cx(0.0));
    for (std::size_t k = 0; k < a.c_.size(); ++k) c[k] += a.c_[k];
    for (std::size_t k = 0; k < b.c_.size(); ++k) c[k] -= b.c_[k];
    return Polynomial(std::move(c));
  }
  friend Polynomial operator-(const Polynomial& a) { return Polynomial(cx(0.0)) - a; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero() || b.is_zero()) return Polynomial();
    std::vector<cx> c(a.c_.size() + b.c_.size() - 1, cx(0.0));
    for (std::size_t i = 0; i < a.c_.size(); ++i)
      for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
    return Polynomial(std::move(c));
  }
  friend Polynomial operator*(cx s, const Polynomial& a) {
    std::vector<cx> c = a.c_;
    for (cx& v : c) v *= s;
    return Polynomial(std::move(c));
  }
  friend Polynomial operator*(const Polynomial& a, cx s) { return s * a; }

  /// Euclidean division: *this = q*d + r with deg r < deg d, returned as
  /// {quotient, remainder}. Remainder coefficients below rel_tol * (input
  /// scale) are flushed to zero so the Euclid chain terminates in floating
  /// point.
  std::pair<Polynomial, Polynomial> divmod(const Polynomial& d, double rel_tol = 0.0) const {
    if (d.is_zero()) throw Error("Polynomial::divmod: division by zero polynomial");
    std::vector<cx> r = c_;
    const int dd = d.degree();
    const cx lead = d.leading();
    std::vector<cx> q(std::max<std::size_t>(c_.size() > d.c_.size() ? c_.size() - d.c_.size() + 1 : 1, 1),
                      cx(0.0));
    for (int k = static_cast<int>(r.size()) - 1; k >= dd; --k) {
      cx f = r[static_cast<std::size_t>(k)] / lead;
      q[static_cast<std::size_t>(k - dd)] = f;
      if (f == cx(0.0)) continue;
      for (int j = 0; j <= dd; ++j)
        r[static_cast<std::size_t>(k - dd + j)] -= f * d.c_[static_cast<std::size_t>(j)];
    }
    if (static_cast<int>(r.size()) > dd) r.resize(static_cast<std::size_t>(std::max(dd, 0)));
    if (rel_tol > 0.0) {
      const double scale = std::max(1.0, max_abs_coeff());
      for (cx& v : r)
        if (std::abs(v) <= rel_tol * scale) v = cx(0.0);
    }
    return {Polynomial(std::move(q)), Polynomial(std::move(r))};
  }

  /// Roots via eigenvalues of the (monic-normalized) companion matrix.
  std::vector<cx> roots() const {
    const int n = degree();
    if (n <= 0) return {};
    if (n == 1) return {-c_[0] / c_[1]};
    Eigen::MatrixXcd C = Eigen::MatrixXcd::Zero(n, n);
    for (int i = 1; i < n; ++i) C(i, i - 1) = 1.0;
    for (int i = 0; i < n; ++i) C(i, n - 1) = -c_[static_cast<std::size_t>(i)] / c_.back();
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(C, /*computeEigenvectors=*/false);
    std::vector<cx> out(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) out[static_cast<std::size_t>(i)] = es.eigenvalues()(i);
    return out;
  }

 private:
  void trim() {
    while (!c_.empty() && c_.back() == cx(0.0)) c_.pop_back();
  }
  std::vector<cx> c_;
};

/// Monic GCD of a and b with remainders flushed at rel_tol of the running
/// scale. gcd(p, 0) = monic p.
inline Polynomial gcd(Polynomial a, Polynomial b, double rel_tol = kGcdTol) {
  const double scale = std::max({1.0, a.max_abs_coeff(), b.max_abs_coeff()});
  auto negligible = [&](const Polynomial& p) { return p.max_abs_coeff() <= rel_tol * scale; };
  if (negligible(a)) std::swap(a, b);
  while (!negligible(b)) {
    Polynomial r = a.divmod(b, 0.0).second;
    // flush against the global scale so noise cannot masquerade as a factor
    if (r.max_abs_coeff() <= rel_tol * scale) r = Polynomial();
    a = std::move(b);
    b = std::move(r);
  }
  if (a.is_zero()) return a;
  return (cx(1.0) / a.leading()) * a;
}

}  // namespace kappa
