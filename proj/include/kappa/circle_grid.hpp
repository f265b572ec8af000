#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <numbers>
#include <unsupported/Eigen/FFT>
#include <utility>
#include <vector>

#include "kappa/errors.hpp"

/// Uniform FFT grid on the unit circle with an arc-set mask. All circle
/// integrals in the boundary module are grid means against the normalized
/// Lebesgue measure (node weight 1/N), evaluated through a single FFT per
/// function, which is spectrally accurate for the smooth rational data the
/// certificates use.

namespace kappa {

/// N = 2^k nodes u_m = exp(2*pi*i*m/N) and a subset Delta given as a union of
/// closed angle arcs. Arc endpoints snap to nodes; the snapping error (max
/// distance from a requested endpoint to the nearest node angle) is recorded.
class CircleGrid {
 public:
  /// Arcs are [theta_begin, theta_end] pairs in radians; theta_end < theta_begin
  /// wraps through 2*pi. An empty arc list means the full circle.
  explicit CircleGrid(int n, std::vector<std::pair<double, double>> arcs = {})
      : n_(n), mask_(static_cast<std::size_t>(n), true) {
    if (n < 4 || (n & (n - 1)) != 0) throw Error("CircleGrid: node count must be a power of two >= 4");
    if (!arcs.empty()) {
      std::fill(mask_.begin(), mask_.end(), false);
      const double two_pi = 2.0 * std::numbers::pi;
      for (auto [a, b] : arcs) {
        a = std::fmod(std::fmod(a, two_pi) + two_pi, two_pi);
        b = std::fmod(std::fmod(b, two_pi) + two_pi, two_pi);
        for (int m = 0; m < n_; ++m) {
          const double th = two_pi * m / n_;
          const bool in = (a <= b) ? (th >= a - 1e-15 && th <= b + 1e-15)
                                   : (th >= a - 1e-15 || th <= b + 1e-15);
          if (in) mask_[static_cast<std::size_t>(m)] = true;
        }
        const double spacing = two_pi / n_;
        for (double end : {a, b}) {
          const double frac = std::fmod(end / spacing, 1.0);
          snap_error_ = std::max(snap_error_, spacing * std::min(frac, 1.0 - frac));
        }
      }
    }
    for (bool b : mask_) node_count_ += b ? 1 : 0;
  }

  int size() const { return n_; }
  bool in_set(int m) const { return mask_[static_cast<std::size_t>(m)]; }
  int set_node_count() const { return node_count_; }
  double set_measure() const { return static_cast<double>(node_count_) / n_; }
  double snap_error() const { return snap_error_; }

  cx node(int m) const { return std::polar(1.0, 2.0 * std::numbers::pi * m / n_); }

  /// Zero a grid function off Delta.
  Eigen::VectorXcd restrict_to_set(const Eigen::VectorXcd& y) const {
    check_size(y);
    Eigen::VectorXcd out = y;
    for (int m = 0; m < n_; ++m)
      if (!in_set(m)) out(m) = cx(0.0);
    return out;
  }

  /// Grid realization of the normalized-measure inner product <x, y> =
  /// (1/N) sum_m x_m conj(y_m).
  cx inner(const Eigen::VectorXcd& x, const Eigen::VectorXcd& y) const {
    check_size(x);
    check_size(y);
    return y.dot(x) / static_cast<double>(n_);
  }

  double norm(const Eigen::VectorXcd& x) const { return std::sqrt(std::abs(inner(x, x))); }

  /// Forward DFT: X_k = sum_m y_m exp(-2*pi*i*k*m/N).
  Eigen::VectorXcd dft(const Eigen::VectorXcd& y) const {
    check_size(y);
    Eigen::FFT<double> fft;
    std::vector<cx> in(y.data(), y.data() + n_), out;
    fft.fwd(out, in);
    return Eigen::Map<const Eigen::VectorXcd>(out.data(), n_);
  }

  Eigen::VectorXcd idft(const Eigen::VectorXcd& Y) const {
    check_size(Y);
    Eigen::FFT<double> fft;
    std::vector<cx> in(Y.data(), Y.data() + n_), out;
    fft.inv(out, in);
    return Eigen::Map<const Eigen::VectorXcd>(out.data(), n_);
  }

  /// Two-sided Fourier coefficient: yhat(j) = integral of y * u^{-j} d sigma,
  /// for -N/2 <= j < N/2, read from the DFT of the grid samples.
  static cx coeff(const Eigen::VectorXcd& Y_dft, int j) {
    const int n = static_cast<int>(Y_dft.size());
    const int k = ((j % n) + n) % n;
    return Y_dft(k) / static_cast<double>(n);
  }

  /// Positive-power moments m_j = integral of u^j * y d sigma for j = 0..jmax
  /// (one FFT; m_j is the DFT bin (N - j) mod N over N).
  Eigen::VectorXcd moments_plus(const Eigen::VectorXcd& y, int jmax) const {
    if (jmax >= n_) throw Error("CircleGrid: moment order exceeds grid resolution");
    const Eigen::VectorXcd Y = dft(y);
    Eigen::VectorXcd m(jmax + 1);
    for (int j = 0; j <= jmax; ++j) m(j) = Y((n_ - j) % n_) / static_cast<double>(n_);
    return m;
  }

 private:
  void check_size(const Eigen::VectorXcd& y) const {
    if (y.size() != n_) throw Error("CircleGrid: grid function has wrong length");
  }
  int n_;
  std::vector<bool> mask_;
  int node_count_ = 0;
  double snap_error_ = 0.0;
};

/// Projection onto nonpositive Fourier modes, on two-sided coefficients
/// indexed by DFT bin: bins for j = 1..N/2-1 are zeroed, j <= 0 retained.
inline Eigen::VectorXcd q_minus(const Eigen::VectorXcd& coeffs) {
  const int n = static_cast<int>(coeffs.size());
  Eigen::VectorXcd out = coeffs;
  for (int k = 1; k < n / 2; ++k) out(k) = cx(0.0);
  return out;
}

/// Same projection acting on a grid function (DFT, zero positive bins, inverse).
inline Eigen::VectorXcd q_minus_grid(const CircleGrid& grid, const Eigen::VectorXcd& y) {
  return grid.idft(q_minus(grid.dft(y)));
}

}  // namespace kappa
