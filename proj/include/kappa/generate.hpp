#pragma once

/// Seeded random instance generation, shared by the CLI `gen` command and the
/// test suites. Every draw flows through one std::mt19937_64, so a fixed seed
/// reproduces the same instance on every run. Generators construct instances
/// from a known pair (f, B) — or, for the half-line kinds, from a known real
/// rational with a prescribed pole count — and re-certify the advertised
/// negative count before returning, redrawing on the rare degenerate draw.

#include <Eigen/Dense>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <utility>
#include <vector>

#include "kappa/blaschke.hpp"
#include "kappa/circle_grid.hpp"
#include "kappa/errors.hpp"
#include "kappa/interior_forms.hpp"
#include "kappa/interval_set.hpp"
#include "kappa/line_boundary.hpp"
#include "kappa/model_space.hpp"
#include "kappa/nudelman.hpp"
#include "kappa/rational.hpp"
#include "kappa/schur.hpp"
#include "kappa/solvers.hpp"

namespace kappa {

/// Random Schur-class function of the given degree: backward Schur recursion
/// on parameters drawn from shrinking disks |gamma_k| <= 0.7 * 0.85^k, so the
/// result sits comfortably inside the class (no near-unimodular degeneracy).
inline RationalFunction random_schur_function(std::mt19937_64& rng, int degree) {
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::vector<cx> gammas;
  gammas.reserve(static_cast<std::size_t>(degree) + 1);
  for (int k = 0; k <= degree; ++k) {
    const double r = 0.7 * unif(rng) * std::pow(0.85, k);
    gammas.push_back(std::polar(r, 2.0 * std::numbers::pi * unif(rng)));
  }
  return detail::schur_completion(gammas);
}

/// Area-uniform point in the closed disk of the given radius.
inline cx random_disk_point(std::mt19937_64& rng, double radius) {
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  return std::polar(radius * std::sqrt(unif(rng)), 2.0 * std::numbers::pi * unif(rng));
}

/// A generalized Schur pair S = f/B with deg B = kappa. The numerator is kept
/// coprime to B (|f| >= 0.05 at every zero of B) and the zeros separated, so
/// the quotient genuinely has kappa poles.
struct GeneratedPair {
  RationalFunction f;
  BlaschkeProduct B;
  RationalFunction S;
  int kappa = 0;
};

inline GeneratedPair random_schur_pair(std::mt19937_64& rng, int kappa,
                                       int numerator_degree = 3) {
  if (kappa < 0) throw Error("random_schur_pair: negative kappa");
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  for (int attempt = 0; attempt < 256; ++attempt) {
    RationalFunction f = random_schur_function(rng, numerator_degree);
    std::vector<cx> zeros;
    bool ok = true;
    for (int i = 0; i < kappa && ok; ++i) {
      ok = false;
      for (int tries = 0; tries < 64; ++tries) {
        const cx a = std::polar(0.15 + 0.65 * unif(rng), 2.0 * std::numbers::pi * unif(rng));
        bool clear = std::abs(f.eval(a)) >= 0.05;
        for (cx prev : zeros) clear = clear && std::abs(a - prev) >= 0.1;
        if (clear) {
          zeros.push_back(a);
          ok = true;
          break;
        }
      }
    }
    if (!ok) continue;
    BlaschkeProduct B(zeros);
    GeneratedPair out;
    out.S = f / B.to_rational();
    out.f = std::move(f);
    out.B = std::move(B);
    out.kappa = kappa;
    return out;
  }
  throw Error("random_schur_pair: no coprime draw found");
}

/// Interior sample points of modulus <= radius, pairwise separated and clear
/// of the avoid list by `separation`.
inline std::vector<cx> random_interior_points(std::mt19937_64& rng, int count,
                                              const std::vector<cx>& avoid = {},
                                              double radius = 0.85, double separation = 0.05) {
  std::vector<cx> pts;
  pts.reserve(static_cast<std::size_t>(count));
  int guard = 0;
  while (static_cast<int>(pts.size()) < count) {
    if (++guard > 10000) throw Error("random_interior_points: separation unsatisfiable");
    const cx z = random_disk_point(rng, radius);
    bool ok = true;
    for (cx a : avoid) ok = ok && std::abs(z - a) >= separation;
    for (cx p : pts) ok = ok && std::abs(z - p) >= separation;
    if (ok) pts.push_back(z);
  }
  return pts;
}

/// Sample set hugging the poles of S = f/B: one point at distance `dist` from
/// each zero of B (random direction, kept inside the disk), padded to `count`
/// with generic interior points. Near-pole samples expose the full negative
/// count of the kernel.
inline std::vector<cx> near_pole_points(std::mt19937_64& rng, const BlaschkeProduct& B,
                                        int count, double dist = 1e-3) {
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::vector<cx> pts;
  for (cx a : B.zeros()) {
    cx p = a + std::polar(dist, 2.0 * std::numbers::pi * unif(rng));
    if (std::abs(p) >= 1.0 - kBoundaryMargin) p = a - std::polar(dist, 0.0);
    pts.push_back(p);
  }
  if (static_cast<int>(pts.size()) > count)
    throw Error("near_pole_points: count below the zero count");
  std::vector<cx> avoid = B.zeros();
  avoid.insert(avoid.end(), pts.begin(), pts.end());
  const auto pad =
      random_interior_points(rng, count - static_cast<int>(pts.size()), avoid, 0.85, 0.05);
  pts.insert(pts.end(), pad.begin(), pad.end());
  return pts;
}

// ---------------------------------------------------------------------------
// Interior-data instances
// ---------------------------------------------------------------------------

struct PickInstance {
  std::vector<cx> points;
  std::vector<cx> values;
  GeneratedPair truth;
};

/// Pick data sampled from a random pair, redrawn until the Pick matrix has
/// exactly kappa negative eigenvalues and no zero ones (clean certificates
/// make reproducible ground truth).
inline PickInstance random_pick_instance(std::mt19937_64& rng, int kappa, int size) {
  if (size < kappa + 1) throw Error("random_pick_instance: size below kappa + 1");
  for (int attempt = 0; attempt < 64; ++attempt) {
    GeneratedPair pair = random_schur_pair(rng, kappa);
    const std::vector<cx> pts = random_interior_points(rng, size, pair.B.zeros());
    std::vector<cx> vals;
    vals.reserve(pts.size());
    for (cx z : pts) vals.push_back(pair.S.eval(z));
    const Inertia cert = inertia(pick_matrix(pts, vals), 1e-9);
    if (cert.n_neg != kappa || cert.n_zero != 0) continue;
    return PickInstance{pts, std::move(vals), std::move(pair)};
  }
  throw Error("random_pick_instance: certification kept failing");
}

struct CfInstance {
  std::vector<cx> w;
  GeneratedPair truth;
};

/// Taylor jet of S = f/B at the origin (B kept away from 0 so the jet
/// exists), redrawn until the Toeplitz defect has exactly kappa negative and
/// no zero eigenvalues.
inline CfInstance random_cf_instance(std::mt19937_64& rng, int kappa, int size) {
  if (size < kappa + 1) throw Error("random_cf_instance: size below kappa + 1");
  for (int attempt = 0; attempt < 64; ++attempt) {
    GeneratedPair pair = random_schur_pair(rng, kappa);
    const std::vector<cx> w = pair.S.taylor_at_zero(size);
    const Inertia cert = inertia(HermitianMatrix(cf_matrices(w).defect), 1e-9);
    if (cert.n_neg != kappa || cert.n_zero != 0) continue;
    return CfInstance{w, std::move(pair)};
  }
  throw Error("random_cf_instance: certification kept failing");
}

struct SarasonInstance {
  std::vector<cx> symbol_zeros;
  Eigen::MatrixXcd commutant;
  GeneratedPair truth;
};

/// Commutant candidate R = f(T) B(T)^{-1} on a model space with `size`
/// distinct symbol zeros; deg B = kappa zeros stay clear of the symbol zeros
/// so the targets r(beta_i) are finite. Redraws until the Sarason defect
/// certifies exactly kappa.
inline SarasonInstance random_sarason_instance(std::mt19937_64& rng, int kappa, int size) {
  if (size < kappa + 1) throw Error("random_sarason_instance: size below kappa + 1");
  for (int attempt = 0; attempt < 64; ++attempt) {
    const std::vector<cx> czeros = random_interior_points(rng, size, {}, 0.8, 0.1);
    GeneratedPair pair = random_schur_pair(rng, kappa);
    bool clear = true;
    for (cx a : pair.B.zeros())
      for (cx b : czeros) clear = clear && std::abs(a - b) >= 0.1;
    if (!clear) continue;
    const ModelSpace M{BlaschkeProduct(czeros)};
    Eigen::MatrixXcd R = phi_of_T(pair.f, M);
    if (kappa > 0) {
      const Eigen::MatrixXcd BT = phi_of_T(pair.B.to_rational(), M);
      R = R * BT.inverse();
    }
    const CommutantCandidate cand(R, M);
    if (cand.commutation_residual > 1e-10) continue;
    const Inertia cert = sarason_defect(cand, M);
    if (cert.n_neg != kappa || cert.n_zero != 0) continue;
    return SarasonInstance{czeros, std::move(R), std::move(pair)};
  }
  throw Error("random_sarason_instance: certification kept failing");
}

struct NudelmanInstance {
  Eigen::MatrixXcd A;
  Eigen::VectorXcd b;
  Eigen::VectorXcd c;
  GeneratedPair truth;
};

/// Tangential data unitarily equivalent to a Pick instance: A = U diag(z) U*,
/// c = U 1, b = U w. The Stein solution is then the rotated Pick matrix, so
/// the inertia certificate transfers verbatim.
inline NudelmanInstance random_nudelman_instance(std::mt19937_64& rng, int kappa, int size) {
  PickInstance base = random_pick_instance(rng, kappa, size);
  const Eigen::Index n = static_cast<Eigen::Index>(base.points.size());
  Eigen::MatrixXcd G(n, n);
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) G(i, j) = cx(gauss(rng), gauss(rng));
  const Eigen::HouseholderQR<Eigen::MatrixXcd> qr(G);
  const Eigen::MatrixXcd U = qr.householderQ();
  Eigen::VectorXcd z(n), w(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    z(i) = base.points[static_cast<std::size_t>(i)];
    w(i) = base.values[static_cast<std::size_t>(i)];
  }
  NudelmanInstance out;
  out.A = U * z.asDiagonal() * U.adjoint();
  out.b = U * w;
  out.c = U * Eigen::VectorXcd::Ones(n);
  out.truth = std::move(base.truth);
  return out;
}

// ---------------------------------------------------------------------------
// Boundary-data instances
// ---------------------------------------------------------------------------

struct DiskBoundaryInstance {
  Eigen::VectorXcd b;
  Eigen::VectorXcd c;
  GeneratedPair truth;
};

/// Circle samples (b, c) = (B, f) of a random pair: the boundary form built
/// from them carries negativity deg B. The pair's kernel certificate is
/// re-checked on a near-pole sample set before returning.
inline DiskBoundaryInstance random_disk_instance(std::mt19937_64& rng, int kappa,
                                                 const CircleGrid& grid) {
  for (int attempt = 0; attempt < 64; ++attempt) {
    GeneratedPair pair = random_schur_pair(rng, kappa);
    const std::vector<cx> probe = near_pole_points(rng, pair.B, kappa + 2);
    const Inertia cert = inertia(kernel_matrix_schur(pair.S, probe), 1e-9);
    if (cert.n_neg != kappa) continue;
    Eigen::VectorXcd b(grid.size()), c(grid.size());
    for (int m = 0; m < grid.size(); ++m) {
      b(m) = blaschke_eval(pair.B, grid.node(m));
      c(m) = pair.f.eval(grid.node(m));
    }
    return DiskBoundaryInstance{std::move(b), std::move(c), std::move(pair)};
  }
  throw Error("random_disk_instance: certification kept failing");
}

/// Real rational boundary data for the half-line kinds. Poles come in
/// conjugate pairs at least 0.35 off the axis, so nodal sampling stays smooth
/// and the upper-half-plane pole count is the intended certificate.
struct LineInstance {
  std::vector<std::pair<double, double>> intervals;
  int panels_per_interval = 0;
  Eigen::VectorXcd values;  ///< nodal samples of f0 (or g0 for the dual kind)
  RationalFunction f0;      ///< real rational generator
  int kappa = 0;
};

inline LineInstance random_line_instance(std::mt19937_64& rng, int kappa, int panels) {
  const std::vector<std::pair<double, double>> intervals = {{-1.0, 1.0}};
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  for (int attempt = 0; attempt < 64; ++attempt) {
    // Increasing base part: a t + b plus off-interval simple poles with
    // positive residue orientation (each term c/(p - t), c > 0, is increasing
    // between the poles).
    const double slope = 0.5 + unif(rng);
    const double level = unif(rng) - 0.5;
    RationalFunction f0(Polynomial(std::vector<cx>{cx(level), cx(slope)}),
                        Polynomial(std::vector<cx>{cx(1.0)}));
    for (int j = 0; j < 2; ++j) {
      const double side = unif(rng) < 0.5 ? -1.0 : 1.0;
      const double p = side * (1.6 + 1.4 * unif(rng));
      const double cpos = 0.2 + 0.6 * unif(rng);
      f0 = f0 + RationalFunction(Polynomial(std::vector<cx>{cx(cpos)}),
                                 Polynomial(std::vector<cx>{cx(p), cx(-1.0)}));
    }
    // kappa conjugate pole pairs off the axis: real quadratic denominators
    // (t - p)(t - conj p) with real linear numerators.
    for (int j = 0; j < kappa; ++j) {
      const double px = 2.4 * unif(rng) - 1.2;
      const double py = 0.35 + 0.9 * unif(rng);
      const double a1 = 2.0 * unif(rng) - 1.0;
      const double b1 = 2.0 * unif(rng) - 1.0;
      f0 = f0 + RationalFunction(
                    Polynomial(std::vector<cx>{cx(b1), cx(a1)}),
                    Polynomial(std::vector<cx>{cx(px * px + py * py), cx(-2.0 * px), cx(1.0)}));
    }
    const IntervalSet set(intervals, panels);
    Eigen::VectorXcd values(set.node_count());
    for (int k = 0; k < set.node_count(); ++k) values(k) = f0.eval(cx(set.node(k)));
    const BoundaryDataLine data(set, values);
    if (!data.is_real) continue;
    try {
      const LineFormResult form = loewner_real_form(set, data, hat_basis(set));
      if (form.inertia.n_neg != kappa) continue;
    } catch (const TruncationUnstable&) {
      continue;
    }
    return LineInstance{intervals, panels, std::move(values), std::move(f0), kappa};
  }
  throw Error("random_line_instance: certification kept failing");
}

/// Nonnegative real data for the dual half-line form: g0 = q(t)^2 + offset
/// with a random real quadratic q. Certificate count is always zero.
inline LineInstance random_dual_instance(std::mt19937_64& rng, int panels) {
  const std::vector<std::pair<double, double>> intervals = {{-1.0, 1.0}};
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  Polynomial q(std::vector<cx>{cx(2.0 * unif(rng) - 1.0), cx(2.0 * unif(rng) - 1.0),
                               cx(2.0 * unif(rng) - 1.0)});
  RationalFunction g0(q * q + Polynomial(std::vector<cx>{cx(0.1 + 0.4 * unif(rng))}),
                      Polynomial(std::vector<cx>{cx(1.0)}));
  const IntervalSet set(intervals, panels);
  Eigen::VectorXcd values(set.node_count());
  for (int k = 0; k < set.node_count(); ++k) values(k) = g0.eval(cx(set.node(k)));
  return LineInstance{intervals, panels, std::move(values), std::move(g0), 0};
}

struct HankelInstance {
  RationalFunction S;  ///< rational symbol to sample on the circle
  int window = 0;      ///< Hankel matrix size to test
  GeneratedPair truth;
};

/// Rational symbol S = f/B whose Hankel matrix has rank deg B; the window is
/// the requested size (at least deg B + 2 so the rank gap is visible).
inline HankelInstance random_hankel_instance(std::mt19937_64& rng, int kappa, int window) {
  if (window < kappa + 2) throw Error("random_hankel_instance: window below kappa + 2");
  GeneratedPair pair = random_schur_pair(rng, kappa);
  HankelInstance out;
  out.S = pair.S;
  out.window = window;
  out.truth = std::move(pair);
  return out;
}

}  // namespace kappa
