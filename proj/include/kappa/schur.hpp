#pragma once

#include <cmath>
#include <complex>
#include <functional>
#include <limits>
#include <numbers>
#include <vector>

#include "kappa/blaschke.hpp"
#include "kappa/errors.hpp"
#include "kappa/rational.hpp"

/// Core classification machinery for rational generalized Schur functions:
/// grid-based membership test for the classical Schur class, factorization of
/// a rational S into a Schur-class numerator over a finite Blaschke product,
/// and the fractional-linear correspondence with Nevanlinna functions on the
/// upper half-plane.

namespace kappa {

inline constexpr int kBoundaryGridDefault = 4096;  ///< circle points for sup estimates

/// Result of the (approximate) classical-Schur-class membership test.
struct SchurCheck {
  bool is_schur0 = false;
  double sup_estimate = 0.0;
};

/// Certificate pair: S = f / B with f in the classical Schur class and B a
/// finite Blaschke product whose degree is the negative index of S.
struct SchurPair {
  RationalFunction f;
  BlaschkeProduct B;
  int kappa = 0;
};

/// Grid test for membership in the classical Schur class: no poles strictly
/// inside the disk (denominator roots of modulus < 1 - tol raise
/// InteriorPole) and max |f| over grid_n boundary points at most 1 + tol.
/// Approximate by design; grid_n is the resolution knob.
inline SchurCheck schur_class_check(const RationalFunction& f, double tol = 1e-9,
                                    int grid_n = kBoundaryGridDefault) {
  for (cx p : f.poles()) {
    if (std::abs(p) < 1.0 - tol)
      throw InteriorPole("denominator root of modulus " + std::to_string(std::abs(p)) +
                         " inside the unit disk");
  }
  double sup = 0.0;
  for (int k = 0; k < grid_n; ++k) {
    const double th = 2.0 * std::numbers::pi * k / grid_n;
    const cx u = std::polar(1.0, th);
    const cx d = f.den().eval(u);
    const cx n = f.num().eval(u);
    if (std::abs(d) == 0.0) {
      sup = std::numeric_limits<double>::infinity();
      break;
    }
    sup = std::max(sup, std::abs(n / d));
  }
  return {sup <= 1.0 + tol && std::isfinite(sup), sup};
}

/// Factor a rational S as f / B: B collects the denominator roots of S inside
/// the disk (with multiplicity), f = S * B is pole-free on the closed disk.
/// Roots are classified interior iff modulus < 1 - tol; moduli within tol of
/// 1 raise BoundaryPole. B is normalized so its first nonzero Taylor
/// coefficient at 0 is positive real, which pins down the otherwise-free
/// unimodular constant. Throws NotGeneralizedSchur if f fails the Schur-class
/// grid test.
inline SchurPair krein_langer_factorize(const RationalFunction& S, double tol = 1e-9,
                                        int grid_n = kBoundaryGridDefault) {
  std::vector<cx> interior;
  for (cx p : S.poles()) {
    const double m = std::abs(p);
    if (std::abs(m - 1.0) <= tol)
      throw BoundaryPole("pole of modulus " + std::to_string(m) + " within tolerance of |z| = 1");
    if (m < 1.0) interior.push_back(p);
  }
  BlaschkeProduct B = BlaschkeProduct(interior).normalized();
  RationalFunction f = S * B.to_rational();
  SchurCheck chk = schur_class_check(f, tol, grid_n);
  if (!chk.is_schur0)
    throw NotGeneralizedSchur("numerator after factorization has sup estimate " +
                              std::to_string(chk.sup_estimate));
  return {std::move(f), std::move(B), static_cast<int>(interior.size())};
}

/// Pointwise fractional-linear map S -> i(1 + S)/(1 - S). Throws
/// DegenerateValue when 1 - S is numerically zero.
inline cx cayley_value(cx S) {
  const cx den = cx(1.0) - S;
  if (std::abs(den) < 1e-14) throw DegenerateValue("1 - S vanishes at the evaluation point");
  return cx(0.0, 1.0) * (cx(1.0) + S) / den;
}

/// Callable version of the same map for half-plane functions S: z in C_+
/// maps to i(1 + S(z))/(1 - S(z)).
inline std::function<cx(cx)> cayley_schur_to_nevanlinna(std::function<cx(cx)> S) {
  return [S = std::move(S)](cx z) { return cayley_value(S(z)); };
}

/// Lift a disk function S0 to the half-plane: S(z) = S0((z - i)/(z + i)).
inline RationalFunction lift_disk_to_halfplane(const RationalFunction& S0) {
  return S0.compose_mobius(cx(1.0), cx(0.0, -1.0), cx(1.0), cx(0.0, 1.0));
}

/// Rational form of the correspondence: given S0 on the disk, return
/// f(z) = i(1 + S(z))/(1 - S(z)) with S(z) = S0((z - i)/(z + i)), reduced.
inline RationalFunction cayley_schur_to_nevanlinna(const RationalFunction& S0) {
  RationalFunction S = lift_disk_to_halfplane(S0);
  const RationalFunction one(cx(1.0));
  RationalFunction den = one - S;
  if (den.is_zero()) throw DegenerateValue("S is identically 1");
  return cx(0.0, 1.0) * ((one + S) / den);
}

/// Inverse pointwise map f -> (f - i)/(f + i) (half-plane to disk values).
inline cx cayley_inverse_value(cx f) {
  const cx den = f + cx(0.0, 1.0);
  if (std::abs(den) < 1e-14) throw DegenerateValue("f + i vanishes at the evaluation point");
  return (f - cx(0.0, 1.0)) / den;
}

}  // namespace kappa
