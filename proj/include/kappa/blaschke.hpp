#pragma once

#include <cmath>
#include <complex>
#include <vector>

#include "kappa/errors.hpp"
#include "kappa/rational.hpp"

/// Finite Blaschke products on the unit disk and the upper half-plane:
///   disk:        B(z) = c * prod_j (z - a_j) / (1 - conj(a_j) z),  |a_j| < 1
///   half-plane:  B(z) = c * prod_j (z - a_j) / (z - conj(a_j)),    Im a_j > 0
/// with |c| = 1. Stored as the zero list plus the unimodular constant and a
/// domain tag; evaluated factor-by-factor for stability near the boundary.

namespace kappa {

inline constexpr double kBlaschkePoleTol = 1e-14;  ///< factor-denominator guard in blaschke_eval

enum class Domain { Disk, HalfPlane };

class BlaschkeProduct {
 public:
  BlaschkeProduct() = default;
  explicit BlaschkeProduct(std::vector<cx> zeros, cx constant = cx(1.0),
                           Domain domain = Domain::Disk)
      : zeros_(std::move(zeros)), c_(constant), domain_(domain) {
    for (cx a : zeros_) {
      if (domain_ == Domain::Disk && std::abs(a) >= 1.0)
        throw Error("BlaschkeProduct: zero outside the open unit disk");
      if (domain_ == Domain::HalfPlane && a.imag() <= 0.0)
        throw Error("BlaschkeProduct: zero outside the open upper half-plane");
    }
    const double cm = std::abs(c_);
    if (std::abs(cm - 1.0) > 1e-12) throw Error("BlaschkeProduct: constant is not unimodular");
    c_ /= cm;  // snap exactly onto the circle
  }

  const std::vector<cx>& zeros() const { return zeros_; }
  cx constant() const { return c_; }
  Domain domain() const { return domain_; }
  int degree() const { return static_cast<int>(zeros_.size()); }

  /// Disk only: rotate the unimodular constant so the first nonzero Taylor
  /// coefficient of B at 0 is positive real. With m zeros at the origin that
  /// coefficient is c * prod_{a_j != 0} (-a_j).
  BlaschkeProduct normalized() const {
    if (domain_ != Domain::Disk)
      throw Error("BlaschkeProduct::normalized: defined for the disk domain only");
    cx lead = c_;
    for (cx a : zeros_)
      if (a != cx(0.0)) lead *= -a;
    BlaschkeProduct out = *this;
    if (lead != cx(0.0)) out.c_ *= std::abs(lead) / lead;
    return out;
  }

  RationalFunction to_rational() const {
    Polynomial num(c_);
    Polynomial den{cx(1.0)};
    for (cx a : zeros_) {
      num = num * Polynomial{-a, cx(1.0)};
      if (domain_ == Domain::Disk)
        den = den * Polynomial{cx(1.0), -std::conj(a)};
      else
        den = den * Polynomial{-std::conj(a), cx(1.0)};
    }
    return RationalFunction(std::move(num), std::move(den));
  }

 private:
  std::vector<cx> zeros_;
  cx c_{1.0};
  Domain domain_ = Domain::Disk;
};

/// Evaluate B(z) one factor at a time. Throws PoleHit if any factor
/// denominator has modulus below kBlaschkePoleTol (z numerically on the
/// reflected pole 1/conj(a_j), resp. conj(a_j)).
inline cx blaschke_eval(const BlaschkeProduct& B, cx z) {
  cx acc = B.constant();
  for (cx a : B.zeros()) {
    const cx den = (B.domain() == Domain::Disk) ? cx(1.0) - std::conj(a) * z : z - std::conj(a);
    if (std::abs(den) < kBlaschkePoleTol)
      throw PoleHit("Blaschke factor denominator vanishes at the evaluation point");
    acc *= (z - a) / den;
  }
  return acc;
}

}  // namespace kappa
