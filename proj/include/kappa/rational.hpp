#pragma once

#include <complex>
#include <vector>

#include "kappa/errors.hpp"
#include "kappa/polynomial.hpp"

/// Rational functions p/q in reduced normal form: common polynomial factors
/// are cancelled (GCD at tolerance) and the denominator is made monic, so the
/// representation is unique and pole/zero queries are meaningful.

namespace kappa {

class RationalFunction {
 public:
  RationalFunction() : num_(), den_{cx(1.0)} {}
  explicit RationalFunction(cx constant) : num_(constant), den_{cx(1.0)} {}
  RationalFunction(Polynomial num, Polynomial den, double gcd_tol = kGcdTol) {
    if (den.is_zero()) throw Error("RationalFunction: zero denominator");
    if (num.is_zero()) {
      num_ = Polynomial();
      den_ = Polynomial{cx(1.0)};
      return;
    }
    Polynomial g = gcd(num, den, gcd_tol);
    if (g.degree() > 0) {
      num = num.divmod(g, gcd_tol).first;
      den = den.divmod(g, gcd_tol).first;
    }
    // monic denominator; fold the leading coefficient into the numerator
    cx lead = den.leading();
    num_ = (cx(1.0) / lead) * num;
    den_ = (cx(1.0) / lead) * den;
  }

  static RationalFunction from_poly(Polynomial p) {
    RationalFunction r;
    r.num_ = std::move(p);
    r.den_ = Polynomial{cx(1.0)};
    return r;
  }

  const Polynomial& num() const { return num_; }
  const Polynomial& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_constant() const { return num_.degree() <= 0 && den_.degree() == 0; }

  /// deg max(p, q) — the degree of the rational function as a map.
  int degree() const { return std::max(num_.degree(), den_.degree()); }

  cx eval(cx z) const {
    cx d = den_.eval(z);
    if (d == cx(0.0)) throw PoleHit("rational evaluation at a pole");
    return num_.eval(z) / d;
  }

  std::vector<cx> zeros() const { return num_.roots(); }
  std::vector<cx> poles() const { return den_.degree() > 0 ? den_.roots() : std::vector<cx>{}; }

  friend RationalFunction operator+(const RationalFunction& a, const RationalFunction& b) {
    return RationalFunction(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
  }
  friend RationalFunction operator-(const RationalFunction& a, const RationalFunction& b) {
    return RationalFunction(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
  }
  friend RationalFunction operator-(const RationalFunction& a) {
    RationalFunction r = a;
    r.num_ = -r.num_;
    return r;
  }
  friend RationalFunction operator*(const RationalFunction& a, const RationalFunction& b) {
    return RationalFunction(a.num_ * b.num_, a.den_ * b.den_);
  }
  friend RationalFunction operator*(cx s, const RationalFunction& a) {
    RationalFunction r = a;
    r.num_ = s * r.num_;
    return r;
  }
  friend RationalFunction operator/(const RationalFunction& a, const RationalFunction& b) {
    if (b.is_zero()) throw Error("RationalFunction: division by zero function");
    return RationalFunction(a.num_ * b.den_, a.den_ * b.num_);
  }

  /// Composition with a Möbius map m(z) = (az + b)/(cz + d): returns (p∘m)/(q∘m)
  /// cleared of the (cz+d) powers, again in reduced form.
  RationalFunction compose_mobius(cx a, cx b, cx c, cx d) const {
    const Polynomial up{b, a};    // a z + b, ascending
    const Polynomial down{d, c};  // c z + d
    const int n = std::max(num_.degree(), den_.degree());
    auto lift = [&](const Polynomial& p) {
      // sum_k p_k (az+b)^k (cz+d)^(n-k)
      Polynomial acc;
      Polynomial up_pow{cx(1.0)};
      std::vector<Polynomial> down_pows(static_cast<std::size_t>(n) + 1);
      down_pows[0] = Polynomial{cx(1.0)};
      for (int k = 1; k <= n; ++k)
        down_pows[static_cast<std::size_t>(k)] = down_pows[static_cast<std::size_t>(k - 1)] * down;
      for (int k = 0; k <= n; ++k) {
        if (p.coeff(k) != cx(0.0))
          acc = acc + p.coeff(k) * up_pow * down_pows[static_cast<std::size_t>(n - k)];
        up_pow = up_pow * up;
      }
      return acc;
    };
    return RationalFunction(lift(num_), lift(den_));
  }

  /// First n Taylor coefficients at z = 0 (requires q(0) != 0): long division
  /// of the power series.
  std::vector<cx> taylor_at_zero(int n) const {
    if (den_.coeff(0) == cx(0.0)) throw PoleHit("Taylor expansion at a pole of the function");
    std::vector<cx> w(static_cast<std::size_t>(n), cx(0.0));
    const cx q0 = den_.coeff(0);
    for (int k = 0; k < n; ++k) {
      cx s = num_.coeff(k);
      for (int j = 1; j <= k; ++j) s -= den_.coeff(j) * w[static_cast<std::size_t>(k - j)];
      w[static_cast<std::size_t>(k)] = s / q0;
    }
    return w;
  }

 private:
  Polynomial num_, den_;
};

}  // namespace kappa
