#pragma once

#include <map>
#include <string>

#include "flataff/polynomial.hpp"

namespace flataff {

enum class Sign { positive, negative, zero, unknown };

/// Element of the fraction field Q(params): numerator / denominator in
/// canonical form (gcd removed, denominator monic in graded-lex order),
/// so operator== is structural equality.
class Scalar {
public:
  Scalar() : num_(), den_(1) {}
  Scalar(int c) : num_(c), den_(1) {}
  Scalar(const Rational& c) : num_(c), den_(1) {}
  Scalar(Polynomial num) : num_(std::move(num)), den_(1) {}
  Scalar(Polynomial num, Polynomial den) : num_(std::move(num)), den_(std::move(den)) {
    if (den_.is_zero()) throw DivisionByZero("scalar with zero denominator");
    normalize();
  }

  static Scalar param(const std::string& name) {
    if (!is_declared_param(name)) throw MissingParam("parameter '" + name + "' is not declared");
    return Scalar(Polynomial::variable(name));
  }

  const Polynomial& num() const { return num_; }
  const Polynomial& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_one() const { return num_ == Polynomial(1) && den_ == Polynomial(1); }
  bool is_rational_constant() const { return num_.is_constant() && den_ == Polynomial(1); }
  Rational rational_value() const {
    if (!is_rational_constant()) throw Error("scalar is not a rational constant");
    return num_.constant_value();
  }
  /// Combined degree used by pivot selection in exact elimination.
  int complexity() const { return (num_.is_zero() ? 0 : num_.degree()) + den_.degree(); }

  // Sums and products keep the classical coprime-reduction scheme: gcds are
  // only ever taken of small related pieces, never of the full cross
  // products, which keeps exact elimination tractable.
  friend Scalar operator+(const Scalar& a, const Scalar& b) { return add_impl(a, b, false); }
  friend Scalar operator-(const Scalar& a, const Scalar& b) { return add_impl(a, b, true); }
  friend Scalar operator*(const Scalar& a, const Scalar& b) {
    if (a.is_zero() || b.is_zero()) return Scalar();
    if (a.is_rational_constant() && b.is_rational_constant())
      return Scalar(a.num_.constant_value() * b.num_.constant_value());
    const Polynomial g1 = Polynomial::gcd(a.num_, b.den_);
    const Polynomial g2 = Polynomial::gcd(b.num_, a.den_);
    return reduced(a.num_.divide_exact(g1) * b.num_.divide_exact(g2),
                   a.den_.divide_exact(g2) * b.den_.divide_exact(g1));
  }
  friend Scalar operator/(const Scalar& a, const Scalar& b) {
    if (b.is_zero()) throw DivisionByZero("scalar division by zero");
    if (a.is_zero()) return Scalar();
    if (a.is_rational_constant() && b.is_rational_constant())
      return Scalar(a.num_.constant_value() / b.num_.constant_value());
    const Polynomial g1 = Polynomial::gcd(a.num_, b.num_);
    const Polynomial g2 = Polynomial::gcd(b.den_, a.den_);
    return reduced(a.num_.divide_exact(g1) * b.den_.divide_exact(g2),
                   a.den_.divide_exact(g2) * b.num_.divide_exact(g1));
  }
  friend Scalar operator-(const Scalar& a) { return reduced(-a.num_, a.den_); }
  Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
  Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
  Scalar& operator*=(const Scalar& o) { return *this = *this * o; }
  Scalar& operator/=(const Scalar& o) { return *this = *this / o; }

  bool operator==(const Scalar& o) const { return num_ == o.num_ && den_ == o.den_; }
  bool operator!=(const Scalar& o) const { return !(*this == o); }

  Scalar pow(int e) const {
    if (e == 0) return Scalar(1);
    if (e < 0) return Scalar(1) / pow(-e);
    // powers of a reduced fraction stay reduced
    return reduced(num_.pow(e), den_.pow(e));
  }

  Rational eval(const std::map<std::string, Rational>& assignment) const {
    const Rational d = den_.eval(assignment);
    if (d == 0) throw DivisionByZeroAtPoint("denominator vanishes at the given assignment");
    return num_.eval(assignment) / d;
  }

  double eval_double(const std::map<std::string, double>& assignment) const {
    const double d = den_.eval_double(assignment);
    if (d == 0.0) throw DivisionByZeroAtPoint("denominator vanishes at the given assignment");
    return num_.eval_double(assignment) / d;
  }

  /// Sign deducible from parameter positivity flags alone. A polynomial is
  /// recognized as positive when every coefficient is positive and every
  /// variable occurring carries the positivity flag (sum of positive terms).
  Sign sign() const {
    const Sign sn = polynomial_sign(num_);
    const Sign sd = polynomial_sign(den_);
    if (sn == Sign::zero) return Sign::zero;
    if (sn == Sign::unknown || sd == Sign::unknown) return Sign::unknown;
    return sn == sd ? Sign::positive : Sign::negative;
  }

  std::string to_string() const {
    if (den_ == Polynomial(1)) return num_.to_string();
    const bool simple_num = num_.terms().size() <= 1;
    const bool simple_den = den_.terms().size() == 1 && den_.leading_monomial().size() <= 1;
    std::string n = simple_num ? num_.to_string() : "(" + num_.to_string() + ")";
    std::string d = simple_den ? den_.to_string() : "(" + den_.to_string() + ")";
    return n + "/" + d;
  }

private:
  /// Builds from an already coprime numerator/denominator pair; only the
  /// monic normalization of the denominator remains to be done.
  static Scalar reduced(Polynomial num, Polynomial den) {
    Scalar s;
    if (num.is_zero()) return s;
    const Rational lead = den.leading_coefficient();
    if (lead != 1) {
      const Rational inv = Rational(1) / lead;
      num.scale(inv);
      den.scale(inv);
    }
    s.num_ = std::move(num);
    s.den_ = std::move(den);
    return s;
  }

  static Scalar add_impl(const Scalar& a, const Scalar& b, bool negate) {
    if (a.is_rational_constant() && b.is_rational_constant())
      return Scalar(negate ? a.num_.constant_value() - b.num_.constant_value()
                           : a.num_.constant_value() + b.num_.constant_value());
    const Polynomial& n2 = b.num_;
    if (a.den_ == b.den_) {
      Polynomial t = negate ? a.num_ - n2 : a.num_ + n2;
      if (t.is_zero()) return Scalar();
      const Polynomial g2 = Polynomial::gcd(t, a.den_);
      return reduced(t.divide_exact(g2), a.den_.divide_exact(g2));
    }
    const Polynomial g = Polynomial::gcd(a.den_, b.den_);
    const Polynomial d1r = a.den_.divide_exact(g);
    const Polynomial d2r = b.den_.divide_exact(g);
    Polynomial t = negate ? a.num_ * d2r - n2 * d1r : a.num_ * d2r + n2 * d1r;
    if (t.is_zero()) return Scalar();
    // gcd(t, d1*d2r) = gcd(t, g) since t is coprime to the reduced parts
    const Polynomial g2 = Polynomial::gcd(t, g);
    return reduced(t.divide_exact(g2), d1r * b.den_.divide_exact(g2));
  }

  static Sign polynomial_sign(const Polynomial& p) {
    if (p.is_zero()) return Sign::zero;
    bool all_pos = true, all_neg = true;
    for (const auto& [m, c] : p.terms()) {
      for (const auto& [name, e] : m)
        if (!param_is_positive(name)) return Sign::unknown;
      all_pos = all_pos && c > 0;
      all_neg = all_neg && c < 0;
    }
    if (all_pos) return Sign::positive;
    if (all_neg) return Sign::negative;
    return Sign::unknown;
  }

  void normalize() {
    if (num_.is_zero()) {
      den_ = Polynomial(1);
      return;
    }
    if (!den_.is_constant() || !num_.is_constant()) {
      const Polynomial g = Polynomial::gcd(num_, den_);
      if (g != Polynomial(1)) {
        num_ = num_.divide_exact(g);
        den_ = den_.divide_exact(g);
      }
    }
    const Rational lead = den_.leading_coefficient();
    if (lead != 1) {
      const Rational inv = Rational(1) / lead;
      num_.scale(inv);
      den_.scale(inv);
    }
  }

  Polynomial num_, den_;
};

inline Scalar operator*(const Rational& c, const Scalar& s) { return Scalar(c) * s; }
inline Scalar operator*(const Scalar& s, const Rational& c) { return s * Scalar(c); }

} // namespace flataff
