#pragma once

#include <cmath>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "flataff/affine_map.hpp"
#include "flataff/scalar.hpp"

namespace flataff {

/// Key of one exponential-polynomial term x^powers * e^<weight, x>.
struct ExpKey {
  std::vector<int> powers;       // componentwise >= 0
  std::vector<Rational> weight;  // rational frequency vector

  bool operator<(const ExpKey& o) const {
    if (weight != o.weight) return weight < o.weight;
    return powers < o.powers;
  }
  bool operator==(const ExpKey& o) const { return powers == o.powers && weight == o.weight; }

  bool weight_is_zero() const {
    for (const Rational& w : weight)
      if (w != 0) return false;
    return true;
  }
  int poly_degree() const {
    int d = 0;
    for (int e : powers) d += e;
    return d;
  }
};

inline std::string coordinate_name(int dim, int i) {
  if (dim <= 2) return i == 0 ? "x" : "y";
  return "x" + std::to_string(i + 1);
}

/// Finite sum of terms coef * x^alpha * e^<lambda, x>: the function algebra
/// carrying Christoffel symbols and vector-field components. Canonical form
/// stores no zero coefficients and orders keys, so equality is structural.
class ExpPoly {
public:
  explicit ExpPoly(int dim = 2) : dim_(dim) {
    if (dim < 1) throw DimensionMismatch("exppoly dimension must be positive");
  }

  static ExpPoly constant(int dim, Scalar c) {
    ExpPoly f(dim);
    f.add_term(ExpKey{std::vector<int>(dim, 0), std::vector<Rational>(dim, Rational(0))},
               std::move(c));
    return f;
  }
  static ExpPoly coordinate(int dim, int i) {
    if (i < 0 || i >= dim) throw IndexOutOfRange("coordinate index");
    ExpKey k{std::vector<int>(dim, 0), std::vector<Rational>(dim, Rational(0))};
    k.powers[i] = 1;
    ExpPoly f(dim);
    f.add_term(std::move(k), Scalar(1));
    return f;
  }
  static ExpPoly term(int dim, std::vector<int> powers, std::vector<Rational> weight, Scalar c) {
    if (static_cast<int>(powers.size()) != dim || static_cast<int>(weight.size()) != dim)
      throw DimensionMismatch("term key size");
    for (int e : powers)
      if (e < 0) throw Error("negative coordinate power");
    ExpPoly f(dim);
    f.add_term(ExpKey{std::move(powers), std::move(weight)}, std::move(c));
    return f;
  }

  int dim() const { return dim_; }
  const std::map<ExpKey, Scalar>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  bool operator==(const ExpPoly& o) const { return dim_ == o.dim_ && terms_ == o.terms_; }
  bool operator!=(const ExpPoly& o) const { return !(*this == o); }

  bool is_polynomial() const {
    for (const auto& [k, c] : terms_)
      if (!k.weight_is_zero()) return false;
    return true;
  }
  bool is_constant() const {
    if (terms_.empty()) return true;
    return terms_.size() == 1 && terms_.begin()->first.poly_degree() == 0 &&
           terms_.begin()->first.weight_is_zero();
  }
  Scalar constant_value() const {
    if (terms_.empty()) return Scalar();
    if (!is_constant()) throw Error("exppoly is not constant");
    return terms_.begin()->second;
  }
  int poly_degree() const {
    int d = 0;
    for (const auto& [k, c] : terms_) d = std::max(d, k.poly_degree());
    return d;
  }

  friend ExpPoly operator+(ExpPoly a, const ExpPoly& b) {
    a.check_same_dim(b);
    for (const auto& [k, c] : b.terms_) a.add_term(k, c);
    return a;
  }
  friend ExpPoly operator-(ExpPoly a, const ExpPoly& b) {
    a.check_same_dim(b);
    for (const auto& [k, c] : b.terms_) a.add_term(k, -c);
    return a;
  }
  friend ExpPoly operator-(const ExpPoly& a) {
    ExpPoly r(a.dim_);
    for (const auto& [k, c] : a.terms_) r.terms_.emplace(k, -c);
    return r;
  }
  ExpPoly& operator+=(const ExpPoly& o) { return *this = *this + o; }
  ExpPoly& operator-=(const ExpPoly& o) { return *this = *this - o; }

  /// Product merges powers and weights additively per term pair.
  friend ExpPoly operator*(const ExpPoly& a, const ExpPoly& b) {
    a.check_same_dim(b);
    ExpPoly r(a.dim_);
    for (const auto& [ka, ca] : a.terms_)
      for (const auto& [kb, cb] : b.terms_) {
        ExpKey k = ka;
        for (int i = 0; i < a.dim_; ++i) {
          k.powers[i] += kb.powers[i];
          k.weight[i] += kb.weight[i];
        }
        r.add_term(std::move(k), ca * cb);
      }
    return r;
  }
  ExpPoly& operator*=(const ExpPoly& o) { return *this = *this * o; }

  friend ExpPoly operator*(const Scalar& c, const ExpPoly& f) {
    ExpPoly r(f.dim_);
    if (c.is_zero()) return r;
    for (const auto& [k, coef] : f.terms_) r.terms_.emplace(k, c * coef);
    return r;
  }
  friend ExpPoly operator*(const ExpPoly& f, const Scalar& c) { return c * f; }

  ExpPoly pow(int e) const {
    if (e < 0) throw Error("negative exppoly power");
    ExpPoly r = constant(dim_, Scalar(1));
    ExpPoly base = *this;
    while (e > 0) {
      if (e & 1) r *= base;
      base *= base;
      e >>= 1;
    }
    return r;
  }

  /// Exact partial derivative: x^a e^<l,x> -> a_i x^(a-e_i) e^<l,x> + l_i x^a e^<l,x>.
  ExpPoly diff(int i) const {
    if (i < 0 || i >= dim_) throw IndexOutOfRange("derivative index");
    ExpPoly r(dim_);
    for (const auto& [k, c] : terms_) {
      if (k.powers[i] > 0) {
        ExpKey down = k;
        down.powers[i] -= 1;
        r.add_term(std::move(down), c * Rational(k.powers[i]));
      }
      if (k.weight[i] != 0) r.add_term(k, c * k.weight[i]);
    }
    return r;
  }

  /// f ∘ T for T(p) = Ap + b. Terms with nonzero weight require rational A, b
  /// and <weight, b> = 0; otherwise e^<weight, b> leaves the scalar field.
  ExpPoly compose_affine(const AffineMap& t) const {
    if (static_cast<int>(t.dim()) != dim_)
      throw DimensionMismatch("compose_affine dimension mismatch");
    const bool has_weights = !is_polynomial();
    if (has_weights && !t.is_rational())
      throw WeightParameterConflict(
          "exponential weights cannot be composed with a parametric affine map");

    const auto& a = t.linear_part();
    const auto& b = t.translation_part();
    ExpPoly result(dim_);
    // affine images of the coordinates, reused across terms
    std::vector<ExpPoly> coord_images;
    coord_images.reserve(dim_);
    for (int i = 0; i < dim_; ++i) {
      ExpPoly ci = constant(dim_, b[i]);
      for (int j = 0; j < dim_; ++j) {
        if (a.at(i, j).is_zero()) continue;
        ci += a.at(i, j) * coordinate(dim_, j);
      }
      coord_images.push_back(std::move(ci));
    }
    for (const auto& [k, c] : terms_) {
      ExpPoly term_val = constant(dim_, c);
      for (int i = 0; i < dim_; ++i)
        if (k.powers[i] > 0) term_val *= coord_images[i].pow(k.powers[i]);
      if (!k.weight_is_zero()) {
        Rational shift = 0;
        std::vector<Rational> new_weight(dim_, Rational(0));
        for (int i = 0; i < dim_; ++i) {
          if (k.weight[i] == 0) continue;
          shift += k.weight[i] * b[i].rational_value();
          for (int j = 0; j < dim_; ++j)
            new_weight[j] += k.weight[i] * a.at(i, j).rational_value();
        }
        if (shift != 0)
          throw WeightParameterConflict(
              "translation component along an exponential weight is not representable");
        ExpPoly wave = term(dim_, std::vector<int>(dim_, 0), std::move(new_weight), Scalar(1));
        term_val *= wave;
      }
      result += term_val;
    }
    return result;
  }

  /// f ∘ F for polynomial f and exp-poly components F (substitution of the
  /// coordinates). Exponential weights in f would leave the algebra.
  ExpPoly compose_components(const std::vector<ExpPoly>& f_of) const {
    if (static_cast<int>(f_of.size()) != dim_)
      throw DimensionMismatch("compose_components arity");
    if (!is_polynomial())
      throw CompositionOutsideAlgebra(
          "composing exponential terms with non-affine components leaves the algebra");
    const int target_dim = f_of.empty() ? dim_ : f_of[0].dim();
    ExpPoly result(target_dim);
    for (const auto& [k, c] : terms_) {
      ExpPoly term_val = constant(target_dim, c);
      for (int i = 0; i < dim_; ++i)
        if (k.powers[i] > 0) term_val *= f_of[i].pow(k.powers[i]);
      result += term_val;
    }
    return result;
  }

  /// Units of the algebra are single terms c * e^<l,x> with c != 0 and no
  /// polynomial part; returns the inverse when the function is a unit.
  std::optional<ExpPoly> unit_inverse() const {
    if (terms_.size() != 1) return std::nullopt;
    const auto& [k, c] = *terms_.begin();
    if (k.poly_degree() != 0) return std::nullopt;
    std::vector<Rational> neg(k.weight.size());
    for (std::size_t i = 0; i < neg.size(); ++i) neg[i] = -k.weight[i];
    return term(dim_, std::vector<int>(dim_, 0), std::move(neg), Scalar(1) / c);
  }

  double eval_double(const std::vector<double>& p,
                     const std::map<std::string, double>& env) const {
    if (static_cast<int>(p.size()) != dim_) throw DimensionMismatch("eval point size");
    double total = 0;
    for (const auto& [k, c] : terms_) {
      double v = c.eval_double(env);
      for (int i = 0; i < dim_; ++i)
        for (int e = 0; e < k.powers[i]; ++e) v *= p[i];
      double phase = 0;
      for (int i = 0; i < dim_; ++i)
        if (k.weight[i] != 0) phase += to_double(k.weight[i]) * p[i];
      if (phase != 0) v *= std::exp(phase);
      total += v;
    }
    return total;
  }

  Rational eval_rational(const std::vector<Rational>& p,
                         const std::map<std::string, Rational>& assignment) const {
    if (!is_polynomial()) throw Error("exact evaluation requires a polynomial exppoly");
    if (static_cast<int>(p.size()) != dim_) throw DimensionMismatch("eval point size");
    Rational total = 0;
    for (const auto& [k, c] : terms_) {
      Rational v = c.eval(assignment);
      for (int i = 0; i < dim_; ++i)
        for (int e = 0; e < k.powers[i]; ++e) v *= p[i];
      total += v;
    }
    return total;
  }

  std::string to_string() const;

private:
  void check_same_dim(const ExpPoly& o) const {
    if (dim_ != o.dim_) throw DimensionMismatch("exppoly dimensions differ");
  }
  void add_term(ExpKey k, Scalar c) {
    if (c.is_zero()) return;
    auto it = terms_.find(k);
    if (it == terms_.end()) {
      terms_.emplace(std::move(k), std::move(c));
    } else {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  int dim_;
  std::map<ExpKey, Scalar> terms_;
};

inline std::string ExpPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [k, c] : terms_) {
    Scalar coef = c;
    bool negated = false;
    if (coef.is_rational_constant() && coef.rational_value() < 0) {
      coef = -coef;
      negated = true;
    }
    if (first) {
      if (negated) out += "-";
      first = false;
    } else {
      out += negated ? " - " : " + ";
    }
    std::string factors;
    for (int i = 0; i < dim_; ++i) {
      if (k.powers[i] == 0) continue;
      if (!factors.empty()) factors += "*";
      factors += coordinate_name(dim_, i);
      if (k.powers[i] != 1) factors += "^" + std::to_string(k.powers[i]);
    }
    if (!k.weight_is_zero()) {
      std::string arg;
      for (int i = 0; i < dim_; ++i) {
        if (k.weight[i] == 0) continue;
        Rational w = k.weight[i];
        if (arg.empty()) {
          if (w < 0) {
            arg += "-";
            w = -w;
          }
        } else {
          arg += w < 0 ? " - " : " + ";
          if (w < 0) w = -w;
        }
        if (w != 1) arg += flataff::to_string(w) + "*";
        arg += coordinate_name(dim_, i);
      }
      if (!factors.empty()) factors += "*";
      factors += "exp(" + arg + ")";
    }
    const bool unit_coef = coef.is_rational_constant() && coef.rational_value() == 1;
    if (factors.empty()) {
      out += coef.is_rational_constant() ? coef.to_string() : "(" + coef.to_string() + ")";
    } else if (unit_coef) {
      out += factors;
    } else if (coef.is_rational_constant()) {
      out += coef.to_string() + "*" + factors;
    } else {
      out += "(" + coef.to_string() + ")*" + factors;
    }
  }
  return out;
}

} // namespace flataff
