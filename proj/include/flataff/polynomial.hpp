#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "flataff/param.hpp"
#include "flataff/rational.hpp"

namespace flataff {

/// Monomial: parameter name -> exponent, zero exponents never stored.
using Monomial = std::map<std::string, int>;

inline int monomial_degree(const Monomial& m) {
  int d = 0;
  for (const auto& [name, e] : m) d += e;
  return d;
}

/// Graded lexicographic order; variables compare alphabetically.
struct MonomialLess {
  bool operator()(const Monomial& a, const Monomial& b) const {
    const int da = monomial_degree(a), db = monomial_degree(b);
    if (da != db) return da < db;
    auto ia = a.begin(), ib = b.begin();
    while (ia != a.end() && ib != b.end()) {
      if (ia->first != ib->first) {
        // the alphabetically earlier variable is present in one only:
        // that one has the higher exponent there, hence is the larger monomial
        return ia->first > ib->first;
      }
      if (ia->second != ib->second) return ia->second < ib->second;
      ++ia, ++ib;
    }
    return ia == a.end() && ib != b.end();
  }
};

/// Sparse multivariate polynomial with exact rational coefficients in
/// declared session parameters. Canonical form: no zero coefficients,
/// terms ordered graded-lex, so operator== is structural equality.
class Polynomial {
public:
  using TermMap = std::map<Monomial, Rational, MonomialLess>;

  Polynomial() = default;
  Polynomial(const Rational& c) {
    if (c != 0) terms_[Monomial{}] = c;
  }
  Polynomial(int c) : Polynomial(Rational(c)) {}

  static Polynomial variable(const std::string& name, int exponent = 1) {
    Polynomial p;
    if (exponent < 0) throw Error("negative exponent on parameter '" + name + "'");
    if (exponent == 0) return Polynomial(1);
    p.terms_[Monomial{{name, exponent}}] = 1;
    return p;
  }

  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.empty());
  }
  Rational constant_value() const {
    if (terms_.empty()) return Rational(0);
    if (!is_constant()) throw Error("polynomial is not constant");
    return terms_.begin()->second;
  }

  int degree() const {  // total degree; -1 for the zero polynomial
    return terms_.empty() ? -1 : monomial_degree(terms_.rbegin()->first);
  }

  std::set<std::string> variables() const {
    std::set<std::string> vars;
    for (const auto& [m, c] : terms_)
      for (const auto& [name, e] : m) vars.insert(name);
    return vars;
  }

  const Monomial& leading_monomial() const {
    if (terms_.empty()) throw Error("zero polynomial has no leading term");
    return terms_.rbegin()->first;
  }
  const Rational& leading_coefficient() const {
    if (terms_.empty()) throw Error("zero polynomial has no leading term");
    return terms_.rbegin()->second;
  }

  Polynomial& operator+=(const Polynomial& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
  }
  Polynomial& operator-=(const Polynomial& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
  }
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator-(const Polynomial& a) {
    Polynomial r;
    for (const auto& [m, c] : a.terms_) r.terms_[m] = -c;
    return r;
  }

  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    Polynomial r;
    for (const auto& [ma, ca] : a.terms_)
      for (const auto& [mb, cb] : b.terms_) {
        Monomial m = ma;
        for (const auto& [name, e] : mb) {
          int& slot = m[name];
          slot += e;
          if (slot == 0) m.erase(name);
        }
        r.add_term(m, ca * cb);
      }
    return r;
  }
  Polynomial& operator*=(const Polynomial& o) { return *this = *this * o; }

  Polynomial& scale(const Rational& c) {
    if (c == 0) {
      terms_.clear();
      return *this;
    }
    for (auto& [m, coef] : terms_) coef *= c;
    return *this;
  }
  friend Polynomial operator*(Polynomial a, const Rational& c) { return a.scale(c); }
  friend Polynomial operator*(const Rational& c, Polynomial a) { return a.scale(c); }

  Polynomial pow(int e) const {
    if (e < 0) throw Error("negative polynomial power");
    Polynomial r(1), base = *this;
    while (e > 0) {
      if (e & 1) r *= base;
      base *= base;
      e >>= 1;
    }
    return r;
  }

  bool operator==(const Polynomial& o) const { return terms_ == o.terms_; }
  bool operator!=(const Polynomial& o) const { return !(*this == o); }

  Rational eval(const std::map<std::string, Rational>& assignment) const {
    Rational total = 0;
    for (const auto& [m, c] : terms_) {
      Rational t = c;
      for (const auto& [name, e] : m) {
        auto it = assignment.find(name);
        if (it == assignment.end())
          throw MissingParam("no value for parameter '" + name + "'");
        Rational p = 1;
        for (int k = 0; k < e; ++k) p *= it->second;
        t *= p;
      }
      total += t;
    }
    return total;
  }

  double eval_double(const std::map<std::string, double>& assignment) const {
    double total = 0;
    for (const auto& [m, c] : terms_) {
      double t = to_double(c);
      for (const auto& [name, e] : m) {
        auto it = assignment.find(name);
        if (it == assignment.end())
          throw MissingParam("no value for parameter '" + name + "'");
        for (int k = 0; k < e; ++k) t *= it->second;
      }
      total += t;
    }
    return total;
  }

  /// Exact division; throws if the divisor does not divide exactly.
  Polynomial divide_exact(const Polynomial& divisor) const {
    if (divisor.is_zero()) throw DivisionByZero("polynomial division by zero");
    Polynomial q, r = *this;
    while (!r.is_zero()) {
      const Monomial& lm_r = r.leading_monomial();
      const Monomial& lm_d = divisor.leading_monomial();
      Monomial m;  // lm_r / lm_d
      bool divides = true;
      {
        m = lm_r;
        for (const auto& [name, e] : lm_d) {
          auto it = m.find(name);
          if (it == m.end() || it->second < e) {
            divides = false;
            break;
          }
          it->second -= e;
          if (it->second == 0) m.erase(it);
        }
      }
      if (!divides) throw Error("polynomial division is not exact");
      Polynomial t;
      t.terms_[m] = r.leading_coefficient() / divisor.leading_coefficient();
      q += t;
      r -= t * divisor;
    }
    return q;
  }

  /// Leading rational coefficient scaled to 1 (zero stays zero).
  Polynomial monic() const {
    if (is_zero()) return *this;
    Polynomial r = *this;
    r.scale(Rational(1) / leading_coefficient());
    return r;
  }

  static Polynomial gcd(const Polynomial& a, const Polynomial& b);

  std::string to_string() const;

private:
  void add_term(const Monomial& m, const Rational& c) {
    if (c == 0) return;
    auto it = terms_.find(m);
    if (it == terms_.end()) {
      terms_.emplace(m, c);
    } else {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  TermMap terms_;
};

namespace detail {

inline int degree_in(const Polynomial& p, const std::string& v) {
  int d = 0;
  for (const auto& [m, c] : p.terms()) {
    auto it = m.find(v);
    if (it != m.end()) d = std::max(d, it->second);
  }
  return d;
}

/// Coefficients of p viewed as a univariate polynomial in v;
/// the coefficient polynomials do not contain v.
inline std::map<int, Polynomial> coefficients_in(const Polynomial& p, const std::string& v) {
  std::map<int, Polynomial> out;
  for (const auto& [m, c] : p.terms()) {
    Monomial rest = m;
    int e = 0;
    auto it = rest.find(v);
    if (it != rest.end()) {
      e = it->second;
      rest.erase(it);
    }
    Polynomial mono(1);
    for (const auto& [name, exp] : rest) mono *= Polynomial::variable(name, exp);
    mono.scale(c);
    out[e] += mono;
  }
  for (auto it = out.begin(); it != out.end();)
    it = it->second.is_zero() ? out.erase(it) : std::next(it);
  return out;
}

inline Polynomial from_coefficients_in(const std::string& v, const std::map<int, Polynomial>& coeffs) {
  Polynomial p;
  for (const auto& [e, c] : coeffs) p += c * Polynomial::variable(v, e);
  return p;
}

inline Polynomial content_in(const Polynomial& p, const std::string& v) {
  Polynomial g;
  for (const auto& [e, c] : coefficients_in(p, v)) g = Polynomial::gcd(g, c);
  return g;
}

/// Pseudo-remainder of a by b in the variable v (b nonzero in v).
inline Polynomial pseudo_remainder_in(Polynomial r, const Polynomial& b, const std::string& v) {
  const int db = degree_in(b, v);
  auto bc = coefficients_in(b, v);
  const Polynomial lb = bc.rbegin()->second;
  int dr = degree_in(r, v);
  while (!r.is_zero() && (dr = degree_in(r, v)) >= db) {
    auto rc = coefficients_in(r, v);
    if (rc.rbegin()->first < db) break;
    const Polynomial lr = rc.rbegin()->second;
    r = lb * r - lr * Polynomial::variable(v, dr - db) * b;
    if (degree_in(r, v) >= dr && !r.is_zero()) throw Error("pseudo-division failed to reduce degree");
  }
  return r;
}

} // namespace detail

inline Polynomial Polynomial::gcd(const Polynomial& a, const Polynomial& b) {
  if (a.is_zero()) return b.monic();
  if (b.is_zero()) return a.monic();
  if (a.is_constant() || b.is_constant()) return Polynomial(1);

  auto va = a.variables();
  auto vb = b.variables();
  std::set<std::string> all;
  all.insert(va.begin(), va.end());
  all.insert(vb.begin(), vb.end());
  const std::string v = *all.begin();

  if (!va.count(v)) return gcd(a, detail::content_in(b, v));
  if (!vb.count(v)) return gcd(detail::content_in(a, v), b);

  const Polynomial ca = detail::content_in(a, v);
  const Polynomial cb = detail::content_in(b, v);
  Polynomial pa = a.divide_exact(ca);
  Polynomial pb = b.divide_exact(cb);
  if (detail::degree_in(pa, v) < detail::degree_in(pb, v)) std::swap(pa, pb);

  const Polynomial cont_gcd = gcd(ca, cb);

  // primitive pseudo-remainder sequence in v
  Polynomial g;
  for (;;) {
    if (pb.is_zero()) {
      g = pa;
      break;
    }
    if (detail::degree_in(pb, v) == 0) {
      g = Polynomial(1);
      break;
    }
    Polynomial r = detail::pseudo_remainder_in(pa, pb, v);
    pa = pb;
    if (r.is_zero()) {
      g = pa;
      break;
    }
    pb = r.divide_exact(detail::content_in(r, v));
  }
  return (cont_gcd * g.divide_exact(detail::content_in(g, v))).monic();
}

inline std::string Polynomial::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  // highest terms first reads naturally
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [m, c] = *it;
    Rational coef = c;
    if (first) {
      if (coef < 0) {
        out += "-";
        coef = -coef;
      }
      first = false;
    } else if (coef < 0) {
      out += " - ";
      coef = -coef;
    } else {
      out += " + ";
    }
    std::string factors;
    for (const auto& [name, e] : m) {
      if (!factors.empty()) factors += "*";
      factors += name;
      if (e != 1) factors += "^" + std::to_string(e);
    }
    if (factors.empty()) {
      out += flataff::to_string(coef);
    } else if (coef == 1) {
      out += factors;
    } else {
      out += flataff::to_string(coef) + "*" + factors;
    }
  }
  return out;
}

} // namespace flataff
