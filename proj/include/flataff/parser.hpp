#pragma once

#include <cctype>
#include <string>

#include "flataff/vector_field.hpp"

namespace flataff {

namespace detail {

/// Recursive-descent scanner shared by the scalar, function and field
/// grammars. Whitespace is insignificant; identifiers must be declared
/// parameters except the coordinate names of the ambient dimension.
class Parser {
public:
  Parser(std::string text, int dim) : text_(std::move(text)), dim_(dim) {}

  Scalar parse_scalar() {
    const Scalar s = scalar_expr();
    expect_end();
    return s;
  }

  ExpPoly parse_function() {
    skip_ws();
    if (peek() == '\0') throw ParseError("empty function literal", pos_);
    const ExpPoly f = function_expr();
    expect_end();
    return f;
  }

  VectorField parse_field(const Domain& domain) {
    skip_ws();
    std::vector<ExpPoly> comps(dim_, ExpPoly(dim_));
    // "0" denotes the zero field
    if (peek() == '0' && peek_at(1) == '\0') return VectorField(domain, comps);
    bool first = true;
    for (;;) {
      skip_ws();
      bool negative = false;
      if (first) {
        if (consume('-')) negative = true;
      } else {
        if (consume('+')) {
          negative = false;
        } else if (consume('-')) {
          negative = true;
        } else {
          break;
        }
      }
      first = false;
      auto [coef, index] = field_term();
      if (negative) coef = Scalar(-1) * coef;
      comps[index] += coef;
      skip_ws();
      if (peek() == '\0') break;
    }
    expect_end();
    return VectorField(domain, std::move(comps));
  }

private:
  // ---- scalar grammar ----------------------------------------------------

  Scalar scalar_expr() {
    skip_ws();
    bool neg = consume('-');
    Scalar acc = scalar_term();
    if (neg) acc = -acc;
    for (;;) {
      skip_ws();
      if (consume('+')) {
        acc += scalar_term();
      } else if (consume('-')) {
        acc -= scalar_term();
      } else {
        return acc;
      }
    }
  }

  Scalar scalar_term() {
    Scalar acc = scalar_factor();
    for (;;) {
      skip_ws();
      if (consume('*')) {
        acc *= scalar_factor();
      } else if (consume('/')) {
        const Scalar d = scalar_factor();
        if (d.is_zero()) throw ParseError("division by zero", pos_);
        acc /= d;
      } else {
        return acc;
      }
    }
  }

  Scalar scalar_factor() {
    skip_ws();
    Scalar base;
    if (consume('(')) {
      base = scalar_expr();
      skip_ws();
      if (!consume(')')) throw ParseError("expected ')'", pos_);
    } else if (std::isdigit(static_cast<unsigned char>(peek()))) {
      base = Scalar(read_rational());
    } else if (std::isalpha(static_cast<unsigned char>(peek()))) {
      const std::size_t at = pos_;
      const std::string name = read_identifier();
      if (!is_declared_param(name))
        throw ParseError("identifier '" + name + "' is not a declared parameter", at);
      base = Scalar::param(name);
    } else {
      throw ParseError("expected rational, parameter or '('", pos_);
    }
    while (true) {
      skip_ws();
      if (!consume('^')) break;
      base = base.pow(read_integer());
    }
    return base;
  }

  // ---- function grammar --------------------------------------------------

  ExpPoly function_expr() {
    skip_ws();
    bool neg = consume('-');
    ExpPoly acc = function_term();
    if (neg) acc = Scalar(-1) * acc;
    for (;;) {
      skip_ws();
      if (consume('+')) {
        acc += function_term();
      } else if (consume('-')) {
        acc -= function_term();
      } else {
        return acc;
      }
    }
  }

  ExpPoly function_term() {
    ExpPoly acc = function_factor();
    for (;;) {
      skip_ws();
      const std::size_t save = pos_;
      if (consume('*')) {
        // a following d/d token belongs to the field grammar, not to us
        skip_ws();
        if (at_field_direction()) {
          pos_ = save;
          return acc;
        }
        acc *= function_factor();
      } else if (consume('/')) {
        const std::size_t at = pos_;
        const ExpPoly d = function_factor();
        if (!d.is_constant() || d.constant_value().is_zero())
          throw ParseError("division in a function literal must be by a nonzero constant", at);
        acc = (Scalar(1) / d.constant_value()) * acc;
      } else {
        return acc;
      }
    }
  }

  ExpPoly function_factor() {
    skip_ws();
    ExpPoly base(dim_);
    if (consume('(')) {
      base = function_expr();
      skip_ws();
      if (!consume(')')) throw ParseError("expected ')'", pos_);
    } else if (std::isdigit(static_cast<unsigned char>(peek()))) {
      base = ExpPoly::constant(dim_, Scalar(read_rational()));
    } else if (std::isalpha(static_cast<unsigned char>(peek()))) {
      const std::size_t at = pos_;
      const std::string name = read_identifier();
      if (name == "exp") {
        base = exp_factor();
      } else if (int ci = coordinate_index(name); ci >= 0) {
        base = ExpPoly::coordinate(dim_, ci);
      } else if (is_declared_param(name)) {
        base = ExpPoly::constant(dim_, Scalar::param(name));
      } else {
        throw ParseError("identifier '" + name + "' is neither a coordinate nor a declared parameter", at);
      }
    } else {
      throw ParseError("expected function factor", pos_);
    }
    while (true) {
      skip_ws();
      if (!consume('^')) break;
      const std::size_t at = pos_;
      const int e = read_integer();
      if (e < 0) throw ParseError("negative power in function literal", at);
      base = base.pow(e);
    }
    return base;
  }

  /// exp( a*x + b*y ) with rational a, b.
  ExpPoly exp_factor() {
    skip_ws();
    if (!consume('(')) throw ParseError("expected '(' after exp", pos_);
    std::vector<Rational> weight(dim_, Rational(0));
    bool first = true;
    for (;;) {
      skip_ws();
      bool neg = false;
      if (first) {
        neg = consume('-');
      } else if (consume('+')) {
        neg = false;
      } else if (consume('-')) {
        neg = true;
      } else {
        break;
      }
      first = false;
      skip_ws();
      Rational coef = 1;
      bool have_coef = false;
      if (std::isdigit(static_cast<unsigned char>(peek()))) {
        coef = read_rational();
        have_coef = true;
        skip_ws();
        if (!consume('*')) throw ParseError("expected '*' before coordinate in exp argument", pos_);
        skip_ws();
      }
      const std::size_t at = pos_;
      if (!std::isalpha(static_cast<unsigned char>(peek())))
        throw ParseError("expected coordinate in exp argument", pos_);
      const std::string name = read_identifier();
      const int ci = coordinate_index(name);
      if (ci < 0)
        throw ParseError("exp argument must be a rational combination of coordinates", at);
      (void)have_coef;
      weight[ci] += neg ? -coef : coef;
    }
    skip_ws();
    if (!consume(')')) throw ParseError("expected ')' closing exp", pos_);
    return ExpPoly::term(dim_, std::vector<int>(dim_, 0), std::move(weight), Scalar(1));
  }

  // ---- field grammar -----------------------------------------------------

  /// One field term: optional exp-poly coefficient times d/d<coord>.
  std::pair<ExpPoly, int> field_term() {
    skip_ws();
    if (at_field_direction()) return {ExpPoly::constant(dim_, Scalar(1)), read_field_direction()};
    ExpPoly coef = function_term();
    skip_ws();
    if (!consume('*')) throw ParseError("expected '*d/d<coordinate>'", pos_);
    skip_ws();
    if (!at_field_direction()) throw ParseError("expected d/d<coordinate>", pos_);
    return {std::move(coef), read_field_direction()};
  }

  bool at_field_direction() {
    return peek() == 'd' && peek_at(1) == '/' && peek_at(2) == 'd';
  }

  int read_field_direction() {
    pos_ += 3;  // "d/d"
    const std::size_t at = pos_;
    if (!std::isalpha(static_cast<unsigned char>(peek())))
      throw ParseError("expected coordinate after d/d", pos_);
    const std::string name = read_identifier();
    const int ci = coordinate_index(name);
    if (ci < 0) throw ParseError("unknown coordinate '" + name + "'", at);
    return ci;
  }

  // ---- lexing ------------------------------------------------------------

  int coordinate_index(const std::string& name) const {
    if (dim_ >= 1 && (name == "x" || name == "x1")) return 0;
    if (dim_ >= 2 && (name == "y" || name == "x2")) return 1;
    if (name.size() > 1 && name[0] == 'x') {
      bool digits = true;
      for (std::size_t i = 1; i < name.size(); ++i)
        digits = digits && std::isdigit(static_cast<unsigned char>(name[i]));
      if (digits) {
        const int k = std::stoi(name.substr(1));
        if (k >= 1 && k <= dim_) return k - 1;
      }
    }
    return -1;
  }

  char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }
  char peek_at(std::size_t off) const {
    return pos_ + off < text_.size() ? text_[pos_ + off] : '\0';
  }
  bool consume(char c) {
    if (peek() == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  void expect_end() {
    skip_ws();
    if (pos_ != text_.size()) throw ParseError("unexpected trailing input", pos_);
  }

  std::string read_identifier() {
    std::size_t end = pos_;
    while (end < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[end])) || text_[end] == '_'))
      ++end;
    std::string s = text_.substr(pos_, end - pos_);
    pos_ = end;
    return s;
  }

  Integer read_unsigned_integer() {
    if (!std::isdigit(static_cast<unsigned char>(peek())))
      throw ParseError("expected integer", pos_);
    std::size_t end = pos_;
    while (end < text_.size() && std::isdigit(static_cast<unsigned char>(text_[end]))) ++end;
    Integer v(text_.substr(pos_, end - pos_));
    pos_ = end;
    return v;
  }

  int read_integer() {
    skip_ws();
    const bool neg = consume('-');
    const Integer v = read_unsigned_integer();
    if (v > 1000) throw ParseError("exponent too large", pos_);
    const int i = v.convert_to<int>();
    return neg ? -i : i;
  }

  /// rational := integer ('/' positive-integer)?
  Rational read_rational() {
    const Integer num = read_unsigned_integer();
    const std::size_t save = pos_;
    skip_ws();
    if (consume('/')) {
      skip_ws();
      if (std::isdigit(static_cast<unsigned char>(peek()))) {
        const Integer den = read_unsigned_integer();
        if (den == 0) throw ParseError("zero denominator", pos_);
        return Rational(num, den);
      }
      pos_ = save;  // the '/' belongs to a factor division
    } else {
      pos_ = save;
    }
    return Rational(num);
  }

  std::string text_;
  int dim_;
  std::size_t pos_ = 0;
};

} // namespace detail

/// Parses a scalar literal over the declared parameters.
inline Scalar parse_scalar(const std::string& text) {
  return detail::Parser(text, 1).parse_scalar();
}

/// Parses a function literal (sum of products of coordinates, rationals,
/// parameters and exp(rational linear form)).
inline ExpPoly parse_exppoly(const std::string& text, int dim) {
  return detail::Parser(text, dim).parse_function();
}

/// Parses a field literal: sum of <function>*d/d<coordinate> terms.
inline VectorField parse_field(const std::string& text, const Domain& domain) {
  return detail::Parser(text, domain.dim).parse_field(domain);
}

} // namespace flataff
