#pragma once

#include <vector>

#include "flataff/domain.hpp"
#include "flataff/exppoly.hpp"

namespace flataff {

/// Vector field on a coordinate domain: one exp-poly component per coordinate.
class VectorField {
public:
  VectorField(Domain domain, std::vector<ExpPoly> components)
      : domain_(domain), components_(std::move(components)) {
    if (static_cast<int>(components_.size()) != domain_.dim)
      throw DimensionMismatch("field component count differs from domain dimension");
    for (const ExpPoly& c : components_)
      if (c.dim() != domain_.dim) throw DimensionMismatch("field component dimension");
  }

  static VectorField zero(Domain domain) {
    return VectorField(domain, std::vector<ExpPoly>(domain.dim, ExpPoly(domain.dim)));
  }
  static VectorField coordinate(Domain domain, int i) {
    VectorField f = zero(domain);
    f.components_[i] = ExpPoly::constant(domain.dim, Scalar(1));
    return f;
  }
  /// Field p -> M p + v with scalar entries.
  static VectorField affine(Domain domain, const ScalarMatrix& m, const std::vector<Scalar>& v) {
    const int n = domain.dim;
    if (static_cast<int>(m.rows()) != n || static_cast<int>(m.cols()) != n ||
        static_cast<int>(v.size()) != n)
      throw DimensionMismatch("affine field data shape");
    std::vector<ExpPoly> comps;
    comps.reserve(n);
    for (int i = 0; i < n; ++i) {
      ExpPoly c = ExpPoly::constant(n, v[i]);
      for (int j = 0; j < n; ++j)
        if (!m.at(i, j).is_zero()) c += m.at(i, j) * ExpPoly::coordinate(n, j);
      comps.push_back(std::move(c));
    }
    return VectorField(domain, std::move(comps));
  }

  const Domain& domain() const { return domain_; }
  int dim() const { return domain_.dim; }
  const std::vector<ExpPoly>& components() const { return components_; }
  const ExpPoly& component(int i) const { return components_.at(i); }

  bool is_zero() const {
    for (const ExpPoly& c : components_)
      if (!c.is_zero()) return false;
    return true;
  }
  bool operator==(const VectorField& o) const {
    return domain_ == o.domain_ && components_ == o.components_;
  }
  bool operator!=(const VectorField& o) const { return !(*this == o); }

  friend VectorField operator+(VectorField a, const VectorField& b) {
    a.check_compatible(b);
    for (int i = 0; i < a.dim(); ++i) a.components_[i] += b.components_[i];
    return a;
  }
  friend VectorField operator-(VectorField a, const VectorField& b) {
    a.check_compatible(b);
    for (int i = 0; i < a.dim(); ++i) a.components_[i] -= b.components_[i];
    return a;
  }
  friend VectorField operator*(const Scalar& c, VectorField f) {
    for (ExpPoly& comp : f.components_) comp = c * comp;
    return f;
  }
  friend VectorField operator-(const VectorField& a) { return Scalar(-1) * a; }

  /// Degree <= 1, weight-free fields X(p) = Mp + v.
  bool is_affine() const {
    for (const ExpPoly& c : components_) {
      if (!c.is_polynomial()) return false;
      if (c.poly_degree() > 1) return false;
    }
    return true;
  }

  /// (M, v) of an affine field.
  std::pair<ScalarMatrix, std::vector<Scalar>> affine_parts() const {
    if (!is_affine()) throw NotAffineField("field is not affine");
    const int n = dim();
    ScalarMatrix m(n, n);
    std::vector<Scalar> v(n);
    for (int i = 0; i < n; ++i)
      for (const auto& [k, c] : components_[i].terms()) {
        if (k.poly_degree() == 0) {
          v[i] = c;
        } else {
          for (int j = 0; j < n; ++j)
            if (k.powers[j] == 1) m.at(i, j) = c;
        }
      }
    return {std::move(m), std::move(v)};
  }

  /// Coordinates in the classical affine field space, ordered as the matrix
  /// entries row-major followed by the translation entries (n^2 + n slots).
  std::vector<Scalar> affine_coordinates() const {
    auto [m, v] = affine_parts();
    const int n = dim();
    std::vector<Scalar> coords;
    coords.reserve(n * n + n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) coords.push_back(m.at(i, j));
    for (int i = 0; i < n; ++i) coords.push_back(v[i]);
    return coords;
  }

  std::vector<double> eval_double(const std::vector<double>& p,
                                  const std::map<std::string, double>& env) const {
    std::vector<double> out(dim());
    for (int i = 0; i < dim(); ++i) out[i] = components_[i].eval_double(p, env);
    return out;
  }

  std::string to_string() const {
    std::string out;
    for (int i = 0; i < dim(); ++i) {
      if (components_[i].is_zero()) continue;
      std::string comp = components_[i].to_string();
      const std::string dd = "d/d" + coordinate_name(dim(), i);
      std::string piece;
      if (comp == "1") {
        piece = dd;
      } else if (comp == "-1") {
        piece = "-" + dd;
      } else if (components_[i].terms().size() > 1) {
        piece = "(" + comp + ")*" + dd;
      } else {
        piece = comp + "*" + dd;
      }
      if (out.empty()) {
        out = piece;
      } else if (!piece.empty() && piece[0] == '-') {
        out += " - " + piece.substr(1);
      } else {
        out += " + " + piece;
      }
    }
    return out.empty() ? "0" : out;
  }

private:
  void check_compatible(const VectorField& o) const {
    if (domain_ != o.domain_) throw DimensionMismatch("fields live on different domains");
  }

  Domain domain_;
  std::vector<ExpPoly> components_;
};

/// Lie bracket [X, Y]^k = X^i d_i Y^k - Y^i d_i X^k.
inline VectorField bracket(const VectorField& x, const VectorField& y) {
  if (x.domain() != y.domain()) throw DimensionMismatch("bracket of fields on different domains");
  const int n = x.dim();
  std::vector<ExpPoly> comps(n, ExpPoly(n));
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i) {
      comps[k] += x.component(i) * y.component(k).diff(i);
      comps[k] -= y.component(i) * x.component(k).diff(i);
    }
  return VectorField(x.domain(), std::move(comps));
}

/// Pushforward of an affine field X(p) = Mp + v by T(p) = Ap + b:
/// the image has matrix A M A^{-1} and constant A v - A M A^{-1} b.
/// Exact over scalars, parametric maps allowed.
inline VectorField pushforward_affine_field(const VectorField& x, const AffineMap& t) {
  if (!x.is_affine()) throw NotAffineField("pushforward formula needs an affine field");
  if (static_cast<int>(t.dim()) != x.dim()) throw DimensionMismatch("pushforward dims");
  auto [m, v] = x.affine_parts();
  auto a_inv = inverse(t.linear_part());
  if (!a_inv) throw SingularMap("pushforward by non-invertible map");
  const ScalarMatrix conj = t.linear_part() * m * *a_inv;
  std::vector<Scalar> nv = t.linear_part().apply(v);
  const std::vector<Scalar> shift = conj.apply(t.translation_part());
  for (std::size_t i = 0; i < nv.size(); ++i) nv[i] -= shift[i];
  return VectorField::affine(x.domain(), conj, nv);
}

/// General pushforward (T_*X)(p) = A X(T^{-1} p). Affine fields use the exact
/// matrix formula; exponential components need a rational map.
inline VectorField pushforward_field(const VectorField& x, const AffineMap& t) {
  if (x.is_affine()) return pushforward_affine_field(x, t);
  if (static_cast<int>(t.dim()) != x.dim()) throw DimensionMismatch("pushforward dims");
  const AffineMap t_inv = t.inverted();
  const int n = x.dim();
  std::vector<ExpPoly> pulled;
  pulled.reserve(n);
  for (int i = 0; i < n; ++i) pulled.push_back(x.component(i).compose_affine(t_inv));
  std::vector<ExpPoly> comps(n, ExpPoly(n));
  const auto& a = t.linear_part();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (!a.at(i, j).is_zero()) comps[i] += a.at(i, j) * pulled[j];
  return VectorField(x.domain(), std::move(comps));
}

/// True iff T_*X = X structurally.
inline bool is_invariant_field(const VectorField& x, const AffineMap& t) {
  return pushforward_field(x, t) == x;
}

/// Exact span comparison of two field families via ranks of their coefficient
/// matrices over the union of occurring term keys.
inline bool same_span(const std::vector<VectorField>& a, const std::vector<VectorField>& b) {
  std::map<std::pair<int, ExpKey>, std::size_t> columns;
  auto collect = [&columns](const std::vector<VectorField>& fs) {
    for (const VectorField& f : fs)
      for (int i = 0; i < f.dim(); ++i)
        for (const auto& [k, c] : f.component(i).terms())
          columns.emplace(std::make_pair(i, k), columns.size());
  };
  collect(a);
  collect(b);
  auto to_matrix = [&columns](const std::vector<VectorField>& fs) {
    ScalarMatrix m(fs.size(), columns.size());
    for (std::size_t r = 0; r < fs.size(); ++r)
      for (int i = 0; i < fs[r].dim(); ++i)
        for (const auto& [k, c] : fs[r].component(i).terms())
          m.at(r, columns.at(std::make_pair(i, k))) = c;
    return m;
  };
  const ScalarMatrix ma = to_matrix(a);
  const ScalarMatrix mb = to_matrix(b);
  ScalarMatrix joint(a.size() + b.size(), columns.size());
  for (std::size_t r = 0; r < a.size(); ++r)
    for (std::size_t c = 0; c < columns.size(); ++c) joint.at(r, c) = ma.at(r, c);
  for (std::size_t r = 0; r < b.size(); ++r)
    for (std::size_t c = 0; c < columns.size(); ++c) joint.at(a.size() + r, c) = mb.at(r, c);
  const std::size_t ra = rank(ma), rb = rank(mb), rj = rank(joint);
  return ra == rb && rb == rj;
}

} // namespace flataff
