#pragma once

#include <optional>
#include <vector>

#include "flataff/vector_field.hpp"

namespace flataff {

/// Rank-3 tensor of exp-poly entries, index order (k, i, j).
struct Tensor3 {
  int dim;
  std::vector<ExpPoly> entries;  // dim^3, flat

  explicit Tensor3(int n) : dim(n), entries(n * n * n, ExpPoly(n)) {}
  ExpPoly& at(int k, int i, int j) { return entries[(k * dim + i) * dim + j]; }
  const ExpPoly& at(int k, int i, int j) const { return entries[(k * dim + i) * dim + j]; }
  bool is_zero() const {
    for (const ExpPoly& e : entries)
      if (!e.is_zero()) return false;
    return true;
  }
};

/// Rank-4 tensor, index order (l, k, i, j).
struct Tensor4 {
  int dim;
  std::vector<ExpPoly> entries;

  explicit Tensor4(int n) : dim(n), entries(n * n * n * n, ExpPoly(n)) {}
  ExpPoly& at(int l, int k, int i, int j) {
    return entries[((l * dim + k) * dim + i) * dim + j];
  }
  const ExpPoly& at(int l, int k, int i, int j) const {
    return entries[((l * dim + k) * dim + i) * dim + j];
  }
  bool is_zero() const {
    for (const ExpPoly& e : entries)
      if (!e.is_zero()) return false;
    return true;
  }
};

/// Linear connection on a coordinate domain, stored through its Christoffel
/// symbols Gamma^k_{ij}. The all-zero symbols are the standard flat
/// connection.
class Connection {
public:
  explicit Connection(Domain domain) : domain_(domain), gamma_(domain.dim) {}

  static Connection standard(Domain domain) { return Connection(domain); }

  const Domain& domain() const { return domain_; }
  int dim() const { return domain_.dim; }

  const ExpPoly& gamma(int k, int i, int j) const { return gamma_.at(k, i, j); }
  void set_gamma(int k, int i, int j, ExpPoly value) {
    if (value.dim() != dim()) throw DimensionMismatch("christoffel entry dimension");
    gamma_.at(k, i, j) = std::move(value);
  }

  bool operator==(const Connection& o) const {
    return domain_ == o.domain_ && gamma_.entries == o.gamma_.entries;
  }
  bool operator!=(const Connection& o) const { return !(*this == o); }

  /// T^k_{ij} = Gamma^k_{ij} - Gamma^k_{ji} (coordinate frame).
  Tensor3 torsion() const {
    const int n = dim();
    Tensor3 t(n);
    for (int k = 0; k < n; ++k)
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          t.at(k, i, j) = gamma_.at(k, i, j) - gamma_.at(k, j, i);
    return t;
  }

  /// R^l_{kij} = d_i G^l_{jk} - d_j G^l_{ik} + sum_m (G^m_{jk} G^l_{im} - G^m_{ik} G^l_{jm}).
  Tensor4 curvature() const {
    const int n = dim();
    Tensor4 r(n);
    for (int l = 0; l < n; ++l)
      for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i)
          for (int j = 0; j < n; ++j) {
            ExpPoly e = gamma_.at(l, j, k).diff(i) - gamma_.at(l, i, k).diff(j);
            for (int m = 0; m < n; ++m) {
              e += gamma_.at(m, j, k) * gamma_.at(l, i, m);
              e -= gamma_.at(m, i, k) * gamma_.at(l, j, m);
            }
            r.at(l, k, i, j) = std::move(e);
          }
    return r;
  }

  bool is_flat_affine() const { return torsion().is_zero() && curvature().is_zero(); }

private:
  Domain domain_;
  Tensor3 gamma_;
};

/// (nabla_X Y)^k = sum_i X^i d_i Y^k + sum_{ij} Gamma^k_{ij} X^i Y^j.
inline VectorField covariant_derivative(const Connection& c, const VectorField& x,
                                        const VectorField& y) {
  if (x.domain() != c.domain() || y.domain() != c.domain())
    throw DimensionMismatch("covariant derivative arguments live on different domains");
  const int n = c.dim();
  std::vector<ExpPoly> comps(n, ExpPoly(n));
  for (int k = 0; k < n; ++k) {
    for (int i = 0; i < n; ++i) {
      comps[k] += x.component(i) * y.component(k).diff(i);
      for (int j = 0; j < n; ++j) {
        const ExpPoly& g = c.gamma(k, i, j);
        if (g.is_zero()) continue;
        comps[k] += g * x.component(i) * y.component(j);
      }
    }
  }
  return VectorField(c.domain(), std::move(comps));
}

/// Smooth map with its Jacobian and inverse Jacobian, all inside the exp-poly
/// algebra. The caller supplies Jinv; construction verifies J = dF and
/// J * Jinv = I structurally rather than inverting symbolically.
class DiffeoData {
public:
  static DiffeoData checked(std::vector<ExpPoly> f, std::vector<ExpPoly> j,
                            std::vector<ExpPoly> j_inv) {
    DiffeoData d;
    d.f_ = std::move(f);
    d.j_ = std::move(j);
    d.j_inv_ = std::move(j_inv);
    d.verify();
    return d;
  }

  /// Derives J = dF and inverts it when det(J) is a unit of the algebra.
  static DiffeoData from_components(std::vector<ExpPoly> f) {
    const int n = static_cast<int>(f.size());
    std::vector<ExpPoly> j(n * n, ExpPoly(n));
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) j[a * n + b] = f[a].diff(b);
    if (n != 2)
      throw CompositionOutsideAlgebra("symbolic Jacobian inversion implemented for dim 2 only");
    ExpPoly detj = j[0] * j[3] - j[1] * j[2];
    auto det_inv = detj.unit_inverse();
    if (!det_inv)
      throw CompositionOutsideAlgebra(
          "Jacobian determinant is not a unit of the exp-poly algebra");
    std::vector<ExpPoly> j_inv(4, ExpPoly(n));
    j_inv[0] = j[3] * *det_inv;
    j_inv[1] = (Scalar(-1) * j[1]) * *det_inv;
    j_inv[2] = (Scalar(-1) * j[2]) * *det_inv;
    j_inv[3] = j[0] * *det_inv;
    DiffeoData d;
    d.f_ = std::move(f);
    d.j_ = std::move(j);
    d.j_inv_ = std::move(j_inv);
    d.verify();
    return d;
  }

  static DiffeoData from_affine(const AffineMap& t) {
    const int n = static_cast<int>(t.dim());
    std::vector<ExpPoly> f;
    f.reserve(n);
    for (int i = 0; i < n; ++i) {
      ExpPoly c = ExpPoly::constant(n, t.translation_part()[i]);
      for (int j = 0; j < n; ++j)
        if (!t.linear_part().at(i, j).is_zero())
          c += t.linear_part().at(i, j) * ExpPoly::coordinate(n, j);
      f.push_back(std::move(c));
    }
    auto a_inv = inverse(t.linear_part());
    if (!a_inv) throw SingularMap("affine map is not invertible");
    std::vector<ExpPoly> j(n * n, ExpPoly(n)), j_inv(n * n, ExpPoly(n));
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) {
        j[a * n + b] = ExpPoly::constant(n, t.linear_part().at(a, b));
        j_inv[a * n + b] = ExpPoly::constant(n, a_inv->at(a, b));
      }
    DiffeoData d;
    d.f_ = std::move(f);
    d.j_ = std::move(j);
    d.j_inv_ = std::move(j_inv);
    d.affine_ = t;
    return d;
  }

  int dim() const { return static_cast<int>(f_.size()); }
  const std::vector<ExpPoly>& components() const { return f_; }
  const ExpPoly& jacobian(int a, int b) const { return j_[a * dim() + b]; }
  const ExpPoly& jacobian_inverse(int a, int b) const { return j_inv_[a * dim() + b]; }
  const std::optional<AffineMap>& as_affine() const { return affine_; }

  /// g ∘ F for an exp-poly g defined on the target coordinates. Stays in the
  /// algebra when g is constant, or when g is polynomial, or when F itself is
  /// affine; everything else is rejected.
  ExpPoly compose_into(const ExpPoly& g) const {
    if (g.is_constant()) return g;
    if (affine_) return g.compose_affine(*affine_);
    if (g.is_polynomial()) return g.compose_components(f_);
    throw CompositionOutsideAlgebra(
        "composition of exponential symbols with a non-affine map leaves the algebra");
  }

  std::vector<double> eval_double(const std::vector<double>& p,
                                  const std::map<std::string, double>& env) const {
    std::vector<double> out(dim());
    for (int i = 0; i < dim(); ++i) out[i] = f_[i].eval_double(p, env);
    return out;
  }

private:
  void verify() const {
    const int n = dim();
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        if (j_[a * n + b] != f_[a].diff(b))
          throw Error("DiffeoData: supplied Jacobian is not the derivative of F");
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) {
        ExpPoly dot(n);
        for (int m = 0; m < n; ++m) dot += j_[a * n + m] * j_inv_[m * n + b];
        const ExpPoly expected =
            a == b ? ExpPoly::constant(n, Scalar(1)) : ExpPoly(n);
        if (dot != expected) throw Error("DiffeoData: J * Jinv is not the identity");
      }
  }

  std::vector<ExpPoly> f_, j_, j_inv_;
  std::optional<AffineMap> affine_;
};

/// Pullback Christoffel symbols
///   G~^k_{ij} = sum_a Jinv^k_a ( d_i J^a_j + sum_{bc} (G^a_{bc} ∘ F) J^b_i J^c_j ).
inline Connection pullback_connection(const Connection& c, const DiffeoData& d,
                                      const Domain& source_domain) {
  const int n = c.dim();
  if (d.dim() != n || source_domain.dim != n)
    throw DimensionMismatch("pullback dimension mismatch");
  Connection result(source_domain);
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        ExpPoly acc(n);
        for (int a = 0; a < n; ++a) {
          ExpPoly inner = d.jacobian(a, j).diff(i);
          for (int b = 0; b < n; ++b)
            for (int cc = 0; cc < n; ++cc) {
              const ExpPoly& g = c.gamma(a, b, cc);
              if (g.is_zero()) continue;
              inner += d.compose_into(g) * d.jacobian(b, i) * d.jacobian(cc, j);
            }
          acc += d.jacobian_inverse(k, a) * inner;
        }
        result.set_gamma(k, i, j, std::move(acc));
      }
  return result;
}

/// F is affine from src to dst iff the pullback of dst along F equals src.
inline bool is_affine_map(const DiffeoData& f, const Connection& src, const Connection& dst) {
  return pullback_connection(dst, f, src.domain()) == src;
}

inline bool is_affine_map(const AffineMap& f, const Connection& src, const Connection& dst) {
  return is_affine_map(DiffeoData::from_affine(f), src, dst);
}

} // namespace flataff
