#pragma once

#include <string>
#include <vector>

#include "flataff/matrix.hpp"

namespace flataff {

/// Finite-dimensional algebra given by structure constants of a bracket and a
/// bilinear product on the same space. The bracket must be antisymmetric;
/// nothing else (Jacobi, left symmetry, ...) is assumed, everything is
/// checkable.
class ProductAlgebra {
public:
  ProductAlgebra(int dim, std::vector<Scalar> bracket_constants,
                 std::vector<Scalar> product_constants, std::vector<std::string> labels = {})
      : dim_(dim), bracket_(std::move(bracket_constants)),
        product_(std::move(product_constants)), labels_(std::move(labels)) {
    const std::size_t need = static_cast<std::size_t>(dim) * dim * dim;
    if (bracket_.size() != need || product_.size() != need)
      throw DimensionMismatch("structure constant count");
    if (labels_.empty())
      for (int i = 0; i < dim_; ++i) labels_.push_back("e" + std::to_string(i + 1));
    for (int i = 0; i < dim_; ++i)
      for (int j = 0; j < dim_; ++j)
        for (int k = 0; k < dim_; ++k)
          if (bracket(i, j, k) != -bracket(j, i, k))
            throw Error("bracket constants are not antisymmetric");
  }

  static ProductAlgebra zero(int dim) {
    const std::size_t need = static_cast<std::size_t>(dim) * dim * dim;
    return ProductAlgebra(dim, std::vector<Scalar>(need), std::vector<Scalar>(need));
  }

  int dim() const { return dim_; }
  const std::vector<std::string>& labels() const { return labels_; }

  /// coefficient of e_k in [e_i, e_j]
  const Scalar& bracket(int i, int j, int k) const {
    return bracket_[(i * dim_ + j) * dim_ + k];
  }
  /// coefficient of e_k in e_i * e_j
  const Scalar& product(int i, int j, int k) const {
    return product_[(i * dim_ + j) * dim_ + k];
  }
  void set_bracket(int i, int j, int k, Scalar v) {
    bracket_[(i * dim_ + j) * dim_ + k] = std::move(v);
  }
  void set_product(int i, int j, int k, Scalar v) {
    product_[(i * dim_ + j) * dim_ + k] = std::move(v);
  }

  std::vector<Scalar> mul(const std::vector<Scalar>& x, const std::vector<Scalar>& y) const {
    return bilinear(product_, x, y);
  }
  std::vector<Scalar> br(const std::vector<Scalar>& x, const std::vector<Scalar>& y) const {
    return bilinear(bracket_, x, y);
  }

private:
  std::vector<Scalar> bilinear(const std::vector<Scalar>& c, const std::vector<Scalar>& x,
                               const std::vector<Scalar>& y) const {
    if (static_cast<int>(x.size()) != dim_ || static_cast<int>(y.size()) != dim_)
      throw DimensionMismatch("algebra element size");
    std::vector<Scalar> out(dim_);
    for (int i = 0; i < dim_; ++i) {
      if (x[i].is_zero()) continue;
      for (int j = 0; j < dim_; ++j) {
        if (y[j].is_zero()) continue;
        const Scalar f = x[i] * y[j];
        for (int k = 0; k < dim_; ++k) {
          const Scalar& s = c[(i * dim_ + j) * dim_ + k];
          if (!s.is_zero()) out[k] += f * s;
        }
      }
    }
    return out;
  }

  int dim_;
  std::vector<Scalar> bracket_, product_;
  std::vector<std::string> labels_;
};

/// Subspace given by a spanning list of vectors (checked independent).
struct SubspaceSpec {
  std::vector<std::vector<Scalar>> vectors;

  static SubspaceSpec of(std::vector<std::vector<Scalar>> vectors, int ambient_dim) {
    for (const auto& v : vectors)
      if (static_cast<int>(v.size()) != ambient_dim)
        throw DimensionMismatch("subspace vector size");
    if (!vectors.empty()) {
      ScalarMatrix m(vectors.size(), ambient_dim);
      for (std::size_t i = 0; i < vectors.size(); ++i)
        for (int j = 0; j < ambient_dim; ++j) m.at(i, j) = vectors[i][j];
      if (rank(m) != vectors.size()) throw Error("subspace vectors are not independent");
    }
    return SubspaceSpec{std::move(vectors)};
  }

  std::size_t dim() const { return vectors.size(); }
};

namespace detail {

/// Row-echelon reducer for repeated exact membership tests.
class EchelonSpan {
public:
  EchelonSpan(const std::vector<std::vector<Scalar>>& vectors, int ambient_dim)
      : ambient_(ambient_dim) {
    if (!vectors.empty()) {
      ScalarMatrix m(vectors.size(), ambient_dim);
      for (std::size_t i = 0; i < vectors.size(); ++i)
        for (int j = 0; j < ambient_dim; ++j) m.at(i, j) = vectors[i][j];
      RrefResult r = rref(std::move(m));
      for (std::size_t p = 0; p < r.pivot_cols.size(); ++p) {
        std::vector<Scalar> row(ambient_dim);
        for (int j = 0; j < ambient_dim; ++j) row[j] = r.mat.at(p, j);
        rows_.push_back(std::move(row));
        pivots_.push_back(r.pivot_cols[p]);
      }
    }
  }

  /// v reduced modulo the span; zero iff v lies in the span.
  std::vector<Scalar> reduce(std::vector<Scalar> v) const {
    for (std::size_t p = 0; p < rows_.size(); ++p) {
      const Scalar& c = v[pivots_[p]];
      if (c.is_zero()) continue;
      const Scalar f = c;
      for (int j = 0; j < ambient_; ++j)
        if (!rows_[p][j].is_zero()) v[j] -= f * rows_[p][j];
    }
    return v;
  }

  bool contains(const std::vector<Scalar>& v) const {
    for (const Scalar& c : reduce(v))
      if (!c.is_zero()) return false;
    return true;
  }

  const std::vector<std::size_t>& pivots() const { return pivots_; }

private:
  int ambient_;
  std::vector<std::vector<Scalar>> rows_;
  std::vector<std::size_t> pivots_;
};

inline std::vector<Scalar> basis_vector(int dim, int i) {
  std::vector<Scalar> v(dim);
  v[i] = Scalar(1);
  return v;
}

} // namespace detail

/// Torsion-free pairing of bracket and product: c^k_ij = p^k_ij - p^k_ji.
inline bool check_torsion_free_product(const ProductAlgebra& a) {
  for (int i = 0; i < a.dim(); ++i)
    for (int j = 0; j < a.dim(); ++j)
      for (int k = 0; k < a.dim(); ++k)
        if (a.bracket(i, j, k) != a.product(i, j, k) - a.product(j, i, k)) return false;
  return true;
}

/// Flatness identity [X,Y]Z = X(YZ) - Y(XZ) on all basis triples.
inline bool check_flat_product(const ProductAlgebra& a) {
  const int n = a.dim();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        std::vector<Scalar> lhs(n), rhs(n);
        for (int m = 0; m < n; ++m) {
          if (!a.bracket(i, j, m).is_zero())
            for (int l = 0; l < n; ++l) lhs[l] += a.bracket(i, j, m) * a.product(m, k, l);
          if (!a.product(j, k, m).is_zero())
            for (int l = 0; l < n; ++l) rhs[l] += a.product(j, k, m) * a.product(i, m, l);
          if (!a.product(i, k, m).is_zero())
            for (int l = 0; l < n; ++l) rhs[l] -= a.product(i, k, m) * a.product(j, m, l);
        }
        if (lhs != rhs) return false;
      }
  return true;
}

/// Left symmetry: (XY)Z - (YX)Z = X(YZ) - Y(XZ) on all basis triples.
inline bool check_left_symmetric(const ProductAlgebra& a) {
  const int n = a.dim();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        std::vector<Scalar> lhs(n), rhs(n);
        for (int m = 0; m < n; ++m) {
          const Scalar comm = a.product(i, j, m) - a.product(j, i, m);
          if (!comm.is_zero())
            for (int l = 0; l < n; ++l) lhs[l] += comm * a.product(m, k, l);
          if (!a.product(j, k, m).is_zero())
            for (int l = 0; l < n; ++l) rhs[l] += a.product(j, k, m) * a.product(i, m, l);
          if (!a.product(i, k, m).is_zero())
            for (int l = 0; l < n; ++l) rhs[l] -= a.product(i, k, m) * a.product(j, m, l);
        }
        if (lhs != rhs) return false;
      }
  return true;
}

/// Associativity (XY)Z = X(YZ) on all basis triples.
inline bool check_associative(const ProductAlgebra& a) {
  const int n = a.dim();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        std::vector<Scalar> lhs(n), rhs(n);
        for (int m = 0; m < n; ++m) {
          if (!a.product(i, j, m).is_zero())
            for (int l = 0; l < n; ++l) lhs[l] += a.product(i, j, m) * a.product(m, k, l);
          if (!a.product(j, k, m).is_zero())
            for (int l = 0; l < n; ++l) rhs[l] += a.product(j, k, m) * a.product(i, m, l);
        }
        if (lhs != rhs) return false;
      }
  return true;
}

enum class AbsorptionSide { g_times_h, h_times_g };

/// g_times_h: Y*X in h for all Y in g, X in h.
/// h_times_g: X*Y in h for all X in h, Y in g.
inline bool check_absorption(const ProductAlgebra& a, const SubspaceSpec& h,
                             AbsorptionSide side) {
  const detail::EchelonSpan span(h.vectors, a.dim());
  for (int j = 0; j < a.dim(); ++j) {
    const auto ej = detail::basis_vector(a.dim(), j);
    for (const auto& hv : h.vectors) {
      const auto prod = side == AbsorptionSide::g_times_h ? a.mul(ej, hv) : a.mul(hv, ej);
      if (!span.contains(prod)) return false;
    }
  }
  return true;
}

/// Matrices of L_X(Y + h) = X*Y + h on the quotient by h, in the echelon
/// coordinate completion. Flags carry the verdicts: well_defined iff
/// g*h is absorbed into h, condition_ii iff X*Y = [Y,X] mod h for X in h.
struct InducedLMap {
  int quotient_dim = 0;
  std::vector<std::size_t> quotient_coords;  // non-pivot coordinates
  std::vector<ScalarMatrix> ops;             // one q x q matrix per basis vector of g
  bool well_defined = false;
  bool condition_ii = false;
};

inline InducedLMap induced_L_map(const ProductAlgebra& a, const SubspaceSpec& h) {
  const int n = a.dim();
  const detail::EchelonSpan span(h.vectors, n);
  InducedLMap result;
  std::vector<bool> is_pivot(n, false);
  for (std::size_t p : span.pivots()) is_pivot[p] = true;
  for (int j = 0; j < n; ++j)
    if (!is_pivot[j]) result.quotient_coords.push_back(j);
  result.quotient_dim = static_cast<int>(result.quotient_coords.size());

  const int q = result.quotient_dim;
  for (int x = 0; x < n; ++x) {
    ScalarMatrix op(q, q);
    const auto ex = detail::basis_vector(n, x);
    for (int b = 0; b < q; ++b) {
      const auto ey = detail::basis_vector(n, static_cast<int>(result.quotient_coords[b]));
      const auto reduced = span.reduce(a.mul(ex, ey));
      for (int r = 0; r < q; ++r) op.at(r, b) = reduced[result.quotient_coords[r]];
    }
    result.ops.push_back(std::move(op));
  }

  result.well_defined = check_absorption(a, h, AbsorptionSide::g_times_h);

  result.condition_ii = true;
  for (const auto& hv : h.vectors)
    for (int j = 0; j < n && result.condition_ii; ++j) {
      const auto ej = detail::basis_vector(n, j);
      auto diff = a.mul(hv, ej);
      const auto br = a.br(ej, hv);
      for (int k = 0; k < n; ++k) diff[k] -= br[k];
      result.condition_ii = span.contains(diff);
    }
  return result;
}

/// g = h (+) m as vector spaces and [h, m] inside m.
inline bool reductive_split_check(const ProductAlgebra& a, const SubspaceSpec& h,
                                  const SubspaceSpec& m) {
  const int n = a.dim();
  if (h.dim() + m.dim() != static_cast<std::size_t>(n)) return false;
  std::vector<std::vector<Scalar>> joint = h.vectors;
  joint.insert(joint.end(), m.vectors.begin(), m.vectors.end());
  ScalarMatrix jm(joint.size(), n);
  for (std::size_t i = 0; i < joint.size(); ++i)
    for (int j = 0; j < n; ++j) jm.at(i, j) = joint[i][j];
  if (rank(jm) != static_cast<std::size_t>(n)) return false;
  const detail::EchelonSpan mspan(m.vectors, n);
  for (const auto& hv : h.vectors)
    for (const auto& mv : m.vectors)
      if (!mspan.contains(a.br(hv, mv))) return false;
  return true;
}

/// The m-projection of the product along g = h (+) m, with the infinitesimal
/// equivariance flag: ad_X restricted to m is a derivation of the projected
/// product for every X in h.
struct ReductiveProduct {
  ProductAlgebra algebra;  // on m, in the coordinates of m's basis
  bool ad_derivation = false;
};

inline ReductiveProduct reductive_product(const ProductAlgebra& a, const SubspaceSpec& h,
                                          const SubspaceSpec& m) {
  if (!reductive_split_check(a, h, m))
    throw NotReductive("subspaces do not form a reductive splitting");
  const int n = a.dim();
  const int q = static_cast<int>(m.dim());

  // coordinates of the m-component along the splitting: solve in the joint basis
  ScalarMatrix joint(n, n);
  for (std::size_t c = 0; c < h.dim(); ++c)
    for (int r = 0; r < n; ++r) joint.at(r, c) = h.vectors[c][r];
  for (int c = 0; c < q; ++c)
    for (int r = 0; r < n; ++r) joint.at(r, h.dim() + c) = m.vectors[c][r];
  const auto joint_inv = inverse(joint);
  if (!joint_inv) throw NotReductive("splitting matrix is singular");
  auto m_coords = [&](const std::vector<Scalar>& v) {
    const auto full = joint_inv->apply(v);
    return std::vector<Scalar>(full.begin() + h.dim(), full.end());
  };

  const std::size_t need = static_cast<std::size_t>(q) * q * q;
  std::vector<Scalar> product(need), bracket(need);
  for (int i = 0; i < q; ++i)
    for (int j = 0; j < q; ++j) {
      const auto pm = m_coords(a.mul(m.vectors[i], m.vectors[j]));
      const auto bm = m_coords(a.br(m.vectors[i], m.vectors[j]));
      for (int k = 0; k < q; ++k) {
        product[(i * q + j) * q + k] = pm[k];
        bracket[(i * q + j) * q + k] = bm[k];
      }
    }
  ReductiveProduct out{ProductAlgebra(q, std::move(bracket), std::move(product)), true};

  // ad_X(Y . Z) = ad_X(Y) . Z + Y . ad_X(Z) in m-coordinates
  auto mul_m = [&](const std::vector<Scalar>& x, const std::vector<Scalar>& y) {
    return out.algebra.mul(x, y);
  };
  for (const auto& hv : h.vectors) {
    for (int i = 0; i < q && out.ad_derivation; ++i)
      for (int j = 0; j < q && out.ad_derivation; ++j) {
        const auto ei = detail::basis_vector(q, i);
        const auto ej = detail::basis_vector(q, j);
        const auto ad_i = m_coords(a.br(hv, m.vectors[i]));
        const auto ad_j = m_coords(a.br(hv, m.vectors[j]));
        // ad of the product: express e_i . e_j back in g, bracket, project
        std::vector<Scalar> prod_g(n);
        const auto pm = mul_m(ei, ej);
        for (int k = 0; k < q; ++k)
          for (int r = 0; r < n; ++r) prod_g[r] += pm[k] * m.vectors[k][r];
        const auto lhs = m_coords(a.br(hv, prod_g));
        auto rhs = mul_m(ad_i, ej);
        const auto rhs2 = mul_m(ei, ad_j);
        for (int k = 0; k < q; ++k) rhs[k] += rhs2[k];
        out.ad_derivation = lhs == rhs;
      }
  }
  return out;
}

} // namespace flataff
