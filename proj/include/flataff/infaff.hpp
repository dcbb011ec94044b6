#pragma once

#include <algorithm>
#include <map>
#include <tuple>
#include <vector>

#include "flataff/connection.hpp"

namespace flataff {

/// Finite-dimensional search space for the linear equation cutting out the
/// infinitesimal affine transformations: total polynomial degree bound plus a
/// finite set of exponential weights (the zero weight is always included).
struct Ansatz {
  int max_degree = 2;
  std::vector<std::vector<Rational>> weights;  // deduplicated, sorted, contains 0

  static Ansatz make(int dim, int max_degree,
                     std::vector<std::vector<Rational>> weight_list = {}) {
    if (max_degree < 0) throw Error("ansatz degree must be nonnegative");
    Ansatz a;
    a.max_degree = max_degree;
    weight_list.push_back(std::vector<Rational>(dim, Rational(0)));
    for (const auto& w : weight_list)
      if (static_cast<int>(w.size()) != dim) throw DimensionMismatch("ansatz weight size");
    std::sort(weight_list.begin(), weight_list.end());
    weight_list.erase(std::unique(weight_list.begin(), weight_list.end()), weight_list.end());
    a.weights = std::move(weight_list);
    return a;
  }

  /// Degree 2 and the negated weights occurring in the connection's symbols.
  static Ansatz default_for(const Connection& c) {
    std::vector<std::vector<Rational>> ws;
    const int n = c.dim();
    for (int k = 0; k < n; ++k)
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          for (const auto& [key, coef] : c.gamma(k, i, j).terms())
            if (!key.weight_is_zero()) {
              std::vector<Rational> neg(n);
              for (int m = 0; m < n; ++m) neg[m] = -key.weight[m];
              ws.push_back(std::move(neg));
            }
    return make(n, 2, std::move(ws));
  }
};

/// Residual of the flat-affine symmetry equation for one coordinate pair:
/// R(i,j) = nabla_{nabla_{d_i} d_j} X - nabla_{d_i} nabla_{d_j} X.
struct InfAffResidual {
  int dim;
  std::vector<VectorField> entries;  // n^2, index i*n + j

  const VectorField& at(int i, int j) const { return entries[i * dim + j]; }
  bool is_zero() const {
    for (const VectorField& f : entries)
      if (!f.is_zero()) return false;
    return true;
  }
};

namespace detail {

inline InfAffResidual residual_unchecked(const Connection& c, const VectorField& x) {
  const int n = c.dim();
  std::vector<VectorField> w;  // w[j] = nabla_{d_j} X
  w.reserve(n);
  for (int j = 0; j < n; ++j)
    w.push_back(covariant_derivative(c, VectorField::coordinate(c.domain(), j), x));
  InfAffResidual r{n, {}};
  r.entries.reserve(n * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      VectorField lhs = VectorField::zero(c.domain());
      for (int k = 0; k < n; ++k) {
        const ExpPoly& g = c.gamma(k, i, j);
        if (g.is_zero()) continue;
        std::vector<ExpPoly> comps;
        comps.reserve(n);
        for (int m = 0; m < n; ++m) comps.push_back(g * w[k].component(m));
        lhs = lhs + VectorField(c.domain(), std::move(comps));
      }
      const VectorField rhs =
          covariant_derivative(c, VectorField::coordinate(c.domain(), i), w[j]);
      r.entries.push_back(lhs - rhs);
    }
  return r;
}

inline void require_flat_affine(const Connection& c) {
  if (!c.is_flat_affine())
    throw NotFlatAffine("the symmetry equation in this form requires a flat affine connection");
}

/// All exponent vectors with total degree <= max_degree, graded then lex.
inline std::vector<std::vector<int>> monomials_up_to(int dim, int max_degree) {
  std::vector<std::vector<int>> out;
  std::vector<int> tmp(dim, 0);
  auto rec = [&](auto&& self, int pos, int remaining) -> void {
    if (pos == dim - 1) {
      tmp[pos] = remaining;
      out.push_back(tmp);
      return;
    }
    for (int e = remaining; e >= 0; --e) {
      tmp[pos] = e;
      self(self, pos + 1, remaining - e);
    }
  };
  for (int d = 0; d <= max_degree; ++d) rec(rec, 0, d);
  return out;
}

} // namespace detail

inline InfAffResidual infaff_residual(const Connection& c, const VectorField& x) {
  detail::require_flat_affine(c);
  if (x.domain() != c.domain()) throw DimensionMismatch("field domain differs from connection");
  return detail::residual_unchecked(c, x);
}

/// Basis of the infinitesimal affine transformations found inside an ansatz.
struct InfAffBasis {
  Connection connection;
  std::vector<VectorField> fields;
  Ansatz ansatz;

  std::size_t dim() const { return fields.size(); }
};

/// Solves the symmetry equation over the ansatz space; returns the canonical
/// echelon basis of the solution subspace.
inline InfAffBasis solve_infaff(const Connection& c, const Ansatz& ansatz) {
  detail::require_flat_affine(c);
  const int n = c.dim();

  // candidate basis fields x^alpha e^{<w,x>} d_k in a fixed deterministic order
  struct Candidate {
    int component;
    ExpKey key;
  };
  std::vector<Candidate> candidates;
  const auto monos = detail::monomials_up_to(n, ansatz.max_degree);
  for (int k = 0; k < n; ++k)
    for (const auto& w : ansatz.weights)
      for (const auto& alpha : monos)
        candidates.push_back(Candidate{k, ExpKey{alpha, w}});

  // rows of the linear system, keyed by (i, j, component, term key)
  using RowKey = std::tuple<int, int, int, ExpKey>;
  std::map<RowKey, std::size_t> row_index;
  std::vector<InfAffResidual> residuals;
  residuals.reserve(candidates.size());
  for (const Candidate& cand : candidates) {
    VectorField f = VectorField::zero(c.domain());
    std::vector<ExpPoly> comps(n, ExpPoly(n));
    comps[cand.component] = ExpPoly::term(n, cand.key.powers, cand.key.weight, Scalar(1));
    f = VectorField(c.domain(), std::move(comps));
    InfAffResidual r = detail::residual_unchecked(c, f);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int l = 0; l < n; ++l)
          for (const auto& [key, coef] : r.at(i, j).component(l).terms())
            row_index.emplace(RowKey{i, j, l, key}, row_index.size());
    residuals.push_back(std::move(r));
  }

  ScalarMatrix system(row_index.size(), candidates.size());
  for (std::size_t m = 0; m < candidates.size(); ++m) {
    const InfAffResidual& r = residuals[m];
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int l = 0; l < n; ++l)
          for (const auto& [key, coef] : r.at(i, j).component(l).terms())
            system.at(row_index.at(RowKey{i, j, l, key}), m) = coef;
  }

  InfAffBasis basis{c, {}, ansatz};
  for (const auto& coeffs : nullspace(system)) {
    std::vector<ExpPoly> comps(n, ExpPoly(n));
    for (std::size_t m = 0; m < candidates.size(); ++m) {
      if (coeffs[m].is_zero()) continue;
      comps[candidates[m].component] +=
          ExpPoly::term(n, candidates[m].key.powers, candidates[m].key.weight, coeffs[m]);
    }
    VectorField f(c.domain(), std::move(comps));
    if (!detail::residual_unchecked(c, f).is_zero())
      throw Error("internal: solver produced a field with nonzero residual");
    basis.fields.push_back(std::move(f));
  }
  return basis;
}

/// The n^2 + n classical fields x_j d_i and d_i on the standard flat space.
inline InfAffBasis classical_aff_basis(int n) {
  if (n < 1) throw Error("dimension must be at least 1");
  const Domain domain = Domain::full(n);
  const Connection c = Connection::standard(domain);
  InfAffBasis basis{c, {}, Ansatz::make(n, 1)};
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      std::vector<ExpPoly> comps(n, ExpPoly(n));
      comps[i] = ExpPoly::coordinate(n, j);
      basis.fields.emplace_back(domain, std::move(comps));
    }
  for (int i = 0; i < n; ++i) basis.fields.push_back(VectorField::coordinate(domain, i));
  for (const VectorField& f : basis.fields)
    if (!detail::residual_unchecked(c, f).is_zero())
      throw Error("internal: classical field fails the symmetry equation");
  return basis;
}

} // namespace flataff
