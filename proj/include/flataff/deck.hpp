#pragma once

#include <string>
#include <vector>

#include "flataff/connection.hpp"
#include "flataff/infaff.hpp"

namespace flataff {

/// Symbolic domain-preservation test driven by parameter positivity flags.
/// Signs that cannot be resolved are reported, never guessed.
inline bool preserves_domain(const AffineMap& t, const Domain& d) {
  if (static_cast<int>(t.dim()) != d.dim) throw DimensionMismatch("map/domain dimensions");
  const auto& a = t.linear_part();
  const auto& b = t.translation_part();
  switch (d.kind) {
    case Domain::Kind::full_space:
      return true;
    case Domain::Kind::upper_half_plane: {
      // shape (a x + b y + c, d y) with d > 0
      if (!a.at(1, 0).is_zero() || !b[1].is_zero()) return false;
      switch (a.at(1, 1).sign()) {
        case Sign::positive: return true;
        case Sign::negative: return false;
        case Sign::zero: return false;
        case Sign::unknown:
          throw UndecidableSign("sign of the y-scaling cannot be resolved from positivity flags");
      }
      return false;
    }
    case Domain::Kind::quadrant: {
      // zero translation, entrywise nonnegative invertible linear part:
      // maps the open quadrant into itself
      if (!b[0].is_zero() || !b[1].is_zero()) return false;
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
          switch (a.at(i, j).sign()) {
            case Sign::positive:
            case Sign::zero:
              break;
            case Sign::negative:
              return false;
            case Sign::unknown:
              throw UndecidableSign("sign of a linear entry cannot be resolved from positivity flags");
          }
        }
      return true;
    }
    case Domain::Kind::punctured_plane:
      return b[0].is_zero() && b[1].is_zero();
  }
  return false;
}

/// Discrete affine action given by generators; every generator must preserve
/// the domain and be invertible (the AffineMap type already enforces the
/// latter).
struct DeckAction {
  Domain domain;
  std::vector<AffineMap> generators;
  std::string name;

  static DeckAction checked(Domain domain, std::vector<AffineMap> generators,
                            std::string name = {}) {
    for (const AffineMap& g : generators)
      if (!preserves_domain(g, domain))
        throw InvalidAction("generator of '" + name + "' does not preserve the domain");
    return DeckAction{domain, std::move(generators), std::move(name)};
  }
};

/// Matrix of the pushforward X -> T_*X restricted to the given affine fields,
/// expressed in the classical affine coordinates (n^2 + n rows).
inline ScalarMatrix pushforward_matrix(const AffineMap& t,
                                       const std::vector<VectorField>& fields) {
  if (fields.empty()) return ScalarMatrix(0, 0);
  const int n = fields[0].dim();
  ScalarMatrix m(n * n + n, fields.size());
  for (std::size_t c = 0; c < fields.size(); ++c) {
    const auto coords = pushforward_affine_field(fields[c], t).affine_coordinates();
    for (std::size_t r = 0; r < coords.size(); ++r) m.at(r, c) = coords[r];
  }
  return m;
}

/// Pushforward representation of T on the full classical field space.
inline ScalarMatrix pushforward_representation(const AffineMap& t) {
  const int n = static_cast<int>(t.dim());
  return pushforward_matrix(t, classical_aff_basis(n).fields);
}

namespace detail {

inline std::vector<VectorField> combine(const std::vector<VectorField>& basis,
                                        const std::vector<std::vector<Scalar>>& coeffs) {
  std::vector<VectorField> out;
  out.reserve(coeffs.size());
  for (const auto& v : coeffs) {
    VectorField f = VectorField::zero(basis[0].domain());
    for (std::size_t m = 0; m < basis.size(); ++m)
      if (!v[m].is_zero()) f = f + v[m] * basis[m];
    out.push_back(std::move(f));
  }
  return out;
}

} // namespace detail

/// Echelon basis of {X in span(ambient) : T_*X = X for every generator}.
/// The fixed-point equations are posed in the enclosing coefficient space, so
/// the ambient span need not be stable under the pushforwards.
inline std::vector<VectorField> invariant_subalgebra(const DeckAction& action,
                                                     const std::vector<VectorField>& ambient) {
  if (ambient.empty()) return {};
  for (const VectorField& f : ambient)
    if (f.domain() != action.domain)
      throw DimensionMismatch("ambient fields live on a different domain than the action");
  if (action.generators.empty()) return ambient;

  bool all_affine = true;
  for (const VectorField& f : ambient) all_affine = all_affine && f.is_affine();

  if (all_affine) {
    const int n = action.domain.dim;
    const std::size_t rows_per_gen = n * n + n;
    ScalarMatrix system(rows_per_gen * action.generators.size(), ambient.size());
    for (std::size_t g = 0; g < action.generators.size(); ++g) {
      const ScalarMatrix pushed = pushforward_matrix(action.generators[g], ambient);
      for (std::size_t m = 0; m < ambient.size(); ++m) {
        const auto base = ambient[m].affine_coordinates();
        for (std::size_t r = 0; r < rows_per_gen; ++r)
          system.at(g * rows_per_gen + r, m) = pushed.at(r, m) - base[r];
      }
    }
    return detail::combine(ambient, nullspace(system));
  }

  // general exp-poly ambient: coefficients over the union of occurring keys
  std::vector<std::vector<VectorField>> pushed(action.generators.size());
  try {
    for (std::size_t g = 0; g < action.generators.size(); ++g)
      for (const VectorField& f : ambient)
        pushed[g].push_back(pushforward_field(f, action.generators[g]));
  } catch (const Error& e) {
    throw ClosureViolation(std::string("pushforward is not computable in the ambient algebra: ") +
                           e.what());
  }
  std::map<std::pair<int, ExpKey>, std::size_t> keys;
  auto collect = [&keys](const VectorField& f) {
    for (int i = 0; i < f.dim(); ++i)
      for (const auto& [k, c] : f.component(i).terms())
        keys.emplace(std::make_pair(i, k), keys.size());
  };
  for (const VectorField& f : ambient) collect(f);
  for (const auto& fs : pushed)
    for (const VectorField& f : fs) collect(f);

  ScalarMatrix system(keys.size() * action.generators.size(), ambient.size());
  for (std::size_t g = 0; g < action.generators.size(); ++g)
    for (std::size_t m = 0; m < ambient.size(); ++m) {
      const VectorField diff = pushed[g][m] - ambient[m];
      for (int i = 0; i < diff.dim(); ++i)
        for (const auto& [k, c] : diff.component(i).terms())
          system.at(g * keys.size() + keys.at(std::make_pair(i, k)), m) = c;
    }
  return detail::combine(ambient, nullspace(system));
}

/// Lift through an etale map: L(X) = Jinv * (X ∘ F); satisfies J L(X) = X ∘ F.
inline VectorField lift_through_etale(const VectorField& x, const DiffeoData& d,
                                      const Domain& lifted_domain) {
  const int n = d.dim();
  if (x.dim() != n || lifted_domain.dim != n) throw DimensionMismatch("lift dimensions");
  std::vector<ExpPoly> x_of_f;
  x_of_f.reserve(n);
  for (int i = 0; i < n; ++i) x_of_f.push_back(d.compose_into(x.component(i)));
  std::vector<ExpPoly> comps(n, ExpPoly(n));
  for (int i = 0; i < n; ++i)
    for (int a = 0; a < n; ++a) {
      const ExpPoly& jinv = d.jacobian_inverse(i, a);
      if (jinv.is_zero() || x_of_f[a].is_zero()) continue;
      comps[i] += jinv * x_of_f[a];
    }
  return VectorField(lifted_domain, std::move(comps));
}

} // namespace flataff
