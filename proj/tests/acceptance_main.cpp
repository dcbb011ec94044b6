// Acceptance suite: every criterion prints one PASS/FAIL line and the binary
// exits nonzero if any fails. Numeric oracles (finite differences, SVD rank)
// are independent of the symbolic code paths they check.

#include <Eigen/Dense>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <vector>

#include "flataff/flataff.hpp"

using namespace flataff;

namespace {

int g_failures = 0;

template <typename F>
void criterion(int number, const char* label, F&& body) {
  const auto start = std::chrono::steady_clock::now();
  bool ok = false;
  std::string note;
  try {
    ok = body();
  } catch (const std::exception& e) {
    ok = false;
    note = std::string(" (exception: ") + e.what() + ")";
  }
  const double ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
          .count();
  std::printf("[%s] %d. %s (%.0f ms)%s\n", ok ? "PASS" : "FAIL", number, label, ms,
              note.c_str());
  if (!ok) ++g_failures;
}

NumericParamEnv acceptance_env() {
  NumericParamEnv env = NumericParamEnv::defaults();
  env.set("L", 2.0);
  env.set("M", 3.0);
  return env;
}

// numeric fixed-space dimension via SVD rank of the stacked pushforward
// difference, at env-instantiated parameter values
int numeric_fixed_dimension(const SurfaceEntry& entry, const NumericParamEnv& env) {
  const auto& ambient = entry.ambient;
  const int cols = static_cast<int>(ambient.size());
  const int n = entry.action.domain.dim;
  const int rows_per_gen = n * n + n;
  const int rows = rows_per_gen * static_cast<int>(entry.action.generators.size());
  if (rows == 0) return cols;
  Eigen::MatrixXd k(rows, cols);
  for (std::size_t g = 0; g < entry.action.generators.size(); ++g) {
    const ScalarMatrix pushed = pushforward_matrix(entry.action.generators[g], ambient);
    for (int m = 0; m < cols; ++m) {
      const auto base = ambient[m].affine_coordinates();
      for (int r = 0; r < rows_per_gen; ++r)
        k(static_cast<int>(g) * rows_per_gen + r, m) =
            pushed.at(r, m).eval_double(env.values) - base[r].eval_double(env.values);
    }
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(k);
  const auto& sv = svd.singularValues();
  const double scale = sv.size() ? std::max(1.0, sv(0)) : 1.0;
  int rank = 0;
  for (int i = 0; i < sv.size(); ++i)
    if (sv(i) > 1e-8 * scale) ++rank;
  return cols - rank;
}

ProductAlgebra random_commutator_algebra(std::mt19937& rng) {
  std::uniform_int_distribution<int> coef(-2, 2);
  std::uniform_int_distribution<int> idx(0, 2);
  const int d = 3;
  std::vector<Scalar> product(27), bracket(27);
  for (int t = 0; t < 9; ++t) {
    const int v = coef(rng);
    if (v != 0) product[(idx(rng) * d + idx(rng)) * d + idx(rng)] = Scalar(v);
  }
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      for (int k = 0; k < d; ++k)
        bracket[(i * d + j) * d + k] =
            product[(i * d + j) * d + k] - product[(j * d + i) * d + k];
  return ProductAlgebra(d, std::move(bracket), std::move(product));
}

ProductAlgebra random_twisted_truncated_algebra(std::mt19937& rng) {
  // Q[t]/t^4 on the basis t, t^2, t^3, conjugated by a random basis change;
  // associative by construction, bracket the (zero) commutator
  std::uniform_int_distribution<int> entry(-2, 2);
  const int d = 3;
  ScalarMatrix s(d, d);
  for (;;) {
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) s.at(i, j) = Scalar(entry(rng));
    if (!det(s).is_zero()) break;
  }
  const auto s_inv = *inverse(s);
  std::vector<Scalar> product(27), bracket(27);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      std::vector<Scalar> image(d);
      for (int a = 0; a < d; ++a)
        for (int b = 0; b < d; ++b) {
          if (a + b + 1 >= d) continue;
          image[a + b + 1] += s.at(a, i) * s.at(b, j);
        }
      const auto coords = s_inv.apply(image);
      for (int k = 0; k < d; ++k) product[(i * d + j) * d + k] = coords[k];
    }
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      for (int k = 0; k < d; ++k)
        bracket[(i * d + j) * d + k] =
            product[(i * d + j) * d + k] - product[(j * d + i) * d + k];
  return ProductAlgebra(d, std::move(bracket), std::move(product));
}

} // namespace

int main() {
  declare_param("E");
  declare_param("L");
  declare_param("M");

  criterion(1, "classical affine symmetry dimension is n^2+n for n = 1..4", [] {
    for (int n = 1; n <= 4; ++n)
      if (classical_aff_basis(n).dim() != static_cast<std::size_t>(n * n + n)) return false;
    return true;
  });

  criterion(2, "pullback by D(x,y) = (y e^x, e^x) is flat affine and D is affine", [] {
    const auto& ex = etale_example();
    const Connection& g = ex.pulled_back;
    if (!g.torsion().is_zero() || !g.curvature().is_zero()) return false;
    if (!is_affine_map(ex.dev, g, Connection::standard(Domain::full(2)))) return false;

    // finite-difference oracle for the Christoffel symbols at 3 points
    auto dmap = [](double x, double y) {
      return std::array<double, 2>{y * std::exp(x), std::exp(x)};
    };
    const double h = 1e-5;
    const std::array<std::array<double, 2>, 3> pts{{{0.2, 0.9}, {-0.6, 1.4}, {0.4, -0.8}}};
    for (const auto& p : pts) {
      double jac[2][2], hess[2][2][2];
      auto step = [&](double dx, double dy) { return dmap(p[0] + dx, p[1] + dy); };
      for (int a = 0; a < 2; ++a) {
        jac[a][0] = (step(h, 0)[a] - step(-h, 0)[a]) / (2 * h);
        jac[a][1] = (step(0, h)[a] - step(0, -h)[a]) / (2 * h);
        hess[a][0][0] = (step(h, 0)[a] - 2 * step(0, 0)[a] + step(-h, 0)[a]) / (h * h);
        hess[a][1][1] = (step(0, h)[a] - 2 * step(0, 0)[a] + step(0, -h)[a]) / (h * h);
        hess[a][0][1] =
            (step(h, h)[a] - step(h, -h)[a] - step(-h, h)[a] + step(-h, -h)[a]) / (4 * h * h);
        hess[a][1][0] = hess[a][0][1];
      }
      const double det = jac[0][0] * jac[1][1] - jac[0][1] * jac[1][0];
      const double inv[2][2] = {{jac[1][1] / det, -jac[0][1] / det},
                                {-jac[1][0] / det, jac[0][0] / det}};
      for (int k = 0; k < 2; ++k)
        for (int i = 0; i < 2; ++i)
          for (int j = 0; j < 2; ++j) {
            const double oracle = inv[k][0] * hess[0][i][j] + inv[k][1] * hess[1][i][j];
            const double symbolic = g.gamma(k, i, j).eval_double({p[0], p[1]}, {});
            if (std::abs(symbolic - oracle) > 1e-6) return false;
          }
    }
    return true;
  });

  criterion(3, "symmetry solve over the pulled-back connection spans the six lifts", [] {
    const auto& ex = etale_example();
    const InfAffBasis basis = solve_infaff(ex.pulled_back, ex.ansatz);
    if (basis.dim() != 6) return false;
    std::vector<VectorField> expected = ex.lifted_basis;
    expected.insert(expected.end(), ex.incomplete_lifts.begin(), ex.incomplete_lifts.end());
    return same_span(basis.fields, expected);
  });

  criterion(4, "surface table: all 25 invariant dimensions", [] {
    bool ok = true;
    for (const std::string& key : surface_keys()) {
      const SurfaceEntry entry = surface_catalog(key);
      const auto basis = invariant_subalgebra(entry.action, entry.ambient);
      if (static_cast<int>(basis.size()) != entry.expected_dim) {
        std::printf("       %s: dim %zu, expected %d\n", key.c_str(), basis.size(),
                    entry.expected_dim);
        ok = false;
      }
    }
    return ok;
  });

  criterion(5, "closed-form flows: ODE defect < 1e-6, group law < 1e-7 on a 125-point grid",
            [] {
              const auto& ex = etale_example();
              const NumericParamEnv env = NumericParamEnv::defaults();
              FlowGrid grid;
              grid.times = {-0.2, -0.1, 0.0, 0.1, 0.2};
              for (int i = 0; i < 5; ++i)
                for (int j = 0; j < 5; ++j)
                  grid.points.push_back({-0.5 + 0.375 * i, 0.5 + 0.25 * j});
              bool ok = true;
              for (const auto& [field, closed] : ex.flows) {
                const auto report = verify_flow(field, closed.map, env, grid);
                if (report.max_defect_ode >= 1e-6 || report.max_defect_grouplaw >= 1e-7) {
                  std::printf("       %s: ode %.3g, group law %.3g\n", closed.name.c_str(),
                              report.max_defect_ode, report.max_defect_grouplaw);
                  ok = false;
                }
              }
              return ok;
            });

  criterion(6, "completeness probe: lifts complete, pole witnesses within 1e-6", [] {
    const auto& ex = etale_example();
    const NumericParamEnv env = NumericParamEnv::defaults();
    for (const VectorField& f : ex.lifted_basis) {
      const auto verdict = completeness_probe(f, ex.cover, env, 50, 50.0);
      if (verdict.incomplete) {
        std::printf("       unexpected witness for %s at t = %g\n", f.to_string().c_str(),
                    verdict.witness_time);
        return false;
      }
    }
    const auto v5 = completeness_probe(ex.incomplete_lifts[0], ex.cover, env, 50, 50.0);
    if (!v5.incomplete) return false;
    const double t5 = -1.0 / v5.witness_point[1];  // t y + 1 = 0
    if (std::abs(v5.witness_time - t5) > 1e-6) {
      std::printf("       pole witness at %.9f, closed form %.9f\n", v5.witness_time, t5);
      return false;
    }
    const auto v6 = completeness_probe(ex.incomplete_lifts[1], ex.cover, env, 50, 50.0);
    if (!v6.incomplete) return false;
    const double t6 = -std::exp(v6.witness_point[0]);  // e^x + t = 0
    if (std::abs(v6.witness_time - t6) > 1e-6) {
      std::printf("       pole witness at %.9f, closed form %.9f\n", v6.witness_time, t6);
      return false;
    }
    return true;
  });

  criterion(7, "left-symmetric => flat & torsion-free, associative => left-symmetric", [] {
    std::mt19937 rng(987654321);
    int checked = 0, ls_seen = 0, as_seen = 0;
    while (checked < 120) {
      const ProductAlgebra a = (checked % 3 == 0) ? random_twisted_truncated_algebra(rng)
                                                  : random_commutator_algebra(rng);
      ++checked;
      if (check_left_symmetric(a)) {
        ++ls_seen;
        if (!check_flat_product(a) || !check_torsion_free_product(a)) return false;
      }
      if (check_associative(a)) {
        ++as_seen;
        if (!check_left_symmetric(a)) return false;
      }
    }
    // the randomized family must exercise both implications
    return ls_seen >= 20 && as_seen >= 20;
  });

  criterion(8, "invariant dimensions equal the SVD-rank oracle on all 25 surfaces", [] {
    const NumericParamEnv env = acceptance_env();
    for (const std::string& key : surface_keys()) {
      const SurfaceEntry entry = surface_catalog(key);
      const auto symbolic = invariant_subalgebra(entry.action, entry.ambient);
      const int numeric = numeric_fixed_dimension(entry, env);
      if (static_cast<int>(symbolic.size()) != numeric) {
        std::printf("       %s: symbolic %zu vs numeric %d\n", key.c_str(), symbolic.size(),
                    numeric);
        return false;
      }
    }
    return true;
  });

  criterion(9, "symbolic invariant fields commute numerically with their generators", [] {
    const NumericParamEnv env = acceptance_env();
    for (const std::string& key : surface_keys()) {
      const SurfaceEntry entry = surface_catalog(key);
      const auto basis = invariant_subalgebra(entry.action, entry.ambient);
      const auto samples = sample_domain_points(entry.action.domain, 5, 1);
      for (const VectorField& f : basis)
        for (const AffineMap& g : entry.action.generators) {
          const double defect = check_equivariance_numeric(f, g, env, samples,
                                                           entry.action.domain);
          if (defect >= 1e-7) {
            std::printf("       %s: defect %.3g\n", key.c_str(), defect);
            return false;
          }
        }
    }
    return true;
  });

  if (g_failures == 0) {
    std::printf("acceptance: all criteria passed\n");
    return 0;
  }
  std::printf("acceptance: %d criteria FAILED\n", g_failures);
  return 1;
}
