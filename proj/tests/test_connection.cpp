#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "flataff/example_etale.hpp"

using namespace flataff;

namespace {

AffineMap rand_affine(std::mt19937& rng) {
  std::uniform_int_distribution<int> entry(-3, 3);
  for (;;) {
    ScalarMatrix a(2, 2);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) a.at(i, j) = Scalar(entry(rng));
    if (det(a).is_zero()) continue;
    return AffineMap(a, {Scalar(entry(rng)), Scalar(entry(rng))});
  }
}

Connection gamma_tilde() { return etale_example().pulled_back; }

} // namespace

TEST_CASE("torsion", "[connection]") {
  const Domain d = Domain::full(2);
  CHECK(Connection::standard(d).torsion().is_zero());

  Connection c(d);
  c.set_gamma(0, 0, 1, ExpPoly::constant(2, Scalar(1)));
  const Tensor3 t = c.torsion();
  CHECK(t.at(0, 0, 1) == ExpPoly::constant(2, Scalar(1)));
  CHECK(t.at(0, 1, 0) == ExpPoly::constant(2, Scalar(-1)));
  CHECK(t.at(1, 0, 1).is_zero());

  CHECK(gamma_tilde().torsion().is_zero());
}

TEST_CASE("curvature", "[connection]") {
  const Domain d = Domain::full(2);
  CHECK(Connection::standard(d).curvature().is_zero());

  // Gamma^1_11 = x alone is still flat
  Connection cx(d);
  cx.set_gamma(0, 0, 0, ExpPoly::coordinate(2, 0));
  CHECK(cx.curvature().is_zero());

  // Gamma^1_22 = 1, Gamma^2_12 = x produces curvature
  Connection bent(d);
  bent.set_gamma(0, 1, 1, ExpPoly::constant(2, Scalar(1)));
  bent.set_gamma(1, 0, 1, ExpPoly::coordinate(2, 0));
  const Tensor4 r = bent.curvature();
  CHECK(!r.is_zero());
  CHECK(r.at(0, 1, 0, 1) == ExpPoly::constant(2, Scalar(-1)) * ExpPoly::coordinate(2, 0));
}

TEST_CASE("flat affine verdicts", "[connection]") {
  const Domain d = Domain::full(2);
  CHECK(Connection::standard(d).is_flat_affine());

  Connection torsionful(d);
  torsionful.set_gamma(0, 0, 1, ExpPoly::constant(2, Scalar(1)));
  CHECK(!torsionful.is_flat_affine());

  CHECK(gamma_tilde().is_flat_affine());
}

TEST_CASE("covariant derivative", "[connection]") {
  const Domain d = Domain::full(2);
  const Connection flat = Connection::standard(d);
  const VectorField dx = VectorField::coordinate(d, 0);
  const VectorField dy = VectorField::coordinate(d, 1);
  const VectorField x_dx = parse_field("x*d/dx", d);

  CHECK(covariant_derivative(flat, dx, x_dx) == dx);
  CHECK(covariant_derivative(flat, dx, dy).is_zero());
  CHECK(covariant_derivative(gamma_tilde(), dx, dy) == dy);
}

TEST_CASE("covariant derivative is additive and Leibniz", "[connection][prop]") {
  std::mt19937 rng(1312);
  const Domain d = Domain::full(2);
  const Connection c = gamma_tilde();
  std::uniform_int_distribution<int> coef(-3, 3);
  for (int rep = 0; rep < 20; ++rep) {
    const VectorField x = parse_field("x*d/dx - y*d/dy", d);
    const VectorField y1(d, {ExpPoly::term(2, {coef(rng) & 1, 1}, {Rational(0), Rational(0)},
                                           Scalar(coef(rng))),
                             ExpPoly::constant(2, Scalar(coef(rng)))});
    const VectorField y2(d, {ExpPoly::constant(2, Scalar(coef(rng))),
                             ExpPoly::term(2, {1, 0}, {Rational(-1), Rational(0)},
                                           Scalar(coef(rng)))});
    CHECK(covariant_derivative(c, x, y1 + y2) ==
          covariant_derivative(c, x, y1) + covariant_derivative(c, x, y2));

    // nabla_X (f Y) = X(f) Y + f nabla_X Y
    const ExpPoly f = parse_exppoly("x*y + 2", 2);
    std::vector<ExpPoly> fy;
    for (int i = 0; i < 2; ++i) fy.push_back(f * y1.component(i));
    const VectorField fY(d, fy);
    ExpPoly xf(2);
    for (int i = 0; i < 2; ++i) xf += x.component(i) * f.diff(i);
    std::vector<ExpPoly> expect;
    for (int i = 0; i < 2; ++i)
      expect.push_back(xf * y1.component(i) + f * covariant_derivative(c, x, y1).component(i));
    CHECK(covariant_derivative(c, x, fY) == VectorField(d, expect));
  }
}

TEST_CASE("pullback of the flat connection by the developing map", "[connection]") {
  const auto& ex = etale_example();
  const Connection& g = ex.pulled_back;
  CHECK(g.gamma(0, 0, 0) == ExpPoly::constant(2, Scalar(1)));
  CHECK(g.gamma(1, 0, 1) == ExpPoly::constant(2, Scalar(1)));
  CHECK(g.gamma(1, 1, 0) == ExpPoly::constant(2, Scalar(1)));
  CHECK(g.gamma(0, 0, 1).is_zero());
  CHECK(g.gamma(0, 1, 1).is_zero());
  CHECK(g.gamma(1, 1, 1).is_zero());
  CHECK(g.is_flat_affine());
  CHECK(is_affine_map(ex.dev, g, Connection::standard(Domain::full(2))));
}

TEST_CASE("pullback against a finite-difference oracle", "[connection][oracle]") {
  // independent oracle: Christoffels of the pullback from second differences
  // of the hardcoded map D(x,y) = (y e^x, e^x)
  const auto& g = gamma_tilde();
  auto dmap = [](double x, double y) {
    return std::array<double, 2>{y * std::exp(x), std::exp(x)};
  };
  const double h = 1e-5;
  const std::array<std::array<double, 2>, 3> pts{{{0.3, 0.7}, {-0.4, 1.2}, {0.0, -0.5}}};
  for (const auto& p : pts) {
    double jac[2][2], hess[2][2][2];
    for (int a = 0; a < 2; ++a) {
      const auto step = [&](double dx, double dy) { return dmap(p[0] + dx, p[1] + dy); };
      jac[a][0] = (step(h, 0)[a] - step(-h, 0)[a]) / (2 * h);
      jac[a][1] = (step(0, h)[a] - step(0, -h)[a]) / (2 * h);
      hess[a][0][0] = (step(h, 0)[a] - 2 * step(0, 0)[a] + step(-h, 0)[a]) / (h * h);
      hess[a][1][1] = (step(0, h)[a] - 2 * step(0, 0)[a] + step(0, -h)[a]) / (h * h);
      hess[a][0][1] = (step(h, h)[a] - step(h, -h)[a] - step(-h, h)[a] + step(-h, -h)[a]) /
                      (4 * h * h);
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
          CHECK_THAT(symbolic, Catch::Matchers::WithinAbs(oracle, 1e-6));
        }
  }
}

TEST_CASE("affine pullbacks of the standard connection", "[connection][prop]") {
  std::mt19937 rng(2718);
  const Domain d = Domain::full(2);
  const Connection flat = Connection::standard(d);
  for (int rep = 0; rep < 20; ++rep) {
    const AffineMap t = rand_affine(rng);
    const Connection pulled = pullback_connection(flat, DiffeoData::from_affine(t), d);
    CHECK(pulled == flat);
    CHECK(pulled.is_flat_affine());
    CHECK(is_affine_map(t, flat, flat));
  }
}

TEST_CASE("pullback functoriality on affine maps", "[connection][prop]") {
  std::mt19937 rng(1618);
  const Domain d = Domain::full(2);
  const Connection base = gamma_tilde();
  for (int rep = 0; rep < 12; ++rep) {
    const AffineMap t = rand_affine(rng);
    const AffineMap s = rand_affine(rng);
    if (!t.is_rational() || !s.is_rational()) continue;
    const Connection via_compose =
        pullback_connection(base, DiffeoData::from_affine(t.compose(s)), d);
    const Connection stepwise = pullback_connection(
        pullback_connection(base, DiffeoData::from_affine(t), d), DiffeoData::from_affine(s), d);
    CHECK(via_compose == stepwise);
  }
}

TEST_CASE("maps without algebraic inverse Jacobian are rejected", "[connection]") {
  // F(x,y) = (x^3 + x, y): det J = 3x^2 + 1 is not a unit
  std::vector<ExpPoly> f{parse_exppoly("x^3 + x", 2), parse_exppoly("y", 2)};
  CHECK_THROWS_AS(DiffeoData::from_components(f), CompositionOutsideAlgebra);
}

TEST_CASE("diffeo data validates its Jacobian pair", "[connection]") {
  CHECK_THROWS_AS(
      DiffeoData::checked({parse_exppoly("y*exp(x)", 2), parse_exppoly("exp(x)", 2)},
                          {parse_exppoly("y*exp(x)", 2), parse_exppoly("exp(x)", 2),
                           parse_exppoly("exp(x)", 2), parse_exppoly("0", 2)},
                          {parse_exppoly("1", 2), parse_exppoly("0", 2),
                           parse_exppoly("0", 2), parse_exppoly("1", 2)}),
      Error);
}

TEST_CASE("flatness agrees with numeric sampling", "[connection][oracle]") {
  std::mt19937 rng(55);
  std::uniform_real_distribution<double> pt(-1.0, 1.0);
  for (const Connection& c : {Connection::standard(Domain::full(2)), gamma_tilde()}) {
    REQUIRE(c.is_flat_affine());
    const Tensor3 t = c.torsion();
    const Tensor4 r = c.curvature();
    for (int s = 0; s < 10; ++s) {
      const std::vector<double> p{pt(rng), pt(rng)};
      for (const auto& e : t.entries) CHECK(std::abs(e.eval_double(p, {})) < 1e-9);
      for (const auto& e : r.entries) CHECK(std::abs(e.eval_double(p, {})) < 1e-9);
    }
  }
}
