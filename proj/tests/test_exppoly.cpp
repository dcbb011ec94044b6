#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "flataff/parser.hpp"

using namespace flataff;

namespace {

ExpPoly rand_exppoly(std::mt19937& rng, int max_terms = 4) {
  declare_param("E");
  std::uniform_int_distribution<int> nterms(1, max_terms);
  std::uniform_int_distribution<int> power(0, 2);
  std::uniform_int_distribution<int> weight(-1, 1);
  std::uniform_int_distribution<int> coef(-4, 4);
  ExpPoly f(2);
  const int n = nterms(rng);
  for (int t = 0; t < n; ++t) {
    const int c = coef(rng);
    if (c == 0) continue;
    f += ExpPoly::term(2, {power(rng), power(rng)},
                       {Rational(weight(rng)), Rational(weight(rng))}, Scalar(c));
  }
  return f;
}

VectorField rand_field(std::mt19937& rng) {
  return VectorField(Domain::full(2), {rand_exppoly(rng), rand_exppoly(rng)});
}

double eval_num(const ExpPoly& f, double x, double y) {
  return f.eval_double({x, y}, {{"E", 2.718281828459045}, {"L", 2.0}});
}

} // namespace

TEST_CASE("exppoly arithmetic", "[exppoly]") {
  const ExpPoly x = parse_exppoly("x", 2);
  const ExpPoly emx = parse_exppoly("exp(-x)", 2);
  CHECK(x * emx == parse_exppoly("x*exp(-x)", 2));

  CHECK(parse_exppoly("(x + y)*(x - y)", 2) == parse_exppoly("x^2 - y^2", 2));

  const ExpPoly yex = parse_exppoly("y*exp(x)", 2);
  const ExpPoly sq = yex * yex;
  CHECK(sq == parse_exppoly("y^2*exp(2*x)", 2));
  // numeric oracle at sample points
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> pt(-1.0, 1.0);
  for (int i = 0; i < 5; ++i) {
    const double x0 = pt(rng), y0 = pt(rng);
    const double lhs = eval_num(yex, x0, y0) * eval_num(yex, x0, y0);
    CHECK_THAT(eval_num(sq, x0, y0), Catch::Matchers::WithinRel(lhs, 1e-12));
  }

  CHECK_THROWS_AS(ExpPoly::coordinate(2, 0) + ExpPoly::coordinate(3, 0), DimensionMismatch);
}

TEST_CASE("exppoly differentiation", "[exppoly]") {
  const ExpPoly f = parse_exppoly("x^2*y*exp(-x)", 2);
  CHECK(f.diff(0) == parse_exppoly("(2*x*y - x^2*y)*exp(-x)", 2));
  CHECK(parse_exppoly("exp(-x)", 2).diff(1).is_zero());
  CHECK_THROWS_AS(f.diff(2), IndexOutOfRange);

  std::mt19937 rng(17);
  for (int i = 0; i < 40; ++i) {
    const ExpPoly g = rand_exppoly(rng, 6);
    CHECK(g.diff(0).diff(1) == g.diff(1).diff(0));
  }
}

TEST_CASE("derivative matches finite differences", "[exppoly][prop]") {
  std::mt19937 rng(23);
  std::uniform_real_distribution<double> pt(-0.8, 0.8);
  const double h = 1e-5;
  for (int i = 0; i < 25; ++i) {
    const ExpPoly f = rand_exppoly(rng);
    for (int axis = 0; axis < 2; ++axis) {
      const double x0 = pt(rng), y0 = pt(rng);
      const double fd = axis == 0
                            ? (eval_num(f, x0 + h, y0) - eval_num(f, x0 - h, y0)) / (2 * h)
                            : (eval_num(f, x0, y0 + h) - eval_num(f, x0, y0 - h)) / (2 * h);
      const double exact = eval_num(f.diff(axis), x0, y0);
      CHECK_THAT(fd, Catch::Matchers::WithinAbs(exact, 1e-6 * (1.0 + std::abs(exact))));
    }
  }
}

TEST_CASE("composition with affine maps", "[exppoly]") {
  declare_param("E");
  declare_param("L");

  // f = y under (x, y) -> (x + 1, E y)
  ScalarMatrix a(2, 2);
  a.at(0, 0) = Scalar(1);
  a.at(1, 1) = Scalar::param("E");
  const AffineMap t(a, {Scalar(1), Scalar(0)});
  CHECK(parse_exppoly("y", 2).compose_affine(t) ==
        Scalar::param("E") * ExpPoly::coordinate(2, 1));

  // translation along the weight direction leaves the scalar field
  CHECK_THROWS_AS(parse_exppoly("exp(-x)", 2).compose_affine(t), WeightParameterConflict);
  // parametric map against a nonzero weight
  ScalarMatrix al(2, 2);
  al.at(0, 0) = Scalar::param("L");
  al.at(1, 1) = Scalar(1);
  const AffineMap tl(al, {Scalar(0), Scalar(0)});
  CHECK_THROWS_AS(parse_exppoly("exp(-x)", 2).compose_affine(tl), WeightParameterConflict);

  // f = x^2 under (x, y) -> (L x, y)
  const ExpPoly composed = parse_exppoly("x^2", 2).compose_affine(tl);
  CHECK(composed == Scalar::param("L").pow(2) * parse_exppoly("x^2", 2));
  const double numeric = composed.eval_double({0.7, -0.3}, {{"L", 2.0}});
  CHECK_THAT(numeric, Catch::Matchers::WithinRel(4.0 * 0.49, 1e-12));

  // rational translation orthogonal to the weight is fine
  const AffineMap ty = AffineMap::translation({Scalar(0), Scalar(1)});
  CHECK(parse_exppoly("exp(-x)", 2).compose_affine(ty) == parse_exppoly("exp(-x)", 2));
}

TEST_CASE("canonical form stores no zero coefficients", "[exppoly][prop]") {
  std::mt19937 rng(4242);
  for (int i = 0; i < 60; ++i) {
    const ExpPoly f = rand_exppoly(rng), g = rand_exppoly(rng);
    for (const auto& result : {f + g, f - g, f * g, f.diff(0), f.diff(1)})
      for (const auto& [k, c] : result.terms()) {
        CHECK(!c.is_zero());
        for (int e : k.powers) CHECK(e >= 0);
      }
    const ExpPoly cancel = f - f;
    CHECK(cancel.is_zero());
    CHECK(cancel.terms().empty());
  }
}

TEST_CASE("evaluation homomorphism for products", "[exppoly][prop]") {
  std::mt19937 rng(808);
  std::uniform_real_distribution<double> pt(-0.7, 0.7);
  for (int i = 0; i < 30; ++i) {
    const ExpPoly f = rand_exppoly(rng), g = rand_exppoly(rng);
    const double x0 = pt(rng), y0 = pt(rng);
    const double lhs = eval_num(f * g, x0, y0);
    const double rhs = eval_num(f, x0, y0) * eval_num(g, x0, y0);
    CHECK_THAT(lhs, Catch::Matchers::WithinAbs(rhs, 1e-9 * (1.0 + std::abs(rhs))));
  }
}

TEST_CASE("field literals", "[parser]") {
  const Domain uhp = Domain::upper_half_plane();
  const VectorField ydy = parse_field("y*d/dy", uhp);
  CHECK(ydy.component(0).is_zero());
  CHECK(ydy.component(1) == parse_exppoly("y", 2));

  const VectorField lift = parse_field("exp(-x)*d/dy", Domain::full(2));
  CHECK(lift.component(0).is_zero());
  CHECK(lift.component(1) == parse_exppoly("exp(-x)", 2));

  const VectorField incomplete = parse_field("y*d/dx - y^2*d/dy", Domain::full(2));
  CHECK(incomplete.component(0) == parse_exppoly("y", 2));
  CHECK(incomplete.component(1) == parse_exppoly("-y^2", 2));

  CHECK(parse_field("0", uhp).is_zero());
  CHECK_THROWS_AS(parse_field("y*d/dz", uhp), ParseError);
  CHECK_THROWS_AS(parse_field("y*", uhp), ParseError);
  try {
    parse_field("y*d/dz", uhp);
  } catch (const ParseError& e) {
    CHECK(e.position() > 0);
  }
}

TEST_CASE("parse of printed fields is the identity", "[parser][prop]") {
  std::mt19937 rng(31337);
  for (int i = 0; i < 60; ++i) {
    const VectorField f = rand_field(rng);
    CHECK(parse_field(f.to_string(), f.domain()) == f);
  }
  // parametric coefficients round trip too
  declare_param("E");
  const VectorField g(Domain::full(2),
                      {(Scalar(1) / Scalar::param("E")) * parse_exppoly("y", 2),
                       (Scalar::param("E") - Scalar(1)) * parse_exppoly("x*exp(-x)", 2)});
  CHECK(parse_field(g.to_string(), g.domain()) == g);
}

TEST_CASE("higher-dimensional coordinates", "[parser]") {
  const Domain d3 = Domain::full(3);
  const VectorField f = parse_field("x1*d/dx2 - 2*x3*d/dx1", d3);
  CHECK(f.component(1) == ExpPoly::coordinate(3, 0));
  CHECK(parse_field(f.to_string(), d3) == f);
}
