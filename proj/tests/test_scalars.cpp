#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "flataff/matrix.hpp"
#include "flataff/parser.hpp"

using namespace flataff;

namespace {

Rational rand_rational(std::mt19937& rng) {
  std::uniform_int_distribution<int> num(-6, 6);
  std::uniform_int_distribution<int> den(1, 5);
  return Rational(num(rng), den(rng));
}

Scalar rand_scalar(std::mt19937& rng, bool with_params = true) {
  declare_param("E");
  declare_param("L");
  std::uniform_int_distribution<int> pick(0, with_params ? 4 : 1);
  switch (pick(rng)) {
    case 0:
    case 1: return Scalar(rand_rational(rng));
    case 2: return Scalar::param("E") * Scalar(rand_rational(rng));
    case 3: return Scalar::param("L") + Scalar(rand_rational(rng));
    default:
      return (Scalar::param("E") + Scalar(rand_rational(rng))) /
             (Scalar::param("L") * Scalar::param("L") + Scalar(1));
  }
}

} // namespace

TEST_CASE("scalar evaluation", "[scalars]") {
  declare_param("E");
  declare_param("L");
  CHECK(Scalar(Rational(1, 2)).eval({}) == Rational(1, 2));
  CHECK(Scalar::param("E").pow(2).eval({{"E", Rational(3)}}) == Rational(9));
  const Scalar s = (Scalar::param("L") - Scalar(1)) / (Scalar::param("L") + Scalar(1));
  CHECK(s.eval({{"L", Rational(2)}}) == Rational(1, 3));

  CHECK_THROWS_AS(Scalar::param("E").eval({}), MissingParam);
  const Scalar pole = Scalar(1) / (Scalar::param("L") - Scalar(1));
  CHECK_THROWS_AS(pole.eval({{"L", Rational(1)}}), DivisionByZeroAtPoint);
}

TEST_CASE("scalar canonical form", "[scalars]") {
  declare_param("E");
  const Scalar e = Scalar::param("E");
  CHECK((e * e - Scalar(1)) / (e - Scalar(1)) == e + Scalar(1));
  CHECK((e * e - e) / e == e - Scalar(1));
  // denominator is monic after normalization
  const Scalar s = Scalar(1) / (Scalar(2) * e);
  CHECK(s.den().leading_coefficient() == 1);
  CHECK(s == Scalar(Rational(1, 2)) / e);
  CHECK_THROWS_AS(e / Scalar(0), DivisionByZero);
}

TEST_CASE("scalar field axioms on random triples", "[scalars][prop]") {
  std::mt19937 rng(20240811);
  for (int i = 0; i < 120; ++i) {
    const Scalar a = rand_scalar(rng), b = rand_scalar(rng), c = rand_scalar(rng);
    CHECK((a + b) + c == a + (b + c));
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * (b + c) == a * b + a * c);
    CHECK(a + b == b + a);
    CHECK(a * b == b * a);
    if (!a.is_zero()) CHECK(a / a == Scalar(1));
  }
}

TEST_CASE("scalar evaluation is a ring homomorphism", "[scalars][prop]") {
  std::mt19937 rng(77);
  const std::map<std::string, Rational> at{{"E", Rational(7, 3)}, {"L", Rational(5, 2)}};
  for (int i = 0; i < 80; ++i) {
    const Scalar a = rand_scalar(rng), b = rand_scalar(rng);
    CHECK((a * b).eval(at) == a.eval(at) * b.eval(at));
    CHECK((a + b).eval(at) == a.eval(at) + b.eval(at));
  }
}

TEST_CASE("scalar literal grammar round trip", "[scalars]") {
  declare_param("E");
  declare_param("L");
  CHECK(parse_scalar("1/2") == Scalar(Rational(1, 2)));
  CHECK(parse_scalar("(L - 1)/(L + 1)") ==
        (Scalar::param("L") - Scalar(1)) / (Scalar::param("L") + Scalar(1)));
  CHECK(parse_scalar("E^2 - 2*E + 1") == (Scalar::param("E") - Scalar(1)).pow(2));
  CHECK(parse_scalar("E^-1") == Scalar(1) / Scalar::param("E"));
  CHECK(parse_scalar("-3/4") == Scalar(Rational(-3, 4)));
  CHECK_THROWS_AS(parse_scalar("q + 1"), ParseError);
  CHECK_THROWS_AS(parse_scalar("E +"), ParseError);

  std::mt19937 rng(5150);
  for (int i = 0; i < 60; ++i) {
    const Scalar s = rand_scalar(rng);
    CHECK(parse_scalar(s.to_string()) == s);
  }
}

TEST_CASE("nullspace basics", "[matrix]") {
  declare_param("E");
  CHECK(nullspace(ScalarMatrix::identity(3)).empty());

  const ScalarMatrix zero(2, 3);
  CHECK(nullspace(zero).size() == 3);

  ScalarMatrix m(2, 2);
  m.at(0, 0) = Scalar(1);
  m.at(0, 1) = Scalar::param("E");
  m.at(1, 0) = Scalar::param("E");
  m.at(1, 1) = Scalar::param("E") * Scalar::param("E");
  const auto basis = nullspace(m);
  REQUIRE(basis.size() == 1);
  CHECK(basis[0][0] == -Scalar::param("E"));
  CHECK(basis[0][1] == Scalar(1));
}

TEST_CASE("rank-nullity and exact kernel vectors", "[matrix][prop]") {
  std::mt19937 rng(99);
  std::uniform_int_distribution<int> size(1, 5);
  for (int rep = 0; rep < 60; ++rep) {
    const std::size_t r = size(rng), c = size(rng);
    ScalarMatrix m(r, c);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < c; ++j) m.at(i, j) = Scalar(rand_rational(rng));
    const auto basis = nullspace(m);
    CHECK(rank(m) + basis.size() == c);
    for (const auto& v : basis) {
      const auto mv = m.apply(v);
      for (const Scalar& s : mv) CHECK(s.is_zero());
    }
  }
}

TEST_CASE("kernels of parametric matrices", "[matrix][prop]") {
  declare_param("E");
  declare_param("L");
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> size(1, 3);
  std::uniform_int_distribution<int> pick(0, 4);
  auto entry = [&]() -> Scalar {
    switch (pick(rng)) {
      case 0: return Scalar(rand_rational(rng));
      case 1: return Scalar::param("E") * Scalar(rand_rational(rng));
      case 2: return Scalar::param("L") + Scalar(rand_rational(rng));
      case 3: return Scalar(rand_rational(rng)) / Scalar::param("E");
      default: return Scalar(0);
    }
  };
  for (int rep = 0; rep < 30; ++rep) {
    const std::size_t r = size(rng), c = size(rng);
    ScalarMatrix m(r, c);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < c; ++j) m.at(i, j) = entry();
    const auto basis = nullspace(m);
    CHECK(rank(m) + basis.size() == c);
    for (const auto& v : basis)
      for (const Scalar& s : m.apply(v)) CHECK(s.is_zero());
  }
}

TEST_CASE("matrix inverse and determinant", "[matrix]") {
  declare_param("L");
  ScalarMatrix a(2, 2);
  a.at(0, 0) = Scalar::param("L");
  a.at(1, 1) = Scalar(1) / Scalar::param("L");
  CHECK(det(a) == Scalar(1));
  const auto inv = inverse(a);
  REQUIRE(inv.has_value());
  CHECK(*inv * a == ScalarMatrix::identity(2));

  ScalarMatrix sing(2, 2);
  sing.at(0, 0) = Scalar(1);
  sing.at(1, 0) = Scalar(2);
  CHECK(det(sing).is_zero());
  CHECK(!inverse(sing).has_value());
}

TEST_CASE("sign reasoning from positivity flags", "[scalars]") {
  declare_param("E");
  declare_param("L");
  declare_param("a_free", false);
  CHECK(Scalar::param("E").sign() == Sign::positive);
  CHECK((Scalar(1) / Scalar::param("L")).sign() == Sign::positive);
  CHECK((-Scalar::param("L")).sign() == Sign::negative);
  CHECK((Scalar::param("E") + Scalar(1)).sign() == Sign::positive);
  CHECK((Scalar::param("L") - Scalar(1)).sign() == Sign::unknown);
  CHECK(Scalar::param("a_free").sign() == Sign::unknown);
  CHECK(Scalar(0).sign() == Sign::zero);
}
