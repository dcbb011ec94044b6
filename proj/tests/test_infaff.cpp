#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "flataff/example_etale.hpp"

using namespace flataff;

TEST_CASE("symmetry residual on the standard connection", "[infaff]") {
  const Domain d = Domain::full(2);
  const Connection flat = Connection::standard(d);
  CHECK(infaff_residual(flat, parse_field("x*d/dx + y*d/dy", d)).is_zero());
  CHECK(!infaff_residual(flat, parse_field("x^2*d/dx", d)).is_zero());

  Connection torsionful(d);
  torsionful.set_gamma(0, 0, 1, ExpPoly::constant(2, Scalar(1)));
  CHECK_THROWS_AS(infaff_residual(torsionful, parse_field("d/dx", d)), NotFlatAffine);
}

TEST_CASE("residual vanishes on the lifted fields", "[infaff]") {
  const auto& ex = etale_example();
  CHECK(infaff_residual(ex.pulled_back, parse_field("exp(-x)*d/dy", ex.cover)).is_zero());
  for (const VectorField& f : ex.lifted_basis)
    CHECK(infaff_residual(ex.pulled_back, f).is_zero());
  for (const VectorField& f : ex.incomplete_lifts)
    CHECK(infaff_residual(ex.pulled_back, f).is_zero());
}

TEST_CASE("residual is linear in the field", "[infaff][prop]") {
  const auto& ex = etale_example();
  std::mt19937 rng(8);
  std::uniform_int_distribution<int> coef(-3, 3);
  for (int rep = 0; rep < 10; ++rep) {
    const VectorField x(ex.cover, {ExpPoly::term(2, {1, 1}, {Rational(0), Rational(0)},
                                                 Scalar(coef(rng))),
                                   ExpPoly::term(2, {0, 2}, {Rational(0), Rational(0)},
                                                 Scalar(coef(rng)))});
    const VectorField y(ex.cover, {ExpPoly::term(2, {0, 1}, {Rational(-1), Rational(0)},
                                                 Scalar(coef(rng))),
                                   ExpPoly::constant(2, Scalar(coef(rng)))});
    const Scalar a(coef(rng)), b(coef(rng));
    const auto r_comb = infaff_residual(ex.pulled_back, a * x + b * y);
    const auto rx = infaff_residual(ex.pulled_back, x);
    const auto ry = infaff_residual(ex.pulled_back, y);
    for (std::size_t i = 0; i < r_comb.entries.size(); ++i)
      CHECK(r_comb.entries[i] == a * rx.entries[i] + b * ry.entries[i]);
  }
}

TEST_CASE("solver on the standard connection", "[infaff]") {
  const Connection flat = Connection::standard(Domain::full(2));
  CHECK(solve_infaff(flat, Ansatz::make(2, 1)).dim() == 6);
  CHECK(solve_infaff(flat, Ansatz::make(2, 0)).dim() == 2);
  // higher degrees and extra weights add nothing
  CHECK(solve_infaff(flat, Ansatz::make(2, 2)).dim() == 6);
  CHECK(solve_infaff(flat, Ansatz::make(2, 3)).dim() == 6);
  CHECK(solve_infaff(flat, Ansatz::make(2, 2, {{Rational(1), Rational(0)}})).dim() == 6);
}

TEST_CASE("solver reproduces the lifted symmetry algebra", "[infaff]") {
  const auto& ex = etale_example();
  const InfAffBasis basis = solve_infaff(ex.pulled_back, ex.ansatz);
  REQUIRE(basis.dim() == 6);
  for (const VectorField& f : basis.fields)
    CHECK(infaff_residual(ex.pulled_back, f).is_zero());

  std::vector<VectorField> expected = ex.lifted_basis;
  expected.insert(expected.end(), ex.incomplete_lifts.begin(), ex.incomplete_lifts.end());
  CHECK(same_span(basis.fields, expected));
}

TEST_CASE("brackets of solver output stay symmetric when inside the ansatz", "[infaff]") {
  const auto& ex = etale_example();
  const InfAffBasis basis = solve_infaff(ex.pulled_back, ex.ansatz);
  auto within_ansatz = [&](const VectorField& f) {
    for (int i = 0; i < f.dim(); ++i)
      for (const auto& [k, c] : f.component(i).terms()) {
        if (k.poly_degree() > ex.ansatz.max_degree) return false;
        bool known = false;
        for (const auto& w : ex.ansatz.weights) known = known || w == k.weight;
        if (!known) return false;
      }
    return true;
  };
  for (std::size_t i = 0; i < basis.fields.size(); ++i)
    for (std::size_t j = i + 1; j < basis.fields.size(); ++j) {
      const VectorField br = bracket(basis.fields[i], basis.fields[j]);
      if (within_ansatz(br))
        CHECK(infaff_residual(ex.pulled_back, br).is_zero());
    }
}

TEST_CASE("classical affine basis", "[infaff]") {
  CHECK(classical_aff_basis(1).dim() == 2);
  CHECK(classical_aff_basis(2).dim() == 6);
  CHECK(classical_aff_basis(3).dim() == 12);

  const auto basis = classical_aff_basis(1);
  CHECK(basis.fields[0] == parse_field("x*d/dx", Domain::full(1)));
  CHECK(basis.fields[1] == parse_field("d/dx", Domain::full(1)));
}

TEST_CASE("upper-half-plane ambient spans the expected fields", "[infaff]") {
  // the span convention for the orbit symmetry algebra on the half plane
  const Domain uhp = Domain::upper_half_plane();
  const std::vector<VectorField> listed{
      parse_field("x*d/dx", uhp), parse_field("y*d/dx", uhp), parse_field("d/dx", uhp),
      parse_field("x*d/dx + y*d/dy", uhp)};
  const std::vector<VectorField> canonical{
      parse_field("x*d/dx", uhp), parse_field("y*d/dx", uhp), parse_field("d/dx", uhp),
      parse_field("y*d/dy", uhp)};
  CHECK(same_span(listed, canonical));
}
