#pragma once

#include <string>
#include <utility>
#include <vector>

#include "flataff/catalog.hpp"
#include "flataff/flows.hpp"

namespace flataff {

/// Closed-form flow of one lifted field, defined on its validity region.
struct ClosedFlow {
  std::string name;
  ClosedFlowFn map;
};

/// Built-in data of the etale developing-map example: the map
/// D(x,y) = (y e^x, e^x) onto the upper half plane, the pulled-back flat
/// affine connection, the lifted symmetry basis, the two incomplete lifts and
/// all six closed-form flows.
struct EtaleExample {
  Domain cover = Domain::full(2);
  Domain orbit = Domain::upper_half_plane();
  DiffeoData dev;
  Connection pulled_back;
  Ansatz ansatz;

  // orbit fields ordered so their lifts print in the conventional order
  std::vector<VectorField> orbit_basis;
  std::vector<VectorField> lifted_basis;
  std::vector<VectorField> orbit_incomplete;
  std::vector<VectorField> incomplete_lifts;
  std::vector<std::pair<VectorField, ClosedFlow>> flows;

  EtaleExample()
      : dev(DiffeoData::checked(
            {parse_exppoly("y*exp(x)", 2), parse_exppoly("exp(x)", 2)},
            {parse_exppoly("y*exp(x)", 2), parse_exppoly("exp(x)", 2),
             parse_exppoly("exp(x)", 2), parse_exppoly("0", 2)},
            {parse_exppoly("0", 2), parse_exppoly("exp(-x)", 2), parse_exppoly("exp(-x)", 2),
             parse_exppoly("-y*exp(-x)", 2)})),
        pulled_back(pullback_connection(Connection::standard(Domain::full(2)), dev, cover)),
        ansatz(Ansatz::make(2, 2, {{Rational(-1), Rational(0)}})) {
    orbit_basis = {parse_field("x*d/dx", orbit), parse_field("d/dx", orbit),
                   parse_field("y*d/dx", orbit), parse_field("x*d/dx + y*d/dy", orbit)};
    for (const VectorField& f : orbit_basis)
      lifted_basis.push_back(lift_through_etale(f, dev, cover));
    orbit_incomplete = {parse_field("x*d/dy", orbit), parse_field("d/dy", orbit)};
    for (const VectorField& f : orbit_incomplete)
      incomplete_lifts.push_back(lift_through_etale(f, dev, cover));

    using P = std::vector<double>;
    flows.push_back({lifted_basis[0],
                     {"phi1", [](double t, const P& p) {
                        return std::optional<P>(P{p[0], std::exp(t) * p[1]});
                      }}});
    flows.push_back({lifted_basis[1],
                     {"phi2", [](double t, const P& p) {
                        return std::optional<P>(P{p[0], std::exp(-p[0]) * t + p[1]});
                      }}});
    flows.push_back({lifted_basis[2],
                     {"phi3", [](double t, const P& p) {
                        return std::optional<P>(P{p[0], t + p[1]});
                      }}});
    flows.push_back({lifted_basis[3],
                     {"phi4", [](double t, const P& p) {
                        return std::optional<P>(P{t + p[0], p[1]});
                      }}});
    flows.push_back({incomplete_lifts[0],
                     {"phi5", [](double t, const P& p) -> std::optional<P> {
                        const double s = t * p[1] + 1.0;
                        if (s <= 0) return std::nullopt;
                        return P{p[0] + std::log(s), p[1] / s};
                      }}});
    flows.push_back({incomplete_lifts[1],
                     {"phi6", [](double t, const P& p) -> std::optional<P> {
                        const double s = std::exp(p[0]) + t;
                        if (s <= 0) return std::nullopt;
                        return P{std::log(s), std::exp(p[0]) * p[1] / s};
                      }}});
  }
};

inline const EtaleExample& etale_example() {
  static const EtaleExample ex;
  return ex;
}

} // namespace flataff
