#pragma once

#include <string>
#include <vector>

#include "flataff/deck.hpp"
#include "flataff/parser.hpp"

namespace flataff {

/// One entry of the flat affine surface table: the deck action presenting the
/// surface as a quotient, the expected symmetry dimension, and the ambient
/// space of complete classical fields the invariance equations run over.
struct SurfaceEntry {
  std::string key;
  DeckAction action;
  int expected_dim = 0;
  std::string expected_description;
  std::vector<VectorField> ambient;
};

/// Complete classical affine fields on a domain: the Lie algebra of the
/// classical affine transformations preserving it.
inline std::vector<VectorField> domain_affine_basis(const Domain& d) {
  switch (d.kind) {
    case Domain::Kind::full_space:
      return classical_aff_basis(d.dim).fields;
    case Domain::Kind::upper_half_plane:
      return {parse_field("x*d/dx", d), parse_field("y*d/dx", d), parse_field("d/dx", d),
              parse_field("y*d/dy", d)};
    case Domain::Kind::quadrant:
      return {parse_field("x*d/dx", d), parse_field("y*d/dy", d)};
    case Domain::Kind::punctured_plane:
      return {parse_field("x*d/dx", d), parse_field("y*d/dx", d), parse_field("x*d/dy", d),
              parse_field("y*d/dy", d)};
  }
  throw Error("unhandled domain kind");
}

namespace detail {

inline Scalar S(const std::string& text) { return parse_scalar(text); }

inline AffineMap map2(const std::string& a11, const std::string& a12, const std::string& a21,
                      const std::string& a22, const std::string& b1, const std::string& b2) {
  ScalarMatrix a(2, 2);
  a.at(0, 0) = S(a11);
  a.at(0, 1) = S(a12);
  a.at(1, 0) = S(a21);
  a.at(1, 1) = S(a22);
  return AffineMap(a, {S(b1), S(b2)});
}

inline SurfaceEntry make_entry(const std::string& key, Domain domain,
                               std::vector<AffineMap> gens, int expected_dim,
                               std::string description) {
  SurfaceEntry e;
  e.key = key;
  e.action = DeckAction::checked(domain, std::move(gens), key);
  e.expected_dim = expected_dim;
  e.expected_description = std::move(description);
  e.ambient = domain_affine_basis(domain);
  return e;
}

} // namespace detail

inline const std::vector<std::string>& surface_keys() {
  static const std::vector<std::string> keys = [] {
    std::vector<std::string> k;
    for (int i = 1; i <= 6; ++i) k.push_back("torus:" + std::to_string(i));
    for (int i = 1; i <= 6; ++i) k.push_back("klein:" + std::to_string(i));
    for (int i = 1; i <= 8; ++i) k.push_back("cylinder:" + std::to_string(i));
    for (int i = 1; i <= 5; ++i) k.push_back("mobius:" + std::to_string(i));
    return k;
  }();
  return keys;
}

/// Catalog of the flat affine tori, Klein bottles, cylinders and Moebius
/// strips. Z^2 actions are entered through their two unit generators; the
/// transcendental scaling constant is the positive parameter E, the Klein
/// bottle moduli are the positive parameters L and M.
inline SurfaceEntry surface_catalog(const std::string& key) {
  declare_param("E");
  declare_param("L");
  declare_param("M");
  using detail::make_entry;
  using detail::map2;
  const Domain plane = Domain::full(2);
  const Domain uhp = Domain::upper_half_plane();
  const Domain quad = Domain::quadrant();
  const Domain punct = Domain::punctured_plane();

  if (key == "torus:1")
    return make_entry(key, plane,
                      {map2("1", "0", "0", "1", "1", "0"), map2("1", "0", "0", "1", "0", "1")}, 2,
                      "translations of the plane");
  if (key == "torus:2")
    return make_entry(key, plane,
                      {map2("1", "0", "0", "1", "1", "0"), map2("1", "1", "0", "1", "1/2", "1")},
                      2, "{(x+ay+b, y+a)}");
  if (key == "torus:3")
    return make_entry(key, uhp,
                      {map2("1", "0", "0", "1", "1", "0"), map2("1", "0", "0", "E", "0", "0")}, 2,
                      "{(x+a, by), b>0}");
  if (key == "torus:4")
    return make_entry(key, uhp,
                      {map2("E", "0", "0", "E", "0", "0"), map2("1", "1", "0", "1", "0", "0")}, 2,
                      "{(ax+by, ay), a>0}");
  if (key == "torus:5")
    return make_entry(key, quad,
                      {map2("E", "0", "0", "1", "0", "0"), map2("1", "0", "0", "E", "0", "0")}, 2,
                      "{(ax, by), a,b>0}");
  if (key == "torus:6")
    return make_entry(key, punct, {map2("E", "0", "0", "E", "0", "0")}, 4, "GL2(R)");

  if (key == "klein:1")
    return make_entry(key, plane,
                      {map2("1", "0", "0", "1", "1", "0"), map2("-1", "0", "0", "1", "0", "1/2")},
                      1, "{(x, y+a)}");
  if (key == "klein:2")
    return make_entry(key, plane,
                      {map2("1", "1", "0", "1", "0", "1"), map2("1", "0", "0", "-1", "1/2", "0")},
                      1, "{(x+a, y)}");
  if (key == "klein:3")
    return make_entry(key, uhp,
                      {map2("1", "0", "0", "1", "1", "0"), map2("-1", "0", "0", "L", "0", "0")},
                      1, "{(x, ay), a != 0}");
  if (key == "klein:4")
    return make_entry(key, uhp,
                      {map2("1", "1", "0", "1", "0", "0"), map2("-L", "0", "0", "L", "0", "0")},
                      1, "homotheties of the plane");
  if (key == "klein:5")
    return make_entry(key, quad,
                      {map2("L", "0", "0", "1/L", "0", "0"), map2("0", "1", "M", "0", "0", "0")},
                      1, "homotheties of the plane");
  if (key == "klein:6")
    return make_entry(key, punct, {map2("L", "0", "0", "-L", "0", "0")}, 2,
                      "{(ax, by), a,b != 0}");

  if (key == "cylinder:1")
    return make_entry(key, plane, {map2("1", "0", "0", "1", "0", "1")}, 4,
                      "{(ax+b, cx+y+d), a != 0}");
  if (key == "cylinder:2")
    return make_entry(key, plane, {map2("1", "1", "0", "1", "1/2", "1")}, 2, "{(x+ay+b, y+a)}");
  if (key == "cylinder:3")
    return make_entry(key, uhp, {map2("1", "0", "0", "1", "1", "0")}, 3, "{(x+ay+b, cy), c>0}");
  if (key == "cylinder:4")
    return make_entry(key, uhp, {map2("1", "0", "0", "E", "0", "0")}, 3,
                      "{(ax+b, cy), a != 0, c>0}");
  if (key == "cylinder:5")
    return make_entry(key, uhp, {map2("1", "1", "0", "1", "0", "0")}, 3,
                      "{(ax+by+c, ay), a>0}");
  if (key == "cylinder:6")
    return make_entry(key, uhp, {map2("E", "0", "0", "E", "0", "0")}, 3,
                      "{(ax+by, cy), a != 0, c>0}");
  if (key == "cylinder:7")
    return make_entry(key, quad, {map2("1", "0", "0", "E", "0", "0")}, 2, "{(ax, by), a,b>0}");
  if (key == "cylinder:8")
    // affinely the punctured plane itself: the trivial quotient carries the
    // scaling-invariant structure, so the table dimension is that of GL2
    return make_entry(key, punct, {}, 4, "GL2(R)");

  if (key == "mobius:1")
    return make_entry(key, plane, {map2("-1", "0", "0", "1", "0", "1")}, 2,
                      "{(ax, y+b), a != 0}");
  if (key == "mobius:2")
    return make_entry(key, plane, {map2("1", "0", "0", "-1", "1", "0")}, 2,
                      "{(x+a, by), b != 0}");
  if (key == "mobius:3")
    return make_entry(key, uhp, {map2("-1", "0", "0", "E", "0", "0")}, 2,
                      "{(ax, by), a != 0, b>0}");
  if (key == "mobius:4")
    return make_entry(key, uhp, {map2("-E", "0", "0", "E", "0", "0")}, 2,
                      "{(ax, by), a != 0, b>0}");
  if (key == "mobius:5")
    return make_entry(key, quad, {map2("0", "1", "E", "1", "0", "0")}, 1, "{(ax, ay), a>0}");

  throw UnknownSurface("no catalog entry for '" + key + "'");
}

} // namespace flataff
