#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "flataff/rational.hpp"

namespace flataff {

/// Coordinate domain a field or connection lives on. Membership is decidable
/// on exact rational points and on float points.
struct Domain {
  enum class Kind { full_space, upper_half_plane, quadrant, punctured_plane };

  Kind kind = Kind::full_space;
  int dim = 2;

  static Domain full(int n) {
    if (n < 1) throw Error("domain dimension must be at least 1");
    return Domain{Kind::full_space, n};
  }
  static Domain upper_half_plane() { return Domain{Kind::upper_half_plane, 2}; }
  static Domain quadrant() { return Domain{Kind::quadrant, 2}; }
  static Domain punctured_plane() { return Domain{Kind::punctured_plane, 2}; }

  bool operator==(const Domain& o) const { return kind == o.kind && dim == o.dim; }
  bool operator!=(const Domain& o) const { return !(*this == o); }

  bool contains(const std::vector<Rational>& p) const {
    if (static_cast<int>(p.size()) != dim) return false;
    switch (kind) {
      case Kind::full_space: return true;
      case Kind::upper_half_plane: return p[1] > 0;
      case Kind::quadrant: return p[0] > 0 && p[1] > 0;
      case Kind::punctured_plane: return p[0] != 0 || p[1] != 0;
    }
    return false;
  }

  bool contains(const std::vector<double>& p) const {
    if (static_cast<int>(p.size()) != dim) return false;
    switch (kind) {
      case Kind::full_space: return true;
      case Kind::upper_half_plane: return p[1] > 0;
      case Kind::quadrant: return p[0] > 0 && p[1] > 0;
      case Kind::punctured_plane: return p[0] != 0 || p[1] != 0;
    }
    return false;
  }

  std::string name() const {
    switch (kind) {
      case Kind::full_space: return "full:" + std::to_string(dim);
      case Kind::upper_half_plane: return "uhp";
      case Kind::quadrant: return "quadrant";
      case Kind::punctured_plane: return "punctured";
    }
    return "?";
  }

  static Domain parse(const std::string& text) {
    if (text == "uhp" || text == "upper_half_plane") return upper_half_plane();
    if (text == "quadrant") return quadrant();
    if (text == "punctured" || text == "punctured_plane") return punctured_plane();
    if (text.rfind("full:", 0) == 0) {
      try {
        return full(std::stoi(text.substr(5)));
      } catch (const std::exception&) {
        throw Error("bad domain '" + text + "'");
      }
    }
    if (text == "plane" || text == "full") return full(2);
    throw Error("unknown domain '" + text + "'");
  }
};

} // namespace flataff
