#pragma once

#include <map>
#include <mutex>
#include <string>

#include "flataff/errors.hpp"

namespace flataff {

/// A formal parameter of the coefficient field. Parameters are transcendental
/// and independent; the positivity flag feeds only sign reasoning (domain
/// preservation checks), never numeric identities.
struct Param {
  std::string name;
  bool positive = true;
};

namespace detail {

inline bool valid_param_name(const std::string& name) {
  if (name.empty()) return false;
  if (!std::isalpha(static_cast<unsigned char>(name[0]))) return false;
  for (char c : name)
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
  // Coordinate names and grammar keywords cannot double as parameters.
  if (name == "x" || name == "y" || name == "exp" || name == "d") return false;
  if (name[0] == 'x' && name.size() > 1) {
    bool digits = true;
    for (std::size_t i = 1; i < name.size(); ++i)
      digits = digits && std::isdigit(static_cast<unsigned char>(name[i]));
    if (digits) return false;
  }
  return true;
}

struct ParamRegistry {
  std::mutex mutex;
  std::map<std::string, bool> positive_flags;

  static ParamRegistry& instance() {
    static ParamRegistry reg;
    return reg;
  }
};

} // namespace detail

/// Declares a parameter for the current session. Redeclaration with the same
/// positivity flag is a no-op; a conflicting flag is an error.
inline Param declare_param(const std::string& name, bool positive = true) {
  if (!detail::valid_param_name(name))
    throw Error("invalid parameter name '" + name + "'");
  auto& reg = detail::ParamRegistry::instance();
  std::lock_guard<std::mutex> lock(reg.mutex);
  auto [it, inserted] = reg.positive_flags.emplace(name, positive);
  if (!inserted && it->second != positive)
    throw DuplicateParam("parameter '" + name + "' redeclared with a different positivity flag");
  return Param{name, positive};
}

inline bool is_declared_param(const std::string& name) {
  auto& reg = detail::ParamRegistry::instance();
  std::lock_guard<std::mutex> lock(reg.mutex);
  return reg.positive_flags.count(name) > 0;
}

inline bool param_is_positive(const std::string& name) {
  auto& reg = detail::ParamRegistry::instance();
  std::lock_guard<std::mutex> lock(reg.mutex);
  auto it = reg.positive_flags.find(name);
  if (it == reg.positive_flags.end())
    throw MissingParam("parameter '" + name + "' is not declared");
  return it->second;
}

} // namespace flataff
