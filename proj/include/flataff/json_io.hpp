#pragma once

#include <json.hpp>

#include "flataff/connection.hpp"
#include "flataff/lsa.hpp"
#include "flataff/parser.hpp"

namespace flataff {

using nlohmann::json;

// ---- exp-poly / field / connection -----------------------------------------

inline json exppoly_to_json(const ExpPoly& f) {
  json terms = json::array();
  for (const auto& [k, c] : f.terms()) {
    json weight = json::array();
    for (const Rational& w : k.weight) weight.push_back(to_string(w));
    terms.push_back({{"coef", c.to_string()}, {"powers", k.powers}, {"weight", weight}});
  }
  return terms;
}

inline Rational rational_from_json(const json& j) {
  if (j.is_number_integer()) return Rational(j.get<long long>());
  if (j.is_string()) return rational_from_string(j.get<std::string>());
  throw SchemaError("expected a rational (integer or \"n/d\" string)");
}

inline ExpPoly exppoly_from_json(const json& j, int dim) {
  if (!j.is_array()) throw SchemaError("exppoly must be an array of terms");
  ExpPoly f(dim);
  for (const auto& t : j) {
    if (!t.is_object() || !t.contains("coef") || !t.contains("powers") || !t.contains("weight"))
      throw SchemaError("exppoly term needs coef, powers, weight");
    std::vector<int> powers = t.at("powers").get<std::vector<int>>();
    if (static_cast<int>(powers.size()) != dim) throw SchemaError("powers length != dim");
    std::vector<Rational> weight;
    for (const auto& w : t.at("weight")) weight.push_back(rational_from_json(w));
    if (static_cast<int>(weight.size()) != dim) throw SchemaError("weight length != dim");
    Scalar coef;
    if (t.at("coef").is_string()) {
      coef = parse_scalar(t.at("coef").get<std::string>());
    } else if (t.at("coef").is_number_integer()) {
      coef = Scalar(Rational(t.at("coef").get<long long>()));
    } else {
      throw SchemaError("coef must be a scalar literal string or integer");
    }
    f += ExpPoly::term(dim, std::move(powers), std::move(weight), std::move(coef));
  }
  return f;
}

inline json field_to_json(const VectorField& f) {
  json comps = json::array();
  for (int i = 0; i < f.dim(); ++i) comps.push_back(exppoly_to_json(f.component(i)));
  return {{"dim", f.dim()},
          {"domain", f.domain().name()},
          {"components", comps},
          {"literal", f.to_string()}};
}

inline VectorField field_from_json(const json& j) {
  if (!j.is_object()) throw SchemaError("field must be an object");
  if (!j.contains("domain")) throw SchemaError("field needs a domain");
  const Domain dom = Domain::parse(j.at("domain").get<std::string>());
  if (j.contains("params"))
    for (const auto& p : j.at("params")) {
      if (p.is_string()) {
        declare_param(p.get<std::string>());
      } else {
        declare_param(p.at("name").get<std::string>(), p.value("positive", true));
      }
    }
  if (j.contains("field")) return parse_field(j.at("field").get<std::string>(), dom);
  if (!j.contains("components")) throw SchemaError("field needs components or a field literal");
  std::vector<ExpPoly> comps;
  for (const auto& c : j.at("components")) comps.push_back(exppoly_from_json(c, dom.dim));
  return VectorField(dom, std::move(comps));
}

inline json connection_to_json(const Connection& c) {
  json gamma = json::array();
  const int n = c.dim();
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (!c.gamma(k, i, j).is_zero())
          gamma.push_back({{"k", k + 1},
                           {"i", i + 1},
                           {"j", j + 1},
                           {"fn", exppoly_to_json(c.gamma(k, i, j))}});
  return {{"dim", n}, {"domain", c.domain().name()}, {"gamma", gamma}};
}

/// Connection from {"dim", "domain", "gamma": [{"k","i","j","fn"}...]} with
/// 1-based indices; omitted entries are zero.
inline Connection connection_from_json(const json& j) {
  if (!j.is_object() || !j.contains("dim") || !j.contains("domain"))
    throw SchemaError("connection needs dim and domain");
  const Domain dom = Domain::parse(j.at("domain").get<std::string>());
  if (j.at("dim").get<int>() != dom.dim) throw SchemaError("connection dim conflicts with domain");
  if (j.contains("params"))
    for (const auto& p : j.at("params")) {
      if (p.is_string()) {
        declare_param(p.get<std::string>());
      } else {
        declare_param(p.at("name").get<std::string>(), p.value("positive", true));
      }
    }
  Connection c(dom);
  for (const auto& e : j.value("gamma", json::array())) {
    const int k = e.at("k").get<int>(), i = e.at("i").get<int>(), jj = e.at("j").get<int>();
    if (k < 1 || k > dom.dim || i < 1 || i > dom.dim || jj < 1 || jj > dom.dim)
      throw SchemaError("christoffel index out of range");
    if (e.contains("fn") && e.at("fn").is_string()) {
      c.set_gamma(k - 1, i - 1, jj - 1, parse_exppoly(e.at("fn").get<std::string>(), dom.dim));
    } else {
      c.set_gamma(k - 1, i - 1, jj - 1, exppoly_from_json(e.at("fn"), dom.dim));
    }
  }
  return c;
}

// ---- product algebras -------------------------------------------------------

/// Algebra file: {"dim", "params": [...], "bracket": [[i,j,k,coef]...],
/// "product": [...], "h": [[...]...], "m": [[...]...]} with 1-based sparse
/// triples; omitted entries are zero.
struct AlgebraFile {
  ProductAlgebra algebra;
  std::optional<SubspaceSpec> h, m;
};

inline Scalar scalar_from_json(const json& j) {
  if (j.is_number_integer()) return Scalar(Rational(j.get<long long>()));
  if (j.is_string()) return parse_scalar(j.get<std::string>());
  throw SchemaError("expected scalar literal string or integer");
}

inline AlgebraFile algebra_from_json(const json& j) {
  if (!j.is_object() || !j.contains("dim")) throw SchemaError("algebra needs dim");
  const int d = j.at("dim").get<int>();
  if (d < 1 || d > 16) throw SchemaError("algebra dim out of range");
  for (const auto& p : j.value("params", json::array())) {
    if (p.is_string()) {
      declare_param(p.get<std::string>());
    } else {
      declare_param(p.at("name").get<std::string>(), p.value("positive", true));
    }
  }
  const std::size_t need = static_cast<std::size_t>(d) * d * d;
  std::vector<Scalar> bracket(need), product(need);
  auto fill = [&](const char* key, std::vector<Scalar>& dst) {
    for (const auto& t : j.value(key, json::array())) {
      if (!t.is_array() || t.size() != 4) throw SchemaError("sparse triple must be [i,j,k,coef]");
      const int i = t[0].get<int>(), jj = t[1].get<int>(), k = t[2].get<int>();
      if (i < 1 || i > d || jj < 1 || jj > d || k < 1 || k > d)
        throw SchemaError("structure constant index out of range");
      dst[((i - 1) * d + (jj - 1)) * d + (k - 1)] = scalar_from_json(t[3]);
    }
  };
  fill("bracket", bracket);
  fill("product", product);
  // with no bracket given, default to the commutator of the product
  if (!j.contains("bracket")) {
    for (int i = 0; i < d; ++i)
      for (int jj = 0; jj < d; ++jj)
        for (int k = 0; k < d; ++k)
          bracket[(i * d + jj) * d + k] =
              product[(i * d + jj) * d + k] - product[(jj * d + i) * d + k];
  }
  std::vector<std::string> labels;
  for (const auto& l : j.value("labels", json::array())) labels.push_back(l.get<std::string>());

  AlgebraFile out{ProductAlgebra(d, std::move(bracket), std::move(product), std::move(labels)),
                  std::nullopt, std::nullopt};
  auto subspace = [&](const char* key) -> std::optional<SubspaceSpec> {
    if (!j.contains(key)) return std::nullopt;
    std::vector<std::vector<Scalar>> vecs;
    for (const auto& row : j.at(key)) {
      std::vector<Scalar> v;
      for (const auto& e : row) v.push_back(scalar_from_json(e));
      vecs.push_back(std::move(v));
    }
    return SubspaceSpec::of(std::move(vecs), d);
  };
  out.h = subspace("h");
  out.m = subspace("m");
  return out;
}

// ---- reports ----------------------------------------------------------------

inline constexpr int kReportSchemaVersion = 1;
inline constexpr const char* kVersionString = "flataff 0.1.0";

inline std::string fnv1a_digest(const std::string& data) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : data) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

inline json make_report(const std::string& command, const std::string& inputs,
                        json results, std::optional<bool> match) {
  json r = {{"schema_version", kReportSchemaVersion},
            {"version", kVersionString},
            {"command", command},
            {"inputs_digest", fnv1a_digest(inputs)},
            {"results", std::move(results)}};
  if (match) r["match"] = *match;
  return r;
}

inline void validate_report_schema(const json& r) {
  if (!r.is_object()) throw SchemaError("report must be an object");
  if (!r.contains("schema_version") || !r.at("schema_version").is_number_integer())
    throw SchemaError("report needs an integer schema_version");
  if (r.at("schema_version").get<int>() != kReportSchemaVersion)
    throw SchemaError("unsupported report schema version");
  for (const char* key : {"version", "command", "inputs_digest"})
    if (!r.contains(key) || !r.at(key).is_string())
      throw SchemaError(std::string("report needs string field '") + key + "'");
  if (!r.contains("results") || !r.at("results").is_object())
    throw SchemaError("report needs an object field 'results'");
  if (r.contains("match") && !r.at("match").is_boolean())
    throw SchemaError("report match flag must be boolean");
}

} // namespace flataff
