// Command-line front end: reproducible reports over the surface catalog, the
// structure-constant checks, connection analysis, symmetry solves and the
// numeric flow probes. Exit codes: 0 ok, 1 expected-value mismatch, 2 input
// error.

#include <CLI11.hpp>

#include <fstream>
#include <future>
#include <iostream>
#include <sstream>

#include "flataff/flataff.hpp"

namespace {

using flataff::json;

struct GlobalOptions {
  std::string format = "text";
  std::uint64_t seed = 1;
  std::vector<std::string> env_kv;

  flataff::NumericParamEnv env() const {
    auto env = flataff::NumericParamEnv::defaults();
    for (const std::string& kv : env_kv) {
      const auto eq = kv.find('=');
      if (eq == std::string::npos)
        throw flataff::Error("--env expects KEY=FLOAT, got '" + kv + "'");
      env.set(kv.substr(0, eq), std::stod(kv.substr(eq + 1)));
    }
    return env;
  }
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw flataff::Error("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

json parse_json_file(const std::string& path, std::string* raw_out) {
  const std::string raw = read_file(path);
  if (raw_out) *raw_out = raw;
  json j = json::parse(raw, nullptr, false);
  if (j.is_discarded()) throw flataff::SchemaError("'" + path + "' is not valid JSON");
  return j;
}

int emit(const json& report, const GlobalOptions& opt, const std::string& text) {
  flataff::validate_report_schema(report);
  if (opt.format == "json") {
    std::cout << report.dump(2) << "\n";
  } else {
    std::cout << text;
  }
  if (report.contains("match") && !report.at("match").get<bool>()) return 1;
  return 0;
}

// ---- surfaces ---------------------------------------------------------------

json surface_result(const std::string& key) {
  const flataff::SurfaceEntry entry = flataff::surface_catalog(key);
  const auto basis = flataff::invariant_subalgebra(entry.action, entry.ambient);
  json fields = json::array();
  for (const auto& f : basis) fields.push_back(f.to_string());
  return {{"surface", key},
          {"domain", entry.action.domain.name()},
          {"invariant_dim", basis.size()},
          {"basis", fields},
          {"expected_dim", entry.expected_dim},
          {"expected_group", entry.expected_description},
          {"match", static_cast<int>(basis.size()) == entry.expected_dim}};
}

int cmd_surfaces(const std::string& key, const GlobalOptions& opt) {
  json results;
  bool all_match = true;
  std::string text;
  if (key == "all") {
    const auto& keys = flataff::surface_keys();
    std::vector<std::future<json>> futures;
    futures.reserve(keys.size());
    for (const auto& k : keys)
      futures.push_back(std::async(std::launch::async, surface_result, k));
    json entries = json::array();
    for (std::size_t i = 0; i < keys.size(); ++i) {
      json r = futures[i].get();
      all_match = all_match && r.at("match").get<bool>();
      entries.push_back(std::move(r));
    }
    results = {{"entries", entries}, {"count", keys.size()}};
    std::ostringstream os;
    for (const auto& e : entries)
      os << e.at("surface").get<std::string>() << ": dim "
         << e.at("invariant_dim").get<std::size_t>() << " (expected "
         << e.at("expected_dim").get<int>() << ") "
         << (e.at("match").get<bool>() ? "ok" : "MISMATCH") << "\n";
    os << (all_match ? "all surfaces match" : "MISMATCH in the surface table") << "\n";
    text = os.str();
  } else {
    json r = surface_result(key);
    all_match = r.at("match").get<bool>();
    std::ostringstream os;
    os << r.at("surface").get<std::string>() << " on " << r.at("domain").get<std::string>()
       << ": invariant dim " << r.at("invariant_dim").get<std::size_t>() << " (expected "
       << r.at("expected_dim").get<int>() << ", " << r.at("expected_group").get<std::string>()
       << ")\n";
    for (const auto& f : r.at("basis")) os << "  " << f.get<std::string>() << "\n";
    os << (all_match ? "match" : "MISMATCH") << "\n";
    text = os.str();
    results = std::move(r);
  }
  return emit(flataff::make_report("surfaces " + key, key, results, all_match), opt, text);
}

// ---- lsa check ----------------------------------------------------------------

struct LsaFlags {
  bool all = false, left_symmetric = false, flat = false, torsion_free = false,
       associative = false, descent = false;
};

int cmd_lsa_check(const std::string& path, LsaFlags flags, const GlobalOptions& opt) {
  std::string raw;
  const json jfile = parse_json_file(path, &raw);
  const flataff::AlgebraFile file = flataff::algebra_from_json(jfile);
  if (!flags.left_symmetric && !flags.flat && !flags.torsion_free && !flags.associative &&
      !flags.descent)
    flags.all = true;
  if (flags.all) {
    flags.left_symmetric = flags.flat = flags.torsion_free = flags.associative = true;
    flags.descent = file.h.has_value();
  }

  json checks = json::object();
  std::ostringstream os;
  if (flags.torsion_free) {
    const bool v = flataff::check_torsion_free_product(file.algebra);
    checks["torsion_free"] = v;
    os << "torsion_free: " << (v ? "true" : "false") << "\n";
  }
  if (flags.flat) {
    const bool v = flataff::check_flat_product(file.algebra);
    checks["flat"] = v;
    os << "flat: " << (v ? "true" : "false") << "\n";
  }
  if (flags.left_symmetric) {
    const bool v = flataff::check_left_symmetric(file.algebra);
    checks["left_symmetric"] = v;
    os << "left_symmetric: " << (v ? "true" : "false") << "\n";
  }
  if (flags.associative) {
    const bool v = flataff::check_associative(file.algebra);
    checks["associative"] = v;
    os << "associative: " << (v ? "true" : "false") << "\n";
  }
  json results = {{"dim", file.algebra.dim()}, {"checks", checks}};
  if (flags.descent) {
    if (!file.h) throw flataff::SchemaError("descent checks need a subspace 'h' in the file");
    const auto lmap = flataff::induced_L_map(file.algebra, *file.h);
    json descent = {
        {"absorb_g_times_h",
         flataff::check_absorption(file.algebra, *file.h, flataff::AbsorptionSide::g_times_h)},
        {"absorb_h_times_g",
         flataff::check_absorption(file.algebra, *file.h, flataff::AbsorptionSide::h_times_g)},
        {"well_defined", lmap.well_defined},
        {"condition_ii", lmap.condition_ii},
        {"quotient_dim", lmap.quotient_dim}};
    os << "descent: g*h in h: " << (descent["absorb_g_times_h"].get<bool>() ? "true" : "false")
       << ", h*g in h: " << (descent["absorb_h_times_g"].get<bool>() ? "true" : "false")
       << ", L well defined: " << (lmap.well_defined ? "true" : "false")
       << ", condition ii: " << (lmap.condition_ii ? "true" : "false") << "\n";
    if (file.m) {
      const bool split = flataff::reductive_split_check(file.algebra, *file.h, *file.m);
      descent["reductive_split"] = split;
      os << "reductive split: " << (split ? "true" : "false") << "\n";
      if (split) {
        const auto red = flataff::reductive_product(file.algebra, *file.h, *file.m);
        json constants = json::array();
        const int q = red.algebra.dim();
        for (int i = 0; i < q; ++i)
          for (int j = 0; j < q; ++j)
            for (int k = 0; k < q; ++k)
              if (!red.algebra.product(i, j, k).is_zero())
                constants.push_back(
                    {i + 1, j + 1, k + 1, red.algebra.product(i, j, k).to_string()});
        descent["reductive_product"] = constants;
        descent["ad_derivation"] = red.ad_derivation;
        os << "ad derivation on m: " << (red.ad_derivation ? "true" : "false") << "\n";
      }
    }
    results["descent"] = descent;
  }
  return emit(flataff::make_report("lsa check " + path, raw, results, std::nullopt), opt,
              os.str());
}

// ---- conn analyze -------------------------------------------------------------

int cmd_conn_analyze(const std::string& path, const GlobalOptions& opt) {
  std::string raw;
  const flataff::Connection c = flataff::connection_from_json(parse_json_file(path, &raw));
  const bool torsion_zero = c.torsion().is_zero();
  const bool curvature_zero = c.curvature().is_zero();
  json results = {{"dim", c.dim()},
                  {"domain", c.domain().name()},
                  {"torsion_zero", torsion_zero},
                  {"curvature_zero", curvature_zero},
                  {"flat_affine", torsion_zero && curvature_zero}};
  std::ostringstream os;
  os << "dim " << c.dim() << " on " << c.domain().name() << "\n"
     << "torsion zero: " << (torsion_zero ? "true" : "false") << "\n"
     << "curvature zero: " << (curvature_zero ? "true" : "false") << "\n"
     << "flat affine: " << ((torsion_zero && curvature_zero) ? "true" : "false") << "\n";
  return emit(flataff::make_report("conn analyze " + path, raw, results, std::nullopt), opt,
              os.str());
}

// ---- infaff solve ---------------------------------------------------------------

std::vector<std::vector<flataff::Rational>> parse_weights(const std::string& spec, int dim) {
  std::vector<std::vector<flataff::Rational>> out;
  if (spec.empty()) return out;
  std::stringstream ss(spec);
  std::string vec;
  while (std::getline(ss, vec, ';')) {
    std::vector<flataff::Rational> w;
    std::stringstream vs(vec);
    std::string item;
    while (std::getline(vs, item, ',')) {
      item.erase(0, item.find_first_not_of(" \t"));
      item.erase(item.find_last_not_of(" \t") + 1);
      w.push_back(flataff::rational_from_string(item));
    }
    if (static_cast<int>(w.size()) != dim)
      throw flataff::Error("weight vector '" + vec + "' has wrong arity");
    out.push_back(std::move(w));
  }
  return out;
}

int cmd_infaff_solve(const std::string& path, int degree, const std::string& weights,
                     const GlobalOptions& opt) {
  std::string raw;
  const flataff::Connection c = flataff::connection_from_json(parse_json_file(path, &raw));
  flataff::Ansatz ansatz = weights.empty() && degree < 0
                               ? flataff::Ansatz::default_for(c)
                               : flataff::Ansatz::make(c.dim(), degree < 0 ? 2 : degree,
                                                       parse_weights(weights, c.dim()));
  const auto basis = flataff::solve_infaff(c, ansatz);
  json fields = json::array();
  for (const auto& f : basis.fields) fields.push_back(f.to_string());
  json wjson = json::array();
  for (const auto& w : ansatz.weights) {
    json row = json::array();
    for (const auto& r : w) row.push_back(flataff::to_string(r));
    wjson.push_back(row);
  }
  json results = {{"dim", basis.dim()},
                  {"basis", fields},
                  {"ansatz", {{"max_degree", ansatz.max_degree}, {"weights", wjson}}}};
  std::ostringstream os;
  os << "symmetry dimension " << basis.dim() << " (degree <= " << ansatz.max_degree << ", "
     << ansatz.weights.size() << " weight vectors)\n";
  for (const auto& f : basis.fields) os << "  " << f.to_string() << "\n";
  return emit(flataff::make_report("infaff solve " + path, raw, results, std::nullopt), opt,
              os.str());
}

// ---- example ---------------------------------------------------------------------

int cmd_example(const std::string& sub, const GlobalOptions& opt) {
  const auto& ex = flataff::etale_example();
  if (sub == "lift") {
    json pairs = json::array();
    for (std::size_t i = 0; i < ex.orbit_basis.size(); ++i)
      pairs.push_back({{"orbit", ex.orbit_basis[i].to_string()},
                       {"lift", ex.lifted_basis[i].to_string()}});
    json incomplete = json::array();
    for (std::size_t i = 0; i < ex.orbit_incomplete.size(); ++i)
      incomplete.push_back({{"orbit", ex.orbit_incomplete[i].to_string()},
                            {"lift", ex.incomplete_lifts[i].to_string()}});
    // lift identity J * L(X) = X ∘ F, checked structurally
    bool match = true;
    auto check_lift = [&](const flataff::VectorField& orbit_field,
                          const flataff::VectorField& lift) {
      const int n = 2;
      for (int a = 0; a < n; ++a) {
        flataff::ExpPoly dot(n);
        for (int m = 0; m < n; ++m) dot += ex.dev.jacobian(a, m) * lift.component(m);
        if (dot != ex.dev.compose_into(orbit_field.component(a))) match = false;
      }
    };
    for (std::size_t i = 0; i < ex.orbit_basis.size(); ++i)
      check_lift(ex.orbit_basis[i], ex.lifted_basis[i]);
    for (std::size_t i = 0; i < ex.orbit_incomplete.size(); ++i)
      check_lift(ex.orbit_incomplete[i], ex.incomplete_lifts[i]);
    json results = {{"beta", pairs}, {"incomplete", incomplete}};
    std::ostringstream os;
    os << "lifts through D(x,y) = (y*exp(x), exp(x)):\n";
    for (const auto& p : pairs)
      os << "  " << p.at("orbit").get<std::string>() << "  ->  "
         << p.at("lift").get<std::string>() << "\n";
    os << "incomplete lifts:\n";
    for (const auto& p : incomplete)
      os << "  " << p.at("orbit").get<std::string>() << "  ->  "
         << p.at("lift").get<std::string>() << "\n";
    return emit(flataff::make_report("example lift", sub, results, match), opt, os.str());
  }
  if (sub == "solve") {
    const auto basis = flataff::solve_infaff(ex.pulled_back, ex.ansatz);
    std::vector<flataff::VectorField> expected = ex.lifted_basis;
    expected.insert(expected.end(), ex.incomplete_lifts.begin(), ex.incomplete_lifts.end());
    const bool match = basis.dim() == 6 && flataff::same_span(basis.fields, expected);
    json fields = json::array();
    for (const auto& f : basis.fields) fields.push_back(f.to_string());
    json results = {{"dim", basis.dim()}, {"basis", fields}};
    std::ostringstream os;
    os << "symmetry dimension " << basis.dim() << " (expected 6)\n";
    for (const auto& f : basis.fields) os << "  " << f.to_string() << "\n";
    os << (match ? "span matches the lifted basis" : "MISMATCH against the lifted basis")
       << "\n";
    return emit(flataff::make_report("example solve", sub, results, match), opt, os.str());
  }
  if (sub == "flows") {
    const auto env = opt.env();
    flataff::FlowGrid grid;
    grid.times = {-0.2, -0.1, 0.0, 0.1, 0.2};
    for (int i = 0; i < 5; ++i)
      for (int j = 0; j < 5; ++j)
        grid.points.push_back({-0.5 + 0.375 * i, 0.5 + 0.25 * j});
    bool match = true;
    json flows = json::array();
    std::ostringstream os;
    for (const auto& [field, closed] : ex.flows) {
      const auto report = flataff::verify_flow(field, closed.map, env, grid);
      const bool ok = report.max_defect_ode < 1e-6 && report.max_defect_grouplaw < 1e-7;
      match = match && ok;
      flows.push_back({{"name", closed.name},
                       {"field", field.to_string()},
                       {"max_defect_ode", report.max_defect_ode},
                       {"max_defect_grouplaw", report.max_defect_grouplaw},
                       {"ok", ok}});
      os << closed.name << " [" << field.to_string() << "]: ode defect "
         << report.max_defect_ode << ", group-law defect " << report.max_defect_grouplaw
         << (ok ? " ok" : " FAIL") << "\n";
    }
    json completeness = json::array();
    for (std::size_t i = 0; i < ex.flows.size(); ++i) {
      const auto& field = ex.flows[i].first;
      const auto verdict =
          flataff::completeness_probe(field, ex.cover, env, 50, 50.0, opt.seed);
      const bool expect_incomplete = i >= 4;
      const bool ok = verdict.incomplete == expect_incomplete;
      match = match && ok;
      json entry = {{"field", field.to_string()},
                    {"verdict",
                     verdict.incomplete ? "incomplete_witness" : "no_blowup_observed"},
                    {"ok", ok}};
      if (verdict.incomplete) {
        entry["witness_point"] = verdict.witness_point;
        entry["witness_time"] = verdict.witness_time;
        entry["witness_status"] = flataff::to_string(verdict.witness_status);
      }
      completeness.push_back(entry);
      os << ex.flows[i].second.name << ": "
         << (verdict.incomplete ? "incomplete_witness" : "no_blowup_observed");
      if (verdict.incomplete) os << " at t = " << verdict.witness_time;
      os << (ok ? " ok" : " FAIL") << "\n";
    }
    json results = {{"flows", flows}, {"completeness", completeness}};
    return emit(flataff::make_report("example flows", sub, results, match), opt, os.str());
  }
  throw flataff::Error("unknown example subcommand '" + sub + "'");
}

// ---- flows probe -------------------------------------------------------------------

int cmd_flows_probe(const std::string& path, const std::string& domain_override, double t_max,
                    std::size_t samples, const GlobalOptions& opt) {
  std::string raw;
  json jf = parse_json_file(path, &raw);
  if (!domain_override.empty()) jf["domain"] = domain_override;
  const flataff::VectorField field = flataff::field_from_json(jf);
  const auto env = opt.env();
  const auto verdict =
      flataff::completeness_probe(field, field.domain(), env, samples, t_max, opt.seed);
  json results = {{"field", field.to_string()},
                  {"domain", field.domain().name()},
                  {"t_max", t_max},
                  {"samples", samples},
                  {"verdict", verdict.incomplete ? "incomplete_witness" : "no_blowup_observed"}};
  std::ostringstream os;
  os << field.to_string() << " on " << field.domain().name() << ": ";
  if (verdict.incomplete) {
    results["witness_point"] = verdict.witness_point;
    results["witness_time"] = verdict.witness_time;
    results["witness_status"] = flataff::to_string(verdict.witness_status);
    json times = json::array(), points = json::array();
    const auto& tr = verdict.witness_trajectory;
    const std::size_t stride = std::max<std::size_t>(1, tr.times.size() / 64);
    for (std::size_t i = 0; i < tr.times.size(); i += stride) {
      times.push_back(tr.times[i]);
      points.push_back(tr.points[i]);
    }
    results["witness_trajectory"] = {{"times", times}, {"points", points}};
    os << "incomplete_witness at t = " << verdict.witness_time << " from ("
       << verdict.witness_point[0] << ", " << verdict.witness_point[1] << ") ["
       << flataff::to_string(verdict.witness_status) << "]\n";
  } else {
    os << "no_blowup_observed (t_max " << t_max << ", " << samples << " samples)\n";
  }
  return emit(flataff::make_report("flows probe " + path, raw, results, std::nullopt), opt,
              os.str());
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"flataff: exact symmetry algebra of flat affine plane quotients"};
  app.require_subcommand(1);
  GlobalOptions opt;
  app.add_option("--format", opt.format, "output format")->check(CLI::IsMember({"text", "json"}));
  app.add_option("--seed", opt.seed, "seed for quasi-random sampling");
  app.add_option("--env", opt.env_kv, "numeric parameter value KEY=FLOAT (repeatable)");

  auto* surfaces = app.add_subcommand("surfaces", "invariant symmetry algebras of the catalog");
  std::string surface_key;
  surfaces->add_option("key", surface_key, "surface key (e.g. torus:3) or 'all'")->required();

  auto* lsa = app.add_subcommand("lsa", "structure-constant checks");
  auto* lsa_check = lsa->add_subcommand("check", "run identity and descent checks on a file");
  std::string lsa_file;
  LsaFlags lsa_flags;
  lsa_check->add_option("file", lsa_file, "algebra JSON file")->required();
  lsa_check->add_flag("--all", lsa_flags.all, "every applicable check");
  lsa_check->add_flag("--left-symmetric", lsa_flags.left_symmetric, "left symmetry identity");
  lsa_check->add_flag("--flat", lsa_flags.flat, "flatness identity");
  lsa_check->add_flag("--torsion-free", lsa_flags.torsion_free, "torsion-free pairing");
  lsa_check->add_flag("--associative", lsa_flags.associative, "associativity");
  lsa_check->add_flag("--descent", lsa_flags.descent, "homogeneous descent conditions");

  auto* conn = app.add_subcommand("conn", "connection analysis");
  auto* conn_analyze = conn->add_subcommand("analyze", "torsion/curvature/flatness report");
  std::string conn_file;
  conn_analyze->add_option("file", conn_file, "connection JSON file")->required();

  auto* infaff = app.add_subcommand("infaff", "infinitesimal symmetry solves");
  auto* infaff_solve = infaff->add_subcommand("solve", "solve over a finite ansatz");
  std::string infaff_file, infaff_weights;
  int infaff_degree = -1;
  infaff_solve->add_option("file", infaff_file, "connection JSON file")->required();
  infaff_solve->add_option("--degree", infaff_degree, "polynomial degree bound");
  infaff_solve->add_option("--weights", infaff_weights,
                           "weight vectors 'a,b;c,d' (rationals)");

  auto* example = app.add_subcommand("example", "built-in developing-map example");
  std::string example_sub;
  example->add_option("what", example_sub, "lift | solve | flows")
      ->required()
      ->check(CLI::IsMember({"lift", "solve", "flows"}));

  auto* flows = app.add_subcommand("flows", "numeric flow probes");
  auto* flows_probe = flows->add_subcommand("probe", "completeness probe of a field file");
  std::string field_file, probe_domain;
  double t_max = 50.0;
  std::size_t n_samples = 50;
  flows_probe->add_option("file", field_file, "field JSON file")->required();
  flows_probe->add_option("--domain", probe_domain, "override the field's domain");
  flows_probe->add_option("--t-max", t_max, "integration horizon");
  flows_probe->add_option("--samples", n_samples, "number of quasi-random samples");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    flataff::declare_param("E");
    if (surfaces->parsed()) return cmd_surfaces(surface_key, opt);
    if (lsa_check->parsed()) return cmd_lsa_check(lsa_file, lsa_flags, opt);
    if (conn_analyze->parsed()) return cmd_conn_analyze(conn_file, opt);
    if (infaff_solve->parsed())
      return cmd_infaff_solve(infaff_file, infaff_degree, infaff_weights, opt);
    if (example->parsed()) return cmd_example(example_sub, opt);
    if (flows_probe->parsed())
      return cmd_flows_probe(field_file, probe_domain, t_max, n_samples, opt);
    std::cerr << "missing subcommand\n";
    return 2;
  } catch (const flataff::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
