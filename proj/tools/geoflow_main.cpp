// geoflow: command-line front end for the integrability tool-chain.
//
//   geoflow list [--json]
//   geoflow simulate --config cfg.json [--seed N] [--out DIR] [--json]
//   geoflow verify   --config cfg.json [--seed N] [--out DIR] [--json]
//
// Exit codes: 0 all requested checks pass, 1 configuration or runtime
// error, 2 at least one check failed.

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>

#include "CLI11.hpp"
#include "geoflow/rng.hpp"
#include "geoflow/verify.hpp"
#include "json.hpp"

using json = nlohmann::ordered_json;
using namespace geoflow;

namespace {

constexpr const char* kVersion = "0.1.0";

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void check_keys(const json& obj, const std::string& where,
                std::initializer_list<const char*> allowed) {
  if (!obj.is_object()) throw ConfigError(where + ": expected an object");
  for (const auto& [key, value] : obj.items()) {
    bool ok = false;
    for (const char* a : allowed)
      if (key == a) ok = true;
    if (!ok) throw ConfigError(where + ": unknown key \"" + key + "\"");
  }
}

struct RunConfig {
  AlgebraSpec::Ptr spec;
  std::optional<TwoSidedAction> action;
  MetricSpec metric = MetricSpec::biinvariant();
  IntegratorConfig integrator;
  std::uint64_t seed = 0;
  double tol_rank = tol::rank_rel;
  double drift_tol = 1e-7;
  int samples = 24;
  std::map<std::string, bool> checks = {{"completeness", true},
                                        {"horizontal_regularity", true},
                                        {"torus_dimension", true},
                                        {"conservation", true}};
  json resolved;  // the fully-resolved configuration, echoed into reports
};

Family parse_family(const std::string& f) {
  if (f == "su") return Family::SU;
  if (f == "so") return Family::SO;
  if (f == "sp") return Family::Sp;
  throw ConfigError("algebra.family must be one of su, so, sp (got \"" + f + "\")");
}

AlgebraElement cartan_combo(const Subspace& t, const json& coeffs,
                            const std::string& where) {
  if (!coeffs.is_array() || (int)coeffs.size() != t.dimension())
    throw ConfigError(where + ": expected an array of " +
                      std::to_string(t.dimension()) + " torus coefficients");
  AlgebraElement out = t.spec()->zero();
  for (int i = 0; i < t.dimension(); ++i)
    out = out + t.basis_element(i) * coeffs[i].get<double>();
  return out;
}

std::pair<MetricSpec::Side, std::optional<SectionalOperator>> parse_side(
    const AlgebraSpec::Ptr& spec, const json& side, const std::string& where) {
  if (side.is_string()) {
    std::string s = side.get<std::string>();
    if (s == "none") return {MetricSpec::Side::None, std::nullopt};
    if (s == "identity") return {MetricSpec::Side::Identity, std::nullopt};
    throw ConfigError(where + ": expected \"none\", \"identity\", or a sectional spec");
  }
  check_keys(side, where, {"sectional"});
  const json& sec = side.at("sectional");
  check_keys(sec, where + ".sectional", {"a", "b", "D"});
  Subspace t = default_cartan(spec);
  auto a = cartan_combo(t, sec.at("a"), where + ".sectional.a");
  auto b = cartan_combo(t, sec.at("b"), where + ".sectional.b");
  const json& Dj = sec.at("D");
  int r = t.dimension();
  if (!Dj.is_array() || (int)Dj.size() != r)
    throw ConfigError(where + ".sectional.D: expected a " + std::to_string(r) + "x" +
                      std::to_string(r) + " matrix");
  Eigen::MatrixXd D(r, r);
  for (int i = 0; i < r; ++i) {
    if (!Dj[i].is_array() || (int)Dj[i].size() != r)
      throw ConfigError(where + ".sectional.D: row " + std::to_string(i) +
                        " has the wrong length");
    for (int j = 0; j < r; ++j) D(i, j) = Dj[i][j].get<double>();
  }
  return {MetricSpec::Side::Sectional, build_sectional(t, a, b, D)};
}

json side_to_json(MetricSpec::Side side, const std::optional<SectionalOperator>& op,
                  const AlgebraSpec::Ptr& spec) {
  switch (side) {
    case MetricSpec::Side::None: return "none";
    case MetricSpec::Side::Identity: return "identity";
    case MetricSpec::Side::Sectional: {
      // echo back the operator through its defining data
      Subspace t = default_cartan(spec);
      json a = json::array(), b = json::array(), D = json::array();
      for (int i = 0; i < t.dimension(); ++i) {
        a.push_back(inner(op->a(), t.basis_element(i)));
        b.push_back(inner(op->b(), t.basis_element(i)));
        json row = json::array();
        for (int j = 0; j < t.dimension(); ++j)
          row.push_back(inner(t.basis_element(i), op->apply(t.basis_element(j))));
        D.push_back(row);
      }
      return json{{"sectional", {{"a", a}, {"b", b}, {"D", D}}}};
    }
  }
  return "none";
}

RunConfig parse_config(const std::string& path, std::optional<std::uint64_t> seed_cli) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path);
  json cfg;
  try {
    in >> cfg;
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  check_keys(cfg, "config",
             {"algebra", "scenario", "metric", "integrator", "seed", "tolerances",
              "checks", "samples"});

  RunConfig rc;

  // algebra and/or scenario determine the spec
  if (cfg.contains("algebra")) {
    const json& alg = cfg.at("algebra");
    check_keys(alg, "algebra", {"family", "n"});
    rc.spec = AlgebraSpec::create(parse_family(alg.at("family").get<std::string>()),
                                  alg.at("n").get<int>());
  }
  if (cfg.contains("scenario")) {
    const json& sc = cfg.at("scenario");
    check_keys(sc, "scenario", {"name", "params"});
    std::string name = sc.at("name").get<std::string>();
    json params = sc.value("params", json::object());
    if (name == "eschenburg") {
      check_keys(params, "scenario.params", {"k", "l", "p", "q"});
      rc.action = eschenburg_action(params.at("k").get<int>(), params.at("l").get<int>(),
                                    params.at("p").get<int>(), params.at("q").get<int>());
    } else if (name == "gromoll_meyer") {
      check_keys(params, "scenario.params", {});
      rc.action = gromoll_meyer_action();
    } else if (name == "flag") {
      check_keys(params, "scenario.params", {});
      rc.action = flag_action(rc.spec ? rc.spec : AlgebraSpec::create(Family::SU, 3));
    } else {
      throw ConfigError("unknown scenario \"" + name + "\" (see `geoflow list`)");
    }
    if (rc.spec && rc.spec->family() != rc.action->spec()->family())
      throw ConfigError("algebra and scenario disagree on the family");
    rc.spec = rc.action->spec();
  }
  if (!rc.spec) throw ConfigError("config needs an \"algebra\" or a \"scenario\"");

  if (cfg.contains("metric")) {
    const json& met = cfg.at("metric");
    check_keys(met, "metric", {"left", "right"});
    auto [ls, lop] = parse_side(rc.spec, met.value("left", json("identity")), "metric.left");
    auto [rs, rop] = parse_side(rc.spec, met.value("right", json("none")), "metric.right");
    if (ls == MetricSpec::Side::None && rs == MetricSpec::Side::None)
      throw ConfigError("metric: at least one side must be present");
    rc.metric.left = ls;
    rc.metric.left_op = lop;
    rc.metric.right = rs;
    rc.metric.right_op = rop;
  }

  if (cfg.contains("integrator")) {
    const json& integ = cfg.at("integrator");
    check_keys(integ, "integrator", {"h", "T", "method", "reproject"});
    rc.integrator.h = integ.value("h", rc.integrator.h);
    rc.integrator.horizon = integ.value("T", rc.integrator.horizon);
    std::string method = integ.value("method", std::string("rk4"));
    if (method == "rk4")
      rc.integrator.method = IntegratorConfig::Method::Rk4;
    else if (method == "lie-rk4")
      rc.integrator.method = IntegratorConfig::Method::LieRk4;
    else
      throw ConfigError("integrator.method must be \"rk4\" or \"lie-rk4\"");
    rc.integrator.reproject = integ.value("reproject", true);
    if (rc.integrator.h <= 0 || rc.integrator.horizon < 0)
      throw ConfigError("integrator: h must be > 0 and T >= 0");
  }

  rc.seed = cfg.value("seed", std::uint64_t{0});
  if (seed_cli) rc.seed = *seed_cli;

  if (cfg.contains("tolerances")) {
    const json& tl = cfg.at("tolerances");
    check_keys(tl, "tolerances", {"tol_rank", "drift"});
    rc.tol_rank = tl.value("tol_rank", rc.tol_rank);
    rc.drift_tol = tl.value("drift", rc.drift_tol);
    if (rc.tol_rank <= 0 || rc.drift_tol <= 0)
      throw ConfigError("tolerances must be positive");
  }
  rc.samples = cfg.value("samples", rc.samples);
  if (rc.samples <= 0) throw ConfigError("samples must be positive");

  if (cfg.contains("checks")) {
    const json& ck = cfg.at("checks");
    check_keys(ck, "checks",
               {"completeness", "horizontal_regularity", "torus_dimension",
                "conservation"});
    for (auto& [name, on] : rc.checks) on = ck.value(name, on);
  }

  // echo every resolved value
  rc.resolved["algebra"] = {{"family", family_name(rc.spec->family())},
                            {"n", rc.spec->n()}};
  if (rc.action) {
    rc.resolved["scenario"] = {{"name", rc.action->name()}};
    if (cfg.contains("scenario") && cfg.at("scenario").contains("params"))
      rc.resolved["scenario"]["params"] = cfg.at("scenario").at("params");
  }
  rc.resolved["metric"] = {
      {"left", side_to_json(rc.metric.left, rc.metric.left_op, rc.spec)},
      {"right", side_to_json(rc.metric.right, rc.metric.right_op, rc.spec)}};
  rc.resolved["integrator"] = {
      {"h", rc.integrator.h},
      {"T", rc.integrator.horizon},
      {"method",
       rc.integrator.method == IntegratorConfig::Method::Rk4 ? "rk4" : "lie-rk4"},
      {"reproject", rc.integrator.reproject}};
  rc.resolved["seed"] = rc.seed;
  rc.resolved["tolerances"] = {{"tol_rank", rc.tol_rank}, {"drift", rc.drift_tol}};
  rc.resolved["samples"] = rc.samples;
  rc.resolved["checks"] = rc.checks;
  return rc;
}

std::vector<Observable> standard_watch(const RunConfig& rc) {
  std::vector<Observable> w;
  MetricSpec metric = rc.metric;
  w.push_back(
      {"H", [metric](const CotangentState& x) { return hamiltonian(metric, x); }});
  for (int k : rc.spec->default_poly_degrees()) {
    w.push_back({"p" + std::to_string(k) + "(m)",
                 [k](const CotangentState& x) { return invariant_poly(k, x.m()); }});
    w.push_back({"p" + std::to_string(k) + "(n)",
                 [k](const CotangentState& x) { return invariant_poly(k, x.spatial()); }});
  }
  if (rc.action) {
    for (std::size_t i = 0; i < rc.action->pairs().size(); ++i) {
      TwoSidedAction act = *rc.action;
      w.push_back({"phi[" + std::to_string(i) + "]",
                   [act, i](const CotangentState& x) { return moment(act, x)((int)i); }});
    }
  }
  return w;
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write " + path.string());
  out << content;
}

int cmd_list(bool as_json) {
  auto scenarios = builtin_scenarios();
  if (as_json) {
    json out = json::array();
    for (const auto& s : scenarios)
      out.push_back({{"name", s.name}, {"signature", s.signature},
                     {"description", s.description}});
    std::cout << out.dump(2) << "\n";
  } else {
    for (const auto& s : scenarios)
      std::cout << s.name << "  " << s.signature << "\n    " << s.description << "\n";
  }
  return 0;
}

CotangentState initial_state(const RunConfig& rc) {
  auto id = GroupElement::identity(rc.spec);
  if (rc.action) return {id, sample_horizontal(*rc.action, rc.seed, 1)[0]};
  Rng rng = Rng::stream(rc.seed, 0);
  auto m = rc.spec->element(rng.gaussian_vector(rc.spec->dim()));
  return {id, m * (1.0 / m.norm())};
}

int cmd_simulate(const RunConfig& rc, const std::string& out_dir, bool as_json) {
  auto t0 = std::chrono::steady_clock::now();
  Trajectory tr = integrate(rc.metric, initial_state(rc), rc.integrator,
                            standard_watch(rc), true);
  std::chrono::duration<double> wall = std::chrono::steady_clock::now() - t0;
  std::cerr << "simulate: " << tr.times.size() << " samples in " << wall.count()
            << " s\n";

  json report;
  report["command"] = "simulate";
  report["version"] = kVersion;
  report["config"] = rc.resolved;
  json drift, rel;
  for (const auto& [name, d] : tr.drift) drift[name] = d;
  for (const auto& [name, d] : tr.relative_drift) rel[name] = d;
  report["drift"] = drift;
  report["relative_drift"] = rel;
  report["rows"] = tr.times.size();

  std::filesystem::create_directories(out_dir);
  write_file(std::filesystem::path(out_dir) / "trajectory.csv", trajectory_csv(tr));
  write_file(std::filesystem::path(out_dir) / "report.json", report.dump(2) + "\n");
  if (as_json) std::cout << report.dump(2) << "\n";
  return 0;
}

int cmd_verify(const RunConfig& rc, const std::string& out_dir, bool as_json) {
  if (!rc.action)
    throw ConfigError("verify requires a \"scenario\" entry in the config");
  auto t0 = std::chrono::steady_clock::now();

  json report;
  report["command"] = "verify";
  report["version"] = kVersion;
  report["config"] = rc.resolved;
  bool all_pass = true;

  auto family = biinvariant_coordinate_family(rc.spec);

  if (rc.checks.at("completeness")) {
    auto rep = completeness_check(family, rc.samples, rc.seed, rc.tol_rank);
    report["completeness"] = {{"samples", rep.samples},
                              {"ambiguous", rep.ambiguous},
                              {"modal_ddim", rep.modal_ddim},
                              {"modal_dind", rep.modal_dind},
                              {"phase_dim", rep.phase_dim},
                              {"pass", rep.pass}};
    all_pass = all_pass && rep.pass;
  }

  if (rc.checks.at("horizontal_regularity")) {
    auto rep = horizontal_regularity(*rc.action, rc.samples, rc.seed, rc.tol_rank);
    report["horizontal_regularity"] = {{"samples", rep.samples},
                                       {"regular", rep.regular},
                                       {"full_gradient_rank", rep.full_gradient_rank},
                                       {"regular_fraction", rep.regular_fraction},
                                       {"pass", rep.pass}};
    all_pass = all_pass && rep.pass;
  }

  if (rc.checks.at("torus_dimension")) {
    try {
      auto rep = torus_dimension(*rc.action, rc.samples, rc.seed, rc.tol_rank);
      json hist;
      for (const auto& [dim, count] : rep.histogram)
        hist[std::to_string(dim)] = count;
      report["torus_dimension"] = {{"torus_dim", rep.torus_dim},
                                   {"min_u_xi_dim", rep.min_u_xi_dim},
                                   {"modal_u_xi_dim", rep.modal_u_xi_dim},
                                   {"histogram", hist},
                                   {"supported", rep.supported}};
      all_pass = all_pass && rep.supported;
    } catch (const HypothesisFailed& e) {
      report["torus_dimension"] = {{"supported", false}, {"error", e.what()}};
      all_pass = false;
    }
  }

  if (rc.checks.at("conservation")) {
    auto rep = conservation_certificate(rc.metric, *rc.action, family, rc.integrator,
                                        rc.seed, 3, rc.drift_tol);
    json states = json::array();
    for (const auto& s : rep.states) {
      double worst_family = 0.0;
      for (const auto& [name, d] : s.family_drift)
        worst_family = std::max(worst_family, d);
      states.push_back({{"horizontal_start", s.horizontal_start},
                        {"initial_moment_norm", s.initial_moment_norm},
                        {"max_moment_drift", s.max_moment_drift},
                        {"max_moment_norm", s.max_moment_norm},
                        {"worst_family_drift", worst_family},
                        {"pass", s.pass}});
    }
    report["conservation"] = {{"drift_tolerance", rep.drift_tolerance},
                              {"states", states},
                              {"pass", rep.pass}};
    all_pass = all_pass && rep.pass;
  }

  report["pass"] = all_pass;
  std::chrono::duration<double> wall = std::chrono::steady_clock::now() - t0;
  std::cerr << "verify: " << wall.count() << " s\n";

  std::filesystem::create_directories(out_dir);
  write_file(std::filesystem::path(out_dir) / "report.json", report.dump(2) + "\n");
  if (as_json)
    std::cout << report.dump(2) << "\n";
  else
    std::cout << (all_pass ? "PASS" : "FAIL") << " (report in " << out_dir
              << "/report.json)\n";
  return all_pass ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"numerical certification of geodesic-flow integrability structure"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  bool list_json = false;
  auto* list = app.add_subcommand("list", "list the built-in scenarios");
  list->add_flag("--json", list_json, "machine-readable output");

  std::string config_path, out_dir = ".";
  std::optional<std::uint64_t> seed_cli;
  bool run_json = false;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "JSON configuration file")->required();
    sub->add_option("--seed", seed_cli, "override the config seed");
    sub->add_option("--out", out_dir, "output directory (default .)");
    sub->add_flag("--json", run_json, "print the report to stdout");
  };
  auto* simulate = app.add_subcommand("simulate", "integrate one trajectory");
  add_common(simulate);
  auto* verify = app.add_subcommand("verify", "run the configured checks");
  add_common(verify);

  CLI11_PARSE(app, argc, argv);

  try {
    if (list->parsed()) return cmd_list(list_json);
    RunConfig rc = parse_config(config_path, seed_cli);
    if (simulate->parsed()) return cmd_simulate(rc, out_dir, run_json);
    return cmd_verify(rc, out_dir, run_json);
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
