#ifndef BESOVMAP_RUNNER_HPP
#define BESOVMAP_RUNNER_HPP

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <iostream>
#include <string>
#include <unordered_map>
#include <vector>

#include "besovmap/besov.hpp"
#include "besovmap/io.hpp"
#include "besovmap/mapping.hpp"
#include "besovmap/space.hpp"

namespace besovmap {

/// Batch front end: builds spaces/maps/families from a JSON config, runs the
/// requested analyses, writes one JSON report per analysis, and encodes
/// verify-mode pass/fail in the exit status.

struct RunResult {
  int exit_code = 0;
  std::vector<std::string> report_paths;
  std::size_t analyses_run = 0;
  std::size_t verify_failures = 0;
};

namespace run_detail {

struct Verify {
  bool enabled = false;
  bool pass = true;
  Json checks = Json::array();

  void check(const std::string& what, bool ok, const Json& value, const Json& bound) {
    checks.push_back(Json{{"check", what}, {"ok", ok}, {"value", value}, {"bound", bound}});
    if (!ok) pass = false;
  }
};

struct Family {
  std::vector<SampledFunction> funcs;
  std::vector<BumpSpec> specs;
  SpacePtr space;
};

struct Registry {
  std::unordered_map<std::string, SpacePtr> spaces;
  std::unordered_map<std::string, SampledMap> maps;
  std::unordered_map<std::string, Family> families;

  SpacePtr space(const std::string& name) const {
    auto it = spaces.find(name);
    if (it == spaces.end()) throw Error(ErrorCode::ConfigError, "unknown space " + name);
    return it->second;
  }
  const SampledMap& map(const std::string& name) const {
    auto it = maps.find(name);
    if (it == maps.end()) throw Error(ErrorCode::ConfigError, "unknown map " + name);
    return it->second;
  }
  const Family& family(const std::string& name) const {
    auto it = families.find(name);
    if (it == families.end()) throw Error(ErrorCode::ConfigError, "unknown family " + name);
    return it->second;
  }
};

inline std::vector<double> vec_of(const Json& j) { return j.get<std::vector<double>>(); }

inline SpacePtr build_space(const Json& spec, const Registry& reg) {
  std::string builder = spec.at("builder");
  if (builder == "grid") {
    std::vector<double> offset;
    if (spec.contains("offset")) offset = vec_of(spec.at("offset"));
    return build_grid(spec.at("dim"), spec.at("half_width"), spec.at("resolution"), offset);
  }
  if (builder == "cantor")
    return build_cantor(spec.at("ratio"), spec.at("depth"), spec.value("dim", 1));
  if (builder == "snowflake")
    return snowflake(reg.space(spec.at("base")), spec.at("epsilon"));
  if (builder == "csv")
    return load_space_csv(spec.at("path"), spec.value("metric_path", ""));
  throw Error(ErrorCode::ConfigError, "unknown space builder " + builder);
}

inline SampledMap build_map(const Json& spec, const Registry& reg) {
  std::string builder = spec.at("builder");
  if (builder == "radial_stretch") return make_radial_stretch(reg.space(spec.at("domain")));
  if (builder == "sqrt_radial") return make_sqrt_radial(reg.space(spec.at("domain")));
  if (builder == "scaling")
    return make_scaling(reg.space(spec.at("domain")), spec.at("factor"));
  if (builder == "identity")
    return make_identity(reg.space(spec.at("domain")), reg.space(spec.at("codomain")));
  if (builder == "csv")
    return load_map_csv(spec.at("path"), reg.space(spec.at("domain")),
                        reg.space(spec.at("codomain")));
  throw Error(ErrorCode::ConfigError, "unknown map builder " + builder);
}

inline Family build_family(const Json& spec, const Registry& reg, std::uint64_t seed) {
  Family fam;
  fam.space = reg.space(spec.at("space"));
  std::string kind = spec.at("kind");
  std::uint64_t fseed = spec.value("seed", seed);
  if (kind == "bumps") {
    fam.specs = gen_bump_specs(*fam.space, spec.at("count"), spec.at("width_min"),
                               spec.at("width_max"), fseed);
    for (const auto& b : fam.specs) fam.funcs.push_back(materialize(b, fam.space));
  } else if (kind == "random") {
    Rng rng(fseed);
    std::size_t count = spec.at("count");
    for (std::size_t k = 0; k < count; ++k)
      fam.funcs.push_back(gen_random_values(fam.space, rng.next_u64()));
  } else if (kind == "csv") {
    fam.funcs.push_back(load_function_csv(spec.at("path"), fam.space));
  } else {
    throw Error(ErrorCode::ConfigError, "unknown family kind " + kind);
  }
  return fam;
}

inline PairBudget pair_budget(const Json& a, bool exact_mode) {
  if (a.contains("n_pairs")) return PairBudget::sampled(a.at("n_pairs"));
  return exact_mode ? PairBudget::exact() : PairBudget::sampled(200000);
}

inline bool in_range(double v, double lo, double hi) { return v >= lo && v <= hi; }

// --- analysis handlers; each returns the "result" JSON and fills verify ---

inline Json run_regularity(const Json& a, const Registry& reg, std::uint64_t seed, Verify& v) {
  auto rep = estimate_regularity(*reg.space(a.at("space")), a.value("n_centers", 48),
                                 a.value("n_radii", 12), seed);
  if (a.contains("expect")) {
    const auto& e = a.at("expect");
    v.enabled = true;
    if (e.contains("q_min"))
      v.check("Q_hat range", in_range(rep.q_hat, e.at("q_min"), e.at("q_max")), rep.q_hat,
              Json{{"min", e.at("q_min")}, {"max", e.at("q_max")}});
  }
  return Json(rep);
}

inline Json run_perfectness(const Json& a, const Registry& reg, std::uint64_t seed, Verify& v) {
  std::optional<std::pair<double, double>> range;
  if (a.contains("radius_min")) range = {{a.at("radius_min"), a.at("radius_max")}};
  auto rep = check_uniform_perfectness(
      *reg.space(a.at("space")), a.at("kappa_grid").get<std::vector<double>>(),
      a.value("n_probes", 128), seed, range);
  if (a.contains("expect")) {
    const auto& e = a.at("expect");
    v.enabled = true;
    if (e.contains("pass")) v.check("annulus condition", rep.pass() == e.at("pass").get<bool>(),
                                    rep.pass(), e.at("pass"));
    if (e.contains("kappa_max") && rep.kappa_hat)
      v.check("kappa_hat bound", *rep.kappa_hat <= e.at("kappa_max").get<double>(),
              *rep.kappa_hat, e.at("kappa_max"));
  }
  return Json(rep);
}

inline Json run_ub(const Json& a, const Registry& reg, std::uint64_t seed, Verify& v) {
  auto rep = check_uniform_boundedness(reg.map(a.at("map")), a.at("r"),
                                       a.value("n_centers", 64), seed,
                                       a.value("ratio_cap", 1e3));
  if (a.contains("expect")) {
    const auto& e = a.at("expect");
    v.enabled = true;
    if (e.contains("a_min"))
      v.check("a lower bound", rep.a >= e.at("a_min").get<double>(), rep.a, e.at("a_min"));
    if (e.contains("b_max"))
      v.check("b upper bound", rep.b <= e.at("b_max").get<double>(), rep.b, e.at("b_max"));
    if (e.contains("verdict"))
      v.check("verdict", rep.verdict == e.at("verdict").get<bool>(), rep.verdict,
              e.at("verdict"));
  }
  return Json(rep);
}

inline Json run_ub_growth(const Json& a, const Registry&, std::uint64_t seed, Verify& v) {
  std::string builder = a.at("map_builder");
  double r = a.at("r");
  std::size_t n_centers = a.value("n_centers", 48);
  std::vector<UbReport> reports;
  Json windows = Json::array();
  Rng rng(seed);
  for (const auto& w : a.at("windows")) {
    auto grid = build_grid(2, w.at("half_width"), w.at("resolution"),
                           vec_of(w.at("offset")));
    SampledMap m = builder == "radial_stretch" ? make_radial_stretch(grid)
                 : builder == "sqrt_radial"    ? make_sqrt_radial(grid)
                 : throw Error(ErrorCode::ConfigError, "unknown map builder " + builder);
    reports.push_back(check_uniform_boundedness(m, r, n_centers, rng.next_u64(),
                                                a.value("ratio_cap", 1e3)));
    windows.push_back(Json{{"window", w}, {"report", reports.back()}});
  }
  bool unbounded = ub_escalates(reports);
  if (a.contains("expect")) {
    const auto& e = a.at("expect");
    v.enabled = true;
    if (e.contains("b_min")) {
      auto mins = e.at("b_min").get<std::vector<double>>();
      for (std::size_t k = 0; k < mins.size() && k < reports.size(); ++k)
        v.check("b lower bound, window " + std::to_string(k), reports[k].b >= mins[k],
                reports[k].b, mins[k]);
    }
    if (e.contains("unbounded"))
      v.check("growth verdict", unbounded == e.at("unbounded").get<bool>(), unbounded,
              e.at("unbounded"));
  }
  return Json{{"windows", windows}, {"unbounded_growth", unbounded}};
}

inline Json run_fit_biholder(const Json& a, const Registry& reg, std::uint64_t seed,
                             bool exact_mode, Verify& v) {
  auto fit = fit_local_biholder(reg.map(a.at("map")), a.at("r"), pair_budget(a, exact_mode),
                                seed, a.value("n_bins", 24));
  if (a.contains("expect")) {
    const auto& e = a.at("expect");
    v.enabled = true;
    if (e.contains("theta1_min"))
      v.check("theta1 range",
              in_range(fit.params.theta1, e.at("theta1_min"), e.at("theta1_max")),
              fit.params.theta1,
              Json{{"min", e.at("theta1_min")}, {"max", e.at("theta1_max")}});
    if (e.contains("theta2_min"))
      v.check("theta2 range",
              in_range(fit.params.theta2, e.at("theta2_min"), e.at("theta2_max")),
              fit.params.theta2,
              Json{{"min", e.at("theta2_min")}, {"max", e.at("theta2_max")}});
  }
  return Json(fit);
}

inline Json run_check_biholder(const Json& a, const Registry& reg, std::uint64_t seed,
                               bool exact_mode, Verify& v) {
  HolderParams p = a.at("params").get<HolderParams>();
  auto rep = check_local_biholder(reg.map(a.at("map")), p, pair_budget(a, exact_mode), seed);
  if (a.contains("expect")) {
    v.enabled = true;
    v.check("biHoelder check", rep.pass == a.at("expect").at("pass").get<bool>(), rep.pass,
            a.at("expect").at("pass"));
  }
  return Json(rep);
}

inline Json run_fit_qs(const Json& a, const Registry& reg, std::uint64_t seed, Verify& v) {
  std::vector<double> grid = a.contains("theta_grid")
                                 ? a.at("theta_grid").get<std::vector<double>>()
                                 : std::vector<double>{1, 1.25, 1.5, 1.75, 2, 2.5, 3, 4};
  auto fit = fit_power_qs(reg.map(a.at("map")), grid, a.value("n_triples", 20000), seed);
  if (a.contains("expect")) {
    const auto& e = a.at("expect");
    v.enabled = true;
    if (e.contains("lambda_max"))
      v.check("lambda bound", fit.params.lambda <= e.at("lambda_max").get<double>(),
              fit.params.lambda, e.at("lambda_max"));
    if (e.contains("theta"))
      v.check("theta", std::abs(fit.params.theta - e.at("theta").get<double>()) <=
                           e.value("theta_tol", 1e-9),
              fit.params.theta, e.at("theta"));
  }
  return Json(fit);
}

inline Json run_qs_audit(const Json& a, const Registry& reg, std::uint64_t seed, Verify& v) {
  QsParams eta = a.at("eta").get<QsParams>();
  auto rep = qs_ratio_audit(reg.map(a.at("map")), eta, a.value("n_triples", 20000), seed);
  if (a.contains("expect")) {
    v.enabled = true;
    double tol = a.at("expect").value("max_excess", 0.0);
    v.check("ratio excess", rep.max_excess <= tol, rep.max_excess, tol);
  }
  return Json(rep);
}

inline Json run_prop14_roundtrip(const Json& a, const Registry& reg, std::uint64_t seed,
                                 bool exact_mode, Verify& v) {
  const SampledMap& m = reg.map(a.at("map"));
  double r = a.at("r");
  auto budget = pair_budget(a, exact_mode);
  auto fwd = fit_local_biholder(m, r, budget, seed);
  HolderParams predicted = inverse_params(fwd.params);
  SampledMap inv = invert(m);
  auto bwd = fit_local_biholder(inv, predicted.r, budget, seed + 1);
  double rel_tol = a.contains("expect") ? a.at("expect").value("rel_tol", 0.1) : 0.1;
  v.enabled = a.contains("expect");
  auto rel = [](double x, double y) { return std::abs(x - y) / std::max(std::abs(y), 1e-12); };
  if (v.enabled) {
    v.check("inverse theta1", rel(bwd.params.theta1, predicted.theta1) <= rel_tol,
            bwd.params.theta1, predicted.theta1);
    v.check("inverse theta2", rel(bwd.params.theta2, predicted.theta2) <= rel_tol,
            bwd.params.theta2, predicted.theta2);
  }
  return Json{{"forward_fit", fwd}, {"predicted_inverse", predicted}, {"inverse_fit", bwd}};
}

inline Json run_qs_holder_consistency(const Json& a, const Registry& reg, std::uint64_t seed,
                                      bool exact_mode, Verify& v) {
  const SampledMap& m = reg.map(a.at("map"));
  double r = a.at("r");
  Rng rng(seed);
  std::vector<double> tgrid = a.contains("theta_grid")
                                  ? a.at("theta_grid").get<std::vector<double>>()
                                  : std::vector<double>{1, 1.25, 1.5, 1.75, 2, 2.5, 3, 4};
  auto qs = fit_power_qs(m, tgrid, a.value("n_triples", 20000), rng.next_u64());
  std::vector<double> kgrid = a.contains("kappa_grid")
                                  ? a.at("kappa_grid").get<std::vector<double>>()
                                  : std::vector<double>{1.1, 1.25, 1.5, 2, 3, 4};
  auto perf = check_uniform_perfectness(*m.domain, kgrid, a.value("n_probes", 96),
                                        rng.next_u64());
  double kappa = perf.kappa_hat.value_or(kgrid.back());
  auto ub = check_uniform_boundedness(m, r, a.value("n_centers", 48), rng.next_u64(),
                                      a.value("ratio_cap", 1e3));
  HolderParams derived = qs_to_holder_constants(qs.params, kappa, r, ub.a, ub.b);
  auto check = check_local_biholder(m, derived, pair_budget(a, exact_mode), rng.next_u64());
  if (a.contains("expect")) {
    v.enabled = true;
    v.check("derived params hold", check.pass == a.at("expect").at("pass").get<bool>(),
            check.pass, a.at("expect").at("pass"));
  }
  return Json{{"qs_fit", qs},
              {"perfectness", perf},
              {"kappa_used", kappa},
              {"ub", ub},
              {"derived_params", derived},
              {"check", check}};
}

inline EmbeddingStudyOptions embedding_options(const Json& a, bool exact_mode,
                                               std::uint64_t seed) {
  EmbeddingStudyOptions opt;
  opt.s = a.at("s");
  opt.p = a.at("p");
  if (a.contains("s_prime")) opt.s_prime = a.at("s_prime").get<double>();
  opt.theta1 = a.at("theta1");
  opt.theta2 = a.at("theta2");
  opt.r = a.at("r");
  opt.q_domain = a.at("q_domain");
  opt.q_codomain = a.at("q_codomain");
  opt.verify = a.value("verify_smoothness", true);
  opt.seed = seed;
  if (!exact_mode) {
    opt.seminorm_budget = PairBudget::sampled(a.value("seminorm_pairs", 200000));
    opt.discrete_budget = DiscreteBudget{a.value("discrete_centers", std::size_t(256)),
                                         a.value("discrete_partners", std::size_t(256))};
  }
  return opt;
}

inline void verify_embedding(const Json& a, const EmbeddingReport& rep, Verify& v) {
  if (!a.contains("expect")) return;
  const auto& e = a.at("expect");
  v.enabled = true;
  if (e.contains("seminorm_ratio")) {
    double target = e.at("seminorm_ratio");
    double tol = e.value("seminorm_ratio_tol", 1e-10);
    bool ok = true;
    for (const auto& row : rep.rows)
      ok = ok && std::abs(row.ratio_seminorm - target) <= tol;
    v.check("seminorm ratio", ok, rep.sup_ratio_seminorm,
            Json{{"target", target}, {"tol", tol}});
  }
  if (e.value("finite", false)) {
    bool ok = std::isfinite(rep.sup_ratio) && rep.sup_ratio > 0.0;
    v.check("sup ratio finite", ok, rep.sup_ratio, "finite");
  }
  if (e.contains("sup_ratio_max"))
    v.check("sup ratio bound", rep.sup_ratio <= e.at("sup_ratio_max").get<double>(),
            rep.sup_ratio, e.at("sup_ratio_max"));
}

inline Json run_embedding(const Json& a, const Registry& reg, std::uint64_t seed,
                          bool exact_mode, Verify& v) {
  auto opt = embedding_options(a, exact_mode, seed);
  const SampledMap& m = reg.map(a.at("map"));
  const Family& fam = reg.family(a.at("family"));
  EmbeddingReport rep;
  if (a.contains("codomain")) {
    if (fam.specs.empty())
      throw Error(ErrorCode::ConfigError, "bump-spec family required with explicit codomain");
    rep = embedding_ratio_study(m, reg.space(a.at("codomain")), fam.specs, opt);
  } else {
    rep = embedding_ratio_study(m, fam.funcs, opt);
  }
  verify_embedding(a, rep, v);
  return Json(rep);
}

inline Json run_lemma31(const Json& a, const Registry& reg, std::uint64_t seed, Verify& v) {
  const Family& fam = reg.family(a.at("family"));
  BesovParams bp{a.at("s"), a.at("p")};
  auto disc = default_discretization(*fam.space);
  Json rows = Json::array();
  double k_needed = 1.0;
  Rng rng(seed);
  for (const auto& u : fam.funcs) {
    double sem = besov_seminorm(u, bp, PairBudget::exact(), rng.next_u64());
    auto dsc = discrete_besov(u, bp, disc);
    double ratio = dsc.scale_part / sem;
    k_needed = std::max({k_needed, ratio, 1.0 / ratio});
    rows.push_back(Json{{"seminorm", sem}, {"scale_part", dsc.scale_part}, {"ratio", ratio}});
  }
  if (a.contains("expect")) {
    v.enabled = true;
    double kmax = a.at("expect").value("k_max", 10.0);
    v.check("equivalence band", k_needed <= kmax, k_needed, kmax);
  }
  return Json{{"rows", rows}, {"K", k_needed}, {"disc", disc}};
}

}  // namespace run_detail

// ---------------------------------------------------------------------------
// run
// ---------------------------------------------------------------------------

inline RunResult run(const Json& config, std::ostream& log = std::cout) {
  using namespace run_detail;
  if (!config.contains("seed"))
    throw Error(ErrorCode::ConfigError, "config must carry an explicit seed");
  const std::uint64_t seed = config.at("seed");
  const bool exact_mode = config.value("mode", "exact") == std::string("exact");
  const std::string out_dir = config.value("out_dir", std::string("."));
  std::filesystem::create_directories(out_dir);

  Registry reg;
  Rng master(seed);
  for (const auto& s : config.value("spaces", Json::array()))
    reg.spaces.emplace(s.at("name"), build_space(s, reg));
  for (const auto& m : config.value("maps", Json::array()))
    reg.maps.emplace(m.at("name"), build_map(m, reg));
  for (const auto& f : config.value("families", Json::array()))
    reg.families.emplace(f.at("name"), build_family(f, reg, master.next_u64()));

  RunResult result;
  for (const auto& a : config.value("analyses", Json::array())) {
    const std::string name = a.at("name");
    const std::string type = a.at("type");
    const std::uint64_t aseed = a.value("seed", master.next_u64());
    const bool explore = a.value("mode", "verify") == std::string("explore");
    Verify verify;
    auto t0 = std::chrono::steady_clock::now();
    Json res;
    if (type == "regularity") res = run_regularity(a, reg, aseed, verify);
    else if (type == "uniform_perfectness") res = run_perfectness(a, reg, aseed, verify);
    else if (type == "uniform_boundedness") res = run_ub(a, reg, aseed, verify);
    else if (type == "ub_growth") res = run_ub_growth(a, reg, aseed, verify);
    else if (type == "fit_biholder") res = run_fit_biholder(a, reg, aseed, exact_mode, verify);
    else if (type == "check_biholder") res = run_check_biholder(a, reg, aseed, exact_mode, verify);
    else if (type == "fit_power_qs") res = run_fit_qs(a, reg, aseed, verify);
    else if (type == "qs_audit") res = run_qs_audit(a, reg, aseed, verify);
    else if (type == "prop14_roundtrip") res = run_prop14_roundtrip(a, reg, aseed, exact_mode, verify);
    else if (type == "qs_holder_consistency") res = run_qs_holder_consistency(a, reg, aseed, exact_mode, verify);
    else if (type == "embedding_study") res = run_embedding(a, reg, aseed, exact_mode, verify);
    else if (type == "lemma31") res = run_lemma31(a, reg, aseed, verify);
    else throw Error(ErrorCode::ConfigError, "unknown analysis type " + type);
    auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                  std::chrono::steady_clock::now() - t0)
                  .count();

    bool failed = verify.enabled && !explore && !verify.pass;
    Json report{{"schema", 1},
                {"name", name},
                {"type", type},
                {"seed", aseed},
                {"mode", exact_mode ? "exact" : "budgeted"},
                {"params", a},
                {"result", res},
                {"verify", Json{{"enabled", verify.enabled},
                                {"mode", explore ? "explore" : "verify"},
                                {"pass", verify.pass},
                                {"checks", verify.checks}}}};
    std::string path = (std::filesystem::path(out_dir) / (name + ".json")).string();
    write_json(report, path);
    result.report_paths.push_back(path);
    ++result.analyses_run;
    if (failed) ++result.verify_failures;
    log << name << " [" << type << "] "
        << (verify.enabled ? (verify.pass ? "pass" : (explore ? "explore" : "FAIL")) : "done")
        << " (" << ms << " ms) -> " << path << "\n";
  }
  result.exit_code = result.verify_failures == 0 ? 0 : 1;
  return result;
}

// ---------------------------------------------------------------------------
// Presets
// ---------------------------------------------------------------------------

/// Fully populated deterministic configs reproducing the built-in studies.
inline Json preset(const std::string& name) {
  if (name == "example51") {
    Json windows = Json::array();
    Json b_min = Json::array();
    for (int n = 1; n <= 10; ++n) {
      windows.push_back(Json{{"offset", {double(n), 0.0}}, {"half_width", 2.0},
                             {"resolution", 61}});
      b_min.push_back(0.95 * (2.0 * n + 1.0));
    }
    return Json{
        {"schema", 1},
        {"seed", 510051},
        {"mode", "exact"},
        {"analyses",
         Json::array({Json{{"name", "radial_stretch_growth"},
                           {"type", "ub_growth"},
                           {"map_builder", "radial_stretch"},
                           {"r", 1.0},
                           {"n_centers", 48},
                           {"windows", windows},
                           {"expect", Json{{"b_min", b_min}, {"unbounded", true}}}}})}};
  }
  if (name == "example52") {
    return Json{
        {"schema", 1},
        {"seed", 520052},
        {"mode", "exact"},
        {"spaces", Json::array({Json{{"name", "plane"},
                                     {"builder", "grid"},
                                     {"dim", 2},
                                     {"half_width", 4.0},
                                     {"resolution", 81}}})},
        {"maps", Json::array({Json{{"name", "f"},
                                   {"builder", "sqrt_radial"},
                                   {"domain", "plane"}}})},
        {"analyses",
         Json::array(
             {Json{{"name", "sqrt_radial_ub"},
                   {"type", "uniform_boundedness"},
                   {"map", "f"},
                   {"r", 2.0},
                   {"n_centers", 64},
                   {"expect", Json{{"a_min", 1.9}, {"b_max", 6.3}, {"verdict", true}}}},
              Json{{"name", "sqrt_radial_fit"},
                   {"type", "fit_biholder"},
                   {"map", "f"},
                   {"r", 2.0},
                   {"expect", Json{{"theta1_min", 0.9},
                                   {"theta1_max", 1.1},
                                   {"theta2_min", 0.45},
                                   {"theta2_max", 0.55}}}}})}};
  }
  if (name == "snowflake-identity") {
    const double q = std::log(2.0) / std::log(3.0);
    return Json{
        {"schema", 1},
        {"seed", 530053},
        {"mode", "exact"},
        {"spaces", Json::array({Json{{"name", "K"},
                                     {"builder", "cantor"},
                                     {"ratio", 1.0 / 3.0},
                                     {"depth", 8},
                                     {"dim", 1}},
                                Json{{"name", "Keps"},
                                     {"builder", "snowflake"},
                                     {"base", "K"},
                                     {"epsilon", 0.5}}})},
        {"maps", Json::array({Json{{"name", "id"},
                                   {"builder", "identity"},
                                   {"domain", "K"},
                                   {"codomain", "Keps"}}})},
        {"families", Json::array({Json{{"name", "rand"},
                                       {"kind", "random"},
                                       {"space", "Keps"},
                                       {"count", 10},
                                       {"seed", 5300}}})},
        {"analyses",
         Json::array({Json{{"name", "snowflake_embedding"},
                           {"type", "embedding_study"},
                           {"map", "id"},
                           {"family", "rand"},
                           {"s", 0.8},
                           {"s_prime", 0.4},
                           {"p", 2.0},
                           {"theta1", 0.5},
                           {"theta2", 0.5},
                           {"r", 0.5},
                           {"q_domain", q},
                           {"q_codomain", 2.0 * q},
                           {"expect", Json{{"seminorm_ratio", 1.0},
                                           {"seminorm_ratio_tol", 1e-10}}}}})}};
  }
  if (name == "remark53") {
    Json analyses = Json::array();
    // (s, p) pairs with s' at the admissible boundary (s - 2 s') p = 2.
    const std::vector<std::pair<double, double>> grid = {{1.2, 2.0}, {1.5, 2.0}, {2.2, 1.0}};
    for (std::size_t k = 0; k < grid.size(); ++k) {
      analyses.push_back(Json{{"name", "remark53_s" + std::to_string(k)},
                              {"type", "embedding_study"},
                              {"map", "f"},
                              {"family", "bumps"},
                              {"codomain", "image_plane"},
                              {"s", grid[k].first},
                              {"p", grid[k].second},
                              {"theta1", 1.0},
                              {"theta2", 0.5},
                              {"r", 2.0},
                              {"q_domain", 2.0},
                              {"q_codomain", 2.0},
                              {"expect", Json{{"finite", true}}}});
    }
    return Json{
        {"schema", 1},
        {"seed", 540054},
        {"mode", "budgeted"},
        {"spaces", Json::array({Json{{"name", "plane"},
                                     {"builder", "grid"},
                                     {"dim", 2},
                                     {"half_width", 4.0},
                                     {"resolution", 41}},
                                Json{{"name", "image_plane"},
                                     {"builder", "grid"},
                                     {"dim", 2},
                                     {"half_width", 4.0},
                                     {"resolution", 41}}})},
        {"maps", Json::array({Json{{"name", "f"},
                                   {"builder", "sqrt_radial"},
                                   {"domain", "plane"}}})},
        {"families", Json::array({Json{{"name", "bumps"},
                                       {"kind", "bumps"},
                                       {"space", "image_plane"},
                                       {"count", 12},
                                       {"width_min", 0.4},
                                       {"width_max", 1.6},
                                       {"seed", 5400}}})},
        {"analyses", analyses}};
  }
  if (name == "prop14-roundtrip") {
    return Json{
        {"schema", 1},
        {"seed", 550055},
        {"mode", "exact"},
        {"spaces", Json::array({Json{{"name", "line"},
                                     {"builder", "grid"},
                                     {"dim", 1},
                                     {"half_width", 0.5},
                                     {"resolution", 201}},
                                Json{{"name", "line_eps"},
                                     {"builder", "snowflake"},
                                     {"base", "line"},
                                     {"epsilon", 0.5}}})},
        {"maps", Json::array({Json{{"name", "id"},
                                   {"builder", "identity"},
                                   {"domain", "line"},
                                   {"codomain", "line_eps"}}})},
        {"analyses", Json::array({Json{{"name", "roundtrip"},
                                       {"type", "prop14_roundtrip"},
                                       {"map", "id"},
                                       {"r", 0.9},
                                       {"expect", Json{{"rel_tol", 0.1}}}}})}};
  }
  if (name == "lemma31-equivalence") {
    return Json{
        {"schema", 1},
        {"seed", 560056},
        {"mode", "exact"},
        {"spaces", Json::array({Json{{"name", "line"},
                                     {"builder", "grid"},
                                     {"dim", 1},
                                     {"half_width", 1.0},
                                     {"resolution", 201}}})},
        {"families", Json::array({Json{{"name", "bumps"},
                                       {"kind", "bumps"},
                                       {"space", "line"},
                                       {"count", 20},
                                       {"width_min", 0.08},
                                       {"width_max", 0.4},
                                       {"seed", 5600}}})},
        {"analyses", Json::array({Json{{"name", "lemma31_band"},
                                       {"type", "lemma31"},
                                       {"space", "line"},
                                       {"family", "bumps"},
                                       {"s", 0.5},
                                       {"p", 2.0},
                                       {"expect", Json{{"k_max", 10.0}}}}})}};
  }
  throw Error(ErrorCode::ConfigError, "unknown preset " + name);
}

/// Preset names, for CLI help.
inline std::vector<std::string> preset_names() {
  return {"example51", "example52", "snowflake-identity", "remark53", "prop14-roundtrip",
          "lemma31-equivalence"};
}

/// Applies CLI overrides to a config: seed, output directory, a global
/// resolution replacement, and exact mode.
inline void apply_overrides(Json& config, std::optional<std::uint64_t> seed,
                            std::optional<std::string> out_dir,
                            std::optional<std::size_t> resolution, bool force_exact) {
  if (seed) config["seed"] = *seed;
  if (out_dir) config["out_dir"] = *out_dir;
  if (force_exact) config["mode"] = "exact";
  if (resolution) {
    if (config.contains("spaces"))
      for (auto& s : config["spaces"])
        if (s.contains("resolution")) s["resolution"] = *resolution;
    if (config.contains("analyses"))
      for (auto& a : config["analyses"])
        if (a.contains("windows"))
          for (auto& w : a["windows"]) w["resolution"] = *resolution;
  }
}

}  // namespace besovmap

#endif  // BESOVMAP_RUNNER_HPP
