#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "besovmap/besovmap.hpp"

using namespace besovmap;

namespace {

std::filesystem::path scratch_dir() {
  auto dir = std::filesystem::temp_directory_path() / "besovmap_test";
  std::filesystem::create_directories(dir);
  return dir;
}

std::string write_file(const std::string& name, const std::string& body) {
  auto path = scratch_dir() / name;
  std::ofstream out(path);
  out << body;
  return path.string();
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("point cloud csv") {
  auto path = write_file("pts.csv",
                         "id,x1,x2,weight\n"
                         "10,0.0,0.0,0.5\n"
                         "11,1.0,0.0,0.25\n"
                         "12,0.0,1.0,0.25\n");
  auto s = load_space_csv(path);
  REQUIRE(s->size() == 3);
  CHECK(s->dim == 2);
  CHECK(s->total_mass == doctest::Approx(1.0));
  CHECK(s->index_of(11) == 1);
  CHECK(s->distance(0, 1) == doctest::Approx(1.0));

  auto bad = write_file("bad.csv", "id,weight\n1,1\n");
  CHECK_THROWS_AS(load_space_csv(bad), Error);
}

TEST_CASE("dense metric csv") {
  auto pts = write_file("pts3.csv",
                        "id,x1,weight\n"
                        "0,0.0,1.0\n"
                        "1,1.0,1.0\n"
                        "2,2.0,1.0\n");
  auto mat = write_file("metric3.csv",
                        "0,2,3\n"
                        "2,0,2\n"
                        "3,2,0\n");
  auto s = load_space_csv(pts, mat);
  CHECK(s->distance(0, 2) == doctest::Approx(3.0));
  CHECK(s->distance(1, 2) == doctest::Approx(2.0));
  CHECK(s->diam == doctest::Approx(3.0));

  auto asym = write_file("asym.csv",
                         "0,2,3\n"
                         "1,0,2\n"
                         "3,2,0\n");
  CHECK_THROWS_AS(load_space_csv(pts, asym), Error);
}

TEST_CASE("map csv must be a bijection") {
  auto pts = write_file("m_pts.csv", "id,x1,weight\n0,0.0,1.0\n1,1.0,1.0\n");
  auto dom = load_space_csv(pts);
  auto cod = load_space_csv(pts);
  auto good = write_file("map_good.csv", "id,image_id\n0,1\n1,0\n");
  auto m = load_map_csv(good, dom, cod);
  CHECK(m.image[0] == 1);
  CHECK(m.image[1] == 0);

  auto dup = write_file("map_dup.csv", "id,image_id\n0,1\n1,1\n");
  try {
    load_map_csv(dup, dom, cod);
    FAIL("duplicate image accepted");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NonInjective);
  }
}

TEST_CASE("function csv") {
  auto pts = write_file("f_pts.csv", "id,x1,weight\n0,0.0,1.0\n1,1.0,1.0\n");
  auto s = load_space_csv(pts);
  auto fn = write_file("fn.csv", "id,value\n0,0.25\n1,0.75\n");
  auto u = load_function_csv(fn, s);
  CHECK(u.values[0] == doctest::Approx(0.25));
  CHECK(u.values[1] == doctest::Approx(0.75));

  auto partial = write_file("fn_partial.csv", "id,value\n0,0.25\n");
  CHECK_THROWS_AS(load_function_csv(partial, s), Error);
}

TEST_CASE("report json carries the parameter echo") {
  UbReport ub;
  ub.r = 2.0;
  ub.a = 1.0;
  ub.b = 3.0;
  ub.centers_used = 5;
  ub.verdict = true;
  ub.seed = 77;
  Json j = ub;
  CHECK(j.at("r") == 2.0);
  CHECK(j.at("verdict") == "pass");
  CHECK(j.at("seed") == 77);

  HolderParams p{1.5, 0.5, 2.0, 3.0};
  Json jp = p;
  auto back = jp.get<HolderParams>();
  CHECK(back.theta1 == p.theta1);
  CHECK(back.c == p.c);
}

TEST_CASE("unknown preset is rejected") {
  CHECK_THROWS_AS(preset("no-such-study"), Error);
  for (const auto& name : preset_names()) CHECK(preset(name).contains("seed"));
}

TEST_CASE("config must carry a seed") {
  Json cfg{{"analyses", Json::array()}};
  std::ostringstream sink;
  CHECK_THROWS_AS(run(cfg, sink), Error);
}

TEST_CASE("unknown names are resolution errors") {
  Json cfg = preset("snowflake-identity");
  cfg["analyses"][0]["map"] = "nonexistent";
  cfg["out_dir"] = (scratch_dir() / "bad_run").string();
  std::ostringstream sink;
  try {
    run(cfg, sink);
    FAIL("unresolved name accepted");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ConfigError);
  }
}

TEST_CASE("snowflake-identity preset run passes and is byte-stable") {
  auto out1 = scratch_dir() / "snow1";
  auto out2 = scratch_dir() / "snow2";
  std::filesystem::remove_all(out1);
  std::filesystem::remove_all(out2);

  Json cfg = preset("snowflake-identity");
  std::ostringstream sink;

  cfg["out_dir"] = out1.string();
  auto r1 = run(cfg, sink);
  CHECK(r1.exit_code == 0);
  REQUIRE(r1.report_paths.size() == 1);

  cfg["out_dir"] = out2.string();
  auto r2 = run(cfg, sink);
  CHECK(slurp(r1.report_paths[0]) == slurp(r2.report_paths[0]));

  Json report = Json::parse(slurp(r1.report_paths[0]));
  CHECK(report.at("schema") == 1);
  CHECK(report.at("verify").at("pass") == true);
  double sup = report.at("result").at("sup_ratio_seminorm");
  CHECK(sup == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("lemma31 preset run passes") {
  Json cfg = preset("lemma31-equivalence");
  cfg["out_dir"] = (scratch_dir() / "lemma31").string();
  std::ostringstream sink;
  auto r = run(cfg, sink);
  CHECK(r.exit_code == 0);
  Json report = Json::parse(slurp(r.report_paths[0]));
  double K = report.at("result").at("K");
  CHECK(K >= 1.0);
  CHECK(K <= 10.0);
}

TEST_CASE("prop14 roundtrip preset run passes") {
  Json cfg = preset("prop14-roundtrip");
  cfg["out_dir"] = (scratch_dir() / "prop14").string();
  std::ostringstream sink;
  auto r = run(cfg, sink);
  CHECK(r.exit_code == 0);
  Json report = Json::parse(slurp(r.report_paths[0]));
  auto fit = report.at("result").at("inverse_fit").at("params");
  CHECK(fit.at("theta1").get<double>() == doctest::Approx(2.0).epsilon(0.1));
  CHECK(fit.at("theta2").get<double>() == doctest::Approx(2.0).epsilon(0.1));
}

TEST_CASE("verify failures drive the exit code") {
  Json cfg = preset("lemma31-equivalence");
  cfg["out_dir"] = (scratch_dir() / "forced_fail").string();
  cfg["analyses"][0]["expect"]["k_max"] = 1.0 + 1e-9;  // unreachably tight
  std::ostringstream sink;
  auto r = run(cfg, sink);
  CHECK(r.exit_code == 1);
  CHECK(r.verify_failures == 1);

  // explore mode reports the same numbers without failing the run
  cfg["analyses"][0]["mode"] = "explore";
  cfg["out_dir"] = (scratch_dir() / "forced_explore").string();
  auto r2 = run(cfg, sink);
  CHECK(r2.exit_code == 0);
}

TEST_CASE("resolution override rewrites space specs") {
  Json cfg = preset("example52");
  apply_overrides(cfg, std::nullopt, std::nullopt, 21, false);
  CHECK(cfg["spaces"][0]["resolution"] == 21);
  apply_overrides(cfg, 99, std::string("outdir"), std::nullopt, true);
  CHECK(cfg["seed"] == 99);
  CHECK(cfg["out_dir"] == "outdir");
  CHECK(cfg["mode"] == "exact");
}

TEST_CASE("runner covers the analyzer surface") {
  auto fn = write_file("family_fn.csv",
                       "id,value\n0,0.1\n1,0.9\n2,0.4\n3,0.2\n4,0.8\n");
  Json cfg{
      {"schema", 1},
      {"seed", 424242},
      {"mode", "exact"},
      {"out_dir", (scratch_dir() / "surface").string()},
      {"spaces", Json::array({Json{{"name", "cantor"},
                                   {"builder", "cantor"},
                                   {"ratio", 1.0 / 3.0},
                                   {"depth", 7},
                                   {"dim", 1}},
                              Json{{"name", "line"},
                                   {"builder", "grid"},
                                   {"dim", 1},
                                   {"half_width", 1.0},
                                   {"resolution", 5}},
                              Json{{"name", "plane"},
                                   {"builder", "grid"},
                                   {"dim", 2},
                                   {"half_width", 4.0},
                                   {"resolution", 41}}})},
      {"maps", Json::array({Json{{"name", "f"},
                                 {"builder", "sqrt_radial"},
                                 {"domain", "plane"}},
                            Json{{"name", "double"},
                                 {"builder", "scaling"},
                                 {"domain", "plane"},
                                 {"factor", 2.0}}})},
      {"families", Json::array({Json{{"name", "from_csv"},
                                     {"kind", "csv"},
                                     {"space", "line"},
                                     {"path", fn}}})},
      {"analyses",
       Json::array(
           {Json{{"name", "cantor_regularity"},
                 {"type", "regularity"},
                 {"space", "cantor"},
                 {"n_centers", 48},
                 {"n_radii", 12},
                 {"expect", Json{{"q_min", 0.5}, {"q_max", 0.75}}}},
            Json{{"name", "cantor_perfectness"},
                 {"type", "uniform_perfectness"},
                 {"space", "cantor"},
                 {"kappa_grid", {1.5, 2.0, 3.0, 4.0}},
                 {"n_probes", 64},
                 {"expect", Json{{"pass", true}, {"kappa_max", 4.0}}}},
            Json{{"name", "similarity_qs"},
                 {"type", "fit_power_qs"},
                 {"map", "double"},
                 {"n_triples", 4000},
                 {"expect", Json{{"theta", 1.0}, {"lambda_max", 1.0}}}},
            Json{{"name", "similarity_audit"},
                 {"type", "qs_audit"},
                 {"map", "double"},
                 {"eta", Json{{"theta", 1.0}, {"lambda", 1.0}}},
                 {"n_triples", 4000},
                 {"expect", Json{{"max_excess", 0.0}}}},
            Json{{"name", "similarity_check"},
                 {"type", "check_biholder"},
                 {"map", "double"},
                 {"params", Json{{"theta1", 1.0}, {"theta2", 1.0}, {"r", 2.0}, {"C", 2.0}}},
                 {"n_pairs", 5000},
                 {"expect", Json{{"pass", true}}}},
            Json{{"name", "sqrt_radial_consistency"},
                 {"type", "qs_holder_consistency"},
                 {"map", "f"},
                 {"r", 2.0},
                 {"n_triples", 8000},
                 {"n_centers", 32},
                 {"expect", Json{{"pass", true}}}}})}};
  std::ostringstream sink;
  auto r = run(cfg, sink);
  CHECK(r.exit_code == 0);
  CHECK(r.analyses_run == 6);
  CHECK(r.verify_failures == 0);
}
