#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "besovmap/space.hpp"

using namespace besovmap;

namespace {

const double kLog2Log3 = std::log(2.0) / std::log(3.0);

SpacePtr two_point_space() {
  // Points 0 and 1 at distance 1, weights 1/2 each.
  return make_space({0, 1}, {0.0, 1.0}, 1, {0.5, 0.5});
}

}  // namespace

TEST_CASE("grid builder: two-point line") {
  auto s = build_grid(1, 0.5, 2);
  REQUIRE(s->size() == 2);
  CHECK(s->coords[0] == doctest::Approx(-0.5));
  CHECK(s->coords[1] == doctest::Approx(0.5));
  // cell volume (2*half_width/(resolution-1))^dim = 1
  CHECK(s->weights[0] == doctest::Approx(1.0));
  CHECK(s->total_mass == doctest::Approx(2.0));
  CHECK(s->diam == doctest::Approx(1.0));
  CHECK(s->min_gap == doctest::Approx(1.0));
}

TEST_CASE("grid builder: 21x21 window bookkeeping") {
  auto s = build_grid(2, 1.0, 21);
  REQUIRE(s->size() == 441);
  CHECK(s->weights[7] == doctest::Approx(0.01));
  CHECK(s->total_mass == doctest::Approx(441 * 0.01));
  CHECK(s->diam == doctest::Approx(2.0 * std::sqrt(2.0)));
  CHECK(s->grid_shape->spacing == doctest::Approx(0.1));
}

TEST_CASE("grid builder: offset window") {
  auto s = build_grid(2, 1.0, 5, {3.0, 0.0});
  for (std::size_t i = 0; i < s->size(); ++i) {
    CHECK(s->point(i)[0] >= 2.0 - 1e-12);
    CHECK(s->point(i)[0] <= 4.0 + 1e-12);
    CHECK(std::abs(s->point(i)[1]) <= 1.0 + 1e-12);
  }
  CHECK(s->window->center[0] == doctest::Approx(3.0));
}

TEST_CASE("grid builder rejects resolution < 2") {
  CHECK_THROWS_AS(build_grid(1, 1.0, 1), Error);
  try {
    build_grid(1, 1.0, 1);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::InvalidResolution);
  }
}

TEST_CASE("cantor builder: first level") {
  auto s = build_cantor(1.0 / 3.0, 1, 1);
  REQUIRE(s->size() == 2);
  CHECK(s->coords[0] == doctest::Approx(1.0 / 6.0));
  CHECK(s->coords[1] == doctest::Approx(5.0 / 6.0));
  CHECK(s->weights[0] == doctest::Approx(0.5));
  CHECK(s->total_mass == doctest::Approx(1.0));
}

TEST_CASE("cantor builder guards") {
  CHECK_THROWS_AS(build_cantor(0.5, 3, 1), Error);
  try {
    build_cantor(1.0 / 3.0, 23, 1);
    FAIL("budget not enforced");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::BudgetExceeded);
  }
}

TEST_CASE("open balls are strict") {
  auto s = two_point_space();
  auto b = ball(*s, 0, 1.0);
  REQUIRE(b.size() == 1);
  CHECK(b[0] == 0);
  CHECK(ball(*s, 0, 1.0 + 1e-12).size() == 2);
  CHECK(ball_measure(*s, 0, 1.0) == doctest::Approx(0.5));
  CHECK(ball_measure(*s, 0, 2.0) == doctest::Approx(1.0));
  CHECK_THROWS_AS(ball(*s, 7, 1.0), Error);
}

TEST_CASE("ball on a 1d grid") {
  auto s = build_grid(1, 1.0, 5);  // -1, -0.5, 0, 0.5, 1
  auto b = ball(*s, 2, 0.6);
  CHECK(b.size() == 3);
}

TEST_CASE("ball radius above diameter returns everything") {
  auto s = build_cantor(1.0 / 3.0, 4, 1);
  CHECK(ball(*s, 0, s->diam * 1.01).size() == s->size());
  CHECK(ball_measure(*s, 0, s->diam * 1.01) == doctest::Approx(s->total_mass));
}

TEST_CASE("ball mass plus complement mass is the total") {
  auto s = build_cantor(1.0 / 3.0, 6, 1);
  Rng rng(11);
  for (int k = 0; k < 20; ++k) {
    double r = rng.log_uniform(s->min_gap, s->diam);
    std::size_t ci = rng.index(s->size());
    KahanSum inside, outside;
    for (std::size_t j = 0; j < s->size(); ++j)
      (s->distance(ci, j) < r ? inside : outside).add(s->weights[j]);
    CHECK(inside.value() + outside.value() ==
          doctest::Approx(s->total_mass).epsilon(1e-12));
  }
}

TEST_CASE("ball measure is nondecreasing in the radius") {
  auto s = build_cantor(1.0 / 3.0, 6, 1);
  Rng rng(21);
  for (int probe = 0; probe < 10; ++probe) {
    std::size_t ci = rng.index(s->size());
    double prev = 0.0;
    for (double r = s->min_gap / 2.0; r < 1.5 * s->diam; r *= 1.5) {
      double m = ball_mass_at(*s, ci, r);
      CHECK(m >= prev);
      prev = m;
    }
    CHECK(prev == doctest::Approx(s->total_mass));
  }
}

TEST_CASE("cantor ball mass tracks the self-similar law") {
  auto s = build_cantor(1.0 / 3.0, 8, 1);
  Rng rng(3);
  for (int k = 2; k <= 5; ++k) {
    double r = std::pow(3.0, -k);
    double expect = std::pow(2.0, -k);
    for (int probe = 0; probe < 8; ++probe) {
      double m = ball_mass_at(*s, rng.index(s->size()), r);
      CHECK(m >= expect / 3.0);
      CHECK(m <= expect * 3.0);
    }
  }
}

TEST_CASE("diam_of") {
  auto s = build_grid(2, 1.0, 21);
  CHECK(diam_of(*s, {5}) == 0.0);
  std::vector<PointId> all(s->size());
  for (std::size_t i = 0; i < s->size(); ++i) all[i] = s->ids[i];
  CHECK(diam_of(*s, all) == doctest::Approx(2.0 * std::sqrt(2.0)));
  CHECK_THROWS_AS(diam_of(*s, {}), Error);
}

TEST_CASE("snowflake transforms distances pointwise") {
  auto s = build_grid(1, 0.5, 5);  // spacing 0.25 on [-0.5, 0.5]
  auto t = snowflake(s, 0.5);
  CHECK(t->distance(0, 4) == doctest::Approx(1.0));        // 1^(1/2)
  CHECK(t->distance(0, 1) == doctest::Approx(0.5));        // 0.25^(1/2)
  auto u = snowflake(s, 1.0);
  CHECK(u->distance(0, 3) == s->distance(0, 3));
  CHECK_THROWS_AS(snowflake(s, 1.5), Error);
  CHECK_THROWS_AS(snowflake(s, 0.0), Error);
}

TEST_CASE("snowflake composition is exact") {
  auto s = build_cantor(0.3, 5, 1);
  auto ab = snowflake(snowflake(s, 0.7), 0.6);
  auto prod = snowflake(s, 0.7 * 0.6);
  Rng rng(5);
  for (int k = 0; k < 2000; ++k) {
    std::size_t i = rng.index(s->size());
    std::size_t j = rng.index(s->size());
    CHECK(ab->distance(i, j) == prod->distance(i, j));  // bitwise
  }
}

TEST_CASE("triangle inequality holds on sampled triples for builder outputs") {
  std::vector<SpacePtr> spaces = {
      build_grid(2, 1.0, 21), build_cantor(1.0 / 3.0, 6, 1),
      snowflake(build_grid(1, 1.0, 101), 0.5), snowflake(build_cantor(0.25, 5, 1), 1.0 / 3.0)};
  for (const auto& s : spaces) CHECK(max_triangle_violation(*s, 10000, 99) <= 1e-12);
}

TEST_CASE("regularity: plane window is 2-regular") {
  auto s = build_grid(2, 1.0, 41);
  auto rep = estimate_regularity(*s, 48, 12, 2024);
  CHECK(rep.q_hat >= 1.8);
  CHECK(rep.q_hat <= 2.2);
  CHECK(rep.c_hat >= 1.0);
}

TEST_CASE("regularity: cantor measures") {
  auto rep3 = estimate_regularity(*build_cantor(1.0 / 3.0, 8, 1), 48, 12, 2024);
  CHECK(rep3.q_hat == doctest::Approx(kLog2Log3).epsilon(0.08));
  auto rep4 = estimate_regularity(*build_cantor(0.25, 6, 1), 48, 12, 2024);
  CHECK(rep4.q_hat == doctest::Approx(0.5).epsilon(0.1));
}

TEST_CASE("regularity: product cantor doubles the exponent") {
  auto s = build_cantor(1.0 / 3.0, 4, 2);
  REQUIRE(s->size() == 256);
  CHECK(s->total_mass == doctest::Approx(1.0));
  auto rep = estimate_regularity(*s, 64, 16, 2024);
  CHECK(rep.q_hat == doctest::Approx(2.0 * kLog2Log3).epsilon(0.1));
}

TEST_CASE("regularity: snowflake divides the exponent") {
  auto base = build_cantor(1.0 / 3.0, 8, 1);
  auto flaked = snowflake(base, 0.5);
  auto rep = estimate_regularity(*flaked, 64, 16, 2024);
  CHECK(rep.q_hat == doctest::Approx(2.0 * kLog2Log3).epsilon(0.08));

  // a second exponent; depth 10 keeps the radius band nonempty under d^(1/3)
  auto deep = build_cantor(1.0 / 3.0, 10, 1);
  auto cubed = snowflake(deep, 1.0 / 3.0);
  auto rep3 = estimate_regularity(*cubed, 64, 16, 2024);
  CHECK(rep3.q_hat == doctest::Approx(3.0 * kLog2Log3).epsilon(0.15));
}

TEST_CASE("regularity: snowflaked line looks 2-dimensional") {
  auto s = snowflake(build_grid(1, 0.5, 1601), 0.5);
  auto rep = estimate_regularity(*s, 48, 12, 7);
  CHECK(rep.q_hat == doctest::Approx(2.0).epsilon(0.1));
}

TEST_CASE("regularity guards") {
  auto tiny = build_grid(1, 0.5, 4);
  CHECK_THROWS_AS(estimate_regularity(*tiny, 8, 8, 1), Error);

  // 16 points, all pairwise distances equal: the radius band is empty.
  const std::size_t n = 16;
  auto dense = std::make_shared<std::vector<double>>(n * n, 1.0);
  for (std::size_t i = 0; i < n; ++i) (*dense)[i * n + i] = 0.0;
  std::vector<PointId> ids(n);
  std::vector<double> coords(n), weights(n, 1.0);
  for (std::size_t i = 0; i < n; ++i) {
    ids[i] = static_cast<PointId>(i);
    coords[i] = static_cast<double>(i);
  }
  auto s = make_space(ids, coords, 1, weights, dense);
  try {
    estimate_regularity(*s, 8, 8, 1);
    FAIL("degenerate geometry not detected");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::DegenerateGeometry);
  }
}

TEST_CASE("uniform perfectness on a connected grid") {
  auto s = build_grid(1, 1.0, 101);
  auto rep = check_uniform_perfectness(*s, {1.1, 1.25, 1.5, 2.0, 4.0}, 128, 77);
  REQUIRE(rep.pass());
  CHECK(*rep.kappa_hat <= 2.0);
}

TEST_CASE("uniform perfectness on the cantor set") {
  auto s = build_cantor(1.0 / 3.0, 6, 1);
  auto rep = check_uniform_perfectness(*s, {1.5, 2.0, 3.0, 4.0}, 128, 77);
  REQUIRE(rep.pass());
  CHECK(*rep.kappa_hat <= 4.0);
}

TEST_CASE("integer window fails below the lattice scale") {
  // Integer lattice modeled as a unit-spacing window.
  auto s = build_grid(1, 10.0, 21);
  REQUIRE(s->min_gap == doctest::Approx(1.0));
  auto rep = check_uniform_perfectness(*s, {2.0, 4.0, 8.0}, 64, 77,
                                       std::make_pair(0.3, 0.9));
  CHECK(!rep.pass());
  CHECK(rep.failure_count > 0);
}

TEST_CASE("annulus witness") {
  auto g = build_grid(1, 1.0, 41);
  PointId z = annulus_witness(*g, g->ids[20], 1.0, 2.0);  // center 0.0
  double d = g->distance(20, g->index_of(z));
  CHECK(d >= 1.0 / 8.0);
  CHECK(d < 1.0);

  auto two = two_point_space();
  CHECK(annulus_witness(*two, 0, 1.5, 2.0) == 1);  // distance 1 in [1.5/8, 1.5)

  try {
    annulus_witness(*two, 0, 0.5, 2.0);  // nothing lives in [1/16, 1/2)
    FAIL("witness should be missing");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::WitnessNotFound);
  }
}

TEST_CASE("cantor sibling cells provide annulus witnesses") {
  auto s = build_cantor(1.0 / 3.0, 8, 1);
  Rng rng(13);
  for (int k = 0; k < 16; ++k) {
    PointId x = s->ids[rng.index(s->size())];
    PointId z = annulus_witness(*s, x, 1.0 / 3.0, 4.0);
    double d = s->distance(s->index_of(x), s->index_of(z));
    CHECK(d >= (1.0 / 3.0) / 8.0);
    CHECK(d < 1.0 / 3.0);
  }
}

TEST_CASE("make_space validation") {
  CHECK_THROWS_AS(make_space({0, 0}, {0.0, 1.0}, 1, {0.5, 0.5}), Error);
  CHECK_THROWS_AS(make_space({0, 1}, {0.0, 1.0}, 1, {0.5, -0.5}), Error);
  // duplicate coordinates: distance zero between distinct ids
  try {
    make_space({0, 1}, {1.0, 1.0}, 1, {0.5, 0.5});
    FAIL("duplicate point not detected");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::DuplicatePoint);
  }
  // dense metric with a nonzero diagonal
  auto bad = std::make_shared<std::vector<double>>(std::vector<double>{0.5, 1.0, 1.0, 0.0});
  CHECK_THROWS_AS(make_space({0, 1}, {0.0, 1.0}, 1, {0.5, 0.5}, bad), Error);
}
