#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "dyadic/catalog.hpp"
#include "dyadic/grid.hpp"
#include "dyadic/io.hpp"
#include "dyadic/seminorm.hpp"

using namespace dyadic;

namespace {

StepFunction line(std::vector<double> values) {
  int depth = 0;
  while ((std::size_t{1} << depth) < values.size()) ++depth;
  return make_step_function(make_grid(1, depth, {0.0}, 1.0), std::move(values));
}

SeminormConfig cfg_of(SeminormMode mode, double p, double s = 0.5, double t = 0.5) {
  SeminormConfig cfg;
  cfg.p = p;
  cfg.mode = mode;
  cfg.s = s;
  cfg.t = t;
  return cfg;
}

}  // namespace

TEST_CASE("cube weights") {
  const StepFunction f = line({0.0, 1.0});
  CHECK(cube_weight(f, root_cube(), cfg_of(SeminormMode::AvgMean, 2.0)) == 0.25);
  CHECK(cube_weight(f, root_cube(), cfg_of(SeminormMode::MedOptimal, 2.0, 0.5)) == 0.25);
  const StepFunction c = line({3.0, 3.0, 3.0, 3.0});
  for (auto mode : {SeminormMode::AvgMean, SeminormMode::MedOptimal, SeminormMode::MedCenter})
    CHECK(cube_weight(c, root_cube(), cfg_of(mode, 2.0)) == 0.0);
}

TEST_CASE("config validation") {
  const StepFunction f = line({0.0, 1.0});
  CHECK_THROWS_AS(cube_weight(f, root_cube(), cfg_of(SeminormMode::AvgMean, 1.0)),
                  validation_error);
  CHECK_THROWS_AS(cube_weight(f, root_cube(), cfg_of(SeminormMode::MedOptimal, 2.0, 0.75)),
                  validation_error);
  CHECK_THROWS_AS(cube_weight(f, root_cube(), cfg_of(SeminormMode::MedCenter, 2.0, 0.5, 0.25)),
                  validation_error);
  CHECK_THROWS_AS(mode_from_string("nope"), validation_error);
  CHECK(mode_from_string("med-optimal") == SeminormMode::MedOptimal);
}

TEST_CASE("dp on the two-cell example") {
  const StepFunction f = line({0.0, 1.0});
  const SeminormReport report = jn_seminorm(f, cfg_of(SeminormMode::AvgMean, 2.0));
  CHECK(report.value_p == 0.25);
  CHECK(report.value == 0.5);
  REQUIRE(report.optimum.size() == 1);
  CHECK(report.optimum[0] == root_cube());
  CHECK(report.optimum_weights[0] == 0.25);
}

TEST_CASE("ties prefer the deeper collection") {
  const StepFunction f = line({0.0, 1.0, 0.0, 1.0});
  const SeminormReport report = jn_seminorm(f, cfg_of(SeminormMode::AvgMean, 2.0));
  CHECK(report.value == 0.5);
  REQUIRE(report.optimum.size() == 2);
  CHECK(report.optimum[0] == DyadicCube{1, {0, 0, 0}});
  CHECK(report.optimum[1] == DyadicCube{1, {1, 0, 0}});
  CHECK(report.optimum_weights[0] == 0.125);
  CHECK(report.optimum_weights[1] == 0.125);
}

TEST_CASE("constant functions have empty optimum") {
  const StepFunction c = line({3.0, 3.0, 3.0, 3.0});
  for (auto mode : {SeminormMode::AvgMean, SeminormMode::MedOptimal}) {
    const SeminormReport report = jn_seminorm(c, cfg_of(mode, 2.0));
    CHECK(report.value == 0.0);
    CHECK(report.optimum.empty());
    const SeminormReport brute = jn_seminorm_bruteforce(c, cfg_of(mode, 2.0));
    CHECK(brute.value == 0.0);
    CHECK(brute.optimum.empty());
  }
}

TEST_CASE("dp equals brute force to the last bit") {
  for (int i = 0; i < 60; ++i) {
    const int depth = i % 5;
    const StepFunction f = random_step(make_grid(1, depth, {0.0}, 1.0),
                                       1000 + static_cast<std::uint64_t>(i), -1.0, 2.0);
    const double p = i % 3 == 0 ? 1.5 : (i % 3 == 1 ? 2.0 : 4.0);
    for (auto cfg : {cfg_of(SeminormMode::AvgMean, p), cfg_of(SeminormMode::MedOptimal, p, 0.25),
                     cfg_of(SeminormMode::MedCenter, p, 0.25, 0.5)}) {
      const SeminormReport dp = jn_seminorm(f, cfg);
      const SeminormReport brute = jn_seminorm_bruteforce(f, cfg);
      CHECK(dp.value_p == brute.value_p);  // 0 ulp
      CHECK(dp.value == brute.value);
    }
  }
  // two-dimensional oracle instances
  for (int i = 0; i < 10; ++i) {
    const StepFunction f = random_step(make_grid(2, 2, {0.0, 0.0}, 1.0),
                                       2000 + static_cast<std::uint64_t>(i), -1.0, 2.0);
    const auto cfg = cfg_of(SeminormMode::MedOptimal, 2.0, 0.5);
    CHECK(jn_seminorm(f, cfg).value_p == jn_seminorm_bruteforce(f, cfg).value_p);
  }
}

TEST_CASE("brute force size cap") {
  const StepFunction f = random_step(make_grid(1, 5, {0.0}, 1.0), 1, 0.0, 1.0);
  CHECK_THROWS_AS(jn_seminorm_bruteforce(f, cfg_of(SeminormMode::AvgMean, 2.0)), resource_error);
  const StepFunction g = random_step(make_grid(2, 3, {0.0, 0.0}, 1.0), 1, 0.0, 1.0);
  CHECK_THROWS_AS(jn_seminorm_bruteforce(g, cfg_of(SeminormMode::AvgMean, 2.0)), resource_error);
}

TEST_CASE("optimum is a feasible antichain and adds up") {
  for (int i = 0; i < 20; ++i) {
    const StepFunction f = random_step(make_grid(1, 5, {0.0}, 1.0),
                                       3000 + static_cast<std::uint64_t>(i), -2.0, 2.0);
    for (auto cfg : {cfg_of(SeminormMode::AvgMean, 2.0), cfg_of(SeminormMode::MedOptimal, 2.0, 0.5)}) {
      const SeminormReport report = jn_seminorm(f, cfg);
      for (const auto& a : report.optimum)
        for (const auto& b : report.optimum)
          if (!(a == b)) CHECK(!cube_contains(f.grid, a, b));
      double sum = 0.0;
      for (double w : report.optimum_weights) sum += w;
      CHECK(sum == doctest::Approx(report.value_p).epsilon(1e-12));
      // no single cube beats the optimum: value^p >= |Q| osc(Q)^p for all Q
      const double slack = 1e-12 * std::max(1.0, report.value_p);
      for (int j = 0; j <= f.grid.depth; ++j)
        for (std::int64_t r = 0; r < f.grid.cubes_at_level(j); ++r)
          CHECK(report.value_p >=
                cube_weight(f, cube_of_morton(j, r, f.grid.dim), cfg) - slack);
    }
  }
}

TEST_CASE("scaling homogeneity") {
  const StepFunction f = random_step(make_grid(1, 5, {0.0}, 1.0), 77, -1.0, 3.0);
  StepFunction scaled = f;
  for (auto& v : scaled.values) v *= 2.5;
  for (auto mode : {SeminormMode::AvgMean, SeminormMode::MedOptimal}) {
    const double base = jn_seminorm(f, cfg_of(mode, 2.0, 0.25)).value;
    const double big = jn_seminorm(scaled, cfg_of(mode, 2.0, 0.25)).value;
    CHECK(big == doctest::Approx(2.5 * base).epsilon(1e-12));
  }
}

TEST_CASE("triangle inequality in the avg-mean mode") {
  for (int i = 0; i < 15; ++i) {
    const StepFunction f = random_step(make_grid(1, 5, {0.0}, 1.0),
                                       4000 + static_cast<std::uint64_t>(i), -1.0, 1.0);
    const StepFunction g = random_step(make_grid(1, 5, {0.0}, 1.0),
                                       5000 + static_cast<std::uint64_t>(i), 0.0, 2.0);
    StepFunction sum = f;
    for (std::size_t c = 0; c < sum.values.size(); ++c) sum.values[c] += g.values[c];
    const auto cfg = cfg_of(SeminormMode::AvgMean, 2.0);
    CHECK(jn_seminorm(sum, cfg).value <=
          jn_seminorm(f, cfg).value + jn_seminorm(g, cfg).value + 1e-12);
  }
}

TEST_CASE("companion norms on hand-checked inputs") {
  const StepFunction f = line({0.0, 1.0});
  const CompanionNorms norms = companion_norms(f, 2.0);
  CHECK(norms.l1 == 0.5);
  CHECK(norms.lp == doctest::Approx(std::sqrt(0.5)).epsilon(1e-15));
  CHECK(norms.bmo == 0.5);
  CHECK(norms.llogl == 0.0);  // values at most 1

  const StepFunction spike = line({0.0, 0.0, 0.0, 2.0});
  CHECK(companion_norms(spike, 2.0).weak_lp == doctest::Approx(1.0).epsilon(1e-15));

  const StepFunction c = line({3.0, 3.0, 3.0, 3.0});
  const CompanionNorms cn = companion_norms(c, 2.0);
  CHECK(cn.l1 == 3.0);
  CHECK(cn.bmo == 0.0);
  CHECK(cn.llogl == doctest::Approx(3.0 * std::log(3.0)).epsilon(1e-15));

  CHECK_THROWS_AS(companion_norms(f, 1.0), validation_error);
}

TEST_CASE("report serialization keeps canonical order") {
  const StepFunction f = line({0.0, 1.0, 0.0, 1.0});
  const auto j = seminorm_report_to_json(jn_seminorm(f, cfg_of(SeminormMode::AvgMean, 2.0)), 1);
  CHECK(j["mode"] == "avg-mean");
  REQUIRE(j["optimum"].size() == 2);
  CHECK(j["optimum"][0]["index"][0] == 0);
  CHECK(j["optimum"][1]["index"][0] == 1);
}
