#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <cstdlib>
#include <cstring>
#include <numbers>
#include <set>

#include "dyadic/catalog.hpp"
#include "dyadic/grid.hpp"
#include "dyadic/io.hpp"

using namespace dyadic;

namespace {

DyadicGrid unit_grid(int dim, int depth) {
  return make_grid(dim, depth, std::vector<double>(static_cast<std::size_t>(dim), 0.0), 1.0);
}

// composite Simpson, good enough to cross-check cell averages
double simpson(double (*fn)(double), double a, double b, int n = 2048) {
  const double h = (b - a) / n;
  double acc = fn(a) + fn(b);
  for (int i = 1; i < n; ++i) acc += fn(a + i * h) * (i % 2 ? 4.0 : 2.0);
  return acc * h / 3.0;
}

}  // namespace

TEST_CASE("grid construction and measures") {
  const DyadicGrid g1 = make_grid(1, 0, {0.0}, 1.0);
  CHECK(g1.cell_count() == 1);
  CHECK(g1.cell_measure() == 1.0);

  const DyadicGrid g2 = make_grid(1, 3, {0.0}, 1.0);
  CHECK(g2.cell_count() == 8);
  CHECK(g2.cell_measure() == 0.125);

  const DyadicGrid g3 = make_grid(2, 2, {0.0, 0.0}, 1.0);
  CHECK(g3.cell_count() == 16);
  CHECK(g3.cell_measure() == 1.0 / 16);

  CHECK_THROWS_AS(make_grid(1, 2, {0.0}, 0.0), validation_error);
  CHECK_THROWS_AS(make_grid(1, 2, {0.0}, -1.0), validation_error);
  CHECK_THROWS_AS(make_grid(4, 2, {0.0, 0.0, 0.0, 0.0}, 1.0), validation_error);
  CHECK_THROWS_AS(make_grid(1, -1, {0.0}, 1.0), validation_error);
  CHECK_THROWS_AS(make_grid(1, 2, {0.0, 0.0}, 1.0), validation_error);
}

TEST_CASE("cell budget") {
  CHECK_THROWS_AS(make_grid(1, 25, {0.0}, 1.0), resource_error);  // default budget 2^24
  CHECK_THROWS_AS(make_grid(1, 4, {0.0}, 1.0, 8), resource_error);
  CHECK_NOTHROW(make_grid(1, 3, {0.0}, 1.0, 8));

  setenv("JN_CELL_BUDGET", "16", 1);
  CHECK_THROWS_AS(make_grid(1, 5, {0.0}, 1.0), resource_error);
  CHECK_NOTHROW(make_grid(1, 4, {0.0}, 1.0));
  setenv("JN_CELL_BUDGET", "bogus", 1);
  CHECK_THROWS_AS(make_grid(1, 2, {0.0}, 1.0), validation_error);
  unsetenv("JN_CELL_BUDGET");
}

TEST_CASE("children tile their parent and measures add") {
  const DyadicGrid g = make_grid(2, 3, {0.0, 0.0}, 0.75);
  for (int level = 0; level < g.depth; ++level) {
    CHECK(g.measure_at_level(level) ==
          doctest::Approx(4.0 * g.measure_at_level(level + 1)).epsilon(1e-15));
  }
  DyadicCube q{1, {1, 0, 0}};
  std::vector<std::int64_t> parent_cells, child_cells;
  cells_of(g, q, parent_cells);
  std::set<std::int64_t> from_children;
  for (int e = 0; e < 4; ++e) {
    cells_of(g, child_of(q, g.dim, e), child_cells);
    from_children.insert(child_cells.begin(), child_cells.end());
    CHECK(parent_of(child_of(q, g.dim, e)) == q);
  }
  CHECK(from_children == std::set<std::int64_t>(parent_cells.begin(), parent_cells.end()));
}

TEST_CASE("row-major indexing is a bijection") {
  const DyadicGrid g = make_grid(3, 2, {0.0, 0.0, 0.0}, 1.0);
  std::set<std::int64_t> seen;
  for (std::int64_t flat = 0; flat < g.cell_count(); ++flat) {
    const auto multi = multi_of_rowmajor(g, flat);
    CHECK(rowmajor_index(g, multi) == flat);
    seen.insert(flat);
  }
  CHECK(std::int64_t(seen.size()) == g.cell_count());
}

TEST_CASE("morton ranks give contiguous descendant ranges") {
  const DyadicGrid g = make_grid(2, 3, {0.0, 0.0}, 1.0);
  const auto perm = tree_order_to_rowmajor(g);
  for (int level = 0; level <= g.depth; ++level) {
    for (std::int64_t r = 0; r < g.cubes_at_level(level); ++r) {
      const DyadicCube q = cube_of_morton(level, r, g.dim);
      CHECK(morton_rank(q, g.dim) == r);
      std::vector<std::int64_t> cells;
      cells_of(g, q, cells);
      const std::set<std::int64_t> expect(cells.begin(), cells.end());
      std::set<std::int64_t> got;
      const std::int64_t m = g.cells_per_cube(level);
      for (std::int64_t z = r * m; z < (r + 1) * m; ++z)
        got.insert(perm[static_cast<std::size_t>(z)]);
      CHECK(got == expect);
    }
  }
}

TEST_CASE("cube containment and ordering") {
  const DyadicGrid g = unit_grid(2, 3);
  const DyadicCube root = root_cube();
  const DyadicCube q{2, {1, 3, 0}};
  CHECK(cube_contains(g, root, q));
  CHECK(!cube_contains(g, q, root));
  CHECK(cube_contains(g, q, q));
  CHECK(cube_less(root, q));
  CHECK(cube_less(DyadicCube{2, {0, 2, 0}}, DyadicCube{2, {1, 0, 0}}));

  CHECK_THROWS_AS(validate_cube(g, DyadicCube{4, {0, 0, 0}}), validation_error);
  CHECK_THROWS_AS(validate_cube(g, DyadicCube{1, {2, 0, 0}}), validation_error);
}

TEST_CASE("midpoints are strictly interior") {
  const DyadicGrid g = make_grid(1, 3, {0.0}, 0.125);  // jn-extremal domain
  const double h = g.cell_side();
  for (std::int64_t i = 0; i < g.cell_count(); ++i) {
    const auto x = cell_midpoint(g, i);
    CHECK(x[0] > double(i) * h);
    CHECK(x[0] < double(i + 1) * h);
  }
}

TEST_CASE("catalog: constant and step") {
  const DyadicGrid g = unit_grid(1, 2);
  FunctionSpec constant;
  constant.name = "constant";
  constant.params["c"] = 3.0;
  for (double v : sample_catalog(constant, g).values) CHECK(v == 3.0);

  FunctionSpec step;
  step.name = "step";
  step.step_values = {1.0, 2.0, 3.0, 4.0};
  CHECK(sample_catalog(step, g).values == std::vector<double>{1.0, 2.0, 3.0, 4.0});
  step.step_values = {1.0};
  CHECK_THROWS_AS(sample_catalog(step, g), validation_error);

  FunctionSpec bogus;
  bogus.name = "no-such-entry";
  CHECK_THROWS_AS(sample_catalog(bogus, g), validation_error);
}

TEST_CASE("catalog: jn-extremal midpoint values match the formula") {
  const DyadicGrid g = make_grid(1, 3, {0.0}, 0.125);
  FunctionSpec spec;
  spec.name = "jn-extremal";
  const StepFunction f = sample_catalog(spec, g);
  for (std::int64_t i = 0; i < 8; ++i) {
    const double x = double(2 * i + 1) / 128.0;
    CHECK(f.values[static_cast<std::size_t>(i)] ==
          doctest::Approx(1.0 / (x * std::log(x) * std::log(x))).epsilon(1e-15));
  }
  CHECK(f.values[0] > f.values[1]);

  // root must stay inside [0, 1/2]
  CHECK_THROWS_AS(sample_catalog(spec, make_grid(1, 1, {0.4}, 0.2)), validation_error);
}

TEST_CASE("catalog: power with exact cell averages") {
  const DyadicGrid g = unit_grid(1, 2);
  FunctionSpec spec;
  spec.name = "power";
  spec.params["a"] = -0.5;
  spec.rule = SamplingRule::ExactCellAverage;
  const StepFunction f = sample_catalog(spec, g);
  const double h = 0.25;
  for (std::int64_t i = 0; i < 4; ++i) {
    const double a = double(i) * h, b = double(i + 1) * h;
    CHECK(f.values[static_cast<std::size_t>(i)] ==
          doctest::Approx(2.0 * (std::sqrt(b) - std::sqrt(a)) / (b - a)).epsilon(1e-14));
  }
  // numeric quadrature cross-check away from the singular endpoint
  for (std::int64_t i = 1; i < 4; ++i) {
    const double a = double(i) * h, b = double(i + 1) * h;
    const double quad = simpson(+[](double x) { return 1.0 / std::sqrt(x); }, a, b) / (b - a);
    CHECK(f.values[static_cast<std::size_t>(i)] == doctest::Approx(quad).epsilon(1e-10));
  }
  spec.params["a"] = -1.5;  // not integrable at zero
  CHECK_THROWS_AS(sample_catalog(spec, g), validation_error);
}

TEST_CASE("catalog: log-reciprocal exact averages vs quadrature") {
  const DyadicGrid g = unit_grid(1, 3);
  FunctionSpec spec;
  spec.name = "log-reciprocal";
  spec.rule = SamplingRule::ExactCellAverage;
  const StepFunction f = sample_catalog(spec, g);
  const double h = g.cell_side();
  for (std::int64_t i = 1; i < g.cell_count(); ++i) {
    const double a = double(i) * h, b = double(i + 1) * h;
    const double quad = simpson(+[](double x) { return -std::log(x); }, a, b) / (b - a);
    CHECK(f.values[static_cast<std::size_t>(i)] == doctest::Approx(quad).epsilon(1e-10));
  }
}

TEST_CASE("catalog: smooth-lipschitz and sampling-rule support") {
  const DyadicGrid g = unit_grid(1, 4);
  FunctionSpec spec;
  spec.name = "smooth-lipschitz";
  const StepFunction f = sample_catalog(spec, g);
  for (std::int64_t i = 0; i < g.cell_count(); ++i)
    CHECK(f.values[static_cast<std::size_t>(i)] ==
          std::sin(2.0 * std::numbers::pi * cell_midpoint(g, i)[0]));

  spec.rule = SamplingRule::ExactCellAverage;
  CHECK_THROWS_AS(sample_catalog(spec, g), unsupported_error);
  CHECK(catalog_has_exact_rule("jn-extremal"));
  CHECK(!catalog_has_exact_rule("smooth-lipschitz"));
}

TEST_CASE("catalog: seeded randomness is reproducible") {
  const DyadicGrid g = unit_grid(2, 3);
  const StepFunction a = random_step(g, 42, -1.0, 2.0);
  const StepFunction b = random_step(g, 42, -1.0, 2.0);
  const StepFunction c = random_step(g, 43, -1.0, 2.0);
  CHECK(a.values == b.values);
  CHECK(a.values != c.values);
  for (double v : a.values) {
    CHECK(v >= -1.0);
    CHECK(v < 2.0);
  }
}

TEST_CASE("step function validation") {
  const DyadicGrid g = unit_grid(1, 2);
  CHECK_THROWS_AS(make_step_function(g, {1.0, 2.0}), validation_error);
  std::vector<double> bad{0.0, 1.0, std::nan(""), 2.0};
  try {
    make_step_function(g, bad);
    CHECK(false);
  } catch (const validation_error& e) {
    CHECK(std::string(e.what()).find("index 2") != std::string::npos);
  }
}

TEST_CASE("json round-trip is bit exact") {
  const DyadicGrid g = make_grid(2, 3, {0.25, -1.0}, 0.75);
  const StepFunction f = random_step(g, 7, -5.0, 5.0);
  const auto j = step_function_to_json(f);
  const StepFunction back = step_function_from_json(nlohmann::json::parse(j.dump()));
  CHECK(back.grid == f.grid);
  REQUIRE(back.values.size() == f.values.size());
  CHECK(std::memcmp(back.values.data(), f.values.data(), sizeof(double) * f.values.size()) == 0);
}

TEST_CASE("json validation errors") {
  const char* wrong_len =
      R"({"dim":1,"depth":3,"root":{"origin":[0],"side":1},"values":[1,2,3,4,5,6,7]})";
  try {
    step_function_from_json(nlohmann::json::parse(wrong_len));
    CHECK(false);
  } catch (const validation_error& e) {
    CHECK(std::string(e.what()).find("7") != std::string::npos);
    CHECK(std::string(e.what()).find("8") != std::string::npos);
  }

  const char* nan_value =
      R"({"dim":1,"depth":1,"root":{"origin":[0],"side":1},"values":[1,"NaN"]})";
  try {
    step_function_from_json(nlohmann::json::parse(nan_value));
    CHECK(false);
  } catch (const validation_error& e) {
    CHECK(std::string(e.what()).find("index 1") != std::string::npos);
  }

  CHECK_THROWS_AS(step_function_from_json(nlohmann::json::parse(R"({"dim":1})")),
                  validation_error);
}

TEST_CASE("csv round-trip for 1d") {
  const DyadicGrid g = make_grid(1, 4, {0.5}, 2.0);
  const StepFunction f = random_step(g, 11, -3.0, 3.0);
  const StepFunction back = step_function_from_csv(step_function_to_csv(f));
  CHECK(back.grid == f.grid);
  CHECK(std::memcmp(back.values.data(), f.values.data(), sizeof(double) * f.values.size()) == 0);

  const StepFunction f2 = random_step(unit_grid(2, 2), 1, 0.0, 1.0);
  CHECK_THROWS_AS(step_function_to_csv(f2), unsupported_error);
  CHECK_THROWS_AS(step_function_from_csv("depth,1\n"), validation_error);
}

TEST_CASE("file io dispatches on extension") {
  const StepFunction f = random_step(unit_grid(1, 3), 5, 0.0, 1.0);
  write_step_function(f, "/tmp/dyadic_io_test.json");
  write_step_function(f, "/tmp/dyadic_io_test.csv");
  CHECK(read_step_function("/tmp/dyadic_io_test.json").values == f.values);
  CHECK(read_step_function("/tmp/dyadic_io_test.csv").values == f.values);
  CHECK_THROWS_AS(read_step_function("/tmp/no_such_file_dyadic.json"), validation_error);
}
