#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "dyadic/catalog.hpp"
#include "dyadic/grid.hpp"
#include "dyadic/maximal.hpp"
#include "dyadic/median.hpp"
#include "dyadic/reference.hpp"

using namespace dyadic;

namespace {

StepFunction line(std::vector<double> values) {
  int depth = 0;
  while ((std::size_t{1} << depth) < values.size()) ++depth;
  return make_step_function(make_grid(1, depth, {0.0}, 1.0), std::move(values));
}

StepFunction random_fn(int dim, int depth, std::uint64_t seed) {
  const auto grid =
      make_grid(dim, depth, std::vector<double>(static_cast<std::size_t>(dim), 0.0), 1.0);
  return random_step(grid, seed, -1.0, 2.0);
}

}  // namespace

TEST_CASE("average-type maximal function examples") {
  CHECK(maximal_function_avg(line({0.0, 1.0})).values == std::vector<double>{0.5, 1.0});
  // absolute value enters the averages
  CHECK(maximal_function_avg(line({-4.0, 0.0})).values == std::vector<double>{4.0, 2.0});
  const StepFunction c = line({2.5, 2.5, 2.5, 2.5});
  CHECK(maximal_function_avg(c).values == c.values);
}

TEST_CASE("median-type maximal function examples") {
  CHECK(maximal_function_median(line({0.0, 0.0, 0.0, 8.0}), 0.5).values ==
        std::vector<double>{0.0, 0.0, 8.0, 8.0});
  // t = 1 takes the minimum of |f| over each cube
  CHECK(maximal_function_median(line({2.0, 6.0}), 1.0).values == std::vector<double>{2.0, 6.0});
  const StepFunction c = line({1.5, 1.5});
  CHECK(maximal_function_median(c, 0.5).values == c.values);

  CHECK_THROWS_AS(maximal_function_median(c, 0.0), validation_error);
  CHECK_THROWS_AS(maximal_function_median(c, 1.1), validation_error);
}

TEST_CASE("kernels agree with the serial reference") {
  for (int i = 0; i < 12; ++i) {
    const int dim = 1 + i % 3;
    const int depth = dim == 1 ? 6 : (dim == 2 ? 3 : 2);
    const StepFunction f = random_fn(dim, depth, 40 + static_cast<std::uint64_t>(i));

    // medians are rank selections, identical no matter the evaluation order
    for (double t : {0.25, 0.5, 1.0})
      CHECK(maximal_function_median(f, t).values == ref::maximal_function_median(f, t).values);

    // averages fold in tree order in the kernel, flat order in the reference
    const StepFunction got = maximal_function_avg(f);
    const StepFunction expect = ref::maximal_function_avg(f);
    for (std::size_t c = 0; c < got.values.size(); ++c)
      CHECK(got.values[c] == doctest::Approx(expect.values[c]).epsilon(1e-13));
  }
}

TEST_CASE("pointwise domination") {
  for (int i = 0; i < 10; ++i) {
    const StepFunction f = random_fn(1, 5, 70 + static_cast<std::uint64_t>(i));
    const StepFunction avg = maximal_function_avg(f);
    const StepFunction med = maximal_function_median(f, 0.5);
    const StepFunction med1 = maximal_function_median(f, 1.0);
    for (std::size_t c = 0; c < f.values.size(); ++c) {
      CHECK(avg.values[c] >= std::abs(f.values[c]));
      CHECK(med.values[c] >= std::abs(f.values[c]));
      CHECK(med1.values[c] >= std::abs(f.values[c]));
    }
  }
}

TEST_CASE("sublinearity and homogeneity of the average type") {
  const StepFunction f = random_fn(1, 6, 81);
  StepFunction g = random_fn(1, 6, 82);
  StepFunction sum = f;
  for (std::size_t c = 0; c < sum.values.size(); ++c) sum.values[c] += g.values[c];

  const StepFunction mf = maximal_function_avg(f);
  const StepFunction mg = maximal_function_avg(g);
  const StepFunction msum = maximal_function_avg(sum);
  for (std::size_t c = 0; c < f.values.size(); ++c)
    CHECK(msum.values[c] <= mf.values[c] + mg.values[c] + 1e-12);

  StepFunction scaled = f;
  for (auto& v : scaled.values) v *= -3.0;
  const StepFunction mscaled = maximal_function_avg(scaled);
  for (std::size_t c = 0; c < f.values.size(); ++c)
    CHECK(mscaled.values[c] == doctest::Approx(3.0 * mf.values[c]).epsilon(1e-13));
}

TEST_CASE("weak type (1,1) on random data") {
  for (int i = 0; i < 10; ++i) {
    const StepFunction f = random_fn(1, 6, 120 + static_cast<std::uint64_t>(i));
    const StepFunction mf = maximal_function_avg(f);
    double l1 = 0.0;
    for (double v : f.values) l1 += std::abs(v);
    l1 *= f.grid.cell_measure();
    for (double lambda : {0.1, 0.5, 1.0, 2.0}) {
      std::int64_t count = 0;
      for (double v : mf.values)
        if (v > lambda) ++count;
      CHECK(lambda * f.grid.cell_measure() * double(count) <= l1 * (1.0 + 1e-9));
    }
  }
}

TEST_CASE("level medians match per-cube medians") {
  const StepFunction f = random_fn(2, 3, 200);
  const auto med = level_medians(f, 0.5, /*absolute=*/true);
  StepFunction fabs = f;
  for (auto& v : fabs.values) v = std::abs(v);
  for (int j = 0; j <= f.grid.depth; ++j)
    for (std::int64_t r = 0; r < f.grid.cubes_at_level(j); ++r)
      CHECK(med[static_cast<std::size_t>(j)][static_cast<std::size_t>(r)] ==
            maximal_median(fabs, cube_of_morton(j, r, f.grid.dim), 0.5));
}

TEST_CASE("l2 boundedness smoke test under refinement") {
  double prev_ratio = 0.0;
  for (int depth : {4, 6, 8}) {
    const StepFunction f = random_fn(1, depth, 7);
    const StepFunction mf = maximal_function_avg(f);
    double l2f = 0.0, l2mf = 0.0;
    for (double v : f.values) l2f += v * v;
    for (double v : mf.values) l2mf += v * v;
    const double ratio = std::sqrt(l2mf / l2f);
    CHECK(std::isfinite(ratio));
    CHECK(ratio >= 1.0);    // M f dominates |f|
    CHECK(ratio < 10.0);    // far from the L2 operator-norm blowup
    prev_ratio = ratio;
  }
  CHECK(prev_ratio > 0.0);
}
