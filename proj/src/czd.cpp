#include "dyadic/czd.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "dyadic/median.hpp"

namespace dyadic {
namespace {

constexpr std::int64_t kParallelFrontier = 256;

double span_median(const double* values, std::int64_t m, double t, std::vector<double>& scratch) {
  scratch.assign(values, values + m);
  const std::int64_t k = median_rank(t, m);
  const auto pos = static_cast<std::ptrdiff_t>(m - k);
  std::nth_element(scratch.begin(), scratch.begin() + pos, scratch.end());
  return scratch[static_cast<std::size_t>(pos)];
}

}  // namespace

CZResult cz_decompose(const StepFunction& f, double t, double lambda) {
  if (!(t > 0.0) || t > 1.0)
    throw validation_error("t must lie in (0, 1], got " + std::to_string(t));
  const int n = f.grid.dim;
  const int J = f.grid.depth;
  TreeOrderedValues tv = tree_ordered(f, /*absolute=*/true);

  std::vector<double> scratch;
  const double root_median =
      span_median(tv.values.data(), f.grid.cell_count(), t, scratch);
  if (lambda < root_median)
    throw precondition_error("lambda " + std::to_string(lambda) +
                             " is below the root median " + std::to_string(root_median));

  CZResult out;
  out.lambda = lambda;
  out.t = t;

  // Frontier of Morton ranks per level; a cube enters the frontier only when
  // its parent median was <= lambda.
  std::vector<std::int64_t> frontier;
  if (J > 0)
    for (int e = 0; e < (1 << n); ++e) frontier.push_back(e);

  for (int j = 1; j <= J && !frontier.empty(); ++j) {
    const std::int64_t m = f.grid.cells_per_cube(j);
    const auto count = static_cast<std::int64_t>(frontier.size());
    std::vector<char> selected(static_cast<std::size_t>(count));
#pragma omp parallel if (count* m >= kParallelFrontier * 16)
    {
      std::vector<double> local;
#pragma omp for schedule(static)
      for (std::int64_t i = 0; i < count; ++i) {
        const std::int64_t r = frontier[static_cast<std::size_t>(i)];
        selected[static_cast<std::size_t>(i)] =
            span_median(tv.values.data() + r * m, m, t, local) > lambda;
      }
    }
    std::vector<std::int64_t> next;
    for (std::int64_t i = 0; i < count; ++i) {
      const std::int64_t r = frontier[static_cast<std::size_t>(i)];
      if (selected[static_cast<std::size_t>(i)]) {
        out.cubes.push_back(cube_of_morton(j, r, n));
      } else if (j < J) {
        for (int e = 0; e < (1 << n); ++e) next.push_back((r << n) + e);
      }
    }
    frontier = std::move(next);
  }

  std::sort(out.cubes.begin(), out.cubes.end(), cube_less);
  return out;
}

LevelSet level_set(const StepFunction& f, double t, double lambda) {
  CZResult cz = cz_decompose(f, t, lambda);
  std::int64_t cells = 0;
  for (const auto& q : cz.cubes) cells += f.grid.cells_per_cube(q.level);
  LevelSet out;
  out.cubes = std::move(cz.cubes);
  out.measure = f.grid.cell_measure() * double(cells);
  return out;
}

}  // namespace dyadic
