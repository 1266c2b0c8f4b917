#include "dyadic/maximal.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <string>

#include "dyadic/median.hpp"

namespace dyadic {
namespace {

constexpr std::int64_t kParallelCells = 4096;

// Merge the 2^n sorted child runs occupying src[base, base+m) into
// dst[base, base+m). Runs have length m >> n. `scratch` must hold m doubles.
void merge_children(const double* src, double* dst, std::int64_t base, std::int64_t m, int n,
                    double* scratch) {
  std::int64_t runlen = m >> n;
  const double* from = src + base;
  double* to = dst + base;
  double* other = scratch;
  for (int round = 0; round < n; ++round) {
    for (std::int64_t off = 0; off < m; off += 2 * runlen)
      std::merge(from + off, from + off + runlen, from + off + runlen, from + off + 2 * runlen,
                 to + off);
    from = to;
    to = (to == dst + base) ? other : dst + base;
    runlen <<= 1;
  }
  if (from != dst + base) std::memcpy(dst + base, from, sizeof(double) * static_cast<std::size_t>(m));
}

// Bottom-up sorted runs; calls visit(level, rank, sorted_span, m) for every
// cube, leaves included.
template <typename Visit>
void sweep_sorted(const StepFunction& f, bool absolute, Visit&& visit) {
  const int n = f.grid.dim;
  const int J = f.grid.depth;
  const std::int64_t N = f.grid.cell_count();
  TreeOrderedValues t = tree_ordered(f, absolute);
  std::vector<double> cur = std::move(t.values);
  std::vector<double> nxt(static_cast<std::size_t>(N));

  for (std::int64_t z = 0; z < N; ++z) visit(J, z, &cur[static_cast<std::size_t>(z)], std::int64_t{1});

  for (int j = J - 1; j >= 0; --j) {
    const std::int64_t m = f.grid.cells_per_cube(j);
    const std::int64_t cubes = f.grid.cubes_at_level(j);
#pragma omp parallel if (N >= kParallelCells)
    {
      std::vector<double> scratch(static_cast<std::size_t>(m));
#pragma omp for schedule(static)
      for (std::int64_t r = 0; r < cubes; ++r)
        merge_children(cur.data(), nxt.data(), r * m, m, n, scratch.data());
    }
    for (std::int64_t r = 0; r < cubes; ++r)
      visit(j, r, &nxt[static_cast<std::size_t>(r * m)], m);
    std::swap(cur, nxt);
  }
}

// Propagate the running maximum of per-cube scores down the tree and
// scatter the leaf values back to row-major order.
StepFunction propagate_max(const StepFunction& f,
                           const std::vector<std::vector<double>>& score) {
  const int n = f.grid.dim;
  const int J = f.grid.depth;
  std::vector<double> run = score[0];
  for (int j = 1; j <= J; ++j) {
    const std::int64_t cubes = f.grid.cubes_at_level(j);
    std::vector<double> next(static_cast<std::size_t>(cubes));
#pragma omp parallel for schedule(static) if (cubes >= kParallelCells)
    for (std::int64_t r = 0; r < cubes; ++r)
      next[static_cast<std::size_t>(r)] =
          std::max(run[static_cast<std::size_t>(r >> n)], score[static_cast<std::size_t>(j)][static_cast<std::size_t>(r)]);
    run = std::move(next);
  }
  const auto perm = tree_order_to_rowmajor(f.grid);
  std::vector<double> out(run.size());
  for (std::size_t z = 0; z < run.size(); ++z)
    out[static_cast<std::size_t>(perm[z])] = run[z];
  return StepFunction{f.grid, std::move(out)};
}

}  // namespace

std::vector<std::vector<double>> level_medians(const StepFunction& f, double s, bool absolute) {
  if (!(s > 0.0) || s > 1.0)
    throw validation_error("median parameter must lie in (0, 1], got " + std::to_string(s));
  const int J = f.grid.depth;
  std::vector<std::vector<double>> med(static_cast<std::size_t>(J) + 1);
  for (int j = 0; j <= J; ++j)
    med[static_cast<std::size_t>(j)].resize(static_cast<std::size_t>(f.grid.cubes_at_level(j)));
  sweep_sorted(f, absolute, [&](int j, std::int64_t r, const double* sorted, std::int64_t m) {
    const std::int64_t k = median_rank(s, m);
    med[static_cast<std::size_t>(j)][static_cast<std::size_t>(r)] = sorted[m - k];
  });
  return med;
}

StepFunction maximal_function_avg(const StepFunction& f) {
  const int n = f.grid.dim;
  const int J = f.grid.depth;
  const std::int64_t N = f.grid.cell_count();
  TreeOrderedValues t = tree_ordered(f, /*absolute=*/true);

  // sums[j][r] = sum of |f| over the cube; child sums folded left to right.
  std::vector<std::vector<double>> mean(static_cast<std::size_t>(J) + 1);
  std::vector<double> cur = std::move(t.values);
  mean[static_cast<std::size_t>(J)] = cur;
  for (int j = J - 1; j >= 0; --j) {
    const std::int64_t cubes = f.grid.cubes_at_level(j);
    const double inv_m = 1.0 / double(f.grid.cells_per_cube(j));
    std::vector<double> sums(static_cast<std::size_t>(cubes));
    auto& mj = mean[static_cast<std::size_t>(j)];
    mj.resize(static_cast<std::size_t>(cubes));
#pragma omp parallel for schedule(static) if (N >= kParallelCells)
    for (std::int64_t r = 0; r < cubes; ++r) {
      double acc = 0.0;
      for (int e = 0; e < (1 << n); ++e) acc += cur[static_cast<std::size_t>((r << n) + e)];
      sums[static_cast<std::size_t>(r)] = acc;
      mj[static_cast<std::size_t>(r)] = acc * inv_m;
    }
    cur = std::move(sums);
  }
  return propagate_max(f, mean);
}

StepFunction maximal_function_median(const StepFunction& f, double t) {
  return propagate_max(f, level_medians(f, t, /*absolute=*/true));
}

}  // namespace dyadic
