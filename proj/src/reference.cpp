#include "dyadic/reference.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace dyadic::ref {
namespace {

double scan_values(std::vector<double> vals, double s) {
  std::sort(vals.begin(), vals.end());
  const double threshold = s * double(vals.size());
  for (std::size_t i = 0; i < vals.size(); ++i) {
    if (i > 0 && vals[i] == vals[i - 1]) continue;
    // strictly greater count if a = vals[i]
    std::size_t above = 0;
    for (double v : vals)
      if (v > vals[i]) ++above;
    if (double(above) < threshold) return vals[i];
  }
  return vals.back();  // unreachable: the largest value always qualifies
}

std::vector<DyadicCube> ancestors_of_cell(const DyadicGrid& grid, std::int64_t flat) {
  const auto multi = multi_of_rowmajor(grid, flat);
  std::vector<DyadicCube> chain;
  for (int j = 0; j <= grid.depth; ++j) {
    DyadicCube q;
    q.level = j;
    for (int d = 0; d < grid.dim; ++d) q.index[d] = multi[d] >> (grid.depth - j);
    chain.push_back(q);
  }
  return chain;
}

}  // namespace

double smedian_threshold_scan(const StepFunction& f, const DyadicCube& cube, double s) {
  if (!(s > 0.0) || s > 1.0) throw validation_error("s must lie in (0, 1]");
  std::vector<double> vals;
  gather_cells(f, cube, vals);
  return scan_values(std::move(vals), s);
}

CenterOscillation min_center_oscillation_scan(const StepFunction& f, const DyadicCube& cube,
                                              double s) {
  if (!(s > 0.0) || s > 0.5) throw validation_error("s must lie in (0, 1/2]");
  std::vector<double> vals;
  gather_cells(f, cube, vals);

  std::vector<double> centers = vals;
  for (std::size_t i = 0; i < vals.size(); ++i)
    for (std::size_t j = i + 1; j < vals.size(); ++j)
      centers.push_back((vals[i] + vals[j]) / 2.0);
  std::sort(centers.begin(), centers.end());
  centers.erase(std::unique(centers.begin(), centers.end()), centers.end());

  CenterOscillation best;
  best.value = std::numeric_limits<double>::infinity();
  std::vector<double> dist(vals.size());
  for (double c : centers) {
    for (std::size_t i = 0; i < vals.size(); ++i) dist[i] = std::abs(vals[i] - c);
    const double osc = scan_values(dist, s);
    if (osc < best.value) {
      best.value = osc;
      best.center = c;
    }
  }
  return best;
}

StepFunction maximal_function_avg(const StepFunction& f) {
  const std::int64_t N = f.grid.cell_count();
  std::vector<double> out(static_cast<std::size_t>(N));
  std::vector<double> buf;
  for (std::int64_t i = 0; i < N; ++i) {
    double best = 0.0;
    for (const auto& q : ancestors_of_cell(f.grid, i)) {
      gather_cells(f, q, buf);
      double sum = 0.0;
      for (double v : buf) sum += std::abs(v);
      best = std::max(best, sum / double(buf.size()));
    }
    out[static_cast<std::size_t>(i)] = best;
  }
  return StepFunction{f.grid, std::move(out)};
}

StepFunction maximal_function_median(const StepFunction& f, double t) {
  if (!(t > 0.0) || t > 1.0) throw validation_error("t must lie in (0, 1]");
  const std::int64_t N = f.grid.cell_count();
  std::vector<double> out(static_cast<std::size_t>(N));
  std::vector<double> buf;
  for (std::int64_t i = 0; i < N; ++i) {
    double best = -std::numeric_limits<double>::infinity();
    for (const auto& q : ancestors_of_cell(f.grid, i)) {
      gather_cells(f, q, buf);
      for (auto& v : buf) v = std::abs(v);
      best = std::max(best, scan_values(buf, t));
    }
    out[static_cast<std::size_t>(i)] = best;
  }
  return StepFunction{f.grid, std::move(out)};
}

std::vector<DyadicCube> cz_cubes_exhaustive(const StepFunction& f, double t, double lambda) {
  std::vector<double> buf;
  auto median_of = [&](const DyadicCube& q) {
    gather_cells(f, q, buf);
    for (auto& v : buf) v = std::abs(v);
    return scan_values(buf, t);
  };
  if (lambda < median_of(root_cube()))
    throw precondition_error("lambda below the root median");

  std::vector<DyadicCube> out;
  for (int j = 1; j <= f.grid.depth; ++j) {
    for (std::int64_t r = 0; r < f.grid.cubes_at_level(j); ++r) {
      DyadicCube q = cube_of_morton(j, r, f.grid.dim);
      if (!(median_of(q) > lambda)) continue;
      bool maximal = true;
      for (DyadicCube a = parent_of(q); maximal; a = parent_of(a)) {
        if (median_of(a) > lambda) maximal = false;
        if (a.level == 0) break;
      }
      if (maximal) out.push_back(q);
    }
  }
  std::sort(out.begin(), out.end(), cube_less);
  return out;
}

}  // namespace dyadic::ref
