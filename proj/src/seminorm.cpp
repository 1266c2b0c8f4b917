#include "dyadic/seminorm.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "dyadic/median.hpp"

namespace dyadic {
namespace {

constexpr std::int64_t kParallelCubes = 256;
constexpr double kWeightClamp = 1e-15;

double avg_mean_oscillation(const StepFunction& f, const DyadicCube& cube) {
  static thread_local std::vector<double> buf;
  gather_cells(f, cube, buf);
  double sum = 0.0;
  for (double v : buf) sum += v;
  const double mean = sum / double(buf.size());
  double dev = 0.0;
  for (double v : buf) dev += std::abs(v - mean);
  return dev / double(buf.size());
}

double oscillation(const StepFunction& f, const DyadicCube& cube, const SeminormConfig& cfg) {
  switch (cfg.mode) {
    case SeminormMode::AvgMean:
      return avg_mean_oscillation(f, cube);
    case SeminormMode::MedOptimal:
      return min_center_oscillation(f, cube, cfg.s).value;
    case SeminormMode::MedCenter:
      return median_oscillation(f, cube, cfg.s, cfg.t);
  }
  return 0.0;
}

// All per-level cube weights (Morton-rank indexed), clamped as documented in
// jn_seminorm. Shared by the DP and the brute-force oracle so that both
// optimize the identical weight table.
std::vector<std::vector<double>> clamped_weights(const StepFunction& f, const SeminormConfig& cfg) {
  const int n = f.grid.dim;
  const int J = f.grid.depth;
  std::vector<std::vector<double>> w(static_cast<std::size_t>(J) + 1);
  double scale = 0.0;
  for (int j = 0; j <= J; ++j) {
    const std::int64_t cubes = f.grid.cubes_at_level(j);
    auto& wj = w[static_cast<std::size_t>(j)];
    wj.resize(static_cast<std::size_t>(cubes));
    const double measure = f.grid.measure_at_level(j);
#pragma omp parallel for schedule(static) if (cubes >= kParallelCubes)
    for (std::int64_t r = 0; r < cubes; ++r) {
      const DyadicCube cube = cube_of_morton(j, r, n);
      wj[static_cast<std::size_t>(r)] = measure * std::pow(oscillation(f, cube, cfg), cfg.p);
    }
    for (double v : wj) scale = std::max(scale, v);
  }
  const double threshold = kWeightClamp * scale;
  for (auto& wj : w)
    for (double& v : wj)
      if (v < threshold) v = 0.0;
  return w;
}

void backtrack(const DyadicGrid& grid, const std::vector<std::vector<char>>& take,
               const std::vector<std::vector<double>>& w, int j, std::int64_t r,
               SeminormReport& out) {
  if (take[static_cast<std::size_t>(j)][static_cast<std::size_t>(r)]) {
    const double weight = w[static_cast<std::size_t>(j)][static_cast<std::size_t>(r)];
    if (weight > 0.0) {
      out.optimum.push_back(cube_of_morton(j, r, grid.dim));
      out.optimum_weights.push_back(weight);
    }
    return;
  }
  for (int e = 0; e < (1 << grid.dim); ++e)
    backtrack(grid, take, w, j + 1, (r << grid.dim) + e, out);
}

void sort_optimum(SeminormReport& report) {
  std::vector<std::size_t> order(report.optimum.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return cube_less(report.optimum[a], report.optimum[b]);
  });
  SeminormReport tmp;
  tmp.optimum.reserve(order.size());
  tmp.optimum_weights.reserve(order.size());
  for (std::size_t i : order) {
    tmp.optimum.push_back(report.optimum[i]);
    tmp.optimum_weights.push_back(report.optimum_weights[i]);
  }
  report.optimum = std::move(tmp.optimum);
  report.optimum_weights = std::move(tmp.optimum_weights);
}

// Every antichain weight sum in the subtree at (j, r), child contributions
// folded left to right exactly as the DP folds them.
void enumerate_sums(const std::vector<std::vector<double>>& w, int n, int J, int j, std::int64_t r,
                    std::vector<double>& out) {
  out.clear();
  out.push_back(w[static_cast<std::size_t>(j)][static_cast<std::size_t>(r)]);
  if (j == J) {
    out.push_back(0.0);  // empty collection
    return;
  }
  const int fan = 1 << n;
  std::vector<std::vector<double>> child(static_cast<std::size_t>(fan));
  std::size_t combos = 1;
  for (int e = 0; e < fan; ++e) {
    enumerate_sums(w, n, J, j + 1, (r << n) + e, child[static_cast<std::size_t>(e)]);
    combos *= child[static_cast<std::size_t>(e)].size();
  }
  std::vector<std::size_t> pick(static_cast<std::size_t>(fan), 0);
  for (std::size_t c = 0; c < combos; ++c) {
    double sum = 0.0;
    for (int e = 0; e < fan; ++e) sum += child[static_cast<std::size_t>(e)][pick[static_cast<std::size_t>(e)]];
    out.push_back(sum);
    for (int e = fan - 1; e >= 0; --e) {
      auto& idx = pick[static_cast<std::size_t>(e)];
      if (++idx < child[static_cast<std::size_t>(e)].size()) break;
      idx = 0;
    }
  }
}

// Recover an antichain attaining `target`, preferring children on ties to
// match the DP's tie rule. best(child) decomposes the max because the fold
// is monotone in every operand.
void recover(const std::vector<std::vector<double>>& w, int n, int J, int j, std::int64_t r,
             double target, const DyadicGrid& grid, SeminormReport& out) {
  if (j < J) {
    std::vector<double> child_best(static_cast<std::size_t>(1) << n);
    for (int e = 0; e < (1 << n); ++e) {
      std::vector<double> sums;
      enumerate_sums(w, n, J, j + 1, (r << n) + e, sums);
      child_best[static_cast<std::size_t>(e)] = *std::max_element(sums.begin(), sums.end());
    }
    double csum = 0.0;
    for (double b : child_best) csum += b;
    if (csum == target) {
      for (int e = 0; e < (1 << n); ++e)
        recover(w, n, J, j + 1, (r << n) + e, child_best[static_cast<std::size_t>(e)], grid, out);
      return;
    }
  }
  const double weight = w[static_cast<std::size_t>(j)][static_cast<std::size_t>(r)];
  if (weight > 0.0) {
    out.optimum.push_back(cube_of_morton(j, r, grid.dim));
    out.optimum_weights.push_back(weight);
  }
}

}  // namespace

void validate_config(const SeminormConfig& cfg) {
  if (!(cfg.p > 1.0)) throw validation_error("p must be > 1, got " + std::to_string(cfg.p));
  if (cfg.mode == SeminormMode::MedOptimal || cfg.mode == SeminormMode::MedCenter) {
    if (!(cfg.s > 0.0) || cfg.s > 0.5)
      throw validation_error("median modes need s in (0, 1/2], got " + std::to_string(cfg.s));
  }
  if (cfg.mode == SeminormMode::MedCenter) {
    if (!(cfg.t > 0.0) || cfg.t > 0.5 || cfg.s > cfg.t)
      throw validation_error("med-center needs 0 < s <= t <= 1/2");
  }
}

SeminormMode mode_from_string(const std::string& name) {
  if (name == "avg-mean") return SeminormMode::AvgMean;
  if (name == "med-optimal") return SeminormMode::MedOptimal;
  if (name == "med-center") return SeminormMode::MedCenter;
  throw validation_error("unknown seminorm mode '" + name + "'");
}

std::string mode_to_string(SeminormMode mode) {
  switch (mode) {
    case SeminormMode::AvgMean: return "avg-mean";
    case SeminormMode::MedOptimal: return "med-optimal";
    case SeminormMode::MedCenter: return "med-center";
  }
  return "?";
}

double cube_weight(const StepFunction& f, const DyadicCube& cube, const SeminormConfig& cfg) {
  validate_config(cfg);
  validate_cube(f.grid, cube);
  return f.grid.measure_at_level(cube.level) * std::pow(oscillation(f, cube, cfg), cfg.p);
}

SeminormReport jn_seminorm(const StepFunction& f, const SeminormConfig& cfg) {
  validate_config(cfg);
  const int n = f.grid.dim;
  const int J = f.grid.depth;
  const auto w = clamped_weights(f, cfg);

  std::vector<std::vector<char>> take(static_cast<std::size_t>(J) + 1);
  std::vector<double> best = w[static_cast<std::size_t>(J)];
  take[static_cast<std::size_t>(J)].assign(best.size(), 1);
  for (int j = J - 1; j >= 0; --j) {
    const std::int64_t cubes = f.grid.cubes_at_level(j);
    std::vector<double> up(static_cast<std::size_t>(cubes));
    auto& tj = take[static_cast<std::size_t>(j)];
    tj.resize(static_cast<std::size_t>(cubes));
    const auto& wj = w[static_cast<std::size_t>(j)];
#pragma omp parallel for schedule(static) if (cubes >= kParallelCubes)
    for (std::int64_t r = 0; r < cubes; ++r) {
      double csum = 0.0;
      for (int e = 0; e < (1 << n); ++e) csum += best[static_cast<std::size_t>((r << n) + e)];
      const bool pick = wj[static_cast<std::size_t>(r)] > csum;  // ties keep the children
      tj[static_cast<std::size_t>(r)] = pick;
      up[static_cast<std::size_t>(r)] = pick ? wj[static_cast<std::size_t>(r)] : csum;
    }
    best = std::move(up);
  }

  SeminormReport report;
  report.config = cfg;
  report.value_p = best[0];
  report.value = std::pow(best[0], 1.0 / cfg.p);
  backtrack(f.grid, take, w, 0, 0, report);
  sort_optimum(report);
  return report;
}

SeminormReport jn_seminorm_bruteforce(const StepFunction& f, const SeminormConfig& cfg) {
  validate_config(cfg);
  const int n = f.grid.dim;
  const int J = f.grid.depth;
  if (!((n == 1 && J <= 4) || (n == 2 && J <= 2)))
    throw resource_error("brute-force seminorm supports dim=1 depth<=4 or dim=2 depth<=2, got dim=" +
                         std::to_string(n) + " depth=" + std::to_string(J));
  const auto w = clamped_weights(f, cfg);
  std::vector<double> sums;
  enumerate_sums(w, n, J, 0, 0, sums);
  const double best = *std::max_element(sums.begin(), sums.end());

  SeminormReport report;
  report.config = cfg;
  report.value_p = best;
  report.value = std::pow(best, 1.0 / cfg.p);
  recover(w, n, J, 0, 0, best, f.grid, report);
  sort_optimum(report);
  return report;
}

CompanionNorms companion_norms(const StepFunction& f, double p) {
  if (!(p > 1.0)) throw validation_error("p must be > 1, got " + std::to_string(p));
  CompanionNorms out;
  out.p = p;
  const double mu = f.grid.cell_measure();

  double abs_sum = 0.0, pow_sum = 0.0, llogl_sum = 0.0;
  for (double v : f.values) {
    const double a = std::abs(v);
    abs_sum += a;
    pow_sum += std::pow(a, p);
    if (a > 1.0) llogl_sum += a * std::log(a);
  }
  out.l1 = abs_sum * mu;
  out.lp = std::pow(pow_sum * mu, 1.0 / p);
  out.llogl = llogl_sum * mu;

  // sup_lambda lambda |{|f|>lambda}|^{1/p} is attained approaching a value of
  // |f| from below, so scan distinct values against tail counts.
  std::vector<double> sorted(f.values.size());
  for (std::size_t i = 0; i < sorted.size(); ++i) sorted[i] = std::abs(f.values[i]);
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    if (sorted[i] == 0.0) continue;
    if (i > 0 && sorted[i] == sorted[i - 1]) continue;
    const auto tail = double(sorted.size() - i);  // cells with |f| >= sorted[i]
    out.weak_lp = std::max(out.weak_lp, sorted[i] * std::pow(tail * mu, 1.0 / p));
  }

  const int J = f.grid.depth;
  double bmo = 0.0;
  for (int j = 0; j <= J; ++j) {
    const std::int64_t cubes = f.grid.cubes_at_level(j);
#pragma omp parallel for schedule(static) reduction(max : bmo) if (cubes >= kParallelCubes)
    for (std::int64_t r = 0; r < cubes; ++r)
      bmo = std::max(bmo, avg_mean_oscillation(f, cube_of_morton(j, r, f.grid.dim)));
  }
  out.bmo = bmo;
  return out;
}

}  // namespace dyadic
