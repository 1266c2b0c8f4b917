#pragma once

#include "dyadic/grid.hpp"
#include "dyadic/median.hpp"

namespace dyadic::ref {

/// Literal definition of the maximal s-median: the least cell value a with
/// #{cells of Q with value > a} < s * m, found by scanning every distinct
/// cell value as a candidate threshold. Independent of the order-statistic
/// implementation; serial; O(m^2).
double smedian_threshold_scan(const StepFunction& f, const DyadicCube& cube, double s);

/// Minimum of the s-median of |f - c| over a dense candidate grid of centers
/// (all cell values and all pairwise midpoints), each evaluated by the
/// threshold scan. Oracle for the sliding-window minimizer.
CenterOscillation min_center_oscillation_scan(const StepFunction& f, const DyadicCube& cube,
                                              double s);

/// Per-cell enumeration of every containing cube, averages computed by
/// direct summation in row-major cell order. Serial; O(cells^2).
StepFunction maximal_function_avg(const StepFunction& f);

/// Per-cell enumeration of every containing cube, medians by threshold scan.
StepFunction maximal_function_median(const StepFunction& f, double t);

/// All maximal cubes with t-median of |f| above lambda, found by checking
/// the maximality condition literally on every cube of the tree.
std::vector<DyadicCube> cz_cubes_exhaustive(const StepFunction& f, double t, double lambda);

}  // namespace dyadic::ref
