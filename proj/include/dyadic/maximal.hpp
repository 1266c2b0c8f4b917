#pragma once

#include "dyadic/grid.hpp"

namespace dyadic {

/// Maximal s-median of every dyadic cube, level by level, indexed by Morton
/// rank: result[j][r] is the median over the cube at level j with rank r
/// (of |f| when `absolute`). One bottom-up sweep merging sorted child runs,
/// O(cells * depth * dim) total; cubes within a level run in parallel.
std::vector<std::vector<double>> level_medians(const StepFunction& f, double s, bool absolute);

/// Dyadic maximal function with integral averages: per cell, the largest
/// average of |f| over the dyadic cubes containing it (levels 0..depth).
StepFunction maximal_function_avg(const StepFunction& f);

/// Median-type dyadic maximal function: per cell, sup over containing cubes
/// of the maximal t-median of |f|. Requires 0 < t <= 1.
StepFunction maximal_function_median(const StepFunction& f, double t);

}  // namespace dyadic
