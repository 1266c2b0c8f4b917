#pragma once

#include <cstdint>

#include "dyadic/grid.hpp"

namespace dyadic {

/// Rank of the order statistic realizing the maximal s-median on m equal
/// cells: the k-th largest cell value with k = ceil(s*m).
std::int64_t median_rank(double s, std::int64_t m);

/// k-th largest element of `buf` (buf is permuted in place).
double kth_largest(std::vector<double>& buf, std::int64_t k);

/// Maximal s-median of f over Q: the smallest threshold a such that
/// {f > a} fills strictly less than fraction s of Q. On equal cells this is
/// the ceil(s*m)-th largest cell value; see docs/algorithms.md for the
/// proof (ties included) against the literal threshold-scan definition.
double maximal_median(const StepFunction& f, const DyadicCube& cube, double s);

/// s-median of |f - m_f^t(Q)| over Q. Requires 0 < s <= t <= 1/2.
double median_oscillation(const StepFunction& f, const DyadicCube& cube, double s, double t);

struct CenterOscillation {
  double value = 0.0;
  double center = 0.0;
};

/// inf over c of the s-median of |f - c| on Q, with the minimizing c.
/// Requires 0 < s <= 1/2. Computed by the sliding-window identity over the
/// sorted cell values: with q = m - ceil(s*m) + 1, the optimum is half the
/// width of the narrowest window of q consecutive sorted values, centered at
/// its midpoint (leftmost window on ties).
CenterOscillation min_center_oscillation(const StepFunction& f, const DyadicCube& cube, double s);

}  // namespace dyadic
