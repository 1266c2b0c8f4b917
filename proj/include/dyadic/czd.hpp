#pragma once

#include "dyadic/grid.hpp"

namespace dyadic {

/// Maximal dyadic cubes on which the t-median of |f| first exceeds lambda,
/// in canonical (level, index) order. An antichain: no cube contains another.
struct CZResult {
  double lambda = 0.0;
  double t = 0.0;
  std::vector<DyadicCube> cubes;
};

struct LevelSet {
  std::vector<DyadicCube> cubes;
  double measure = 0.0;  // cell_measure * total finest-cell count of the union
};

/// Stopping-time decomposition at level lambda. Descends from the root and
/// stops at the first cube with median > lambda along each branch; requires
/// lambda >= t-median of |f| over the root.
CZResult cz_decompose(const StepFunction& f, double t, double lambda);

/// The decomposition cubes together with the measure of their union, which
/// equals |{median-type maximal function > lambda}|.
LevelSet level_set(const StepFunction& f, double t, double lambda);

}  // namespace dyadic
