#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "dyadic/grid.hpp"

namespace dyadic {

enum class SamplingRule { Midpoint, ExactCellAverage };

/// A named analytic (or synthetic) function plus how to turn it into a
/// step function. Catalog entries:
///   constant          params: c
///   step              explicit per-cell value list
///   random-uniform    params: lo, hi, seed
///   log-reciprocal    log(1/x) on (0,1), 1D
///   power             x^a on (0,.), 1D, params: a
///   jn-extremal       1/(x log^2 x) cut off at 1/2, 1D, domain within [0,1/2]
///   smooth-lipschitz  sin(2*pi*freq*(x_1+..+x_n)), params: freq (default 1)
struct FunctionSpec {
  std::string name;
  std::map<std::string, double> params;
  std::vector<double> step_values;
  SamplingRule rule = SamplingRule::Midpoint;
  // Optional expected root cube; validated against the sampling grid when set.
  std::optional<std::vector<double>> domain_origin;
  std::optional<double> domain_side;

  /// One-line description used in report corpus listings.
  std::string describe() const;
};

StepFunction sample_catalog(const FunctionSpec& spec, const DyadicGrid& grid);

/// Convenience: seeded uniform values in [lo, hi) on `grid`.
StepFunction random_step(const DyadicGrid& grid, std::uint64_t seed, double lo, double hi);

bool catalog_has_exact_rule(const std::string& name);

}  // namespace dyadic
