#pragma once

#include "dyadic/grid.hpp"

namespace dyadic {

/// Oscillation functional entering the per-cube weight |Q| * osc(Q)^p:
///   AvgMean    mean of |f - mean_Q f| over Q
///   MedOptimal inf over centers c of the s-median of |f - c|
///   MedCenter  s-median of |f - m_f^t(Q)|
enum class SeminormMode { AvgMean, MedOptimal, MedCenter };

struct SeminormConfig {
  double p = 2.0;
  SeminormMode mode = SeminormMode::AvgMean;
  double s = 0.5;  // median modes
  double t = 0.5;  // MedCenter only
};

void validate_config(const SeminormConfig& cfg);
SeminormMode mode_from_string(const std::string& name);
std::string mode_to_string(SeminormMode mode);

/// |Q| * osc(Q)^p for the configured mode (unclamped).
double cube_weight(const StepFunction& f, const DyadicCube& cube, const SeminormConfig& cfg);

struct SeminormReport {
  SeminormConfig config;
  double value = 0.0;    // the seminorm
  double value_p = 0.0;  // its p-th power = optimal antichain weight sum
  std::vector<DyadicCube> optimum;  // canonical (level, index) order
  std::vector<double> optimum_weights;
};

/// Exact supremum of sum |Q_i| * osc(Q_i)^p over antichains of dyadic cubes,
/// by bottom-up dynamic programming: best(Q) = max(weight(Q), sum of
/// children's best). Admissible collections are exactly the antichains of
/// the dyadic tree and weights are nonnegative, so the DP is exact. Weights
/// below 1e-15 of the largest weight are clamped to zero first so the
/// reported optimum is not made of rounding dust; ties prefer the deeper
/// collection and zero-weight cubes are dropped from the report.
SeminormReport jn_seminorm(const StepFunction& f, const SeminormConfig& cfg);

/// Enumerates every antichain (oracle for the DP). Restricted to instances
/// with dim=1, depth<=4 or dim=2, depth<=2; must agree with jn_seminorm
/// bit for bit, both sides folding child contributions left to right.
SeminormReport jn_seminorm_bruteforce(const StepFunction& f, const SeminormConfig& cfg);

struct CompanionNorms {
  double p = 2.0;
  double l1 = 0.0;
  double lp = 0.0;
  double weak_lp = 0.0;  // sup over lambda of lambda * |{|f|>lambda}|^{1/p}
  double llogl = 0.0;    // integral of |f| * max(log|f|, 0)
  double bmo = 0.0;      // largest mean oscillation over all dyadic cubes
};

CompanionNorms companion_norms(const StepFunction& f, double p);

}  // namespace dyadic
