#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "dyadic/catalog.hpp"
#include "dyadic/grid.hpp"

namespace dyadic {

/// Relative slack absorbing float rounding in otherwise-exact arithmetic;
/// anything failing by more than this is a real failure.
constexpr double kVerifySlack = 1e-9;

struct ReportRow {
  std::vector<std::pair<std::string, double>> params;
  double lhs = 0.0;
  double rhs = 0.0;
  double margin = 0.0;  // rhs - lhs
  std::string note;     // reproducing instance on failures
};

struct VerificationReport {
  std::string name;
  std::vector<ReportRow> rows;
  double empirical_constant = 0.0;
  double theoretical_constant = 0.0;
  bool pass = true;
  std::vector<std::string> corpus;
};

bool row_holds(const ReportRow& row);
/// pass must always equal this recomputation; no hidden state.
bool recompute_pass(const VerificationReport& report);

ReportRow make_row(std::vector<std::pair<std::string, double>> params, double lhs, double rhs);

// Explicit constants of the verified inequalities.
double jn_inequality_constant(double p);  // 2^{p+3} (2^{1/p}-1)^{-p}
double equivalence_constant(double p);    // 2 c p/(p-1), c as above
double maximal_l1_constant(double p);     // 2^{p+1} (p/(p-1))^p

std::vector<double> geometric_grid(double lo, double hi, int count);

/// 40 geometric points from max(root t-median of |f|, 1e-6 * max|f|) up to
/// 2 * max|f|; the single point {1} when f vanishes identically.
std::vector<double> default_lambda_grid(const StepFunction& f, double t, int count = 40);

/// Good-lambda estimate: |{M^{d,t} > K lambda}| against the seminorm term
/// plus a fraction of |{M^{d,t} > lambda}|.
VerificationReport verify_good_lambda(const StepFunction& f, double p, double t, double K,
                                      double s, const std::vector<double>& lambda_grid);

/// Weak type estimate for the oscillation |f - m_f^r(root)| with the
/// explicit constant 2^{p+3} (2^{1/p}-1)^{-p}.
VerificationReport verify_jn_inequality(const StepFunction& f, double p, double s, double r,
                                        const std::vector<double>& lambda_grid);

/// Two-sided comparability of the average-mean and median-optimal seminorms.
VerificationReport verify_equivalence(const StepFunction& f, double p, double s);

/// Sandwich of the median-centered seminorm between the optimal-center one
/// and 2^p times it.
VerificationReport verify_center_sandwich(const StepFunction& f, double p, double s, double t);

/// Boundedness of the dyadic maximal operator on the seminorm, with the
/// constant chained from the equivalence constant.
VerificationReport verify_maximal_bound(const StepFunction& f, double p);

/// Seminorm of (maximal function)^{1/p} against 2^{p+1}(p/(p-1))^p * L1.
VerificationReport verify_l1_bound(const StepFunction& f, double p);

/// lambda * |{maximal avg > lambda}| <= integral of |f|.
VerificationReport verify_weak_type(const StepFunction& f, const std::vector<double>& lambda_grid);

/// The ten s-median properties plus the shrinking-cube convergence check on
/// the smooth catalog entry, over seeded random step functions. Each
/// property gets one summary row: worst observed violation against the
/// 1e-12 absolute tolerance; failures carry a reproducing instance.
VerificationReport run_median_property_suite(int seed_count, const std::vector<int>& dims,
                                             const std::vector<int>& depths,
                                             std::uint64_t seed_base = 1);

nlohmann::json report_to_json(const VerificationReport& report);
std::string report_to_csv(const VerificationReport& report);

/// Pinned defaults for `jn suite`; data/suite_manifest.json mirrors these.
struct SuiteManifest {
  std::uint64_t seed_base = 20250809;
  int property_seeds = 200;
  std::vector<int> property_dims{1, 2};
  std::vector<int> property_depths{3, 4};
  int bruteforce_seeds = 60;
  int cz_seeds = 40;
  int cz_lambda_count = 10;
  int corpus_random = 30;
  int corpus_depth = 6;
  int named_depth = 7;
  std::vector<double> p_values{1.5, 2.0, 4.0};
  double s_jn = 0.0625;
  double r_jn = 0.5;
  double gl_t = 0.25;
  double gl_K = 2.0;
  double gl_p = 2.0;
  double gl_s = 0.03125;
  double sandwich_s = 0.25;
  double sandwich_t = 0.5;
  int lambda_count = 20;
};

SuiteManifest manifest_from_json(const nlohmann::json& j);
nlohmann::json manifest_to_json(const SuiteManifest& m);

struct CorpusEntry {
  FunctionSpec spec;
  DyadicGrid grid;
};

/// The pinned 1D verification corpus: seeded uniforms plus the analytic
/// catalog entries.
std::vector<CorpusEntry> suite_corpus(const SuiteManifest& m);

struct SuiteResult {
  std::vector<VerificationReport> reports;
  bool pass = true;
};

SuiteResult run_suite(const SuiteManifest& m);
nlohmann::json suite_to_json(const SuiteResult& result);
std::string suite_to_csv(const SuiteResult& result);

}  // namespace dyadic
