#include <algorithm>
#include <cmath>
#include <sstream>

#include "dyadic/czd.hpp"
#include "dyadic/io.hpp"
#include "dyadic/maximal.hpp"
#include "dyadic/median.hpp"
#include "dyadic/seminorm.hpp"
#include "dyadic/verify.hpp"

namespace dyadic {
namespace {

DyadicGrid unit_grid(int dim, int depth) {
  return make_grid(dim, depth, std::vector<double>(static_cast<std::size_t>(dim), 0.0), 1.0);
}

bool antichain_ok(const DyadicGrid& grid, const std::vector<DyadicCube>& cubes) {
  for (std::size_t a = 0; a < cubes.size(); ++a)
    for (std::size_t b = 0; b < cubes.size(); ++b)
      if (a != b && cube_contains(grid, cubes[a], cubes[b])) return false;
  return true;
}

// DP against the exhaustive antichain enumeration; exact agreement required.
VerificationReport check_dp_vs_bruteforce(const SuiteManifest& m) {
  VerificationReport report;
  report.name = "dp-vs-bruteforce";
  report.corpus.push_back("random-uniform(-1,2) dim=1 depth=i%5, seeds " +
                          std::to_string(m.seed_base + 20000) + "..+" +
                          std::to_string(m.bruteforce_seeds - 1));

  double worst_exact = 0.0;
  double worst_sum = 0.0;
  std::int64_t antichain_violations = 0;
  std::string note;
  for (int i = 0; i < m.bruteforce_seeds; ++i) {
    const int depth = i % 5;
    const StepFunction f =
        random_step(unit_grid(1, depth), m.seed_base + 20000 + static_cast<std::uint64_t>(i), -1.0, 2.0);
    const double p = m.p_values[static_cast<std::size_t>(i) % m.p_values.size()];
    std::vector<SeminormConfig> configs(3);
    configs[0] = {p, SeminormMode::AvgMean, 0.5, 0.5};
    configs[1] = {p, SeminormMode::MedOptimal, i % 2 ? 0.5 : 0.25, 0.5};
    configs[2] = {p, SeminormMode::MedCenter, 0.25, 0.5};
    for (const auto& cfg : configs) {
      const SeminormReport dp = jn_seminorm(f, cfg);
      const SeminormReport brute = jn_seminorm_bruteforce(f, cfg);
      const double diff = std::abs(dp.value_p - brute.value_p) + std::abs(dp.value - brute.value);
      if (diff > worst_exact) {
        worst_exact = diff;
        note = "seed=" + std::to_string(m.seed_base + 20000 + static_cast<std::uint64_t>(i)) +
               " depth=" + std::to_string(depth) + " mode=" + mode_to_string(cfg.mode);
      }
      if (!antichain_ok(f.grid, dp.optimum) || !antichain_ok(f.grid, brute.optimum))
        ++antichain_violations;
      double sum = 0.0;
      for (double w : dp.optimum_weights) sum += w;
      const double scale = std::max(1.0, dp.value_p);
      worst_sum = std::max(worst_sum, std::abs(sum - dp.value_p) / scale);
    }
  }
  auto exact_row = make_row({{"check", 1.0}}, worst_exact, 0.0);
  exact_row.note = "dp value equals brute force" + (note.empty() ? "" : " (worst: " + note + ")");
  report.rows.push_back(std::move(exact_row));
  auto anti_row = make_row({{"check", 2.0}}, double(antichain_violations), 0.0);
  anti_row.note = "reported optima are antichains";
  report.rows.push_back(std::move(anti_row));
  auto sum_row = make_row({{"check", 3.0}}, worst_sum, 1e-12);
  sum_row.note = "optimum weights add up to value^p";
  report.rows.push_back(std::move(sum_row));
  report.pass = recompute_pass(report);
  return report;
}

VerificationReport check_cz_properties(const SuiteManifest& m) {
  VerificationReport report;
  report.name = "cz-properties";
  report.corpus.push_back("random-uniform(-1,2), dims 1/2, seeds " +
                          std::to_string(m.seed_base + 30000) + "..+" +
                          std::to_string(m.cz_seeds - 1));

  std::int64_t median_violations = 0;   // (i)  selected cube median > lambda
  std::int64_t parent_violations = 0;   // (ii) parent median <= lambda
  std::int64_t outside_violations = 0;  // (iii) |f| <= lambda outside the union
  std::int64_t measure_mismatches = 0;  // level set equals thresholded maximal fn
  std::int64_t nesting_violations = 0;  // unions shrink as lambda grows
  std::string note;

  for (int i = 0; i < m.cz_seeds; ++i) {
    const int dim = i % 2 ? 2 : 1;
    const int depth = dim == 1 ? 6 : 3;
    const StepFunction f =
        random_step(unit_grid(dim, depth), m.seed_base + 30000 + static_cast<std::uint64_t>(i), -1.0, 2.0);
    const double t = i % 2 ? 0.25 : 0.5;
    const StepFunction maximal = maximal_function_median(f, t);
    const auto lambdas = default_lambda_grid(f, t, m.cz_lambda_count);

    std::vector<char> prev_cover;
    for (double lambda : lambdas) {
      const LevelSet ls = level_set(f, t, lambda);
      std::vector<char> cover(f.values.size(), 0);
      std::vector<std::int64_t> idx;
      std::vector<double> buf;
      auto abs_median = [&](const DyadicCube& q) {
        gather_cells(f, q, buf);
        for (auto& v : buf) v = std::abs(v);
        return kth_largest(buf, median_rank(t, static_cast<std::int64_t>(buf.size())));
      };
      for (const auto& q : ls.cubes) {
        if (!(abs_median(q) > lambda)) ++median_violations;
        if (q.level >= 1 && abs_median(parent_of(q)) > lambda) ++parent_violations;
        cells_of(f.grid, q, idx);
        for (auto c : idx) cover[static_cast<std::size_t>(c)] = 1;
      }
      std::int64_t covered = 0;
      std::int64_t above = 0;
      for (std::size_t c = 0; c < cover.size(); ++c) {
        covered += cover[c];
        if (maximal.values[c] > lambda) ++above;
        if (!cover[c] && std::abs(f.values[c]) > lambda) ++outside_violations;
        if (!prev_cover.empty() && cover[c] && !prev_cover[c]) ++nesting_violations;
      }
      if (ls.measure != f.grid.cell_measure() * double(above) || covered != above) {
        ++measure_mismatches;
        note = "seed=" + std::to_string(m.seed_base + 30000 + static_cast<std::uint64_t>(i)) +
               " lambda=" + format_double(lambda);
      }
      prev_cover = std::move(cover);
    }
  }

  const char* labels[] = {"selected cube median above lambda", "parent median at most lambda",
                          "cells outside the union at most lambda",
                          "level set equals thresholded maximal function",
                          "unions nested along the lambda grid"};
  const std::int64_t counts[] = {median_violations, parent_violations, outside_violations,
                                 measure_mismatches, nesting_violations};
  for (int k = 0; k < 5; ++k) {
    auto row = make_row({{"check", double(k + 1)}}, double(counts[k]), 0.0);
    row.note = labels[k];
    if (counts[k] > 0 && !note.empty()) row.note += " (worst: " + note + ")";
    report.rows.push_back(std::move(row));
  }
  report.pass = recompute_pass(report);
  return report;
}

void merge_rows(VerificationReport& into, const VerificationReport& from, double fn_index) {
  for (auto row : from.rows) {
    row.params.insert(row.params.begin(), {"fn", fn_index});
    row.margin = row.rhs - row.lhs;
    into.rows.push_back(std::move(row));
  }
  into.empirical_constant = std::max(into.empirical_constant, from.empirical_constant);
  into.theoretical_constant = from.theoretical_constant;
}

}  // namespace

SuiteManifest manifest_from_json(const nlohmann::json& j) {
  SuiteManifest m;
  auto get = [&](const char* key, auto& target) {
    if (j.contains(key)) target = j.at(key).get<std::decay_t<decltype(target)>>();
  };
  get("seed_base", m.seed_base);
  get("property_seeds", m.property_seeds);
  get("property_dims", m.property_dims);
  get("property_depths", m.property_depths);
  get("bruteforce_seeds", m.bruteforce_seeds);
  get("cz_seeds", m.cz_seeds);
  get("cz_lambda_count", m.cz_lambda_count);
  get("corpus_random", m.corpus_random);
  get("corpus_depth", m.corpus_depth);
  get("named_depth", m.named_depth);
  get("p_values", m.p_values);
  get("s_jn", m.s_jn);
  get("r_jn", m.r_jn);
  get("gl_t", m.gl_t);
  get("gl_K", m.gl_K);
  get("gl_p", m.gl_p);
  get("gl_s", m.gl_s);
  get("sandwich_s", m.sandwich_s);
  get("sandwich_t", m.sandwich_t);
  get("lambda_count", m.lambda_count);
  return m;
}

nlohmann::json manifest_to_json(const SuiteManifest& m) {
  nlohmann::json j;
  j["seed_base"] = m.seed_base;
  j["property_seeds"] = m.property_seeds;
  j["property_dims"] = m.property_dims;
  j["property_depths"] = m.property_depths;
  j["bruteforce_seeds"] = m.bruteforce_seeds;
  j["cz_seeds"] = m.cz_seeds;
  j["cz_lambda_count"] = m.cz_lambda_count;
  j["corpus_random"] = m.corpus_random;
  j["corpus_depth"] = m.corpus_depth;
  j["named_depth"] = m.named_depth;
  j["p_values"] = m.p_values;
  j["s_jn"] = m.s_jn;
  j["r_jn"] = m.r_jn;
  j["gl_t"] = m.gl_t;
  j["gl_K"] = m.gl_K;
  j["gl_p"] = m.gl_p;
  j["gl_s"] = m.gl_s;
  j["sandwich_s"] = m.sandwich_s;
  j["sandwich_t"] = m.sandwich_t;
  j["lambda_count"] = m.lambda_count;
  return j;
}

std::vector<CorpusEntry> suite_corpus(const SuiteManifest& m) {
  std::vector<CorpusEntry> corpus;
  for (int i = 0; i < m.corpus_random; ++i) {
    CorpusEntry e;
    e.spec.name = "random-uniform";
    const int kind = i % 3;
    e.spec.params["lo"] = kind == 1 ? -1.0 : 0.0;
    e.spec.params["hi"] = kind == 0 ? 1.0 : (kind == 1 ? 2.0 : 10.0);
    e.spec.params["seed"] = double(m.seed_base + static_cast<std::uint64_t>(i));
    e.grid = unit_grid(1, m.corpus_depth);
    corpus.push_back(std::move(e));
  }
  {
    CorpusEntry e;
    e.spec.name = "log-reciprocal";
    e.grid = unit_grid(1, m.named_depth);
    corpus.push_back(std::move(e));
  }
  {
    CorpusEntry e;
    e.spec.name = "jn-extremal";
    e.grid = make_grid(1, m.named_depth, {0.0}, 0.125);
    corpus.push_back(std::move(e));
  }
  {
    CorpusEntry e;
    e.spec.name = "power";
    e.spec.params["a"] = -0.5;
    e.grid = unit_grid(1, m.named_depth);
    corpus.push_back(std::move(e));
  }
  {
    CorpusEntry e;
    e.spec.name = "smooth-lipschitz";
    e.grid = unit_grid(1, m.named_depth);
    corpus.push_back(std::move(e));
  }
  return corpus;
}

SuiteResult run_suite(const SuiteManifest& m) {
  SuiteResult result;
  result.reports.push_back(run_median_property_suite(m.property_seeds, m.property_dims,
                                                     m.property_depths, m.seed_base + 10000));
  result.reports.push_back(check_dp_vs_bruteforce(m));
  result.reports.push_back(check_cz_properties(m));

  const auto corpus = suite_corpus(m);
  std::vector<StepFunction> functions;
  functions.reserve(corpus.size());
  for (const auto& entry : corpus) functions.push_back(sample_catalog(entry.spec, entry.grid));

  VerificationReport weak;
  weak.name = "weak-type";
  VerificationReport jn_ineq;
  jn_ineq.name = "jn-inequality";
  VerificationReport good;
  good.name = "good-lambda";
  VerificationReport equiv;
  equiv.name = "equivalence";
  VerificationReport sandwich;
  sandwich.name = "center-sandwich";
  VerificationReport mbound;
  mbound.name = "maximal-bound";
  VerificationReport l1b;
  l1b.name = "l1-bound";

  for (std::size_t i = 0; i < functions.size(); ++i) {
    const StepFunction& f = functions[i];
    const double fn = double(i);
    merge_rows(weak, verify_weak_type(f, default_lambda_grid(f, 0.5, m.lambda_count)), fn);
    merge_rows(good, verify_good_lambda(f, m.gl_p, m.gl_t, m.gl_K, m.gl_s,
                                        default_lambda_grid(f, m.gl_t, m.lambda_count)),
               fn);
    for (double p : m.p_values) {
      merge_rows(jn_ineq, verify_jn_inequality(f, p, m.s_jn, m.r_jn,
                                               default_lambda_grid(f, m.r_jn, m.lambda_count)),
                 fn);
      merge_rows(equiv, verify_equivalence(f, p, m.s_jn), fn);
      merge_rows(sandwich, verify_center_sandwich(f, p, m.sandwich_s, m.sandwich_t), fn);
      merge_rows(mbound, verify_maximal_bound(f, p), fn);
      merge_rows(l1b, verify_l1_bound(f, p), fn);
    }
  }
  for (auto* rep : {&weak, &jn_ineq, &good, &equiv, &sandwich, &mbound, &l1b}) {
    for (const auto& entry : corpus)
      rep->corpus.push_back(entry.spec.describe() + " depth=" + std::to_string(entry.grid.depth));
    rep->pass = recompute_pass(*rep);
    result.reports.push_back(std::move(*rep));
  }

  result.pass = true;
  for (const auto& rep : result.reports) result.pass = result.pass && rep.pass;
  return result;
}

nlohmann::json suite_to_json(const SuiteResult& result) {
  nlohmann::json j;
  j["pass"] = result.pass;
  j["reports"] = nlohmann::json::array();
  for (const auto& rep : result.reports) j["reports"].push_back(report_to_json(rep));
  return j;
}

std::string suite_to_csv(const SuiteResult& result) {
  std::ostringstream os;
  os << "name,params,lhs,rhs,margin\n";
  for (const auto& rep : result.reports) os << report_to_csv(rep);
  return os.str();
}

}  // namespace dyadic
