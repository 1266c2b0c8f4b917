#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "dyadic/catalog.hpp"
#include "dyadic/czd.hpp"
#include "dyadic/io.hpp"
#include "dyadic/maximal.hpp"
#include "dyadic/median.hpp"
#include "dyadic/seminorm.hpp"
#include "dyadic/verify.hpp"

namespace {

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (tok.empty()) continue;
    out.push_back(std::stod(tok));
  }
  return out;
}

dyadic::DyadicCube parse_cube(const std::string& text, int dim) {
  const auto nums = parse_list(text);
  if (nums.size() != static_cast<std::size_t>(dim) + 1)
    throw dyadic::validation_error("--cube expects level followed by " + std::to_string(dim) +
                               " index entries");
  dyadic::DyadicCube q;
  q.level = static_cast<int>(nums[0]);
  for (int d = 0; d < dim; ++d) q.index[d] = static_cast<std::int64_t>(nums[static_cast<std::size_t>(d) + 1]);
  return q;
}

std::vector<double> parse_lambda_grid(const std::string& text) {
  std::stringstream ss(text);
  std::string tok;
  std::vector<double> parts;
  while (std::getline(ss, tok, ':')) parts.push_back(std::stod(tok));
  if (parts.size() != 3)
    throw dyadic::validation_error("--lambda-grid expects lo:hi:count");
  return dyadic::geometric_grid(parts[0], parts[1], static_cast<int>(parts[2]));
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty())
    std::cout << text;
  else
    dyadic::write_text_file(out_path, text);
}

struct SampleArgs {
  std::string fn;
  int dim = 1;
  int depth = 0;
  std::string origin;
  double side = 0.0;  // 0 = entry default
  std::string rule = "midpoint";
  std::string values;
  double c = 0.0;
  double lo = 0.0, hi = 1.0;
  std::uint64_t seed = 1;
  double a = 0.0;
  double freq = 1.0;
  std::string out;
};

dyadic::StepFunction run_sample(const SampleArgs& args, const CLI::App& cmd) {
  dyadic::FunctionSpec spec;
  spec.name = args.fn;
  spec.rule = args.rule == "exact" ? dyadic::SamplingRule::ExactCellAverage : dyadic::SamplingRule::Midpoint;
  if (cmd.count("--c")) spec.params["c"] = args.c;
  if (cmd.count("--lo")) spec.params["lo"] = args.lo;
  if (cmd.count("--hi")) spec.params["hi"] = args.hi;
  if (cmd.count("--seed")) spec.params["seed"] = double(args.seed);
  if (cmd.count("--a")) spec.params["a"] = args.a;
  if (cmd.count("--freq")) spec.params["freq"] = args.freq;
  if (cmd.count("--values")) spec.step_values = parse_list(args.values);

  double side = args.side;
  if (side == 0.0) side = args.fn == "jn-extremal" ? 0.125 : 1.0;
  std::vector<double> origin(static_cast<std::size_t>(args.dim), 0.0);
  if (!args.origin.empty()) {
    origin = parse_list(args.origin);
    if (origin.size() != static_cast<std::size_t>(args.dim))
      throw dyadic::validation_error("--origin needs one entry per dimension");
  }
  const dyadic::DyadicGrid grid = dyadic::make_grid(args.dim, args.depth, origin, side);
  return dyadic::sample_catalog(spec, grid);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"dyadic median analysis toolkit"};
  app.require_subcommand(1);

  SampleArgs sample;
  auto* cmd_sample = app.add_subcommand("sample", "sample a catalog function onto a dyadic grid");
  cmd_sample->add_option("--fn", sample.fn, "catalog entry name")->required();
  cmd_sample->add_option("--dim", sample.dim);
  cmd_sample->add_option("--depth", sample.depth)->required();
  cmd_sample->add_option("--origin", sample.origin, "comma separated root origin");
  cmd_sample->add_option("--side", sample.side);
  cmd_sample->add_option("--rule", sample.rule)->check(CLI::IsMember({"midpoint", "exact"}));
  cmd_sample->add_option("--values", sample.values, "explicit cell values for --fn step");
  cmd_sample->add_option("--c", sample.c);
  cmd_sample->add_option("--lo", sample.lo);
  cmd_sample->add_option("--hi", sample.hi);
  cmd_sample->add_option("--seed", sample.seed);
  cmd_sample->add_option("--a", sample.a);
  cmd_sample->add_option("--freq", sample.freq);
  cmd_sample->add_option("-o,--output", sample.out)->required();

  std::string in_path, out_path, cube_text, mode_text = "avg-mean", grid_text, format = "json";
  double p = 2.0, s = 0.5, t = 0.0, r = 0.5, K = 2.0, lambda = 0.0;
  bool min_center = false, brute = false, want_level_set = false;
  int seeds = 200, dim = 1, depth = 4, grid_count = 40;

  auto* cmd_median = app.add_subcommand("median", "maximal s-median over one cube");
  cmd_median->add_option("-i,--input", in_path)->required();
  cmd_median->add_option("--s", s)->required();
  cmd_median->add_option("--cube", cube_text, "level,k1[,k2[,k3]] (default root)");
  cmd_median->add_option("--t", t, "report the s-median of |f - m_f^t(Q)| instead");
  cmd_median->add_flag("--min-center", min_center, "minimize the oscillation over centers");

  auto* cmd_cz = app.add_subcommand("cz", "stopping-time decomposition at a level");
  cmd_cz->add_option("-i,--input", in_path)->required();
  cmd_cz->add_option("--t", t)->required();
  cmd_cz->add_option("--lambda", lambda)->required();
  cmd_cz->add_flag("--level-set", want_level_set, "include the measure of the union");
  cmd_cz->add_option("-o,--output", out_path);

  auto* cmd_maximal = app.add_subcommand("maximal", "dyadic maximal function");
  cmd_maximal->add_option("-i,--input", in_path)->required();
  cmd_maximal->add_option("--t", t, "median type with this t (default: average type)");
  cmd_maximal->add_option("-o,--output", out_path)->required();

  auto* cmd_seminorm = app.add_subcommand("seminorm", "optimal antichain seminorm");
  cmd_seminorm->add_option("-i,--input", in_path)->required();
  cmd_seminorm->add_option("--p", p)->required();
  cmd_seminorm->add_option("--mode", mode_text)
      ->check(CLI::IsMember({"avg-mean", "med-optimal", "med-center"}));
  cmd_seminorm->add_option("--s", s);
  cmd_seminorm->add_option("--t", t);
  cmd_seminorm->add_flag("--brute", brute, "exhaustive antichain enumeration");
  cmd_seminorm->add_option("-o,--output", out_path);

  auto* cmd_verify = app.add_subcommand("verify", "check one inequality and report");
  cmd_verify->require_subcommand(1);
  std::vector<CLI::App*> checks;
  for (const char* name : {"jn-inequality", "good-lambda", "equivalence", "center-sandwich",
                           "maximal-bound", "l1-bound", "weak-type", "median-properties"})
    checks.push_back(cmd_verify->add_subcommand(name));
  for (auto* check : checks) {
    check->add_option("-i,--input", in_path);
    check->add_option("--p", p);
    check->add_option("--s", s);
    check->add_option("--t", t);
    check->add_option("--r", r);
    check->add_option("--K", K);
    check->add_option("--lambda-grid", grid_text, "lo:hi:count");
    check->add_option("--seeds", seeds);
    check->add_option("--dim", dim);
    check->add_option("--depth", depth);
    check->add_option("-o,--output", out_path);
    check->add_option("--format", format)->check(CLI::IsMember({"json", "csv"}));
  }

  std::string manifest_path;
  auto* cmd_suite = app.add_subcommand("suite", "run every check on the pinned corpus");
  cmd_suite->add_option("--manifest", manifest_path, "JSON manifest (default: built-in corpus)");
  cmd_suite->add_option("--seeds", seeds, "override property-suite seed count");
  cmd_suite->add_option("--dim", dim, "override property-suite dimension");
  cmd_suite->add_option("--depth", depth, "override property-suite depth");
  cmd_suite->add_option("-o,--output", out_path);
  cmd_suite->add_option("--format", format)->check(CLI::IsMember({"json", "csv"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    std::cerr << "error: " << e.what() << std::endl;
    return 1;
  }

  try {
    if (cmd_sample->parsed()) {
      dyadic::write_step_function(run_sample(sample, *cmd_sample), sample.out);
      return 0;
    }

    if (cmd_median->parsed()) {
      const dyadic::StepFunction f = dyadic::read_step_function(in_path);
      const dyadic::DyadicCube q =
          cube_text.empty() ? dyadic::root_cube() : parse_cube(cube_text, f.grid.dim);
      nlohmann::json j;
      if (min_center) {
        const auto osc = dyadic::min_center_oscillation(f, q, s);
        j["value"] = osc.value;
        j["center"] = osc.center;
      } else if (cmd_median->count("--t")) {
        j["value"] = dyadic::median_oscillation(f, q, s, t);
      } else {
        j["value"] = dyadic::maximal_median(f, q, s);
      }
      emit(j.dump(2) + "\n", out_path);
      return 0;
    }

    if (cmd_cz->parsed()) {
      const dyadic::StepFunction f = dyadic::read_step_function(in_path);
      nlohmann::json j;
      if (want_level_set) {
        const dyadic::LevelSet ls = dyadic::level_set(f, t, lambda);
        j = dyadic::level_set_to_json(ls, lambda, t, f.grid.dim);
      } else {
        j = dyadic::cz_result_to_json(dyadic::cz_decompose(f, t, lambda), f.grid.dim);
      }
      emit(j.dump(2) + "\n", out_path);
      return 0;
    }

    if (cmd_maximal->parsed()) {
      const dyadic::StepFunction f = dyadic::read_step_function(in_path);
      const dyadic::StepFunction mf = cmd_maximal->count("--t")
                                      ? dyadic::maximal_function_median(f, t)
                                      : dyadic::maximal_function_avg(f);
      dyadic::write_step_function(mf, out_path);
      return 0;
    }

    if (cmd_seminorm->parsed()) {
      const dyadic::StepFunction f = dyadic::read_step_function(in_path);
      dyadic::SeminormConfig cfg;
      cfg.p = p;
      cfg.mode = dyadic::mode_from_string(mode_text);
      if (cmd_seminorm->count("--s")) cfg.s = s;
      if (cmd_seminorm->count("--t")) cfg.t = t;
      const dyadic::SeminormReport report =
          brute ? dyadic::jn_seminorm_bruteforce(f, cfg) : dyadic::jn_seminorm(f, cfg);
      emit(dyadic::seminorm_report_to_json(report, f.grid.dim).dump(2) + "\n", out_path);
      return 0;
    }

    if (cmd_verify->parsed()) {
      const CLI::App* check = cmd_verify->get_subcommands().front();
      const std::string name = check->get_name();
      dyadic::VerificationReport report;
      if (name == "median-properties") {
        report = dyadic::run_median_property_suite(seeds, {dim}, {depth});
      } else {
        const dyadic::StepFunction f = dyadic::read_step_function(in_path);
        auto grid_for = [&](double tt) {
          return grid_text.empty() ? dyadic::default_lambda_grid(f, tt, grid_count)
                                   : parse_lambda_grid(grid_text);
        };
        if (name == "jn-inequality")
          report = dyadic::verify_jn_inequality(f, p, s, r, grid_for(r));
        else if (name == "good-lambda")
          report = dyadic::verify_good_lambda(f, p, t, K, s, grid_for(t));
        else if (name == "equivalence")
          report = dyadic::verify_equivalence(f, p, s);
        else if (name == "center-sandwich")
          report = dyadic::verify_center_sandwich(f, p, s, t);
        else if (name == "maximal-bound")
          report = dyadic::verify_maximal_bound(f, p);
        else if (name == "l1-bound")
          report = dyadic::verify_l1_bound(f, p);
        else if (name == "weak-type")
          report = dyadic::verify_weak_type(f, grid_for(0.5));
        report.corpus.push_back("input: " + in_path);
      }
      emit(format == "csv" ? dyadic::report_to_csv(report)
                           : dyadic::report_to_json(report).dump(2) + "\n",
           out_path);
      return report.pass ? 0 : 2;
    }

    if (cmd_suite->parsed()) {
      dyadic::SuiteManifest manifest;
      if (!manifest_path.empty()) {
        const auto j = nlohmann::json::parse(dyadic::read_text_file(manifest_path), nullptr, false);
        if (j.is_discarded())
          throw dyadic::validation_error("malformed manifest '" + manifest_path + "'");
        manifest = dyadic::manifest_from_json(j);
      }
      if (cmd_suite->count("--seeds")) manifest.property_seeds = seeds;
      if (cmd_suite->count("--dim")) manifest.property_dims = {dim};
      if (cmd_suite->count("--depth")) manifest.property_depths = {depth};
      const dyadic::SuiteResult result = dyadic::run_suite(manifest);
      emit(format == "csv" ? dyadic::suite_to_csv(result) : dyadic::suite_to_json(result).dump(2) + "\n",
           out_path);
      for (const auto& rep : result.reports)
        std::cerr << (rep.pass ? "pass " : "FAIL ") << rep.name << "\n";
      return result.pass ? 0 : 2;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << std::endl;
    return 1;
  }
  return 0;
}
