#include "dyadic/catalog.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "dyadic/rng.hpp"

namespace dyadic {
namespace {

double param_or(const FunctionSpec& spec, const std::string& key, double fallback) {
  auto it = spec.params.find(key);
  return it == spec.params.end() ? fallback : it->second;
}

double require_param(const FunctionSpec& spec, const std::string& key) {
  auto it = spec.params.find(key);
  if (it == spec.params.end())
    throw validation_error("catalog entry '" + spec.name + "' requires parameter '" + key + "'");
  return it->second;
}

void require_1d(const FunctionSpec& spec, const DyadicGrid& grid) {
  if (grid.dim != 1)
    throw validation_error("catalog entry '" + spec.name + "' is one-dimensional");
}

void require_root_within(const FunctionSpec& spec, const DyadicGrid& grid, double lo, double hi) {
  if (grid.origin[0] < lo || grid.origin[0] + grid.side > hi) {
    std::ostringstream os;
    os << "catalog entry '" << spec.name << "' needs its root inside [" << lo << ", " << hi
       << "], got [" << grid.origin[0] << ", " << grid.origin[0] + grid.side << "]";
    throw validation_error(os.str());
  }
}

// Antiderivatives for the exact-cell-average rule. Each is continuous up to
// the left endpoint of the supported domain (limit value at 0).
double anti_log_reciprocal(double x) { return x == 0.0 ? 0.0 : x - x * std::log(x); }
double anti_jn_extremal(double x) { return x == 0.0 ? 0.0 : -1.0 / std::log(x); }

StepFunction sample_pointwise(const DyadicGrid& grid, const FunctionSpec& spec,
                              double (*fn)(const FunctionSpec&, const std::array<double, 3>&)) {
  std::vector<double> values(static_cast<std::size_t>(grid.cell_count()));
  for (std::int64_t i = 0; i < grid.cell_count(); ++i)
    values[static_cast<std::size_t>(i)] = fn(spec, cell_midpoint(grid, i));
  return make_step_function(grid, std::move(values));
}

StepFunction sample_averages_1d(const DyadicGrid& grid, double (*anti)(double)) {
  const std::int64_t n = grid.cell_count();
  const double h = grid.cell_side();
  std::vector<double> values(static_cast<std::size_t>(n));
  for (std::int64_t i = 0; i < n; ++i) {
    const double a = grid.origin[0] + double(i) * h;
    const double b = grid.origin[0] + double(i + 1) * h;
    values[static_cast<std::size_t>(i)] = (anti(b) - anti(a)) / h;
  }
  return make_step_function(grid, std::move(values));
}

}  // namespace

bool catalog_has_exact_rule(const std::string& name) {
  return name == "jn-extremal" || name == "log-reciprocal" || name == "power";
}

std::string FunctionSpec::describe() const {
  std::ostringstream os;
  os << name;
  if (!params.empty()) {
    os << "(";
    bool first = true;
    for (const auto& [k, v] : params) {
      if (!first) os << ",";
      os << k << "=" << v;
      first = false;
    }
    os << ")";
  }
  if (rule == SamplingRule::ExactCellAverage) os << " exact-cell-average";
  return os.str();
}

StepFunction sample_catalog(const FunctionSpec& spec, const DyadicGrid& grid) {
  if (spec.domain_origin) {
    if (spec.domain_origin->size() != static_cast<std::size_t>(grid.dim))
      throw validation_error("function domain dimension does not match grid");
    for (int d = 0; d < grid.dim; ++d)
      if ((*spec.domain_origin)[static_cast<std::size_t>(d)] != grid.origin[d])
        throw validation_error("function domain origin does not match grid root");
  }
  if (spec.domain_side && *spec.domain_side != grid.side)
    throw validation_error("function domain side does not match grid root");

  if (spec.rule == SamplingRule::ExactCellAverage && !catalog_has_exact_rule(spec.name))
    throw unsupported_error("no exact cell-average rule for catalog entry '" + spec.name + "'");

  if (spec.name == "constant") {
    const double c = require_param(spec, "c");
    if (!std::isfinite(c)) throw validation_error("constant value must be finite");
    return make_step_function(grid, std::vector<double>(static_cast<std::size_t>(grid.cell_count()), c));
  }

  if (spec.name == "step") {
    return make_step_function(grid, spec.step_values);
  }

  if (spec.name == "random-uniform") {
    const double lo = param_or(spec, "lo", 0.0);
    const double hi = param_or(spec, "hi", 1.0);
    if (!(lo < hi)) throw validation_error("random-uniform needs lo < hi");
    const auto seed = static_cast<std::uint64_t>(param_or(spec, "seed", 1.0));
    return random_step(grid, seed, lo, hi);
  }

  if (spec.name == "log-reciprocal") {
    require_1d(spec, grid);
    require_root_within(spec, grid, 0.0, 1.0);
    if (spec.rule == SamplingRule::ExactCellAverage)
      return sample_averages_1d(grid, &anti_log_reciprocal);
    return sample_pointwise(grid, spec, [](const FunctionSpec&, const std::array<double, 3>& x) {
      return -std::log(x[0]);
    });
  }

  if (spec.name == "power") {
    require_1d(spec, grid);
    const double a = require_param(spec, "a");
    if (grid.origin[0] < 0.0)
      throw validation_error("power entry needs a nonnegative root origin");
    if (spec.rule == SamplingRule::ExactCellAverage) {
      if (grid.origin[0] == 0.0 && a <= -1.0)
        throw validation_error("x^a is not integrable at 0 for a <= -1");
      const std::int64_t n = grid.cell_count();
      const double h = grid.cell_side();
      std::vector<double> values(static_cast<std::size_t>(n));
      for (std::int64_t i = 0; i < n; ++i) {
        const double lo = grid.origin[0] + double(i) * h;
        const double hi = grid.origin[0] + double(i + 1) * h;
        double integral;
        if (a == -1.0)
          integral = std::log(hi) - std::log(lo);
        else
          integral = (std::pow(hi, a + 1.0) - std::pow(lo, a + 1.0)) / (a + 1.0);
        values[static_cast<std::size_t>(i)] = integral / h;
      }
      return make_step_function(grid, std::move(values));
    }
    return sample_pointwise(grid, spec, [](const FunctionSpec& s, const std::array<double, 3>& x) {
      return std::pow(x[0], s.params.at("a"));
    });
  }

  if (spec.name == "jn-extremal") {
    require_1d(spec, grid);
    require_root_within(spec, grid, 0.0, 0.5);
    if (spec.rule == SamplingRule::ExactCellAverage)
      return sample_averages_1d(grid, &anti_jn_extremal);
    return sample_pointwise(grid, spec, [](const FunctionSpec&, const std::array<double, 3>& x) {
      const double lg = std::log(x[0]);
      return x[0] < 0.5 ? 1.0 / (x[0] * lg * lg) : 0.0;
    });
  }

  if (spec.name == "smooth-lipschitz") {
    return sample_pointwise(grid, spec, [](const FunctionSpec& s, const std::array<double, 3>& x) {
      const double freq = s.params.count("freq") ? s.params.at("freq") : 1.0;
      double sum = 0.0;
      for (double c : x) sum += c;
      return std::sin(2.0 * std::numbers::pi * freq * sum);
    });
  }

  throw validation_error("unknown catalog entry '" + spec.name + "'");
}

StepFunction random_step(const DyadicGrid& grid, std::uint64_t seed, double lo, double hi) {
  Rng rng(seed);
  std::vector<double> values(static_cast<std::size_t>(grid.cell_count()));
  for (auto& v : values) v = rng.uniform(lo, hi);
  return make_step_function(grid, std::move(values));
}

}  // namespace dyadic
