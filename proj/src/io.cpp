#include "dyadic/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace dyadic {
namespace {

double parse_double(const std::string& token, const std::string& what) {
  try {
    std::size_t used = 0;
    const double v = std::stod(token, &used);
    if (used != token.size()) throw validation_error("trailing characters");
    return v;
  } catch (const std::exception&) {
    throw validation_error("cannot parse " + what + " from '" + token + "'");
  }
}

}  // namespace

std::string format_double(double v) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  (void)ec;
  return std::string(buf, ptr);
}

nlohmann::json step_function_to_json(const StepFunction& f) {
  nlohmann::json j;
  j["dim"] = f.grid.dim;
  j["depth"] = f.grid.depth;
  j["root"]["origin"] = std::vector<double>(f.grid.origin.begin(), f.grid.origin.begin() + f.grid.dim);
  j["root"]["side"] = f.grid.side;
  j["values"] = f.values;
  return j;
}

StepFunction step_function_from_json(const nlohmann::json& j) {
  for (const char* key : {"dim", "depth", "root", "values"})
    if (!j.contains(key)) throw validation_error(std::string("missing field '") + key + "'");
  if (!j["root"].contains("origin") || !j["root"].contains("side"))
    throw validation_error("root must carry 'origin' and 'side'");
  const int dim = j["dim"].get<int>();
  const int depth = j["depth"].get<int>();
  const auto origin = j["root"]["origin"].get<std::vector<double>>();
  const double side = j["root"]["side"].get<double>();
  const DyadicGrid grid = make_grid(dim, depth, origin, side);

  const auto& vals = j["values"];
  if (!vals.is_array()) throw validation_error("'values' must be an array");
  std::vector<double> values;
  values.reserve(vals.size());
  for (std::size_t i = 0; i < vals.size(); ++i) {
    if (!vals[i].is_number())
      throw validation_error("non-finite value at cell index " + std::to_string(i));
    values.push_back(vals[i].get<double>());
  }
  return make_step_function(grid, std::move(values));
}

std::string step_function_to_csv(const StepFunction& f) {
  if (f.grid.dim != 1) throw unsupported_error("CSV format supports dim=1 only");
  std::ostringstream os;
  os << "dim," << f.grid.dim << "\n";
  os << "depth," << f.grid.depth << "\n";
  os << "origin," << format_double(f.grid.origin[0]) << "\n";
  os << "side," << format_double(f.grid.side) << "\n";
  for (double v : f.values) os << format_double(v) << "\n";
  return os.str();
}

StepFunction step_function_from_csv(const std::string& text) {
  std::istringstream is(text);
  std::string line;
  auto header = [&](const char* key) {
    if (!std::getline(is, line))
      throw validation_error(std::string("missing CSV header line '") + key + "'");
    const auto comma = line.find(',');
    if (comma == std::string::npos || line.substr(0, comma) != key)
      throw validation_error(std::string("expected CSV header '") + key + ",...', got '" + line + "'");
    return line.substr(comma + 1);
  };
  const int dim = static_cast<int>(parse_double(header("dim"), "dim"));
  const int depth = static_cast<int>(parse_double(header("depth"), "depth"));
  const double origin = parse_double(header("origin"), "origin");
  const double side = parse_double(header("side"), "side");
  if (dim != 1) throw unsupported_error("CSV format supports dim=1 only");
  const DyadicGrid grid = make_grid(dim, depth, {origin}, side);

  std::vector<double> values;
  std::size_t cell = 0;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    values.push_back(parse_double(line, "value at cell index " + std::to_string(cell)));
    ++cell;
  }
  return make_step_function(grid, std::move(values));
}

void write_step_function(const StepFunction& f, const std::string& path) {
  if (path.size() >= 4 && path.substr(path.size() - 4) == ".csv")
    write_text_file(path, step_function_to_csv(f));
  else
    write_text_file(path, step_function_to_json(f).dump(2) + "\n");
}

StepFunction read_step_function(const std::string& path) {
  const std::string text = read_text_file(path);
  if (path.size() >= 4 && path.substr(path.size() - 4) == ".csv")
    return step_function_from_csv(text);
  nlohmann::json j = nlohmann::json::parse(text, nullptr, /*allow_exceptions=*/false);
  if (j.is_discarded()) throw validation_error("malformed JSON in '" + path + "'");
  return step_function_from_json(j);
}

nlohmann::json cube_to_json(const DyadicCube& cube, int dim) {
  nlohmann::json j;
  j["level"] = cube.level;
  j["index"] = std::vector<std::int64_t>(cube.index.begin(), cube.index.begin() + dim);
  return j;
}

nlohmann::json cz_result_to_json(const CZResult& cz, int dim) {
  nlohmann::json j;
  j["lambda"] = cz.lambda;
  j["t"] = cz.t;
  j["cubes"] = nlohmann::json::array();
  for (const auto& q : cz.cubes) j["cubes"].push_back(cube_to_json(q, dim));
  return j;
}

nlohmann::json level_set_to_json(const LevelSet& ls, double lambda, double t, int dim) {
  nlohmann::json j;
  j["lambda"] = lambda;
  j["t"] = t;
  j["cubes"] = nlohmann::json::array();
  for (const auto& q : ls.cubes) j["cubes"].push_back(cube_to_json(q, dim));
  j["measure"] = ls.measure;
  return j;
}

nlohmann::json seminorm_report_to_json(const SeminormReport& report, int dim) {
  nlohmann::json j;
  j["p"] = report.config.p;
  j["mode"] = mode_to_string(report.config.mode);
  if (report.config.mode != SeminormMode::AvgMean) j["s"] = report.config.s;
  if (report.config.mode == SeminormMode::MedCenter) j["t"] = report.config.t;
  j["value"] = report.value;
  j["value_p"] = report.value_p;
  j["optimum"] = nlohmann::json::array();
  for (std::size_t i = 0; i < report.optimum.size(); ++i) {
    auto q = cube_to_json(report.optimum[i], dim);
    q["weight"] = report.optimum_weights[i];
    j["optimum"].push_back(q);
  }
  return j;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw validation_error("cannot open '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw validation_error("cannot open '" + path + "' for writing");
  out << text;
  if (!out) throw validation_error("failed writing '" + path + "'");
}

}  // namespace dyadic
