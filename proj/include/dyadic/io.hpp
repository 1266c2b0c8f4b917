#pragma once

#include <string>

#include "json.hpp"

#include "dyadic/czd.hpp"
#include "dyadic/grid.hpp"
#include "dyadic/seminorm.hpp"

namespace dyadic {

/// Shortest round-trip decimal form (same as the JSON writer uses).
std::string format_double(double v);

nlohmann::json step_function_to_json(const StepFunction& f);
StepFunction step_function_from_json(const nlohmann::json& j);

/// One value per line after a 4-line dim/depth/origin/side header; 1D only.
std::string step_function_to_csv(const StepFunction& f);
StepFunction step_function_from_csv(const std::string& text);

/// Format chosen by extension: ".csv" writes CSV, anything else JSON.
void write_step_function(const StepFunction& f, const std::string& path);
StepFunction read_step_function(const std::string& path);

nlohmann::json cube_to_json(const DyadicCube& cube, int dim);
nlohmann::json cz_result_to_json(const CZResult& cz, int dim);
nlohmann::json level_set_to_json(const LevelSet& ls, double lambda, double t, int dim);
nlohmann::json seminorm_report_to_json(const SeminormReport& report, int dim);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace dyadic
