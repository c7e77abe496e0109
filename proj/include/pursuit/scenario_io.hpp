#pragma once

#include <string>

#include <json.hpp>

#include "pursuit/analysis.hpp"
#include "pursuit/engine.hpp"
#include "pursuit/verify.hpp"

namespace pursuit::io {

using nlohmann::json;

// Strict schema: unknown keys are rejected, defaults are filled in and can be
// echoed back with scenario_to_json for provenance.
Scenario parse_scenario_json(const json& j);
Scenario parse_scenario(const std::string& path);
json scenario_to_json(const Scenario& s);

// Optional "sweep" block of a scenario file.
bool has_sweep(const std::string& path);
analysis::SweepGrid parse_sweep(const std::string& path);

verify::Theorem1Inputs parse_theorem1_inputs(const json& j);
verify::Theorem1Inputs parse_theorem1_inputs_file(const std::string& path);

struct Theorem2Inputs {
    math::Vec2 q0{2.0, 0.0};
    double d_des = 1.0;
    double t_end = 50.0;
    double dt = 0.001;
};
Theorem2Inputs parse_theorem2_inputs_file(const std::string& path);

void write_trace_csv(const SimTrace& trace, const std::string& path);
void write_sweep_csv(const analysis::SweepResult& result, const std::string& path);
analysis::SweepResult read_sweep_csv(const std::string& path);

json trace_summary_json(const SimTrace& trace);
json theorem1_report_json(const verify::Theorem1Report& rep);
void write_json(const json& j, const std::string& path);

}  // namespace pursuit::io
