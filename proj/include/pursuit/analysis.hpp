#pragma once

#include <string>
#include <vector>

#include "pursuit/engine.hpp"

namespace pursuit::analysis {

// Overrides one scalar parameter addressed by a dotted path, e.g.
// "evader.r", "pursuer.c", "engagement.eps1", "init.d0", "init.dtheta0",
// "multi.alpha", "multi.pt", "multi.delta_t_bar", "integration.dt",
// "integration.t_f". Role paths apply to every agent of that role.
void apply_param(Scenario& scenario, const std::string& path, double value);

struct SweepAxis {
    std::string param;
    std::vector<double> values;
};

struct SweepGrid {
    std::vector<SweepAxis> axes;  // one or two
    Scenario base;

    void validate() const;
};

struct CellResult {
    std::vector<double> axis_values;
    double min_distance = 0.0;
    bool captured = false;
    double t_d = 0.0;
    bool ok = false;
    std::string error;
};

struct SweepResult {
    std::vector<std::string> axis_names;
    std::vector<std::size_t> axis_sizes;
    std::vector<CellResult> cells;  // row-major over the axes

    friend bool operator==(const SweepResult&, const SweepResult&);
};

bool operator==(const CellResult&, const CellResult&);

// One deterministic run per cell; cells execute in a worker pool capped by
// PURSUIT_SIM_THREADS, results placed by grid index. Per-cell failures are
// recorded, not fatal.
SweepResult run_sweep(const SweepGrid& grid);

// Fraction of successfully run cells that captured; failed cells are dropped
// from both numerator and denominator.
double capture_rate(const SweepResult& result, int* failed_cells = nullptr);

struct LowestEps1Result {
    double mean = 0.0;                               // over escaping d0 values
    std::vector<std::pair<double, double>> per_d0;   // (d0, lowest escaping eps1)
    std::vector<double> unescapable_d0;              // no eps1 in the grid escapes
};

LowestEps1Result lowest_alert_distance(std::vector<double> eps1_values,
                                       const std::vector<double>& d0_values,
                                       const Scenario& base);

// Relative growth of summed center-distances of the evader group between the
// first and last recorded step.
double dispersion_degree(const SimTrace& trace);

struct CaptureTimeRow {
    int n_p = 0;
    std::vector<double> t_d;  // per seed; t_f sentinel when not fully captured
    double mean = 0.0;        // sentinels excluded
    int non_capture_count = 0;
};

struct StudyBoxes {
    // Uniform boxes for randomized placements; pursuers start behind the
    // evaders along -x, heading +x.
    double evader_x_min = -1.0, evader_x_max = 1.0;
    double evader_y_min = -1.0, evader_y_max = 1.0;
    double pursuer_x_min = -6.0, pursuer_x_max = -4.0;
    double pursuer_y_min = -1.0, pursuer_y_max = 1.0;
};

// Full-capture time statistics versus pursuer count; initial placements are
// seeded deterministically from the base scenario seed.
std::vector<CaptureTimeRow> capture_time_study(const std::vector<int>& n_p_range,
                                               int n_seeds, const Scenario& base,
                                               const StudyBoxes& boxes = {});

// Spearman rank correlation with average ranks for ties.
double spearman(const std::vector<double>& xs, const std::vector<double>& ys);

}  // namespace pursuit::analysis
