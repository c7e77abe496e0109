#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "pursuit/analysis.hpp"
#include "pursuit/engine.hpp"
#include "pursuit/errors.hpp"
#include "pursuit/scenario_io.hpp"
#include "pursuit/verify.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw pursuit::ConfigError("cannot open " + path);
    json j;
    in >> j;
    return j;
}

std::string output_dir(const json& doc, const std::string& override_dir) {
    if (!override_dir.empty()) return override_dir;
    if (doc.contains("output") && doc.at("output").contains("dir"))
        return doc.at("output").at("dir").get<std::string>();
    return ".";
}

std::vector<double> num_list(const json& j, const char* key) {
    if (!j.contains(key) || !j.at(key).is_array())
        throw pursuit::ConfigError(std::string("analysis: key \"") + key +
                                   "\" must be an array of numbers");
    std::vector<double> out;
    for (const json& v : j.at(key)) out.push_back(v.get<double>());
    return out;
}

int cmd_run(const std::string& path, const std::string& out_dir_flag, double dt_flag,
            long long seed_flag) {
    const json doc = load_json(path);
    pursuit::Scenario s = pursuit::io::parse_scenario_json(doc);
    if (dt_flag > 0.0) s.dt = dt_flag;
    if (seed_flag >= 0) s.seed = static_cast<std::uint64_t>(seed_flag);
    s.validate();

    const pursuit::SimTrace trace = pursuit::run(s);

    const fs::path dir = output_dir(doc, out_dir_flag);
    fs::create_directories(dir);
    const fs::path trace_path = dir / (s.name + "_trace.csv");
    const fs::path summary_path = dir / (s.name + "_summary.json");
    pursuit::io::write_trace_csv(trace, trace_path.string());

    json summary = pursuit::io::trace_summary_json(trace);
    summary["scenario"] = pursuit::io::scenario_to_json(s);  // defaults echoed for provenance
    summary["trace_csv"] = trace_path.string();
    pursuit::io::write_json(summary, summary_path.string());
    std::cout << summary.dump(2) << std::endl;
    return 0;
}

int cmd_sweep(const std::string& path, const std::string& out_dir_flag) {
    const json doc = load_json(path);
    const pursuit::analysis::SweepGrid grid = pursuit::io::parse_sweep(path);
    const pursuit::analysis::SweepResult result = pursuit::analysis::run_sweep(grid);

    const fs::path dir = output_dir(doc, out_dir_flag);
    fs::create_directories(dir);
    const fs::path csv_path = dir / (grid.base.name + "_sweep.csv");
    pursuit::io::write_sweep_csv(result, csv_path.string());

    int failed = 0;
    const double rate = pursuit::analysis::capture_rate(result, &failed);
    json summary = {{"cells", result.cells.size()},
                    {"failed_cells", failed},
                    {"capture_rate", rate},
                    {"sweep_csv", csv_path.string()}};
    std::cout << summary.dump(2) << std::endl;
    return 0;
}

int cmd_verify_theorem1(const std::string& path) {
    const pursuit::verify::Theorem1Inputs in = pursuit::io::parse_theorem1_inputs_file(path);
    const pursuit::verify::Theorem1Report rep = pursuit::verify::theorem1_check(in);
    std::cout << pursuit::io::theorem1_report_json(rep).dump(2) << std::endl;
    return 0;
}

int cmd_verify_theorem2(const std::string& path) {
    const pursuit::io::Theorem2Inputs in = pursuit::io::parse_theorem2_inputs_file(path);
    const auto traj = pursuit::verify::theorem2_reduced_ode(in.q0, in.d_des, in.t_end, in.dt);
    const auto& last = traj.back();
    bool monotone = true;
    const bool outward = traj.front().norm < in.d_des;
    for (std::size_t i = 1; i < traj.size() && monotone; ++i) {
        const double dj = traj[i].lyapunov - traj[i - 1].lyapunov;
        monotone = outward ? dj >= -1e-12 : dj <= 1e-12;
    }
    json summary = {{"final_norm", last.norm},
                    {"final_lyapunov", last.lyapunov},
                    {"d_des", in.d_des},
                    {"norm_error", std::abs(last.norm - in.d_des)},
                    {"lyapunov_monotone", monotone}};
    std::cout << summary.dump(2) << std::endl;
    return 0;
}

int cmd_analyze_dispersion(const std::string& path) {
    const pursuit::Scenario s = pursuit::io::parse_scenario(path);
    const pursuit::SimTrace trace = pursuit::run(s);
    json summary = {{"dispersion_degree", pursuit::analysis::dispersion_degree(trace)},
                    {"t_f", trace.t_f}};
    std::cout << summary.dump(2) << std::endl;
    return 0;
}

int cmd_analyze_rates(const std::string& path) {
    const pursuit::analysis::SweepGrid grid = pursuit::io::parse_sweep(path);
    const pursuit::analysis::SweepResult result = pursuit::analysis::run_sweep(grid);
    int failed = 0;
    const double rate = pursuit::analysis::capture_rate(result, &failed);
    json summary = {{"capture_rate", rate},
                    {"cells", result.cells.size()},
                    {"failed_cells", failed}};
    std::cout << summary.dump(2) << std::endl;
    return 0;
}

int cmd_analyze_lowest_eps1(const std::string& path) {
    const json doc = load_json(path);
    const pursuit::Scenario base = pursuit::io::parse_scenario_json(doc);
    if (!doc.contains("analysis"))
        throw pursuit::ConfigError(path + ": needs an \"analysis\" block with "
                                          "eps1_values and d0_values");
    const json& a = doc.at("analysis");
    const auto res = pursuit::analysis::lowest_alert_distance(
        num_list(a, "eps1_values"), num_list(a, "d0_values"), base);
    json per_d0 = json::array();
    for (const auto& [d0, eps1] : res.per_d0)
        per_d0.push_back({{"d0", d0}, {"lowest_eps1", eps1}});
    json summary = {{"mean_lowest_eps1", res.mean},
                    {"per_d0", per_d0},
                    {"unescapable_d0", res.unescapable_d0}};
    std::cout << summary.dump(2) << std::endl;
    return 0;
}

int cmd_analyze_capture_time(const std::string& path) {
    const json doc = load_json(path);
    const pursuit::Scenario base = pursuit::io::parse_scenario_json(doc);
    if (!doc.contains("analysis"))
        throw pursuit::ConfigError(path + ": needs an \"analysis\" block with "
                                          "n_p_range and n_seeds");
    const json& a = doc.at("analysis");
    std::vector<int> n_p_range;
    for (double v : num_list(a, "n_p_range")) n_p_range.push_back(static_cast<int>(v));
    const int n_seeds = a.value("n_seeds", 30);
    const auto rows = pursuit::analysis::capture_time_study(n_p_range, n_seeds, base);
    std::vector<double> np, means;
    json table = json::array();
    for (const auto& row : rows) {
        table.push_back({{"n_p", row.n_p},
                         {"mean_t_d", row.mean},
                         {"non_captures", row.non_capture_count},
                         {"t_d", row.t_d}});
        np.push_back(row.n_p);
        means.push_back(row.mean);
    }
    json summary = {{"rows", table}};
    if (rows.size() >= 2) summary["spearman"] = pursuit::analysis::spearman(np, means);
    std::cout << summary.dump(2) << std::endl;
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Deterministic pursuit-evasion simulation and analysis toolkit"};
    app.require_subcommand(1);

    std::string scenario_path, out_dir;
    double dt_flag = 0.0;
    long long seed_flag = -1;

    CLI::App* run = app.add_subcommand("run", "Run one scenario, write trace CSV + summary JSON");
    run->add_option("scenario", scenario_path, "Scenario JSON file")->required();
    run->add_option("--out", out_dir, "Output directory");
    run->add_option("--dt", dt_flag, "Override integration step");
    run->add_option("--seed", seed_flag, "Override RNG seed");

    CLI::App* sweep = app.add_subcommand("sweep", "Run the scenario's sweep grid, write CSV");
    sweep->add_option("scenario", scenario_path, "Scenario JSON file with a sweep block")
        ->required();
    sweep->add_option("--out", out_dir, "Output directory");

    CLI::App* verify = app.add_subcommand("verify", "Check the analytic capture/aggregation results");
    verify->require_subcommand(1);
    CLI::App* vt1 = verify->add_subcommand("theorem1", "Capture-bound conditions and oracle");
    vt1->add_option("inputs", scenario_path, "Inputs JSON file")->required();
    CLI::App* vt2 = verify->add_subcommand("theorem2", "Aggregation reduced-ODE convergence");
    vt2->add_option("inputs", scenario_path, "Inputs JSON file")->required();

    CLI::App* analyze = app.add_subcommand("analyze", "Aggregate statistics over runs");
    analyze->require_subcommand(1);
    CLI::App* ad = analyze->add_subcommand("dispersion", "Evader dispersion degree of one run");
    ad->add_option("inputs", scenario_path, "Scenario JSON file")->required();
    CLI::App* ar = analyze->add_subcommand("rates", "Capture rate over a sweep grid");
    ar->add_option("inputs", scenario_path, "Scenario JSON file with a sweep block")->required();
    CLI::App* al = analyze->add_subcommand("lowest-eps1", "Lowest escaping alert distance");
    al->add_option("inputs", scenario_path, "Scenario JSON file with an analysis block")
        ->required();
    CLI::App* ac = analyze->add_subcommand("capture-time", "Full-capture time vs pursuer count");
    ac->add_option("inputs", scenario_path, "Scenario JSON file with an analysis block")
        ->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed()) return cmd_run(scenario_path, out_dir, dt_flag, seed_flag);
        if (sweep->parsed()) return cmd_sweep(scenario_path, out_dir);
        if (verify->parsed()) {
            if (vt1->parsed()) return cmd_verify_theorem1(scenario_path);
            return cmd_verify_theorem2(scenario_path);
        }
        if (ad->parsed()) return cmd_analyze_dispersion(scenario_path);
        if (ar->parsed()) return cmd_analyze_rates(scenario_path);
        if (al->parsed()) return cmd_analyze_lowest_eps1(scenario_path);
        if (ac->parsed()) return cmd_analyze_capture_time(scenario_path);
    } catch (const pursuit::IntegrityError& e) {
        std::cerr << "integrity error: " << e.what() << std::endl;
        return 2;
    } catch (const pursuit::ConfigError& e) {
        std::cerr << "config error: " << e.what() << std::endl;
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << std::endl;
        return 1;
    }
    return 1;
}
