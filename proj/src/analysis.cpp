#include "pursuit/analysis.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <numeric>
#include <random>
#include <thread>

namespace pursuit::analysis {

using math::distance;
using math::Vec2;

namespace {

void apply_role_param(Scenario& s, Role role, const std::string& field, double value) {
    for (auto& a : s.agents) {
        if (a.initial.role != role) continue;
        if (field == "v_max") a.params.v_max = value;
        else if (field == "w_max") a.params.w_max = value;
        else if (field == "r") a.params.r = value;
        else if (field == "a") a.params.a = value;
        else if (field == "c") a.params.c = value;
        else if (field == "k") a.params.k = value;
        else throw ConfigError("apply_param: unknown agent field '" + field + "'");
    }
}

// Moves every evader along the pursuer->evader ray so that the distance to
// the (first) pursuer becomes d0.
void apply_initial_distance(Scenario& s, double d0) {
    const AgentSpec* pursuer = nullptr;
    for (const auto& a : s.agents) {
        if (a.initial.role == Role::Pursuer) {
            pursuer = &a;
            break;
        }
    }
    if (!pursuer) throw ConfigError("apply_param: init.d0 needs a pursuer");
    const Vec2 p = pursuer->initial.pos();
    for (auto& a : s.agents) {
        if (a.initial.role != Role::Evader) continue;
        const double d = distance(p, a.initial.pos());
        if (d == 0.0) throw ConfigError("apply_param: init.d0 with coincident agents");
        a.initial.x = p.x + (a.initial.x - p.x) * d0 / d;
        a.initial.y = p.y + (a.initial.y - p.y) * d0 / d;
    }
}

// dtheta0 = theta_p(0) - theta_e(0); the evader headings stay fixed.
void apply_initial_heading_offset(Scenario& s, double dtheta0) {
    double theta_e = 0.0;
    bool found = false;
    for (const auto& a : s.agents) {
        if (a.initial.role == Role::Evader) {
            theta_e = a.initial.theta;
            found = true;
            break;
        }
    }
    if (!found) throw ConfigError("apply_param: init.dtheta0 needs an evader");
    for (auto& a : s.agents) {
        if (a.initial.role == Role::Pursuer) {
            a.initial.theta = math::wrap_angle(theta_e + dtheta0);
        }
    }
}

}  // namespace

void apply_param(Scenario& s, const std::string& path, double value) {
    const auto dot = path.find('.');
    if (dot == std::string::npos) {
        throw ConfigError("apply_param: path '" + path + "' has no group prefix");
    }
    const std::string group = path.substr(0, dot);
    const std::string field = path.substr(dot + 1);

    if (group == "evader") {
        apply_role_param(s, Role::Evader, field, value);
    } else if (group == "pursuer") {
        apply_role_param(s, Role::Pursuer, field, value);
    } else if (group == "engagement") {
        if (field == "eps1") s.engagement.eps1 = value;
        else if (field == "eps2") s.engagement.eps2 = value;
        else if (field == "bar_theta") s.engagement.bar_theta = value;
        else throw ConfigError("apply_param: unknown engagement field '" + field + "'");
    } else if (group == "init") {
        if (field == "d0") apply_initial_distance(s, value);
        else if (field == "dtheta0") apply_initial_heading_offset(s, value);
        else throw ConfigError("apply_param: unknown init field '" + field + "'");
    } else if (group == "multi") {
        if (field == "alpha") s.multi.alpha = value;
        else if (field == "pt") s.targeting_seed.pt = value;
        else if (field == "delta_t_bar") s.targeting_seed.delta_t_bar = value;
        else if (field == "m_rep") s.multi.m_rep = value;
        else if (field == "d_safe") s.multi.d_safe = value;
        else if (field == "k_beta") s.multi.k_beta = value;
        else throw ConfigError("apply_param: unknown multi field '" + field + "'");
    } else if (group == "integration") {
        if (field == "dt") s.dt = value;
        else if (field == "t_f") s.t_f = value;
        else throw ConfigError("apply_param: unknown integration field '" + field + "'");
    } else {
        throw ConfigError("apply_param: unknown group '" + group + "'");
    }
}

void SweepGrid::validate() const {
    if (axes.empty() || axes.size() > 2) {
        throw ConfigError("SweepGrid: need one or two axes");
    }
    for (const auto& axis : axes) {
        if (axis.values.empty()) throw ConfigError("SweepGrid: empty axis '" + axis.param + "'");
        for (double v : axis.values) {
            if (!std::isfinite(v)) throw ConfigError("SweepGrid: non-finite axis value");
        }
    }
}

bool operator==(const CellResult& a, const CellResult& b) {
    return a.axis_values == b.axis_values && a.min_distance == b.min_distance &&
           a.captured == b.captured && a.t_d == b.t_d && a.ok == b.ok && a.error == b.error;
}

bool operator==(const SweepResult& a, const SweepResult& b) {
    return a.axis_names == b.axis_names && a.axis_sizes == b.axis_sizes && a.cells == b.cells;
}

namespace {

int worker_count(std::size_t cells) {
    unsigned n = std::max(1u, std::thread::hardware_concurrency());
    if (const char* env = std::getenv("PURSUIT_SIM_THREADS")) {
        const long v = std::strtol(env, nullptr, 10);
        if (v > 0) n = static_cast<unsigned>(v);
    }
    return static_cast<int>(std::min<std::size_t>(n, cells));
}

CellResult run_cell(const SweepGrid& grid, const std::vector<double>& axis_values) {
    CellResult cell;
    cell.axis_values = axis_values;
    try {
        Scenario s = grid.base;
        for (std::size_t a = 0; a < grid.axes.size(); ++a) {
            apply_param(s, grid.axes[a].param, axis_values[a]);
        }
        const SimTrace trace = run(s, /*record_steps=*/false);
        double min_d = std::numeric_limits<double>::infinity();
        for (const auto& [pair, d] : trace.min_distance) min_d = std::min(min_d, d);
        cell.min_distance = min_d;
        cell.captured = min_d <= s.engagement.eps2;
        cell.t_d = trace.all_targets_captured ? trace.full_capture_time : trace.t_f;
        cell.ok = true;
    } catch (const std::exception& e) {
        cell.ok = false;
        cell.error = e.what();
    }
    return cell;
}

}  // namespace

SweepResult run_sweep(const SweepGrid& grid) {
    grid.validate();

    SweepResult result;
    for (const auto& axis : grid.axes) {
        result.axis_names.push_back(axis.param);
        result.axis_sizes.push_back(axis.values.size());
    }
    const std::size_t n0 = grid.axes[0].values.size();
    const std::size_t n1 = grid.axes.size() == 2 ? grid.axes[1].values.size() : 1;
    result.cells.resize(n0 * n1);

    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= result.cells.size()) return;
            std::vector<double> values{grid.axes[0].values[i / n1]};
            if (grid.axes.size() == 2) values.push_back(grid.axes[1].values[i % n1]);
            result.cells[i] = run_cell(grid, values);
        }
    };

    const int workers = worker_count(result.cells.size());
    if (workers <= 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        for (int i = 0; i < workers; ++i) pool.emplace_back(work);
        for (auto& th : pool) th.join();
    }
    return result;
}

double capture_rate(const SweepResult& result, int* failed_cells) {
    std::size_t ok = 0, captured = 0, failed = 0;
    for (const auto& cell : result.cells) {
        if (!cell.ok) {
            ++failed;
            continue;
        }
        ++ok;
        if (cell.captured) ++captured;
    }
    if (failed_cells) *failed_cells = static_cast<int>(failed);
    if (ok == 0) throw ConfigError("capture_rate: no successful cells");
    return static_cast<double>(captured) / static_cast<double>(ok);
}

LowestEps1Result lowest_alert_distance(std::vector<double> eps1_values,
                                       const std::vector<double>& d0_values,
                                       const Scenario& base) {
    if (eps1_values.empty() || d0_values.empty()) {
        throw ConfigError("lowest_alert_distance: empty grid");
    }
    std::sort(eps1_values.begin(), eps1_values.end());

    LowestEps1Result out;
    double sum = 0.0;
    for (double d0 : d0_values) {
        bool found = false;
        for (double eps1 : eps1_values) {
            Scenario s = base;
            apply_param(s, "init.d0", d0);
            apply_param(s, "engagement.eps1", eps1);
            const SimTrace trace = run(s, /*record_steps=*/false);
            double min_d = std::numeric_limits<double>::infinity();
            for (const auto& [pair, d] : trace.min_distance) min_d = std::min(min_d, d);
            if (min_d > s.engagement.eps2) {
                out.per_d0.emplace_back(d0, eps1);
                sum += eps1;
                found = true;
                break;
            }
        }
        if (!found) out.unescapable_d0.push_back(d0);
    }
    if (!out.per_d0.empty()) {
        out.mean = sum / static_cast<double>(out.per_d0.size());
    }
    return out;
}

double dispersion_degree(const SimTrace& trace) {
    if (trace.records.empty()) throw ConfigError("dispersion_degree: empty trace");
    const double t0 = trace.records.front().t;
    const double t1 = trace.records.back().t;

    auto evader_positions_at = [&](double t) {
        std::vector<Vec2> pts;
        for (const auto& r : trace.records) {
            if (r.t == t && r.role == Role::Evader) pts.push_back({r.x, r.y});
        }
        return pts;
    };
    const auto initial = evader_positions_at(t0);
    const auto final_pos = evader_positions_at(t1);
    if (initial.size() < 2) throw ConfigError("dispersion_degree: need >= 2 evaders");

    auto spread = [](const std::vector<Vec2>& pts) {
        const Vec2 c = group_center(pts);
        double s = 0.0;
        for (const auto& p : pts) s += distance(p, c);
        return s;
    };
    const double s0 = spread(initial);
    if (s0 == 0.0) throw ConfigError("dispersion_degree: evaders initially coincident");
    return (spread(final_pos) - s0) / s0;
}

std::vector<CaptureTimeRow> capture_time_study(const std::vector<int>& n_p_range,
                                               int n_seeds, const Scenario& base,
                                               const StudyBoxes& boxes) {
    if (n_seeds < 1) throw ConfigError("capture_time_study: n_seeds must be >= 1");
    AgentParams pursuer_proto;
    bool have_proto = false;
    std::vector<AgentSpec> evaders;
    for (const auto& a : base.agents) {
        if (a.initial.role == Role::Pursuer && !have_proto) {
            pursuer_proto = a.params;
            have_proto = true;
        } else if (a.initial.role == Role::Evader) {
            evaders.push_back(a);
        }
    }
    if (!have_proto || evaders.empty()) {
        throw ConfigError("capture_time_study: base scenario needs a pursuer and evaders");
    }

    std::vector<CaptureTimeRow> rows;
    for (int n_p : n_p_range) {
        if (n_p < 1) throw ConfigError("capture_time_study: N_p must be >= 1");
        CaptureTimeRow row;
        row.n_p = n_p;
        for (int seed = 0; seed < n_seeds; ++seed) {
            std::mt19937_64 rng(base.seed * 0x9e3779b97f4a7c15ULL +
                                static_cast<std::uint64_t>(seed) * 0x2545f4914f6cdd1dULL + 1);
            std::uniform_real_distribution<double> ex(boxes.evader_x_min, boxes.evader_x_max);
            std::uniform_real_distribution<double> ey(boxes.evader_y_min, boxes.evader_y_max);
            std::uniform_real_distribution<double> px(boxes.pursuer_x_min, boxes.pursuer_x_max);
            std::uniform_real_distribution<double> py(boxes.pursuer_y_min, boxes.pursuer_y_max);

            Scenario s = base;
            s.mode = Mode::Multi;
            s.agents.clear();
            int next_id = 0;
            for (const auto& e : evaders) {
                AgentSpec spec = e;
                spec.initial.id = next_id++;
                spec.initial.x = ex(rng);
                spec.initial.y = ey(rng);
                spec.initial.theta = 0.0;  // heading +x, away from the pursuers
                spec.initial.v = 0.0;
                s.agents.push_back(spec);
            }
            for (int p = 0; p < n_p; ++p) {
                AgentSpec spec;
                spec.params = pursuer_proto;
                spec.initial.role = Role::Pursuer;
                spec.initial.id = next_id++;
                spec.initial.x = px(rng);
                spec.initial.y = py(rng);
                spec.initial.theta = 0.0;
                spec.initial.v = 0.0;
                s.agents.push_back(spec);
            }
            s.targeting_seed.n_targets = base.targeting_seed.n_targets;

            const SimTrace trace = run(s, /*record_steps=*/false);
            const double t_d =
                trace.all_targets_captured ? trace.full_capture_time : trace.t_f;
            row.t_d.push_back(t_d);
            if (!trace.all_targets_captured) ++row.non_capture_count;
        }
        double sum = 0.0;
        int n = 0;
        for (std::size_t i = 0; i < row.t_d.size(); ++i) {
            if (row.t_d[i] < base.t_f) {
                sum += row.t_d[i];
                ++n;
            }
        }
        row.mean = n > 0 ? sum / n : base.t_f;
        rows.push_back(std::move(row));
    }
    return rows;
}

namespace {

std::vector<double> average_ranks(const std::vector<double>& xs) {
    const std::size_t n = xs.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return xs[a] < xs[b];
    });
    std::vector<double> ranks(n);
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j + 1 < n && xs[order[j + 1]] == xs[order[i]]) ++j;
        const double rank = 0.5 * (static_cast<double>(i) + static_cast<double>(j)) + 1.0;
        for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = rank;
        i = j + 1;
    }
    return ranks;
}

}  // namespace

double spearman(const std::vector<double>& xs, const std::vector<double>& ys) {
    if (xs.size() != ys.size() || xs.size() < 2) {
        throw ConfigError("spearman: need two equal-length series of size >= 2");
    }
    const auto rx = average_ranks(xs);
    const auto ry = average_ranks(ys);
    const double n = static_cast<double>(xs.size());
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        mx += rx[i];
        my += ry[i];
    }
    mx /= n;
    my /= n;
    double num = 0.0, dx = 0.0, dy = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        num += (rx[i] - mx) * (ry[i] - my);
        dx += (rx[i] - mx) * (rx[i] - mx);
        dy += (ry[i] - my) * (ry[i] - my);
    }
    if (dx == 0.0 || dy == 0.0) throw ConfigError("spearman: constant series");
    return num / std::sqrt(dx * dy);
}

}  // namespace pursuit::analysis
