#include "pursuit/scenario_io.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <sstream>

#include "pursuit/errors.hpp"

namespace pursuit::io {

namespace {

void check_keys(const json& j, std::initializer_list<const char*> allowed,
                const std::string& context) {
    if (!j.is_object()) throw ConfigError(context + ": expected a JSON object");
    for (auto it = j.begin(); it != j.end(); ++it) {
        bool known = false;
        for (const char* k : allowed) {
            if (it.key() == k) { known = true; break; }
        }
        if (!known) throw ConfigError(context + ": unknown key \"" + it.key() + "\"");
    }
}

double get_num(const json& j, const char* key, double fallback) {
    if (!j.contains(key)) return fallback;
    const json& v = j.at(key);
    if (!v.is_number()) throw ConfigError(std::string("key \"") + key + "\" must be a number");
    return v.get<double>();
}

double get_num_required(const json& j, const char* key, const std::string& context) {
    if (!j.contains(key) || !j.at(key).is_number())
        throw ConfigError(context + ": key \"" + key + "\" must be a number");
    return j.at(key).get<double>();
}

// delta_t_bar and t_f accept the string "inf".
double get_num_or_inf(const json& j, const char* key, double fallback) {
    if (!j.contains(key)) return fallback;
    const json& v = j.at(key);
    if (v.is_string() && v.get<std::string>() == "inf")
        return std::numeric_limits<double>::infinity();
    if (!v.is_number()) throw ConfigError(std::string("key \"") + key + "\" must be a number or \"inf\"");
    return v.get<double>();
}

std::string get_str(const json& j, const char* key, const std::string& fallback) {
    if (!j.contains(key)) return fallback;
    const json& v = j.at(key);
    if (!v.is_string()) throw ConfigError(std::string("key \"") + key + "\" must be a string");
    return v.get<std::string>();
}

json load_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open " + path);
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw ConfigError(path + ": " + e.what());
    }
    return j;
}

AgentSpec parse_agent(const json& j, int ordinal) {
    const std::string ctx = "agents[" + std::to_string(ordinal) + "]";
    check_keys(j, {"id", "role", "x", "y", "theta", "v", "params"}, ctx);
    AgentSpec spec;
    if (!j.contains("id") || !j.at("id").is_number_integer())
        throw ConfigError(ctx + ": key \"id\" must be an integer");
    spec.initial.id = j.at("id").get<int>();
    const std::string role = get_str(j, "role", "");
    if (role == "pursuer") spec.initial.role = Role::Pursuer;
    else if (role == "evader") spec.initial.role = Role::Evader;
    else throw ConfigError(ctx + ": key \"role\" must be \"pursuer\" or \"evader\"");
    spec.initial.x = get_num_required(j, "x", ctx);
    spec.initial.y = get_num_required(j, "y", ctx);
    spec.initial.theta = get_num(j, "theta", 0.0);
    spec.initial.v = get_num(j, "v", 0.0);
    if (j.contains("params")) {
        const json& p = j.at("params");
        check_keys(p, {"v_max", "w_max", "r", "a", "c", "k"}, ctx + ".params");
        spec.params.v_max = get_num(p, "v_max", spec.params.v_max);
        spec.params.w_max = get_num(p, "w_max", spec.params.w_max);
        spec.params.r = get_num(p, "r", spec.params.r);
        spec.params.a = get_num(p, "a", spec.params.a);
        spec.params.c = get_num(p, "c", spec.params.c);
        spec.params.k = get_num(p, "k", spec.params.k);
    }
    return spec;
}

// Resolves one caption name against the built scenario; role-suffixed names
// must agree across every agent of that role.
double resolve_caption(const Scenario& s, const std::string& name) {
    if (name == "eps1") return s.engagement.eps1;
    if (name == "eps2") return s.engagement.eps2;
    if (name == "bar_theta") return s.engagement.bar_theta;
    if (name == "t_f") return s.t_f;
    if (name == "dt") return s.dt;
    if (name == "gamma") return s.math_cfg.gamma;
    if (name == "alpha") return s.multi.alpha;
    if (name == "k_beta") return s.multi.k_beta;
    if (name == "m_rep") return s.multi.m_rep;
    if (name == "d_safe") return s.multi.d_safe;
    if (name == "pt") return s.targeting_seed.pt;
    if (name == "delta_t_bar") return s.targeting_seed.delta_t_bar;
    if (name == "n_evaders") return s.count(Role::Evader);
    if (name == "n_pursuers") return s.count(Role::Pursuer);

    Role role;
    std::string field;
    if (name.size() > 6 && name.compare(name.size() - 6, 6, "_e_max") == 0) {
        role = Role::Evader;
        field = name.substr(0, name.size() - 6) + "_max";
    } else if (name.size() > 6 && name.compare(name.size() - 6, 6, "_p_max") == 0) {
        role = Role::Pursuer;
        field = name.substr(0, name.size() - 6) + "_max";
    } else if (name.size() > 2 && name.compare(name.size() - 2, 2, "_e") == 0) {
        role = Role::Evader;
        field = name.substr(0, name.size() - 2);
    } else if (name.size() > 2 && name.compare(name.size() - 2, 2, "_p") == 0) {
        role = Role::Pursuer;
        field = name.substr(0, name.size() - 2);
    } else {
        throw ConfigError("caption_params: unknown name \"" + name + "\"");
    }

    bool found = false;
    double value = 0.0;
    for (const AgentSpec& a : s.agents) {
        if (a.initial.role != role) continue;
        double got;
        if (field == "v_max") got = a.params.v_max;
        else if (field == "w_max") got = a.params.w_max;
        else if (field == "r") got = a.params.r;
        else if (field == "a") got = a.params.a;
        else if (field == "c") got = a.params.c;
        else if (field == "k") got = a.params.k;
        else throw ConfigError("caption_params: unknown name \"" + name + "\"");
        if (found && got != value)
            throw ConfigError("caption_params: \"" + name + "\" differs between agents");
        found = true;
        value = got;
    }
    if (!found) throw ConfigError("caption_params: no agent with role for \"" + name + "\"");
    return value;
}

void assert_caption_params(const Scenario& s, const json& caption) {
    for (auto it = caption.begin(); it != caption.end(); ++it) {
        double expected;
        if (it.value().is_string() && it.value().get<std::string>() == "inf")
            expected = std::numeric_limits<double>::infinity();
        else if (it.value().is_number())
            expected = it.value().get<double>();
        else
            throw ConfigError("caption_params: \"" + it.key() + "\" must be a number");
        const double actual = resolve_caption(s, it.key());
        if (actual != expected) {
            std::ostringstream os;
            os << "caption_params: \"" << it.key() << "\" expects " << expected
               << " but the scenario resolves to " << actual;
            throw ConfigError(os.str());
        }
    }
}

std::string fmt(double v, const char* spec) {
    char buf[64];
    std::snprintf(buf, sizeof buf, spec, v);
    return buf;
}

std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        out += c;
        if (c == '"') out += '"';
    }
    out += '"';
    return out;
}

// Splits one CSV line, honoring double-quoted fields.
std::vector<std::string> csv_split(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        char c = line[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') { cur += '"'; ++i; }
                else quoted = false;
            } else cur += c;
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            out.push_back(cur);
            cur.clear();
        } else cur += c;
    }
    out.push_back(cur);
    return out;
}

double parse_double(const std::string& s, const std::string& context) {
    char* end = nullptr;
    double v = std::strtod(s.c_str(), &end);
    if (end == s.c_str()) throw ConfigError(context + ": bad number \"" + s + "\"");
    return v;
}

json num_or_inf_json(double v) {
    if (std::isinf(v) && v > 0) return json("inf");
    return json(v);
}

}  // namespace

Scenario parse_scenario_json(const json& j) {
    check_keys(j, {"metadata", "mode", "agents", "engagement", "math", "multi",
                   "integration", "sweep", "output", "analysis"},
               "scenario");
    Scenario s;

    if (j.contains("metadata")) {
        const json& m = j.at("metadata");
        check_keys(m, {"name", "description", "figure", "provenance", "caption_params"},
                   "metadata");
        s.name = get_str(m, "name", s.name);
        s.description = get_str(m, "description", s.description);
    }

    const std::string mode = get_str(j, "mode", "single");
    if (mode == "single") s.mode = Mode::SingleVsSingle;
    else if (mode == "multi") s.mode = Mode::Multi;
    else throw ConfigError("scenario: key \"mode\" must be \"single\" or \"multi\"");

    if (!j.contains("agents") || !j.at("agents").is_array())
        throw ConfigError("scenario: key \"agents\" must be an array");
    int ordinal = 0;
    for (const json& a : j.at("agents")) s.agents.push_back(parse_agent(a, ordinal++));

    if (j.contains("engagement")) {
        const json& e = j.at("engagement");
        check_keys(e, {"eps1", "eps2", "bar_theta", "align_hysteresis"}, "engagement");
        s.engagement.eps1 = get_num(e, "eps1", s.engagement.eps1);
        s.engagement.eps2 = get_num(e, "eps2", s.engagement.eps2);
        s.engagement.bar_theta = get_num(e, "bar_theta", s.engagement.bar_theta);
        s.engagement.align_hysteresis =
            get_num(e, "align_hysteresis", s.engagement.align_hysteresis);
    }

    if (j.contains("math")) {
        const json& m = j.at("math");
        check_keys(m, {"gamma"}, "math");
        s.math_cfg.gamma = get_num(m, "gamma", s.math_cfg.gamma);
    }

    if (j.contains("multi")) {
        const json& m = j.at("multi");
        check_keys(m, {"alpha", "k_beta", "m_rep", "d_safe", "iso_threshold",
                       "d_des_update_period", "pt", "delta_t_bar", "n_targets",
                       "selection_rule", "post_capture"},
                   "multi");
        s.multi.alpha = get_num(m, "alpha", s.multi.alpha);
        s.multi.k_beta = get_num(m, "k_beta", s.multi.k_beta);
        s.multi.m_rep = get_num(m, "m_rep", s.multi.m_rep);
        s.multi.d_safe = get_num(m, "d_safe", s.multi.d_safe);
        s.multi.iso_threshold = get_num(m, "iso_threshold", s.multi.iso_threshold);
        s.multi.d_des_update_period =
            get_num(m, "d_des_update_period", s.multi.d_des_update_period);
        s.targeting_seed.pt = get_num(m, "pt", s.targeting_seed.pt);
        s.targeting_seed.delta_t_bar =
            get_num_or_inf(m, "delta_t_bar", s.targeting_seed.delta_t_bar);
        if (m.contains("n_targets")) {
            if (!m.at("n_targets").is_number_integer())
                throw ConfigError("multi: key \"n_targets\" must be an integer");
            s.targeting_seed.n_targets = m.at("n_targets").get<int>();
        }
        const std::string rule = get_str(m, "selection_rule", "closest_distance");
        if (rule == "closest_distance")
            s.targeting_seed.selection_rule = SelectionRule::ClosestDistance;
        else if (rule == "shortest_predicted_time")
            s.targeting_seed.selection_rule = SelectionRule::ShortestPredictedTime;
        else
            throw ConfigError("multi: key \"selection_rule\" must be \"closest_distance\" "
                              "or \"shortest_predicted_time\"");
        const std::string pc = get_str(m, "post_capture", "retarget");
        if (pc == "stop") s.targeting_seed.post_capture_behavior = PostCaptureBehavior::Stop;
        else if (pc == "retarget")
            s.targeting_seed.post_capture_behavior = PostCaptureBehavior::Retarget;
        else throw ConfigError("multi: key \"post_capture\" must be \"stop\" or \"retarget\"");
    }

    if (j.contains("integration")) {
        const json& m = j.at("integration");
        check_keys(m, {"dt", "t_f", "integrator", "seed"}, "integration");
        s.dt = get_num(m, "dt", s.dt);
        s.t_f = get_num(m, "t_f", s.t_f);
        const std::string in = get_str(m, "integrator", "euler");
        if (in == "euler") s.integrator = Integrator::Euler;
        else if (in == "rk4") s.integrator = Integrator::RK4;
        else throw ConfigError("integration: key \"integrator\" must be \"euler\" or \"rk4\"");
        if (m.contains("seed")) {
            if (!m.at("seed").is_number_integer())
                throw ConfigError("integration: key \"seed\" must be an integer");
            s.seed = m.at("seed").get<std::uint64_t>();
        }
    }

    if (j.contains("output")) check_keys(j.at("output"), {"dir"}, "output");

    s.validate();
    if (j.contains("metadata") && j.at("metadata").contains("caption_params"))
        assert_caption_params(s, j.at("metadata").at("caption_params"));
    return s;
}

Scenario parse_scenario(const std::string& path) {
    return parse_scenario_json(load_file(path));
}

json scenario_to_json(const Scenario& s) {
    json agents = json::array();
    for (const AgentSpec& a : s.agents) {
        agents.push_back({{"id", a.initial.id},
                          {"role", to_string(a.initial.role)},
                          {"x", a.initial.x},
                          {"y", a.initial.y},
                          {"theta", a.initial.theta},
                          {"v", a.initial.v},
                          {"params",
                           {{"v_max", a.params.v_max},
                            {"w_max", a.params.w_max},
                            {"r", a.params.r},
                            {"a", a.params.a},
                            {"c", a.params.c},
                            {"k", a.params.k}}}});
    }
    return {{"metadata", {{"name", s.name}, {"description", s.description}}},
            {"mode", s.mode == Mode::SingleVsSingle ? "single" : "multi"},
            {"agents", agents},
            {"engagement",
             {{"eps1", s.engagement.eps1},
              {"eps2", s.engagement.eps2},
              {"bar_theta", s.engagement.bar_theta},
              {"align_hysteresis", s.engagement.align_hysteresis}}},
            {"math", {{"gamma", s.math_cfg.gamma}}},
            {"multi",
             {{"alpha", s.multi.alpha},
              {"k_beta", s.multi.k_beta},
              {"m_rep", s.multi.m_rep},
              {"d_safe", s.multi.d_safe},
              {"iso_threshold", s.multi.iso_threshold},
              {"d_des_update_period", s.multi.d_des_update_period},
              {"pt", s.targeting_seed.pt},
              {"delta_t_bar", num_or_inf_json(s.targeting_seed.delta_t_bar)},
              {"n_targets", s.targeting_seed.n_targets},
              {"selection_rule",
               s.targeting_seed.selection_rule == SelectionRule::ClosestDistance
                   ? "closest_distance"
                   : "shortest_predicted_time"},
              {"post_capture",
               s.targeting_seed.post_capture_behavior == PostCaptureBehavior::Stop
                   ? "stop"
                   : "retarget"}}},
            {"integration",
             {{"dt", s.dt},
              {"t_f", s.t_f},
              {"integrator", s.integrator == Integrator::Euler ? "euler" : "rk4"},
              {"seed", s.seed}}}};
}

bool has_sweep(const std::string& path) {
    return load_file(path).contains("sweep");
}

analysis::SweepGrid parse_sweep(const std::string& path) {
    const json j = load_file(path);
    if (!j.contains("sweep")) throw ConfigError(path + ": no \"sweep\" block");
    analysis::SweepGrid grid;
    grid.base = parse_scenario_json(j);
    const json& sw = j.at("sweep");
    check_keys(sw, {"axes"}, "sweep");
    if (!sw.contains("axes") || !sw.at("axes").is_array())
        throw ConfigError("sweep: key \"axes\" must be an array");
    for (const json& ax : sw.at("axes")) {
        check_keys(ax, {"param", "values", "from", "to", "count"}, "sweep.axes");
        analysis::SweepAxis axis;
        axis.param = get_str(ax, "param", "");
        if (axis.param.empty()) throw ConfigError("sweep.axes: key \"param\" required");
        if (ax.contains("values")) {
            if (!ax.at("values").is_array())
                throw ConfigError("sweep.axes: key \"values\" must be an array");
            for (const json& v : ax.at("values")) {
                if (!v.is_number()) throw ConfigError("sweep.axes: values must be numbers");
                axis.values.push_back(v.get<double>());
            }
        } else {
            const double from = get_num_required(ax, "from", "sweep.axes");
            const double to = get_num_required(ax, "to", "sweep.axes");
            if (!ax.contains("count") || !ax.at("count").is_number_integer())
                throw ConfigError("sweep.axes: key \"count\" must be an integer");
            const int count = ax.at("count").get<int>();
            if (count < 2) throw ConfigError("sweep.axes: count must be >= 2");
            for (int i = 0; i < count; ++i)
                axis.values.push_back(from + (to - from) * i / (count - 1));
        }
        grid.axes.push_back(std::move(axis));
    }
    grid.validate();
    return grid;
}

verify::Theorem1Inputs parse_theorem1_inputs(const json& j) {
    check_keys(j,
               {"metadata", "v_p", "v_e", "w_p_max", "w_e_max", "r_p", "r_e", "a_p",
                "a_e", "c_p", "c_e", "k_p", "k_e", "eps1", "eps2", "d0"},
               "theorem1 inputs");
    if (j.contains("metadata"))
        check_keys(j.at("metadata"), {"name", "description", "figure", "provenance"},
                   "metadata");
    verify::Theorem1Inputs in;
    in.v_p = get_num(j, "v_p", in.v_p);
    in.v_e = get_num(j, "v_e", in.v_e);
    in.w_p_max = get_num(j, "w_p_max", in.w_p_max);
    in.w_e_max = get_num(j, "w_e_max", in.w_e_max);
    in.r_p = get_num(j, "r_p", in.r_p);
    in.r_e = get_num(j, "r_e", in.r_e);
    in.a_p = get_num(j, "a_p", in.a_p);
    in.a_e = get_num(j, "a_e", in.a_e);
    in.c_p = get_num(j, "c_p", in.c_p);
    in.c_e = get_num(j, "c_e", in.c_e);
    in.k_p = get_num(j, "k_p", in.k_p);
    in.k_e = get_num(j, "k_e", in.k_e);
    in.eps1 = get_num(j, "eps1", in.eps1);
    in.eps2 = get_num(j, "eps2", in.eps2);
    in.d0 = get_num(j, "d0", in.d0);
    in.validate();
    return in;
}

verify::Theorem1Inputs parse_theorem1_inputs_file(const std::string& path) {
    return parse_theorem1_inputs(load_file(path));
}

Theorem2Inputs parse_theorem2_inputs_file(const std::string& path) {
    const json j = load_file(path);
    check_keys(j, {"metadata", "q0", "d_des", "t_end", "dt"}, "theorem2 inputs");
    Theorem2Inputs in;
    if (j.contains("q0")) {
        const json& q = j.at("q0");
        if (!q.is_array() || q.size() != 2 || !q[0].is_number() || !q[1].is_number())
            throw ConfigError("theorem2 inputs: key \"q0\" must be [x, y]");
        in.q0 = {q[0].get<double>(), q[1].get<double>()};
    }
    in.d_des = get_num(j, "d_des", in.d_des);
    in.t_end = get_num(j, "t_end", in.t_end);
    in.dt = get_num(j, "dt", in.dt);
    if (!(in.d_des > 0.0)) throw ConfigError("theorem2 inputs: d_des must be > 0");
    if (!(in.dt > 0.0)) throw ConfigError("theorem2 inputs: dt must be > 0");
    if (!(in.t_end >= 0.0)) throw ConfigError("theorem2 inputs: t_end must be >= 0");
    return in;
}

void write_trace_csv(const SimTrace& trace, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot write " + path);
    out << "t,agent_id,role,x,y,theta,v,w,phase,target_id\n";
    for (const StepRecord& r : trace.records) {
        out << fmt(r.t, "%.9g") << ',' << r.agent_id << ',' << to_string(r.role) << ','
            << fmt(r.x, "%.9g") << ',' << fmt(r.y, "%.9g") << ',' << fmt(r.theta, "%.9g")
            << ',' << fmt(r.v, "%.9g") << ',' << fmt(r.w, "%.9g") << ','
            << to_string(r.phase) << ',' << r.target_id << '\n';
    }
    if (!out) throw ConfigError("write failed on " + path);
}

void write_sweep_csv(const analysis::SweepResult& result, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot write " + path);
    out << "# axis_sizes:";
    for (std::size_t i = 0; i < result.axis_sizes.size(); ++i)
        out << (i ? "," : " ") << result.axis_sizes[i];
    out << '\n';
    for (const std::string& name : result.axis_names) out << csv_escape(name) << ',';
    out << "min_distance,captured,t_d,ok,error\n";
    for (const analysis::CellResult& c : result.cells) {
        for (double v : c.axis_values) out << fmt(v, "%.17g") << ',';
        out << fmt(c.min_distance, "%.17g") << ',' << (c.captured ? 1 : 0) << ','
            << fmt(c.t_d, "%.17g") << ',' << (c.ok ? 1 : 0) << ',' << csv_escape(c.error)
            << '\n';
    }
    if (!out) throw ConfigError("write failed on " + path);
}

analysis::SweepResult read_sweep_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open " + path);
    analysis::SweepResult result;
    std::string line;
    if (!std::getline(in, line) || line.rfind("# axis_sizes:", 0) != 0)
        throw ConfigError(path + ": missing axis_sizes line");
    {
        std::string sizes = line.substr(std::string("# axis_sizes:").size());
        std::istringstream ss(sizes);
        std::string tok;
        while (std::getline(ss, tok, ','))
            if (!tok.empty() && tok != " ")
                result.axis_sizes.push_back(static_cast<std::size_t>(
                    parse_double(tok, path + " axis_sizes")));
    }
    if (!std::getline(in, line)) throw ConfigError(path + ": missing header line");
    std::vector<std::string> header = csv_split(line);
    if (header.size() < 5 + result.axis_sizes.size())
        throw ConfigError(path + ": header/axis count mismatch");
    const std::size_t n_axes = header.size() - 5;
    for (std::size_t i = 0; i < n_axes; ++i) result.axis_names.push_back(header[i]);
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<std::string> f = csv_split(line);
        if (f.size() != header.size()) throw ConfigError(path + ": bad row \"" + line + "\"");
        analysis::CellResult c;
        for (std::size_t i = 0; i < n_axes; ++i)
            c.axis_values.push_back(parse_double(f[i], path));
        c.min_distance = parse_double(f[n_axes], path);
        c.captured = parse_double(f[n_axes + 1], path) != 0.0;
        c.t_d = parse_double(f[n_axes + 2], path);
        c.ok = parse_double(f[n_axes + 3], path) != 0.0;
        c.error = f[n_axes + 4];
        result.cells.push_back(std::move(c));
    }
    return result;
}

json trace_summary_json(const SimTrace& trace) {
    json captured = json::object();
    for (const auto& [id, hit] : trace.captured) captured[std::to_string(id)] = hit;
    json capture_time = json::object();
    for (const auto& [id, t] : trace.capture_time) capture_time[std::to_string(id)] = t;
    json min_dist = json::array();
    for (const auto& [pair, d] : trace.min_distance)
        min_dist.push_back(
            {{"pursuer", pair.first}, {"evader", pair.second}, {"distance", d}});
    json events = json::array();
    for (const Event& e : trace.events)
        events.push_back({{"t", e.t}, {"kind", to_string(e.kind)}, {"agents", e.agent_ids}});
    return {{"t_f", trace.t_f},
            {"all_targets_captured", trace.all_targets_captured},
            {"full_capture_time", trace.full_capture_time},
            {"captured", captured},
            {"capture_time", capture_time},
            {"min_distance", min_dist},
            {"events", events}};
}

json theorem1_report_json(const verify::Theorem1Report& rep) {
    return {{"cond_i", rep.cond_i},
            {"cond_ii", rep.cond_ii},
            {"cond_iii", rep.cond_iii},
            {"cond_iv", rep.cond_iv},
            {"cond_v", rep.cond_v},
            {"rho1", rep.rho1},
            {"rho2", rep.rho2},
            {"eps1_bound_defined", rep.eps1_bound_defined},
            {"eps1_bound", rep.eps1_bound},
            {"t_bound", rep.t_bound},
            {"closed_form_final_distance", rep.closed_form_final_distance},
            {"capture_guaranteed", rep.capture_guaranteed},
            {"oracle_capture", rep.oracle_capture}};
}

void write_json(const json& j, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot write " + path);
    out << j.dump(2) << '\n';
    if (!out) throw ConfigError("write failed on " + path);
}

}  // namespace pursuit::io
