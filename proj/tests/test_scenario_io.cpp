#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>

#include "pursuit/errors.hpp"
#include "pursuit/scenario_io.hpp"

using namespace pursuit;
using namespace pursuit::io;

namespace {

std::string scenario_path(const std::string& name) {
    return std::string(PURSUIT_SCENARIO_DIR) + "/" + name;
}

std::string temp_file(const std::string& name) {
    return (std::filesystem::temp_directory_path() / name).string();
}

std::string write_temp(const std::string& name, const std::string& content) {
    const std::string path = temp_file(name);
    std::ofstream out(path);
    out << content;
    return path;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

json minimal_scenario() {
    return json{
        {"agents",
         json::array(
             {{{"id", 0}, {"role", "pursuer"}, {"x", 0.0}, {"y", 0.0}},
              {{"id", 1}, {"role", "evader"}, {"x", 3.0}, {"y", 0.0}}})}};
}

}  // namespace

TEST_CASE("bundled fig1 scenario carries the documented engagement") {
    const Scenario s = parse_scenario(scenario_path("fig1.json"));
    CHECK(s.mode == Mode::SingleVsSingle);
    CHECK(s.engagement.eps1 == 1.4);
    CHECK(s.engagement.eps2 == 0.04);
    CHECK(s.dt == 0.005);
    CHECK(s.t_f == 5.8);
    REQUIRE(s.agents.size() == 2);
    const auto& p = s.agents[0];
    const auto& e = s.agents[1];
    REQUIRE(p.initial.role == Role::Pursuer);
    REQUIRE(e.initial.role == Role::Evader);
    CHECK(p.params.v_max == 1.2);
    CHECK(e.params.v_max == 0.6);
    CHECK(p.params.w_max == 1.0);
    CHECK(e.params.w_max == 2.0);
    CHECK(p.params.r == 0.1);
    CHECK(e.params.r == 0.2);
    CHECK(p.params.a == 0.6);
    CHECK(e.params.a == 0.25);
}

TEST_CASE("bundled theorem inputs parse to the documented values") {
    const auto t1 = parse_theorem1_inputs_file(scenario_path("remark1.json"));
    CHECK(t1.v_p == 2.0);
    CHECK(t1.v_e == 1.6);
    CHECK(t1.w_p_max == 1.0);
    CHECK(t1.w_e_max == 2.0);
    CHECK(t1.r_p == 3.0);
    CHECK(t1.r_e == 4.0);
    CHECK(t1.a_p == 0.0);
    CHECK(t1.k_p == 0.01);
    CHECK(t1.eps1 == 1.31);
    CHECK(t1.eps2 == 1.0);
    CHECK(t1.d0 == 1.31);

    const auto t2 = parse_theorem2_inputs_file(scenario_path("theorem2.json"));
    CHECK(t2.q0.x == 2.0);
    CHECK(t2.q0.y == 0.0);
    CHECK(t2.d_des == 1.0);
    CHECK(t2.t_end == 50.0);
}

TEST_CASE("every bundled scenario file loads") {
    for (const char* name : {"fig1.json", "formation.json", "target_switching.json",
                             "multi_capture.json", "fig4a.json", "eps1_ladder.json",
                             "capture_time.json"}) {
        CAPTURE(name);
        CHECK_NOTHROW(parse_scenario(scenario_path(name)));
    }
    CHECK(has_sweep(scenario_path("fig4a.json")));
    CHECK(has_sweep(scenario_path("eps1_ladder.json")));
    CHECK_FALSE(has_sweep(scenario_path("fig1.json")));
    const auto grid = parse_sweep(scenario_path("fig4a.json"));
    REQUIRE(grid.axes.size() == 2);
    CHECK(grid.axes[0].param == "evader.r");
    CHECK(grid.axes[1].param == "pursuer.r");
    CHECK(grid.axes[0].values.size() == 10);
    CHECK(grid.axes[0].values.front() == 0.05);
    CHECK(grid.axes[0].values.back() == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("schema violations are rejected by name") {
    json j = minimal_scenario();
    j["frobnicate"] = 1;
    CHECK_THROWS_WITH_AS(parse_scenario_json(j), doctest::Contains("frobnicate"),
                         ConfigError);

    j = minimal_scenario();
    j["agents"][0]["colour"] = "red";
    CHECK_THROWS_WITH_AS(parse_scenario_json(j), doctest::Contains("colour"),
                         ConfigError);

    j = minimal_scenario();
    j["agents"][0].erase("x");
    CHECK_THROWS_WITH_AS(parse_scenario_json(j), doctest::Contains("x"), ConfigError);

    j = minimal_scenario();
    j["agents"][0]["role"] = "referee";
    CHECK_THROWS_AS(parse_scenario_json(j), ConfigError);

    j = minimal_scenario();
    j["engagement"] = {{"eps1", 0.5}, {"eps2", 0.5}};
    CHECK_THROWS_WITH_AS(parse_scenario_json(j), doctest::Contains("eps2"), ConfigError);

    j = minimal_scenario();
    j["agents"][1]["params"] = {{"c", 1.2}};
    CHECK_THROWS_WITH_AS(parse_scenario_json(j), doctest::Contains("c"), ConfigError);
}

TEST_CASE("caption_params are asserted against the parsed scenario") {
    json j = minimal_scenario();
    j["metadata"] = {{"caption_params", {{"eps1", 1.4}}}};
    CHECK_NOTHROW(parse_scenario_json(j));  // 1.4 is the engagement default

    j["metadata"]["caption_params"]["eps1"] = 0.9;
    CHECK_THROWS_WITH_AS(parse_scenario_json(j), doctest::Contains("eps1"), ConfigError);

    j = minimal_scenario();
    j["metadata"] = {{"caption_params", {{"v_p_max", 1.0}}}};
    CHECK_NOTHROW(parse_scenario_json(j));  // AgentParams default v_max
    j["metadata"]["caption_params"] = {{"v_q_max", 1.0}};
    CHECK_THROWS_WITH_AS(parse_scenario_json(j), doctest::Contains("v_q_max"),
                         ConfigError);
}

TEST_CASE("delta_t_bar accepts the string inf and survives the round trip") {
    json j = minimal_scenario();
    j["mode"] = "multi";
    j["multi"] = {{"delta_t_bar", "inf"}};
    const Scenario s = parse_scenario_json(j);
    CHECK(std::isinf(s.targeting_seed.delta_t_bar));
    const json echoed = scenario_to_json(s);
    CHECK(echoed.at("multi").at("delta_t_bar") == json("inf"));
    CHECK(std::isinf(parse_scenario_json(echoed).targeting_seed.delta_t_bar));
}

TEST_CASE("scenario serialization round-trips bit-exactly") {
    for (const char* name : {"fig1.json", "target_switching.json", "capture_time.json"}) {
        CAPTURE(name);
        const Scenario s = parse_scenario(scenario_path(name));
        const json once = scenario_to_json(s);
        const json twice = scenario_to_json(parse_scenario_json(once));
        CHECK(once == twice);
        CHECK(once.dump() == twice.dump());
    }
}

TEST_CASE("trace CSV format") {
    const std::string path = temp_file("pursuit_trace_test.csv");

    SUBCASE("empty trace writes only the header") {
        write_trace_csv(SimTrace{}, path);
        CHECK(slurp(path) == "t,agent_id,role,x,y,theta,v,w,phase,target_id\n");
    }
    SUBCASE("records serialize roles, phases and 9 significant digits") {
        SimTrace trace;
        trace.records.push_back({0.005, 0, Role::Pursuer, 1.0 / 3.0, -2.0, 0.1,
                                 1.2, -0.28, Phase::Long, 1});
        trace.records.push_back({0.01, 1, Role::Evader, 0.0, 2.25, -3.0,
                                 0.6, 2.0, Phase::Short, -1});
        write_trace_csv(trace, path);
        CHECK(slurp(path) ==
              "t,agent_id,role,x,y,theta,v,w,phase,target_id\n"
              "0.005,0,pursuer,0.333333333,-2,0.1,1.2,-0.28,long,1\n"
              "0.01,1,evader,0,2.25,-3,0.6,2,short,-1\n");
    }
}

TEST_CASE("sweep CSV write-then-read is the identity") {
    analysis::SweepResult res;
    res.axis_names = {"evader.r", "pursuer.r"};
    res.axis_sizes = {2, 1};
    analysis::CellResult a;
    a.axis_values = {0.05, 0.1};
    a.min_distance = 0.123456789012345678;
    a.captured = true;
    a.t_d = 4.25;
    a.ok = true;
    analysis::CellResult b;
    b.axis_values = {0.5, 0.1};
    b.ok = false;
    b.error = "Scenario: \"quoted\", with, commas";
    res.cells = {a, b};

    const std::string path = temp_file("pursuit_sweep_test.csv");
    write_sweep_csv(res, path);
    const auto back = read_sweep_csv(path);
    CHECK(back == res);

    CHECK(slurp(path).rfind("# axis_sizes: 2,1\n", 0) == 0);

    SUBCASE("a header-less file is rejected") {
        const std::string bad = write_temp("pursuit_sweep_bad.csv", "1,2,3\n");
        CHECK_THROWS_AS(read_sweep_csv(bad), ConfigError);
    }
}

TEST_CASE("summary and report JSON carry the event vocabulary") {
    SimTrace trace;
    trace.t_f = 10.0;
    trace.full_capture_time = 10.0;
    trace.captured[1] = false;
    trace.capture_time[1] = 10.0;
    trace.min_distance[{0, 1}] = 0.5;
    trace.events.push_back({1.5, EventKind::AlertEntered, {0, 1}});
    trace.events.push_back({2.5, EventKind::TargetSwitched, {0, 2}});
    const json summary = trace_summary_json(trace);
    CHECK(summary.at("events")[0].at("kind") == "alert_entered");
    CHECK(summary.at("events")[1].at("kind") == "target_switched");
    CHECK(summary.at("captured").at("1") == false);
    CHECK(summary.at("min_distance")[0].at("distance") == 0.5);

    const auto rep = verify::theorem1_check(verify::Theorem1Inputs{});
    const json rj = theorem1_report_json(rep);
    CHECK(rj.at("eps1_bound").get<double>() ==
          doctest::Approx(1.316515138991168).epsilon(1e-12));
    CHECK(rj.at("cond_v") == true);
    CHECK(rj.at("cond_ii") == false);
    CHECK(rj.at("oracle_capture") == true);
}

TEST_CASE("missing and malformed files raise ConfigError") {
    CHECK_THROWS_AS(parse_scenario(temp_file("does_not_exist.json")), ConfigError);
    const std::string garbled = write_temp("pursuit_garbled.json", "{ not json");
    CHECK_THROWS_AS(parse_scenario(garbled), ConfigError);
    CHECK_THROWS_AS(read_sweep_csv(temp_file("does_not_exist.csv")), ConfigError);
}
