#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "pursuit/agents.hpp"
#include "pursuit/controller_multi.hpp"
#include "pursuit/controller_single.hpp"

namespace pursuit {

enum class Integrator { Euler, RK4 };
enum class Mode { SingleVsSingle, Multi };

struct AgentSpec {
    AgentParams params;
    AgentState initial;
};

struct Scenario {
    std::string name = "scenario";
    std::string description;
    Mode mode = Mode::SingleVsSingle;
    std::vector<AgentSpec> agents;
    EngagementConfig engagement;
    math::MathConfig math_cfg;
    MultiConfig multi;
    TargetingState targeting_seed;
    double dt = 0.005;
    double t_f = 60.0;
    Integrator integrator = Integrator::Euler;
    std::uint64_t seed = 0;

    void validate() const;
    int count(Role role) const;
};

enum class EventKind { AlertEntered, AlertExited, Captured, TargetSwitched, Isolated, Rejoined };

const char* to_string(EventKind k);

struct Event {
    double t = 0.0;
    EventKind kind = EventKind::Captured;
    std::vector<int> agent_ids;
};

struct StepRecord {
    double t = 0.0;
    int agent_id = 0;
    Role role = Role::Evader;
    double x = 0.0, y = 0.0, theta = 0.0;
    double v = 0.0, w = 0.0;
    Phase phase = Phase::Long;
    int target_id = -1;
};

struct SimTrace {
    std::vector<StepRecord> records;
    std::vector<Event> events;
    std::map<std::pair<int, int>, double> min_distance;  // (pursuer id, evader id)
    std::map<int, bool> captured;       // per evader
    std::map<int, double> capture_time; // t_d; t_f when never captured
    bool all_targets_captured = false;
    double full_capture_time = 0.0;     // t_f sentinel when not all captured
    double t_f = 0.0;
};

// One deterministic fixed-step run. The world keeps per-agent phase
// bookkeeping, group membership and targeting; step() advances dt.
class World {
public:
    World(const Scenario& scenario, bool record_steps = true);

    void step();
    bool finished() const { return finished_; }
    double time() const { return t_; }
    SimTrace finish_trace();

    const std::vector<AgentState>& states() const { return states_; }
    const std::vector<PhaseState>& phases() const { return phase_states_; }
    const std::vector<ControlCommand>& last_commands() const { return last_commands_; }
    const TargetingState& targeting() const { return targeting_; }
    const GroupState& group() const { return group_; }

private:
    struct PairInfo;

    void detection_pass();
    void update_groups();
    void classify_and_bookkeep();
    std::vector<ControlCommand> compute_commands() const;
    void integrate(const std::vector<ControlCommand>& cmds);
    void capture_check();
    void record(const std::vector<ControlCommand>& cmds);
    void check_finite() const;
    int closest_active_pursuer(int evader_id) const;
    Vec2 main_group_center(int excluding_id) const;
    void reset_bookkeeping(int idx);
    void emit_command_envelope_check(int idx, const ControlCommand& cmd) const;

    Scenario scenario_;
    bool record_steps_;
    double t_ = 0.0;
    bool finished_ = false;

    std::vector<AgentState> states_;
    std::vector<AgentParams> params_;
    std::vector<PhaseState> phase_states_;
    std::vector<ControlCommand> last_commands_;
    std::vector<bool> frozen_;
    std::vector<bool> ended_short_episode_;  // evaders, consumed next step
    std::vector<int> pursuer_idx_, evader_idx_;
    std::map<int, int> index_of_;  // agent id -> index

    GroupState group_;
    TargetingState targeting_;
    double last_d_des_refresh_ = 0.0;

    SimTrace trace_;
};

SimTrace run(const Scenario& scenario, bool record_steps = true);

// Minimum recorded distance for one pursuer-evader pair.
double min_distance(const SimTrace& trace, int pursuer_id, int evader_id);

}  // namespace pursuit
