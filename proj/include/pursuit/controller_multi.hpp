#pragma once

#include <limits>
#include <map>
#include <set>
#include <vector>

#include "pursuit/agents.hpp"
#include "pursuit/controller_single.hpp"

namespace pursuit {

struct GroupState {
    std::set<int> main_members;
    std::set<int> isolated_members;
    std::map<int, double> d_des;  // desired clearance to group center, per evader
    double iso_threshold = 0.0;
};

enum class SelectionRule { ClosestDistance, ShortestPredictedTime };
enum class PostCaptureBehavior { Stop, Retarget };

struct TargetingState {
    std::map<int, int> target_of;  // pursuer id -> evader id
    double last_detection_time = -std::numeric_limits<double>::infinity();
    double delta_t_bar = std::numeric_limits<double>::infinity();
    double pt = 0.2;
    std::set<int> captured;
    int n_targets = 0;
    int n_captured = 0;
    SelectionRule selection_rule = SelectionRule::ClosestDistance;
    PostCaptureBehavior post_capture_behavior = PostCaptureBehavior::Retarget;
};

struct MultiConfig {
    double alpha = 0.0;   // selfish parameter, weight of the escape term
    double k_beta = 0.5;  // gain of the isolated-evader blend weight
    double m_rep = 0.1;   // inter-pursuer repulsion gain
    double d_safe = 0.8;
    double iso_threshold = 0.0;        // 0 = auto: 2 * mean(d_des)
    double d_des_update_period = 0.0;  // 0 = never refresh

    void validate() const {
        if (!(alpha >= 0.0 && alpha <= 1.0)) throw ConfigError("MultiConfig: alpha must be in [0,1]");
        if (!(d_safe > 0.0)) throw ConfigError("MultiConfig: d_safe must be > 0");
        if (m_rep < 0.0) throw ConfigError("MultiConfig: m_rep must be >= 0");
        if (k_beta < 0.0) throw ConfigError("MultiConfig: k_beta must be >= 0");
        if (iso_threshold < 0.0) throw ConfigError("MultiConfig: iso_threshold must be >= 0");
        if (d_des_update_period < 0.0) throw ConfigError("MultiConfig: d_des_update_period must be >= 0");
    }
};

// Unclamped sub-command; blended and clamped before it reaches an agent.
struct SubCommand {
    double v = 0.0;
    double w = 0.0;
};

struct AggCommand {
    double v = 0.0;
    double w = 0.0;
    double sigma = 0.0;
};

// Logistic aggregation toward the group center at clearance d_des, with the
// sigma weight trading center alignment against fleeing from the pursuer.
AggCommand aggregation_cmd(const AgentState& e_i, Vec2 group_center, double d_des,
                           const AgentState& pursuer, const AgentParams& params);

// Straight-line escape from the pursuer: linear speed ramp, proportional turn.
SubCommand escape_cmd(const AgentState& e_i, const PhaseState& e_phase,
                      const AgentState& pursuer, const AgentParams& params, double t);

// Same shape as escape_cmd, steering toward the main-group center instead.
SubCommand join_cmd(const AgentState& e_i, const PhaseState& e_phase,
                    Vec2 main_center, const AgentParams& params, double t);

// exp(-k_beta * max(0, dist - eps1)): 1 inside the alert radius, decaying beyond.
double beta_weight(double dist, const MultiConfig& cfg, double eps1);

// Convex blends of (tot1)/(tot2), clamped to the agent envelope.
ControlCommand blend_main(const AggCommand& agg, const SubCommand& esc, double alpha,
                          const AgentParams& params);
ControlCommand blend_isolated(const SubCommand& joi, const SubCommand& esc, double beta,
                              const AgentParams& params);

// Long-phase chase with inter-pursuer angular repulsion inside d_safe.
ControlCommand pursuer_long_multi(const AgentState& p_j, const PhaseState& p_phase,
                                  const AgentState& target,
                                  const std::vector<AgentState>& peers,
                                  const AgentParams& params, const MultiConfig& cfg,
                                  double t, const math::MathConfig& math_cfg);

// Short-phase laws with the multi-agent turn-direction convention
// wrap(theta_pl - theta_ei) > 0.
ControlCommand evader_short_multi(const AgentState& e_i, const PhaseState& e_phase,
                                  const AgentState& closest_pursuer,
                                  const AgentParams& params, double dist, double t,
                                  const math::MathConfig& math_cfg);
ControlCommand pursuer_short_multi(const AgentState& p_j, const PhaseState& p_phase,
                                   const AgentState& target, const AgentParams& params,
                                   double w_e, double dist, double t,
                                   const math::MathConfig& math_cfg);

struct EvaderGroupInput {
    int id = 0;
    Vec2 pos;
    bool ended_short_episode = false;
};

// Moves evaders that fell behind after a turn maneuver to the isolated group,
// rejoins them once back within iso_threshold of the main-group center, and
// drops captured evaders from both groups.
GroupState classify_groups(const std::vector<EvaderGroupInput>& evaders,
                           const GroupState& prev, const std::set<int>& captured);

// Distance over closing speed; falls back to dist/V_p when the pursuer is not
// strictly faster.
double predicted_capture_time(const AgentState& p, const AgentState& e,
                              const AgentParams& params_p, const AgentParams& params_e);

struct TargetCandidate {
    int id = 0;
    AgentState state;
    AgentParams params;
};

// Periodic detection pass (every delta_t_bar): a pursuer switches targets only
// when the candidate score beats pt times the current one. Pursuers with a
// captured or missing target are reassigned immediately. Ties break toward the
// lowest evader id.
TargetingState select_targets(const std::vector<TargetCandidate>& pursuers,
                              const std::vector<TargetCandidate>& evaders,
                              const TargetingState& ts, double now);

Vec2 group_center(const std::vector<Vec2>& positions);

}  // namespace pursuit
