#pragma once

#include "pursuit/agents.hpp"
#include "pursuit/math.hpp"

namespace pursuit {

struct EngagementConfig {
    double eps1 = 1.4;              // alert distance
    double eps2 = 0.04;             // capture radius
    double bar_theta = 0.1;         // pursuer alignment threshold
    double align_hysteresis = 0.02; // extra band before Aligned -> Turning

    void validate() const {
        if (!(eps2 < eps1)) throw ConfigError("EngagementConfig: eps2 must be < eps1");
        if (!(eps2 >= 0.0)) throw ConfigError("EngagementConfig: eps2 must be >= 0");
        if (!(bar_theta > 0.0)) throw ConfigError("EngagementConfig: bar_theta must be > 0");
        if (align_hysteresis < 0.0) throw ConfigError("EngagementConfig: align_hysteresis must be >= 0");
    }
};

// Stopped if dist <= eps2, Long if dist > eps1, Short otherwise.
Phase classify_phase(double dist, const EngagementConfig& cfg);

// Long-distance escape: flee along the pursuer->evader line at a saturated
// acceleration ramp, finite-time steering toward the fleeing direction.
ControlCommand evader_long(const AgentState& e, const PhaseState& e_phase,
                           const AgentState& p, const AgentParams& params_e,
                           double t, const math::MathConfig& math_cfg);

// Long-distance chase: accelerate when aligned with the target within
// bar_theta, otherwise decelerate to the c_p*V_p^max floor while turning.
// The active branch is read from p_phase.align_branch.
ControlCommand pursuer_long(const AgentState& p, const PhaseState& p_phase,
                            const AgentState& e, const AgentParams& params_p,
                            double t, const math::MathConfig& math_cfg);

// Short-distance maneuver: latched decelerate-then-accelerate speed profile,
// turn direction from the sign of wrap(theta_e - theta_p).
ControlCommand evader_short(const AgentState& e, const PhaseState& e_phase,
                            const AgentState& p, const AgentParams& params_e,
                            double dist, double t, const math::MathConfig& math_cfg);

// Short-distance chase: same speed profile with pursuer constants; the turn
// direction copies the sign of the evader command of this step.
ControlCommand pursuer_short(const AgentState& p, const PhaseState& p_phase,
                             const AgentState& e, const AgentParams& params_p,
                             double w_e, double dist, double t,
                             const math::MathConfig& math_cfg);

// Resets t_bar/v_at_t_bar on phase changes and branch flips; latches the
// speed branch to Decelerating on Long->Short entry and Accelerating on
// Short->Long entry. Stopped is absorbing.
PhaseState update_phase_bookkeeping(const PhaseState& prev, Phase new_phase,
                                    bool branch_flip, double t, double v);

// Hysteretic alignment branch: enter Aligned at err <= bar_theta, leave only
// beyond bar_theta + align_hysteresis.
AlignBranch update_align_branch(AlignBranch prev, double err_abs,
                                const EngagementConfig& cfg);

// Trigger for the short-phase latch flip Decelerating -> Accelerating.
inline bool speed_floor_reached(double v, const AgentParams& params) {
    return v <= params.c * params.v_max;
}

// Angular-speed cap min(r/v, w_max), with the v -> 0 limit taken as w_max.
double turn_cap(double v, const AgentParams& params);

}  // namespace pursuit
