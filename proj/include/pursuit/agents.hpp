#pragma once

#include <string>

#include "pursuit/errors.hpp"
#include "pursuit/math.hpp"

namespace pursuit {

using math::Vec2;

enum class Role { Pursuer, Evader };

inline const char* to_string(Role r) {
    return r == Role::Pursuer ? "pursuer" : "evader";
}

struct AgentState {
    double x = 0.0;
    double y = 0.0;
    double theta = 0.0;  // wrapped to (-pi, pi]
    double v = 0.0;      // current linear speed, >= 0
    Role role = Role::Evader;
    int id = 0;

    Vec2 pos() const { return {x, y}; }
};

struct AgentParams {
    double v_max = 1.0;  // m/s
    double w_max = 1.0;  // rad/s
    double r = 0.1;      // max centripetal acceleration, m/s^2
    double a = 0.0;      // max tangential acceleration, m/s^2
    double c = 0.0;      // deceleration floor fraction, in [0,1)
    double k = 5.0;      // acot steering gain, 1/m

    void validate() const {
        if (!(v_max > 0.0)) throw ConfigError("AgentParams: v_max must be > 0");
        if (!(w_max > 0.0)) throw ConfigError("AgentParams: w_max must be > 0");
        if (!(r > 0.0)) throw ConfigError("AgentParams: r must be > 0");
        if (a < 0.0) throw ConfigError("AgentParams: a must be >= 0");
        if (!(c >= 0.0 && c < 1.0)) throw ConfigError("AgentParams: c must be in [0,1)");
        if (k < 0.0) throw ConfigError("AgentParams: k must be >= 0");
    }
};

struct ControlCommand {
    double v = 0.0;
    double w = 0.0;

    friend bool operator==(const ControlCommand&, const ControlCommand&) = default;
};

enum class Phase { Long, Short, Stopped };

inline const char* to_string(Phase p) {
    switch (p) {
        case Phase::Long: return "long";
        case Phase::Short: return "short";
        case Phase::Stopped: return "stopped";
    }
    return "?";
}

enum class SpeedBranch { Decelerating, Accelerating };
enum class AlignBranch { Aligned, Turning };

// Per-agent bookkeeping of the t_bar event semantics: t_bar and v_at_t_bar
// anchor every speed ramp v(t_bar) +/- a*(t - t_bar).
struct PhaseState {
    Phase phase = Phase::Long;
    double t_bar = 0.0;
    double v_at_t_bar = 0.0;
    SpeedBranch speed_branch = SpeedBranch::Accelerating;
    AlignBranch align_branch = AlignBranch::Turning;
};

struct StateDerivative {
    double dx = 0.0;
    double dy = 0.0;
    double dtheta = 0.0;
};

// Unicycle vector field: (v cos(theta), v sin(theta), w).
inline StateDerivative unicycle_derivative(const AgentState& s, const ControlCommand& cmd) {
    return {cmd.v * std::cos(s.theta), cmd.v * std::sin(s.theta), cmd.w};
}

}  // namespace pursuit
