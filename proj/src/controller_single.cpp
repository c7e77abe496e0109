#include "pursuit/controller_single.hpp"

#include <cmath>

namespace pursuit {

using math::acot_pos;
using math::rel_angle;
using math::sat;
using math::sat2;
using math::sgn_fin;
using math::wrap_angle;

Phase classify_phase(double dist, const EngagementConfig& cfg) {
    if (dist <= cfg.eps2) return Phase::Stopped;
    if (dist > cfg.eps1) return Phase::Long;
    return Phase::Short;
}

double turn_cap(double v, const AgentParams& params) {
    if (v <= 0.0) return params.w_max;
    return std::min(params.r / v, params.w_max);
}

namespace {

double ramp_up(const PhaseState& ps, const AgentParams& params, double t) {
    return sat(ps.v_at_t_bar + params.a * (t - ps.t_bar), params.v_max);
}

double ramp_down_floor(const PhaseState& ps, const AgentParams& params, double t) {
    return sat2(ps.v_at_t_bar - params.a * (t - ps.t_bar), params.c * params.v_max);
}

double short_phase_speed(const PhaseState& ps, const AgentParams& params, double t) {
    if (ps.speed_branch == SpeedBranch::Decelerating) {
        return sat(std::max(0.0, ps.v_at_t_bar - params.a * (t - ps.t_bar)), params.v_max);
    }
    return ramp_up(ps, params, t);
}

// Common short-phase turn magnitude: acot(k*dist)/v capped by min(r/v, w_max).
double short_turn_magnitude(double v, double dist, const AgentParams& params) {
    const double cap = turn_cap(v, params);
    if (v <= 0.0) return cap;
    return sat(acot_pos(params.k * dist) / v, cap);
}

}  // namespace

ControlCommand evader_long(const AgentState& e, const PhaseState& e_phase,
                           const AgentState& p, const AgentParams& params_e,
                           double t, const math::MathConfig& math_cfg) {
    const double v = ramp_up(e_phase, params_e, t);
    const double flee_dir = rel_angle(p.pos(), e.pos());
    const double err = wrap_angle(e.theta - flee_dir);
    const double w = -sgn_fin(err, turn_cap(v, params_e), math_cfg.gamma);
    return {v, w};
}

ControlCommand pursuer_long(const AgentState& p, const PhaseState& p_phase,
                            const AgentState& e, const AgentParams& params_p,
                            double t, const math::MathConfig& math_cfg) {
    const double v = p_phase.align_branch == AlignBranch::Aligned
                         ? ramp_up(p_phase, params_p, t)
                         : ramp_down_floor(p_phase, params_p, t);
    const double chase_dir = rel_angle(p.pos(), e.pos());
    const double err = wrap_angle(p.theta - chase_dir);
    const double w = -sgn_fin(err, turn_cap(v, params_p), math_cfg.gamma);
    return {v, w};
}

ControlCommand evader_short(const AgentState& e, const PhaseState& e_phase,
                            const AgentState& p, const AgentParams& params_e,
                            double dist, double t, const math::MathConfig&) {
    const double v = short_phase_speed(e_phase, params_e, t);
    const double mag = short_turn_magnitude(v, dist, params_e);
    const double w = wrap_angle(e.theta - p.theta) > 0.0 ? -mag : mag;
    return {v, w};
}

ControlCommand pursuer_short(const AgentState&, const PhaseState& p_phase,
                             const AgentState&, const AgentParams& params_p,
                             double w_e, double dist, double t,
                             const math::MathConfig&) {
    const double v = short_phase_speed(p_phase, params_p, t);
    const double mag = short_turn_magnitude(v, dist, params_p);
    const double s = w_e > 0.0 ? 1.0 : (w_e < 0.0 ? -1.0 : 0.0);
    return {v, s * mag};
}

PhaseState update_phase_bookkeeping(const PhaseState& prev, Phase new_phase,
                                    bool branch_flip, double t, double v) {
    if (t < prev.t_bar) {
        throw IntegrityError("update_phase_bookkeeping: time regression");
    }
    if (prev.phase == Phase::Stopped) return prev;

    PhaseState out = prev;
    const bool phase_change = new_phase != prev.phase;
    if (phase_change || branch_flip) {
        out.t_bar = t;
        out.v_at_t_bar = v;
    }
    if (phase_change) {
        if (prev.phase == Phase::Long && new_phase == Phase::Short) {
            out.speed_branch = SpeedBranch::Decelerating;
        } else if (prev.phase == Phase::Short && new_phase == Phase::Long) {
            out.speed_branch = SpeedBranch::Accelerating;
        }
        out.phase = new_phase;
    }
    return out;
}

AlignBranch update_align_branch(AlignBranch prev, double err_abs,
                                const EngagementConfig& cfg) {
    if (prev == AlignBranch::Aligned) {
        return err_abs > cfg.bar_theta + cfg.align_hysteresis ? AlignBranch::Turning
                                                              : AlignBranch::Aligned;
    }
    return err_abs <= cfg.bar_theta ? AlignBranch::Aligned : AlignBranch::Turning;
}

}  // namespace pursuit
