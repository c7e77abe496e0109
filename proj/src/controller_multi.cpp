#include "pursuit/controller_multi.hpp"

#include <algorithm>
#include <cmath>

namespace pursuit {

using math::acot_pos;
using math::distance;
using math::rel_angle;
using math::sat;
using math::sgn_fin;
using math::wrap_angle;

Vec2 group_center(const std::vector<Vec2>& positions) {
    Vec2 c;
    for (const auto& p : positions) {
        c.x += p.x;
        c.y += p.y;
    }
    const double n = static_cast<double>(positions.size());
    return {c.x / n, c.y / n};
}

AggCommand aggregation_cmd(const AgentState& e_i, Vec2 group_center, double d_des,
                           const AgentState& pursuer, const AgentParams& params) {
    const double d_ic = distance(e_i.pos(), group_center);
    const double sigma = 2.0 / (1.0 + std::exp(-(d_des * d_des - d_ic * d_ic)));

    const double toward_center =
        (e_i.x - group_center.x) * std::cos(e_i.theta) +
        (e_i.y - group_center.y) * std::sin(e_i.theta);
    const double v = std::clamp(-(1.0 - sigma) * toward_center + params.v_max,
                                0.0, params.v_max);

    const double dth_ic = rel_angle(e_i.pos(), group_center);
    const double dth_pc = rel_angle(pursuer.pos(), group_center);
    const double w = -wrap_angle(e_i.theta - (1.0 - sigma) * dth_ic - sigma * dth_pc);
    return {v, w, sigma};
}

SubCommand escape_cmd(const AgentState& e_i, const PhaseState& e_phase,
                      const AgentState& pursuer, const AgentParams& params, double t) {
    const double v = std::clamp(e_phase.v_at_t_bar + params.a * (t - e_phase.t_bar),
                                0.0, params.v_max);
    const double flee_dir = rel_angle(pursuer.pos(), e_i.pos());
    const double w = -wrap_angle(e_i.theta - flee_dir);
    return {v, w};
}

SubCommand join_cmd(const AgentState& e_i, const PhaseState& e_phase,
                    Vec2 main_center, const AgentParams& params, double t) {
    const double v = std::clamp(e_phase.v_at_t_bar + params.a * (t - e_phase.t_bar),
                                0.0, params.v_max);
    const double dth_ic = rel_angle(e_i.pos(), main_center);
    const double w = -wrap_angle(e_i.theta - dth_ic);
    return {v, w};
}

double beta_weight(double dist, const MultiConfig& cfg, double eps1) {
    return std::exp(-cfg.k_beta * std::max(0.0, dist - eps1));
}

namespace {

ControlCommand blend(double v1, double w1, double v2, double w2, double lambda,
                     const AgentParams& params) {
    const double v = (1.0 - lambda) * v1 + lambda * v2;
    const double w = (1.0 - lambda) * w1 + lambda * w2;
    return {std::clamp(v, 0.0, params.v_max), std::clamp(w, -params.w_max, params.w_max)};
}

}  // namespace

ControlCommand blend_main(const AggCommand& agg, const SubCommand& esc, double alpha,
                          const AgentParams& params) {
    return blend(agg.v, agg.w, esc.v, esc.w, alpha, params);
}

ControlCommand blend_isolated(const SubCommand& joi, const SubCommand& esc, double beta,
                              const AgentParams& params) {
    return blend(joi.v, joi.w, esc.v, esc.w, beta, params);
}

ControlCommand pursuer_long_multi(const AgentState& p_j, const PhaseState& p_phase,
                                  const AgentState& target,
                                  const std::vector<AgentState>& peers,
                                  const AgentParams& params, const MultiConfig& cfg,
                                  double t, const math::MathConfig& math_cfg) {
    const double v = p_phase.align_branch == AlignBranch::Aligned
                         ? sat(p_phase.v_at_t_bar + params.a * (t - p_phase.t_bar), params.v_max)
                         : math::sat2(p_phase.v_at_t_bar - params.a * (t - p_phase.t_bar),
                                      params.c * params.v_max);

    double repulsion = 0.0;
    for (const auto& peer : peers) {
        if (peer.id == p_j.id) continue;
        const double d = distance(p_j.pos(), peer.pos());
        if (d == 0.0) {
            throw DegenerateGeometryError("pursuer_long_multi: coincident pursuers");
        }
        if (d < cfg.d_safe) {
            repulsion += (cfg.m_rep / d) * rel_angle(p_j.pos(), peer.pos());
        }
    }

    const double chase_dir = rel_angle(p_j.pos(), target.pos());
    const double err = wrap_angle(p_j.theta - chase_dir - repulsion);
    const double w = -sgn_fin(err, turn_cap(v, params), math_cfg.gamma);
    return {v, w};
}

namespace {

double short_phase_speed(const PhaseState& ps, const AgentParams& params, double t) {
    if (ps.speed_branch == SpeedBranch::Decelerating) {
        return sat(std::max(0.0, ps.v_at_t_bar - params.a * (t - ps.t_bar)), params.v_max);
    }
    return sat(ps.v_at_t_bar + params.a * (t - ps.t_bar), params.v_max);
}

double short_turn_magnitude(double v, double dist, const AgentParams& params) {
    const double cap = turn_cap(v, params);
    if (v <= 0.0) return cap;
    return sat(acot_pos(params.k * dist) / v, cap);
}

}  // namespace

ControlCommand evader_short_multi(const AgentState& e_i, const PhaseState& e_phase,
                                  const AgentState& closest_pursuer,
                                  const AgentParams& params, double dist, double t,
                                  const math::MathConfig&) {
    const double v = short_phase_speed(e_phase, params, t);
    const double mag = short_turn_magnitude(v, dist, params);
    const double w = wrap_angle(closest_pursuer.theta - e_i.theta) > 0.0 ? -mag : mag;
    return {v, w};
}

ControlCommand pursuer_short_multi(const AgentState&, const PhaseState& p_phase,
                                   const AgentState&, const AgentParams& params,
                                   double w_e, double dist, double t,
                                   const math::MathConfig&) {
    const double v = short_phase_speed(p_phase, params, t);
    const double mag = short_turn_magnitude(v, dist, params);
    const double s = w_e > 0.0 ? 1.0 : (w_e < 0.0 ? -1.0 : 0.0);
    return {v, s * mag};
}

GroupState classify_groups(const std::vector<EvaderGroupInput>& evaders,
                           const GroupState& prev, const std::set<int>& captured) {
    GroupState out = prev;
    for (int id : captured) {
        out.main_members.erase(id);
        out.isolated_members.erase(id);
    }
    // Unknown ids default to the main group.
    for (const auto& e : evaders) {
        if (captured.count(e.id)) continue;
        if (!out.main_members.count(e.id) && !out.isolated_members.count(e.id)) {
            out.main_members.insert(e.id);
        }
    }

    auto main_center_excluding = [&](int excluded, bool& ok) {
        std::vector<Vec2> pts;
        for (const auto& e : evaders) {
            if (e.id == excluded) continue;
            if (out.main_members.count(e.id)) pts.push_back(e.pos);
        }
        ok = !pts.empty();
        return ok ? group_center(pts) : Vec2{};
    };

    // Isolation check: just finished a short-phase episode and fell behind.
    for (const auto& e : evaders) {
        if (!e.ended_short_episode || !out.main_members.count(e.id)) continue;
        bool ok = false;
        const Vec2 c = main_center_excluding(e.id, ok);
        if (ok && distance(e.pos, c) > out.iso_threshold) {
            out.main_members.erase(e.id);
            out.isolated_members.insert(e.id);
        }
    }
    // Rejoin check for isolated members.
    for (const auto& e : evaders) {
        if (!out.isolated_members.count(e.id)) continue;
        bool ok = false;
        const Vec2 c = main_center_excluding(e.id, ok);
        if (ok && distance(e.pos, c) <= out.iso_threshold) {
            out.isolated_members.erase(e.id);
            out.main_members.insert(e.id);
        }
    }
    return out;
}

double predicted_capture_time(const AgentState& p, const AgentState& e,
                              const AgentParams& params_p, const AgentParams& params_e) {
    if (params_p.v_max <= 0.0) {
        throw ConfigError("predicted_capture_time: pursuer v_max must be > 0");
    }
    const double d = distance(p.pos(), e.pos());
    if (d == 0.0) {
        throw DegenerateGeometryError("predicted_capture_time: coincident agents");
    }
    const double closing = params_p.v_max - params_e.v_max;
    return closing > 0.0 ? d / closing : d / params_p.v_max;
}

TargetingState select_targets(const std::vector<TargetCandidate>& pursuers,
                              const std::vector<TargetCandidate>& evaders,
                              const TargetingState& ts, double now) {
    if (now < ts.last_detection_time) {
        throw IntegrityError("select_targets: time regression");
    }
    TargetingState out = ts;

    std::vector<const TargetCandidate*> alive;
    for (const auto& e : evaders) {
        if (!ts.captured.count(e.id)) alive.push_back(&e);
    }
    if (alive.empty()) return out;

    auto score = [&](const TargetCandidate& p, const TargetCandidate& e) {
        if (ts.selection_rule == SelectionRule::ClosestDistance) {
            return distance(p.state.pos(), e.state.pos());
        }
        return predicted_capture_time(p.state, e.state, p.params, e.params);
    };
    auto best_for = [&](const TargetCandidate& p) {
        const TargetCandidate* best = nullptr;
        double best_score = 0.0;
        for (const auto* e : alive) {
            const double s = score(p, *e);
            if (!best || s < best_score || (s == best_score && e->id < best->id)) {
                best = e;
                best_score = s;
            }
        }
        return std::pair{best, best_score};
    };

    const bool detection_due = now - ts.last_detection_time >= ts.delta_t_bar;
    if (detection_due) out.last_detection_time = now;

    for (const auto& p : pursuers) {
        const auto it = out.target_of.find(p.id);
        const bool has_valid = it != out.target_of.end() && !ts.captured.count(it->second);
        auto [best, best_score] = best_for(p);
        if (!has_valid) {
            out.target_of[p.id] = best->id;
            continue;
        }
        if (!detection_due || best->id == it->second) continue;
        const TargetCandidate* old_e = nullptr;
        for (const auto* e : alive) {
            if (e->id == it->second) old_e = e;
        }
        if (old_e && best_score < ts.pt * score(p, *old_e)) {
            out.target_of[p.id] = best->id;
        }
    }
    return out;
}

}  // namespace pursuit
