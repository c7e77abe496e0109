#include "pursuit/engine.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace pursuit {

using math::distance;
using math::wrap_angle;

void Scenario::validate() const {
    if (!(dt > 0.0)) throw ConfigError("Scenario: dt must be > 0");
    if (!(t_f > dt)) throw ConfigError("Scenario: t_f must be > dt");
    engagement.validate();
    math_cfg.validate();
    multi.validate();
    if (count(Role::Pursuer) < 1 || count(Role::Evader) < 1) {
        throw ConfigError("Scenario: need at least one pursuer and one evader");
    }
    if (mode == Mode::SingleVsSingle && agents.size() != 2) {
        throw ConfigError("Scenario: single mode requires exactly one pursuer and one evader");
    }
    std::set<int> ids;
    for (const auto& a : agents) {
        a.params.validate();
        if (a.initial.v < 0.0) throw ConfigError("Scenario: initial speed must be >= 0");
        if (a.initial.v > a.params.v_max) throw ConfigError("Scenario: initial speed exceeds v_max");
        if (!ids.insert(a.initial.id).second) throw ConfigError("Scenario: duplicate agent id");
    }
    if (targeting_seed.n_targets < 0 || targeting_seed.n_targets > count(Role::Evader)) {
        throw ConfigError("Scenario: n_targets out of range");
    }
    if (!(targeting_seed.pt > 0.0)) throw ConfigError("Scenario: pt must be > 0");
    if (!(targeting_seed.delta_t_bar >= 0.0)) throw ConfigError("Scenario: delta_t_bar must be >= 0");
}

int Scenario::count(Role role) const {
    int n = 0;
    for (const auto& a : agents) {
        if (a.initial.role == role) ++n;
    }
    return n;
}

const char* to_string(EventKind k) {
    switch (k) {
        case EventKind::AlertEntered: return "alert_entered";
        case EventKind::AlertExited: return "alert_exited";
        case EventKind::Captured: return "captured";
        case EventKind::TargetSwitched: return "target_switched";
        case EventKind::Isolated: return "isolated";
        case EventKind::Rejoined: return "rejoined";
    }
    return "?";
}

World::World(const Scenario& scenario, bool record_steps)
    : scenario_(scenario), record_steps_(record_steps) {
    scenario_.validate();

    for (const auto& spec : scenario_.agents) {
        AgentState s = spec.initial;
        s.theta = wrap_angle(s.theta);
        index_of_[s.id] = static_cast<int>(states_.size());
        states_.push_back(s);
        params_.push_back(spec.params);
        PhaseState ps;
        ps.phase = Phase::Long;
        ps.t_bar = 0.0;
        ps.v_at_t_bar = s.v;
        phase_states_.push_back(ps);
        last_commands_.push_back({0.0, 0.0});
        frozen_.push_back(false);
        ended_short_episode_.push_back(false);
        if (s.role == Role::Pursuer) {
            pursuer_idx_.push_back(index_of_[s.id]);
        } else {
            evader_idx_.push_back(index_of_[s.id]);
        }
    }

    // Desired clearances from the initial configuration of the evader group.
    group_.main_members.clear();
    if (evader_idx_.size() >= 2) {
        std::vector<Vec2> pts;
        for (int i : evader_idx_) pts.push_back(states_[i].pos());
        const Vec2 c = group_center(pts);
        double sum = 0.0;
        for (int i : evader_idx_) {
            group_.main_members.insert(states_[i].id);
            const double d = distance(states_[i].pos(), c);
            group_.d_des[states_[i].id] = d;
            sum += d;
        }
        const double mean = sum / static_cast<double>(evader_idx_.size());
        group_.iso_threshold =
            scenario_.multi.iso_threshold > 0.0 ? scenario_.multi.iso_threshold : 2.0 * mean;
    } else {
        for (int i : evader_idx_) group_.main_members.insert(states_[i].id);
        group_.iso_threshold = scenario_.multi.iso_threshold;
    }

    targeting_ = scenario_.targeting_seed;
    if (targeting_.n_targets == 0) {
        targeting_.n_targets = static_cast<int>(evader_idx_.size());
    }

    trace_.t_f = scenario_.t_f;
    for (int p : pursuer_idx_) {
        for (int e : evader_idx_) {
            trace_.min_distance[{states_[p].id, states_[e].id}] =
                distance(states_[p].pos(), states_[e].pos());
        }
    }
    for (int e : evader_idx_) {
        trace_.captured[states_[e].id] = false;
        trace_.capture_time[states_[e].id] = scenario_.t_f;
    }
    trace_.full_capture_time = scenario_.t_f;
}

int World::closest_active_pursuer(int evader_idx) const {
    int best = -1;
    double best_d = std::numeric_limits<double>::infinity();
    bool best_active = false;
    for (int p : pursuer_idx_) {
        const bool active = !frozen_[p];
        const double d = distance(states_[p].pos(), states_[evader_idx].pos());
        // Active pursuers take precedence; frozen ones only as fallback.
        if ((active && !best_active) || (active == best_active && d < best_d)) {
            best = p;
            best_d = d;
            best_active = active;
        }
    }
    return best;
}

Vec2 World::main_group_center(int excluding_id) const {
    std::vector<Vec2> pts;
    for (int e : evader_idx_) {
        const int id = states_[e].id;
        if (id == excluding_id) continue;
        if (group_.main_members.count(id)) pts.push_back(states_[e].pos());
    }
    if (pts.empty()) return {};
    return group_center(pts);
}

void World::reset_bookkeeping(int idx) {
    phase_states_[idx].t_bar = t_;
    phase_states_[idx].v_at_t_bar = states_[idx].v;
}

void World::emit_command_envelope_check(int idx, const ControlCommand& cmd) const {
    const auto& p = params_[idx];
    constexpr double tol = 1e-9;
    if (cmd.v < -tol || cmd.v > p.v_max + tol || std::abs(cmd.w) > p.w_max + tol) {
        throw IntegrityError("command envelope violated for agent " +
                             std::to_string(states_[idx].id));
    }
}

void World::detection_pass() {
    std::vector<TargetCandidate> pursuers, evaders;
    for (int p : pursuer_idx_) {
        if (frozen_[p]) continue;
        pursuers.push_back({states_[p].id, states_[p], params_[p]});
    }
    for (int e : evader_idx_) {
        evaders.push_back({states_[e].id, states_[e], params_[e]});
    }
    if (pursuers.empty()) return;

    const auto before = targeting_.target_of;
    targeting_ = select_targets(pursuers, evaders, targeting_, t_);
    for (const auto& [pid, tid] : targeting_.target_of) {
        const auto it = before.find(pid);
        if (it == before.end() || it->second != tid) {
            if (it != before.end()) {
                trace_.events.push_back({t_, EventKind::TargetSwitched, {pid, tid}});
            }
            // New geometry: restart the ramp anchors of the switching pursuer.
            reset_bookkeeping(index_of_.at(pid));
        }
    }
}

void World::update_groups() {
    if (evader_idx_.size() < 2) return;

    if (scenario_.multi.d_des_update_period > 0.0 &&
        t_ - last_d_des_refresh_ >= scenario_.multi.d_des_update_period) {
        const Vec2 c = main_group_center(-1);
        for (int e : evader_idx_) {
            const int id = states_[e].id;
            if (group_.main_members.count(id)) {
                group_.d_des[id] = distance(states_[e].pos(), c);
            }
        }
        last_d_des_refresh_ = t_;
    }

    std::vector<EvaderGroupInput> inputs;
    for (int e : evader_idx_) {
        inputs.push_back({states_[e].id, states_[e].pos(), ended_short_episode_[e]});
        ended_short_episode_[e] = false;
    }
    const GroupState next = classify_groups(inputs, group_, targeting_.captured);
    for (int id : next.isolated_members) {
        if (!group_.isolated_members.count(id)) {
            trace_.events.push_back({t_, EventKind::Isolated, {id}});
        }
    }
    for (int id : next.main_members) {
        if (group_.isolated_members.count(id)) {
            trace_.events.push_back({t_, EventKind::Rejoined, {id}});
        }
    }
    group_ = next;
}

void World::classify_and_bookkeep() {
    auto apply = [&](int idx, Phase new_phase, int pair_pursuer, int pair_evader) {
        PhaseState& ps = phase_states_[idx];
        const Phase prev_phase = ps.phase;
        bool branch_flip = false;
        SpeedBranch new_speed = ps.speed_branch;
        AlignBranch new_align = ps.align_branch;

        if (new_phase == Phase::Short && prev_phase == Phase::Short &&
            ps.speed_branch == SpeedBranch::Decelerating &&
            speed_floor_reached(states_[idx].v, params_[idx])) {
            new_speed = SpeedBranch::Accelerating;
            branch_flip = true;
        }
        if (new_phase == Phase::Long && states_[idx].role == Role::Pursuer) {
            const int tgt = pair_evader;
            if (tgt >= 0) {
                const double err = std::abs(wrap_angle(
                    states_[idx].theta -
                    math::rel_angle(states_[idx].pos(), states_[tgt].pos())));
                new_align = update_align_branch(ps.align_branch, err, scenario_.engagement);
                if (new_align != ps.align_branch && prev_phase == Phase::Long) {
                    branch_flip = true;
                }
            }
        }

        ps = update_phase_bookkeeping(ps, new_phase, branch_flip, t_, states_[idx].v);
        if (prev_phase == Phase::Short && new_phase == Phase::Short) {
            ps.speed_branch = new_speed;  // latch flip, if any
        }
        ps.align_branch = new_align;

        if (states_[idx].role == Role::Evader && prev_phase == Phase::Short &&
            new_phase == Phase::Long) {
            ended_short_episode_[idx] = true;
        }
        if (pair_pursuer >= 0 && states_[idx].role == Role::Evader) {
            if (prev_phase == Phase::Long && new_phase == Phase::Short) {
                trace_.events.push_back({t_, EventKind::AlertEntered,
                                         {states_[pair_pursuer].id, states_[idx].id}});
            } else if (prev_phase == Phase::Short && new_phase == Phase::Long) {
                trace_.events.push_back({t_, EventKind::AlertExited,
                                         {states_[pair_pursuer].id, states_[idx].id}});
            }
        }
    };

    if (scenario_.mode == Mode::SingleVsSingle ||
        (pursuer_idx_.size() == 1 && evader_idx_.size() == 1)) {
        const int p = pursuer_idx_[0], e = evader_idx_[0];
        if (frozen_[p] || frozen_[e]) return;
        const double d = distance(states_[p].pos(), states_[e].pos());
        Phase phase = classify_phase(d, scenario_.engagement);
        if (phase == Phase::Stopped) phase = Phase::Short;  // capture fires post-step
        apply(e, phase, p, -1);
        apply(p, phase, -1, e);
        return;
    }

    // Multi mode: evader phase from the closest pursuer, pursuer phase from
    // its target's phase.
    for (int e : evader_idx_) {
        if (frozen_[e]) continue;
        const int p = closest_active_pursuer(e);
        if (p < 0) continue;
        const double d = distance(states_[p].pos(), states_[e].pos());
        Phase phase = classify_phase(d, scenario_.engagement);
        if (phase == Phase::Stopped) phase = Phase::Short;
        apply(e, phase, p, -1);
    }
    for (int p : pursuer_idx_) {
        if (frozen_[p]) continue;
        const auto it = targeting_.target_of.find(states_[p].id);
        if (it == targeting_.target_of.end()) continue;
        const int e = index_of_.at(it->second);
        apply(p, phase_states_[e].phase, -1, e);
    }
}

std::vector<ControlCommand> World::compute_commands() const {
    std::vector<ControlCommand> cmds(states_.size());

    const bool one_on_one = pursuer_idx_.size() == 1 && evader_idx_.size() == 1;
    if (scenario_.mode == Mode::SingleVsSingle || one_on_one) {
        const int p = pursuer_idx_[0], e = evader_idx_[0];
        if (frozen_[p] || frozen_[e]) return cmds;
        const double d = distance(states_[p].pos(), states_[e].pos());
        if (phase_states_[e].phase == Phase::Long) {
            cmds[e] = evader_long(states_[e], phase_states_[e], states_[p], params_[e],
                                  t_, scenario_.math_cfg);
            cmds[p] = pursuer_long(states_[p], phase_states_[p], states_[e], params_[p],
                                   t_, scenario_.math_cfg);
        } else {
            cmds[e] = evader_short(states_[e], phase_states_[e], states_[p], params_[e],
                                   d, t_, scenario_.math_cfg);
            cmds[p] = pursuer_short(states_[p], phase_states_[p], states_[e], params_[p],
                                    cmds[e].w, d, t_, scenario_.math_cfg);
        }
        return cmds;
    }

    int alive_evaders = 0;
    for (int e : evader_idx_) {
        if (!targeting_.captured.count(states_[e].id)) ++alive_evaders;
    }

    // Evaders first: pursuer short-phase commands consume this step's w_e.
    for (int e : evader_idx_) {
        if (frozen_[e]) continue;
        const int p = closest_active_pursuer(e);
        if (p < 0) continue;
        const double d = distance(states_[p].pos(), states_[e].pos());
        const int id = states_[e].id;

        if (phase_states_[e].phase == Phase::Short) {
            cmds[e] = evader_short_multi(states_[e], phase_states_[e], states_[p],
                                         params_[e], d, t_, scenario_.math_cfg);
            continue;
        }
        const SubCommand esc = escape_cmd(states_[e], phase_states_[e], states_[p],
                                          params_[e], t_);
        const bool in_main = group_.main_members.count(id) > 0;
        if (alive_evaders <= 1) {
            cmds[e] = blend_isolated(esc, esc, 1.0, params_[e]);
        } else if (in_main) {
            std::vector<Vec2> pts;
            for (int m : evader_idx_) {
                if (group_.main_members.count(states_[m].id)) pts.push_back(states_[m].pos());
            }
            const Vec2 center = group_center(pts);
            // A one-member group (or an evader sitting exactly on the center)
            // has no aggregation direction; fall back to pure escape.
            if (pts.size() < 2 || distance(states_[e].pos(), center) == 0.0) {
                cmds[e] = blend_isolated(esc, esc, 1.0, params_[e]);
            } else {
                const AggCommand agg = aggregation_cmd(states_[e], center,
                                                       group_.d_des.at(id), states_[p],
                                                       params_[e]);
                cmds[e] = blend_main(agg, esc, scenario_.multi.alpha, params_[e]);
            }
        } else {
            bool has_main = !group_.main_members.empty();
            if (!has_main) {
                cmds[e] = blend_isolated(esc, esc, 1.0, params_[e]);
            } else {
                const SubCommand joi = join_cmd(states_[e], phase_states_[e],
                                                main_group_center(id), params_[e], t_);
                const double beta =
                    beta_weight(d, scenario_.multi, scenario_.engagement.eps1);
                cmds[e] = blend_isolated(joi, esc, beta, params_[e]);
            }
        }
    }

    std::vector<AgentState> active_pursuers;
    for (int p : pursuer_idx_) {
        if (!frozen_[p]) active_pursuers.push_back(states_[p]);
    }
    for (int p : pursuer_idx_) {
        if (frozen_[p]) continue;
        const auto it = targeting_.target_of.find(states_[p].id);
        if (it == targeting_.target_of.end()) continue;
        const int e = index_of_.at(it->second);
        const double d = distance(states_[p].pos(), states_[e].pos());
        if (phase_states_[p].phase == Phase::Long) {
            cmds[p] = pursuer_long_multi(states_[p], phase_states_[p], states_[e],
                                         active_pursuers, params_[p], scenario_.multi,
                                         t_, scenario_.math_cfg);
        } else {
            cmds[p] = pursuer_short_multi(states_[p], phase_states_[p], states_[e],
                                          params_[p], cmds[e].w, d, t_,
                                          scenario_.math_cfg);
        }
    }
    return cmds;
}

void World::integrate(const std::vector<ControlCommand>& cmds) {
    const double h = scenario_.dt;
    for (std::size_t i = 0; i < states_.size(); ++i) {
        if (frozen_[i]) continue;
        emit_command_envelope_check(static_cast<int>(i), cmds[i]);
        AgentState& s = states_[i];
        if (scenario_.integrator == Integrator::Euler) {
            const StateDerivative d = unicycle_derivative(s, cmds[i]);
            s.x += h * d.dx;
            s.y += h * d.dy;
            s.theta = wrap_angle(s.theta + h * d.dtheta);
        } else {
            auto f = [&](double theta) {
                return StateDerivative{cmds[i].v * std::cos(theta),
                                       cmds[i].v * std::sin(theta), cmds[i].w};
            };
            const StateDerivative k1 = f(s.theta);
            const StateDerivative k2 = f(s.theta + 0.5 * h * k1.dtheta);
            const StateDerivative k3 = f(s.theta + 0.5 * h * k2.dtheta);
            const StateDerivative k4 = f(s.theta + h * k3.dtheta);
            s.x += h / 6.0 * (k1.dx + 2.0 * k2.dx + 2.0 * k3.dx + k4.dx);
            s.y += h / 6.0 * (k1.dy + 2.0 * k2.dy + 2.0 * k3.dy + k4.dy);
            s.theta = wrap_angle(s.theta + h * cmds[i].w);
        }
        s.v = cmds[i].v;
        last_commands_[i] = cmds[i];
    }
    check_finite();
}

void World::check_finite() const {
    for (const auto& s : states_) {
        if (!std::isfinite(s.x) || !std::isfinite(s.y) || !std::isfinite(s.theta) ||
            !std::isfinite(s.v)) {
            throw IntegrityError("non-finite state for agent " + std::to_string(s.id) +
                                 " at t=" + std::to_string(t_));
        }
    }
}

void World::capture_check() {
    for (int e : evader_idx_) {
        const int eid = states_[e].id;
        if (targeting_.captured.count(eid)) continue;
        int capturer = -1;
        double best = std::numeric_limits<double>::infinity();
        for (int p : pursuer_idx_) {
            if (frozen_[p]) continue;
            const double d = distance(states_[p].pos(), states_[e].pos());
            if (d < best) {
                best = d;
                capturer = p;
            }
        }
        if (capturer < 0 || best > scenario_.engagement.eps2) continue;

        targeting_.captured.insert(eid);
        targeting_.n_captured += 1;
        frozen_[e] = true;
        phase_states_[e].phase = Phase::Stopped;
        trace_.captured[eid] = true;
        trace_.capture_time[eid] = t_;
        trace_.events.push_back({t_, EventKind::Captured, {states_[capturer].id, eid}});

        const bool single_pair = pursuer_idx_.size() == 1 && evader_idx_.size() == 1;
        if (scenario_.mode == Mode::SingleVsSingle || single_pair) {
            frozen_[capturer] = true;
            phase_states_[capturer].phase = Phase::Stopped;
        } else if (targeting_.post_capture_behavior == PostCaptureBehavior::Stop) {
            frozen_[capturer] = true;
            phase_states_[capturer].phase = Phase::Stopped;
            targeting_.target_of.erase(states_[capturer].id);
        }
        // Other pursuers chasing this evader are reassigned next detection call.
        for (auto it = targeting_.target_of.begin(); it != targeting_.target_of.end();) {
            if (it->second == eid) {
                it = targeting_.target_of.erase(it);
            } else {
                ++it;
            }
        }
    }
    if (targeting_.n_captured >= targeting_.n_targets) {
        trace_.all_targets_captured = true;
        trace_.full_capture_time = t_;
        finished_ = true;
        for (std::size_t i = 0; i < frozen_.size(); ++i) {
            if (!frozen_[i]) {
                frozen_[i] = true;
                phase_states_[i].phase = Phase::Stopped;
            }
        }
    }
}

void World::record(const std::vector<ControlCommand>& cmds) {
    if (!record_steps_) return;
    for (std::size_t i = 0; i < states_.size(); ++i) {
        const AgentState& s = states_[i];
        int target = -1;
        if (s.role == Role::Pursuer) {
            const auto it = targeting_.target_of.find(s.id);
            if (it != targeting_.target_of.end()) target = it->second;
        }
        trace_.records.push_back({t_, s.id, s.role, s.x, s.y, s.theta, cmds[i].v,
                                  cmds[i].w, phase_states_[i].phase, target});
    }
}

void World::step() {
    if (finished_) return;

    const bool multi = scenario_.mode == Mode::Multi;
    if (multi) {
        detection_pass();
        update_groups();
    }
    classify_and_bookkeep();
    const auto cmds = compute_commands();
    record(cmds);
    integrate(cmds);
    t_ += scenario_.dt;

    for (int p : pursuer_idx_) {
        for (int e : evader_idx_) {
            auto& m = trace_.min_distance[{states_[p].id, states_[e].id}];
            m = std::min(m, distance(states_[p].pos(), states_[e].pos()));
        }
    }
    capture_check();
    if (t_ >= scenario_.t_f - 0.5 * scenario_.dt) finished_ = true;
}

SimTrace World::finish_trace() {
    if (record_steps_) {
        for (std::size_t i = 0; i < states_.size(); ++i) {
            const AgentState& s = states_[i];
            int target = -1;
            if (s.role == Role::Pursuer) {
                const auto it = targeting_.target_of.find(s.id);
                if (it != targeting_.target_of.end()) target = it->second;
            }
            trace_.records.push_back({t_, s.id, s.role, s.x, s.y, s.theta, 0.0, 0.0,
                                      phase_states_[i].phase, target});
        }
    }
    return std::move(trace_);
}

SimTrace run(const Scenario& scenario, bool record_steps) {
    World world(scenario, record_steps);
    while (!world.finished()) world.step();
    return world.finish_trace();
}

double min_distance(const SimTrace& trace, int pursuer_id, int evader_id) {
    const auto it = trace.min_distance.find({pursuer_id, evader_id});
    if (it == trace.min_distance.end()) {
        throw ConfigError("min_distance: unknown pursuer-evader pair");
    }
    return it->second;
}

}  // namespace pursuit
