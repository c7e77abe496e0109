#include <doctest.h>

#include <cmath>
#include <random>

#include "pursuit/controller_single.hpp"
#include "pursuit/errors.hpp"

using namespace pursuit;
using math::kPi;

namespace {

AgentParams evader_params() {
    AgentParams p;
    p.v_max = 0.6;
    p.w_max = 2.0;
    p.r = 0.2;
    p.a = 0.25;
    p.c = 0.1;
    p.k = 5.0;
    return p;
}

AgentParams pursuer_params() {
    AgentParams p;
    p.v_max = 1.2;
    p.w_max = 1.0;
    p.r = 0.1;
    p.a = 0.6;
    p.c = 0.3;
    p.k = 5.0;
    return p;
}

}  // namespace

TEST_CASE("classify_phase thresholds") {
    EngagementConfig cfg;
    cfg.eps1 = 1.4;
    cfg.eps2 = 0.04;
    CHECK(classify_phase(0.03, cfg) == Phase::Stopped);
    CHECK(classify_phase(2.0, cfg) == Phase::Long);
    CHECK(classify_phase(1.4, cfg) == Phase::Short);  // boundary belongs to Short
    CHECK(classify_phase(0.04, cfg) == Phase::Stopped);
    CHECK(classify_phase(0.5, cfg) == Phase::Short);
}

TEST_CASE("turn_cap") {
    AgentParams p = evader_params();
    CHECK(turn_cap(0.0, p) == p.w_max);
    CHECK(turn_cap(0.45, p) == doctest::Approx(0.2 / 0.45));
    CHECK(turn_cap(0.05, p) == p.w_max);  // r/v = 4 > w_max
}

TEST_CASE("evader_long aligned flee") {
    AgentParams params = evader_params();
    params.a = 0.3;
    AgentState e{0.0, 1.0, kPi / 2, 0.3, Role::Evader, 1};
    AgentState p{0.0, 0.0, kPi / 2, 0.0, Role::Pursuer, 0};
    PhaseState ps;
    ps.t_bar = 0.0;
    ps.v_at_t_bar = 0.3;
    const auto cmd = evader_long(e, ps, p, params, 0.5, {});
    CHECK(cmd.v == doctest::Approx(0.45));
    CHECK(cmd.w == 0.0);
}

TEST_CASE("evader_long misaligned finite-time steering") {
    AgentParams params = evader_params();
    params.a = 0.3;
    AgentState e{0.0, 1.0, kPi / 2 + 0.1, 0.45, Role::Evader, 1};
    AgentState p{0.0, 0.0, kPi / 2, 0.0, Role::Pursuer, 0};
    PhaseState ps;
    ps.v_at_t_bar = 0.3;
    const auto cmd = evader_long(e, ps, p, params, 0.5, {});
    CHECK(cmd.v == doctest::Approx(0.45));
    // cap = min(0.2/0.45, 2) = 0.4444; |0.1| <= cap^2 so w = -0.1^0.5
    CHECK(cmd.w == doctest::Approx(-std::sqrt(0.1)).epsilon(1e-9));
}

TEST_CASE("evader_long saturation at v_max") {
    AgentParams params = evader_params();
    AgentState e{0.0, 1.0, kPi / 2, 0.6, Role::Evader, 1};
    AgentState p{0.0, 0.0, 0.0, 0.0, Role::Pursuer, 0};
    PhaseState ps;
    ps.v_at_t_bar = 0.6;
    for (double t : {0.1, 1.0, 10.0}) {
        CHECK(evader_long(e, ps, p, params, t, {}).v == 0.6);
    }
}

TEST_CASE("evader_long coincident positions throw") {
    AgentState e{1.0, 1.0, 0.0, 0.0, Role::Evader, 1};
    AgentState p{1.0, 1.0, 0.0, 0.0, Role::Pursuer, 0};
    CHECK_THROWS_AS(evader_long(e, {}, p, evader_params(), 0.0, {}),
                    DegenerateGeometryError);
}

TEST_CASE("pursuer_long speed branches") {
    AgentParams params = pursuer_params();
    AgentState p{0.0, 0.0, 0.5, 1.2, Role::Pursuer, 0};
    AgentState e{10.0, 0.0, 0.0, 0.0, Role::Evader, 1};
    PhaseState ps;
    ps.v_at_t_bar = 1.2;
    ps.align_branch = AlignBranch::Turning;

    CHECK(pursuer_long(p, ps, e, params, 1.0, {}).v == doctest::Approx(0.6));
    CHECK(pursuer_long(p, ps, e, params, 2.0, {}).v == doctest::Approx(0.36));
    CHECK(pursuer_long(p, ps, e, params, 5.0, {}).v == doctest::Approx(0.36));

    ps.align_branch = AlignBranch::Aligned;
    CHECK(pursuer_long(p, ps, e, params, 1.0, {}).v == doctest::Approx(1.2));
}

TEST_CASE("evader_short speed and turn") {
    AgentParams params = evader_params();
    params.a = 0.3;
    PhaseState ps;
    ps.phase = Phase::Short;
    ps.speed_branch = SpeedBranch::Decelerating;
    ps.v_at_t_bar = 0.5;

    AgentState e{0.0, 0.5, 0.4, 0.35, Role::Evader, 1};
    AgentState p{0.0, 0.0, 0.1, 1.0, Role::Pursuer, 0};
    const auto cmd = evader_short(e, ps, p, params, 0.5, 0.5, {});
    CHECK(cmd.v == doctest::Approx(0.35));
    // acot(2.5)/0.35 = 1.0872 saturates at cap = min(0.2/0.35, 2) = 0.5714
    CHECK(cmd.w == doctest::Approx(-0.2 / 0.35).epsilon(1e-9));

    AgentState e2 = e;
    e2.theta = -0.4;
    AgentState p2 = p;
    p2.theta = -0.1;
    const auto cmd2 = evader_short(e2, ps, p2, params, 0.5, 0.5, {});
    CHECK(cmd2.w == doctest::Approx(0.2 / 0.35).epsilon(1e-9));
}

TEST_CASE("evader_short latched acceleration branch") {
    AgentParams params = evader_params();
    PhaseState ps;
    ps.phase = Phase::Short;
    ps.speed_branch = SpeedBranch::Accelerating;
    ps.t_bar = 2.0;
    ps.v_at_t_bar = 0.06;
    AgentState e{0.0, 0.5, 0.4, 0.06, Role::Evader, 1};
    AgentState p{0.0, 0.0, 0.1, 1.0, Role::Pursuer, 0};
    const auto cmd = evader_short(e, ps, p, params, 0.5, 3.0, {});
    CHECK(cmd.v == doctest::Approx(0.06 + 0.25));
}

TEST_CASE("pursuer_short copies evader turn direction") {
    AgentParams params = pursuer_params();
    PhaseState ps;
    ps.phase = Phase::Short;
    ps.speed_branch = SpeedBranch::Decelerating;
    ps.v_at_t_bar = 1.0;
    AgentState p{0.0, 0.0, 0.1, 1.0, Role::Pursuer, 0};
    AgentState e{0.0, 0.5, 0.4, 0.35, Role::Evader, 1};

    const auto neg = pursuer_short(p, ps, e, params, -0.57, 0.5, 0.0, {});
    CHECK(neg.v == doctest::Approx(1.0));   // decelerating branch active, t = t_bar
    CHECK(neg.w == doctest::Approx(-0.1));  // cap = min(0.1/1.0, 1) binds

    const auto zero = pursuer_short(p, ps, e, params, 0.0, 0.5, 0.0, {});
    CHECK(zero.w == 0.0);

    const auto pos = pursuer_short(p, ps, e, params, 0.57, 0.5, 0.0, {});
    CHECK(pos.w == doctest::Approx(0.1));
}

TEST_CASE("update_phase_bookkeeping transitions") {
    PhaseState ps;
    ps.phase = Phase::Long;
    ps.t_bar = 1.0;
    ps.v_at_t_bar = 0.2;

    SUBCASE("long to short resets and latches decelerating") {
        const auto out = update_phase_bookkeeping(ps, Phase::Short, false, 3.45, 0.55);
        CHECK(out.phase == Phase::Short);
        CHECK(out.t_bar == 3.45);
        CHECK(out.v_at_t_bar == 0.55);
        CHECK(out.speed_branch == SpeedBranch::Decelerating);
    }
    SUBCASE("identity without transitions") {
        const auto out = update_phase_bookkeeping(ps, Phase::Long, false, 2.0, 0.5);
        CHECK(out.t_bar == ps.t_bar);
        CHECK(out.v_at_t_bar == ps.v_at_t_bar);
        CHECK(out.phase == Phase::Long);
    }
    SUBCASE("branch flip resets the ramp anchor") {
        ps.phase = Phase::Short;
        const auto out = update_phase_bookkeeping(ps, Phase::Short, true, 5.0, 0.06);
        CHECK(out.t_bar == 5.0);
        CHECK(out.v_at_t_bar == 0.06);
    }
    SUBCASE("short to long latches accelerating") {
        ps.phase = Phase::Short;
        ps.speed_branch = SpeedBranch::Decelerating;
        const auto out = update_phase_bookkeeping(ps, Phase::Long, false, 4.0, 0.1);
        CHECK(out.speed_branch == SpeedBranch::Accelerating);
    }
    SUBCASE("stopped is absorbing") {
        ps.phase = Phase::Stopped;
        const auto out = update_phase_bookkeeping(ps, Phase::Long, true, 9.0, 0.5);
        CHECK(out.phase == Phase::Stopped);
        CHECK(out.t_bar == 1.0);
    }
    SUBCASE("time regression throws") {
        CHECK_THROWS_AS(update_phase_bookkeeping(ps, Phase::Long, false, 0.5, 0.1),
                        IntegrityError);
    }
}

TEST_CASE("update_align_branch hysteresis") {
    EngagementConfig cfg;  // bar_theta 0.1, hysteresis 0.02
    CHECK(update_align_branch(AlignBranch::Turning, 0.09, cfg) == AlignBranch::Aligned);
    CHECK(update_align_branch(AlignBranch::Turning, 0.11, cfg) == AlignBranch::Turning);
    CHECK(update_align_branch(AlignBranch::Aligned, 0.11, cfg) == AlignBranch::Aligned);
    CHECK(update_align_branch(AlignBranch::Aligned, 0.13, cfg) == AlignBranch::Turning);
    CHECK(update_align_branch(AlignBranch::Aligned, 0.12, cfg) == AlignBranch::Aligned);
}

TEST_CASE("command envelope holds under randomized invocations") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> pos(-5.0, 5.0), ang(-4.0, 4.0), sp(0.0, 1.0);
    const AgentParams pe = evader_params(), pp = pursuer_params();
    for (int i = 0; i < 20000; ++i) {
        AgentState e{pos(rng), pos(rng), math::wrap_angle(ang(rng)), sp(rng) * pe.v_max,
                     Role::Evader, 1};
        AgentState p{pos(rng), pos(rng), math::wrap_angle(ang(rng)), sp(rng) * pp.v_max,
                     Role::Pursuer, 0};
        if (e.x == p.x && e.y == p.y) continue;
        PhaseState ps;
        ps.t_bar = 0.0;
        ps.v_at_t_bar = sp(rng) * pe.v_max;
        ps.speed_branch = i % 2 ? SpeedBranch::Decelerating : SpeedBranch::Accelerating;
        ps.align_branch = i % 3 ? AlignBranch::Turning : AlignBranch::Aligned;
        const double t = sp(rng) * 10.0;
        const double d = math::distance(e.pos(), p.pos());

        for (const auto& cmd :
             {evader_long(e, ps, p, pe, t, {}), pursuer_long(p, ps, e, pp, t, {}),
              evader_short(e, ps, p, pe, d, t, {}),
              pursuer_short(p, ps, e, pp, ang(rng), d, t, {})}) {
            CHECK(cmd.v >= 0.0);
            CHECK(cmd.v <= std::max(pe.v_max, pp.v_max) + 1e-12);
            CHECK(std::abs(cmd.w) <= std::max(pe.w_max, pp.w_max) + 1e-12);
        }
    }
}

TEST_CASE("turn-speed anti-correlation when the r/v cap binds") {
    const AgentParams pe = evader_params();
    PhaseState ps;
    ps.phase = Phase::Short;
    ps.speed_branch = SpeedBranch::Decelerating;
    for (double v : {0.2, 0.35, 0.5, 0.6}) {
        ps.v_at_t_bar = v;
        AgentState e{0.0, 0.5, 0.4, v, Role::Evader, 1};
        AgentState p{0.0, 0.0, 0.1, 1.0, Role::Pursuer, 0};
        const auto cmd = evader_short(e, ps, p, pe, 0.2, 0.0, {});
        CHECK(std::abs(cmd.w) * cmd.v <= pe.r + 1e-12);
    }
}
