#include "pursuit/verify.hpp"

#include <cmath>

#include "pursuit/errors.hpp"

namespace pursuit::verify {

using math::acot_pos;
using math::kPi;

void Theorem1Inputs::validate() const {
    if (!(v_p > 0.0 && v_e > 0.0)) throw ConfigError("Theorem1Inputs: speeds must be > 0");
    if (!(w_p_max > 0.0 && w_e_max > 0.0)) throw ConfigError("Theorem1Inputs: angular limits must be > 0");
    if (!(r_p > 0.0 && r_e > 0.0)) throw ConfigError("Theorem1Inputs: r must be > 0");
    if (a_p < 0.0 || a_e < 0.0) throw ConfigError("Theorem1Inputs: a must be >= 0");
    if (!(c_p >= 0.0 && c_p < 1.0 && c_e >= 0.0 && c_e < 1.0)) {
        throw ConfigError("Theorem1Inputs: c must be in [0,1)");
    }
    if (!(eps1 > 0.0 && eps2 > 0.0)) throw ConfigError("Theorem1Inputs: eps1/eps2 must be > 0");
    if (!(d0 > 0.0 && d0 <= eps1)) throw ConfigError("Theorem1Inputs: d0 must satisfy 0 < d0 <= eps1");
}

Theorem1Report theorem1_check(const Theorem1Inputs& in) {
    in.validate();
    Theorem1Report rep;

    rep.cond_i = in.r_p >= in.v_p * in.w_p_max && in.r_e >= in.v_e * in.w_e_max;
    rep.cond_ii = acot_pos(in.k_p * in.eps1) / in.v_p >= in.w_p_max &&
                  acot_pos(in.k_e * in.eps1) / in.v_e >= in.w_e_max;
    const double quarter_turn_time = kPi / (2.0 * in.w_p_max);
    rep.cond_iii = in.v_p - in.a_p * quarter_turn_time >= in.c_p * in.v_p &&
                   in.v_e - in.a_e * quarter_turn_time >= in.c_e * in.v_e;
    rep.cond_iv = in.w_p_max < in.w_e_max && in.w_e_max <= 3.0 * in.w_p_max;

    const double wp2 = in.w_p_max * in.w_p_max;
    const double we2 = in.w_e_max * in.w_e_max;
    rep.rho1 = in.v_p - in.v_e - 2.0 * in.a_e / we2 -
               in.a_e * kPi / (2.0 * in.w_p_max * in.w_e_max) +
               (1.0 - kPi / 2.0) * in.a_p / wp2;
    rep.rho2 = 2.0 * in.v_e / in.w_e_max - in.v_p / in.w_p_max + in.a_p / wp2 -
               in.a_e / we2;

    const double disc = in.eps2 * in.eps2 - rep.rho2 * rep.rho2;
    rep.eps1_bound_defined = disc >= 0.0;
    if (rep.eps1_bound_defined) {
        rep.eps1_bound = rep.rho1 + std::sqrt(disc);
        rep.cond_v = in.eps1 < rep.eps1_bound;
    }

    rep.t_bound = quarter_turn_time;
    rep.closed_form_final_distance = closed_form_theorem1(rep.t_bound, in).dist;
    rep.capture_guaranteed =
        rep.cond_i && rep.cond_ii && rep.cond_iii && rep.cond_iv && rep.cond_v;
    rep.oracle_capture = rep.closed_form_final_distance < in.eps2;
    return rep;
}

PursuitPoint closed_form_theorem1(double t, const Theorem1Inputs& in) {
    const double t_max = kPi / (2.0 * in.w_p_max);
    if (t < 0.0 || t > t_max + 1e-12) {
        throw std::domain_error("closed_form_theorem1: t outside [0, pi/(2 W_p_max)]");
    }
    const double wp = in.w_p_max, we = in.w_e_max;
    const double cp = std::cos(wp * t), sp = std::sin(wp * t);
    const double ce = std::cos(we * t), se = std::sin(we * t);

    PursuitPoint pt;
    pt.t = t;
    pt.pursuer.x = in.v_p / wp * (cp - 1.0) - in.a_p / wp * t * cp + in.a_p / (wp * wp) * sp;
    pt.pursuer.y = in.v_p / wp * sp - in.a_p / wp * t * sp + in.a_p / (wp * wp) -
                   in.a_p / (wp * wp) * cp;
    pt.evader.x = in.v_e / we * (ce - 1.0) - in.a_e / we * t * ce + in.a_e / (we * we) * se;
    pt.evader.y = in.d0 + in.v_e / we * se - in.a_e / (we * we) * ce - in.a_e / we * t * se +
                  in.a_e / (we * we);
    pt.dist = math::distance(pt.pursuer, pt.evader);
    return pt;
}

std::vector<PursuitPoint> integrate_mdd(const Theorem1Inputs& in, double dt) {
    if (!(dt > 0.0)) throw ConfigError("integrate_mdd: dt must be > 0");
    const double t_max = kPi / (2.0 * in.w_p_max);
    const auto steps = static_cast<std::size_t>(std::ceil(t_max / dt));

    std::vector<PursuitPoint> traj;
    traj.reserve(steps + 1);
    PursuitPoint pt;
    pt.t = 0.0;
    pt.pursuer = {0.0, 0.0};
    pt.evader = {0.0, in.d0};
    pt.dist = in.d0;
    traj.push_back(pt);

    for (std::size_t i = 0; i < steps; ++i) {
        const double t = static_cast<double>(i) * dt;
        const double h = std::min(dt, t_max - t);
        const double vp = in.v_p - in.a_p * t;
        const double ve = in.v_e - in.a_e * t;
        const double th_p = kPi / 2.0 + in.w_p_max * t;
        const double th_e = kPi / 2.0 + in.w_e_max * t;
        pt.pursuer.x += h * vp * std::cos(th_p);
        pt.pursuer.y += h * vp * std::sin(th_p);
        pt.evader.x += h * ve * std::cos(th_e);
        pt.evader.y += h * ve * std::sin(th_e);
        pt.t = t + h;
        pt.dist = math::distance(pt.pursuer, pt.evader);
        traj.push_back(pt);
    }
    return traj;
}

std::vector<ReducedOdePoint> theorem2_reduced_ode(Vec2 q0, double d_des,
                                                  double t_end, double dt) {
    if (!(d_des > 0.0)) throw ConfigError("theorem2_reduced_ode: d_des must be > 0");
    if (!(dt > 0.0) || !(t_end >= 0.0)) {
        throw ConfigError("theorem2_reduced_ode: dt must be > 0 and t_end >= 0");
    }
    const auto steps = static_cast<std::size_t>(std::ceil(t_end / dt));

    std::vector<ReducedOdePoint> traj;
    traj.reserve(steps + 1);
    Vec2 q = q0;
    auto push = [&](double t) {
        const double n = std::hypot(q.x, q.y);
        traj.push_back({t, q, n, q.x * q.x + q.y * q.y});
    };
    push(0.0);

    for (std::size_t i = 0; i < steps; ++i) {
        const double t = static_cast<double>(i) * dt;
        const double h = std::min(dt, t_end - t);
        const double n2 = q.x * q.x + q.y * q.y;
        const double sigma = 2.0 / (1.0 + std::exp(n2 - d_des * d_des));
        const double rate = -(1.0 - sigma);
        q.x += h * rate * q.x;
        q.y += h * rate * q.y;
        push(t + h);
    }
    return traj;
}

}  // namespace pursuit::verify
