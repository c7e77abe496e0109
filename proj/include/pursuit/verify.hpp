#pragma once

#include <vector>

#include "pursuit/math.hpp"

namespace pursuit::verify {

using math::Vec2;

struct Theorem1Inputs {
    double v_p = 2.0;
    double v_e = 1.6;
    double w_p_max = 1.0;
    double w_e_max = 2.0;
    double r_p = 3.0;
    double r_e = 4.0;
    double a_p = 0.0;
    double a_e = 0.0;
    double c_p = 0.0;
    double c_e = 0.0;
    double k_p = 0.01;
    double k_e = 0.01;
    double eps1 = 1.31;
    double eps2 = 1.0;
    double d0 = 1.31;

    void validate() const;
};

struct Theorem1Report {
    bool cond_i = false;    // r >= V * W^max for both players
    bool cond_ii = false;   // acot(k eps1)/v >= W^max for both players
    bool cond_iii = false;  // V - a*pi/(2 W_p^max) >= c V^max for both players
    bool cond_iv = false;   // W_p^max < W_e^max <= 3 W_p^max
    bool cond_v = false;    // eps1 < rho1 + sqrt(eps2^2 - rho2^2)
    double rho1 = 0.0;
    double rho2 = 0.0;
    bool eps1_bound_defined = false;
    double eps1_bound = 0.0;     // rho1 + sqrt(eps2^2 - rho2^2), when defined
    double t_bound = 0.0;        // pi / (2 W_p^max)
    double closed_form_final_distance = 0.0;  // distance at t_bound, gamma = 0
    bool capture_guaranteed = false;          // all five conditions hold
    bool oracle_capture = false;              // closed form ends inside eps2
};

Theorem1Report theorem1_check(const Theorem1Inputs& in);

struct PursuitPoint {
    double t = 0.0;
    Vec2 pursuer;
    Vec2 evader;
    double dist = 0.0;
};

// Exact appendix positions for the max-turn engagement with the heading slack
// set to zero. Valid for t in [0, pi/(2 W_p^max)].
PursuitPoint closed_form_theorem1(double t, const Theorem1Inputs& in);

// Fixed-step Euler integration of the same open-loop dynamics; first-order
// agreement with the closed form.
std::vector<PursuitPoint> integrate_mdd(const Theorem1Inputs& in, double dt);

struct ReducedOdePoint {
    double t = 0.0;
    Vec2 q;
    double norm = 0.0;
    double lyapunov = 0.0;  // q'q
};

// Center-relative aggregation dynamics q' = -q(1 - 2/(1 + e^(|q|^2 - d_des^2))).
std::vector<ReducedOdePoint> theorem2_reduced_ode(Vec2 q0, double d_des,
                                                  double t_end, double dt);

}  // namespace pursuit::verify
