#pragma once

#include <cmath>
#include <numbers>

#include "pursuit/errors.hpp"

namespace pursuit::math {

inline constexpr double kPi = std::numbers::pi;

struct MathConfig {
    double gamma = 0.5;  // exponent of the finite-time sign function, in (0,1)

    void validate() const {
        if (!(gamma > 0.0 && gamma < 1.0)) {
            throw ConfigError("MathConfig: gamma must be in (0,1)");
        }
    }
};

struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    friend bool operator==(const Vec2&, const Vec2&) = default;
};

inline double distance(Vec2 a, Vec2 b) {
    return std::hypot(a.x - b.x, a.y - b.y);
}

// One-sided saturation: 0 if x <= 0, x if 0 < x <= y, else y.
inline double sat(double x, double y) {
    if (y < 0.0) {
        throw std::domain_error("sat: upper bound must be nonnegative");
    }
    if (x <= 0.0) return 0.0;
    if (x <= y) return x;
    return y;
}

// Lower clamp: y if x <= y, else x. Equivalent to max(x, y).
inline double sat2(double x, double y) {
    return x <= y ? y : x;
}

// Finite-time sign: sigma*sign(x) beyond |x| = sigma^(1/gamma), else
// sign(x)*|x|^gamma. Odd, bounded by sigma, continuous at the threshold.
inline double sgn_fin(double x, double sigma, double gamma) {
    if (sigma < 0.0) {
        throw std::domain_error("sgn_fin: sigma must be nonnegative");
    }
    if (!(gamma > 0.0 && gamma < 1.0)) {
        throw std::domain_error("sgn_fin: gamma must be in (0,1)");
    }
    if (x == 0.0) return 0.0;
    const double sign = x > 0.0 ? 1.0 : -1.0;
    const double threshold = std::pow(sigma, 1.0 / gamma);
    if (std::abs(x) > threshold) return sigma * sign;
    return sign * std::pow(std::abs(x), gamma);
}

// Wrap to (-pi, pi].
inline double wrap_angle(double a) {
    if (!std::isfinite(a)) {
        throw std::domain_error("wrap_angle: non-finite angle");
    }
    double r = std::remainder(a, 2.0 * kPi);
    if (r <= -kPi) r += 2.0 * kPi;
    return r;
}

// Four-quadrant orientation of the vector from -> to, in (-pi, pi].
inline double rel_angle(Vec2 from, Vec2 to) {
    const double dx = to.x - from.x;
    const double dy = to.y - from.y;
    if (dx == 0.0 && dy == 0.0) {
        throw DegenerateGeometryError("rel_angle: coincident points");
    }
    return wrap_angle(std::atan2(dy, dx));
}

// acot over all reals, pi/2 - atan(x); strictly decreasing with range (0, pi).
inline double acot_pos(double x) {
    return kPi / 2.0 - std::atan(x);
}

}  // namespace pursuit::math
