#include <doctest.h>

#include <cmath>
#include <random>

#include "pursuit/errors.hpp"
#include "pursuit/math.hpp"

using namespace pursuit;
using namespace pursuit::math;

TEST_CASE("sat branches") {
    CHECK(sat(-1.0, 5.0) == 0.0);
    CHECK(sat(3.0, 5.0) == 3.0);
    CHECK(sat(7.0, 5.0) == 5.0);
    CHECK(sat(0.0, 5.0) == 0.0);
    CHECK_THROWS_AS(sat(1.0, -0.1), std::domain_error);
}

TEST_CASE("sat idempotent and monotone") {
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> xs(-10.0, 10.0), ys(0.0, 10.0);
    for (int i = 0; i < 10000; ++i) {
        const double x = xs(rng), y = ys(rng);
        const double s = sat(x, y);
        CHECK(sat(s, y) == s);
        CHECK(s >= 0.0);
        CHECK(s <= y);
        const double x2 = xs(rng);
        if (x2 >= x) CHECK(sat(x2, y) >= s);
    }
}

TEST_CASE("sat2 branches and equivalence to max") {
    CHECK(sat2(0.2, 0.36) == 0.36);
    CHECK(sat2(0.5, 0.36) == 0.5);
    CHECK(sat2(0.36, 0.36) == 0.36);
    std::mt19937_64 rng(2);
    std::uniform_real_distribution<double> d(-10.0, 10.0);
    for (int i = 0; i < 10000; ++i) {
        const double x = d(rng), y = d(rng);
        CHECK(sat2(x, y) == std::max(x, y));
    }
}

TEST_CASE("sgn_fin piecewise values") {
    CHECK(sgn_fin(5.0, 2.0, 0.5) == 2.0);       // threshold sigma^(1/gamma) = 4
    CHECK(sgn_fin(0.25, 2.0, 0.5) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(sgn_fin(0.0, 2.0, 0.5) == 0.0);
    CHECK_THROWS_AS(sgn_fin(1.0, -1.0, 0.5), std::domain_error);
    CHECK_THROWS_AS(sgn_fin(1.0, 1.0, 1.5), std::domain_error);
}

TEST_CASE("sgn_fin bounded, odd, continuous at threshold") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> xs(-20.0, 20.0), ss(0.0, 5.0), gs(0.05, 0.95);
    for (int i = 0; i < 10000; ++i) {
        const double x = xs(rng), sigma = ss(rng), gamma = gs(rng);
        const double v = sgn_fin(x, sigma, gamma);
        CHECK(std::abs(v) <= sigma + 1e-15);
        CHECK(sgn_fin(-x, sigma, gamma) == -v);
    }
    // Two-sided limits at |x| = sigma^(1/gamma) agree to 1e-12.
    for (double sigma : {0.5, 1.0, 2.0}) {
        for (double gamma : {0.3, 0.5, 0.7}) {
            const double th = std::pow(sigma, 1.0 / gamma);
            const double lo = sgn_fin(th * (1.0 - 1e-14), sigma, gamma);
            const double hi = sgn_fin(th * (1.0 + 1e-14), sigma, gamma);
            CHECK(std::abs(hi - lo) < 1e-12);
        }
    }
}

TEST_CASE("wrap_angle convention (-pi, pi]") {
    CHECK(wrap_angle(3.0 * kPi) == doctest::Approx(kPi));
    CHECK(wrap_angle(-kPi) == doctest::Approx(kPi));
    CHECK(wrap_angle(0.3) == 0.3);
    CHECK_THROWS_AS(wrap_angle(std::numeric_limits<double>::infinity()), std::domain_error);

    std::mt19937_64 rng(4);
    std::uniform_real_distribution<double> as(-10.0, 10.0);
    std::uniform_int_distribution<int> ks(-3, 3);
    for (int i = 0; i < 10000; ++i) {
        const double a = as(rng);
        const int k = ks(rng);
        const double w = wrap_angle(a);
        CHECK(w > -kPi);
        CHECK(w <= kPi);
        CHECK(wrap_angle(a + 2.0 * kPi * k) == doctest::Approx(w).epsilon(1e-12));
    }
}

TEST_CASE("rel_angle quadrants") {
    CHECK(rel_angle({0, 0}, {1, 1}) == doctest::Approx(kPi / 4));
    CHECK(rel_angle({0, 0}, {-1, 0}) == doctest::Approx(kPi));
    CHECK(rel_angle({2, 3}, {2, 2}) == doctest::Approx(-kPi / 2));
    CHECK_THROWS_AS(rel_angle({1, 1}, {1, 1}), DegenerateGeometryError);
}

TEST_CASE("acot_pos values and properties") {
    CHECK(acot_pos(0.0) == doctest::Approx(kPi / 2));
    CHECK(acot_pos(1.0) == doctest::Approx(kPi / 4));
    CHECK(acot_pos(2.5) == doctest::Approx(0.380506).epsilon(1e-6));
    double prev = acot_pos(-50.0);
    for (double x = -49.5; x <= 50.0; x += 0.5) {
        const double cur = acot_pos(x);
        CHECK(cur < prev);
        CHECK(acot_pos(x) + acot_pos(-x) == doctest::Approx(kPi).epsilon(1e-12));
        prev = cur;
    }
    CHECK(acot_pos(3.0) == doctest::Approx(std::atan(1.0 / 3.0)));
}

TEST_CASE("MathConfig validation") {
    MathConfig cfg;
    CHECK_NOTHROW(cfg.validate());
    cfg.gamma = 1.0;
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
    cfg.gamma = 0.0;
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
}
