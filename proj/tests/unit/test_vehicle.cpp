#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <random>

#include "alv/actuators.hpp"
#include "alv/coefficients.hpp"
#include "alv/disturbance.hpp"
#include "alv/plant.hpp"
#include "alv/rk4.hpp"

using namespace alv;

TEST_CASE("coeffs_at sample hit, clamp, midpoint") {
    CoefficientSchedule s;
    s.times = {0.0, 10.0};
    s.samples = {{0, 0, 0, 0, 0, -1.0, 1.0}, {0, 0, 0, 0, 0, -3.0, 1.0}};
    CHECK(coeffs_at(s, 0.0).Mq == -1.0);
    CHECK(coeffs_at(s, 10.0).Mq == -3.0);
    CHECK(coeffs_at(s, -5.0).Mq == -1.0);
    CHECK(coeffs_at(s, 99.0).Mq == -3.0);
    CHECK(coeffs_at(s, 5.0).Mq == Catch::Approx(-2.0));
}

TEST_CASE("coeffs_at is continuous and exact at sample points") {
    const CoefficientSchedule s = default_schedule();
    for (std::size_t k = 0; k < s.times.size(); ++k) {
        const PitchCoefficients c = coeffs_at(s, s.times[k]);
        CHECK(c.Mde == s.samples[k].Mde);
        CHECK(c.Zv == s.samples[k].Zv);
    }
    // continuity across an interior point
    const double t = 31.4159;
    const PitchCoefficients lo = coeffs_at(s, t - 1e-9);
    const PitchCoefficients hi = coeffs_at(s, t + 1e-9);
    CHECK(std::abs(lo.Mde - hi.Mde) < 1e-10);
}

TEST_CASE("schedule validation") {
    CoefficientSchedule s;
    CHECK_THROWS_AS(validate_schedule(s), invalid_input);
    CHECK_THROWS_AS(coeffs_at(s, 0.0), invalid_input);

    s.times = {0.0, 1.0};
    s.samples = {{0, 0, 0, 0, 0, 0, 1.0}, {0, 0, 0, 0, 0, 0, -1.0}};
    CHECK_THROWS_AS(validate_schedule(s), invalid_input);  // M_de crosses zero

    s.samples = {{0, 0, 0, 0, 0, 0, 1.0}, {0, 0, 0, 0, 0, 0, 0.5}};
    CHECK_NOTHROW(validate_schedule(s));

    s.times = {1.0, 1.0};
    CHECK_THROWS_AS(validate_schedule(s), invalid_input);  // not strictly increasing
}

TEST_CASE("plant_deriv examples") {
    const PitchCoefficients zero{};
    const PlantState d0 = plant_deriv({0, 0, 0}, zero, 0.0, 0.0, 0.0);
    CHECK(d0.vz == 0.0);
    CHECK(d0.q == 0.0);
    CHECK(d0.th == 0.0);

    PitchCoefficients c;
    c.Zde = 2.0;
    c.Mde = 5.0;
    const PlantState d1 = plant_deriv({0, 0, 0}, c, 0.01, 0.0, 0.0);
    CHECK(d1.vz == Catch::Approx(0.02));
    CHECK(d1.q == Catch::Approx(0.05));
    CHECK(d1.th == 0.0);

    const PlantState d2 = plant_deriv({0, 0, 0}, zero, 0.0, 1.0, 0.5);
    CHECK(d2.vz == 1.0);
    CHECK(d2.q == 0.5);
}

TEST_CASE("plant_deriv is linear in state, deflection, disturbance") {
    std::mt19937 rng(4242);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    for (int trial = 0; trial < 30; ++trial) {
        const PitchCoefficients c{u(rng), u(rng), u(rng), u(rng), u(rng), u(rng), u(rng)};
        const PlantState x1{u(rng), u(rng), u(rng)};
        const PlantState x2{u(rng), u(rng), u(rng)};
        const double de1 = u(rng), de2 = u(rng);
        const double f11a = u(rng), f11b = u(rng), f12a = u(rng), f12b = u(rng);
        const double a = u(rng), b = u(rng);

        const PlantState lhs = plant_deriv(
            {a * x1.vz + b * x2.vz, a * x1.q + b * x2.q, a * x1.th + b * x2.th}, c,
            a * de1 + b * de2, a * f11a + b * f11b, a * f12a + b * f12b);
        const PlantState r1 = plant_deriv(x1, c, de1, f11a, f12a);
        const PlantState r2 = plant_deriv(x2, c, de2, f11b, f12b);

        auto close = [](double got, double want) {
            return std::abs(got - want) <= 1e-12 * std::max(1.0, std::abs(want));
        };
        CHECK(close(lhs.vz, a * r1.vz + b * r2.vz));
        CHECK(close(lhs.q, a * r1.q + b * r2.q));
        CHECK(close(lhs.th, a * r1.th + b * r2.th));
    }
}

TEST_CASE("servo_deriv steady state, linear region, clamp") {
    CHECK(servo_deriv(0.02, 0.02) == 0.0);
    CHECK(servo_deriv(0.0, 0.01) == Catch::Approx(0.1));
    CHECK(servo_deriv(0.0, 1.0) == Catch::Approx(25.0 * std::numbers::pi / 180.0));
    CHECK(servo_deriv(1.0, 0.0) == Catch::Approx(-25.0 * std::numbers::pi / 180.0));
}

TEST_CASE("servo derivative magnitude never exceeds the rate limit") {
    std::mt19937 rng(99);
    std::uniform_real_distribution<double> u(-50.0, 50.0);
    for (int k = 0; k < 1000; ++k)
        CHECK(std::abs(servo_deriv(u(rng), u(rng))) <= kServoRateLimit);
}

TEST_CASE("gyro zero state and unity DC gain") {
    const GyroState d = gyro_deriv({0.0, 0.0}, 0.0);
    CHECK(d.g1 == 0.0);
    CHECK(d.g2 == 0.0);
    const RationalTF tf = gyro_tf();
    CHECK(tf.num[0] / tf.den[0] == 1.0);
}

namespace {

// Analytic unit step response of wn^2/(s^2 + 2 zeta wn s + wn^2).
double analytic_step(double t) {
    const double zeta = kGyroZeta, wn = kGyroWn;
    const double wd = wn * std::sqrt(1.0 - zeta * zeta);
    return 1.0 - std::exp(-zeta * wn * t) *
                     (std::cos(wd * t) + zeta / std::sqrt(1.0 - zeta * zeta) * std::sin(wd * t));
}

}  // namespace

TEST_CASE("gyro step response: overshoot, settling, analytic match") {
    const double dt = 1e-4;
    std::array<double, 2> y{0.0, 0.0};
    double max_err = 0.0, peak = 0.0, settle_err = 0.0;
    auto f = [](double, const std::array<double, 2>& g) {
        const GyroState d = gyro_deriv({g[0], g[1]}, 1.0);
        return std::array<double, 2>{d.g1, d.g2};
    };
    const int n = static_cast<int>(std::round(0.1 / dt));
    for (int k = 0; k < n; ++k) {
        y = rk4_step(f, y, k * dt, dt);
        const double out = gyro_output({y[0], y[1]});
        const double t = (k + 1) * dt;
        max_err = std::max(max_err, std::abs(out - analytic_step(t)));
        peak = std::max(peak, out);
        if (t >= 0.1 - dt / 2) settle_err = std::abs(out - 1.0);
    }
    CHECK(max_err <= 1e-6);
    // overshoot exp(-zeta pi / sqrt(1 - zeta^2)) with zeta = 0.25
    const double overshoot = std::exp(-kGyroZeta * std::numbers::pi /
                                      std::sqrt(1.0 - kGyroZeta * kGyroZeta));
    CHECK(peak - 1.0 == Catch::Approx(overshoot).epsilon(1e-4));
    CHECK(settle_err < 0.005);
}

TEST_CASE("disturbance_eval examples") {
    DisturbanceSpec empty;
    const DisturbanceValue v0 = disturbance_eval(empty, 3.0);
    CHECK(v0.f11 == 0.0);
    CHECK(v0.f12 == 0.0);

    DisturbanceSpec st;
    st.f11 = {{DisturbancePrimitive::Kind::Step, 5.0, 1.0, 0.0}};
    CHECK(disturbance_eval(st, 4.999).f11 == 0.0);
    CHECK(disturbance_eval(st, 5.0).f11 == 1.0);  // left-closed onset

    DisturbanceSpec sn;
    sn.f12 = {{DisturbancePrimitive::Kind::Sine, 2.0, 0.5, 0.0}};
    CHECK(disturbance_eval(sn, 0.5).f12 == Catch::Approx(2.0 * std::sin(std::numbers::pi * 0.5)));

    DisturbanceSpec rp;
    rp.matched = {{DisturbancePrimitive::Kind::Ramp, 1.0, 0.2, 0.0}};
    CHECK(matched_eval(rp, 0.5) == 0.0);
    CHECK(matched_eval(rp, 3.5) == Catch::Approx(0.5));
}

TEST_CASE("disturbance validation rejects non-finite parameters") {
    DisturbanceSpec s;
    s.f11 = {{DisturbancePrimitive::Kind::Step, std::nan(""), 1.0, 0.0}};
    CHECK_THROWS_AS(validate_disturbance(s), invalid_input);
}
