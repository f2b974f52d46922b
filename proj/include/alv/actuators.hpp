#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>

#include "alv/transfer_function.hpp"

namespace alv {

// Thrust-vector servo 1/(tau s + 1) with a slew-rate limit applied to
// the state derivative, keeping the ODE well-defined.
inline constexpr double kServoTau = 0.1;                                   // s
inline const double kServoRateLimit = 25.0 * std::numbers::pi / 180.0;     // rad/s

inline double servo_deriv(double delta, double delta_c) {
    const double raw = (delta_c - delta) / kServoTau;
    return std::clamp(raw, -kServoRateLimit, kServoRateLimit);
}

// Rate gyro wg^2 / (s^2 + 2 zeta wg s + wg^2), unity DC gain.
inline const double kGyroWn = 80.0 * std::numbers::pi;  // rad/s
inline constexpr double kGyroZeta = 0.25;

struct GyroState {
    double g1 = 0.0;
    double g2 = 0.0;
};

// Controllable canonical realization: output q_meas = wg^2 * g1.
inline GyroState gyro_deriv(const GyroState& g, double q_true) {
    return {g.g2, -kGyroWn * kGyroWn * g.g1 - 2.0 * kGyroZeta * kGyroWn * g.g2 + q_true};
}

inline double gyro_output(const GyroState& g) { return kGyroWn * kGyroWn * g.g1; }

inline RationalTF gyro_tf() {
    return {{kGyroWn * kGyroWn}, {kGyroWn * kGyroWn, 2.0 * kGyroZeta * kGyroWn, 1.0}};
}

}  // namespace alv
