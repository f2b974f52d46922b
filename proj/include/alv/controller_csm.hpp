#pragma once

#include <algorithm>
#include <cmath>

#include "alv/coefficients.hpp"
#include "alv/errors.hpp"

namespace alv {

struct CsmConfig {
    double K = 1.0;          // 1/s, surface slope
    double rho = 0.01;       // rad, switching gain
    double epsilon = 1e-3;   // boundary-layer half-width
};

inline void validate_csm(const CsmConfig& c) {
    if (!(c.K > 0.0) || !(c.rho > 0.0) || !(c.epsilon > 0.0))
        throw invalid_input("csm: K, rho, epsilon must be positive");
}

// x/eps clamped to [-1, 1]; the continuous stand-in for sign(x).
inline double sat(double x, double eps) {
    if (!(eps > 0.0)) throw invalid_input("sat: eps must be positive");
    return std::clamp(x / eps, -1.0, 1.0);
}

// S = q_e + K theta_e, with theta_e' identified with q_e.
inline double csm_surface(double theta_e, double q_e, double K) {
    return q_e + K * theta_e;
}

inline constexpr double kMdeSingular = 1e-9;

// de = Mde^{-1} [ qdot_c + K q_e - Mvz v_z - Mq q + rho sat(S/eps) ].
// q is the rate signal the controller sees (gyro output in closed loop).
inline double csm_control(double qdot_c, double q_e, double v_z, double q,
                          const PitchCoefficients& c, double S, const CsmConfig& cfg) {
    if (std::abs(c.Mde) < kMdeSingular) throw singular_gain("csm_control: M_de near zero");
    const double u =
        (qdot_c + cfg.K * q_e - c.Mvz * v_z - c.Mq * q + cfg.rho * sat(S, cfg.epsilon)) / c.Mde;
    return u == 0.0 ? 0.0 : u;  // normalize -0 so exact-zero runs log +0
}

}  // namespace alv
