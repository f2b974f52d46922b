#pragma once

#include <cmath>

#include "alv/coefficients.hpp"
#include "alv/errors.hpp"
#include "alv/transfer_function.hpp"

namespace alv {

// Linearized pitch-plane state: normal velocity perturbation, pitch
// rate, pitch angle.
struct PlantState {
    double vz = 0.0;  // m/s
    double q = 0.0;   // rad/s
    double th = 0.0;  // rad
};

// v_z' = Zv vz + Zq q + Zth th + Zde de + f11
// q'   = Mvz vz + Mq q + Mde de + f12
// th'  = q
inline PlantState plant_deriv(const PlantState& x, const PitchCoefficients& c,
                              double de, double f11, double f12) {
    return {c.Zv * x.vz + c.Zq * x.q + c.Zth * x.th + c.Zde * de + f11,
            c.Mvz * x.vz + c.Mq * x.q + c.Mde * de + f12,
            x.q};
}

// Frozen-time G(s) = q(s)/de(s) for the three-state model above,
// common factor s retained (no symbolic cancellation):
//   D(s) = s^3 - (Zv + Mq) s^2 + (Zv Mq - Zq Mvz) s - Zth Mvz
//   N(s) = Mde s^2 + (Zde Mvz - Mde Zv) s
inline RationalTF pitch_plant_tf(const PitchCoefficients& c) {
    if (!coeffs_finite(c)) throw invalid_input("pitch_plant_tf: non-finite coefficient");
    Polynomial den = {-c.Zth * c.Mvz, c.Zv * c.Mq - c.Zq * c.Mvz, -(c.Zv + c.Mq), 1.0};
    Polynomial num = {0.0, c.Zde * c.Mvz - c.Mde * c.Zv, c.Mde};
    return {std::move(num), std::move(den)};
}

}  // namespace alv
