#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

#include "alv/errors.hpp"

namespace alv {

// Frozen-time dynamic coefficients of the linearized pitch channel.
struct PitchCoefficients {
    double Zv = 0.0;   // 1/s
    double Zq = 0.0;   // m/(s rad)
    double Zth = 0.0;  // m/s^2 per rad
    double Zde = 0.0;  // m/s^2 per rad
    double Mvz = 0.0;  // rad/(m s)
    double Mq = 0.0;   // 1/s
    double Mde = 0.0;  // 1/s^2 per rad, nonzero (control-law inversion)
};

inline bool coeffs_finite(const PitchCoefficients& c) {
    return std::isfinite(c.Zv) && std::isfinite(c.Zq) && std::isfinite(c.Zth) &&
           std::isfinite(c.Zde) && std::isfinite(c.Mvz) && std::isfinite(c.Mq) &&
           std::isfinite(c.Mde);
}

// Piecewise-linear coefficient profile, clamped outside the sampled span.
struct CoefficientSchedule {
    std::vector<double> times;
    std::vector<PitchCoefficients> samples;
};

// Load-time validation: times strictly increasing, at least one sample,
// every value finite, and the interpolated M_de never touching zero
// (linear interpolation crosses zero iff consecutive samples do).
inline void validate_schedule(const CoefficientSchedule& s) {
    if (s.times.empty() || s.times.size() != s.samples.size())
        throw invalid_input("schedule: empty or mismatched sample arrays");
    for (std::size_t k = 0; k < s.times.size(); ++k) {
        if (!std::isfinite(s.times[k]) || !coeffs_finite(s.samples[k]))
            throw invalid_input("schedule: non-finite sample");
        if (k > 0 && !(s.times[k] > s.times[k - 1]))
            throw invalid_input("schedule: sample times must be strictly increasing");
    }
    for (std::size_t k = 0; k < s.samples.size(); ++k) {
        if (s.samples[k].Mde == 0.0)
            throw invalid_input("schedule: M_de is zero at a sample");
        if (k > 0 && s.samples[k].Mde * s.samples[k - 1].Mde < 0.0)
            throw invalid_input("schedule: M_de crosses zero between samples");
    }
}

inline PitchCoefficients coeffs_at(const CoefficientSchedule& s, double t) {
    if (s.times.empty()) throw invalid_input("coeffs_at: empty schedule");
    if (t <= s.times.front()) return s.samples.front();
    if (t >= s.times.back()) return s.samples.back();
    const auto it = std::upper_bound(s.times.begin(), s.times.end(), t);
    const std::size_t hi = static_cast<std::size_t>(it - s.times.begin());
    const std::size_t lo = hi - 1;
    const double a = (t - s.times[lo]) / (s.times[hi] - s.times[lo]);
    const PitchCoefficients& p = s.samples[lo];
    const PitchCoefficients& q = s.samples[hi];
    auto lerp = [a](double x, double y) { return x + a * (y - x); };
    return {lerp(p.Zv, q.Zv),   lerp(p.Zq, q.Zq), lerp(p.Zth, q.Zth),
            lerp(p.Zde, q.Zde), lerp(p.Mvz, q.Mvz), lerp(p.Mq, q.Mq),
            lerp(p.Mde, q.Mde)};
}

// Built-in profile: smooth drift between fixed endpoints over a 60 s
// flight segment, M_de bounded away from zero throughout.
inline CoefficientSchedule default_schedule() {
    CoefficientSchedule s;
    s.times = {0.0, 60.0};
    s.samples = {
        {-0.35, 1.0, -0.60, 2.0, 0.004, -0.40, 2.2},
        {-0.60, 2.0, -1.20, 3.0, 0.010, -0.80, 1.4},
    };
    return s;
}

}  // namespace alv
