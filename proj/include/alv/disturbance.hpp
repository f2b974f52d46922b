#pragma once

#include <cmath>
#include <numbers>
#include <vector>

#include "alv/errors.hpp"

namespace alv {

// One additive disturbance primitive. Step is left-closed at t0 so the
// value at the onset instant is deterministic.
struct DisturbancePrimitive {
    enum class Kind { Step, Ramp, Sine } kind = Kind::Step;
    // Step: p0 = t0, p1 = amplitude.
    // Ramp: p0 = t0, p1 = slope (per second).
    // Sine: p0 = amplitude, p1 = frequency (Hz), p2 = phase (rad).
    double p0 = 0.0;
    double p1 = 0.0;
    double p2 = 0.0;
};

inline double primitive_eval(const DisturbancePrimitive& d, double t) {
    switch (d.kind) {
        case DisturbancePrimitive::Kind::Step:
            return t >= d.p0 ? d.p1 : 0.0;
        case DisturbancePrimitive::Kind::Ramp:
            return t >= d.p0 ? d.p1 * (t - d.p0) : 0.0;
        case DisturbancePrimitive::Kind::Sine:
            return d.p0 * std::sin(2.0 * std::numbers::pi * d.p1 * t + d.p2);
    }
    return 0.0;
}

// f11 acts on the v_z equation (m/s^2), f12 on the q equation (rad/s^2);
// the matched channel adds to the servo command (rad).
struct DisturbanceSpec {
    std::vector<DisturbancePrimitive> f11;
    std::vector<DisturbancePrimitive> f12;
    std::vector<DisturbancePrimitive> matched;
};

inline double channel_eval(const std::vector<DisturbancePrimitive>& ch, double t) {
    double acc = 0.0;
    for (const auto& d : ch) acc += primitive_eval(d, t);
    return acc;
}

struct DisturbanceValue {
    double f11 = 0.0;
    double f12 = 0.0;
};

inline DisturbanceValue disturbance_eval(const DisturbanceSpec& spec, double t) {
    return {channel_eval(spec.f11, t), channel_eval(spec.f12, t)};
}

inline double matched_eval(const DisturbanceSpec& spec, double t) {
    return channel_eval(spec.matched, t);
}

inline void validate_disturbance(const DisturbanceSpec& spec) {
    auto check = [](const std::vector<DisturbancePrimitive>& ch) {
        for (const auto& d : ch)
            if (!std::isfinite(d.p0) || !std::isfinite(d.p1) || !std::isfinite(d.p2))
                throw invalid_input("disturbance: non-finite parameter");
    };
    check(spec.f11);
    check(spec.f12);
    check(spec.matched);
}

// Built-in unmatched profile: a step plus a slow sine on the velocity
// channel, a step on the rate channel.
inline DisturbanceSpec default_disturbance() {
    DisturbanceSpec s;
    s.f11 = {{DisturbancePrimitive::Kind::Step, 15.0, 0.5, 0.0},
             {DisturbancePrimitive::Kind::Sine, 0.2, 0.1, 0.0}};
    s.f12 = {{DisturbancePrimitive::Kind::Step, 25.0, 0.05, 0.0}};
    return s;
}

}  // namespace alv
