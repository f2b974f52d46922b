#pragma once

#include <array>
#include <cmath>
#include <cstddef>

#include "alv/errors.hpp"

namespace alv {

// Classical fourth-order Runge-Kutta step. Every stage derivative is
// checked finite; a non-finite value aborts the run with the failure time.
template <std::size_t N, class F>
std::array<double, N> rk4_step(F&& f, const std::array<double, N>& y, double t, double dt) {
    if (!(dt > 0.0)) throw invalid_input("rk4_step: dt must be positive");

    auto check = [t](const std::array<double, N>& d) {
        for (double v : d)
            if (!std::isfinite(v)) throw numerical_blowup(t);
    };
    auto axpy = [](const std::array<double, N>& y0, double a,
                   const std::array<double, N>& d) {
        std::array<double, N> r;
        for (std::size_t i = 0; i < N; ++i) r[i] = y0[i] + a * d[i];
        return r;
    };

    const std::array<double, N> k1 = f(t, y);
    check(k1);
    const std::array<double, N> k2 = f(t + 0.5 * dt, axpy(y, 0.5 * dt, k1));
    check(k2);
    const std::array<double, N> k3 = f(t + 0.5 * dt, axpy(y, 0.5 * dt, k2));
    check(k3);
    const std::array<double, N> k4 = f(t + dt, axpy(y, dt, k3));
    check(k4);

    std::array<double, N> out;
    for (std::size_t i = 0; i < N; ++i)
        out[i] = y[i] + (dt / 6.0) * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    return out;
}

}  // namespace alv
