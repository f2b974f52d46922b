#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <vector>

#include "alv/errors.hpp"

namespace alv {

// Piecewise-linear pitch-rate program q_c(t), clamped to the endpoint
// values outside the breakpoint span. theta_c is its exact running
// integral from t = 0; qdot_c is the piecewise slope, taken
// right-continuous at breakpoints.
class ReferenceProgram {
  public:
    ReferenceProgram() = default;

    ReferenceProgram(std::vector<double> times, std::vector<double> rates)
        : times_(std::move(times)), rates_(std::move(rates)) {
        if (times_.empty() || times_.size() != rates_.size())
            throw invalid_input("reference: empty or mismatched breakpoint arrays");
        for (std::size_t k = 0; k < times_.size(); ++k) {
            if (!std::isfinite(times_[k]) || !std::isfinite(rates_[k]))
                throw invalid_input("reference: non-finite breakpoint");
            if (k > 0 && !(times_[k] > times_[k - 1]))
                throw invalid_input("reference: breakpoint times must be strictly increasing");
        }
        // Running integral of the clamped profile at each breakpoint,
        // measured from t = 0.
        integrals_.assign(times_.size(), 0.0);
        integrals_[0] = rates_[0] * times_[0];  // constant clamp before the first knot
        for (std::size_t k = 1; k < times_.size(); ++k)
            integrals_[k] = integrals_[k - 1] +
                            0.5 * (rates_[k - 1] + rates_[k]) * (times_[k] - times_[k - 1]);
    }

    double qc(double t) const {
        if (t <= times_.front()) return rates_.front();
        if (t >= times_.back()) return rates_.back();
        const std::size_t hi = seg_upper(t);
        const std::size_t lo = hi - 1;
        const double a = (t - times_[lo]) / (times_[hi] - times_[lo]);
        return rates_[lo] + a * (rates_[hi] - rates_[lo]);
    }

    double qdot(double t) const {
        if (t < times_.front() || t >= times_.back()) return 0.0;
        const std::size_t hi = upper_index(t);
        const std::size_t lo = hi - 1;
        return (rates_[hi] - rates_[lo]) / (times_[hi] - times_[lo]);
    }

    double theta_c(double t) const {
        if (t <= times_.front()) return rates_.front() * t;
        if (t >= times_.back())
            return integrals_.back() + rates_.back() * (t - times_.back());
        const std::size_t hi = seg_upper(t);
        const std::size_t lo = hi - 1;
        const double dt = t - times_[lo];
        const double slope = (rates_[hi] - rates_[lo]) / (times_[hi] - times_[lo]);
        return integrals_[lo] + rates_[lo] * dt + 0.5 * slope * dt * dt;
    }

    const std::vector<double>& times() const { return times_; }
    const std::vector<double>& rates() const { return rates_; }

  private:
    // First index with times_[i] >= t is not what interpolation wants;
    // we need the segment [lo, hi] with times_[lo] < t <= times_[hi].
    std::size_t seg_upper(double t) const {
        const auto it = std::lower_bound(times_.begin(), times_.end(), t);
        std::size_t hi = static_cast<std::size_t>(it - times_.begin());
        if (hi == 0) hi = 1;
        return hi;
    }

    // Right-continuous segment choice: times_[lo] <= t < times_[hi].
    std::size_t upper_index(double t) const {
        const auto it = std::upper_bound(times_.begin(), times_.end(), t);
        std::size_t hi = static_cast<std::size_t>(it - times_.begin());
        if (hi == 0) hi = 1;
        if (hi == times_.size()) hi = times_.size() - 1;
        return hi;
    }

    std::vector<double> times_;
    std::vector<double> rates_;
    std::vector<double> integrals_;
};

// Built-in rate program: ramp to -1 deg/s over 10 s, hold to 40 s, ramp
// back to zero by 50 s, zero thereafter.
inline ReferenceProgram default_reference() {
    const double deg = std::numbers::pi / 180.0;
    return ReferenceProgram({0.0, 10.0, 40.0, 50.0}, {0.0, -1.0 * deg, -1.0 * deg, 0.0});
}

}  // namespace alv
