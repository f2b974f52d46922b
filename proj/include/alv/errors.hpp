#pragma once

#include <stdexcept>
#include <string>

namespace alv {

// Invalid arguments to library operations (bad polynomial degrees,
// non-finite coefficients, empty schedules, ...).
struct invalid_input : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Transfer function cannot be realized in state space (improper ratio).
struct not_realizable : invalid_input {
    using invalid_input::invalid_input;
};

// Control-law inversion impossible: |M_de| below threshold.
struct singular_gain : invalid_input {
    using invalid_input::invalid_input;
};

// The 5x3 identification system is rank deficient (condition > 1e12).
// The caller is expected to keep the previously identified coefficients.
struct ill_conditioned_identification : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Scenario/config file rejected; message carries a line number when known.
struct config_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A non-finite value appeared during integration; t is the simulation
// time of the failed step.
struct numerical_blowup : std::runtime_error {
    double t;
    explicit numerical_blowup(double t_)
        : std::runtime_error("non-finite state at t = " + std::to_string(t_)),
          t(t_) {}
};

}  // namespace alv
