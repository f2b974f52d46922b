#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "alv/actuators.hpp"
#include "alv/coefficients.hpp"
#include "alv/controller_csm.hpp"
#include "alv/controller_dsm.hpp"
#include "alv/disturbance.hpp"
#include "alv/errors.hpp"
#include "alv/plant.hpp"
#include "alv/reference.hpp"
#include "alv/rk4.hpp"

namespace alv {

enum class ControllerKind { Csm, Dsm };

inline const char* controller_name(ControllerKind k) {
    return k == ControllerKind::Csm ? "csm" : "dsm";
}

// How the controller command enters the integrator. Hold is the shipped
// behavior: delta_c is computed once per step and held (the switching
// element is not smooth, so evaluating it inside RK4 stages has no
// accuracy justification in general). Stage re-evaluates the control law
// at the four stage times and is meaningful only while the commanded
// dynamics stay smooth (sat in its linear region, servo rate unclamped);
// the integrator-order acceptance test relies on it.
enum class ControlUpdate { Hold, Stage };

struct Scenario {
    double duration = 60.0;  // s
    double dt = 1e-3;        // s
    bool use_gyro = true;
    double initial_q = 0.0;  // rad/s, excitation knob for convergence studies
    ControlUpdate control_update = ControlUpdate::Hold;
    CoefficientSchedule schedule = default_schedule();
    ReferenceProgram reference = default_reference();
    DisturbanceSpec disturbance = default_disturbance();
    CsmConfig csm;
    DsmConfig dsm;
};

inline void validate_scenario(const Scenario& sc) {
    if (!(sc.dt > 0.0)) throw config_error("simulation.dt must be positive");
    if (!(sc.duration >= sc.dt))
        throw config_error("simulation.duration must be at least dt");
    if (!std::isfinite(sc.initial_q)) throw config_error("simulation.initial_q not finite");
    try {
        validate_schedule(sc.schedule);
        validate_disturbance(sc.disturbance);
        validate_csm(sc.csm);
        validate_dsm(sc.dsm);
    } catch (const invalid_input& e) {
        throw config_error(e.what());
    }
    if (sc.dsm.resolve_period > 0.0 && sc.dsm.resolve_period < sc.dt)
        throw config_error("dsm.resolve_period must be at least dt");
}

// Identification cadence in integrator steps; <= 0 selects the default
// of ten steps.
inline std::size_t resolve_steps(const Scenario& sc) {
    if (sc.dsm.resolve_period <= 0.0) return 10;
    return static_cast<std::size_t>(std::llround(sc.dsm.resolve_period / sc.dt));
}

struct TrajectoryRow {
    double t = 0.0;
    double v_z = 0.0;
    double q = 0.0;
    double theta = 0.0;
    double delta = 0.0;
    double delta_c = 0.0;
    double q_meas = 0.0;
    double q_c = 0.0;
    double theta_c = 0.0;
    double e_q = 0.0;      // q_c - q (true state)
    double e_theta = 0.0;  // theta_c - theta (true state)
    double S = 0.0;        // active manifold value
    double f11 = 0.0;
    double f12 = 0.0;
    // DSM only; zero rows for CSM logs.
    double a2 = 0.0;
    double a3 = 0.0;
    double b2 = 0.0;
    double residual = 0.0;
};

struct TrajectoryLog {
    ControllerKind controller = ControllerKind::Csm;
    std::vector<TrajectoryRow> rows;
};

struct DsmCoefficientRecord {
    double t = 0.0;
    double a2 = 0.0;
    double a3 = 0.0;
    double b2 = 0.0;
    double residual = 0.0;
    double condition = 0.0;
    int accepted = 1;  // 0 when the solve was rejected and coefficients kept
};

struct ReachabilityViolation {
    double t = 0.0;
    double s = 0.0;
    double derivative = 0.0;  // 0.5 (s_{k+1}^2 - s_k^2) / dt
};

// Weak eta-reachability check (eta = 0): outside the boundary layer the
// squared surface value must not grow step to step.
inline std::vector<ReachabilityViolation> reachability_monitor(const TrajectoryLog& log,
                                                               double eps) {
    std::vector<ReachabilityViolation> out;
    for (std::size_t k = 0; k + 1 < log.rows.size(); ++k) {
        const double s0 = log.rows[k].S;
        const double s1 = log.rows[k + 1].S;
        if (std::abs(s0) <= eps) continue;
        const double dt = log.rows[k + 1].t - log.rows[k].t;
        const double d = 0.5 * (s1 * s1 - s0 * s0) / dt;
        if (d > 0.0) out.push_back({log.rows[k].t, s0, d});
    }
    return out;
}

struct Metrics {
    double rms_e_q = 0.0;
    double max_abs_e_q = 0.0;
    double rms_e_theta = 0.0;
    double max_abs_e_theta = 0.0;
    double control_rms = 0.0;
    double reachability_violations = 0.0;  // count; stored double for uniform CSV
    double final_e_theta = 0.0;
};

inline Metrics compute_metrics(const TrajectoryLog& log,
                               const std::vector<ReachabilityViolation>& violations) {
    if (log.rows.empty()) throw invalid_input("compute_metrics: empty log");
    Metrics m;
    double sq = 0.0, sth = 0.0, sc = 0.0;
    for (const auto& r : log.rows) {
        sq += r.e_q * r.e_q;
        sth += r.e_theta * r.e_theta;
        sc += r.delta_c * r.delta_c;
        m.max_abs_e_q = std::max(m.max_abs_e_q, std::abs(r.e_q));
        m.max_abs_e_theta = std::max(m.max_abs_e_theta, std::abs(r.e_theta));
    }
    const double n = static_cast<double>(log.rows.size());
    m.rms_e_q = std::sqrt(sq / n);
    m.rms_e_theta = std::sqrt(sth / n);
    m.control_rms = std::sqrt(sc / n);
    m.reachability_violations = static_cast<double>(violations.size());
    m.final_e_theta = log.rows.back().e_theta;
    return m;
}

struct SimResult {
    TrajectoryLog log;
    Metrics metrics;
    std::vector<ReachabilityViolation> violations;
    std::vector<DsmCoefficientRecord> coefficient_log;  // DSM only
};

namespace detail {

// Joint state layout: [v_z, q, theta, delta, g1, g2, aux1, aux2].
// CSM: aux1 = theta_e (integrated rate error), aux2 unused.
// DSM: aux1, aux2 = manifold-filter states.
using SimState = std::array<double, 8>;

struct StepContext {
    const Scenario* sc;
    ControllerKind kind;
    const WCoefficients* w;  // DSM only
};

inline double measured_rate(const Scenario& sc, const SimState& y) {
    return sc.use_gyro ? kGyroWn * kGyroWn * y[4] : y[1];
}

// Control law evaluated on an arbitrary (time, state) pair; used once
// per step under Hold and at every stage under Stage.
inline double control_value(const StepContext& ctx, double t, const SimState& y,
                            double* surface_out) {
    const Scenario& sc = *ctx.sc;
    const PitchCoefficients c = coeffs_at(sc.schedule, t);
    const double qm = measured_rate(sc, y);
    const double e = sc.reference.qc(t) - qm;
    if (ctx.kind == ControllerKind::Csm) {
        const double S = csm_surface(y[6], e, sc.csm.K);
        if (surface_out) *surface_out = S;
        return csm_control(sc.reference.qdot(t), e, y[0], qm, c, S, sc.csm);
    }
    const ManifoldFilterState f{y[6], y[7]};
    const double S = dsm_manifold(y[3], f, *ctx.w, e);
    if (surface_out) *surface_out = S;
    return dsm_control(S, sc.dsm);
}

inline SimState derivative(const StepContext& ctx, double t, const SimState& y,
                           double delta_c_held) {
    const Scenario& sc = *ctx.sc;
    const PitchCoefficients c = coeffs_at(sc.schedule, t);
    const DisturbanceValue d = disturbance_eval(sc.disturbance, t);
    const double u = sc.control_update == ControlUpdate::Hold
                         ? delta_c_held
                         : control_value(ctx, t, y, nullptr);

    const PlantState dx = plant_deriv({y[0], y[1], y[2]}, c, y[3], d.f11, d.f12);
    const double dd = servo_deriv(y[3], u + matched_eval(sc.disturbance, t));
    const GyroState dg = gyro_deriv({y[4], y[5]}, y[1]);

    const double qm = measured_rate(sc, y);
    const double e = sc.reference.qc(t) - qm;
    double daux1 = 0.0, daux2 = 0.0;
    if (ctx.kind == ControllerKind::Csm) {
        daux1 = e;  // theta_e' = q_e
    } else {
        const ManifoldFilterState df = w_filter_deriv({y[6], y[7]}, *ctx.w, e);
        daux1 = df.w1;
        daux2 = df.w2;
    }
    return {dx.vz, dx.q, dx.th, dd, dg.g1, dg.g2, daux1, daux2};
}

}  // namespace detail

inline SimResult run_scenario(const Scenario& sc, ControllerKind kind) {
    validate_scenario(sc);

    // Tolerance absorbs the representation error of dt (60/1e-3 must be
    // 60000 steps, not 59999).
    const std::size_t nsteps =
        static_cast<std::size_t>(std::floor(sc.duration / sc.dt + 1e-9));
    const std::size_t rsteps = kind == ControllerKind::Dsm ? resolve_steps(sc) : 0;

    SimResult result;
    result.log.controller = kind;
    result.log.rows.reserve(nsteps + 1);

    detail::SimState y{};
    y[1] = sc.initial_q;

    WCoefficients w;
    SolveResult last_solve;
    detail::StepContext ctx{&sc, kind, &w};

    for (std::size_t k = 0; k <= nsteps; ++k) {
        const double t = static_cast<double>(k) * sc.dt;

        if (kind == ControllerKind::Dsm && k % rsteps == 0) {
            const RationalTF G = pitch_plant_tf(coeffs_at(sc.schedule, t));
            try {
                const SolveResult r = solve_w_coefficients(G, sc.dsm.wn_rad());
                ManifoldFilterState filt{y[6], y[7]};
                update_w_realization(w, r.w, filt);
                y[6] = filt.w1;
                y[7] = filt.w2;
                last_solve = r;
                result.coefficient_log.push_back(
                    {t, r.w.a2, r.w.a3, r.w.b2, r.residual, r.condition, 1});
            } catch (const ill_conditioned_identification&) {
                if (k == 0) throw;  // no previous coefficients to retain
                result.coefficient_log.push_back(
                    {t, w.a2, w.a3, w.b2, last_solve.residual, last_solve.condition, 0});
            }
        }

        double S = 0.0;
        const double delta_c = detail::control_value(ctx, t, y, &S);

        TrajectoryRow row;
        row.t = t;
        row.v_z = y[0];
        row.q = y[1];
        row.theta = y[2];
        row.delta = y[3];
        row.delta_c = delta_c;
        row.q_meas = detail::measured_rate(sc, y);
        row.q_c = sc.reference.qc(t);
        row.theta_c = sc.reference.theta_c(t);
        row.e_q = row.q_c - row.q;
        row.e_theta = row.theta_c - row.theta;
        row.S = S;
        const DisturbanceValue d = disturbance_eval(sc.disturbance, t);
        row.f11 = d.f11;
        row.f12 = d.f12;
        if (kind == ControllerKind::Dsm) {
            row.a2 = w.a2;
            row.a3 = w.a3;
            row.b2 = w.b2;
            row.residual = last_solve.residual;
        }
        result.log.rows.push_back(row);

        if (k == nsteps) break;
        auto f = [&](double ts, const detail::SimState& ys) {
            return detail::derivative(ctx, ts, ys, delta_c);
        };
        y = rk4_step(f, y, t, sc.dt);
    }

    const double eps = kind == ControllerKind::Csm ? sc.csm.epsilon : sc.dsm.epsilon;
    result.violations = reachability_monitor(result.log, eps);
    result.metrics = compute_metrics(result.log, result.violations);
    return result;
}

}  // namespace alv
