#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numbers>

#include <Eigen/Dense>
#include <Eigen/SVD>

#include "alv/controller_csm.hpp"  // sat
#include "alv/errors.hpp"
#include "alv/polynomial.hpp"
#include "alv/transfer_function.hpp"

namespace alv {

// W(s) = (s^2 + a2 s + a3) / (s^2 + b2 s); a1 = b1 = 1 fixed.
struct WCoefficients {
    double a2 = 0.0;
    double a3 = 0.0;
    double b2 = 0.0;
};

struct DsmConfig {
    double rho = 1.0;            // rad, switching gain
    // Wide quasi-linear boundary layer. A narrow layer (1e-3) drives the
    // manifold loop into a rate-limit cycle with permanent actuator
    // saturation; the wide layer makes delta_c = -(rho/eps) S a smooth
    // low-gain feedback on the identified manifold, which is the
    // configuration that actually beats the conventional surface.
    double epsilon = 1e3;        // manifold boundary-layer half-width
    double wn = 10.0;            // target-polynomial natural frequency
    bool wn_is_hz = true;        // interpret wn in Hz (converted to rad/s)
    double resolve_period = 0.0; // s between identifications; <= 0 means 10*dt
    double wn_rad() const {
        return wn_is_hz ? 2.0 * std::numbers::pi * wn : wn;
    }
};

inline void validate_dsm(const DsmConfig& c) {
    if (!(c.rho > 0.0) || !(c.epsilon > 0.0) || !(c.wn > 0.0))
        throw invalid_input("dsm: rho, epsilon, wn must be positive");
}

// Minimum-ITAE quintic: s^5 + 2.8 w s^4 + 5 w^2 s^3 + 5.5 w^3 s^2
//                        + 3.4 w^4 s + w^5 (ascending storage).
inline Polynomial itae_quintic(double wn) {
    if (!(wn > 0.0)) throw invalid_input("itae_quintic: wn must be positive");
    const double w2 = wn * wn;
    const double w3 = w2 * wn;
    const double w4 = w2 * w2;
    const double w5 = w4 * wn;
    return {w5, 3.4 * w4, 5.5 * w3, 5.0 * w2, 2.8 * wn, 1.0};
}

inline Polynomial w_numerator(const WCoefficients& w) { return {w.a3, w.a2, 1.0}; }
inline Polynomial w_denominator(const WCoefficients& w) { return {0.0, w.b2, 1.0}; }

// Numerator of 1 - W(s) G(s) cleared of denominators: Q D - P N.
// Degree must come out exactly 5 for the quintic match.
inline Polynomial closed_loop_charpoly(const WCoefficients& w, const RationalTF& G) {
    Polynomial r = poly_sub(poly_mul(w_denominator(w), G.den),
                            poly_mul(w_numerator(w), G.num));
    if (poly_degree(r) != 5)
        throw invalid_input("closed_loop_charpoly: degree != 5 (degenerate plant)");
    return r;
}

// The five non-leading coefficients of the monic closed-loop polynomial
// are affine in (a2, a3, b2):
//   row k:  [s^{k}] of  b2 s D - a2 s N - a3 N  =  T_k - [s^k](s^2 D - s^2 N)
// after dividing through by the leading coefficient of D.
struct IdentificationSystem {
    Eigen::Matrix<double, 5, 3> M;
    Eigen::Matrix<double, 5, 1> rhs;
};

inline IdentificationSystem build_identification_system(const RationalTF& G,
                                                        const Polynomial& target) {
    if (poly_degree(G.den) != 3 || poly_degree(G.num) != 2)
        throw invalid_input("identification: G must have deg(N) = 2, deg(D) = 3");
    if (poly_degree(target) != 5)
        throw invalid_input("identification: target polynomial must have degree 5");

    const double lead = G.den.back();  // closed-loop leading coeff is b1 * lead(D)
    const Polynomial D = poly_scale(G.den, 1.0 / lead);
    const Polynomial N = poly_scale(G.num, 1.0 / lead);
    const Polynomial T = poly_scale(target, 1.0 / target.back());

    const Polynomial sD = poly_shift(D, 1);
    const Polynomial sN = poly_shift(N, 1);
    const Polynomial s2D = poly_shift(D, 2);
    const Polynomial s2N = poly_shift(N, 2);

    auto at = [](const Polynomial& p, std::size_t k) {
        return k < p.size() ? p[k] : 0.0;
    };

    IdentificationSystem sys;
    for (std::size_t k = 0; k < 5; ++k) {
        sys.M(k, 0) = -at(sN, k);  // a2 column
        sys.M(k, 1) = -at(N, k);   // a3 column
        sys.M(k, 2) = at(sD, k);   // b2 column
        sys.rhs(k) = at(T, k) - at(s2D, k) + at(s2N, k);
    }
    return sys;
}

struct SolveResult {
    WCoefficients w;
    double residual = 0.0;   // unweighted coefficient mismatch ||M u - rhs||
    double condition = 0.0;  // of the row-weighted system
};

inline constexpr double kIdentConditionMax = 1e12;

// Row-weighted least squares: each equation is scaled by
// 1 / max(|target row|, 1) so the fit is relative per coefficient.
// An absolute-distance fit sacrifices the low-order (stability-critical)
// coefficients to the huge high-order target terms and produces unstable
// closed-loop error dynamics on every schedule tried.
inline SolveResult solve_weighted_lstsq(const IdentificationSystem& sys) {
    Eigen::Matrix<double, 5, 1> w;
    for (int k = 0; k < 5; ++k) w(k) = 1.0 / std::max(std::abs(sys.rhs(k)), 1.0);

    const Eigen::Matrix<double, 5, 3> Mw = w.asDiagonal() * sys.M;
    const Eigen::Matrix<double, 5, 1> rw = w.asDiagonal() * sys.rhs;

    Eigen::JacobiSVD<Eigen::Matrix<double, 5, 3>> svd(
        Mw, Eigen::ComputeFullU | Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    const double cond = sv(2) > 0.0 ? sv(0) / sv(2)
                                    : std::numeric_limits<double>::infinity();
    if (!(cond <= kIdentConditionMax))
        throw ill_conditioned_identification(
            "identification: condition " + std::to_string(cond) + " exceeds 1e12");

    const Eigen::Matrix<double, 3, 1> u = svd.solve(rw);
    SolveResult r;
    r.w = {u(0), u(1), u(2)};
    r.residual = (sys.M * u - sys.rhs).norm();
    r.condition = cond;
    return r;
}

// Match Q D - P N against an explicit degree-5 target polynomial.
inline SolveResult solve_w_coefficients(const RationalTF& G, const Polynomial& target) {
    return solve_weighted_lstsq(build_identification_system(G, target));
}

// Match against the ITAE quintic at the configured natural frequency.
inline SolveResult solve_w_coefficients(const RationalTF& G, double wn_rad) {
    return solve_w_coefficients(G, itae_quintic(wn_rad));
}

// Time-domain actor for W(s): controllable canonical, biproper with
// feedthrough 1, driven by the rate error e.
//   w1' = w2;  w2' = -b2 w2 + e;  w_out = a3 w1 + (a2 - b2) w2 + e
struct ManifoldFilterState {
    double w1 = 0.0;
    double w2 = 0.0;
};

inline double w_filter_output(const ManifoldFilterState& f, const WCoefficients& w,
                              double e) {
    return w.a3 * f.w1 + (w.a2 - w.b2) * f.w2 + e;
}

inline ManifoldFilterState w_filter_deriv(const ManifoldFilterState& f,
                                          const WCoefficients& w, double e) {
    return {f.w2, -w.b2 * f.w2 + e};
}

// Manifold value: delta plus the compensator output.
inline double dsm_manifold(double delta, const ManifoldFilterState& f,
                           const WCoefficients& w, double e) {
    return delta + w_filter_output(f, w, e);
}

// delta_c = -rho sat(S/eps), bounded by rho.
inline double dsm_control(double manifold, const DsmConfig& cfg) {
    const double u = -cfg.rho * sat(manifold, cfg.epsilon);
    return u == 0.0 ? 0.0 : u;  // normalize -0 so exact-zero runs log +0
}

// Coefficient update keeps the internal filter state: rebuilding the
// canonical matrices is just swapping (a2, a3, b2). Resetting the state
// instead would inject a transient into the manifold at every
// identification instant.
inline void update_w_realization(WCoefficients& current, const WCoefficients& next,
                                 ManifoldFilterState& state_preserved) {
    (void)state_preserved;
    current = next;
}

}  // namespace alv
