#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <vector>

#include "alv/errors.hpp"

namespace alv {

// Coefficients ascending by power of s: coeffs[k] multiplies s^k.
// Invariant: leading (highest-index) coefficient nonzero unless the
// polynomial is identically zero, which is represented as {0}.
using Polynomial = std::vector<double>;

// Trailing coefficients with |c| <= 1e-12 are floating-point residue,
// not genuine degree.
inline constexpr double kPolyTrimThreshold = 1e-12;

inline Polynomial poly_trim(Polynomial p) {
    while (p.size() > 1 && std::abs(p.back()) <= kPolyTrimThreshold) p.pop_back();
    if (p.empty()) p.push_back(0.0);
    return p;
}

inline bool poly_is_zero(const Polynomial& p) {
    return p.size() == 1 && p[0] == 0.0;
}

inline std::size_t poly_degree(const Polynomial& p) {
    return p.empty() ? 0 : p.size() - 1;
}

inline Polynomial poly_add(const Polynomial& p, const Polynomial& q) {
    Polynomial r(std::max(p.size(), q.size()), 0.0);
    for (std::size_t k = 0; k < p.size(); ++k) r[k] += p[k];
    for (std::size_t k = 0; k < q.size(); ++k) r[k] += q[k];
    return poly_trim(std::move(r));
}

inline Polynomial poly_sub(const Polynomial& p, const Polynomial& q) {
    Polynomial r(std::max(p.size(), q.size()), 0.0);
    for (std::size_t k = 0; k < p.size(); ++k) r[k] += p[k];
    for (std::size_t k = 0; k < q.size(); ++k) r[k] -= q[k];
    return poly_trim(std::move(r));
}

inline Polynomial poly_mul(const Polynomial& p, const Polynomial& q) {
    if (poly_is_zero(p) || poly_is_zero(q)) return {0.0};
    Polynomial r(p.size() + q.size() - 1, 0.0);
    for (std::size_t i = 0; i < p.size(); ++i)
        for (std::size_t j = 0; j < q.size(); ++j) r[i + j] += p[i] * q[j];
    return poly_trim(std::move(r));
}

inline Polynomial poly_scale(const Polynomial& p, double c) {
    Polynomial r(p);
    for (double& v : r) v *= c;
    return poly_trim(std::move(r));
}

// Multiply by s^n (shift coefficients up).
inline Polynomial poly_shift(const Polynomial& p, std::size_t n) {
    if (poly_is_zero(p)) return {0.0};
    Polynomial r(p.size() + n, 0.0);
    for (std::size_t k = 0; k < p.size(); ++k) r[k + n] = p[k];
    return r;
}

template <class S>
S poly_eval(const Polynomial& p, S s) {
    S acc{};
    for (std::size_t k = p.size(); k-- > 0;) acc = acc * s + p[k];
    return acc;
}

}  // namespace alv
