#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "alv/errors.hpp"
#include "alv/polynomial.hpp"

namespace alv {

struct RationalTF {
    Polynomial num;
    Polynomial den;  // never identically zero
};

inline std::complex<double> tf_eval(const RationalTF& tf, std::complex<double> s) {
    return poly_eval(tf.num, s) / poly_eval(tf.den, s);
}

// Controllable canonical form: superdiagonal of A is 1, bottom row holds
// the negated monic denominator coefficients, B = [0,...,0,1]^T.
struct StateSpaceRealization {
    std::size_t n = 0;
    std::vector<double> A;  // row-major n x n
    std::vector<double> B;  // n
    std::vector<double> C;  // n
    double D = 0.0;
};

inline StateSpaceRealization realize_canonical(const RationalTF& tf) {
    const Polynomial num = poly_trim(tf.num);
    const Polynomial den = poly_trim(tf.den);
    if (poly_is_zero(den)) throw invalid_input("realize_canonical: zero denominator");
    if (poly_degree(num) > poly_degree(den))
        throw not_realizable("realize_canonical: improper transfer function");

    const std::size_t n = poly_degree(den);
    const double lead = den.back();

    // Monic-normalized copies; the caller's polynomials are not mutated.
    std::vector<double> d(n), m(n + 1, 0.0);
    for (std::size_t k = 0; k < n; ++k) d[k] = den[k] / lead;
    for (std::size_t k = 0; k < num.size(); ++k) m[k] = num[k] / lead;

    StateSpaceRealization ss;
    ss.n = n;
    ss.D = m[n];  // nonzero only for biproper ratios
    ss.A.assign(n * n, 0.0);
    ss.B.assign(n, 0.0);
    ss.C.assign(n, 0.0);
    if (n == 0) return ss;  // pure gain

    for (std::size_t i = 0; i + 1 < n; ++i) ss.A[i * n + i + 1] = 1.0;
    for (std::size_t k = 0; k < n; ++k) ss.A[(n - 1) * n + k] = -d[k];
    ss.B[n - 1] = 1.0;
    for (std::size_t k = 0; k < n; ++k) ss.C[k] = m[k] - ss.D * d[k];
    return ss;
}

// Frequency response C (sI - A)^{-1} B + D evaluated by forward
// substitution on the canonical structure: with x_{k+1} = s x_k on the
// resolvent chain, (sI - A) x = B has x_k = s^k / den_monic(s).
inline std::complex<double> ss_eval(const StateSpaceRealization& ss, std::complex<double> s) {
    if (ss.n == 0) return ss.D;
    // Horner over the monic denominator [d0..d_{n-1}, 1] read off A's bottom row.
    std::complex<double> denom = 1.0;
    for (std::size_t k = ss.n; k-- > 0;) denom = denom * s - ss.A[(ss.n - 1) * ss.n + k];
    std::complex<double> acc = 0.0, sk = 1.0;
    for (std::size_t k = 0; k < ss.n; ++k) {
        acc += ss.C[k] * sk;
        sk *= s;
    }
    return acc / denom + ss.D;
}

}  // namespace alv
