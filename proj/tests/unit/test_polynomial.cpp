#include <catch2/catch_amalgamated.hpp>

#include <complex>
#include <random>

#include "alv/polynomial.hpp"

using namespace alv;

TEST_CASE("poly_add identities and hand values") {
    CHECK(poly_add({1.0, 0.0, 1.0}, {0.0}) == Polynomial{1.0, 0.0, 1.0});
    CHECK(poly_add({1.0, 1.0}, {-1.0, -1.0}) == Polynomial{0.0});
    CHECK(poly_add({0.0, 2.0, 1.0}, {5.0, 3.0}) == Polynomial{5.0, 5.0, 1.0});
}

TEST_CASE("poly_sub") {
    CHECK(poly_sub({5.0, 5.0, 1.0}, {5.0, 3.0}) == Polynomial{0.0, 2.0, 1.0});
    CHECK(poly_sub({1.0, 1.0}, {1.0, 1.0}) == Polynomial{0.0});
}

TEST_CASE("poly_mul identities and hand convolution") {
    const Polynomial p{3.0, 2.0, 1.0};
    CHECK(poly_mul(p, {1.0}) == p);
    CHECK(poly_mul(p, {0.0}) == Polynomial{0.0});
    // (s+1)(s+2) = s^2 + 3s + 2
    CHECK(poly_mul({1.0, 1.0}, {2.0, 1.0}) == Polynomial{2.0, 3.0, 1.0});
}

TEST_CASE("poly_mul degree and commutativity on random triples") {
    std::mt19937 rng(12345);
    std::uniform_real_distribution<double> coeff(-3.0, 3.0);
    std::uniform_int_distribution<int> deg(0, 4);
    for (int trial = 0; trial < 50; ++trial) {
        auto draw = [&] {
            Polynomial p(static_cast<std::size_t>(deg(rng)) + 1);
            for (double& c : p) c = coeff(rng);
            if (std::abs(p.back()) < 0.1) p.back() = 1.0;  // keep leading well away from trim
            return p;
        };
        const Polynomial a = draw(), b = draw(), c = draw();
        CHECK(poly_degree(poly_mul(a, b)) == poly_degree(a) + poly_degree(b));

        const Polynomial ab = poly_mul(a, b), ba = poly_mul(b, a);
        REQUIRE(ab.size() == ba.size());
        for (std::size_t k = 0; k < ab.size(); ++k)
            CHECK(ab[k] == Catch::Approx(ba[k]).margin(1e-12));

        const Polynomial abc1 = poly_mul(poly_mul(a, b), c);
        const Polynomial abc2 = poly_mul(a, poly_mul(b, c));
        REQUIRE(abc1.size() == abc2.size());
        for (std::size_t k = 0; k < abc1.size(); ++k) {
            const double scale = std::max(std::abs(abc1[k]), 1.0);
            CHECK(std::abs(abc1[k] - abc2[k]) / scale < 1e-12);
        }
    }
}

TEST_CASE("poly_scale") {
    const Polynomial p{4.0, 2.0};
    CHECK(poly_scale(p, 1.0) == p);
    CHECK(poly_scale(p, 0.0) == Polynomial{0.0});
    CHECK(poly_scale(p, 0.5) == Polynomial{2.0, 1.0});
}

TEST_CASE("poly_trim removes floating-point residue only") {
    CHECK(poly_trim({1.0, 2.0, 1e-13}) == Polynomial{1.0, 2.0});
    CHECK(poly_trim({1.0, 2.0, 1e-11}) == Polynomial{1.0, 2.0, 1e-11});
    CHECK(poly_trim({0.0, 0.0}) == Polynomial{0.0});
    CHECK(poly_trim({}) == Polynomial{0.0});
}

TEST_CASE("poly_shift multiplies by powers of s") {
    CHECK(poly_shift({1.0, 2.0}, 2) == Polynomial{0.0, 0.0, 1.0, 2.0});
    CHECK(poly_shift({0.0}, 3) == Polynomial{0.0});
}

TEST_CASE("poly_eval Horner, real and complex") {
    const Polynomial p{2.0, 3.0, 1.0};  // s^2 + 3s + 2 = (s+1)(s+2)
    CHECK(poly_eval(p, 0.0) == 2.0);
    CHECK(poly_eval(p, -1.0) == 0.0);
    CHECK(poly_eval(p, 2.0) == 12.0);
    const std::complex<double> s{1.0, 1.0};
    const std::complex<double> expect = (s + 1.0) * (s + 2.0);
    CHECK(std::abs(poly_eval(p, s) - expect) < 1e-14);
}
