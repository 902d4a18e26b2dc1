#include <doctest.h>

#include <cmath>
#include <random>

#include "rpquad/errors.hpp"
#include "rpquad/pcv.hpp"

using namespace rpq;

TEST_CASE("v_p examples") {
    CHECK(v_p(0.4, 2) == doctest::Approx(0.7).epsilon(1e-15));
    for (int p : {2, 3, 7, 12}) {
        CHECK(v_p(-1.0, p) == 0.0);
        CHECK(std::abs(v_p(1.0, p) - 1.0) <= 1e-15);
    }
    const double t = 0.3;
    const double horner = ((0.5 - 1.0 / 7) * t * t + 1.0 / 7) * t + 0.5;
    CHECK(std::abs(v_p(t, 7) - horner) <= 1e-15);
    CHECK_THROWS_AS((void)v_p(0.0, 1), InvalidArgument);
    CHECK_THROWS_AS((void)PcvMap(1), InvalidArgument);
}

TEST_CASE("psi_p examples and endpoint values") {
    CHECK(psi_p(0.0, 3) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(std::abs(psi_p(0.5, 2) - 1.8) <= 1e-15);
    CHECK(psi_p(-1.0, 5) == 0.0);
    for (int p = 2; p <= 12; ++p) {
        CHECK(psi_p(-1.0, p) == 0.0);
        CHECK(std::abs(psi_p(1.0, p) - 2.0) <= 1e-15);
        CHECK(std::abs(psi_p(0.0, p) - 1.0) <= 1e-15);
    }
}

TEST_CASE("psi_p monotone and symmetric") {
    std::mt19937 rng(5);
    std::uniform_real_distribution<double> U(-1.0, 1.0);
    for (int p = 2; p <= 12; ++p) {
        for (int s = 0; s < 1000; ++s) {
            double a = U(rng), b = U(rng);
            if (a == b) continue;
            if (a > b) std::swap(a, b);
            CHECK(psi_p(a, p) < psi_p(b, p));
            CHECK(std::abs(psi_p(a, p) + psi_p(-a, p) - 2.0) <= 1e-14);
        }
    }
}

TEST_CASE("psi_p_deriv against finite differences") {
    const double h = 1e-6;
    for (int p : {2, 3, 5, 8}) {
        for (double t : {-0.9, -0.5, 0.0, 0.2, 0.7, 0.95}) {
            const double fd = (psi_p(t + h, p) - psi_p(t - h, p)) / (2 * h);
            CHECK(std::abs(psi_p_deriv(t, p) - fd) <= 1e-7 * std::max(1.0, std::abs(fd)));
            CHECK(psi_p_deriv(t, p) >= 0.0);
        }
    }
    // One-sided difference at t = -1 for p = 2.
    const double hs = 1e-7;
    const double one_sided = (psi_p(-1.0 + hs, 2) - psi_p(-1.0, 2)) / hs;
    CHECK(std::abs(psi_p_deriv(-1.0, 2) - one_sided) <= 1e-6);
    CHECK(psi_p_deriv(-1.0, 4) == 0.0);
}

TEST_CASE("factorized forms") {
    CHECK(std::abs(pcv_factor_Q(-1.0, 2) - 0.5) <= 1e-15);
    const double t6 = 0.3;
    CHECK(std::abs(psi_p(t6, 6) - std::pow(t6 + 1, 6) * pcv_factor_Q(t6, 6)) <=
          1e-12 * psi_p(t6, 6));
    const double t4 = 0.9;
    CHECK(std::abs(psi_p_deriv(t4, 4) - std::pow(t4 + 1, 3) * pcv_factor_R(t4, 4)) <=
          1e-12 * psi_p_deriv(t4, 4));
    for (int p = 2; p <= 10; ++p) {
        for (double t : {-0.99, -0.5, 0.1, 0.8}) {
            CHECK(std::abs(psi_p(t, p) - std::pow(t + 1, p) * pcv_factor_Q(t, p)) <=
                  1e-12 * psi_p(t, p));
            CHECK(pcv_factor_Q(t, p) > 0.0);
            CHECK(pcv_factor_R(t, p) > 0.0);
        }
    }
}

TEST_CASE("zero of order p at t = -1") {
    for (int p = 2; p <= 8; ++p) {
        // psi(-1 + s) ~ Q(-1) s^p: the ratio psi / s^p tends to a nonzero constant.
        const double q = pcv_factor_Q(-1.0, p);
        CHECK(q > 1e-3);
        for (double s : {1e-2, 1e-3, 1e-4}) {
            const double ratio = psi_p(-1.0 + s, p) / std::pow(s, p);
            CHECK(std::abs(ratio - q) <= 1e-1 * q);
        }
        // Lower derivatives vanish: psi(-1+s)/s^j -> 0 for j < p.
        for (int j = 1; j < p; ++j) {
            const double a = psi_p(-1.0 + 1e-2, p) / std::pow(1e-2, j);
            const double b = psi_p(-1.0 + 1e-3, p) / std::pow(1e-3, j);
            CHECK(b < a);
        }
    }
}

TEST_CASE("PcvMap agrees with free functions and keeps accuracy near -1") {
    for (int p : {2, 5, 9}) {
        const PcvMap map(p);
        CHECK(map.degree() == p);
        for (double t : {-1.0, -0.7, 0.0, 0.4, 1.0}) {
            CHECK(std::abs(map(t) - psi_p(t, p)) <= 1e-15 * std::max(1.0, psi_p(t, p)));
            CHECK(std::abs(map.deriv(t) - psi_p_deriv(t, p)) <=
                  1e-13 * std::max(1.0, psi_p_deriv(t, p)));
            CHECK(std::abs(map.factor_Q(t) - pcv_factor_Q(t, p)) <= 1e-14);
            CHECK(std::abs(map.factor_R(t) - pcv_factor_R(t, p)) <= 1e-13);
        }
        // eval_shifted(s) with tiny s: relative accuracy against the power form.
        const double s = 1e-12;
        const PcvValue v = map.eval_shifted(s);
        CHECK(std::abs(v.psi - std::pow(s, p) * pcv_factor_Q(-1.0, p)) <= 1e-10 * v.psi);
    }
}
