#include <doctest.h>

#include <cmath>
#include <sstream>
#include <vector>

#include "rpquad/errors.hpp"
#include "rpquad/harness.hpp"

using namespace rpq;

TEST_CASE("compute_noc examples") {
    const double a[] = {1e-2, 2.5e-3};
    CHECK(*compute_noc(a, 2.0)[0] == doctest::Approx(2.0).epsilon(1e-12));
    const double b[] = {1e-3, 1e-3};
    CHECK(std::abs(*compute_noc(b, 2.0)[0]) <= 1e-15);
    const double c[] = {2.74e-4, 6.73e-6};
    CHECK(*compute_noc(c, 2.0)[0] == doctest::Approx(5.35).epsilon(1e-3));
    const double z[] = {1e-3, 0.0};
    CHECK_FALSE(compute_noc(z, 2.0)[0].has_value());
    CHECK_THROWS_AS((void)compute_noc(a, 1.0), InvalidArgument);
}

TEST_CASE("noc is consistent with the errors") {
    const double e[] = {3e-2, 4e-3, 7e-4, 1e-4, 1.3e-5};
    const auto noc = compute_noc(e, 3.0);
    REQUIRE(noc.size() == 4);
    for (size_t i = 0; i < noc.size(); ++i) {
        CHECK(e[i] / std::pow(3.0, *noc[i]) == doctest::Approx(e[i + 1]).epsilon(1e-12));
    }
}

TEST_CASE("grid_ratio") {
    const int g[] = {8, 16, 32};
    CHECK(grid_ratio(g) == 2.0);
    const int g3[] = {1, 3, 9, 27};
    CHECK(grid_ratio(g3) == 3.0);
    const int one[] = {5};
    CHECK(grid_ratio(one) == 2.0);
    const int bad[] = {8, 16, 24};
    CHECK_THROWS_AS((void)grid_ratio(bad), InvalidArgument);
    const int dec[] = {16, 8};
    CHECK_THROWS_AS((void)grid_ratio(dec), InvalidArgument);
    CHECK_THROWS_AS((void)grid_ratio(std::span<const int>{}), InvalidArgument);
}

TEST_CASE("saturation and asymptotic order") {
    const int lv[] = {8, 16, 32, 64, 128, 256};
    const int N[] = {8, 16, 32, 64, 128, 256};
    const double e[] = {1e-4, 1e-6, 1e-8, 1e-10, 1e-12, 5e-14};
    const auto t = make_convergence_table("t", lv, N, e);
    CHECK(t.base == 2.0);
    CHECK_FALSE(t.rows[0].noc.has_value());
    CHECK(t.rows.back().saturated);
    CHECK_FALSE(t.rows[4].saturated);
    CHECK(t.eligible_orders().size() == 4);
    CHECK(*t.asymptotic_order() == doctest::Approx(2 * std::log2(10.0)));
    CHECK(median({3.0, 1.0, 2.0}) == 2.0);
    CHECK(median({4.0, 1.0}) == 2.5);
}

TEST_CASE("coefficient decay for a smooth density has no orders") {
    const int N[] = {2, 4, 8};
    const auto t = run_coeff_decay([](double) { return 1.0; }, N, 4);
    for (size_t r = 1; r < t.order.size(); ++r) {
        for (int k = 1; k <= 4; ++k) CHECK_FALSE(t.order[r][k].has_value());
    }
}

TEST_CASE("coefficient decay of the kinked density") {
    // c_k of x^3|x| + ... on an interval of width ~1/N decays like N^-4 for
    // the coefficients dominated by the kink.
    const int N[] = {32, 64, 128};
    const auto t = run_coeff_decay(decay_density(3), N, 6);
    CHECK(*t.order[2][5] == doctest::Approx(4.0).epsilon(0.05));
}

TEST_CASE("quad-conv spec validation and small run") {
    QuadConvSpec s;
    s.n_values = {8, 16, 32};
    CHECK_NOTHROW(s.validate());
    const auto tables = run_quad_convergence(s);
    REQUIRE(tables.size() == 1);
    CHECK(tables[0].rows.size() == 3);
    CHECK(tables[0].rows[0].error == doctest::Approx(2.74e-4).epsilon(0.02));
    s.p_values = {};
    CHECK_THROWS_AS(s.validate(), InvalidArgument);
}

TEST_CASE("pcv edge versus interior") {
    const int n[] = {8, 16};
    const auto rows = run_pcv_edge_vs_interior(7, n);
    REQUIRE(rows.size() == 2);
    for (const auto& r : rows) CHECK(r.boundary_error < r.interior_error);
}

TEST_CASE("csv output has no timing columns") {
    const int lv[] = {8, 16};
    const double e[] = {1e-3, 1e-4};
    std::ostringstream os;
    write_csv(os, make_convergence_table("x", lv, lv, e));
    CHECK(os.str().find("time") == std::string::npos);
    CHECK(os.str().find("wall") == std::string::npos);
}

TEST_CASE("patches_for_ppw") {
    // Unit circle, kappa = 10, n = 15, 12 points per wavelength: 12 * 10 / 15 = 8.
    CHECK(patches_for_ppw(Curve2D::circle(1.0), 10.0, 15, 12.0) == 8);
}
