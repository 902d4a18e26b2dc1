#include <doctest.h>

#include <cmath>
#include <sstream>
#include <vector>

#include "rpquad/errors.hpp"
#include "rpquad/gmres.hpp"
#include "rpquad/harness.hpp"
#include "rpquad/helmholtz.hpp"
#include "rpquad/kernels.hpp"

using namespace rpq;

TEST_CASE("gmres examples") {
    const std::vector<cplx> b{1.0, 2.0, 3.0};
    auto ident = [](std::span<const cplx> x, std::span<cplx> y) {
        std::copy(x.begin(), x.end(), y.begin());
    };
    const auto r = gmres_solve(ident, b);
    CHECK(r.converged);
    CHECK(r.iterations == 1);
    for (int i = 0; i < 3; ++i) CHECK(std::abs(r.x[i] - b[i]) <= 1e-14);

    const std::vector<cplx> ones(5, 1.0);
    auto diag = [](std::span<const cplx> x, std::span<cplx> y) {
        for (size_t i = 0; i < x.size(); ++i) y[i] = static_cast<double>(i + 1) * x[i];
    };
    const auto d = gmres_solve(diag, ones, 1e-12);
    CHECK(d.converged);
    CHECK(d.iterations <= 5);
    for (int i = 0; i < 5; ++i) CHECK(std::abs(d.x[i] - 1.0 / (i + 1)) <= 1e-11);

    CHECK_THROWS_AS((void)gmres_solve(ident, std::vector<cplx>{}), InvalidArgument);
    CHECK_THROWS_AS((void)gmres_solve(ident, b, 0.0), InvalidArgument);
}

TEST_CASE("gmres with restart converges") {
    const int n = 40;
    std::vector<cplx> b(n);
    for (int i = 0; i < n; ++i) b[i] = cplx(std::sin(i), std::cos(3.0 * i));
    auto A = [n](std::span<const cplx> x, std::span<cplx> y) {
        for (int i = 0; i < n; ++i) {
            y[i] = 4.0 * x[i];
            if (i > 0) y[i] += x[i - 1];
            if (i + 1 < n) y[i] += cplx(0.0, 1.0) * x[i + 1];
        }
    };
    const auto r = gmres_solve(A, b, 1e-12, 5, 500);
    CHECK(r.converged);
    std::vector<cplx> Ax(n);
    A(r.x, Ax);
    double res = 0.0, nb = 0.0;
    for (int i = 0; i < n; ++i) {
        res += std::norm(Ax[i] - b[i]);
        nb += std::norm(b[i]);
    }
    CHECK(std::sqrt(res / nb) <= 1e-12);
}

TEST_CASE("problem validation") {
    ScatterProblem pr;
    CHECK_NOTHROW(pr.validate());
    pr.kappa = 0.0;
    CHECK_THROWS_AS(pr.validate(), InvalidArgument);
    pr.kappa = 1.0;
    pr.incident = PlaneWave{{1.0, 1.0}};
    CHECK_THROWS_AS(pr.validate(), InvalidArgument);
    pr.incident = PointSource{{2.0, 0.0}};
    CHECK_THROWS_AS(pr.validate(), InvalidArgument);
    CHECK(pr.coupling() == 1.0);
    pr.eta = 0.5;
    CHECK(pr.coupling() == 0.5);
}

TEST_CASE("boundary operator basics") {
    ScatterProblem pr;
    pr.kappa = 3.0;
    pr.P = 6;
    pr.quad.n = 10;
    const std::vector<cplx> zero(60);
    for (const cplx& v : bie_apply(pr, zero)) CHECK(v == cplx{});
    CHECK_THROWS_AS((void)bie_apply(pr, std::vector<cplx>(7)), InvalidArgument);

    // Right-hand side is minus the incident field at the nodes.
    const auto rhs = boundary_rhs(pr);
    CombinedFieldOperator op(pr);
    const auto& pts = op.points();
    for (size_t j = 0; j < pts.size(); ++j) {
        CHECK(std::abs(rhs[j] + incident_field(pr.incident, pr.kappa, pts[j])) <= 1e-15);
    }
}

TEST_CASE("Laplace limit of the double layer on a circle") {
    // With kappa -> 0 and eta = 0 a constant density lies in the null space
    // of phi/2 + K on the exterior side.
    ScatterProblem pr;
    pr.kappa = 1e-4;
    pr.eta = 0.0;
    pr.P = 8;
    pr.quad.n = 12;
    const std::vector<cplx> one(96, 1.0);
    for (const cplx& v : bie_apply(pr, one)) CHECK(std::abs(v) <= 1e-3);
}

TEST_CASE("dense and matrix-free operators agree") {
    ScatterProblem pr;
    pr.curve = Curve2D::star();
    pr.kappa = 4.0;
    pr.P = 6;
    pr.quad.n = 10;
    std::vector<cplx> phi(60);
    for (int j = 0; j < 60; ++j) phi[j] = cplx(std::cos(0.3 * j), std::sin(0.7 * j));
    CombinedFieldOperator dense(pr);
    pr.dense_limit = 0;
    CombinedFieldOperator free(pr);
    CHECK(dense.dense());
    CHECK_FALSE(free.dense());
    const auto a = dense.apply(phi), b = free.apply(phi);
    for (int j = 0; j < 60; ++j) CHECK(std::abs(a[j] - b[j]) <= 1e-13 * (1.0 + std::abs(a[j])));
}

TEST_CASE("point source scattering reproduces the exact field") {
    ScatterProblem pr;
    pr.curve = Curve2D::star();
    pr.kappa = 5.0;
    pr.P = 32;
    pr.quad.n = 15;
    pr.incident = PointSource{{0.2, 0.1}};
    const auto sol = solve_scattering(pr);
    CHECK(sol.converged);
    const auto grid = evaluate_field_grid(pr, sol);
    const auto exact = point_source_exact(grid, pr.kappa, {0.2, 0.1});
    CHECK(relative_grid_error(grid, grid.scattered, exact) <= 1e-8);

    const Vec2 far[] = {{3.0, 0.0}};
    const auto u = evaluate_field(pr, sol, far);
    const cplx ref = -green_helmholtz(pr.kappa, norm(far[0] - Vec2{0.2, 0.1}));
    CHECK(std::abs(u[0] - ref) <= 1e-8 * std::abs(ref));

    // Determinism of repeated solves.
    const auto again = solve_scattering(pr);
    CHECK(again.density == sol.density);
}

TEST_CASE("field evaluation errors and grid output") {
    ScatterProblem pr;
    pr.kappa = 2.0;
    pr.P = 8;
    pr.quad.n = 10;
    const auto sol = solve_scattering(pr);
    const Vec2 inside[] = {{0.1, 0.0}};
    CHECK_THROWS_AS((void)evaluate_field(pr, sol, inside), InvalidArgument);
    const Vec2 touching[] = {{1.0 + 1e-15, 0.0}};
    CHECK_THROWS_AS((void)evaluate_field(pr, sol, touching), ProximityError);
    const Vec2 close[] = {{1.01, 0.0}};
    CHECK(std::isfinite(std::abs(evaluate_field(pr, sol, close)[0])));

    const auto grid = evaluate_field_grid(pr, sol, -3.0, 3.0, 5);
    CHECK(grid.points.size() == 25);
    std::ostringstream os;
    write_field_csv(os, grid);
    CHECK(os.str().find("nan") != std::string::npos);  // centre point is inside
    std::ostringstream ds;
    write_density_csv(ds, sol);
    const std::string dens = ds.str();
    CHECK(std::count(dens.begin(), dens.end(), '\n') == 81);
}
