#pragma once

#include <complex>
#include <iosfwd>
#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "rpquad/geometry.hpp"
#include "rpquad/gmres.hpp"
#include "rpquad/quad_engine.hpp"

namespace rpq {

struct PlaneWave {
    Vec2 direction{1.0, 0.0};
};

/// Field of a point source at z0; with z0 inside the obstacle the exact
/// scattered field is -G(., z0).
struct PointSource {
    Vec2 z0{0.0, 0.0};
};

using Incident = std::variant<PlaneWave, PointSource>;

[[nodiscard]] cplx incident_field(const Incident& incident, double kappa, Vec2 x);

/// Sign of the incident field on the right-hand side of the boundary equation.
enum class RhsSign { Minus, Plus };

struct ScatterProblem {
    Curve2D curve = Curve2D::circle(1.0);
    double kappa = 1.0;
    std::optional<double> eta;  ///< coupling constant; defaults to kappa
    Incident incident = PlaneWave{};
    QuadConfig quad{15, 0, 6, 1.0};
    int P = 8;
    RhsSign rhs_sign = RhsSign::Minus;
    double gmres_tol = 1e-10;
    int gmres_restart = 0;
    int gmres_max_iter = 500;
    int dense_limit = 4096;  ///< assemble a dense matrix up to this many unknowns

    [[nodiscard]] double coupling() const { return eta.value_or(kappa); }
    [[nodiscard]] int num_unknowns() const { return P * quad.n; }
    [[nodiscard]] KernelSpec kernel() const { return KernelSpec::helmholtz_combined(kappa, coupling()); }
    /// Throws InvalidArgument for kappa <= 0, non-unit plane-wave direction,
    /// or a point source outside the curve.
    void validate() const;
};

struct WallTimes {
    double precompute = 0.0;
    double solve = 0.0;
    double total = 0.0;
};

struct ScatterSolution {
    std::vector<cplx> density;  ///< phi at the boundary nodes, patch-major
    std::vector<double> params;  ///< curve parameter of each node
    int gmres_iterations = 0;
    double final_residual = 0.0;
    bool converged = false;
    WallTimes wall;
};

/// Discretized phi/2 + K phi - i eta S phi on a patched closed curve.
class CombinedFieldOperator {
public:
    explicit CombinedFieldOperator(const ScatterProblem& problem);

    [[nodiscard]] int size() const { return N_; }
    [[nodiscard]] bool dense() const { return !matrix_.empty(); }
    [[nodiscard]] const std::vector<double>& params() const { return s_; }
    [[nodiscard]] const std::vector<Vec2>& points() const { return y_; }

    void apply(std::span<const cplx> phi, std::span<cplx> out) const;
    [[nodiscard]] std::vector<cplx> apply(std::span<const cplx> phi) const;

private:
    struct NearBlock {
        int patch;
        std::vector<cplx> beta;
    };

    ScatterProblem problem_;
    int n_ = 0;
    int P_ = 0;
    int N_ = 0;
    std::vector<double> s_, jac_;
    std::vector<Vec2> y_, nu_;
    std::vector<std::vector<NearBlock>> near_;  // per target
    std::vector<cplx> matrix_;                  // row-major, empty when matrix-free

    [[nodiscard]] bool is_near(int target, int patch) const;
    [[nodiscard]] cplx regular_entry(int target, int source) const;
};

/// One application of the boundary operator (builds the discretization).
[[nodiscard]] std::vector<cplx> bie_apply(const ScatterProblem& problem, std::span<const cplx> phi);

[[nodiscard]] std::vector<cplx> boundary_rhs(const ScatterProblem& problem);

[[nodiscard]] ScatterSolution solve_scattering(const ScatterProblem& problem);

/// Scattered field D phi - i eta S phi at exterior points. Points close to
/// the boundary are handled by adaptive patch subdivision; a point that
/// stays too close after the maximum depth raises ProximityError.
[[nodiscard]] std::vector<cplx> evaluate_field(const ScatterProblem& problem,
                                               const ScatterSolution& solution,
                                               std::span<const Vec2> points);

struct FieldGrid {
    std::vector<Vec2> points;
    std::vector<bool> interior;
    std::vector<cplx> scattered;     ///< NaN inside the obstacle
    std::vector<double> abs_total;   ///< |u^i + u^s|, NaN inside
};

/// Points and interior flags of the m x m equispaced grid on [lo, hi]^2,
/// row by row in y; field columns are left empty.
[[nodiscard]] FieldGrid field_grid_layout(const Curve2D& curve, double lo = -3.0, double hi = 3.0,
                                          int m = 21);

/// m x m equispaced grid on [lo, hi]^2.
[[nodiscard]] FieldGrid evaluate_field_grid(const ScatterProblem& problem,
                                            const ScatterSolution& solution, double lo = -3.0,
                                            double hi = 3.0, int m = 21);

/// Columns x, y, re(u^s), im(u^s), abs(u_total).
void write_field_csv(std::ostream& os, const FieldGrid& grid);
/// Columns t, re(phi), im(phi).
void write_density_csv(std::ostream& os, const ScatterSolution& solution);

}  // namespace rpq
