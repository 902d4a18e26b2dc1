#pragma once

#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "rpquad/helmholtz.hpp"
#include "rpquad/kernels.hpp"
#include "rpquad/quad_engine.hpp"

namespace rpq {

/// Errors at or below this level are treated as saturated and excluded from
/// slope estimates.
inline constexpr double kSaturationLevel = 1e-13;

/// log_b(e[i] / e[i+1]) for consecutive entries; an entry is empty when
/// either error is not positive.
[[nodiscard]] std::vector<std::optional<double>> compute_noc(std::span<const double> errors,
                                                             double base);

/// Ratio of a strictly increasing geometric grid; throws InvalidArgument
/// when the grid is not geometric.
[[nodiscard]] double grid_ratio(std::span<const int> grid);

struct ConvergenceRow {
    int level = 0;  ///< grid value (n or P)
    int N = 0;      ///< total unknowns
    double error = 0.0;
    std::optional<double> noc;  ///< empty on the first row and for non-positive errors
    bool saturated = false;     ///< error <= kSaturationLevel
};

struct ConvergenceTable {
    std::string label;
    double base = 2.0;
    std::vector<ConvergenceRow> rows;

    /// noc entries whose two errors are both above the saturation level.
    [[nodiscard]] std::vector<double> eligible_orders() const;
    /// Median of the last `count` eligible orders; empty if none exist.
    [[nodiscard]] std::optional<double> asymptotic_order(int count = 3) const;
};

/// Builds rows from a grid and its errors, filling noc and saturation flags.
[[nodiscard]] ConvergenceTable make_convergence_table(std::string label,
                                                      std::span<const int> levels,
                                                      std::span<const int> unknowns,
                                                      std::span<const double> errors);

[[nodiscard]] double median(std::vector<double> values);

// ---------------------------------------------------------------------------
// Chebyshev coefficient decay

/// x^m |x| + sum_{j=0}^{m} x^j.
[[nodiscard]] std::function<double(double)> decay_density(int m);

struct CoeffDecayTable {
    std::vector<int> N;                     ///< interval is [-1/(2N), 1/N]
    int k_max = 10;
    std::vector<std::vector<double>> magnitude;  ///< |c_k|, k = 0..k_max, per N
    /// Decay order of c_k between N[r-1] and N[r] (rows r >= 1); empty when
    /// either coefficient is negligible.
    std::vector<std::vector<std::optional<double>>> order;
};

[[nodiscard]] CoeffDecayTable run_coeff_decay(const std::function<double(double)>& u,
                                              std::span<const int> N, int k_max = 10,
                                              int nodes = 16);

// ---------------------------------------------------------------------------
// 1D quadrature convergence

/// Smooth part added to y^m |y|.
enum class SmoothPart { None, One, LinearPlusOne };

[[nodiscard]] std::function<double(double)> quad_density(int m, SmoothPart smooth);

struct QuadConvSpec {
    KernelSpec kernel = KernelSpec::log();
    int m = 3;
    SmoothPart smooth = SmoothPart::None;
    std::vector<int> p_values{3};
    /// Fixed-patch mode grows n over `n_values` with `patch_values[0]`
    /// patches; varying mode grows P over `patch_values` with `n_values[0]`.
    bool varying = false;
    std::vector<int> n_values{8, 16, 32, 64, 128, 256};
    std::vector<int> patch_values{1};
    int nbeta_factor = 4;
    double near_threshold = 1.0;
    double a = -1.0;
    double b = 1.0;
    double reference_tol = 1e-13;

    void validate() const;
};

/// One table per PCV degree; the reference values are shared. The error is
/// max_j |K[u](x_j) - K_h[u](x_j)| / max_j |K[u](x_j)| over all nodes.
[[nodiscard]] std::vector<ConvergenceTable> run_quad_convergence(const QuadConvSpec& spec);

// ---------------------------------------------------------------------------
// Edge versus interior singularity treatment

struct PcvSplitRow {
    int n = 0;
    double boundary_error = 0.0;
    double interior_error = 0.0;
};

/// Errors for int_{-1}^{1} |t|^{-alpha} dt: split at the singularity with
/// n PCV nodes per side, or one n-node rule whose PCV clusters at t = 0.
[[nodiscard]] std::vector<PcvSplitRow> run_pcv_edge_vs_interior(int p, std::span<const int> n,
                                                                double alpha = 0.1);

// ---------------------------------------------------------------------------
// Scattering

struct ScatterStudySpec {
    ScatterProblem base;  ///< curve, wavenumber, incident field, tolerances
    /// Grid of (P, n) pairs; one of the two lists has a single entry.
    std::vector<int> patch_values{8, 16, 32, 64};
    std::vector<int> n_values{15};
    int nbeta_factor = 4;
    int grid_points = 21;  ///< field grid on [-3, 3]^2
    /// Fine discretization used as reference when the incident field is a
    /// plane wave; a point source uses the exact scattered field instead.
    int reference_patches = 256;
    int reference_n = 20;
    double reference_tol = 1e-13;
};

struct ScatterRow {
    int P = 0;
    int n = 0;
    int N = 0;
    double error = 0.0;
    std::optional<double> noc;
    bool saturated = false;
    int iterations = 0;
    double residual = 0.0;
    bool converged = false;
    WallTimes wall;
};

struct ScatterStudy {
    std::string label;
    double base = 2.0;
    std::vector<ScatterRow> rows;

    [[nodiscard]] ConvergenceTable convergence() const;
};

/// Relative max error of the scattered field over the exterior grid points.
[[nodiscard]] ScatterStudy run_scattering(const ScatterStudySpec& spec);

/// Exact scattered field -G(x, z0) of an interior point source on the grid.
[[nodiscard]] std::vector<cplx> point_source_exact(const FieldGrid& grid, double kappa, Vec2 z0);

/// max |a - b| / max |ref| over grid points outside the obstacle.
[[nodiscard]] double relative_grid_error(const FieldGrid& grid, std::span<const cplx> values,
                                         std::span<const cplx> reference);

struct SweepSpec {
    Curve2D curve = Curve2D::circle(1.0);
    std::vector<double> kappas{10.0, 20.0, 40.0, 80.0};
    double points_per_wavelength = 12.0;
    int n = 15;
    int p = 6;
    std::optional<double> eta;
    Vec2 source{0.3, 0.4};
    Vec2 direction{1.0, 0.0};
    double gmres_tol = 1e-10;
    int grid_points = 21;
};

struct SweepRow {
    double kappa = 0.0;
    int P = 0;
    int n = 0;
    int N = 0;
    double error = 0.0;             ///< point-source solve against the exact field
    int iterations_plane_wave = 0;  ///< plane-wave solve
    int iterations_point_source = 0;
    bool converged = false;
    double seconds = 0.0;
};

/// Patch count giving the requested points per wavelength along the curve.
[[nodiscard]] int patches_for_ppw(const Curve2D& curve, double kappa, int n, double ppw);

[[nodiscard]] std::vector<SweepRow> run_wavenumber_sweep(const SweepSpec& spec);

// ---------------------------------------------------------------------------
// Reports. CSV output never contains wall-clock timings.

void write_csv(std::ostream& os, const ConvergenceTable& table);
void write_csv(std::ostream& os, const std::vector<ConvergenceTable>& tables);
void write_csv(std::ostream& os, const CoeffDecayTable& table);
void write_csv(std::ostream& os, const std::vector<PcvSplitRow>& rows);
void write_csv(std::ostream& os, const ScatterStudy& study);
void write_csv(std::ostream& os, const std::vector<SweepRow>& rows);

void print_table(std::ostream& os, const ConvergenceTable& table);
void print_table(std::ostream& os, const CoeffDecayTable& table);
void print_table(std::ostream& os, const std::vector<PcvSplitRow>& rows);
void print_table(std::ostream& os, const ScatterStudy& study);
void print_table(std::ostream& os, const std::vector<SweepRow>& rows);

}  // namespace rpq
