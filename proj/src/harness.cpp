#include "rpquad/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <ostream>
#include <string>

#include "exception_slot.hpp"
#include "rpquad/cheb.hpp"
#include "rpquad/errors.hpp"
#include "rpquad/pcv.hpp"

namespace rpq {

namespace {

/// Coefficients below this multiple of max(1, |c_0|) are rounding noise.
constexpr double kNegligibleCoeff = 1e-15;

std::string fmt(const char* format, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, format, v);
    return buf;
}

std::string fmt_opt(const char* format, const std::optional<double>& v) {
    return v ? fmt(format, *v) : std::string("-");
}

std::string csv_opt(const std::optional<double>& v) {
    return v ? fmt("%.6f", *v) : std::string();
}

void require_grid(std::span<const int> grid, const char* what) {
    if (grid.empty()) throw InvalidArgument(std::string(what) + ": empty grid");
    for (size_t i = 0; i < grid.size(); ++i) {
        if (grid[i] < 1) throw InvalidArgument(std::string(what) + ": grid values must be >= 1");
        if (i > 0 && grid[i] <= grid[i - 1]) {
            throw InvalidArgument(std::string(what) + ": grid must be strictly increasing");
        }
    }
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

std::vector<std::optional<double>> compute_noc(std::span<const double> errors, double base) {
    if (!(base > 1.0)) throw InvalidArgument("compute_noc: base must be > 1");
    std::vector<std::optional<double>> out;
    for (size_t i = 0; i + 1 < errors.size(); ++i) {
        const double e0 = errors[i], e1 = errors[i + 1];
        if (e0 > 0.0 && e1 > 0.0 && std::isfinite(e0) && std::isfinite(e1)) {
            out.emplace_back(std::log(e0 / e1) / std::log(base));
        } else {
            out.emplace_back(std::nullopt);
        }
    }
    return out;
}

double grid_ratio(std::span<const int> grid) {
    require_grid(grid, "grid_ratio");
    if (grid.size() == 1) return 2.0;
    const double r = static_cast<double>(grid[1]) / grid[0];
    for (size_t i = 2; i < grid.size(); ++i) {
        const double ri = static_cast<double>(grid[i]) / grid[i - 1];
        if (std::abs(ri - r) > 1e-12 * r) {
            throw InvalidArgument("grid_ratio: grid is not geometric");
        }
    }
    return r;
}

double median(std::vector<double> values) {
    if (values.empty()) throw InvalidArgument("median: empty input");
    std::sort(values.begin(), values.end());
    const size_t m = values.size() / 2;
    return values.size() % 2 ? values[m] : 0.5 * (values[m - 1] + values[m]);
}

std::vector<double> ConvergenceTable::eligible_orders() const {
    std::vector<double> out;
    for (size_t i = 1; i < rows.size(); ++i) {
        if (rows[i].noc && !rows[i].saturated && !rows[i - 1].saturated) out.push_back(*rows[i].noc);
    }
    return out;
}

std::optional<double> ConvergenceTable::asymptotic_order(int count) const {
    std::vector<double> orders = eligible_orders();
    if (orders.empty()) return std::nullopt;
    if (static_cast<int>(orders.size()) > count) {
        orders.erase(orders.begin(), orders.end() - count);
    }
    return median(orders);
}

ConvergenceTable make_convergence_table(std::string label, std::span<const int> levels,
                                        std::span<const int> unknowns,
                                        std::span<const double> errors) {
    if (levels.size() != errors.size() || unknowns.size() != errors.size()) {
        throw InvalidArgument("make_convergence_table: column lengths differ");
    }
    ConvergenceTable t;
    t.label = std::move(label);
    t.base = grid_ratio(levels);
    const auto noc = compute_noc(errors, t.base);
    for (size_t i = 0; i < errors.size(); ++i) {
        ConvergenceRow row;
        row.level = levels[i];
        row.N = unknowns[i];
        row.error = errors[i];
        if (i > 0) row.noc = noc[i - 1];
        row.saturated = !(errors[i] > kSaturationLevel);
        t.rows.push_back(row);
    }
    return t;
}

// ---------------------------------------------------------------------------

std::function<double(double)> decay_density(int m) {
    if (m < 0) throw InvalidArgument("decay_density: m must be >= 0");
    return [m](double x) {
        double s = 0.0;
        for (int j = m; j >= 0; --j) s = s * x + 1.0;
        return std::pow(x, m) * std::abs(x) + s;
    };
}

CoeffDecayTable run_coeff_decay(const std::function<double(double)>& u, std::span<const int> N,
                                int k_max, int nodes) {
    require_grid(N, "run_coeff_decay");
    if (k_max < 1 || nodes <= k_max) {
        throw InvalidArgument("run_coeff_decay: need 1 <= k_max < nodes");
    }
    CoeffDecayTable t;
    t.N.assign(N.begin(), N.end());
    t.k_max = k_max;
    const ChebRule& rule = cheb_rule(nodes);
    for (int Nv : N) {
        // Interval [-1/(2N), 1/N]: h = 3/(2N), midpoint 1/(4N).
        const double h = 1.5 / Nv, mid = 0.25 / Nv;
        std::vector<double> f(static_cast<size_t>(nodes));
        for (int i = 0; i < nodes; ++i) f[i] = u(0.5 * h * rule.nodes[i] + mid);
        const auto c = discrete_cheb_coeffs(f, CoeffMethod::Direct);
        std::vector<double> mag(static_cast<size_t>(k_max + 1));
        for (int k = 0; k <= k_max; ++k) mag[k] = std::abs(c.coeffs[k]);
        t.magnitude.push_back(std::move(mag));
    }
    for (size_t r = 0; r < N.size(); ++r) {
        std::vector<std::optional<double>> row(static_cast<size_t>(k_max + 1));
        if (r > 0) {
            const double lr = std::log(static_cast<double>(N[r]) / N[r - 1]);
            for (int k = 1; k <= k_max; ++k) {
                const double c0 = t.magnitude[r - 1][k], c1 = t.magnitude[r][k];
                const double floor0 = kNegligibleCoeff * std::max(1.0, t.magnitude[r - 1][0]);
                const double floor1 = kNegligibleCoeff * std::max(1.0, t.magnitude[r][0]);
                if (c0 > floor0 && c1 > floor1) row[k] = std::log(c0 / c1) / lr;
            }
        }
        t.order.push_back(std::move(row));
    }
    return t;
}

// ---------------------------------------------------------------------------

std::function<double(double)> quad_density(int m, SmoothPart smooth) {
    if (m < 0) throw InvalidArgument("quad_density: m must be >= 0");
    return [m, smooth](double y) {
        double v = std::pow(y, m) * std::abs(y);
        if (smooth == SmoothPart::One) v += 1.0;
        if (smooth == SmoothPart::LinearPlusOne) v += y + 1.0;
        return v;
    };
}

void QuadConvSpec::validate() const {
    if (!kernel.is_1d()) throw InvalidArgument("quad convergence needs a 1D kernel");
    if (m < 0) throw InvalidArgument("quad convergence: m must be >= 0");
    if (p_values.empty()) throw InvalidArgument("quad convergence: no PCV degree given");
    if (nbeta_factor < 1) throw InvalidArgument("quad convergence: nbeta factor must be >= 1");
    require_grid(n_values, "quad convergence n grid");
    require_grid(patch_values, "quad convergence patch grid");
    if (varying && n_values.size() != 1) {
        throw InvalidArgument("varying-patch mode takes a single n");
    }
    if (!varying && patch_values.size() != 1) {
        throw InvalidArgument("fixed-patch mode takes a single patch count");
    }
    if (!(a < b)) throw InvalidArgument("quad convergence: need a < b");
    for (int p : p_values) {
        QuadConfig c{n_values.front(), nbeta_factor * n_values.front(), p, near_threshold};
        c.validate();
    }
}

std::vector<ConvergenceTable> run_quad_convergence(const QuadConvSpec& spec) {
    spec.validate();
    const auto u = quad_density(spec.m, spec.smooth);
    const std::vector<int>& levels = spec.varying ? spec.patch_values : spec.n_values;
    const double breakpoints[] = {0.0};

    std::vector<std::vector<double>> errors(spec.p_values.size());
    std::vector<int> unknowns;
    for (int level : levels) {
        const int n = spec.varying ? spec.n_values.front() : level;
        const int P = spec.varying ? level : spec.patch_values.front();
        const PatchSet1D patches = partition_interval(spec.a, spec.b, P);
        unknowns.push_back(n * P);

        QuadConfig probe{n, spec.nbeta_factor * n, spec.p_values.front(), spec.near_threshold};
        const std::vector<double> x = Operator1D(spec.kernel, patches, probe).nodes();
        std::vector<double> ref(x.size());
        detail::ExceptionSlot slot;
        const int nx = static_cast<int>(x.size());
#pragma omp parallel for schedule(dynamic, 4)
        for (int j = 0; j < nx; ++j) {
            slot.run([&] {
                ref[j] = reference_operator(spec.kernel, spec.a, spec.b, u, x[j], breakpoints,
                                            spec.reference_tol);
            });
        }
        slot.rethrow();
        double ref_max = 0.0;
        for (double r : ref) ref_max = std::max(ref_max, std::abs(r));
        if (!(ref_max > 0.0)) ref_max = 1.0;

        for (size_t q = 0; q < spec.p_values.size(); ++q) {
            QuadConfig config{n, spec.nbeta_factor * n, spec.p_values[q], spec.near_threshold};
            const std::vector<double> v = Operator1D(spec.kernel, patches, config).apply(u);
            double emax = 0.0;
            for (size_t j = 0; j < v.size(); ++j) emax = std::max(emax, std::abs(v[j] - ref[j]));
            errors[q].push_back(emax / ref_max);
        }
    }

    std::vector<ConvergenceTable> tables;
    for (size_t q = 0; q < spec.p_values.size(); ++q) {
        std::string label = spec.kernel.name() + " m=" + std::to_string(spec.m) +
                            " p=" + std::to_string(spec.p_values[q]) +
                            (spec.varying ? " n=" + std::to_string(spec.n_values.front())
                                          : " P=" + std::to_string(spec.patch_values.front()));
        tables.push_back(make_convergence_table(std::move(label), levels, unknowns, errors[q]));
    }
    return tables;
}

// ---------------------------------------------------------------------------

std::vector<PcvSplitRow> run_pcv_edge_vs_interior(int p, std::span<const int> n, double alpha) {
    require_grid(n, "run_pcv_edge_vs_interior");
    if (!(alpha > 0.0 && alpha < 1.0)) {
        throw InvalidArgument("run_pcv_edge_vs_interior: alpha must lie in (0, 1)");
    }
    const PcvMap pcv(p);
    const double exact = 2.0 / (1.0 - alpha);
    std::vector<PcvSplitRow> rows;
    for (int nv : n) {
        const ChebRule& rule = cheb_rule(nv);
        const auto split = split_weights<double>(
            SplitPoint::at(0.0), 1, rule, pcv,
            [alpha](double, double delta) { return std::pow(std::abs(delta), -alpha); });

        // One rule on [-1, 1] mapped by t = sign(tau) psi_p(2|tau| - 1) / 2.
        double interior = 0.0;
        for (int i = 0; i < nv; ++i) {
            const double tau = rule.nodes[i];
            const double s = 2.0 * std::abs(tau);
            if (s == 0.0) continue;
            const PcvValue v = pcv.eval_shifted(s);
            if (v.psi == 0.0 || v.dpsi == 0.0) continue;
            interior += rule.weights[i] * std::pow(0.5 * v.psi, -alpha) * v.dpsi;
        }
        rows.push_back({nv, std::abs(split.beta[0] - exact) / exact,
                        std::abs(interior - exact) / exact});
    }
    return rows;
}

// ---------------------------------------------------------------------------

std::vector<cplx> point_source_exact(const FieldGrid& grid, double kappa, Vec2 z0) {
    std::vector<cplx> out(grid.points.size(), cplx{std::nan(""), std::nan("")});
    for (size_t k = 0; k < grid.points.size(); ++k) {
        if (!grid.interior[k]) out[k] = -green_helmholtz(kappa, norm(grid.points[k] - z0));
    }
    return out;
}

double relative_grid_error(const FieldGrid& grid, std::span<const cplx> values,
                           std::span<const cplx> reference) {
    if (values.size() != grid.points.size() || reference.size() != grid.points.size()) {
        throw InvalidArgument("relative_grid_error: size mismatch");
    }
    double emax = 0.0, rmax = 0.0;
    for (size_t k = 0; k < grid.points.size(); ++k) {
        if (grid.interior[k]) continue;
        emax = std::max(emax, std::abs(values[k] - reference[k]));
        rmax = std::max(rmax, std::abs(reference[k]));
    }
    return rmax > 0.0 ? emax / rmax : emax;
}

ConvergenceTable ScatterStudy::convergence() const {
    std::vector<int> levels, unknowns;
    std::vector<double> errors;
    const bool vary_p = rows.size() > 1 && rows[0].P != rows[1].P;
    for (const auto& r : rows) {
        levels.push_back(vary_p ? r.P : r.n);
        unknowns.push_back(r.N);
        errors.push_back(r.error);
    }
    return make_convergence_table(label, levels, unknowns, errors);
}

ScatterStudy run_scattering(const ScatterStudySpec& spec) {
    require_grid(spec.patch_values, "run_scattering patch grid");
    require_grid(spec.n_values, "run_scattering n grid");
    if (spec.patch_values.size() > 1 && spec.n_values.size() > 1) {
        throw InvalidArgument("run_scattering: vary either the patch count or n, not both");
    }
    if (spec.nbeta_factor < 1) throw InvalidArgument("run_scattering: nbeta factor must be >= 1");
    spec.base.validate();
    const bool vary_p = spec.n_values.size() == 1;

    const FieldGrid shape_grid = field_grid_layout(spec.base.curve, -3.0, 3.0, spec.grid_points);

    std::vector<cplx> reference;
    std::string ref_label;
    if (const auto* ps = std::get_if<PointSource>(&spec.base.incident)) {
        reference = point_source_exact(shape_grid, spec.base.kappa, ps->z0);
        ref_label = "exact";
    } else {
        ScatterProblem fine = spec.base;
        fine.P = spec.reference_patches;
        fine.quad.n = spec.reference_n;
        fine.quad.n_beta = spec.nbeta_factor * fine.quad.n;
        fine.gmres_tol = spec.reference_tol;
        const ScatterSolution sol = solve_scattering(fine);
        reference = evaluate_field_grid(fine, sol, -3.0, 3.0, spec.grid_points).scattered;
        ref_label = "reference " + std::to_string(fine.P) + "x" + std::to_string(fine.quad.n);
    }

    ScatterStudy study;
    char buf[160];
    std::snprintf(buf, sizeof buf, "%s kappa=%g %s vs %s", spec.base.curve.name().c_str(),
                  spec.base.kappa, vary_p ? "varying patches" : "fixed patches", ref_label.c_str());
    study.label = buf;
    study.base = vary_p ? grid_ratio(spec.patch_values) : grid_ratio(spec.n_values);

    const std::vector<int>& levels = vary_p ? spec.patch_values : spec.n_values;
    std::vector<double> errors;
    for (int level : levels) {
        ScatterProblem pr = spec.base;
        pr.P = vary_p ? level : spec.patch_values.front();
        pr.quad.n = vary_p ? spec.n_values.front() : level;
        pr.quad.n_beta = spec.nbeta_factor * pr.quad.n;
        const ScatterSolution sol = solve_scattering(pr);
        const FieldGrid grid = evaluate_field_grid(pr, sol, -3.0, 3.0, spec.grid_points);
        ScatterRow row;
        row.P = pr.P;
        row.n = pr.quad.n;
        row.N = pr.num_unknowns();
        row.error = relative_grid_error(grid, grid.scattered, reference);
        row.saturated = !(row.error > kSaturationLevel);
        row.iterations = sol.gmres_iterations;
        row.residual = sol.final_residual;
        row.converged = sol.converged;
        row.wall = sol.wall;
        errors.push_back(row.error);
        study.rows.push_back(row);
    }
    const auto noc = compute_noc(errors, study.base);
    for (size_t i = 1; i < study.rows.size(); ++i) study.rows[i].noc = noc[i - 1];
    return study;
}

int patches_for_ppw(const Curve2D& curve, double kappa, int n, double ppw) {
    if (!(kappa > 0.0) || !(ppw > 0.0) || n < 1) {
        throw InvalidArgument("patches_for_ppw: kappa, ppw and n must be positive");
    }
    // Arc length by Fejer quadrature on 64 patches.
    const CurvePatchSet ps = partition_curve(curve, 64);
    const ChebRule& rule = cheb_rule(32);
    double length = 0.0;
    for (int l = 0; l < ps.size(); ++l) {
        for (int i = 0; i < rule.size(); ++i) length += rule.weights[i] * ps.jacobian(l, rule.nodes[i]);
    }
    const double wavelengths = length * kappa / (2.0 * std::numbers::pi);
    return std::max(1, static_cast<int>(std::lround(ppw * wavelengths / n)));
}

std::vector<SweepRow> run_wavenumber_sweep(const SweepSpec& spec) {
    if (spec.kappas.empty()) throw InvalidArgument("run_wavenumber_sweep: no wavenumbers");
    std::vector<SweepRow> rows;
    for (double kappa : spec.kappas) {
        const auto t0 = std::chrono::steady_clock::now();
        ScatterProblem pr;
        pr.curve = spec.curve;
        pr.kappa = kappa;
        pr.eta = spec.eta;
        pr.quad = QuadConfig{spec.n, 0, spec.p, 1.0};
        pr.P = patches_for_ppw(spec.curve, kappa, spec.n, spec.points_per_wavelength);
        pr.gmres_tol = spec.gmres_tol;
        pr.incident = PointSource{spec.source};
        pr.validate();

        const ScatterSolution ps = solve_scattering(pr);
        const FieldGrid grid = evaluate_field_grid(pr, ps, -3.0, 3.0, spec.grid_points);
        const auto exact = point_source_exact(grid, kappa, spec.source);

        ScatterProblem pw = pr;
        pw.incident = PlaneWave{spec.direction};
        const ScatterSolution sw = solve_scattering(pw);

        SweepRow row;
        row.kappa = kappa;
        row.P = pr.P;
        row.n = spec.n;
        row.N = pr.num_unknowns();
        row.error = relative_grid_error(grid, grid.scattered, exact);
        row.iterations_plane_wave = sw.gmres_iterations;
        row.iterations_point_source = ps.gmres_iterations;
        row.converged = ps.converged && sw.converged;
        row.seconds = seconds_since(t0);
        rows.push_back(row);
    }
    return rows;
}

// ---------------------------------------------------------------------------

void write_csv(std::ostream& os, const ConvergenceTable& table) {
    os << "level,N,error,noc,saturated\n";
    for (const auto& r : table.rows) {
        os << r.level << ',' << r.N << ',' << fmt("%.10e", r.error) << ',' << csv_opt(r.noc) << ','
           << (r.saturated ? 1 : 0) << '\n';
    }
}

void write_csv(std::ostream& os, const std::vector<ConvergenceTable>& tables) {
    os << "table,level,N,error,noc,saturated\n";
    for (const auto& t : tables) {
        for (const auto& r : t.rows) {
            os << '"' << t.label << "\"," << r.level << ',' << r.N << ',' << fmt("%.10e", r.error)
               << ',' << csv_opt(r.noc) << ',' << (r.saturated ? 1 : 0) << '\n';
        }
    }
}

void write_csv(std::ostream& os, const CoeffDecayTable& table) {
    os << "N";
    for (int k = 0; k <= table.k_max; ++k) os << ",abs_c" << k;
    for (int k = 1; k <= table.k_max; ++k) os << ",order_c" << k;
    os << '\n';
    for (size_t r = 0; r < table.N.size(); ++r) {
        os << table.N[r];
        for (double c : table.magnitude[r]) os << ',' << fmt("%.10e", c);
        for (int k = 1; k <= table.k_max; ++k) os << ',' << csv_opt(table.order[r][k]);
        os << '\n';
    }
}

void write_csv(std::ostream& os, const std::vector<PcvSplitRow>& rows) {
    os << "n,boundary_error,interior_error\n";
    for (const auto& r : rows) {
        os << r.n << ',' << fmt("%.10e", r.boundary_error) << ',' << fmt("%.10e", r.interior_error)
           << '\n';
    }
}

void write_csv(std::ostream& os, const ScatterStudy& study) {
    os << "P,n,N,error,noc,saturated,gmres_iterations,residual,converged\n";
    for (const auto& r : study.rows) {
        os << r.P << ',' << r.n << ',' << r.N << ',' << fmt("%.10e", r.error) << ','
           << csv_opt(r.noc) << ',' << (r.saturated ? 1 : 0) << ',' << r.iterations << ','
           << fmt("%.6e", r.residual) << ',' << (r.converged ? 1 : 0) << '\n';
    }
}

void write_csv(std::ostream& os, const std::vector<SweepRow>& rows) {
    os << "kappa,P,n,N,error,iterations_plane_wave,iterations_point_source,converged\n";
    for (const auto& r : rows) {
        os << fmt("%g", r.kappa) << ',' << r.P << ',' << r.n << ',' << r.N << ','
           << fmt("%.10e", r.error) << ',' << r.iterations_plane_wave << ','
           << r.iterations_point_source << ',' << (r.converged ? 1 : 0) << '\n';
    }
}

void print_table(std::ostream& os, const ConvergenceTable& table) {
    os << table.label << '\n';
    char buf[160];
    std::snprintf(buf, sizeof buf, "%8s %10s %12s %8s\n", "level", "N", "error", "noc");
    os << buf;
    for (const auto& r : table.rows) {
        std::snprintf(buf, sizeof buf, "%8d %10d %12.3e %8s%s\n", r.level, r.N, r.error,
                      fmt_opt("%.2f", r.noc).c_str(), r.saturated ? "  (saturated)" : "");
        os << buf;
    }
    const auto order = table.asymptotic_order();
    os << "asymptotic order: " << fmt_opt("%.2f", order) << "\n\n";
}

void print_table(std::ostream& os, const CoeffDecayTable& table) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%6s", "N");
    os << buf;
    for (int k = 1; k <= table.k_max; ++k) {
        std::snprintf(buf, sizeof buf, " %6s", ("c" + std::to_string(k)).c_str());
        os << buf;
    }
    os << '\n';
    for (size_t r = 1; r < table.N.size(); ++r) {
        std::snprintf(buf, sizeof buf, "%6d", table.N[r]);
        os << buf;
        for (int k = 1; k <= table.k_max; ++k) {
            std::snprintf(buf, sizeof buf, " %6s", fmt_opt("%.2f", table.order[r][k]).c_str());
            os << buf;
        }
        os << '\n';
    }
}

void print_table(std::ostream& os, const std::vector<PcvSplitRow>& rows) {
    char buf[128];
    std::snprintf(buf, sizeof buf, "%6s %12s %7s %12s %7s\n", "n", "boundary", "order", "interior",
                  "order");
    os << buf;
    for (size_t i = 0; i < rows.size(); ++i) {
        std::optional<double> ob, oi;
        if (i > 0) {
            const double lr = std::log(static_cast<double>(rows[i].n) / rows[i - 1].n);
            if (rows[i].boundary_error > 0 && rows[i - 1].boundary_error > 0) {
                ob = std::log(rows[i - 1].boundary_error / rows[i].boundary_error) / lr;
            }
            if (rows[i].interior_error > 0 && rows[i - 1].interior_error > 0) {
                oi = std::log(rows[i - 1].interior_error / rows[i].interior_error) / lr;
            }
        }
        std::snprintf(buf, sizeof buf, "%6d %12.3e %7s %12.3e %7s\n", rows[i].n,
                      rows[i].boundary_error, fmt_opt("%.2f", ob).c_str(), rows[i].interior_error,
                      fmt_opt("%.2f", oi).c_str());
        os << buf;
    }
}

void print_table(std::ostream& os, const ScatterStudy& study) {
    os << study.label << '\n';
    char buf[160];
    std::snprintf(buf, sizeof buf, "%10s %12s %8s %6s %10s %10s\n", "PxN", "error", "noc", "iter",
                  "residual", "time[s]");
    os << buf;
    for (const auto& r : study.rows) {
        const std::string pn = std::to_string(r.P) + "x" + std::to_string(r.n);
        std::snprintf(buf, sizeof buf, "%10s %12.3e %8s %6d %10.2e %10.2f%s\n", pn.c_str(), r.error,
                      fmt_opt("%.2f", r.noc).c_str(), r.iterations, r.residual, r.wall.total,
                      r.converged ? "" : "  (not converged)");
        os << buf;
    }
    os << '\n';
}

void print_table(std::ostream& os, const std::vector<SweepRow>& rows) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "%8s %10s %12s %8s %8s %10s\n", "kappa", "PxN", "error",
                  "iter(pw)", "iter(ps)", "time[s]");
    os << buf;
    for (const auto& r : rows) {
        const std::string pn = std::to_string(r.P) + "x" + std::to_string(r.n);
        std::snprintf(buf, sizeof buf, "%8g %10s %12.3e %8d %8d %10.2f%s\n", r.kappa, pn.c_str(),
                      r.error, r.iterations_plane_wave, r.iterations_point_source, r.seconds,
                      r.converged ? "" : "  (not converged)");
        os << buf;
    }
}

}  // namespace rpq
