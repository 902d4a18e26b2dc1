/// Command-line driver for the convergence and scattering experiments.

#include <CLI11.hpp>
#include <omp.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "rpquad/errors.hpp"
#include "rpquad/harness.hpp"
#include "rpquad/helmholtz.hpp"

namespace {

enum ExitCode { kOk = 0, kUsage = 1, kOracleFailure = 2, kSolverFailure = 3 };

/// Parses "8,16,32" or a geometric range "start:stop:ratio".
std::vector<int> parse_int_list(const std::string& text) {
    std::vector<int> out;
    if (text.find(':') != std::string::npos) {
        int start = 0, stop = 0, ratio = 0;
        char c1 = 0, c2 = 0;
        std::istringstream is(text);
        if (!(is >> start >> c1 >> stop >> c2 >> ratio) || c1 != ':' || c2 != ':' || start < 1 ||
            ratio < 2 || stop < start) {
            throw rpq::InvalidArgument("bad range '" + text + "', expected start:stop:ratio");
        }
        for (long v = start; v <= stop; v *= ratio) out.push_back(static_cast<int>(v));
        return out;
    }
    std::istringstream is(text);
    std::string item;
    while (std::getline(is, item, ',')) {
        size_t pos = 0;
        const int v = std::stoi(item, &pos);
        if (pos != item.size()) throw rpq::InvalidArgument("bad integer '" + item + "'");
        out.push_back(v);
    }
    if (out.empty()) throw rpq::InvalidArgument("empty list");
    return out;
}

std::vector<double> parse_real_list(const std::string& text) {
    std::vector<double> out;
    std::istringstream is(text);
    std::string item;
    while (std::getline(is, item, ',')) {
        size_t pos = 0;
        const double v = std::stod(item, &pos);
        if (pos != item.size()) throw rpq::InvalidArgument("bad number '" + item + "'");
        out.push_back(v);
    }
    if (out.empty()) throw rpq::InvalidArgument("empty list");
    return out;
}

rpq::Vec2 parse_point(const std::string& text) {
    const auto v = parse_real_list(text);
    if (v.size() != 2) throw rpq::InvalidArgument("expected a point 'x,y', got '" + text + "'");
    return {v[0], v[1]};
}

/// "kappa" (or empty) selects the default coupling eta = kappa.
std::optional<double> parse_eta(const std::string& text) {
    if (text.empty() || text == "kappa") return std::nullopt;
    size_t pos = 0;
    const double v = std::stod(text, &pos);
    if (pos != text.size()) throw rpq::InvalidArgument("bad eta '" + text + "'");
    return v;
}

/// "plane", "plane:dx,dy" or "point:x,y".
rpq::Incident parse_incident(const std::string& text) {
    if (text == "plane") return rpq::PlaneWave{};
    if (text.rfind("plane:", 0) == 0) {
        rpq::Vec2 d = parse_point(text.substr(6));
        const double len = rpq::norm(d);
        if (!(len > 0.0)) throw rpq::InvalidArgument("plane-wave direction must be nonzero");
        return rpq::PlaneWave{{d.x / len, d.y / len}};
    }
    if (text.rfind("point:", 0) == 0) return rpq::PointSource{parse_point(text.substr(6))};
    throw rpq::InvalidArgument("bad incident field '" + text + "'");
}

rpq::KernelSpec parse_kernel(const std::string& name, double alpha) {
    if (name == "log") return rpq::KernelSpec::log();
    if (name == "power") return rpq::KernelSpec::power(alpha);
    throw rpq::InvalidArgument("unknown kernel '" + name + "'");
}

rpq::SmoothPart parse_smooth(const std::string& name) {
    if (name == "none") return rpq::SmoothPart::None;
    if (name == "one") return rpq::SmoothPart::One;
    if (name == "linear") return rpq::SmoothPart::LinearPlusOne;
    throw rpq::InvalidArgument("unknown smooth part '" + name + "'");
}

/// Writes CSV to `path` when given.
template <class Writer>
void emit_csv(const std::string& path, Writer&& write) {
    if (path.empty()) return;
    std::ofstream os(path);
    if (!os) throw rpq::InvalidArgument("cannot open '" + path + "' for writing");
    write(os);
    if (!os) throw rpq::InvalidArgument("failed writing '" + path + "'");
}

struct Options {
    std::string kernel = "log";
    double alpha = 0.5;
    int m = 3;
    std::string p;
    std::string n;
    std::string patches;
    int nbeta_factor = 4;
    double near_threshold = 1.0;
    std::string kappa;
    std::string eta = "kappa";
    std::string shape = "circle:1";
    std::string incident = "plane";
    double tol = 1e-10;
    std::string out;
    std::string density_out;
    int threads = 0;
    std::string smooth = "none";
    int nodes = 16;
    int k_max = 10;
    int ref_patches = 256;
    int ref_n = 20;
    double ref_tol = 1e-13;
    int grid = 21;
    double ppw = 12.0;
    std::string source = "0.3,0.4";
};

rpq::ScatterProblem make_problem(const Options& o, double kappa) {
    rpq::ScatterProblem pr;
    pr.curve = rpq::Curve2D::parse(o.shape);
    pr.kappa = kappa;
    pr.eta = parse_eta(o.eta);
    pr.incident = parse_incident(o.incident);
    const auto ps = parse_int_list(o.p.empty() ? "6" : o.p);
    pr.quad = rpq::QuadConfig{15, 0, ps.front(), o.near_threshold};
    pr.quad.n_beta = o.nbeta_factor * pr.quad.n;
    pr.gmres_tol = o.tol;
    return pr;
}

double single_kappa(const Options& o) {
    const auto k = parse_real_list(o.kappa.empty() ? "10" : o.kappa);
    if (k.size() != 1) throw rpq::InvalidArgument("--kappa takes a single value here");
    return k.front();
}

int run_coeff_decay(const Options& o) {
    const auto N = parse_int_list(o.n.empty() ? "2:256:2" : o.n);
    const auto table = rpq::run_coeff_decay(rpq::decay_density(o.m), N, o.k_max, o.nodes);
    std::cout << "Decay orders of |c_k| for x^" << o.m << "|x| + polynomial on [-1/(2N), 1/N]\n";
    rpq::print_table(std::cout, table);
    emit_csv(o.out, [&](std::ostream& os) { rpq::write_csv(os, table); });
    return kOk;
}

int run_quad_conv(const Options& o) {
    rpq::QuadConvSpec spec;
    spec.kernel = parse_kernel(o.kernel, o.alpha);
    spec.m = o.m;
    spec.smooth = parse_smooth(o.smooth);
    spec.p_values = parse_int_list(o.p.empty() ? "3" : o.p);
    spec.nbeta_factor = o.nbeta_factor;
    spec.near_threshold = o.near_threshold;
    spec.patch_values = parse_int_list(o.patches.empty() ? "1" : o.patches);
    spec.n_values = parse_int_list(o.n.empty() ? (spec.patch_values.size() > 1 ? "16" : "8:256:2")
                                               : o.n);
    spec.varying = spec.patch_values.size() > 1;
    const auto tables = rpq::run_quad_convergence(spec);
    for (const auto& t : tables) rpq::print_table(std::cout, t);
    emit_csv(o.out, [&](std::ostream& os) { rpq::write_csv(os, tables); });
    return kOk;
}

int run_pcv_split(const Options& o) {
    const auto ns = parse_int_list(o.n.empty() ? "4:1024:2" : o.n);
    const auto ps = parse_int_list(o.p.empty() ? "7" : o.p);
    const double alpha = o.kernel == "power" ? o.alpha : 0.1;
    const auto rows = rpq::run_pcv_edge_vs_interior(ps.front(), ns, alpha);
    std::cout << "int_{-1}^{1} |t|^-" << alpha << " dt, p = " << ps.front() << "\n";
    rpq::print_table(std::cout, rows);
    emit_csv(o.out, [&](std::ostream& os) { rpq::write_csv(os, rows); });
    return kOk;
}

int run_scatter(const Options& o) {
    rpq::ScatterStudySpec spec;
    spec.base = make_problem(o, single_kappa(o));
    spec.patch_values = parse_int_list(o.patches.empty() ? "8:64:2" : o.patches);
    spec.n_values = parse_int_list(o.n.empty() ? "15" : o.n);
    spec.base.quad.n = spec.n_values.front();
    spec.nbeta_factor = o.nbeta_factor;
    spec.reference_patches = o.ref_patches;
    spec.reference_n = o.ref_n;
    spec.reference_tol = o.ref_tol;
    spec.grid_points = o.grid;
    const auto study = rpq::run_scattering(spec);
    rpq::print_table(std::cout, study);
    emit_csv(o.out, [&](std::ostream& os) { rpq::write_csv(os, study); });
    for (const auto& r : study.rows) {
        if (!r.converged) return kSolverFailure;
    }
    return kOk;
}

int run_field(const Options& o) {
    rpq::ScatterProblem pr = make_problem(o, single_kappa(o));
    const auto P = parse_int_list(o.patches.empty() ? "16" : o.patches);
    const auto n = parse_int_list(o.n.empty() ? "15" : o.n);
    if (P.size() != 1 || n.size() != 1) {
        throw rpq::InvalidArgument("field takes a single --patches and --n");
    }
    pr.P = P.front();
    pr.quad.n = n.front();
    pr.quad.n_beta = o.nbeta_factor * pr.quad.n;
    const auto sol = rpq::solve_scattering(pr);
    const auto grid = rpq::evaluate_field_grid(pr, sol, -3.0, 3.0, o.grid);
    std::printf("%s kappa=%g P x n = %d x %d: %d GMRES iterations, residual %.2e, %.2f s\n",
                pr.curve.name().c_str(), pr.kappa, pr.P, pr.quad.n, sol.gmres_iterations,
                sol.final_residual, sol.wall.total);
    if (const auto* ps = std::get_if<rpq::PointSource>(&pr.incident)) {
        const auto exact = rpq::point_source_exact(grid, pr.kappa, ps->z0);
        std::printf("relative error vs exact point-source field: %.3e\n",
                    rpq::relative_grid_error(grid, grid.scattered, exact));
    }
    emit_csv(o.out, [&](std::ostream& os) { rpq::write_field_csv(os, grid); });
    emit_csv(o.density_out, [&](std::ostream& os) { rpq::write_density_csv(os, sol); });
    return sol.converged ? kOk : kSolverFailure;
}

int run_sweep(const Options& o) {
    rpq::SweepSpec spec;
    spec.curve = rpq::Curve2D::parse(o.shape);
    spec.kappas = parse_real_list(o.kappa.empty() ? "10,20,40,80" : o.kappa);
    spec.points_per_wavelength = o.ppw;
    const auto n = parse_int_list(o.n.empty() ? "15" : o.n);
    if (n.size() != 1) throw rpq::InvalidArgument("wavenumber-sweep takes a single --n");
    spec.n = n.front();
    spec.p = parse_int_list(o.p.empty() ? "6" : o.p).front();
    spec.eta = parse_eta(o.eta);
    spec.source = parse_point(o.source);
    spec.gmres_tol = o.tol;
    spec.grid_points = o.grid;
    const auto rows = rpq::run_wavenumber_sweep(spec);
    rpq::print_table(std::cout, rows);
    emit_csv(o.out, [&](std::ostream& os) { rpq::write_csv(os, rows); });
    for (const auto& r : rows) {
        if (!r.converged) return kSolverFailure;
    }
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Rectangular-polar quadrature experiments"};
    app.require_subcommand(1);
    Options o;

    auto common = [&](CLI::App* sub) {
        sub->add_option("--out", o.out, "CSV output path");
        sub->add_option("--threads", o.threads, "OpenMP thread count")->check(CLI::NonNegativeNumber);
        sub->add_option("--p", o.p, "PCV degree (list allowed for quad-conv)");
        sub->add_option("--n", o.n, "node counts: int, list a,b,c or range start:stop:ratio");
    };
    auto quad = [&](CLI::App* sub) {
        sub->add_option("--kernel", o.kernel, "log | power")->check(CLI::IsMember({"log", "power"}));
        sub->add_option("--alpha", o.alpha, "power-kernel exponent in (0, 1)");
        sub->add_option("--m", o.m, "density regularity index");
        sub->add_option("--nbeta-factor", o.nbeta_factor, "singular-weight nodes per node");
        sub->add_option("--near-threshold", o.near_threshold, "near-singular distance in patches");
    };
    auto scatter = [&](CLI::App* sub) {
        sub->add_option("--kappa", o.kappa, "wavenumber");
        sub->add_option("--eta", o.eta, "coupling constant or 'kappa'");
        sub->add_option("--shape", o.shape, "circle:R | star | jellyfish");
        sub->add_option("--incident", o.incident, "plane | plane:dx,dy | point:x,y");
        sub->add_option("--tol", o.tol, "GMRES relative tolerance");
        sub->add_option("--nbeta-factor", o.nbeta_factor, "singular-weight nodes per node");
        sub->add_option("--near-threshold", o.near_threshold, "near-singular distance in patches");
        sub->add_option("--grid", o.grid, "field grid points per side on [-3,3]^2");
    };

    auto* coeff = app.add_subcommand("coeff-decay", "Chebyshev coefficient decay under refinement");
    common(coeff);
    coeff->add_option("--m", o.m, "density regularity index");
    coeff->add_option("--nodes", o.nodes, "Chebyshev nodes per interval");
    coeff->add_option("--k-max", o.k_max, "largest coefficient index");

    auto* qc = app.add_subcommand("quad-conv", "1D weakly singular operator convergence");
    common(qc);
    quad(qc);
    qc->add_option("--patches", o.patches, "patch counts; a list selects varying-patch mode");
    qc->add_option("--smooth", o.smooth, "smooth part added to y^m|y|: none | one | linear");

    auto* pcv = app.add_subcommand("pcv-split", "edge versus interior singularity treatment");
    common(pcv);
    pcv->add_option("--kernel", o.kernel, "power selects --alpha, otherwise alpha = 0.1");
    pcv->add_option("--alpha", o.alpha, "exponent of |t|^-alpha");

    auto* sc = app.add_subcommand("scatter", "scattering convergence study");
    common(sc);
    scatter(sc);
    sc->add_option("--patches", o.patches, "patch counts");
    sc->add_option("--ref-patches", o.ref_patches, "reference patch count (plane wave)");
    sc->add_option("--ref-n", o.ref_n, "reference nodes per patch (plane wave)");
    sc->add_option("--ref-tol", o.ref_tol, "reference GMRES tolerance");

    auto* fd = app.add_subcommand("field", "solve once and write the field grid");
    common(fd);
    scatter(fd);
    fd->add_option("--patches", o.patches, "patch count");
    fd->add_option("--density-out", o.density_out, "boundary density CSV path");

    auto* sw = app.add_subcommand("wavenumber-sweep", "fixed points-per-wavelength sweep");
    common(sw);
    scatter(sw);
    sw->add_option("--ppw", o.ppw, "points per wavelength");
    sw->add_option("--source", o.source, "interior point source x,y");

    CLI11_PARSE(app, argc, argv);
    if (o.threads > 0) omp_set_num_threads(o.threads);

    try {
        if (coeff->parsed()) return run_coeff_decay(o);
        if (qc->parsed()) return run_quad_conv(o);
        if (pcv->parsed()) return run_pcv_split(o);
        if (sc->parsed()) return run_scatter(o);
        if (fd->parsed()) return run_field(o);
        if (sw->parsed()) return run_sweep(o);
    } catch (const rpq::AccuracyNotReached& e) {
        std::cerr << "oracle failure: " << e.what() << '\n';
        return kOracleFailure;
    } catch (const rpq::NumericalFailure& e) {
        std::cerr << "solver failure: " << e.what() << '\n';
        return kSolverFailure;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    }
    return kUsage;
}
