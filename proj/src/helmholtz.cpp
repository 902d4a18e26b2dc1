#include "rpquad/helmholtz.hpp"

#include <chrono>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <numbers>
#include <ostream>
#include <string>

#include "exception_slot.hpp"
#include "rpquad/errors.hpp"

namespace rpq {

namespace {

using detail::ExceptionSlot;

constexpr int kMaxFieldDepth = 12;

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

/// Patch offset d = target - source wrapped to (-P/2, P/2].
int wrap_offset(int target_patch, int source_patch, int P) {
    int d = ((target_patch - source_patch) % P + P) % P;
    if (2 * d > P) d -= P;
    return d;
}

/// Parameter distance from node i of a patch d patches away to the source patch.
double param_distance(int d, int i, double H, const ChebRule& rule) {
    if (d > 0) return (d - 1) * H + 0.5 * H * rule.one_plus[i];
    return (-d - 1) * H + 0.5 * H * rule.one_minus[i];
}

}  // namespace

cplx incident_field(const Incident& incident, double kappa, Vec2 x) {
    if (const auto* pw = std::get_if<PlaneWave>(&incident)) {
        return std::polar(1.0, kappa * dot(pw->direction, x));
    }
    const auto& ps = std::get<PointSource>(incident);
    return green_helmholtz(kappa, norm(x - ps.z0));
}

void ScatterProblem::validate() const {
    if (!(kappa > 0.0) || !std::isfinite(kappa)) throw InvalidArgument("kappa must be positive");
    if (!std::isfinite(coupling())) throw InvalidArgument("coupling constant must be finite");
    if (P < 1) throw InvalidArgument("patch count must be >= 1");
    quad.validate();
    if (const auto* pw = std::get_if<PlaneWave>(&incident)) {
        if (std::abs(norm(pw->direction) - 1.0) > 1e-12) {
            throw InvalidArgument("plane-wave direction must be a unit vector");
        }
    } else if (!curve.contains(std::get<PointSource>(incident).z0)) {
        throw InvalidArgument("point source must lie strictly inside the curve");
    }
}

CombinedFieldOperator::CombinedFieldOperator(const ScatterProblem& problem) : problem_(problem) {
    problem_.validate();
    n_ = problem_.quad.n;
    P_ = problem_.P;
    N_ = n_ * P_;
    const auto& rule = cheb_rule(n_);
    const auto& beta_rule = cheb_rule(problem_.quad.nbeta());
    const PcvMap pcv(problem_.quad.p);
    const Curve2D& curve = problem_.curve;
    const double H = 2.0 * std::numbers::pi / P_;
    const double kappa = problem_.kappa;
    const double eta = problem_.coupling();

    s_.resize(N_);
    jac_.resize(N_);
    y_.resize(N_);
    nu_.resize(N_);
    for (int l = 0; l < P_; ++l) {
        for (int j = 0; j < n_; ++j) {
            const int q = l * n_ + j;
            s_[q] = l * H + 0.5 * H * rule.one_plus[j];
            y_[q] = curve.position(s_[q]);
            nu_[q] = curve.normal(s_[q]);
            jac_[q] = 0.5 * H * curve.speed(s_[q]);
        }
    }

    near_.assign(N_, {});
    ExceptionSlot errors;
#pragma omp parallel for schedule(dynamic)
    for (int target = 0; target < N_; ++target) {
        errors.run([&] {
            const int lt = target / n_;
            const int i = target % n_;
            for (int l = 0; l < P_; ++l) {
                if (!is_near(target, l)) continue;
                const int d = wrap_offset(lt, l, P_);
                SplitPoint split;
                double offset = 0.0;
                if (d == 0) {
                    split = {rule.nodes[i], rule.one_plus[i], rule.one_minus[i]};
                } else if (d > 0) {
                    split = {1.0, 2.0, 0.0};
                    offset = param_distance(d, i, H, rule);
                } else {
                    split = {-1.0, 0.0, 2.0};
                    offset = -param_distance(d, i, H, rule);
                }
                auto g = [&](double t, double delta) {
                    const double sy = l * H + 0.5 * H * (t + 1.0);
                    const double ds = offset + 0.5 * H * delta;
                    return helmholtz_combined(kappa, eta, curve.chord(sy, ds), curve.normal(sy));
                };
                near_[target].push_back(
                    {l, split_weights<cplx>(split, n_, beta_rule, pcv, g).beta});
            }
        });
    }
    errors.rethrow();

    if (N_ > problem_.dense_limit) return;

    // Dense assembly: beta-weighted coefficient maps become matrix entries.
    std::vector<double> cmap(static_cast<size_t>(n_ * n_));  // cmap[k * n + j] = gamma_k/n T_k(t_j)
    std::vector<double> tk(n_);
    for (int j = 0; j < n_; ++j) {
        chebyshev_t_values(rule.nodes[j], tk);
        for (int k = 0; k < n_; ++k) cmap[k * n_ + j] = ChebCoeffs<double>::gamma(k) / n_ * tk[k];
    }
    matrix_.assign(static_cast<size_t>(N_) * N_, cplx{});
#pragma omp parallel for schedule(dynamic)
    for (int target = 0; target < N_; ++target) {
        errors.run([&] {
            cplx* row = matrix_.data() + static_cast<size_t>(target) * N_;
            size_t nb = 0;
            const auto& blocks = near_[target];
            for (int l = 0; l < P_; ++l) {
                if (nb < blocks.size() && blocks[nb].patch == l) {
                    const auto& beta = blocks[nb].beta;
                    for (int j = 0; j < n_; ++j) {
                        cplx m{};
                        for (int k = 0; k < n_; ++k) m += beta[k] * cmap[k * n_ + j];
                        row[l * n_ + j] += m * jac_[l * n_ + j];
                    }
                    ++nb;
                } else {
                    for (int j = 0; j < n_; ++j) row[l * n_ + j] = regular_entry(target, l * n_ + j);
                }
            }
            row[target] += 0.5;
        });
    }
    errors.rethrow();
    near_.clear();
    near_.shrink_to_fit();
}

bool CombinedFieldOperator::is_near(int target, int patch) const {
    const int d = wrap_offset(target / n_, patch, P_);
    if (d == 0) return true;
    const double H = 2.0 * std::numbers::pi / P_;
    return param_distance(d, target % n_, H, cheb_rule(n_)) <=
           problem_.quad.near_threshold * H;
}

cplx CombinedFieldOperator::regular_entry(int target, int source) const {
    const auto& rule = cheb_rule(n_);
    return rule.weights[source % n_] * jac_[source] *
           helmholtz_combined(problem_.kappa, problem_.coupling(), y_[target] - y_[source],
                              nu_[source]);
}

void CombinedFieldOperator::apply(std::span<const cplx> phi, std::span<cplx> out) const {
    if (static_cast<int>(phi.size()) != N_ || static_cast<int>(out.size()) != N_) {
        throw InvalidArgument("CombinedFieldOperator::apply: expected vectors of length " +
                              std::to_string(N_));
    }
    if (dense()) {
#pragma omp parallel for schedule(static)
        for (int target = 0; target < N_; ++target) {
            const cplx* row = matrix_.data() + static_cast<size_t>(target) * N_;
            cplx s{};
            for (int q = 0; q < N_; ++q) s += row[q] * phi[q];
            out[target] = s;
        }
        return;
    }

    std::vector<cplx> weighted(static_cast<size_t>(N_));
    for (int q = 0; q < N_; ++q) weighted[q] = phi[q] * jac_[q];
    std::vector<std::vector<cplx>> coeffs(static_cast<size_t>(P_));
    for (int l = 0; l < P_; ++l) {
        coeffs[l] =
            discrete_cheb_coeffs(std::span<const cplx>(weighted).subspan(l * n_, n_)).coeffs;
    }
    ExceptionSlot errors;
#pragma omp parallel for schedule(dynamic)
    for (int target = 0; target < N_; ++target) {
        errors.run([&] {
            const auto& blocks = near_[target];
            size_t nb = 0;
            cplx s{};
            for (int l = 0; l < P_; ++l) {
                if (nb < blocks.size() && blocks[nb].patch == l) {
                    s += singular_patch_integral(coeffs[l], blocks[nb].beta);
                    ++nb;
                    continue;
                }
                for (int j = 0; j < n_; ++j) {
                    s += regular_entry(target, l * n_ + j) * phi[l * n_ + j];
                }
            }
            out[target] = s + 0.5 * phi[target];
        });
    }
    errors.rethrow();
}

std::vector<cplx> CombinedFieldOperator::apply(std::span<const cplx> phi) const {
    std::vector<cplx> out(phi.size());
    apply(phi, out);
    return out;
}

std::vector<cplx> bie_apply(const ScatterProblem& problem, std::span<const cplx> phi) {
    if (static_cast<int>(phi.size()) != problem.num_unknowns()) {
        throw InvalidArgument("bie_apply: density has " + std::to_string(phi.size()) +
                              " values, expected " + std::to_string(problem.num_unknowns()));
    }
    return CombinedFieldOperator(problem).apply(phi);
}

std::vector<cplx> boundary_rhs(const ScatterProblem& problem) {
    problem.validate();
    const auto& rule = cheb_rule(problem.quad.n);
    const double H = 2.0 * std::numbers::pi / problem.P;
    const double sign = problem.rhs_sign == RhsSign::Minus ? -1.0 : 1.0;
    std::vector<cplx> rhs;
    rhs.reserve(static_cast<size_t>(problem.num_unknowns()));
    for (int l = 0; l < problem.P; ++l) {
        for (int j = 0; j < problem.quad.n; ++j) {
            const Vec2 y = problem.curve.position(l * H + 0.5 * H * rule.one_plus[j]);
            rhs.push_back(sign * incident_field(problem.incident, problem.kappa, y));
        }
    }
    return rhs;
}

ScatterSolution solve_scattering(const ScatterProblem& problem) {
    const auto t0 = std::chrono::steady_clock::now();
    const CombinedFieldOperator op(problem);
    const std::vector<cplx> rhs = boundary_rhs(problem);
    ScatterSolution sol;
    sol.wall.precompute = seconds_since(t0);

    const auto t1 = std::chrono::steady_clock::now();
    GmresResult g = gmres_solve([&](std::span<const cplx> x, std::span<cplx> y) { op.apply(x, y); },
                                rhs, problem.gmres_tol, problem.gmres_restart,
                                problem.gmres_max_iter);
    sol.wall.solve = seconds_since(t1);
    sol.wall.total = seconds_since(t0);
    sol.density = std::move(g.x);
    sol.params = op.params();
    sol.gmres_iterations = g.iterations;
    sol.final_residual = g.residual;
    sol.converged = g.converged;
    return sol;
}

namespace {

/// Representation-formula integral over parameter interval [ta, tb] of one patch.
struct FieldIntegrator {
    const ScatterProblem& problem;
    const std::vector<std::vector<cplx>>& sigma_coeffs;
    double H;
    double threshold;

    cplx kernel(Vec2 x, double s) const {
        return helmholtz_combined(problem.kappa, problem.coupling(), x - problem.curve.position(s),
                                  problem.curve.normal(s));
    }

    cplx sub_patch(Vec2 x, int l, double ta, double tb, int depth) const {
        const auto& rule = cheb_rule(2 * problem.quad.n);
        const double mid = 0.5 * (ta + tb), half = 0.5 * (tb - ta);
        double length = 0.0;
        double dist = std::min(norm(x - problem.curve.position(l * H + 0.5 * H * (ta + 1.0))),
                               norm(x - problem.curve.position(l * H + 0.5 * H * (tb + 1.0))));
        std::vector<double> s(rule.size()), jac(rule.size());
        for (int q = 0; q < rule.size(); ++q) {
            const double t = mid + half * rule.nodes[q];
            s[q] = l * H + 0.5 * H * (t + 1.0);
            jac[q] = 0.5 * H * half * problem.curve.speed(s[q]);
            length += rule.weights[q] * jac[q];
            dist = std::min(dist, norm(x - problem.curve.position(s[q])));
        }
        if (dist <= threshold * length) {
            if (depth >= kMaxFieldDepth) {
                throw ProximityError("evaluate_field: point (" + std::to_string(x.x) + ", " +
                                     std::to_string(x.y) + ") is too close to the boundary");
            }
            return sub_patch(x, l, ta, mid, depth + 1) + sub_patch(x, l, mid, tb, depth + 1);
        }
        cplx sum{};
        for (int q = 0; q < rule.size(); ++q) {
            const double t = mid + half * rule.nodes[q];
            sum += rule.weights[q] * jac[q] * kernel(x, s[q]) * clenshaw_eval(sigma_coeffs[l], t);
        }
        return sum;
    }
};

}  // namespace

std::vector<cplx> evaluate_field(const ScatterProblem& problem, const ScatterSolution& solution,
                                 std::span<const Vec2> points) {
    problem.validate();
    const int n = problem.quad.n;
    const int P = problem.P;
    if (static_cast<int>(solution.density.size()) != n * P) {
        throw InvalidArgument("evaluate_field: density size does not match the problem");
    }
    const auto& rule = cheb_rule(n);
    const double H = 2.0 * std::numbers::pi / P;

    std::vector<Vec2> y(n * P), nu(n * P);
    std::vector<double> jac(n * P);
    std::vector<double> patch_length(P, 0.0);
    std::vector<std::vector<cplx>> sigma(P);
    for (int l = 0; l < P; ++l) {
        for (int j = 0; j < n; ++j) {
            const int q = l * n + j;
            const double s = l * H + 0.5 * H * rule.one_plus[j];
            y[q] = problem.curve.position(s);
            nu[q] = problem.curve.normal(s);
            jac[q] = 0.5 * H * problem.curve.speed(s);
            patch_length[l] += rule.weights[j] * jac[q];
        }
        sigma[l] = discrete_cheb_coeffs(std::span<const cplx>(solution.density).subspan(l * n, n))
                       .coeffs;
    }
    const FieldIntegrator refine{problem, sigma, H, problem.quad.near_threshold};

    std::vector<cplx> out(points.size());
    ExceptionSlot errors;
    const int npts = static_cast<int>(points.size());
#pragma omp parallel for schedule(dynamic)
    for (int k = 0; k < npts; ++k) {
        errors.run([&] {
            const Vec2 x = points[k];
            if (problem.curve.contains(x)) {
                throw InvalidArgument("evaluate_field: point lies inside the obstacle");
            }
            cplx total{};
            for (int l = 0; l < P; ++l) {
                double dist = std::min(norm(x - problem.curve.position(l * H)),
                                       norm(x - problem.curve.position((l + 1) * H)));
                for (int j = 0; j < n; ++j) dist = std::min(dist, norm(x - y[l * n + j]));
                if (dist <= problem.quad.near_threshold * patch_length[l]) {
                    total += refine.sub_patch(x, l, -1.0, 1.0, 1);
                    continue;
                }
                cplx s{};
                for (int j = 0; j < n; ++j) {
                    const int q = l * n + j;
                    s += rule.weights[j] * jac[q] *
                         helmholtz_combined(problem.kappa, problem.coupling(), x - y[q], nu[q]) *
                         solution.density[q];
                }
                total += s;
            }
            out[k] = total;
        });
    }
    errors.rethrow();
    return out;
}

FieldGrid field_grid_layout(const Curve2D& curve, double lo, double hi, int m) {
    if (m < 2 || !(lo < hi)) throw InvalidArgument("field_grid_layout: bad grid");
    FieldGrid grid;
    for (int iy = 0; iy < m; ++iy) {
        for (int ix = 0; ix < m; ++ix) {
            const Vec2 p{lo + (hi - lo) * ix / (m - 1), lo + (hi - lo) * iy / (m - 1)};
            grid.points.push_back(p);
            grid.interior.push_back(curve.contains(p));
        }
    }
    return grid;
}

FieldGrid evaluate_field_grid(const ScatterProblem& problem, const ScatterSolution& solution,
                              double lo, double hi, int m) {
    FieldGrid grid = field_grid_layout(problem.curve, lo, hi, m);
    std::vector<Vec2> exterior;
    for (size_t k = 0; k < grid.points.size(); ++k) {
        if (!grid.interior[k]) exterior.push_back(grid.points[k]);
    }
    const std::vector<cplx> us = evaluate_field(problem, solution, exterior);
    const double nan = std::numeric_limits<double>::quiet_NaN();
    size_t e = 0;
    for (size_t k = 0; k < grid.points.size(); ++k) {
        if (grid.interior[k]) {
            grid.scattered.emplace_back(nan, nan);
            grid.abs_total.push_back(nan);
        } else {
            grid.scattered.push_back(us[e++]);
            grid.abs_total.push_back(std::abs(
                grid.scattered.back() + incident_field(problem.incident, problem.kappa, grid.points[k])));
        }
    }
    return grid;
}

namespace {

void put(std::ostream& os, double v) {
    if (std::isnan(v)) {
        os << "nan";
        return;
    }
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    os << buf;
}

}  // namespace

void write_field_csv(std::ostream& os, const FieldGrid& grid) {
    os << "x,y,re_us,im_us,abs_total\n";
    for (size_t k = 0; k < grid.points.size(); ++k) {
        put(os, grid.points[k].x);
        os << ',';
        put(os, grid.points[k].y);
        os << ',';
        put(os, grid.scattered[k].real());
        os << ',';
        put(os, grid.scattered[k].imag());
        os << ',';
        put(os, grid.abs_total[k]);
        os << '\n';
    }
}

void write_density_csv(std::ostream& os, const ScatterSolution& solution) {
    os << "t,re_phi,im_phi\n";
    for (size_t q = 0; q < solution.density.size(); ++q) {
        put(os, solution.params[q]);
        os << ',';
        put(os, solution.density[q].real());
        os << ',';
        put(os, solution.density[q].imag());
        os << '\n';
    }
}

}  // namespace rpq
