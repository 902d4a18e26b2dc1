#include "rpquad/quad_engine.hpp"

#include <boost/math/quadrature/tanh_sinh.hpp>

#include <algorithm>
#include <cmath>
#include <string>

#include "rpquad/errors.hpp"

namespace rpq {

void QuadConfig::validate() const {
    if (n < 1) throw InvalidArgument("QuadConfig: n must be >= 1");
    if (nbeta() < n) throw InvalidArgument("QuadConfig: n_beta must be >= n");
    if (p < 2) throw InvalidArgument("QuadConfig: PCV degree must be >= 2");
    if (!(near_threshold >= 0.0)) throw InvalidArgument("QuadConfig: near_threshold must be >= 0");
}

namespace {

void require_1d(const KernelSpec& kernel, const char* what) {
    if (!kernel.is_1d()) throw InvalidArgument(std::string(what) + ": needs a 1D kernel");
}

/// Kernel g(offset + J |delta|) along the transformed split.
SingularWeightSet<double> radial_split(const KernelSpec& kernel, const SplitPoint& split,
                                       double offset, double jac, const QuadConfig& config) {
    const auto& rule = cheb_rule(config.nbeta());
    const PcvMap pcv(config.p);
    return split_weights<double>(split, config.n, rule, pcv, [&](double, double delta) {
        return kernel_radial(kernel, offset + jac * std::abs(delta));
    });
}

}  // namespace

TargetClass classify_target(const Patch1D& patch, double x, const QuadConfig& config) {
    TargetClass c;
    if (x >= patch.a && x <= patch.b) {
        c.kind = TargetKind::Singular;
        c.t_x = invert_param(patch, x);
        return c;
    }
    const bool right = x > patch.b;
    c.distance = right ? x - patch.b : patch.a - x;
    if (c.distance <= config.near_threshold * patch.length()) {
        c.kind = TargetKind::NearSingular;
        c.t_x = right ? 1.0 : -1.0;
    }
    return c;
}

SingularWeightSet<double> singular_weights(const KernelSpec& kernel, const Patch1D& patch,
                                           double t_x, const QuadConfig& config) {
    config.validate();
    require_1d(kernel, "singular_weights");
    if (!(std::abs(t_x) <= 1.0)) {
        throw InvalidArgument("singular_weights: |t_x| must be <= 1, got " + std::to_string(t_x));
    }
    return radial_split(kernel, SplitPoint::at(t_x), 0.0, patch.jacobian(), config);
}

SingularWeightSet<double> near_singular_weights(const KernelSpec& kernel, const Patch1D& patch,
                                                double x, const QuadConfig& config) {
    config.validate();
    require_1d(kernel, "near_singular_weights");
    if (x >= patch.a && x <= patch.b) {
        return singular_weights(kernel, patch, invert_param(patch, x), config);
    }
    const bool right = x > patch.b;
    const double dist = right ? x - patch.b : patch.a - x;
    const SplitPoint split = right ? SplitPoint{1.0, 2.0, 0.0} : SplitPoint{-1.0, 0.0, 2.0};
    return radial_split(kernel, split, dist, patch.jacobian(), config);
}

double regular_patch_integral(const std::function<double(double, double)>& kernel,
                              const Patch1D& patch, std::span<const double> phi, double x) {
    if (phi.empty()) throw InvalidArgument("regular_patch_integral: empty density");
    if (x >= patch.a && x <= patch.b) {
        throw InvalidArgument("regular_patch_integral: target lies inside the patch");
    }
    const auto& rule = cheb_rule(static_cast<int>(phi.size()));
    double s = 0.0;
    for (int i = 0; i < rule.size(); ++i) {
        s += rule.weights[i] * kernel(x, patch.xi(rule.nodes[i])) * phi[i];
    }
    return s;
}

double regular_patch_integral(const KernelSpec& kernel, const Patch1D& patch,
                              std::span<const double> phi, double x) {
    require_1d(kernel, "regular_patch_integral");
    return regular_patch_integral(
        [&](double tx, double y) { return kernel_eval_1d(kernel, tx, y); }, patch, phi, x);
}

double singular_patch_integral(std::span<const double> coeffs, std::span<const double> beta) {
    if (coeffs.size() != beta.size()) {
        throw InvalidArgument("singular_patch_integral: coefficient/weight length mismatch");
    }
    double s = 0.0;
    for (size_t k = 0; k < coeffs.size(); ++k) s += coeffs[k] * beta[k];
    return s;
}

std::complex<double> singular_patch_integral(std::span<const std::complex<double>> coeffs,
                                             std::span<const std::complex<double>> beta) {
    if (coeffs.size() != beta.size()) {
        throw InvalidArgument("singular_patch_integral: coefficient/weight length mismatch");
    }
    std::complex<double> s{};
    for (size_t k = 0; k < coeffs.size(); ++k) s += coeffs[k] * beta[k];
    return s;
}

Operator1D::Operator1D(const KernelSpec& kernel, PatchSet1D patches, const QuadConfig& config)
    : kernel_(kernel), patches_(std::move(patches)), config_(config) {
    config_.validate();
    require_1d(kernel_, "Operator1D");
    if (patches_.size() < 1) throw InvalidArgument("Operator1D: empty patch set");

    const int n = config_.n;
    const int P = patches_.size();
    const double h = patches_.patch_length();
    const double jac = 0.5 * h;
    reach_ = std::min(P - 1, static_cast<int>(std::floor(config_.near_threshold)) + 1);
    weights_.assign(static_cast<size_t>((2 * reach_ + 1) * n), {});

    const auto& rule = cheb_rule(n);
    struct Job {
        int d;
        int i;
    };
    std::vector<Job> jobs;
    for (int i = 0; 2 * i <= n - 1; ++i) jobs.push_back({0, i});
    for (int d = 1; d <= reach_; ++d) {
        for (int i = 0; i < n; ++i) jobs.push_back({d, i});
    }

    const int njobs = static_cast<int>(jobs.size());
#pragma omp parallel for schedule(dynamic)
    for (int jj = 0; jj < njobs; ++jj) {
        const auto [d, i] = jobs[jj];
        std::vector<double> beta;
        if (d == 0) {
            const SplitPoint split{rule.nodes[i], rule.one_plus[i], rule.one_minus[i]};
            beta = radial_split(kernel_, split, 0.0, jac, config_).beta;
        } else {
            // Target sits d patches to the right of the source patch.
            const double dist = (d - 1) * h + jac * rule.one_plus[i];
            if (dist <= config_.near_threshold * h) {
                beta = radial_split(kernel_, SplitPoint{1.0, 2.0, 0.0}, dist, jac, config_).beta;
            }
        }
        // Mirror image: offset -d, node n-1-i, beta_k -> (-1)^k beta_k.
        std::vector<double> mirrored = beta;
        for (size_t k = 1; k < mirrored.size(); k += 2) mirrored[k] = -mirrored[k];
        weights_[static_cast<size_t>((d + reach_) * n + i)] = std::move(beta);
        weights_[static_cast<size_t>((-d + reach_) * n + (n - 1 - i))] = std::move(mirrored);
    }
}

std::vector<double> Operator1D::nodes() const {
    const auto& rule = cheb_rule(config_.n);
    std::vector<double> x;
    x.reserve(static_cast<size_t>(num_nodes()));
    for (const auto& patch : patches_.patches) {
        for (double t : rule.nodes) x.push_back(patch.xi(t));
    }
    return x;
}

std::vector<double> Operator1D::apply(std::span<const double> u) const {
    const int n = config_.n;
    const int P = patches_.size();
    const int N = num_nodes();
    if (static_cast<int>(u.size()) != N) {
        throw InvalidArgument("Operator1D::apply: density has " + std::to_string(u.size()) +
                              " values, expected " + std::to_string(N));
    }
    const auto& rule = cheb_rule(n);
    const double jac = 0.5 * patches_.patch_length();

    std::vector<double> phi(u.size());
    for (int j = 0; j < N; ++j) phi[j] = u[j] * jac;
    std::vector<std::vector<double>> coeffs(static_cast<size_t>(P));
    for (int l = 0; l < P; ++l) {
        coeffs[l] = discrete_cheb_coeffs(std::span<const double>(phi).subspan(l * n, n)).coeffs;
    }
    const std::vector<double> x = nodes();

    std::vector<double> out(static_cast<size_t>(N), 0.0);
#pragma omp parallel for schedule(static)
    for (int target = 0; target < N; ++target) {
        const int lt = target / n;
        const int i = target % n;
        double s = 0.0;
        for (int l = 0; l < P; ++l) {
            const int d = lt - l;
            if (std::abs(d) <= reach_) {
                const auto& beta = weights(d, i);
                if (!beta.empty()) {
                    s += singular_patch_integral(coeffs[l], beta);
                    continue;
                }
            }
            double r = 0.0;
            for (int j = 0; j < n; ++j) {
                r += rule.weights[j] * kernel_radial(kernel_, std::abs(x[target] - x[l * n + j])) *
                     phi[l * n + j];
            }
            s += r;
        }
        out[target] = s;
    }
    return out;
}

std::vector<double> Operator1D::apply(const std::function<double(double)>& u) const {
    const std::vector<double> x = nodes();
    std::vector<double> values(x.size());
    for (size_t j = 0; j < x.size(); ++j) values[j] = u(x[j]);
    return apply(values);
}

std::vector<double> apply_operator(const KernelSpec& kernel, const PatchSet1D& patches,
                                   const std::function<double(double)>& u,
                                   const QuadConfig& config) {
    return Operator1D(kernel, patches, config).apply(u);
}

double reference_operator(const KernelSpec& kernel, double a, double b,
                          const std::function<double(double)>& u, double x,
                          std::span<const double> breakpoints, double tol) {
    require_1d(kernel, "reference_operator");
    if (!(a < b)) throw InvalidArgument("reference_operator: need a < b");
    thread_local boost::math::quadrature::tanh_sinh<double> integrator;

    std::vector<double> cuts{a, b};
    if (x > a && x < b) cuts.push_back(x);
    for (double c : breakpoints) {
        if (c > a && c < b) cuts.push_back(c);
    }
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

    double total = 0.0;
    double total_err = 0.0;
    for (size_t q = 0; q + 1 < cuts.size(); ++q) {
        const double y0 = cuts[q], y1 = cuts[q + 1];
        // Integrate in the separation delta = |x - y| so the kernel singularity
        // sits at an endpoint where delta is represented exactly.
        const bool below = y1 <= x;
        const double lo = below ? x - y1 : y0 - x;
        const double hi = below ? x - y0 : y1 - x;
        // Rescaled to [0, 1]: the error estimate is unreliable on short intervals.
        const double len = hi - lo;
        auto f = [&](double w) {
            const double delta = lo + len * w;
            if (delta <= 0.0) return 0.0;
            return len * kernel_radial(kernel, delta) * u(below ? x - delta : x + delta);
        };
        double err = 0.0, l1 = 0.0;
        total += integrator.integrate(f, 0.0, 1.0, 1e-15, &err, &l1);
        total_err += err;
    }
    if (!(total_err <= tol)) {
        throw AccuracyNotReached("reference_operator: error estimate " + std::to_string(total_err) +
                                 " above " + std::to_string(tol));
    }
    return total;
}

}  // namespace rpq
