#pragma once

#include <cmath>
#include <complex>
#include <functional>
#include <span>
#include <vector>

#include "rpquad/cheb.hpp"
#include "rpquad/geometry.hpp"
#include "rpquad/kernels.hpp"
#include "rpquad/pcv.hpp"

namespace rpq {

struct QuadConfig {
    int n = 16;                   ///< nodes per patch
    int n_beta = 0;               ///< singular-weight nodes; 0 means 4 n
    int p = 6;                    ///< PCV degree
    double near_threshold = 1.0;  ///< in units of patch length

    [[nodiscard]] int nbeta() const { return n_beta > 0 ? n_beta : 4 * n; }
    /// Throws InvalidArgument unless n >= 1, n_beta >= n, p >= 2, near_threshold >= 0.
    void validate() const;
};

/// Singular weights beta_k = beta_{k,L} + beta_{k,R}, k = 0..n-1, in
/// parametric coordinates (the patch Jacobian lives in the density).
template <class T>
struct SingularWeightSet {
    double t_x = 0.0;
    std::vector<T> left;
    std::vector<T> right;
    std::vector<T> beta;
};

/// Split point t_x with 1 + t_x and 1 - t_x supplied separately so callers
/// can pass them without cancellation.
struct SplitPoint {
    double t_x = 0.0;
    double one_plus = 1.0;
    double one_minus = 1.0;

    [[nodiscard]] static SplitPoint at(double t) { return {t, 1.0 + t, 1.0 - t}; }
};

namespace detail {

/// beta[k] += sum_j f[j] T_k(t[j]); vectorizes over j.
template <class T>
void accumulate_moments(std::span<const double> t, std::span<const T> f, std::span<T> beta) {
    const size_t m = t.size();
    const size_t n = beta.size();
    if (n == 0) return;
    std::vector<double> prev(m, 1.0), cur(t.begin(), t.end()), next(m);
    T s0{};
    for (size_t j = 0; j < m; ++j) s0 += f[j];
    beta[0] += s0;
    if (n == 1) return;
    T s1{};
    for (size_t j = 0; j < m; ++j) s1 += f[j] * cur[j];
    beta[1] += s1;
    for (size_t k = 2; k < n; ++k) {
        T sk{};
        for (size_t j = 0; j < m; ++j) {
            next[j] = 2.0 * t[j] * cur[j] - prev[j];
            sk += f[j] * next[j];
        }
        beta[k] += sk;
        prev.swap(cur);
        cur.swap(next);
    }
}

template <class T>
bool finite_value(const T& v) {
    if constexpr (std::is_same_v<T, double>) {
        return std::isfinite(v);
    } else {
        return std::isfinite(v.real()) && std::isfinite(v.imag());
    }
}

}  // namespace detail

/// Split + PCV + Fejer singular weights for a generic kernel.
///
/// `g(t, delta)` returns the kernel at source parameter t, where
/// delta = t_x - t is passed separately because it is known accurately.
/// The left part covers [-1, t_x] and the right part [t_x, 1]; either is
/// skipped when empty.
template <class T, class KernelFn>
SingularWeightSet<T> split_weights(const SplitPoint& split, int n, const ChebRule& beta_rule,
                                   const PcvMap& pcv, KernelFn&& g) {
    SingularWeightSet<T> out;
    out.t_x = split.t_x;
    out.left.assign(static_cast<size_t>(n), T{});
    out.right.assign(static_cast<size_t>(n), T{});
    const int m = beta_rule.size();
    std::vector<double> tv(static_cast<size_t>(m));
    std::vector<T> fv(static_cast<size_t>(m));

    auto side = [&](bool is_left, std::vector<T>& dest) {
        const double span_len = is_left ? split.one_plus : split.one_minus;
        if (!(span_len > 0.0)) return;
        for (int j = 0; j < m; ++j) {
            const double shifted = 0.5 * (is_left ? beta_rule.one_minus[j] : beta_rule.one_plus[j]);
            const PcvValue pv = pcv.eval_shifted(shifted);
            const double off = span_len * pv.psi;
            const double delta = is_left ? off : -off;
            const double t = is_left ? split.t_x - off : split.t_x + off;
            const double jac = 0.5 * span_len * pv.dpsi;
            tv[j] = t;
            fv[j] = T{};
            if (off == 0.0 || jac == 0.0) continue;
            const T val = g(t, delta) * (beta_rule.weights[j] * jac);
            if (detail::finite_value(val)) fv[j] = val;
        }
        detail::accumulate_moments<T>(tv, fv, dest);
    };
    side(true, out.left);
    side(false, out.right);
    out.beta.resize(static_cast<size_t>(n));
    for (int k = 0; k < n; ++k) out.beta[k] = out.left[k] + out.right[k];
    return out;
}

enum class TargetKind { Regular, Singular, NearSingular };

struct TargetClass {
    TargetKind kind = TargetKind::Regular;
    double t_x = 0.0;       ///< split location (projected for near targets)
    double distance = 0.0;  ///< distance from the target to the patch
};

/// Singular if x is in the closed patch, near if within near_threshold * h,
/// regular otherwise.
[[nodiscard]] TargetClass classify_target(const Patch1D& patch, double x, const QuadConfig& config);

/// Weights for a target x = xi(t_x) inside the patch.
[[nodiscard]] SingularWeightSet<double> singular_weights(const KernelSpec& kernel,
                                                         const Patch1D& patch, double t_x,
                                                         const QuadConfig& config);

/// Weights for a target x outside the patch: the split is projected to the
/// nearest parametric endpoint while the kernel keeps the true x.
[[nodiscard]] SingularWeightSet<double> near_singular_weights(const KernelSpec& kernel,
                                                              const Patch1D& patch, double x,
                                                              const QuadConfig& config);

/// sum_i w_i g(|x - xi(t_i)|) phi(t_i) where phi = u J are samples at the
/// patch's Chebyshev nodes. Throws InvalidArgument if x lies in the patch.
[[nodiscard]] double regular_patch_integral(const KernelSpec& kernel, const Patch1D& patch,
                                            std::span<const double> phi, double x);
[[nodiscard]] double regular_patch_integral(const std::function<double(double, double)>& kernel,
                                            const Patch1D& patch, std::span<const double> phi,
                                            double x);

/// sum_k c_k beta_k.
[[nodiscard]] double singular_patch_integral(std::span<const double> coeffs,
                                             std::span<const double> beta);
[[nodiscard]] std::complex<double> singular_patch_integral(
    std::span<const std::complex<double>> coeffs, std::span<const std::complex<double>> beta);

/// Discretized convolution operator on a uniformly patched interval with
/// targets at all global nodes (patch-major, node index i within a patch).
///
/// Singular and near-singular weights depend only on the patch offset and
/// the node index, so they are built once and shared by every patch.
class Operator1D {
public:
    Operator1D(const KernelSpec& kernel, PatchSet1D patches, const QuadConfig& config);

    [[nodiscard]] int num_nodes() const { return patches_.size() * config_.n; }
    [[nodiscard]] std::vector<double> nodes() const;
    [[nodiscard]] const QuadConfig& config() const { return config_; }
    [[nodiscard]] const PatchSet1D& patches() const { return patches_; }

    /// Applies the operator to density values at the global nodes.
    [[nodiscard]] std::vector<double> apply(std::span<const double> u) const;
    [[nodiscard]] std::vector<double> apply(const std::function<double(double)>& u) const;

private:
    KernelSpec kernel_;
    PatchSet1D patches_;
    QuadConfig config_;
    int reach_ = 0;  // largest patch offset that can hold near targets
    std::vector<std::vector<double>> weights_;  // [(d + reach) * n + i]; empty means regular

    [[nodiscard]] const std::vector<double>& weights(int d, int i) const {
        return weights_[static_cast<size_t>((d + reach_) * config_.n + i)];
    }
};

/// K[u](x_j) at every global node.
[[nodiscard]] std::vector<double> apply_operator(const KernelSpec& kernel, const PatchSet1D& patches,
                                                 const std::function<double(double)>& u,
                                                 const QuadConfig& config);

/// int_a^b g(|x - y|) u(y) dy by tanh-sinh with splits at x and at the
/// given breakpoints (kinks of u). Throws AccuracyNotReached if the error
/// estimate exceeds tol.
[[nodiscard]] double reference_operator(const KernelSpec& kernel, double a, double b,
                                        const std::function<double(double)>& u, double x,
                                        std::span<const double> breakpoints = {},
                                        double tol = 1e-13);

}  // namespace rpq
