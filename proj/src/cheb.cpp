#include "rpquad/cheb.hpp"

#include <fftw3.h>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <string>

#include "rpquad/errors.hpp"

namespace rpq {

namespace {

constexpr int kFastThreshold = 64;

void require_positive(int n, const char* what) {
    if (n < 1) {
        throw InvalidArgument(std::string(what) + ": node count must be >= 1, got " +
                              std::to_string(n));
    }
}

double node_angle(int i, int n) {
    return std::numbers::pi * (2.0 * i + 1.0) / (2.0 * n);
}

// FFTW planning is not thread-safe; execution through the new-array interface is.
class DctPlans {
public:
    fftw_plan get(int n) {
        std::lock_guard lock(mutex_);
        auto it = plans_.find(n);
        if (it != plans_.end()) return it->second;
        std::vector<double> in(static_cast<size_t>(n)), out(static_cast<size_t>(n));
        fftw_plan plan = fftw_plan_r2r_1d(n, in.data(), out.data(), FFTW_REDFT10,
                                          FFTW_ESTIMATE | FFTW_UNALIGNED);
        plans_.emplace(n, plan);
        return plan;
    }

    ~DctPlans() {
        for (auto& [n, plan] : plans_) fftw_destroy_plan(plan);
    }

private:
    std::mutex mutex_;
    std::map<int, fftw_plan> plans_;
};

DctPlans& dct_plans() {
    static DctPlans plans;
    return plans;
}

std::vector<double> coeffs_direct(std::span<const double> f) {
    const int n = static_cast<int>(f.size());
    std::vector<double> c(f.size(), 0.0);
    for (int k = 0; k < n; ++k) {
        double s = 0.0;
        for (int i = 0; i < n; ++i) s += f[i] * std::cos(k * node_angle(i, n));
        c[k] = ChebCoeffs<double>::gamma(k) * s / n;
    }
    return c;
}

std::vector<double> coeffs_fast(std::span<const double> f) {
    const int n = static_cast<int>(f.size());
    std::vector<double> in(f.begin(), f.end());
    std::vector<double> out(f.size());
    fftw_execute_r2r(dct_plans().get(n), in.data(), out.data());
    // REDFT10 returns 2 sum_j x_j cos(pi (2j+1) k / 2n).
    for (int k = 0; k < n; ++k) out[k] *= ChebCoeffs<double>::gamma(k) / (2.0 * n);
    return out;
}

std::vector<double> real_coeffs(std::span<const double> f, CoeffMethod method) {
    if (f.empty()) throw InvalidArgument("discrete_cheb_coeffs: empty sample vector");
    const bool fast = method == CoeffMethod::Fast ||
                      (method == CoeffMethod::Auto && f.size() >= kFastThreshold);
    return fast ? coeffs_fast(f) : coeffs_direct(f);
}

template <class T>
T clenshaw_impl(std::span<const T> c, double t) {
    if (!(std::abs(t) <= 1.0)) {
        throw InvalidArgument("clenshaw_eval: |t| must be <= 1, got " + std::to_string(t));
    }
    if (c.empty()) return T{};
    T b1{}, b2{};
    for (size_t k = c.size() - 1; k >= 1; --k) {
        T b0 = c[k] + 2.0 * t * b1 - b2;
        b2 = b1;
        b1 = b0;
    }
    return c[0] + t * b1 - b2;
}

}  // namespace

std::vector<double> cheb_nodes(int n) {
    require_positive(n, "cheb_nodes");
    std::vector<double> t(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) t[i] = std::cos(node_angle(i, n));
    // cos(pi/2) is not exactly zero in floating point.
    if (n % 2 == 1) t[n / 2] = 0.0;
    return t;
}

std::vector<double> fejer1_weights(int n) {
    require_positive(n, "fejer1_weights");
    std::vector<double> w(static_cast<size_t>(n));
    const int half = n / 2;
    for (int i = 0; i < n; ++i) {
        const double theta = node_angle(i, n);
        double s = 0.0;
        for (int k = 1; k <= half; ++k) s += std::cos(2.0 * k * theta) / (4.0 * k * k - 1.0);
        w[i] = 2.0 / n * (1.0 - 2.0 * s);
    }
    // Enforce exact mirror symmetry.
    for (int i = 0; i < half; ++i) {
        const double avg = 0.5 * (w[i] + w[n - 1 - i]);
        w[i] = w[n - 1 - i] = avg;
    }
    return w;
}

ChebRule make_cheb_rule(int n) {
    ChebRule r;
    r.n = n;
    r.nodes = cheb_nodes(n);
    r.weights = fejer1_weights(n);
    r.one_minus.resize(static_cast<size_t>(n));
    r.one_plus.resize(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) {
        const double half = 0.5 * node_angle(i, n);
        const double s = std::sin(half), c = std::cos(half);
        r.one_minus[i] = 2.0 * s * s;
        r.one_plus[i] = 2.0 * c * c;
    }
    return r;
}

const ChebRule& cheb_rule(int n) {
    require_positive(n, "cheb_rule");
    static std::mutex mutex;
    static std::map<int, std::unique_ptr<ChebRule>> cache;
    std::lock_guard lock(mutex);
    auto& slot = cache[n];
    if (!slot) slot = std::make_unique<ChebRule>(make_cheb_rule(n));
    return *slot;
}

ChebCoeffs<double> discrete_cheb_coeffs(std::span<const double> samples, CoeffMethod method) {
    return {real_coeffs(samples, method)};
}

ChebCoeffs<std::complex<double>> discrete_cheb_coeffs(
    std::span<const std::complex<double>> samples, CoeffMethod method) {
    if (samples.empty()) throw InvalidArgument("discrete_cheb_coeffs: empty sample vector");
    std::vector<double> re(samples.size()), im(samples.size());
    for (size_t i = 0; i < samples.size(); ++i) {
        re[i] = samples[i].real();
        im[i] = samples[i].imag();
    }
    const auto cr = real_coeffs(re, method);
    const auto ci = real_coeffs(im, method);
    ChebCoeffs<std::complex<double>> out;
    out.coeffs.resize(samples.size());
    for (size_t k = 0; k < samples.size(); ++k) out.coeffs[k] = {cr[k], ci[k]};
    return out;
}

void chebyshev_t_values(double t, std::span<double> out) {
    if (out.empty()) return;
    out[0] = 1.0;
    if (out.size() == 1) return;
    out[1] = t;
    const double two_t = 2.0 * t;
    for (size_t k = 2; k < out.size(); ++k) out[k] = two_t * out[k - 1] - out[k - 2];
}

double clenshaw_eval(std::span<const double> coeffs, double t) {
    return clenshaw_impl(coeffs, t);
}

std::complex<double> clenshaw_eval(std::span<const std::complex<double>> coeffs, double t) {
    return clenshaw_impl(coeffs, t);
}

double continuous_cheb_coeff(const std::function<double(double)>& f, int k, double tol) {
    if (k < 0) throw InvalidArgument("continuous_cheb_coeff: k must be >= 0");
    using boost::math::quadrature::gauss_kronrod;
    auto integrand = [&](double theta) { return f(std::cos(theta)) * std::cos(k * theta); };
    double error = 0.0;
    const double value =
        gauss_kronrod<double, 61>::integrate(integrand, 0.0, std::numbers::pi, 15, 1e-14, &error);
    const double scale = ChebCoeffs<double>::gamma(k) / std::numbers::pi;
    if (!(error * scale <= tol)) {
        throw AccuracyNotReached("continuous_cheb_coeff: error estimate " +
                                 std::to_string(error * scale) + " above " + std::to_string(tol));
    }
    return scale * value;
}

double fejer1_integrate(std::span<const double> samples, std::span<const double> weights) {
    if (samples.size() != weights.size()) {
        throw InvalidArgument("fejer1_integrate: samples and weights differ in length");
    }
    double s = 0.0;
    for (size_t i = 0; i < samples.size(); ++i) s += weights[i] * samples[i];
    return s;
}

std::complex<double> fejer1_integrate(std::span<const std::complex<double>> samples,
                                      std::span<const double> weights) {
    if (samples.size() != weights.size()) {
        throw InvalidArgument("fejer1_integrate: samples and weights differ in length");
    }
    std::complex<double> s{};
    for (size_t i = 0; i < samples.size(); ++i) s += weights[i] * samples[i];
    return s;
}

}  // namespace rpq
