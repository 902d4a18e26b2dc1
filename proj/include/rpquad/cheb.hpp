#pragma once

#include <complex>
#include <functional>
#include <span>
#include <vector>

namespace rpq {

/// Open Chebyshev nodes t_i = cos(pi (2i+1) / 2n) together with the
/// Fejér-first weights.
///
/// `one_minus[i]` and `one_plus[i]` hold 1 - t_i and 1 + t_i computed from
/// half-angle identities, so they keep full relative accuracy next to the
/// endpoints where the subtraction would cancel.
struct ChebRule {
    int n = 0;
    std::vector<double> nodes;
    std::vector<double> weights;
    std::vector<double> one_minus;
    std::vector<double> one_plus;

    [[nodiscard]] int size() const { return n; }
};

[[nodiscard]] std::vector<double> cheb_nodes(int n);
[[nodiscard]] std::vector<double> fejer1_weights(int n);

/// Builds a fresh rule.
[[nodiscard]] ChebRule make_cheb_rule(int n);

/// Returns a process-wide cached rule; safe to call from several threads.
[[nodiscard]] const ChebRule& cheb_rule(int n);

/// Discrete Chebyshev coefficients c_k = (gamma_k / n) sum_i f(t_i) T_k(t_i),
/// gamma_0 = 1 and gamma_k = 2 otherwise.
template <class T>
struct ChebCoeffs {
    std::vector<T> coeffs;

    [[nodiscard]] int size() const { return static_cast<int>(coeffs.size()); }
    [[nodiscard]] static constexpr double gamma(int k) { return k == 0 ? 1.0 : 2.0; }
};

enum class CoeffMethod {
    Auto,    // fast transform for larger n, direct sum otherwise
    Direct,  // O(n^2) summation
    Fast,    // DCT-II through FFTW
};

[[nodiscard]] ChebCoeffs<double> discrete_cheb_coeffs(std::span<const double> samples,
                                                      CoeffMethod method = CoeffMethod::Auto);
[[nodiscard]] ChebCoeffs<std::complex<double>> discrete_cheb_coeffs(
    std::span<const std::complex<double>> samples, CoeffMethod method = CoeffMethod::Auto);

/// Fills out[k] = T_k(t) for k = 0..out.size()-1 with the three-term recurrence.
void chebyshev_t_values(double t, std::span<double> out);

/// Clenshaw evaluation of sum_k c_k T_k(t); throws for |t| > 1.
[[nodiscard]] double clenshaw_eval(std::span<const double> coeffs, double t);
[[nodiscard]] std::complex<double> clenshaw_eval(std::span<const std::complex<double>> coeffs,
                                                 double t);

template <class T>
[[nodiscard]] T clenshaw_eval(const ChebCoeffs<T>& c, double t) {
    return clenshaw_eval(std::span<const T>(c.coeffs), t);
}

/// Continuous coefficient c_k = (gamma_k / pi) int_0^pi f(cos th) cos(k th) dth,
/// computed adaptively to absolute accuracy `tol`. Test oracle, not a hot path.
[[nodiscard]] double continuous_cheb_coeff(const std::function<double(double)>& f, int k,
                                           double tol = 1e-12);

[[nodiscard]] double fejer1_integrate(std::span<const double> samples,
                                      std::span<const double> weights);
[[nodiscard]] std::complex<double> fejer1_integrate(std::span<const std::complex<double>> samples,
                                                    std::span<const double> weights);

}  // namespace rpq
