#pragma once

#include <complex>

namespace rpq {

/// Bessel functions of the first and second kind, orders 0 and 1, real argument.
/// J accepts x >= 0; Y requires x > 0.
[[nodiscard]] double bessel_j0(double x);
[[nodiscard]] double bessel_j1(double x);
[[nodiscard]] double bessel_y0(double x);
[[nodiscard]] double bessel_y1(double x);

/// H_n^(1)(x) = J_n(x) + i Y_n(x) for n in {0, 1}, x > 0.
[[nodiscard]] std::complex<double> hankel1(int n, double x);

struct HankelPair {
    std::complex<double> h0;
    std::complex<double> h1;
};

/// Both orders at once.
[[nodiscard]] HankelPair hankel1_01(double x);

}  // namespace rpq
