#pragma once

#include <complex>
#include <string>

#include "rpquad/vec2.hpp"

namespace rpq {

enum class KernelKind { Log, Power, HelmholtzCombined };

/// Immutable kernel description.
///
/// Log:               g(r) = log r
/// Power:             g(r) = r^(-alpha), 0 < alpha < 1
/// HelmholtzCombined: dG/dnu_y - i eta G with G = (i/4) H_0^(1)(kappa r)
struct KernelSpec {
    KernelKind kind = KernelKind::Log;
    double alpha = 0.0;
    double kappa = 0.0;
    double eta = 0.0;

    [[nodiscard]] static KernelSpec log();
    [[nodiscard]] static KernelSpec power(double alpha);
    [[nodiscard]] static KernelSpec helmholtz_combined(double kappa, double eta);

    [[nodiscard]] bool singular() const { return true; }
    [[nodiscard]] bool is_1d() const { return kind != KernelKind::HelmholtzCombined; }
    [[nodiscard]] std::string name() const;
};

/// g(r) for the 1D kernels; r must be positive.
[[nodiscard]] double kernel_radial(const KernelSpec& spec, double r);

/// g(|x - y|); throws CoincidentPoint when x == y.
[[nodiscard]] double kernel_eval_1d(const KernelSpec& spec, double x, double y);

/// Combined-field kernel at target x, source y with unit normal nu_y at y.
[[nodiscard]] std::complex<double> kernel_eval_2d(const KernelSpec& spec, Vec2 x, Vec2 y, Vec2 nu_y);

/// Same kernel from the separation d = x - y, which callers may have
/// computed more accurately than by subtracting positions.
[[nodiscard]] std::complex<double> helmholtz_combined(double kappa, double eta, Vec2 d, Vec2 nu_y);

/// Free-space Green function (i/4) H_0^(1)(kappa r).
[[nodiscard]] std::complex<double> green_helmholtz(double kappa, double r);

}  // namespace rpq
