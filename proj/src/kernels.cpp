#include "rpquad/kernels.hpp"

#include <cmath>
#include <sstream>

#include "rpquad/errors.hpp"
#include "rpquad/specfun.hpp"

namespace rpq {

KernelSpec KernelSpec::log() { return {}; }

KernelSpec KernelSpec::power(double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0)) {
        throw InvalidArgument("power kernel needs 0 < alpha < 1, got " + std::to_string(alpha));
    }
    KernelSpec k;
    k.kind = KernelKind::Power;
    k.alpha = alpha;
    return k;
}

KernelSpec KernelSpec::helmholtz_combined(double kappa, double eta) {
    if (!(kappa > 0.0) || !std::isfinite(kappa)) {
        throw InvalidArgument("wavenumber must be positive, got " + std::to_string(kappa));
    }
    if (!std::isfinite(eta)) throw InvalidArgument("coupling constant must be finite");
    KernelSpec k;
    k.kind = KernelKind::HelmholtzCombined;
    k.kappa = kappa;
    k.eta = eta;
    return k;
}

std::string KernelSpec::name() const {
    std::ostringstream os;
    switch (kind) {
        case KernelKind::Log: os << "log"; break;
        case KernelKind::Power: os << "power(" << alpha << ")"; break;
        case KernelKind::HelmholtzCombined:
            os << "helmholtz(kappa=" << kappa << ",eta=" << eta << ")";
            break;
    }
    return os.str();
}

double kernel_radial(const KernelSpec& spec, double r) {
    switch (spec.kind) {
        case KernelKind::Log: return std::log(r);
        case KernelKind::Power: return std::pow(r, -spec.alpha);
        case KernelKind::HelmholtzCombined: break;
    }
    throw InvalidArgument("kernel_radial: " + spec.name() + " is not a 1D kernel");
}

double kernel_eval_1d(const KernelSpec& spec, double x, double y) {
    if (x == y) throw CoincidentPoint("kernel_eval_1d: coincident points");
    return kernel_radial(spec, std::abs(x - y));
}

std::complex<double> green_helmholtz(double kappa, double r) {
    if (!(r > 0.0)) throw CoincidentPoint("green_helmholtz: coincident points");
    return std::complex<double>(0.0, 0.25) * hankel1(0, kappa * r);
}

std::complex<double> helmholtz_combined(double kappa, double eta, Vec2 d, Vec2 nu_y) {
    const double r = norm(d);
    if (!(r > 0.0)) throw CoincidentPoint("helmholtz_combined: coincident points");
    const HankelPair h = hankel1_01(kappa * r);
    const std::complex<double> i(0.0, 1.0);
    const std::complex<double> double_layer = (i * kappa / 4.0) * h.h1 * (dot(d, nu_y) / r);
    const std::complex<double> single_layer = (i / 4.0) * h.h0;
    return double_layer - i * eta * single_layer;
}

std::complex<double> kernel_eval_2d(const KernelSpec& spec, Vec2 x, Vec2 y, Vec2 nu_y) {
    if (spec.kind != KernelKind::HelmholtzCombined) {
        throw InvalidArgument("kernel_eval_2d: " + spec.name() + " is not a 2D kernel");
    }
    return helmholtz_combined(spec.kappa, spec.eta, x - y, nu_y);
}

}  // namespace rpq
