#include "rpquad/pcv.hpp"

#include <cmath>
#include <string>

#include "rpquad/errors.hpp"

namespace rpq {

namespace {

void require_degree(int p) {
    if (p < 2) throw InvalidArgument("PCV degree must be >= 2, got " + std::to_string(p));
}

// x^k for integer k >= 0 by repeated squaring; std::pow is slower and not exact.
double ipow(double x, int k) {
    double r = 1.0;
    while (k > 0) {
        if (k & 1) r *= x;
        x *= x;
        k >>= 1;
    }
    return r;
}

struct Parts {
    double q_plus;   // q_p(t)
    double q_minus;  // q_p(-t)
    double v_plus;   // v_p(t)  = s q_p(t)
    double v_minus;  // v_p(-t) = (2 - s) q_p(-t)
    double dv;       // v_p'(t) = v_p'(-t)
};

Parts parts(double s, double c, int p) {
    const double t = s - 1.0;
    Parts r{};
    r.q_plus = c * (t * t - t) + 0.5;
    r.q_minus = c * (t * t + t) + 0.5;
    r.v_plus = s * r.q_plus;
    r.v_minus = (2.0 - s) * r.q_minus;
    r.dv = 3.0 * c * t * t + 1.0 / p;
    return r;
}

}  // namespace

PcvMap::PcvMap(int p) : p_(p), c_(0.0) {
    require_degree(p);
    c_ = 0.5 - 1.0 / p;
}

PcvValue PcvMap::eval_shifted(double s) const {
    const Parts v = parts(s, c_, p_);
    const double a = ipow(v.v_plus, p_);
    const double b = ipow(v.v_minus, p_);
    const double sum = a + b;
    PcvValue out;
    out.psi = 2.0 * a / sum;
    const double cross = v.dv * v.v_minus + v.v_plus * v.dv;
    out.dpsi = 2.0 * p_ * ipow(v.v_plus, p_ - 1) * ipow(v.v_minus, p_ - 1) * cross / (sum * sum);
    return out;
}

double PcvMap::factor_Q(double t) const {
    const Parts v = parts(t + 1.0, c_, p_);
    const double sum = ipow(v.v_plus, p_) + ipow(v.v_minus, p_);
    return 2.0 * ipow(v.q_plus, p_) / sum;
}

double PcvMap::factor_R(double t) const {
    const Parts v = parts(t + 1.0, c_, p_);
    const double sum = ipow(v.v_plus, p_) + ipow(v.v_minus, p_);
    const double cross = v.dv * v.v_minus + v.v_plus * v.dv;
    return 2.0 * p_ * ipow(v.q_plus, p_ - 1) * ipow(v.v_minus, p_ - 1) * cross / (sum * sum);
}

double v_p(double t, int p) {
    require_degree(p);
    const double c = 0.5 - 1.0 / p;
    return ((c * t) * t + 1.0 / p) * t + 0.5;
}

double psi_p(double t, int p) { return PcvMap(p)(t); }
double psi_p_deriv(double t, int p) { return PcvMap(p).deriv(t); }
double pcv_factor_Q(double t, int p) { return PcvMap(p).factor_Q(t); }
double pcv_factor_R(double t, int p) { return PcvMap(p).factor_R(t); }

}  // namespace rpq
