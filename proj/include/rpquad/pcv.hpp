#pragma once

namespace rpq {

/// Cubic v_p(t) = (1/2 - 1/p) t^3 + t/p + 1/2.
[[nodiscard]] double v_p(double t, int p);

/// psi_p(t) = 2 v_p(t)^p / (v_p(t)^p + v_p(-t)^p), maps [-1,1] onto [0,2].
[[nodiscard]] double psi_p(double t, int p);
[[nodiscard]] double psi_p_deriv(double t, int p);

/// Factors with psi_p(t) = (t+1)^p Q_p(t) and psi_p'(t) = (t+1)^(p-1) R_p(t).
[[nodiscard]] double pcv_factor_Q(double t, int p);
[[nodiscard]] double pcv_factor_R(double t, int p);

struct PcvValue {
    double psi = 0.0;
    double dpsi = 0.0;
};

/// Degree-p polynomial change of variable.
///
/// The `_shifted` members take s = t + 1 instead of t, so callers that know
/// the distance to -1 exactly keep full relative accuracy near the endpoint.
class PcvMap {
public:
    explicit PcvMap(int p);

    [[nodiscard]] int degree() const { return p_; }

    [[nodiscard]] double operator()(double t) const { return eval_shifted(t + 1.0).psi; }
    [[nodiscard]] double deriv(double t) const { return eval_shifted(t + 1.0).dpsi; }
    [[nodiscard]] double factor_Q(double t) const;
    [[nodiscard]] double factor_R(double t) const;

    [[nodiscard]] PcvValue eval_shifted(double s) const;

private:
    int p_;
    double c_;  // 1/2 - 1/p
};

}  // namespace rpq
