#include "rpquad/gmres.hpp"

#include <cmath>

#include "rpquad/errors.hpp"

namespace rpq {

namespace {

double norm2(std::span<const cplx> v) {
    double s = 0.0;
    for (const cplx& z : v) s += std::norm(z);
    return std::sqrt(s);
}

cplx dotc(std::span<const cplx> a, std::span<const cplx> b) {
    cplx s{};
    for (size_t i = 0; i < a.size(); ++i) s += std::conj(a[i]) * b[i];
    return s;
}

void require_finite(double v) {
    if (!std::isfinite(v)) throw NumericalFailure("gmres_solve: non-finite value encountered");
}

}  // namespace

GmresResult gmres_solve(const LinearOperator& apply, std::span<const cplx> rhs, double tol,
                        int restart, int max_iter) {
    if (rhs.empty()) throw InvalidArgument("gmres_solve: empty right-hand side");
    if (!(tol > 0.0)) throw InvalidArgument("gmres_solve: tolerance must be positive");
    if (max_iter < 1) throw InvalidArgument("gmres_solve: max_iter must be >= 1");
    if (restart < 0) throw InvalidArgument("gmres_solve: restart must be >= 0");

    const size_t N = rhs.size();
    GmresResult res;
    res.x.assign(N, cplx{});
    const double bnorm = norm2(rhs);
    require_finite(bnorm);
    if (bnorm == 0.0) {
        res.converged = true;
        return res;
    }
    const int cycle = restart > 0 ? restart : max_iter;

    std::vector<cplx> r(rhs.begin(), rhs.end());
    std::vector<cplx> w(N);
    double rnorm = bnorm;

    while (res.iterations < max_iter) {
        const int m = std::min(cycle, max_iter - res.iterations);
        std::vector<std::vector<cplx>> V;
        V.reserve(static_cast<size_t>(m) + 1);
        std::vector<std::vector<cplx>> Hc(static_cast<size_t>(m));  // columns of Hessenberg
        std::vector<double> cs(static_cast<size_t>(m));
        std::vector<cplx> sn(static_cast<size_t>(m));
        std::vector<cplx> g(static_cast<size_t>(m) + 1, cplx{});
        g[0] = rnorm;
        V.emplace_back(N);
        for (size_t i = 0; i < N; ++i) V[0][i] = r[i] / rnorm;

        int k = 0;
        for (; k < m; ++k) {
            apply(V[k], w);
            ++res.iterations;
            auto& h = Hc[k];
            h.assign(static_cast<size_t>(k) + 2, cplx{});
            for (int j = 0; j <= k; ++j) {
                h[j] = dotc(V[j], w);
                for (size_t i = 0; i < N; ++i) w[i] -= h[j] * V[j][i];
            }
            const double hnext = norm2(w);
            require_finite(hnext);
            h[k + 1] = hnext;
            for (int j = 0; j < k; ++j) {
                const cplx t = cs[j] * h[j] + sn[j] * h[j + 1];
                h[j + 1] = -std::conj(sn[j]) * h[j] + cs[j] * h[j + 1];
                h[j] = t;
            }
            const double a = std::abs(h[k]);
            const double denom = std::hypot(a, hnext);
            if (denom == 0.0) {
                cs[k] = 1.0;
                sn[k] = 0.0;
            } else if (a == 0.0) {
                cs[k] = 0.0;
                sn[k] = 1.0;
            } else {
                cs[k] = a / denom;
                sn[k] = (h[k] / a) * hnext / denom;
            }
            h[k] = cs[k] * h[k] + sn[k] * hnext;
            h[k + 1] = 0.0;
            g[k + 1] = -std::conj(sn[k]) * g[k];
            g[k] = cs[k] * g[k];
            rnorm = std::abs(g[k + 1]);
            require_finite(rnorm);
            if (rnorm <= tol * bnorm || hnext <= 1e-14 * bnorm) {
                ++k;
                break;
            }
            V.emplace_back(N);
            for (size_t i = 0; i < N; ++i) V[k + 1][i] = w[i] / hnext;
        }
        // Back substitution on the k x k triangle.
        std::vector<cplx> y(static_cast<size_t>(k));
        for (int i = k - 1; i >= 0; --i) {
            cplx s = g[i];
            for (int j = i + 1; j < k; ++j) s -= Hc[j][i] * y[j];
            y[i] = s / Hc[i][i];
        }
        for (int j = 0; j < k; ++j) {
            for (size_t i = 0; i < N; ++i) res.x[i] += y[j] * V[j][i];
        }
        // True residual for the restart and the report.
        apply(res.x, w);
        for (size_t i = 0; i < N; ++i) r[i] = rhs[i] - w[i];
        rnorm = norm2(r);
        require_finite(rnorm);
        if (rnorm <= tol * bnorm) break;
    }
    res.residual = rnorm / bnorm;
    res.converged = rnorm <= tol * bnorm;
    return res;
}

}  // namespace rpq
