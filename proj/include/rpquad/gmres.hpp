#pragma once

#include <complex>
#include <functional>
#include <span>
#include <vector>

namespace rpq {

using cplx = std::complex<double>;

/// y = A x for a square operator.
using LinearOperator = std::function<void(std::span<const cplx> x, std::span<cplx> y)>;

struct GmresResult {
    std::vector<cplx> x;
    int iterations = 0;        ///< Arnoldi steps (operator applications)
    double residual = 0.0;     ///< final ||b - A x|| / ||b||
    bool converged = false;
};

/// GMRES with modified Gram-Schmidt Arnoldi and Givens rotations, zero
/// initial guess. restart = 0 disables restarting.
[[nodiscard]] GmresResult gmres_solve(const LinearOperator& apply, std::span<const cplx> rhs,
                                      double tol = 1e-10, int restart = 0, int max_iter = 500);

}  // namespace rpq
