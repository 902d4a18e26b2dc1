"""Rectangular-polar quadrature for weakly singular convolution integrals and
a sound-soft Helmholtz scattering solver."""

from ._core import (
    AccuracyNotReached,
    CoincidentPoint,
    DomainError,
    InvalidArgument,
    Kernel,
    NumericalFailure,
    OutOfPatch,
    ProximityError,
    apply_operator,
    bessel_j0,
    bessel_j1,
    bessel_y0,
    bessel_y1,
    cheb_nodes,
    clenshaw_eval,
    compute_noc,
    discrete_cheb_coeffs,
    fejer1_weights,
    green_helmholtz,
    hankel1,
    psi_p,
    psi_p_deriv,
    quad_convergence,
    reference_operator,
    solve_scattering,
    v_p,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
