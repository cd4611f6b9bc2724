"""Independent integral-representation oracles for the Bessel evaluators.

These follow the hyperbolic representations

    J0(u) = (2/pi) int_0^inf sin(u cosh t) dt,
    Y0(u) = -(2/pi) int_0^inf cos(u cosh t) dt,
    K0(u) = int_0^inf cos(u sinh t) dt = int_0^inf exp(-u cosh t) dt,
    K_n(u) = int_0^inf exp(-u cosh t) cosh(n t) dt,

computed through the oscillatory engine (never through the production
series/asymptotic code they are meant to check).
"""

from __future__ import annotations

import numpy as np

from .numerics import integrate_decaying
from .quadrature import hyperbolic_oscillatory

__all__ = [
    "j0_oracle",
    "y0_oracle",
    "k0_oracle_cos",
    "k0_oracle_exp",
    "kn_oracle",
]


def _cosh_phase_integral(u):
    # int_-inf^inf exp(i u cosh t) dt, u > 0
    return hyperbolic_oscillatory(0.5 * u, 0.5 * u)


def _sinh_phase_integral(u):
    # int_-inf^inf exp(i u sinh t) dt, u > 0
    return hyperbolic_oscillatory(0.5 * u, -0.5 * u)


def j0_oracle(u):
    if u <= 0:
        raise ValueError("oracle requires u > 0")
    return (1.0 / np.pi) * _cosh_phase_integral(u).imag


def y0_oracle(u):
    if u <= 0:
        raise ValueError("oracle requires u > 0")
    return -(1.0 / np.pi) * _cosh_phase_integral(u).real


def k0_oracle_cos(u):
    if u <= 0:
        raise ValueError("oracle requires u > 0")
    return 0.5 * _sinh_phase_integral(u).real


def k0_oracle_exp(u):
    if u <= 0:
        raise ValueError("oracle requires u > 0")
    f = lambda t: np.exp(-u * np.cosh(t))
    return float(np.real(integrate_decaying(f, 0.0, 1.0, abs_tol=1e-16)))


def kn_oracle(n, u):
    if u <= 0:
        raise ValueError("oracle requires u > 0")
    n = abs(int(n))
    f = lambda t: np.exp(-u * np.cosh(t)) * np.cosh(n * t)
    return float(np.real(integrate_decaying(f, 0.0, 1.0, abs_tol=1e-16)))
