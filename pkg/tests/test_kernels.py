import math

import numpy as np
import pytest
from scipy import special as sp

from splitcone.geometry import ConePoint, DualVector, cone_embed, pair
from splitcone.kernels import (
    corollary_kernels,
    delta_cone_apply,
    delta_hyperboloid_apply,
    ft_bruteforce_damped,
    ft_closed_form,
    ft_regularized,
    lemma_kernel_integrals,
    phi0_plus,
    psi0,
)
from splitcone.numerics import SplitMix64
from splitcone.quadrature import hyperbolic_oscillatory


def test_psi0_branches():
    assert abs(psi0(-0.5) + (2 / math.pi) * sp.k0(2.0)) < 1e-12
    assert abs(psi0(0.5) - sp.y0(2.0)) < 1e-12
    with pytest.raises(ValueError):
        psi0(0.0)


def test_phi0_branches():
    assert phi0_plus(-3.0) == 0.0
    assert phi0_plus(0.0) == 0.0
    assert abs(phi0_plus(1e-12) - 1.0) < 1e-5
    assert abs(phi0_plus(0.5) - sp.j0(2.0)) < 1e-12
    arr = phi0_plus(np.array([-1.0, 0.125]))
    assert arr[0] == 0.0 and abs(arr[1] - sp.j0(1.0)) < 1e-12


def test_ft_closed_form_table():
    R, q = 1.0, 4.0
    v = ft_closed_form(R, q, -1, +1)
    assert abs(v - (math.pi / 4) * (sp.y0(2.0) + 1j * sp.j0(2.0))) < 1e-12
    v = ft_closed_form(R, -q, -1, +1)
    assert abs(v + 0.5 * sp.k0(2.0)) < 1e-12
    v = ft_closed_form(2.0, 1.0, -1, -1)
    assert abs(v - (math.pi / 4) * (sp.y0(2.0) - 1j * sp.j0(2.0))) < 1e-12
    v = ft_closed_form(1.0, 4.0, +1, +1)
    assert abs(v + 0.5 * sp.k0(2.0)) < 1e-12
    # sign_eps flip conjugates the oscillatory branch, fixes the real branch
    a = ft_closed_form(1.3, 2.0, -1, +1)
    b = ft_closed_form(1.3, 2.0, -1, -1)
    assert abs(a - np.conj(b)) < 1e-15
    assert ft_closed_form(1.3, -2.0, -1, +1) == ft_closed_form(1.3, -2.0, -1, -1)
    with pytest.raises(ValueError):
        ft_closed_form(1.0, 0.0, -1, 1)
    with pytest.raises(ValueError):
        ft_closed_form(-1.0, 1.0, -1, 1)
    with pytest.raises(ValueError):
        ft_closed_form(1.0, 1.0, 2, 1)


def test_ft_regularized_matches_closed_form():
    rng = SplitMix64(21)
    for _ in range(6):
        R = rng.uniform(0.5, 2.0)
        q = rng.uniform(0.25, 16.0) * rng.choice_sign()
        sig = rng.uniform(1.0, 4.0)
        if abs(q) > sig * sig:
            sig = math.sqrt(abs(q)) * 1.3
        r1 = 0.5 * (sig + q / sig)
        r2 = 0.5 * (sig - q / sig)
        xi = DualVector(r1, 0.0, 0.0, r2)
        for sR in (-1, 1):
            for se in (-1, 1):
                res = ft_regularized(R, xi, sR, se)
                ref = ft_closed_form(R, q, sR, se)
                assert abs(res.value - ref) <= max(1e-4 * abs(ref), 1e-5)
                assert res.error_estimate < 1e-3


def test_ft_regularized_rejects_cone():
    with pytest.raises(ValueError):
        ft_regularized(1.0, DualVector(1.0, 0.0, 1.0, 0.0), -1, 1)


def test_corollary_kernels():
    p1 = ConePoint(1.2, 0.3, 1.1)
    p2 = ConePoint(0.7, 2.0, 0.4)
    inner = pair(cone_embed(p1), cone_embed(p2))
    sym, anti = corollary_kernels(1.5, p1, p2)
    assert abs(sym - 0.5 * math.pi * psi0(-inner)) < 1e-4 * abs(sym)
    ref = 0.5j * math.pi * phi0_plus(-(1.5**2 / 4) * inner)
    assert abs(anti - ref) < 1e-4 * max(abs(ref), 1e-2)
    # positive pairing kills the antisymmetric combination
    p3 = ConePoint(1.0, 0.3, 1.1 + math.pi)
    inner3 = pair(cone_embed(p1), cone_embed(p3))
    assert inner3 > 0
    _, anti3 = corollary_kernels(1.0, p1, p3)
    assert abs(anti3) < 1e-6


def test_corollary_rejects_lightlike():
    p1 = ConePoint(1.0, 0.3, 0.7)
    with pytest.raises(ValueError):
        corollary_kernels(1.0, p1, p1)


def test_lemma_integrals():
    p1 = ConePoint(1.2, 0.3, 1.1)
    p2 = ConePoint(0.7, 2.0, 0.4)
    lv = lemma_kernel_integrals(1.2, p1, p2)
    scale = max(abs(x) for x in lv.references)
    for got, ref in zip(lv.integrals, lv.references):
        assert abs(got - ref) < 1e-6 * scale
    with pytest.raises(ValueError):
        lemma_kernel_integrals(1.0, p1, p1)


def test_lemma_r2_zero_reduces_to_y0():
    # same theta2 and radius: the second phase loses its sinh component
    R, r1d = 1.2, 1.7
    h = hyperbolic_oscillatory(0.5 * R * r1d, 0.5 * R * r1d)
    assert abs(-(1 / math.pi) * h.real - sp.y0(R * r1d)) < 1e-10


def test_delta_cone_two_routes():
    psi = lambda X: np.exp(-(X**2).sum(axis=-1))
    res = delta_cone_apply(psi)
    assert res.rel_difference < 1e-5
    # exact surface value for the plain Gaussian is pi^2/2
    assert abs(res.surface - math.pi**2 / 2) < 1e-10
    odd = lambda X: X[..., 0] * np.exp(-(X**2).sum(axis=-1))
    r2 = delta_cone_apply(odd)
    assert abs(r2.surface) < 1e-12 and abs(r2.volume) < 1e-10


def test_delta_hyperboloid():
    psi = lambda X: np.exp(-(X**2).sum(axis=-1))
    res = delta_hyperboloid_apply(psi, 1.0)
    assert abs(res.surface - math.pi**2 / 2 * math.exp(-1.0)) < 1e-10
    assert res.rel_difference < 1e-5


@pytest.mark.slow
def test_bruteforce_oracle_matches_production_at_finite_eps():
    xi = DualVector(1.5, 0.0, 0.5, 0.0)
    eps = 0.4
    for sR, se in ((-1, 1), (1, -1)):
        got = ft_bruteforce_damped(1.0, xi, sR, se, eps=eps)
        a, b = 1.0, 0.5
        eta = -1.0 * se
        ref = -0.25 * hyperbolic_oscillatory(a * eta, -b * eta * sR, b * eps)
        assert abs(got - ref) < 3e-2 * abs(ref)
