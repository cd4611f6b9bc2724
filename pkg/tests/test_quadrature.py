import math

import mpmath
import numpy as np
import pytest
from scipy import special as sp

from splitcone.numerics import SplitMix64, richardson_limit, stable_sum
from splitcone.quadrature import (
    QuadratureError,
    QuadratureSpec,
    expn_complex,
    hyperbolic_oscillatory,
)


def test_splitmix_determinism():
    a = SplitMix64(123)
    b = SplitMix64(123)
    assert [a.next_u64() for _ in range(5)] == [b.next_u64() for _ in range(5)]
    c = SplitMix64(124)
    assert a.next_u64() != c.next_u64()
    u = SplitMix64(0).uniform()
    assert 0.0 <= u < 1.0


def test_richardson_limit():
    # f(eps) = 3 + 2 eps + eps^2 on a ratio-2 ladder
    eps = [0.2 / 2**k for k in range(5)]
    vals = [3 + 2 * e + e * e for e in eps]
    lim, err = richardson_limit(vals, 2.0, 2)
    assert abs(lim - 3.0) < 1e-12
    # the estimate is the last level difference: conservative but finite
    assert 0 < err < 1e-2


def test_stable_sum_deterministic():
    rng = SplitMix64(1)
    xs = np.array([rng.uniform(-1, 1) for _ in range(1000)])
    assert stable_sum(xs) == stable_sum(xs.copy())


def test_expn_complex_against_mpmath():
    mpmath.mp.dps = 30
    for n in (1, 2, 5, 12):
        for z in (-40j, 2 - 40j, 0.3 - 70j, 5 + 3j, 0.05 - 1.2j):
            got = expn_complex(n, z)[n - 1]
            ref = complex(mpmath.expint(n, z))
            assert abs(got - ref) < 1e-13 * max(1.0, abs(ref))


def test_spec_validation():
    with pytest.raises(ValueError):
        QuadratureSpec(epsilon_ladder=(0.1, 0.2))
    with pytest.raises(ValueError):
        QuadratureSpec(epsilon_ladder=(0.1, -0.05))
    spec = QuadratureSpec()
    lim, err = spec.extrapolate([1.0 + e for e in spec.epsilon_ladder])
    assert abs(lim - 1.0) < 1e-12


def test_h_matches_bessel_identities():
    # int_R exp(i u cosh t) dt = pi (i J0(u) - Y0(u))
    for u in (0.3, 1.0, 4.0, 15.0, 40.0):
        got = hyperbolic_oscillatory(u / 2, u / 2)
        ref = math.pi * (1j * sp.j0(u) - sp.y0(u))
        assert abs(got - ref) < 5e-11
    # int_R exp(i u sinh t) dt = 2 K0(u)
    for u in (0.3, 1.0, 4.0, 15.0):
        got = hyperbolic_oscillatory(u / 2, -u / 2)
        assert abs(got - 2 * sp.k0(u)) < 5e-11


def test_h_damped_against_mpmath():
    mpmath.mp.dps = 25

    def brute(p, q, d):
        f = lambda x: mpmath.exp(
            1j * (p * mpmath.exp(x) + q * mpmath.exp(-x)) - d * mpmath.exp(-x)
        )
        segs = mpmath.linspace(-14, 5, 120)
        v = mpmath.quad(f, segs, maxdegree=10)
        U = p * mpmath.exp(5)
        g = lambda u: mpmath.exp(1j * (u + q * p / u) - d * p / u) / u
        v += mpmath.quadosc(g, [U, mpmath.inf], period=2 * mpmath.pi)
        return complex(v)

    for (p, q, d) in ((1.0, -0.7, 0.3), (0.6, 0.9, 1.2), (2.0, 0.25, 0.05)):
        got = hyperbolic_oscillatory(p, q, d)
        assert abs(got - brute(p, q, d)) < 1e-12


def test_h_conjugation_and_domain():
    v1 = hyperbolic_oscillatory(0.8, 0.5, 0.1)
    v2 = hyperbolic_oscillatory(-0.8, -0.5, 0.1)
    assert abs(v1 - np.conj(v2)) < 1e-14
    with pytest.raises(ValueError):
        hyperbolic_oscillatory(0.0, 1.0)
    with pytest.raises(ValueError):
        hyperbolic_oscillatory(1.0, 0.0)
    with pytest.raises(ValueError):
        hyperbolic_oscillatory(1.0, 1.0, -0.5)


def test_h_small_damping_regime():
    # ft-like regime: strong oscillation with weak damping on the 1/w side
    got = hyperbolic_oscillatory(1.3, -2.1, 2.1 * 0.0125)
    ref = hyperbolic_oscillatory(1.3, -2.1, 2.1 * 0.0125, QuadratureSpec(gl_order=16))
    assert abs(got - ref) < 1e-10


def test_panel_budget_error():
    with pytest.raises(QuadratureError):
        hyperbolic_oscillatory(1.0, -40.0, 0.002, QuadratureSpec(panel_budget=3))
