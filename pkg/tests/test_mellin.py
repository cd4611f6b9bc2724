import math

import numpy as np
import pytest

from splitcone.mellin import (
    RayTable,
    gamma_chain_identities,
    gr_2667_integrals,
    mellin,
    mellin_power_tail,
    per_theta_mellin_closed_forms,
    reference_ratio,
    verify_ratio,
)
from splitcone.operators import chain_fc_theta_integrand, chain_pl_theta_integrand
from splitcone.special import gamma_complex


def test_mellin_exponential():
    for a, rho in ((1.0, 0.0), (1.7, 0.8), (0.4, 2.0)):
        r = mellin(lambda s: np.exp(-a * s), rho)
        ref = a ** -(1 - 1j * rho) * gamma_complex(1 - 1j * rho)
        assert abs(r.value - ref) < 1e-7 * abs(ref)


def test_mellin_rational():
    a, nu, rho = 0.9, 2.5, 0.6
    r = mellin(lambda s: (1 + a * s) ** -nu, rho)
    ref = a ** -(1 - 1j * rho) * gamma_complex(1 - 1j * rho) * gamma_complex(
        nu - 1 + 1j * rho) / gamma_complex(nu)
    assert abs(r.value - ref) < 1e-7 * abs(ref)


def test_mellin_power_tail():
    # int_0^e c s^p s^-i rho ds against direct quadrature
    rho, p, c, e = 0.7, 0.5, 2.0, 0.1
    tail = mellin_power_tail(c, p, rho, e, "lower")
    s = np.linspace(1e-9, e, 400000)
    ref = np.trapezoid(c * s**p * s ** (-1j * rho), s)
    assert abs(tail - ref) < 1e-5 * abs(ref)


def test_gr_2667():
    (qs, qc), (cs, cc) = gr_2667_integrals(1.0, 0.0)
    assert abs(qs - 0.0) < 1e-14 and abs(qc - 2.0) < 1e-12
    assert cs == 0.0 and cc == 2.0
    (qs, qc), (cs, cc) = gr_2667_integrals(1.0, 1.0)
    assert abs(cs - 0.5) < 1e-15 and abs(cc + 0.5) < 1e-15
    assert abs(qs - cs) < 1e-12 and abs(qc - cc) < 1e-12
    (qs, qc), (cs, cc) = gr_2667_integrals(2.0, 1.0)
    assert abs(qs - cs) < 1e-10 and abs(qc - cc) < 1e-10
    with pytest.raises(ValueError):
        gr_2667_integrals(0.0, 1.0)


def test_gamma_chain_identities():
    for rho in (0.3, 0.95, 2.4):
        for e in (0, 1):
            res = gamma_chain_identities(rho, e)
            assert all(v < 1e-10 for v in res.values()), res


def test_per_theta_closed_forms_vs_numerical_mellin():
    rho, R = 0.7, 1.3
    for e in (0, 1):
        for theta in (0.0, 0.8):
            m_pl, m_fc = per_theta_mellin_closed_forms(rho, R, theta, e)
            num_pl = mellin(
                lambda s: chain_pl_theta_integrand(theta, s, R, e), rho,
                s_lo=1e-10, s_hi=1e14).value
            num_fc = mellin(
                lambda s: chain_fc_theta_integrand(theta, s, e), rho,
                s_lo=1e-10, s_hi=1e14).value
            assert abs(num_pl - m_pl) < 1e-6 * abs(m_pl)
            assert abs(num_fc - m_fc) < 1e-6 * abs(m_fc)
    with pytest.raises(ValueError):
        per_theta_mellin_closed_forms(0.0, 1.0, 0.0, 0)


def test_reference_ratio_values():
    v = reference_ratio(1.0, 1.0, 0)
    assert abs(v - 2.0 ** (-2j) / math.tanh(math.pi / 2)) < 1e-15
    v = reference_ratio(1.0, 1.0, 1)
    assert abs(v - 2.0 ** (-2j) * math.tanh(math.pi / 2)) < 1e-15
    # parity product removes the hyperbolic factor
    prod = reference_ratio(0.8, 1.7, 0) * reference_ratio(0.8, 1.7, 1)
    assert abs(prod - 1.7 ** complex(-4, 3.2) * 2.0 ** (-3.2j)) < 1e-14
    with pytest.raises(ValueError):
        reference_ratio(0.0, 1.0, 0)


def test_closed_form_ratio_grid():
    for e in (0, 1):
        for rho in (0.3, 1.0, 2.0):
            for R in (0.5, 2.0):
                v = verify_ratio(rho, R, e, "closed_form")
                assert v.rel_error < 1e-10


def test_theta_independence():
    vals = []
    for th in (0.0, 0.5, 1.5):
        m_pl, m_fc = per_theta_mellin_closed_forms(0.9, 1.1, th, 0)
        vals.append(m_pl / m_fc)
    assert max(abs(v - vals[0]) for v in vals) < 1e-13


def test_end_to_end_ratio():
    table = RayTable(0, [1.0])
    v0 = verify_ratio(0.7, 1.0, 0, "end_to_end", ray_table=table)
    calib = v0.computed_ratio / v0.reference
    assert abs(calib - 1.0) < 2e-3
    v = verify_ratio(1.0, 1.0, 0, "end_to_end", ray_table=table, calibration=calib)
    assert v.rel_error < 5e-3


def test_large_rho_modulus():
    for e in (0, 1):
        assert abs(abs(reference_ratio(8.0, 1.0, e)) - 1.0) < 1e-9


def test_mode_validation():
    with pytest.raises(ValueError):
        verify_ratio(1.0, 1.0, 0, "nope")
    with pytest.raises(ValueError):
        verify_ratio(0.0, 1.0, 0)
