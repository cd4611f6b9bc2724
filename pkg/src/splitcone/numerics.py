"""Shared numerical utilities: reproducible RNG, deterministic summation,
Richardson extrapolation, and panel-based Gauss-Legendre quadrature.

Every routine here is deterministic for fixed inputs; summations run in a
fixed order (pairwise over the panel index), so results do not depend on
worker count anywhere in the package.
"""

from __future__ import annotations

import numpy as np

_MASK64 = (1 << 64) - 1


class SplitMix64:
    """Minimal cross-language reproducible 64-bit generator.

    Standard SplitMix64 stepping; `uniform` maps the top 53 bits to [0, 1).
    Chosen over platform RNGs so golden files can be regenerated from any
    implementation language.
    """

    name = "splitmix64"

    def __init__(self, seed: int):
        self._state = int(seed) & _MASK64

    def next_u64(self) -> int:
        self._state = (self._state + 0x9E3779B97F4A7C15) & _MASK64
        z = self._state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
        return (z ^ (z >> 31)) & _MASK64

    def uniform(self, lo=0.0, hi=1.0):
        u = (self.next_u64() >> 11) * 2.0 ** -53
        return lo + (hi - lo) * u

    def uniforms(self, n, lo=0.0, hi=1.0):
        return np.array([self.uniform(lo, hi) for _ in range(n)])

    def choice_sign(self) -> int:
        return 1 if self.next_u64() & 1 else -1


def stable_sum(values):
    """Deterministic pairwise sum of a 1-d array in index order."""
    arr = np.asarray(values)
    if arr.size == 0:
        return arr.dtype.type(0) if arr.dtype.kind in "fc" else 0.0
    return np.add.reduce(arr)


def richardson_limit(values, ratio=2.0, order=2):
    """Extrapolate f(eps) -> f(0) from samples on a geometric epsilon ladder.

    `values[i]` corresponds to eps_i = eps_0 / ratio**i (largest first).
    Polynomial error model f(eps) = L + c1*eps + c2*eps^2 + ...; `order`
    elimination levels are applied. Returns (limit, error_estimate), the
    estimate taken from the last two table entries.
    """
    vals = [complex(v) for v in values]
    n = len(vals)
    if n == 1:
        return vals[0], float("nan")
    levels = min(order, n - 1)
    table = list(vals)
    last_two = [table[-1]]
    for m in range(1, levels + 1):
        mult = ratio**m
        table = [
            (mult * table[i + 1] - table[i]) / (mult - 1.0)
            for i in range(len(table) - 1)
        ]
        last_two.append(table[-1])
    err = abs(last_two[-1] - last_two[-2])
    return table[-1], err


_GL_CACHE: dict[int, tuple[np.ndarray, np.ndarray]] = {}


def gauss_legendre(n: int):
    """Cached Gauss-Legendre nodes/weights on [-1, 1]."""
    if n not in _GL_CACHE:
        x, w = np.polynomial.legendre.leggauss(n)
        _GL_CACHE[n] = (x, w)
    return _GL_CACHE[n]


def panel_nodes(breaks, order=12):
    """Gauss-Legendre nodes and weights for the panels defined by `breaks`.

    Returns (nodes, weights) flattened over panels in breakpoint order.
    """
    breaks = np.asarray(breaks, dtype=float)
    x, w = gauss_legendre(order)
    a = breaks[:-1][:, None]
    b = breaks[1:][:, None]
    half = 0.5 * (b - a)
    nodes = 0.5 * (a + b) + half * x[None, :]
    weights = half * w[None, :]
    return nodes.ravel(), weights.ravel()


def integrate_panels(f, breaks, order=12):
    """Integrate a vectorized callable over fixed panels, pairwise-summed."""
    nodes, weights = panel_nodes(breaks, order)
    vals = f(nodes) * weights
    per_panel = vals.reshape(len(breaks) - 1, order).sum(axis=1)
    return stable_sum(per_panel)


def geometric_breaks(a, b, first, ratio=2.0, max_panels=200):
    """Panel breakpoints on [a, b] with widths growing geometrically from `a`."""
    pts = [a]
    h = first
    while pts[-1] + h < b and len(pts) < max_panels:
        pts.append(pts[-1] + h)
        h *= ratio
    pts.append(b)
    return np.array(pts)


def integrate_decaying(f, a, scale, abs_tol=1e-12, order=16, max_octaves=60):
    """Integrate f over [a, inf) for integrands decaying on the given scale.

    Doubles the integration window in octaves of width `scale` until the
    last octave contributes less than abs_tol. The integrand must decay at
    least exponentially-ish on `scale`; raises RuntimeError otherwise.
    """
    total = 0.0 + 0.0j
    lo = float(a)
    width = float(scale)
    for _ in range(max_octaves):
        breaks = np.linspace(lo, lo + width, 5)
        part = integrate_panels(f, breaks, order)
        total += part
        if abs(part) < abs_tol:
            return total
        lo += width
        width *= 1.5
    raise RuntimeError("integrate_decaying: tail did not fall below abs_tol")
