"""q-Pochhammer products and the Delta^+ / Delta^- weight factors.

Two routes are provided.  The exact route telescopes

    (a q^m Z; q)_inf / (a Z; q)_inf = 1 / (a Z; q)_m

so shifting every argument of Delta^{+-} by a nonnegative integer m leaves a
finite rational product.  The numeric route evaluates the infinite products
directly by truncation and is kept independent of the exact one.
"""
from __future__ import annotations

import math
from fractions import Fraction
from typing import Sequence

import numpy as np

from .errors import NonGenericParametersError
from .params import ParameterSet

__all__ = [
    "poch",
    "poch_inf",
    "truncation_for",
    "ratio_plus_v",
    "ratio_plus_w",
    "ratio_minus_v",
    "ratio_minus_w",
    "delta_ratio",
    "delta_numeric",
]


def poch(a: Fraction, q: Fraction, m: int) -> Fraction:
    val = Fraction(1)
    for l in range(m):
        val *= 1 - a * q**l
    return val


def truncation_for(q: float, tol: float = 1e-16) -> int:
    """Smallest N with q**N / (1 - q) below ``tol``."""
    return max(1, math.ceil(math.log(tol * (1 - q)) / math.log(q)))


def poch_inf(a, q: float, N: int):
    """Truncated (a; q)_inf, vectorised over ``a``."""
    a = np.asarray(a)
    powers = q ** np.arange(N, dtype=a.real.dtype if a.dtype.kind in "fc" else float)
    return np.prod(1 - a[..., None] * powers, axis=-1)


def _ratio(nums: Sequence[Fraction], dens: Sequence[Fraction], q: Fraction, m: int, what: str) -> Fraction:
    top = Fraction(1)
    for a in nums:
        top *= poch(a, q, m)
    bot = Fraction(1)
    for a in dens:
        bot *= poch(a, q, m)
    if top == 0 or bot == 0:
        raise NonGenericParametersError(f"vanishing finite product in {what}")
    return top / bot


def ratio_plus_v(p: ParameterSet, Z: Fraction, m: int) -> Fraction:
    """d+_v(z + m) / d+_v(z) = t^{-m/2} (t Z; q)_m / (Z; q)_m."""
    return p.tau ** (-m) * _ratio([p.t * Z], [Z], p.q, m, "d+_v")


def ratio_plus_w(p: ParameterSet, Z: Fraction, m: int) -> Fraction:
    t0, t1, t2, t3 = p.ts
    s = p.sigma
    return p.tprod_root ** (-m) * _ratio(
        [t0 * Z, -t1 * Z, s * t2 * Z, -s * t3 * Z], [Z, -Z, s * Z, -s * Z], p.q, m, "d+_w"
    )


def ratio_minus_v(p: ParameterSet, Z: Fraction, m: int) -> Fraction:
    """d-_v(z + m) / d-_v(z) = t^{m/2} (q Z / t; q)_m / (q Z; q)_m."""
    q = p.q
    return p.tau**m * _ratio([q * Z / p.t], [q * Z], q, m, "d-_v")


def ratio_minus_w(p: ParameterSet, Z: Fraction, m: int) -> Fraction:
    t0, t1, t2, t3 = p.ts
    s, q = p.sigma, p.q
    return p.tprod_root**m * _ratio(
        [q * Z / t0, -q * Z / t1, s * Z / t2, -s * Z / t3],
        [q * Z, -q * Z, s * Z, -s * Z],
        q,
        m,
        "d-_w",
    )


def delta_ratio(p: ParameterSet, base: Sequence[Fraction], lam: Sequence[int], sign: str = "+") -> Fraction:
    """Delta^{sign}(y + lam) / Delta^{sign}(y) for ``base = q**y``, built from ``p``."""
    rv, rw = (ratio_plus_v, ratio_plus_w) if sign == "+" else (ratio_minus_v, ratio_minus_w)
    n = len(base)
    val = Fraction(1)
    for j in range(n):
        for k in range(j + 1, n):
            val *= rv(p, base[j] * base[k], lam[j] + lam[k])
            val *= rv(p, base[j] / base[k], lam[j] - lam[k])
    for j in range(n):
        val *= rw(p, base[j], lam[j])
    return val


def _exponent(x: Fraction, q: Fraction) -> float:
    """log_q(x), i.e. the exponent g with x = q**g."""
    return math.log(x) / math.log(q)


def delta_numeric(p: ParameterSet, y: Sequence[float], sign: str = "+", N: int = 64) -> float:
    """Delta^{+-}(y) by truncated products at a real point given as q**y_j."""
    q = float(p.q)
    s = float(p.sigma)
    t = float(p.t)
    t0, t1, t2, t3 = (float(x) for x in p.ts)
    g_half = _exponent(p.tau, p.q)
    w_half = _exponent(p.tprod_root, p.q)
    y = [float(v) for v in y]

    def dv(Z):
        if sign == "+":
            return Z ** (-g_half) * poch_inf(Z, q, N) / poch_inf(t * Z, q, N)
        return Z**g_half * poch_inf(q * Z, q, N) / poch_inf(q * Z / t, q, N)

    def dw(Z):
        if sign == "+":
            num = poch_inf(Z, q, N) * poch_inf(-Z, q, N) * poch_inf(s * Z, q, N) * poch_inf(-s * Z, q, N)
            den = (
                poch_inf(t0 * Z, q, N) * poch_inf(-t1 * Z, q, N)
                * poch_inf(s * t2 * Z, q, N) * poch_inf(-s * t3 * Z, q, N)
            )
            return Z ** (-w_half) * num / den
        num = poch_inf(q * Z, q, N) * poch_inf(-q * Z, q, N) * poch_inf(s * Z, q, N) * poch_inf(-s * Z, q, N)
        den = (
            poch_inf(q * Z / t0, q, N) * poch_inf(-q * Z / t1, q, N)
            * poch_inf(s * Z / t2, q, N) * poch_inf(-s * Z / t3, q, N)
        )
        return Z**w_half * num / den

    val = 1.0
    n = len(y)
    for j in range(n):
        for k in range(j + 1, n):
            val *= float(dv(y[j] * y[k]) * dv(y[j] / y[k]))
    for j in range(n):
        val *= float(dw(y[j]))
    return val
