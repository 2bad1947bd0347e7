"""Trapezoidal quadrature for the weight on the torus.

The substitution theta = alpha x maps the integration box to [-pi, pi]^n
and the normalising prefactor to (1/2pi)^n, so the inner product is a plain
mean over the periodic grid.  On the torus q**x_j = exp(-i theta_j) and
m_lam is real: a sum of cos(lam' . theta) over the orbit.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Mapping, Sequence

import numpy as np

from .params import ParameterSet, dual, spectral_point
from .polys import Family, norm_ratio_closed
from .qprod import delta_numeric, poch_inf, truncation_for
from .report import VerificationReport
from .symfunc import Partition, pad, partitions_below, weyl_orbit

__all__ = [
    "QuadratureGrid",
    "TorusQuadrature",
    "weight_at",
    "inner_product_num",
    "norm_closed_numeric",
    "verify_norm_numeric",
    "verify_orthogonality",
    "gram_schmidt_oracle",
    "IllConditionedError",
]

_DTYPES = {"double": (np.float64, np.complex128), "long": (np.longdouble, np.clongdouble)}


class IllConditionedError(ArithmeticError):
    pass


@dataclass(frozen=True)
class QuadratureGrid:
    n: int
    M: int = 128
    N: int | None = None
    precision: str = "double"

    def __post_init__(self):
        if self.M < 8:
            raise ValueError(f"grid needs M >= 8, got {self.M}")
        if self.precision not in _DTYPES:
            raise ValueError(f"precision must be one of {sorted(_DTYPES)}")

    @property
    def dtypes(self):
        return _DTYPES[self.precision]

    def truncation(self, q: float) -> int:
        return self.N if self.N is not None else truncation_for(q)

    def nodes(self) -> np.ndarray:
        R = self.dtypes[0]
        pi = np.arccos(R(-1))
        return 2 * pi * np.arange(self.M, dtype=R) / self.M - pi

    def mesh(self) -> np.ndarray:
        """All grid points, shape (M**n, n)."""
        axes = np.meshgrid(*([self.nodes()] * self.n), indexing="ij")
        return np.stack([a.ravel() for a in axes], axis=-1)


def _real(x: Fraction, R):
    return R(x.numerator) / R(x.denominator)


def _delta_plus(p: ParameterSet, theta: np.ndarray, N: int, R, C) -> np.ndarray:
    """Delta^+(i theta / alpha) for theta of shape (..., n)."""
    q = _real(p.q, R)
    s = _real(p.sigma, R)
    t = _real(p.t, R)
    ts = [_real(x, R) for x in p.ts]
    g_half = np.log(_real(p.tau, R)) / np.log(q)
    w_half = np.log(_real(p.tprod_root, R)) / np.log(q)

    def dv(phi):
        if p.t == 1:
            return np.ones(phi.shape, dtype=C)
        u = np.exp(-1j * phi.astype(C))
        return np.exp(1j * g_half * phi) * poch_inf(u, q, N) / poch_inf(t * u, q, N)

    def dw(phi):
        u = np.exp(-1j * phi.astype(C))
        val = np.exp(1j * w_half * phi).astype(C)
        pairs = ((1, ts[0]), (-1, ts[1]), (s, ts[2]), (-s, ts[3]))
        for (a, tr), raw in zip(pairs, p.ts):
            if raw == 1:
                continue
            val = val * poch_inf(a * u, q, N) / poch_inf(a * tr * u, q, N)
        return val

    n = theta.shape[-1]
    out = np.ones(theta.shape[:-1], dtype=C)
    for j, k in combinations(range(n), 2):
        out = out * dv(theta[..., j] + theta[..., k]) * dv(theta[..., j] - theta[..., k])
    for j in range(n):
        out = out * dw(theta[..., j])
    return out


def weight_at(p: ParameterSet, theta, grid: QuadratureGrid, with_residue: bool = False):
    """Delta = Delta^+(x) Delta^+(-x) at x = i theta / alpha.

    Both factors are evaluated, so the imaginary residue measures how well
    the conjugate-pair structure holds numerically.
    """
    R, C = grid.dtypes
    theta = np.asarray(theta, dtype=R)
    N = grid.truncation(float(p.q))
    val = _delta_plus(p, theta, N, R, C) * _delta_plus(p, -theta, N, R, C)
    if with_residue:
        return val.real, np.abs(val.imag)
    return val.real


class TorusQuadrature:
    """Weight and monomial tables on one grid, reused across inner products."""

    def __init__(self, params: ParameterSet, grid: QuadratureGrid):
        if grid.n != params.n:
            raise ValueError(f"grid dimension {grid.n} does not match n = {params.n}")
        self.params = params
        self.grid = grid
        self.theta = grid.mesh()
        self.weight, self.residue = weight_at(params, self.theta, grid, with_residue=True)
        neg = self.weight < -1e-12
        if np.any(neg):
            raise ArithmeticError(f"weight is negative at {int(neg.sum())} nodes (min {self.weight.min()})")
        self._m: dict[Partition, np.ndarray] = {}

    def monomial(self, lam: Sequence[int]) -> np.ndarray:
        lam = pad(lam, self.params.n)
        vals = self._m.get(lam)
        if vals is None:
            orbit = np.array(sorted(weyl_orbit(lam)), dtype=self.grid.dtypes[0])
            vals = np.cos(self.theta @ orbit.T).sum(axis=-1)
            self._m[lam] = vals
        return vals

    def values(self, f) -> np.ndarray:
        if not isinstance(f, Mapping):
            f = {pad((), self.params.n): f}
        R = self.grid.dtypes[0]
        out = np.zeros(len(self.theta), dtype=R)
        for mu, c in f.items():
            coef = _real(Fraction(c), R) if isinstance(c, (int, Fraction)) else R(c)
            out = out + coef * self.monomial(mu)
        return out

    def inner(self, f, g) -> float:
        return float(np.mean(self.values(f) * self.values(g) * self.weight))

    def gram(self, basis: Sequence[Partition]) -> np.ndarray:
        tab = np.stack([self.monomial(mu) for mu in basis])
        return (tab * self.weight) @ tab.T / len(self.weight)


def inner_product_num(params: ParameterSet, f, g, grid: QuadratureGrid) -> float:
    return TorusQuadrature(params, grid).inner(f, g)


def norm_closed_numeric(params: ParameterSet, lam: Sequence[int], N: int = 64) -> float:
    """2^n n! Delta^+(rho+lam) Delta^-(rho+lam) with dual parameters, by truncated products."""
    lam = pad(lam, params.n)
    y = [float(v) for v in spectral_point(params, lam)]
    pd = dual(params)
    n = params.n
    return 2**n * math.factorial(n) * delta_numeric(pd, y, "+", N) * delta_numeric(pd, y, "-", N)


def verify_norm_numeric(family: Family, lam: Sequence[int], quad: TorusQuadrature, rtol: float = 1e-8) -> VerificationReport:
    """Quadrature norm against the closed formula, as an absolute value and as a ratio to <1,1>."""
    p = family.params
    lam = pad(lam, p.n)
    rec = family.polynomial(lam)
    N = quad.grid.truncation(float(p.q))
    num = quad.inner(rec.coeffs, rec.coeffs)
    one = quad.inner(1, 1)
    closed = norm_closed_numeric(p, lam, N)
    exact_ratio = norm_ratio_closed(p, lam)
    ratio_err = abs(num / one - float(exact_ratio)) / float(exact_ratio)
    abs_err = abs(num - closed) / abs(closed)
    return VerificationReport(
        "norm_numeric", p.to_json(), {"lambda": list(lam), "M": quad.grid.M, "N": N},
        passed=ratio_err <= rtol and abs_err <= rtol, exact=False,
        witnesses=[{
            "quadrature_norm": num, "closed_norm": closed, "quadrature_one": one,
            "exact_ratio": exact_ratio, "ratio_rel_error": ratio_err, "abs_rel_error": abs_err,
        }],
        discrepancy=max(ratio_err, abs_err), notes=[f"rtol = {rtol:g}"],
    )


def verify_orthogonality(family: Family, lam, mu, quad: TorusQuadrature, tol: float = 1e-8) -> VerificationReport:
    p = family.params
    a, b = family.polynomial(lam), family.polynomial(mu)
    ab = quad.inner(a.coeffs, b.coeffs)
    scale = math.sqrt(quad.inner(a.coeffs, a.coeffs) * quad.inner(b.coeffs, b.coeffs))
    rel = abs(ab) / scale
    return VerificationReport(
        "orthogonality", p.to_json(), {"lambda": list(a.lam), "mu": list(b.lam), "M": quad.grid.M},
        passed=rel <= tol, exact=False,
        witnesses=[{"inner": ab, "norm_product": scale, "relative": rel}], discrepancy=rel,
    )


def gram_schmidt_oracle(params: ParameterSet, lam: Sequence[int], quad: TorusQuadrature, max_cond: float = 1e12) -> dict:
    """Monic m_lam minus its projection onto span{m_mu : mu < lam}, numerically."""
    lam = pad(lam, params.n)
    lower = partitions_below(lam)[:-1]
    if not lower:
        return {lam: 1.0}
    G = quad.gram(lower + [lam])
    A = G[:-1, :-1]
    cond = float(np.linalg.cond(A.astype(np.float64)))
    if cond > max_cond:
        raise IllConditionedError(f"Gram matrix condition number {cond:.3g} exceeds {max_cond:g}")
    # numpy's solvers are double only
    c = np.linalg.solve(A.astype(np.float64), -G[:-1, -1].astype(np.float64))
    out = {mu: float(x) for mu, x in zip(lower, c)}
    out[lam] = 1.0
    return out
