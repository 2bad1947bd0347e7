"""Commuting difference operators D_1..D_n and their eigenvalues.

Coefficients are evaluated in half-power-free form.  With Z = q**z,

    v(z) = t**(-1/2) (1 - t Z) / (1 - Z)

and since v-factors always come in pairs, the prefactor only ever appears
as t**(-1).  The four-factor w carries the prefactor 1/T with
T = (t0 t1 t2 t3)**(1/2).  The shift x_j -> x_j + e acts as z_j -> z_j q**e.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, combinations_with_replacement, product
from typing import Callable, Sequence

from . import linalg
from .errors import InternalConsistencyError, SingularCoefficientError
from .params import ParameterSet, fmt_fraction, spectral_point
from .symfunc import Partition, dominance_leq, eval_monomial

__all__ = [
    "ShiftTerm",
    "OperatorMatrix",
    "coef_v_pair",
    "coef_w",
    "coef_V",
    "coef_U",
    "shift_terms",
    "operator_terms",
    "apply_operator",
    "eigenvalue_E",
    "sample_point",
    "operator_matrix",
]


@dataclass(frozen=True)
class ShiftTerm:
    J: tuple[int, ...]
    eps: tuple[int, ...]

    def shift(self, n: int) -> tuple[int, ...]:
        e = [0] * n
        for j, s in zip(self.J, self.eps):
            e[j] = s
        return tuple(e)


def coef_v_pair(p: ParameterSet, Z1: Fraction, Z2: Fraction, where=()) -> Fraction:
    """v(z1) v(z2) given Z1 = q**z1, Z2 = q**z2."""
    t = p.t
    if t == 1:
        return Fraction(1)
    for Z in (Z1, Z2):
        if Z == 1:
            raise SingularCoefficientError("v", where, Z)
    return (1 - t * Z1) * (1 - t * Z2) / (t * (1 - Z1) * (1 - Z2))


def coef_w(p: ParameterSet, Z: Fraction, where=()) -> Fraction:
    t0, t1, t2, t3 = p.ts
    s = p.sigma
    factors = (
        ("sh(g0)", t0, 1 - t0 * Z, 1 - Z),
        ("ch(g1)", t1, 1 + t1 * Z, 1 + Z),
        ("sh(g2+1/2)", t2, 1 - t2 * s * Z, 1 - s * Z),
        ("ch(g3+1/2)", t3, 1 + t3 * s * Z, 1 + s * Z),
    )
    val = 1 / p.tprod_root
    for name, tr, num, den in factors:
        if tr == 1:
            continue
        if den == 0:
            raise SingularCoefficientError(f"w[{name}]", where, Z)
        val *= num / den
    return val


def _signed(z: Sequence[Fraction], j: int, e: int) -> Fraction:
    return z[j] if e > 0 else 1 / z[j]


def coef_V(p: ParameterSet, J: Sequence[int], eps: Sequence[int], K: Sequence[int], z: Sequence[Fraction]) -> Fraction:
    """V_{eps J, K}(x) at the point z_j = q**x_j (indices 0-based)."""
    q = p.q
    val = Fraction(1)
    a = {j: _signed(z, j, e) for j, e in zip(J, eps)}
    for j in J:
        val *= coef_w(p, a[j], where=("V", j))
    for j, jj in combinations(J, 2):
        s = a[j] * a[jj]
        val *= coef_v_pair(p, s, s * q, where=("V", j, jj))
    for j in J:
        for k in K:
            val *= coef_v_pair(p, a[j] * z[k], a[j] / z[k], where=("V", j, k))
    return val


def coef_U(p: ParameterSet, K: Sequence[int], count: int, z: Sequence[Fraction]) -> Fraction:
    """U_{K, count}(x); identically 1 when ``count == 0``."""
    if count == 0:
        return Fraction(1)
    q = p.q
    total = Fraction(0)
    for L in combinations(K, count):
        rest = [k for k in K if k not in L]
        for eps in product((1, -1), repeat=count):
            a = {l: _signed(z, l, e) for l, e in zip(L, eps)}
            term = Fraction(1)
            for l in L:
                term *= coef_w(p, a[l], where=("U", l))
            for l, ll in combinations(L, 2):
                s = a[l] * a[ll]
                term *= coef_v_pair(p, s, 1 / (s * q), where=("U", l, ll))
            for l in L:
                for k in rest:
                    term *= coef_v_pair(p, a[l] * z[k], a[l] / z[k], where=("U", l, k))
            total += term
    return -total if count % 2 else total


def shift_terms(n: int, r: int) -> list[ShiftTerm]:
    out = []
    for size in range(r + 1):
        for J in combinations(range(n), size):
            for eps in product((1, -1), repeat=size):
                out.append(ShiftTerm(J, eps))
    return out


def operator_terms(p: ParameterSet, r: int, z: Sequence[Fraction]) -> list[tuple[Fraction, tuple[Fraction, ...]]]:
    """``(U V coefficient, shifted point)`` pairs making up ``(D_r f)(z)``."""
    n = p.n
    if not 1 <= r <= n:
        raise ValueError(f"operator index r = {r} outside 1..{n}")
    q = p.q
    out = []
    for term in shift_terms(n, r):
        Jc = [k for k in range(n) if k not in term.J]
        coef = coef_U(p, Jc, r - len(term.J), z) * coef_V(p, term.J, term.eps, Jc, z)
        if coef == 0:
            continue
        shifted = list(z)
        for j, e in zip(term.J, term.eps):
            shifted[j] = shifted[j] * q if e > 0 else shifted[j] / q
        out.append((coef, tuple(shifted)))
    return out


def apply_operator(p: ParameterSet, r: int, f: Callable | dict, z: Sequence[Fraction]) -> Fraction:
    """``(D_r f)(z)``; ``f`` is a partition->coefficient map or a callable on points."""
    if isinstance(f, dict):
        from .symfunc import eval_sympoly

        fn = lambda pt: eval_sympoly(f, pt)  # noqa: E731
    else:
        fn = f
    return sum((c * fn(pt) for c, pt in operator_terms(p, r, z)), Fraction(0))


def _ch(Y: Fraction) -> Fraction:
    return (Y + 1 / Y) / 2


def eigenvalue_E(p: ParameterSet, r: int, y: Sequence[Fraction]) -> Fraction:
    """E_r(y) given y as values q**y_j; rho is taken from ``p``.

    The inner sum runs over weakly increasing l_1 <= ... <= l_k drawn from
    r..n, i.e. a complete homogeneous polynomial in ch(alpha rho_l), l >= r.
    """
    n = p.n
    rho = spectral_point(p)
    cy = [_ch(Y) for Y in y]
    tail = [_ch(R) for R in rho[r - 1:]]
    total = Fraction(0)
    for size in range(min(r, n) + 1):
        h = Fraction(0)
        for ls in combinations_with_replacement(tail, r - size):
            term = Fraction(1)
            for c in ls:
                term *= c
            h += term
        for J in combinations(range(n), size):
            term = Fraction((-1) ** (r - size))
            for j in J:
                term *= cy[j]
            total += term * h
    return 2**r * total


def sample_point(n: int, rng: random.Random, pool: int = 9) -> tuple[Fraction, ...]:
    """Random coordinates a/b with 1 <= a, b <= pool, a != b, pairwise distinct."""
    while True:
        pts = []
        for _ in range(n):
            a, b = rng.randint(1, pool), rng.randint(1, pool)
            while a == b:
                a, b = rng.randint(1, pool), rng.randint(1, pool)
            pts.append(Fraction(a, b))
        if len(set(pts) | {1 / x for x in pts}) == 2 * n:
            return tuple(pts)


def generic_point(p: ParameterSet, r_max: int, rng: random.Random, pool: int = 9, tries: int = 200):
    """A point at which every D_r (r <= r_max) coefficient is finite."""
    for _ in range(tries):
        z = sample_point(p.n, rng, pool)
        try:
            for r in range(1, r_max + 1):
                operator_terms(p, r, z)
        except SingularCoefficientError:
            continue
        return z
    raise RuntimeError("could not find a generic sample point")


@dataclass(frozen=True)
class OperatorMatrix:
    """Column mu holds the m-basis expansion of D_r m_mu."""

    r: int
    basis: tuple[Partition, ...]
    entries: tuple[tuple[Fraction, ...], ...]

    def column(self, mu: Partition) -> dict[Partition, Fraction]:
        j = self.basis.index(mu)
        return {nu: self.entries[i][j] for i, nu in enumerate(self.basis) if self.entries[i][j]}

    def to_json(self) -> dict:
        return {
            "r": self.r,
            "basis": [list(b) for b in self.basis],
            "entries": [[fmt_fraction(x) for x in row] for row in self.entries],
        }


def _rows(p: ParameterSet, r: int, basis: Sequence[Partition], z):
    mrow = [eval_monomial(mu, z) for mu in basis]
    drow = [Fraction(0)] * len(basis)
    for c, pt in operator_terms(p, r, z):
        for i, mu in enumerate(basis):
            drow[i] += c * eval_monomial(mu, pt)
    return mrow, drow


def operator_matrix(
    p: ParameterSet,
    r: int,
    basis: Sequence[Partition],
    rng: random.Random | None = None,
    n_check: int = 2,
    max_retries: int = 5,
) -> OperatorMatrix:
    """Interpolate D_r on span{m_mu : mu in basis} from exact point values.

    ``basis`` must be closed downward under the partial order.  The full
    basis is used for every column, so triangularity and the diagonal
    eigenvalues come out as checks; ``n_check`` fresh points confirm the
    interpolant (i.e. pole cancellation).
    """
    rng = rng or random.Random(0)
    basis = tuple(basis)
    S = len(basis)
    for _ in range(max_retries):
        A, B = [], []
        while len(A) < S + n_check:
            z = generic_point(p, r, rng)
            mrow, drow = _rows(p, r, basis, z)
            A.append(mrow)
            B.append(drow)
        try:
            X = linalg.solve(A[:S], B[:S])
        except linalg.SingularMatrixError:
            continue
        break
    else:
        raise RuntimeError("interpolation system stayed singular; parameters may be degenerate")

    for mrow, drow in zip(A[S:], B[S:]):
        pred = [sum((mrow[i] * X[i][j] for i in range(S)), Fraction(0)) for j in range(S)]
        if pred != drow:
            raise InternalConsistencyError(f"D_{r} m_mu is not in the span of the basis")

    for j, mu in enumerate(basis):
        for i, nu in enumerate(basis):
            if X[i][j] and not dominance_leq(nu, mu):
                raise InternalConsistencyError(f"D_{r} m_{mu} has a term m_{nu} outside the lower set")
        expected = eigenvalue_E(p, r, spectral_point(p, mu))
        if X[j][j] != expected:
            raise InternalConsistencyError(
                f"diagonal of D_{r} at {mu} is {X[j][j]}, eigenvalue formula gives {expected}"
            )
    return OperatorMatrix(r, basis, tuple(tuple(row) for row in X))

