"""Partitions, the partial-sum order and BC_n monomial symmetric functions.

A partition is a plain tuple of ``n`` weakly decreasing nonnegative ints.
A symmetric polynomial is a ``dict`` mapping partitions to coefficients,
standing for ``sum(coeff * m_mu)``.  Points are tuples holding
``z_j = q**x_j``; an orbit element ``lam'`` contributes ``prod z_j**(-lam'_j)``.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import permutations, product
from typing import Iterable, Mapping, Sequence

from .params import fmt_fraction, parse_fraction

Partition = tuple[int, ...]
SymmetricPolynomial = dict

__all__ = [
    "Partition",
    "SymmetricPolynomial",
    "is_partition",
    "pad",
    "dominance_leq",
    "partitions_up_to",
    "partitions_below",
    "weyl_orbit",
    "eval_monomial",
    "eval_sympoly",
    "weyl_image",
    "sympoly_to_json",
    "sympoly_from_json",
]


def is_partition(lam: Sequence[int]) -> bool:
    return all(isinstance(x, int) for x in lam) and all(
        lam[i] >= lam[i + 1] for i in range(len(lam) - 1)
    ) and (not lam or lam[-1] >= 0)


def pad(lam: Sequence[int], n: int) -> Partition:
    lam = tuple(lam)
    if len(lam) > n:
        raise ValueError(f"partition {lam} has more than {n} parts")
    out = lam + (0,) * (n - len(lam))
    if not is_partition(out):
        raise ValueError(f"{lam} is not a partition")
    return out


def dominance_leq(mu: Sequence[int], lam: Sequence[int]) -> bool:
    """Partial sums of ``mu`` never exceed those of ``lam``.

    Total weights need not agree; ``(1, 0) <= (1, 1)`` holds.
    """
    if len(mu) != len(lam):
        raise ValueError(f"length mismatch: {len(mu)} vs {len(lam)}")
    a = b = 0
    for x, y in zip(mu, lam):
        a += x
        b += y
        if a > b:
            return False
    return True


def _order_key(lam: Partition):
    return (sum(lam), lam)


@lru_cache(maxsize=None)
def partitions_up_to(n: int, max_weight: int) -> tuple[Partition, ...]:
    """All partitions with ``n`` parts and weight <= ``max_weight``, graded-lex sorted."""
    out: list[Partition] = []

    def rec(prefix: tuple[int, ...], remaining: int, cap: int):
        if len(prefix) == n:
            out.append(prefix)
            return
        for x in range(min(cap, remaining), -1, -1):
            rec(prefix + (x,), remaining - x, x)

    rec((), max_weight, max_weight)
    return tuple(sorted(out, key=_order_key))


def partitions_below(lam: Sequence[int]) -> list[Partition]:
    """Every ``mu <= lam``; graded-lex order refines the partial order, ``lam`` comes last."""
    lam = tuple(lam)
    return [mu for mu in partitions_up_to(len(lam), sum(lam)) if dominance_leq(mu, lam)]


@lru_cache(maxsize=None)
def weyl_orbit(lam: Partition) -> frozenset[tuple[int, ...]]:
    """Distinct images of ``lam`` under permutations and sign flips."""
    out = set()
    for perm in set(permutations(lam)):
        nz = [i for i, x in enumerate(perm) if x]
        for signs in product((1, -1), repeat=len(nz)):
            v = list(perm)
            for i, s in zip(nz, signs):
                v[i] *= s
            out.add(tuple(v))
    return frozenset(out)


def _check_point(point: Sequence) -> None:
    for zj in point:
        if zj == 0:
            raise ZeroDivisionError("evaluation point has a zero coordinate")


def eval_monomial(lam: Sequence[int], point: Sequence):
    n = len(point)
    lam = pad(lam, n)
    _check_point(point)
    # ints would silently turn into floats under negative powers
    point = [Fraction(zj) if isinstance(zj, int) else zj for zj in point]
    total = 0
    for vec in sorted(weyl_orbit(lam)):
        term = 1
        for zj, e in zip(point, vec):
            if e:
                term = term * zj ** (-e)
        total = total + term
    return total


def eval_sympoly(f: Mapping[Partition, object], point: Sequence):
    total = 0
    for mu in sorted(f, key=_order_key):
        total = total + f[mu] * eval_monomial(mu, point)
    return total


def weyl_image(point: Sequence, perm: Sequence[int], flips: Sequence[bool]) -> tuple:
    """Permute coordinates then invert the flipped ones."""
    z = [point[i] for i in perm]
    return tuple(1 / zj if f else zj for zj, f in zip(z, flips))


def sympoly_to_json(f: Mapping[Partition, Fraction]) -> list[dict]:
    return [
        {"partition": list(mu), "coefficient": fmt_fraction(f[mu])}
        for mu in sorted(f, key=_order_key)
    ]


def sympoly_from_json(records: Iterable[Mapping]) -> dict[Partition, Fraction]:
    out = {}
    for rec in records:
        c = parse_fraction(rec["coefficient"])
        if c:
            out[tuple(rec["partition"])] = c
    return out
