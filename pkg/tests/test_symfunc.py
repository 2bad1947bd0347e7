import math
from collections import Counter
from fractions import Fraction as F
from itertools import permutations, product

import pytest
from hypothesis import given, strategies as st

from mvaskey.symfunc import (
    dominance_leq,
    eval_monomial,
    eval_sympoly,
    partitions_below,
    partitions_up_to,
    sympoly_from_json,
    sympoly_to_json,
    weyl_image,
    weyl_orbit,
)


def test_dominance_examples():
    assert dominance_leq((1, 1), (2, 0))
    assert not dominance_leq((2, 0), (1, 1))
    assert not dominance_leq((2, 2), (3, 0)) and not dominance_leq((3, 0), (2, 2))
    with pytest.raises(ValueError):
        dominance_leq((1,), (1, 0))


def small_partitions():
    out = []
    for n in (1, 2, 3):
        out += [lam for lam in product(range(4), repeat=n) if list(lam) == sorted(lam, reverse=True)]
    return out


def test_dominance_is_partial_order():
    parts = small_partitions()
    for a in parts:
        assert dominance_leq(a, a)
        for b in parts:
            if len(a) != len(b):
                continue
            if dominance_leq(a, b) and dominance_leq(b, a):
                assert a == b
            for c in parts:
                if len(c) == len(a) and dominance_leq(a, b) and dominance_leq(b, c):
                    assert dominance_leq(a, c)


def brute_below(lam):
    n, w = len(lam), sum(lam)
    return {
        mu for mu in product(range(w + 1), repeat=n)
        if list(mu) == sorted(mu, reverse=True) and dominance_leq(mu, lam)
    }


@pytest.mark.parametrize("lam", [(1, 0), (1, 1), (0, 0), (2, 1), (3, 1, 0), (2, 2, 2)])
def test_partitions_below(lam):
    got = partitions_below(lam)
    assert set(got) == brute_below(lam)
    assert got[-1] == lam
    # listing order is a linear extension of the partial order
    for i, a in enumerate(got):
        for b in got[:i]:
            assert not (dominance_leq(a, b) and a != b)


def test_partitions_below_examples():
    assert partitions_below((1, 0)) == [(0, 0), (1, 0)]
    assert partitions_below((1, 1)) == [(0, 0), (1, 0), (1, 1)]
    assert partitions_below((0, 0)) == [(0, 0)]


def test_partitions_up_to_counts():
    assert len(partitions_up_to(2, 4)) == 9
    assert len(partitions_up_to(3, 2)) == 4


def test_orbit_examples():
    assert weyl_orbit((1, 1)) == {(1, 1), (1, -1), (-1, 1), (-1, -1)}
    assert weyl_orbit((1, 0)) == {(1, 0), (-1, 0), (0, 1), (0, -1)}
    assert len(weyl_orbit((1, 1, 0))) == 12


def orbit_size_formula(lam):
    n = len(lam)
    nonzero = sum(1 for x in lam if x)
    denom = math.prod(math.factorial(m) for m in Counter(lam).values())
    return math.factorial(n) * 2**nonzero // denom


@pytest.mark.parametrize("lam", [lam for n in range(1, 5) for lam in partitions_up_to(n, 4)])
def test_orbit_size(lam):
    brute = {
        tuple(s * x for s, x in zip(signs, perm))
        for perm in permutations(lam)
        for signs in product((1, -1), repeat=len(lam))
    }
    assert weyl_orbit(lam) == brute
    assert len(brute) == orbit_size_formula(lam)


def test_eval_monomial_examples():
    assert eval_monomial((0, 0), (F(2, 7), F(3))) == 1
    assert eval_monomial((1,), (F(1, 4),)) == F(17, 4)
    assert eval_monomial((1, 0), (F(1, 2), F(1, 3))) == F(35, 6)
    with pytest.raises(ZeroDivisionError):
        eval_monomial((1,), (F(0),))


def test_eval_sympoly_examples():
    assert eval_sympoly({(0,): F(1)}, (F(5, 3),)) == 1
    assert eval_sympoly({(1,): F(1), (0,): F(-1)}, (F(1),)) == 1
    f = {(2, 1): F(3, 7), (1, 0): F(-2), (0, 0): F(1, 5)}
    z = (F(2, 3), F(5, 4))
    direct = sum(
        c * sum(z[0] ** -a * z[1] ** -b for a, b in weyl_orbit(mu))
        for mu, c in reversed(list(f.items()))
    )
    assert eval_sympoly(f, z) == direct


def test_sympoly_json_roundtrip():
    f = {(2, 1): F(3, 7), (0, 0): F(-1, 5)}
    recs = sympoly_to_json(f)
    assert recs[0] == {"partition": [0, 0], "coefficient": "-1/5"}
    assert sympoly_from_json(recs) == f


coords = st.fractions(min_value=F(1, 20), max_value=20, max_denominator=20).filter(lambda x: x != 0)


@given(
    st.sampled_from(list(partitions_up_to(3, 3))),
    st.tuples(coords, coords, coords),
    st.permutations([0, 1, 2]),
    st.tuples(st.booleans(), st.booleans(), st.booleans()),
)
def test_monomial_weyl_invariant(lam, z, perm, flips):
    assert eval_monomial(lam, z) == eval_monomial(lam, weyl_image(z, perm, flips))
