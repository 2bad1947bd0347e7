import math
import random

import numpy as np
import pytest

from mvaskey.polys import Family
from mvaskey.quadrature import (
    IllConditionedError,
    QuadratureGrid,
    TorusQuadrature,
    gram_schmidt_oracle,
    inner_product_num,
    norm_closed_numeric,
    verify_norm_numeric,
    verify_orthogonality,
    weight_at,
)

from oracles import askey_wilson_weight


@pytest.fixture(scope="module")
def quad1(p1):
    return TorusQuadrature(p1, QuadratureGrid(1, 256, 64))


@pytest.fixture(scope="module")
def quad2(p2):
    return TorusQuadrature(p2, QuadratureGrid(2, 128))


def test_grid_validation():
    with pytest.raises(ValueError):
        QuadratureGrid(1, 4)
    with pytest.raises(ValueError):
        QuadratureGrid(1, 16, precision="quad")
    g = QuadratureGrid(2, 8)
    assert g.mesh().shape == (64, 2)
    assert g.nodes()[0] == pytest.approx(-math.pi)


def test_weight_real_nonnegative(quad2):
    assert quad2.residue.max() < 1e-12
    assert quad2.weight.min() >= -1e-12


def test_weight_n1_matches_askey_wilson_form(p1):
    s = float(p1.sigma)
    t0, t1, t2, t3 = (float(x) for x in p1.ts)
    coeffs = [t0, -t1, s * t2, -s * t3]
    grid = QuadratureGrid(1, 64, 64)
    rng = random.Random(7)
    for _ in range(5):
        th = rng.uniform(-math.pi, math.pi)
        ours = float(weight_at(p1, [th], grid))
        ref = askey_wilson_weight(float(p1.q), coeffs, th)
        assert abs(ref.imag) < 1e-12
        assert abs(ours - ref.real) <= 1e-10 * abs(ref.real)


def test_weight_on_diagonal_finite(p2):
    val = weight_at(p2, [0.7, 0.7], QuadratureGrid(2, 16))
    assert np.isfinite(val) and abs(val) < 1e-12


def test_long_precision_agrees(p1):
    a = weight_at(p1, [0.3], QuadratureGrid(1, 16, precision="long"))
    b = weight_at(p1, [0.3], QuadratureGrid(1, 16))
    assert abs(float(a) - float(b)) <= 1e-13 * abs(float(b))


@pytest.mark.parametrize("n, M", [(1, 128), (2, 128)])
def test_grid_convergence(n, M):
    from conftest import params_for

    p = params_for(n)
    a = inner_product_num(p, 1, 1, QuadratureGrid(n, M))
    b = inner_product_num(p, 1, 1, QuadratureGrid(n, 2 * M))
    assert abs(a - b) < 1e-10


def test_truncation_stability(p2):
    theta = np.array([[0.1, 1.3], [-2.0, 0.4], [3.0, -1.1]])
    N = QuadratureGrid(2, 16).truncation(float(p2.q))
    a = weight_at(p2, theta, QuadratureGrid(2, 16, N))
    b = weight_at(p2, theta, QuadratureGrid(2, 16, N + 16))
    assert np.all(np.abs(a - b) <= 1e-12 * np.abs(b))


def test_constant_term_matches_closed(p1, p2, quad1, quad2):
    assert abs(quad1.inner(1, 1) / norm_closed_numeric(p1, ()) - 1) < 1e-12
    assert abs(quad2.inner(1, 1) / norm_closed_numeric(p2, ()) - 1) < 1e-12


def test_norm_reports(p1, quad1):
    fam = Family(p1, 4)
    for lam in fam.basis:
        assert verify_norm_numeric(fam, lam, quad1, 1e-8).passed


def test_operator_symmetric(p2, quad2):
    fam = Family(p2, 3)
    M = fam.matrix(1)
    for f, g in [((1, 0), (2, 1)), ((2, 0), (1, 1)), ((3, 0), (0, 0))]:
        lhs = quad2.inner(M.column(f), {g: 1})
        rhs = quad2.inner({f: 1}, M.column(g))
        # relative to the norms, since both sides vanish for g = 1
        scale = math.sqrt(quad2.inner(M.column(f), M.column(f)) * quad2.inner({g: 1}, {g: 1}))
        assert abs(lhs - rhs) <= 1e-8 * max(abs(lhs), abs(rhs), scale)


def test_orthogonality_and_oracle(p2, quad2):
    fam = Family(p2, 2)
    assert verify_orthogonality(fam, (1, 1), (2, 0), quad2).passed
    gs = gram_schmidt_oracle(p2, (1, 1), quad2)
    exact = fam.polynomial((1, 1)).coeffs
    assert max(abs(gs[mu] - float(exact.get(mu, 0))) for mu in gs) < 1e-7
    assert gram_schmidt_oracle(p2, (0, 0), quad2) == {(0, 0): 1.0}


def test_ill_conditioned(p2, quad2):
    with pytest.raises(IllConditionedError):
        gram_schmidt_oracle(p2, (2, 0), quad2, max_cond=1.0)


def test_dimension_mismatch(p1):
    with pytest.raises(ValueError):
        TorusQuadrature(p1, QuadratureGrid(2, 8))
