from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from mvaskey.params import ConfigError, dual, is_self_dual, load_config, spectral_point, validate

from conftest import SELF_DUAL, STANDARD


def test_validate_standard():
    p = validate(dict(STANDARD, n=2))
    assert p.q == F(1, 4) and p.t == F(1, 4)
    assert p.ts == (F(1, 4), F(1, 9), F(1, 16), F(1, 25))
    assert p.tprod_root == F(1, 120)


@pytest.mark.parametrize(
    "change, message",
    [({"sigma": "2"}, "q = 4 not in (0,1)"), ({"tau": "0"}, "t must be positive")],
)
def test_validate_boundary(change, message):
    with pytest.raises(ConfigError) as exc:
        validate(dict(STANDARD, n=2, **change))
    assert any(message in e for e in exc.value.errors)


def test_validate_collects_all_errors():
    with pytest.raises(ConfigError) as exc:
        validate(dict(STANDARD, n=0, sigma="3/2", tau2="-1/3"))
    assert len(exc.value.errors) == 3


def test_direct_t_input_rejected():
    with pytest.raises(ConfigError, match="direct 't0'"):
        validate(dict(STANDARD, n=1, t0="1/4"))


def test_non_rational_rejected():
    with pytest.raises(ConfigError, match="not a rational"):
        validate(dict(STANDARD, n=1, tau="abc"))


def test_load_config(tmp_path):
    path = tmp_path / "c.json"
    path.write_text('{"n": 1, "sigma": "1/3", "tau": "1", "tau0": "1/2", "tau1": "1", "tau2": "1", "tau3": "1"}')
    p = load_config(path)
    assert p.q == F(1, 9) and p.t == 1
    path.write_text("[1, 2]")
    with pytest.raises(ConfigError):
        load_config(path)


def test_self_dual_fixed_point():
    p = validate(dict(SELF_DUAL, n=2))
    assert is_self_dual(p)
    assert dual(p) == p


def test_equal_taus_dual():
    tau = F(2, 5)
    p = validate(dict(n=1, sigma="1/2", tau="1/2", tau0=tau, tau1=tau, tau2=tau, tau3=tau))
    d = dual(p)
    assert d.ts == (tau**4, 1, 1, 1)


def test_dual_warning_for_large_dual_parameter():
    p = validate(dict(STANDARD, n=1))
    d = dual(p)
    # t^1 = tau0 tau1 / (tau2 tau3) = (1/6) / (1/20) = 10/3
    assert d.ts[1] == F(10, 3)
    assert any("dual t1" in w for w in d.warnings)


taus = st.fractions(min_value=F(1, 50), max_value=1, max_denominator=50).filter(lambda x: x > 0)


@given(taus, taus, taus, taus, taus, st.integers(1, 3))
def test_dual_involution(tau, a, b, c, d, n):
    p = validate(dict(n=n, sigma="1/3", tau=tau, tau0=a, tau1=b, tau2=c, tau3=d))
    assert dual(dual(p)) == p
    assert is_self_dual(p) == (dual(p) == p)


def test_spectral_point_examples(p2):
    t, T, q = p2.t, p2.tprod_root, p2.q
    assert spectral_point(p2) == (t * T, T)
    assert spectral_point(p2, side="dual") == (t * p2.ts[0], p2.ts[0])
    assert spectral_point(p2, (2, 0)) == (t * T * q**2, T)


def test_fingerprint_stable(p2):
    assert p2.fingerprint() == validate(dict(STANDARD, n=2)).fingerprint()
    assert p2.fingerprint() != dual(p2).fingerprint()
