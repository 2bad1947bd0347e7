from fractions import Fraction as F

import pytest

from mvaskey.errors import NonGenericParametersError
from mvaskey.params import dual, spectral_point, validate
from mvaskey.qprod import delta_numeric, delta_ratio, poch, ratio_plus_v, truncation_for

from conftest import STANDARD

GENERIC = dict(STANDARD, tau="1/3")


def test_poch():
    assert poch(F(1, 2), F(1, 4), 0) == 1
    assert poch(F(1, 2), F(1, 4), 2) == F(1, 2) * F(7, 8)


def test_truncation_rule():
    N = truncation_for(0.25)
    assert 0.25**N <= 1e-16 * 0.75 < 0.25 ** (N - 1)


def test_vanishing_product_is_non_generic(p1):
    with pytest.raises(NonGenericParametersError):
        ratio_plus_v(p1, F(1), 1)


@pytest.mark.parametrize("raw", [STANDARD, GENERIC])
@pytest.mark.parametrize("n, lam", [(1, (1,)), (1, (3,)), (2, (1, 1)), (2, (2, 1))])
@pytest.mark.parametrize("sign", ["+", "-"])
def test_telescoped_ratio_against_products(raw, n, lam, sign):
    p = validate(dict(raw, n=n))
    pd = dual(p)
    base = spectral_point(p)
    exact = delta_ratio(pd, base, lam, sign)
    top = delta_numeric(pd, spectral_point(p, lam), sign, 80)
    bot = delta_numeric(pd, base, sign, 80)
    assert abs(float(exact) - top / bot) <= 1e-10 * abs(top / bot)


def test_zero_shift_is_one(p2):
    assert delta_ratio(dual(p2), spectral_point(p2), (0, 0)) == 1
