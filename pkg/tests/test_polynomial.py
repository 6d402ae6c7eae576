from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from sitorus.polynomial import FpPoly, IntPoly

ints = st.integers(-20, 20)
int_polys = st.lists(ints, min_size=1, max_size=6).map(IntPoly)


def test_str_and_degree():
    f = IntPoly([1, -3, 1])
    assert str(f) == "t^2 - 3*t + 1"
    assert f.degree == 2 and IntPoly([]).degree == -1


@given(int_polys, int_polys, ints)
def test_ring_homomorphism_under_evaluation(f, g, x):
    assert (f * g)(x) == f(x) * g(x)
    assert (f + g)(x) == f(x) + g(x)


@given(int_polys, int_polys.filter(lambda g: not g.is_zero()))
def test_division_identity(f, g):
    q, r = divmod(f, g)
    assert q * g + r == f
    assert r.degree < g.degree


@given(st.lists(st.integers(0, 6), min_size=1, max_size=6), st.lists(st.integers(0, 6), min_size=2, max_size=4))
def test_fp_division_identity(a, b):
    f, g = FpPoly(7, a), FpPoly(7, b)
    if g.is_zero():
        return
    q, r = divmod(f, g)
    assert q * g + r == f


def test_fp_gcd_is_monic():
    f = FpPoly(5, [4, 0, 1])  # (t-1)(t+1) = t^2 - 1
    g = FpPoly(5, [3, 2])     # 2t + 3 = 2(t - 1)
    assert f.gcd(g) == FpPoly(5, [4, 1])


def test_int_coeffs_rejects_fractions():
    with pytest.raises(ValueError):
        IntPoly([Fraction(1, 2), 1]).int_coeffs()
