import cmath
from fractions import Fraction as F
import itertools

import pytest
from hypothesis import given, strategies as st

from oracles import doubling_orbit
from sitorus.errors import DimensionMismatch, LebesgueSingularPush, OrbitBudgetExceeded
from sitorus.exact import RatMatrix
from sitorus.torus import (
    Atomic,
    Lebesgue,
    TorusPoint,
    apply_map,
    dirac,
    fourier,
    fourier_exact,
    fourier_is_one,
    is_invariant,
    orbit,
    pushforward,
    uniform,
)

A2 = RatMatrix([[2]])
CAT = RatMatrix([[2, 1], [1, 1]])
thirds = uniform([[0], [F(1, 3)], [F(2, 3)]])


def test_apply_map_row_convention():
    assert apply_map(A2, TorusPoint([F(1, 3)])) == TorusPoint([F(2, 3)])
    assert apply_map(CAT, TorusPoint([F(1, 2), F(1, 2)])) == TorusPoint([F(1, 2), 0])
    with pytest.raises(DimensionMismatch):
        apply_map(CAT, TorusPoint([F(1, 2)]))


@pytest.mark.parametrize("x,pre,per", [(F(1, 5), 0, 4), (F(1, 6), 1, 2), (0, 0, 1)])
def test_orbit_examples(x, pre, per):
    o = orbit(A2, TorusPoint([x]))
    assert (o.preperiod, o.period) == (pre, per)


def test_orbit_budget():
    with pytest.raises(OrbitBudgetExceeded):
        orbit(CAT, TorusPoint([F(1, 2000), 0]))


def test_fourier_examples():
    assert fourier(dirac([0]), [5]) == 1
    assert fourier(uniform([[0], [F(1, 2)]]), [1]) == 0
    assert fourier(Lebesgue(2), [0, 0]) == 1 and fourier(Lebesgue(2), [1, 0]) == 0
    quarter = uniform([[0, 0], [0, F(1, 2)], [F(1, 2), 0], [F(1, 2), F(1, 2)]])
    assert fourier_is_one(quarter, [2, 0]) and not fourier_is_one(quarter, [1, 0])


def test_fourier_phase_reduction_survives_huge_frequencies():
    mu = uniform([[F(1, 7)], [F(3, 7)]])
    k = 7**40 + 1
    want = (cmath.exp(2j * cmath.pi / 7) + cmath.exp(6j * cmath.pi / 7)) / 2
    assert abs(fourier(mu, [k]) - want) < 1e-12


def test_pushforward_examples():
    assert pushforward(A2, uniform([[F(1, 3)], [F(2, 3)]])) == uniform([[F(1, 3)], [F(2, 3)]])
    assert pushforward(A2, uniform([[0], [F(1, 2)]])) == dirac([0])
    with pytest.raises(LebesgueSingularPush):
        pushforward(RatMatrix([[0]]), Lebesgue(1))
    assert is_invariant(A2, thirds) and not is_invariant(A2, uniform([[0], [F(1, 2)]]))
    assert is_invariant(CAT, Lebesgue(2))


def test_atomic_validation():
    with pytest.raises(ValueError):
        Atomic([[0], [1]], [F(1, 2), F(1, 2)])  # 1 == 0 mod 1
    with pytest.raises(ValueError):
        Atomic([[0]], [F(1, 2)])


# -- properties ---------------------------------------------------------------

def atomic(n, max_den=6, max_size=4):
    pt = st.lists(st.tuples(st.integers(0, 35), st.integers(1, max_den)).map(lambda t: F(*t)),
                  min_size=n, max_size=n).map(TorusPoint)
    return st.lists(pt, min_size=1, max_size=max_size, unique=True).flatmap(
        lambda pts: st.lists(st.integers(1, 5), min_size=len(pts), max_size=len(pts)).map(
            lambda ws: Atomic(pts, [F(w, sum(ws)) for w in ws])
        )
    )


def int_matrix(n, bound=3):
    return st.lists(st.lists(st.integers(-bound, bound), min_size=n, max_size=n),
                    min_size=n, max_size=n).map(RatMatrix)


dim_mu_A = st.integers(1, 2).flatmap(lambda n: st.tuples(atomic(n), int_matrix(n), int_matrix(n)))


@given(dim_mu_A)
def test_pushforward_conserves_mass_and_is_functorial(case):
    mu, A, B = case
    nu = pushforward(A, mu)
    assert sum(nu.weights) == 1 and nu.size <= mu.size
    assert pushforward(A, pushforward(B, mu)) == pushforward(B @ A, mu)


@given(dim_mu_A)
def test_invariance_matches_fourier_on_grid(case):
    mu, A, _ = case
    d = mu.denominator
    agree = all(
        abs(fourier(mu, A.mat_vec(k)) - fourier(mu, k)) <= 1e-9
        for k in itertools.product(range(d), repeat=mu.n)
    )
    assert is_invariant(A, mu) == agree


@given(st.integers(1, 2).flatmap(lambda n: atomic(n)), st.lists(st.integers(-30, 30), min_size=2, max_size=2))
def test_fourier_bounds_and_exact_agreement(mu, k):
    k = k[: mu.n]
    c = fourier(mu, k)
    assert abs(c) <= 1 + 1e-12
    assert abs(fourier(mu, [0] * mu.n) - 1) <= 1e-12
    ex = fourier_exact(mu, k)
    if ex is not None:
        assert abs(c - float(ex)) <= 1e-12
    assert fourier_is_one(mu, k) == (ex == 1)


@given(st.integers(1, 30), st.integers(1, 30))
def test_orbit_matches_naive_iteration(a, b):
    x = F(a % b, b)
    o = orbit(A2, TorusPoint([x]))
    assert (o.preperiod, o.period) == doubling_orbit([[2]], [x])
    cur = o.points[0]
    for _ in range(o.preperiod + o.period):
        cur = apply_map(A2, cur)
    assert cur == o.points[o.preperiod]
