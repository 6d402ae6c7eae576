from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from oracles import interval_symdiff_ratio
from sitorus.errors import BudgetExceeded
from sitorus.exact import RatMatrix
from sitorus.criteria import (
    DensitySet,
    FolnerFamily,
    collisions_are_finite,
    default_pairs,
    ergodic_criterion,
    folner_defect,
    strong_mixing_criterion,
    upper_density,
    weak_mixing_criterion,
)
from sitorus.torus import Lebesgue, dirac, fourier, is_invariant, uniform

A2 = RatMatrix([[2]])
CAT = RatMatrix([[2, 1], [1, 1]])
thirds = uniform([[0], [F(1, 3)], [F(2, 3)]])
ONE_MINUS_ONE = [((1,), (-1,))]


@given(st.integers(0, 20), st.integers(0, 3), st.integers(0, 2), st.integers(1, 60), st.integers(0, 80))
def test_folner_defect_matches_set_oracle(a0, a1, l0, m, shift):
    F_ = FolnerFamily(a0, a1, l0, 1)
    a, b = F_.bounds(m)
    assert folner_defect(F_, m, shift) == interval_symdiff_ratio(a, b - a, shift)


def test_folner_defect_examples():
    C = FolnerFamily()
    assert folner_defect(C, 10, 1) == F(2, 10)
    assert folner_defect(C, 10, 0) == 0
    assert folner_defect(C, 100, 3) == F(6, 100)
    vals = [folner_defect(C, m, 3) for m in (10, 100, 1000, 10000)]
    assert vals == sorted(vals, reverse=True)


def test_family_validation():
    with pytest.raises(ValueError):
        FolnerFamily(length_slope=0)
    FolnerFamily(5, 2, 3, 2).check()


def test_density_examples():
    C = FolnerFamily()
    assert abs(upper_density(DensitySet.evens(), C, 100).estimate - F(1, 2)) <= F(1, 100)
    assert upper_density(DensitySet.naturals(), C, 50).estimate == 1
    est = upper_density(DensitySet.finite([0]), C, 100)
    assert est.samples[:3] == (1, F(1, 2), F(1, 3))
    assert est.estimate <= F(4, 100)


@given(st.sampled_from([DensitySet.progression(1, 3), DensitySet.finite([0, 4, 9]), DensitySet.cofinite([2, 3])]),
       st.integers(1, 40))
def test_density_samples_are_counts(E, m_max):
    est = upper_density(E, FolnerFamily(), m_max)
    for m, s in enumerate(est.samples, start=1):
        assert s == F(sum(1 for j in range(m) if j in E), m)
    assert set(E.members(30)) == {j for j in range(30) if j in E}


def test_ergodic_examples():
    assert ergodic_criterion(dirac([0]), A2, m=50).verdict == "PassWithin"
    rep = ergodic_criterion(thirds, A2, ONE_MINUS_ONE, m=200)
    assert rep.verdict == "Fail" and rep.worst.deviation == F(1, 2)
    assert ergodic_criterion(Lebesgue(1), A2, [((1,), (1,))], m=50).verdict == "PassWithin"


def test_weak_examples():
    assert weak_mixing_criterion(dirac([0]), A2, m=50).verdict == "PassWithin"
    rep = weak_mixing_criterion(thirds, A2, ONE_MINUS_ONE, m=200)
    assert rep.verdict == "Fail" and rep.worst.deviation == F(1, 2)
    rep = weak_mixing_criterion(Lebesgue(2), CAT, default_pairs(2, 1), m=200)
    assert rep.verdict == "PassWithin" and rep.max_deviation == 0


def test_strong_examples():
    rep = strong_mixing_criterion(Lebesgue(1), A2, ONE_MINUS_ONE)
    assert rep.verdict == "PassWithin" and rep.max_deviation == 0
    assert strong_mixing_criterion(dirac([0]), A2).max_deviation == 0
    rep = strong_mixing_criterion(thirds, A2, ONE_MINUS_ONE)
    assert rep.verdict == "Fail" and rep.worst.deviation == 1
    assert [s["j"] for s in rep.records[0].samples if s["deviation"] == 1] == list(range(2, 41, 2))


def test_collision_exclusion_is_recorded():
    rep = strong_mixing_criterion(Lebesgue(1), A2, [((1,), (-2,))])
    assert rep.records[0].excluded == [1]
    # without the exclusion the j=1 term is a transient: over the window max it
    # exceeds tol, but the last quarter is clean
    rep = strong_mixing_criterion(Lebesgue(1), A2, [((1,), (-2,))], exclude_collisions=False)
    assert rep.verdict == "Inconclusive" and rep.max_deviation == 1
    assert not collisions_are_finite(RatMatrix([[0, 1], [-1, 0]]))  # eigenvalues +-i
    assert collisions_are_finite(CAT)


def test_bit_cap():
    with pytest.raises(BudgetExceeded):
        ergodic_criterion(Lebesgue(1), RatMatrix([[3]]), [((1,), (0,))], m=1000, bit_cap=64)


def test_plateau_fails_and_decay_is_inconclusive():
    # x -> -x: mu^((-1)^j + 1) is 1 at odd j, the average of |.|^2 plateaus at 1/2
    rep = weak_mixing_criterion(Lebesgue(1), RatMatrix([[-1]]), [((1,), (1,))], m=100)
    assert rep.verdict == "Fail"
    # a single collision at j=0 decays like 1/m: still above tol at m=200 but falling
    rep = ergodic_criterion(Lebesgue(1), A2, ONE_MINUS_ONE, m=200, exclude_collisions=False)
    assert rep.verdict == "Inconclusive" and rep.worst.deviation == F(1, 200)


@pytest.mark.parametrize("A", [CAT, RatMatrix([[3, 1], [2, 1]]), RatMatrix([[1, 1], [1, 0]])])
def test_hyperbolic_unimodular_lebesgue_strongly_mixing(A):
    rep = strong_mixing_criterion(Lebesgue(2), A, default_pairs(2, 3), window=(1, 30))
    assert rep.verdict == "PassWithin" and rep.max_deviation == 0


@given(st.sampled_from([thirds, dirac([0]), uniform([[F(1, 3)], [F(2, 3)]]), uniform([[F(1, 5)], [F(2, 5)], [F(3, 5)], [F(4, 5)]])]),
       st.integers(1, 4))
def test_l_zero_reproduces_fourier_for_invariant_atomic(mu, k):
    assert is_invariant(A2, mu)
    rep = ergodic_criterion(mu, A2, [((k,), (0,))], m=200)
    rec = rep.records[0]
    got = rec.samples[-1]["value"]
    assert abs(complex(got) - fourier(mu, [k])) <= 1e-3


def test_strong_pass_implies_weak_and_ergodic_pass():
    suite = [(dirac([0]), A2), (Lebesgue(1), A2), (Lebesgue(2), CAT), (thirds, A2),
             (uniform([[0], [F(1, 2)]]), RatMatrix([[3]]))]
    for mu, A in suite:
        pairs = default_pairs(mu.n, 1)
        if strong_mixing_criterion(mu, A, pairs).passed:
            assert weak_mixing_criterion(mu, A, pairs, m=300).passed
            assert ergodic_criterion(mu, A, pairs, m=300).passed


def test_reports_are_deterministic():
    a = ergodic_criterion(thirds, A2, m=300)
    b = ergodic_criterion(thirds, A2, m=300)
    assert [(r.k, r.l, r.deviation, r.samples) for r in a.records] == [(r.k, r.l, r.deviation, r.samples) for r in b.records]
    assert all(r.deviation >= 0 for r in a.records)
