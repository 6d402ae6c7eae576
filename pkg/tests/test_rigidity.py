from fractions import Fraction as F
import random

import pytest
from hypothesis import given, settings, strategies as st

from oracles import lattice_solutions
from sitorus import _kernels
from sitorus.errors import EnumerationBudget, NotStronglyIndependent, SingularL
from sitorus.exact import RatMatrix, mat_det
from sitorus.polynomial import IntPoly
from sitorus.rigidity import (
    AuditParams,
    RigidityCase,
    SupportConstraint,
    constraint_holds,
    filter_support,
    finite_support_enumerate,
    rigidity_audit,
    semigroup_generate,
)
from sitorus.strong import MatrixTuple, certify_tuple_q, companion
from sitorus.torus import Atomic, Lebesgue, TorusPoint, dirac, fourier_is_one, uniform

I1 = RatMatrix.identity(1)
I2 = RatMatrix.identity(2)
J = companion(IntPoly([1, 0, 1]))
B2 = companion(IntPoly([2, 0, 1]))
CAT = RatMatrix([[2, 1], [1, 1]])


def test_constraint_examples():
    assert constraint_holds(SupportConstraint([2, 0]), TorusPoint([F(1, 2), F(1, 3)]))
    assert not constraint_holds(SupportConstraint([1, 0]), TorusPoint([F(1, 2), 0]))
    assert constraint_holds(SupportConstraint([7, -3]), TorusPoint([0, 0]))


@pytest.mark.parametrize("T,k,expected", [
    (MatrixTuple([I2, J]), (1, 0), [(0, 0)]),
    (MatrixTuple([I2, J]), (2, 0), [(0, 0), (0, F(1, 2)), (F(1, 2), 0), (F(1, 2), F(1, 2))]),
    (MatrixTuple([I1]), (3,), [(0,), (F(1, 3),), (F(2, 3),)]),
])
def test_enumerate_examples(backend, T, k, expected):
    pts = finite_support_enumerate(T, k)
    assert [p.coords for p in pts] == expected
    assert filter_support(T, k, pts) == pts
    mu = uniform([p.coords for p in pts])
    assert all(fourier_is_one(mu, B.mat_vec(k)) for B in T.mats)


def test_enumerate_errors():
    with pytest.raises(SingularL):
        finite_support_enumerate(MatrixTuple([I2, RatMatrix.diag([1, -1])]), (1, 0))
    with pytest.raises(EnumerationBudget):
        finite_support_enumerate(MatrixTuple([I2, J]), (40, 40), cap=1000)
    with pytest.raises(ValueError):
        finite_support_enumerate(MatrixTuple([I2, J]), (0, 0))


def _random_si_tuples(count, seed=7):
    rng = random.Random(seed)
    found = []
    while len(found) < count:
        n = rng.choice([2, 2, 3])
        mats = [RatMatrix([[rng.randint(-2, 2) for _ in range(n)] for _ in range(n)]) for _ in range(n)]
        T = MatrixTuple(mats)
        if certify_tuple_q(T, prime_budget=[2, 3, 5, 7], search_radius=1).certified:
            found.append(T)
    return found


def test_enumeration_equals_solution_subgroup_on_random_si_tuples():
    rng = random.Random(11)
    for T in _random_si_tuples(20):
        k = tuple(rng.choice([-2, -1, 1, 2]) for _ in range(T.n))
        vecs = [B.mat_vec(k) for B in T.mats]
        L = RatMatrix([[vecs[j][i] for j in range(T.n)] for i in range(T.n)])
        D = abs(int(mat_det(L)))
        try:
            pts = finite_support_enumerate(T, k, cap=10**6)
        except EnumerationBudget:
            continue
        want = lattice_solutions(vecs, D, T.n)
        assert [p.coords for p in filter_support(T, k, pts)] == want
        assert 1 <= len(pts) and pts[0] == TorusPoint([0] * T.n)


def test_backends_agree_on_enumeration():
    T = MatrixTuple([I2, B2])
    out = {}
    for name in ("numpy", "numba") if _kernels.HAS_NUMBA else ("numpy",):
        with _kernels.use_backend(name):
            out[name] = finite_support_enumerate(T, (3, 1))
    assert len(set(map(tuple, out.values()))) == 1


def test_semigroup_examples():
    assert semigroup_generate(B2, 1) == [B2, B2 + I2, B2 * 2]
    gens2 = semigroup_generate(B2, 2)
    assert gens2[3:] == [B2 @ B2 + I2, B2 @ B2 + B2]
    assert semigroup_generate(RatMatrix([[-3]]), 1) == [RatMatrix([[-3]]), RatMatrix([[-2]])]
    assert semigroup_generate(B2, 1, include_identity_power=False) == [B2, B2 * 2]
    with pytest.raises(NotStronglyIndependent):
        semigroup_generate(RatMatrix.diag([1, 2]), 1)


@pytest.mark.parametrize("p", [2, 3, 5])
def test_semigroup_commutes_and_preserves_lebesgue(p):
    B = companion(IntPoly([p, 0, 1]))
    gens = semigroup_generate(B, 4)
    assert all(G @ H == H @ G for G in gens for H in gens)
    assert all(mat_det(G) != 0 for G in gens)


def test_audit_examples():
    T = MatrixTuple([I2, B2])
    rep = rigidity_audit(RigidityCase(CAT, T, (1, 2, 3), dirac([0, 0])))
    assert rep.hypotheses_hold and rep.classification == "Dirac" and not rep.flags
    rep = rigidity_audit(RigidityCase(CAT, T, (1, 2), Lebesgue(2)))
    for row in rep.invariance[1:]:
        Aj = CAT ** row["j"]
        assert row["invariant"] == (mat_det(Aj + T.mats[row["i"] - 1]) != 0)
    assert rep.classification == "Lebesgue"
    thirds = uniform([[0], [F(1, 3)], [F(2, 3)]])
    rep = rigidity_audit(RigidityCase(RatMatrix([[2]]), MatrixTuple([I1]), (1,), thirds))
    assert rep.invariance[0]["invariant"] and not rep.invariance[1]["invariant"]
    assert rep.criteria["ergodic"].verdict == "Fail"
    assert (rep.classification, rep.size) == ("FinitelySupported", 3)
    assert any("hypothesis fails" in f for f in rep.flags)


def test_audit_flags_mixing_atomic_measure_as_inconsistent():
    # a tiny pair grid on which a two-atom measure looks mixing
    mu = uniform([[0], [F(1, 2)]])
    params = AuditParams(pairs=(((2,), (0,)),), m=50, window=(1, 10))
    rep = rigidity_audit(RigidityCase(RatMatrix([[3]]), MatrixTuple([I1]), (1,), mu), params)
    assert rep.classification == "Inconsistent"
    assert any(f.startswith("Inconsistent") for f in rep.flags)


int3 = st.integers(1, 3).flatmap(
    lambda n: st.lists(st.lists(st.integers(-3, 3), min_size=n, max_size=n), min_size=n, max_size=n)
)


@settings(max_examples=50)
@given(int3)
def test_dirac_at_zero_is_invariant_under_everything(rows):
    A = RatMatrix(rows)
    n = A.n
    T = MatrixTuple([RatMatrix.identity(n)] * n) if n == 1 else MatrixTuple.powers(companion(IntPoly([2] + [0] * (n - 1) + [1])))
    params = AuditParams(radius=1, m=20, window=(1, 5), bit_cap=256)
    rep = rigidity_audit(RigidityCase(A, T, (1, 2), dirac([0] * n)), params)
    assert rep.hypotheses_hold and rep.classification == "Dirac"
