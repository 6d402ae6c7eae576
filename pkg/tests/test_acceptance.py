"""Acceptance suite: eight criteria, one PASS/FAIL line each.

Run with ``pytest tests/test_acceptance.py -v`` or directly with
``python3 tests/test_acceptance.py``.
"""
from __future__ import annotations

import itertools
import random
import sys
import time
from fractions import Fraction as F

import numpy as np
import pytest

from sitorus.arith import primes_up_to
from sitorus.criteria import (
    FolnerFamily,
    DensitySet,
    ergodic_criterion,
    folner_defect,
    strong_mixing_criterion,
    upper_density,
    weak_mixing_criterion,
)
from sitorus.errors import WitnessNotFound
from sitorus.exact import FpMatrix, RatMatrix, char_poly, mat_det
from sitorus.irreducible import factor_mod_p, is_irreducible_mod_p, is_irreducible_q
from sitorus.polynomial import IntPoly
from sitorus.rigidity import filter_support, finite_support_enumerate, semigroup_generate
from sitorus.strong import MatrixTuple, companion, find_dependency_witness_c, form_residual, tuple_bruteforce_fp
from sitorus.torus import Atomic, Lebesgue, TorusPoint, dirac, fourier, fourier_is_one, is_invariant, orbit, uniform


def report(num: int, ok: bool, text: str) -> None:
    print(f"[{'PASS' if ok else 'FAIL'}] criterion {num}: {text}", flush=True)


# ---------------------------------------------------------------------------

def criterion_1():
    t0 = time.perf_counter()
    total = agree = 0
    for p, n in [(2, 2), (3, 2), (2, 3)]:
        for flat in itertools.product(range(p), repeat=n * n):
            if not any(flat):
                continue
            B = FpMatrix(p, [flat[i * n:(i + 1) * n] for i in range(n)])
            brute = tuple_bruteforce_fp(MatrixTuple.powers(B)).certified
            irred = factor_mod_p(char_poly(B)).is_irreducible
            total += 1
            agree += brute == irred
    dt = time.perf_counter() - t0
    ok = total == 15 + 80 + 511 and agree == total and dt < 60
    return ok, f"F_p power tuples vs char-poly irreducibility, {agree}/{total} agree in {dt:.1f}s (limit 60s)"


def criterion_2():
    notes = []
    ok = True
    for n in range(2, 7):
        v = is_irreducible_q(IntPoly([2] + [0] * (n - 1) + [1]))
        ok &= v.verdict == "Irreducible" and v.method == "Eisenstein"
    notes.append("t^n+2 Eisenstein")
    f = IntPoly([1, 0, 0, 0, 1])
    no_modp = not any(is_irreducible_mod_p(f.mod_p(p)) for p in primes_up_to(50))
    v = is_irreducible_q(f)
    ok &= no_modp and v.verdict == "Irreducible" and v.method == "Kronecker"
    notes.append("t^4+1 Kronecker")
    for coeffs in ([-1, 0, 1], [0, -1, 0, 1]):
        f = IntPoly(coeffs)
        v = is_irreducible_q(f)
        g, h = v.witness if v.witness else (None, None)
        ok &= v.verdict == "Reducible" and g is not None and g * h == f and g.degree >= 1 and h.degree >= 1
    notes.append("t^2-1, t^3-t factored")
    return ok, "irreducibility pipeline: " + ", ".join(notes)


def criterion_3():
    I2 = RatMatrix.identity(2)
    T = MatrixTuple([I2, companion(IntPoly([1, 0, 1]))])
    ok = True
    got1 = [p.coords for p in finite_support_enumerate(T, (1, 0))]
    ok &= got1 == [(0, 0)]
    pts = finite_support_enumerate(T, (2, 0))
    got2 = {p.coords for p in pts}
    ok &= got2 == {(a, b) for a in (0, F(1, 2)) for b in (0, F(1, 2))} and len(pts) == 4
    for k in ((1, 0), (2, 0)):
        sol = filter_support(T, k, finite_support_enumerate(T, k))
        mu = uniform([p.coords for p in sol])
        ok &= all(fourier_is_one(mu, B.mat_vec(k)) for B in T.mats)
    return ok, f"support enumeration: k=(1,0) -> {len(got1)} point, k=(2,0) -> {len(got2)} points, unit Fourier on solutions"


def criterion_4():
    t0 = time.perf_counter()
    A = RatMatrix([[2]])
    grid = [((k,), (l,)) for k in range(-3, 4) if k for l in range(-3, 4)]
    a = strong_mixing_criterion(Lebesgue(1), A, grid, window=(1, 40))
    ok_a = a.verdict == "PassWithin" and a.max_deviation == 0 and isinstance(a.max_deviation, F)
    thirds = uniform([[0], [F(1, 3)], [F(2, 3)]])
    b = ergodic_criterion(thirds, A, [((1,), (-1,))], m=1000)
    avg = b.records[0].samples[-1]["value"]
    ok_b = b.verdict == "Fail" and abs(avg - F(1, 2)) <= 0.02
    d = dirac([0])
    reps = [ergodic_criterion(d, A), weak_mixing_criterion(d, A), strong_mixing_criterion(d, A)]
    ok_c = all(r.verdict == "PassWithin" and r.max_deviation == 0 for r in reps)
    dt = time.perf_counter() - t0
    ok = ok_a and ok_b and ok_c and dt < 30
    return ok, (f"criterion testers: (a) Lebesgue strong dev={a.max_deviation} "
                f"(b) thirds ergodic {b.verdict} avg={avg} (c) Dirac all pass dev=0, {dt:.1f}s (limit 30s)")


def _random_atomic(rng: random.Random, n: int) -> Atomic:
    d = rng.randint(1, 6)
    size = rng.randint(1, min(4, d**n))
    pts = set()
    while len(pts) < size:
        pts.add(tuple(F(rng.randrange(d), d) for _ in range(n)))
    ws = [rng.randint(1, 4) for _ in pts]
    return Atomic(sorted(pts), [F(w, sum(ws)) for w in ws])


def criterion_5():
    rng = random.Random(2024)
    mats = {n: [RatMatrix([[rng.randint(-3, 3) for _ in range(n)] for _ in range(n)]) for _ in range(20)]
            for n in (1, 2)}
    measures = []
    for i in range(50):
        n = rng.choice((1, 2))
        if i % 2:
            measures.append(_random_atomic(rng, n))
        else:
            # uniform on a periodic cycle of a random matrix: invariant by construction
            A = rng.choice(mats[n])
            d = rng.randint(1, 6)
            o = orbit(A, TorusPoint([F(rng.randrange(d), d) for _ in range(n)]))
            measures.append(uniform([p.coords for p in o.points[o.preperiod:]]))
    checks = disagreements = invariant_cases = 0
    for mu in measures:
        d = mu.denominator
        for A in mats[mu.n]:
            exact = is_invariant(A, mu)
            four = all(abs(fourier(mu, A.mat_vec(k)) - fourier(mu, k)) <= 1e-9
                       for k in itertools.product(range(d), repeat=mu.n))
            checks += 1
            invariant_cases += exact
            disagreements += exact != four
    ok = disagreements == 0 and 0 < invariant_cases < checks
    return ok, (f"invariance vs Fourier grid: {checks} (measure, A) checks, {invariant_cases} invariant, "
                f"{disagreements} disagreements")


def criterion_6():
    rng = random.Random(6)
    worst = 0.0
    found = 0
    for i in range(50):
        n = 2 if i % 2 else 3
        T = MatrixTuple([RatMatrix([[rng.randint(-3, 3) for _ in range(n)] for _ in range(n)]) for _ in range(n)])
        try:
            w = find_dependency_witness_c(T, tol=1e-8, max_restarts=20, seed=i)
        except WitnessNotFound:
            continue
        if w.residual <= 1e-8 and np.linalg.norm(w.z) > 0:
            found += 1
            worst = max(worst, w.residual)
    I2 = RatMatrix.identity(2)
    w = find_dependency_witness_c(MatrixTuple([I2, RatMatrix.diag([1, -1])]))
    coord = sum(abs(c) > 1e-9 for c in w.z) == 1
    r = form_residual(MatrixTuple([I2, companion(IntPoly([1, 0, 1]))]), np.array([1, 1j]))
    ok = found == 50 and coord and r <= 1e-12
    return ok, (f"complex witnesses: {found}/50 random tuples, worst residual {worst:.1e}; "
                f"coordinate witness {coord}; residual at (1,i) {r:.1e}")


def criterion_7():
    B = companion(IntPoly([2, 0, 1]))
    gens = semigroup_generate(B, 4)
    commute = all(G @ H == H @ G for G in gens for H in gens)
    nonsingular = all(mat_det(G) != 0 for G in gens)
    lebesgue = all(is_invariant(G, Lebesgue(2)) for G in gens)
    ok = commute and nonsingular and lebesgue
    return ok, f"semigroup of companion(t^2+2), j_max=4: {len(gens)} generators, commute {commute}, det != 0 {nonsingular}"


def criterion_8():
    C = FolnerFamily()
    defects = [folner_defect(C, m, 1) for m in (10, 100, 1000)]
    ok_f = defects == [F(2, 10), F(2, 100), F(2, 1000)]
    est = upper_density(DensitySet.evens(), C, 1000).estimate
    ok_d = abs(est - F(1, 2)) <= F(1, 500)
    return ok_f and ok_d, f"Folner defects {[str(d) for d in defects]}, density of evens {est} (within 1/500 of 1/2: {ok_d})"


CRITERIA = [criterion_1, criterion_2, criterion_3, criterion_4, criterion_5, criterion_6, criterion_7, criterion_8]


@pytest.mark.parametrize("num", range(1, 9))
def test_acceptance(num, capsys):
    ok, text = CRITERIA[num - 1]()
    with capsys.disabled():
        report(num, ok, text)
    assert ok, text


if __name__ == "__main__":
    results = []
    for i, fn in enumerate(CRITERIA, start=1):
        ok, text = fn()
        report(i, ok, text)
        results.append(ok)
    sys.exit(0 if all(results) else 1)
