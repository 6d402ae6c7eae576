"""Independent brute-force oracles. Deliberately naive: no shared code paths
with the package beyond plain data."""
from __future__ import annotations

import itertools
from fractions import Fraction


def cofactor_det(rows):
    """Laplace expansion along the first row."""
    n = len(rows)
    if n == 1:
        return rows[0][0]
    total = 0
    for j in range(n):
        minor = [r[:j] + r[j + 1:] for r in rows[1:]]
        total += (-1) ** j * rows[0][j] * cofactor_det(minor)
    return total


def poly_mul_mod(a, b, p):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] = (out[i + j] + x * y) % p
    return out


def monic_polys(p, d):
    for tail in itertools.product(range(p), repeat=d):
        yield list(tail) + [1]


def reducible_mod_p(coeffs, p):
    """Monic f (lowest first) is reducible mod p iff it equals a product of two
    monic polynomials of positive degree. Checked by multiplying all pairs."""
    n = len(coeffs) - 1
    target = [c % p for c in coeffs]
    for d in range(1, n // 2 + 1):
        for g in monic_polys(p, d):
            for h in monic_polys(p, n - d):
                if poly_mul_mod(g, h, p) == target:
                    return True
    return False


def char_poly_2x2_3x3(rows):
    """Characteristic polynomial det(tI - M) via the trace/minor formulas (n <= 3)."""
    n = len(rows)
    tr = sum(rows[i][i] for i in range(n))
    if n == 1:
        return [-rows[0][0], 1]
    if n == 2:
        return [cofactor_det(rows), -tr, 1]
    m2 = sum(rows[i][i] * rows[j][j] - rows[i][j] * rows[j][i] for i in range(3) for j in range(i + 1, 3))
    return [-cofactor_det(rows), m2, -tr, 1]


def si_bruteforce_fp(mats, p):
    """Every nonzero u in F_p^n gives an invertible sum u_j B_j (cofactor determinant)."""
    n = len(mats)
    for u in itertools.product(range(p), repeat=n):
        if not any(u):
            continue
        comb = [[sum(u[t] * mats[t][i][j] for t in range(n)) % p for j in range(n)] for i in range(n)]
        if cofactor_det(comb) % p == 0:
            return False
    return True


def interval_symdiff_ratio(a, L, shift):
    F = set(range(a, a + L))
    G = {x + shift for x in F}
    return Fraction(len(F ^ G), len(F))


def doubling_orbit(A, x):
    """Naive orbit: list points until the first repeat; returns (preperiod, period)."""
    seen = []
    cur = tuple(x)
    n = len(cur)
    while cur not in seen:
        seen.append(cur)
        cur = tuple(sum(cur[i] * A[i][j] for i in range(n)) % 1 for j in range(n))
    pre = seen.index(cur)
    return pre, len(seen) - pre


def lattice_solutions(vectors, D, n):
    """All x in (1/D) Z^n / Z^n with <x, v> integral for every v."""
    out = []
    for num in itertools.product(range(D), repeat=n):
        x = [Fraction(c, D) for c in num]
        if all(sum(xi * vi for xi, vi in zip(x, v)).denominator == 1 for v in vectors):
            out.append(tuple(x))
    return sorted(out)
