"""Irreducibility of monic integer polynomials over Q, and factorization over F_p.

The decision pipeline in :func:`is_irreducible_q` tries cheap sufficient tests
first and falls back to Kronecker's method, which is complete:

1. degree 1
2. Eisenstein's criterion for primes up to ``eisenstein_bound``
3. rational roots (a root gives a linear factor; none decides degree 2 and 3)
4. irreducibility of ``f mod p`` for primes up to ``modp_bound``
5. Kronecker factorization (degree capped, default 8)
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from . import _kernels
from .arith import check_prime, divisors, is_prime, primes_up_to
from .errors import DegreeTooLarge, NonIntegerCoefficients, NonMonic
from .polynomial import FpPoly, IntPoly

__all__ = [
    "IrredVerdict",
    "ModPFactorization",
    "eisenstein_check",
    "factor_mod_p",
    "is_irreducible_mod_p",
    "is_irreducible_q",
    "kronecker_factor",
    "poly_eval",
    "rational_roots",
]

IRREDUCIBLE = "Irreducible"
REDUCIBLE = "Reducible"


@dataclass(frozen=True)
class IrredVerdict:
    """Outcome of an irreducibility decision.

    ``method`` is one of ``Degree``, ``Eisenstein``, ``RationalRoot``,
    ``ModP`` or ``Kronecker``; ``prime`` is set for Eisenstein and ModP.
    A reducible verdict always carries ``witness = (g, h)`` with ``f == g*h``.
    """

    verdict: str
    method: str
    witness: tuple[IntPoly, IntPoly] | None = None
    prime: int | None = None

    @property
    def irreducible(self) -> bool:
        return self.verdict == IRREDUCIBLE

    def __post_init__(self):
        if self.verdict == REDUCIBLE and self.witness is None:
            raise ValueError("a Reducible verdict needs a factor witness")


@dataclass(frozen=True)
class ModPFactorization:
    """``f = unit * prod(factors)`` with monic irreducible factors (repeated by multiplicity)."""

    p: int
    unit: int
    factors: tuple[FpPoly, ...]

    def product(self) -> FpPoly:
        out = FpPoly(self.p, [self.unit])
        for g in self.factors:
            out = out * g
        return out

    @property
    def is_irreducible(self) -> bool:
        return len(self.factors) == 1


def _require_monic_integer(f: IntPoly) -> list[int]:
    if not f.is_integral():
        raise NonIntegerCoefficients(f"{f} has non-integer coefficients")
    if not f.is_monic():
        raise NonMonic(f"{f} is not monic")
    return f.int_coeffs()


def poly_eval(f: IntPoly, x) -> Fraction:
    return Fraction(f(Fraction(x)))


def eisenstein_check(f: IntPoly, p: int) -> bool:
    """Eisenstein's criterion at ``p``; True certifies irreducibility over Q."""
    check_prime(p)
    c = f.int_coeffs()
    if len(c) < 2:
        return False
    if c[-1] % p == 0:
        return False
    return all(a % p == 0 for a in c[:-1]) and c[0] % (p * p) != 0


def rational_roots(f: IntPoly) -> list[Fraction]:
    """All distinct rational roots, ascending, each verified by exact evaluation."""
    if f.is_zero():
        raise ValueError("the zero polynomial has every number as a root")
    c = f.int_coeffs()
    roots: set[Fraction] = set()
    while c and c[0] == 0:
        roots.add(Fraction(0))
        c = c[1:]
    if len(c) > 1:
        g = IntPoly(c)
        for a in divisors(c[0]):
            for b in divisors(c[-1]):
                for r in (Fraction(a, b), Fraction(-a, b)):
                    if r not in roots and g(r) == 0:
                        roots.add(r)
    return sorted(roots)


# ---------------------------------------------------------------------------
# F_p
# ---------------------------------------------------------------------------

def _candidate(p: int, d: int, idx: int) -> FpPoly:
    digits = []
    for _ in range(d):
        idx, r = divmod(idx, p)
        digits.append(r)
    return FpPoly(p, digits + [1])


def _scan_python(g: FpPoly, d: int, start: int) -> int:
    p = g.p
    for idx in range(start, p**d):
        if (g % _candidate(p, d, idx)).is_zero():
            return idx
    return -1


def factor_mod_p(f: FpPoly) -> ModPFactorization:
    """Complete factorization by trial division with every monic polynomial of
    degree ``d = 1, 2, ...`` while ``2d <= deg``; what is left is irreducible.
    """
    if f.degree < 1:
        raise ValueError("factor_mod_p needs degree >= 1")
    p = f.p
    unit = f.lc
    g = f.monic()
    factors: list[FpPoly] = []
    d = 1
    while g.degree >= 2 * d:
        start = 0
        while g.degree >= 2 * d:
            if p < _kernels.MAX_MODULUS and p**d < 2**62:
                idx = _kernels.first_monic_divisor(g.coeffs, p, d, start)
            else:
                idx = _scan_python(g, d, start)
            if idx < 0:
                break
            h = _candidate(p, d, idx)
            while g.degree >= d:
                q, r = divmod(g, h)
                if not r.is_zero():
                    break
                factors.append(h)
                g = q
            start = idx + 1
        d += 1
    if g.degree >= 1:
        factors.append(g)
    return ModPFactorization(p, unit, tuple(factors))


def _prime_factors(n: int) -> list[int]:
    return [q for q in range(2, n + 1) if n % q == 0 and is_prime(q)]


def is_irreducible_mod_p(f: FpPoly) -> bool:
    """Rabin's test: ``t^(p^n) = t mod f`` and ``gcd(t^(p^(n/q)) - t, f) = 1`` for primes q | n."""
    n = f.degree
    if n < 1:
        return False
    if n == 1:
        return True
    p = f.p
    g = f.monic()
    t = FpPoly(p, [0, 1])
    powers = {}
    x = t
    for k in range(1, n + 1):
        x = x.pow_mod(p, g)
        powers[k] = x
    if not ((powers[n] - t) % g).is_zero():
        return False
    for q in _prime_factors(n):
        if g.gcd(powers[n // q] - t).degree > 0:
            return False
    return True


# ---------------------------------------------------------------------------
# Kronecker
# ---------------------------------------------------------------------------

def _eval_points():
    yield 0
    for k in itertools.count(1):
        yield k
        yield -k


def _lagrange_basis(xs: list[int]) -> list[list[Fraction]]:
    basis = []
    for i, xi in enumerate(xs):
        poly = IntPoly([1])
        denom = Fraction(1)
        for j, xj in enumerate(xs):
            if j != i:
                poly = poly * IntPoly([-xj, 1])
                denom *= xi - xj
        basis.append([c / denom for c in poly.coeffs] + [Fraction(0)] * (len(xs) - len(poly.coeffs)))
    return basis


def _subset_products(fac: ModPFactorization, d: int) -> set[FpPoly]:
    """Monic degree-d divisors of ``f mod p`` (products of sub-multisets of its factors)."""
    out = set()
    k = len(fac.factors)
    for r in range(1, k + 1):
        for idx in itertools.combinations(range(k), r):
            if sum(fac.factors[i].degree for i in idx) == d:
                g = FpPoly(fac.p, [1])
                for i in idx:
                    g = g * fac.factors[i]
                out.add(g)
    return out


def _mod_p_sieve(f: IntPoly, n: int, primes: list[int]):
    """Factorizations of ``f`` modulo the given primes and the factor degrees they allow.

    A monic factor of ``f`` over Z reduces to a product of some of the
    irreducible factors of ``f mod p``, so its degree is a subset sum of their
    degrees for every p.
    """
    facs = []
    allowed = set(range(1, n))
    for p in primes:
        fac = factor_mod_p(f.mod_p(p))
        sums = {0}
        for g in fac.factors:
            sums |= {s + g.degree for s in sums}
        allowed &= sums
        facs.append(fac)
    return facs, allowed


def kronecker_factor(
    f: IntPoly,
    max_degree: int = 8,
    divisor_budget: int = 48,
    sieve_primes: tuple[int, ...] = (3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47),
) -> IrredVerdict:
    """Complete factor search over Z[t] for a monic integer polynomial.

    For each target degree ``d <= deg f // 2`` a monic factor ``g`` must satisfy
    ``g(x) | f(x)`` at every integer ``x``; divisor tuples at ``d + 1``
    evaluation points are interpolated and trial-divided. Points whose value has
    more than ``divisor_budget`` positive divisors are passed over in favour of
    later points.

    The enumeration is pruned without losing completeness: ``g mod p`` divides
    ``f mod p``, so only degrees that are subset sums of the factor degrees mod
    every sieve prime are searched, and each value ``g(x_i)`` must agree mod p
    with some monic degree-d divisor of ``f mod p``.
    """
    c = _require_monic_integer(f)
    n = len(c) - 1
    if n < 1:
        raise ValueError("degree must be at least 1")
    if n > max_degree:
        raise DegreeTooLarge(f"degree {n} exceeds the Kronecker cap {max_degree}")
    if n == 1:
        return IrredVerdict(IRREDUCIBLE, "Kronecker")
    need = n // 2 + 1
    good: list[tuple[int, int]] = []
    spare: list[tuple[int, int, int]] = []
    for scanned, x in enumerate(_eval_points()):
        v = int(f(x))
        if v == 0:
            g = IntPoly.linear_root(x)
            return IrredVerdict(REDUCIBLE, "Kronecker", (g, f // g))
        tau = len(divisors(v))
        if tau <= divisor_budget:
            good.append((x, v))
        else:
            spare.append((tau, scanned, x))
        if len(good) >= need or scanned >= 4 * need + 16:
            break
    if len(good) < need:
        spare.sort()
        for _, _, x in spare[: need - len(good)]:
            good.append((x, int(f(x))))

    facs, allowed = _mod_p_sieve(f, n, [q for q in sieve_primes if is_prime(q)])
    for d in range(1, n // 2 + 1):
        if d not in allowed:
            continue
        pts = good[: d + 1]
        xs = [x for x, _ in pts]
        basis = _lagrange_basis(xs)
        leads = [b[d] for b in basis]
        # residues g(x_i) mod q that some degree-d divisor of f mod q can take
        sieves = []
        for fac in facs:
            subs = _subset_products(fac, d)
            sieves.append((fac.p, subs, [{g(x) for g in subs} for x in xs]))
        sieves.sort(key=lambda s: len(s[1]) / s[0])
        choices = []
        for i, (_, v) in enumerate(pts):
            vals = [sg * q for q in divisors(v) for sg in (1, -1)]
            choices.append([w for w in vals if all(w % q in res[i] for q, _, res in sieves)])
        q0, subs0, _ = sieves[0]
        for g0 in sorted(subs0):
            targets = [g0(x) for x in xs]
            per_point = [[w for w in ch if w % q0 == t] for ch, t in zip(choices, targets)]
            for vals in itertools.product(*per_point):
                if sum(v * l for v, l in zip(vals, leads)) != 1:
                    continue
                coeffs = [sum(v * b[e] for v, b in zip(vals, basis)) for e in range(d + 1)]
                if any(a.denominator != 1 for a in coeffs):
                    continue
                g = IntPoly(coeffs)
                q, r = divmod(f, g)
                if r.is_zero():
                    return IrredVerdict(REDUCIBLE, "Kronecker", (g, q))
    return IrredVerdict(IRREDUCIBLE, "Kronecker")


def is_irreducible_q(
    f: IntPoly,
    eisenstein_bound: int = 100,
    modp_bound: int = 50,
    kronecker_cap: int = 8,
) -> IrredVerdict:
    """Decide irreducibility of a monic integer polynomial over Q (see module doc)."""
    c = _require_monic_integer(f)
    n = len(c) - 1
    if n < 1:
        raise ValueError("degree must be at least 1")
    if n == 1:
        return IrredVerdict(IRREDUCIBLE, "Degree")
    for p in primes_up_to(eisenstein_bound):
        if eisenstein_check(f, p):
            return IrredVerdict(IRREDUCIBLE, "Eisenstein", prime=p)
    roots = rational_roots(f)
    if roots:
        g = IntPoly.linear_root(roots[0])
        return IrredVerdict(REDUCIBLE, "RationalRoot", (g, f // g))
    if n <= 3:
        return IrredVerdict(IRREDUCIBLE, "RationalRoot")
    for p in primes_up_to(modp_bound):
        if is_irreducible_mod_p(f.mod_p(p)):
            return IrredVerdict(IRREDUCIBLE, "ModP", prime=p)
    return kronecker_factor(f, max_degree=kronecker_cap)
