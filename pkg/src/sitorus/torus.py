"""The ``x A`` endomorphism on rational points of the n-torus, and measures on it.

Conventions (fixed throughout the package):

* a point is a *row* vector ``x`` with coordinates in ``[0, 1)`` and
  ``T_A(x) = x A mod Z^n``;
* a frequency is a *column* vector ``k`` of integers, ``z^k = exp(2 pi i <x, k>)``,
  so ``(T_A z)^k = z^(A k)`` and pushing a measure forward by ``A`` maps
  its Fourier coefficient at ``k`` to the coefficient at ``A k``.
"""
from __future__ import annotations

import cmath
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import lcm
from typing import Iterable, Sequence, Union

from .arith import as_fraction
from .errors import DimensionMismatch, LebesgueSingularPush, OrbitBudgetExceeded
from .exact import RatMatrix, mat_det
from .polynomial import IntPoly

__all__ = [
    "Atomic",
    "Lebesgue",
    "OrbitRecord",
    "TorusMeasure",
    "TorusPoint",
    "apply_map",
    "dirac",
    "fourier",
    "fourier_exact",
    "fourier_is_one",
    "is_invariant",
    "orbit",
    "pushforward",
    "uniform",
]


@dataclass(frozen=True, order=True)
class TorusPoint:
    """A rational point of R^n / Z^n, stored by its representative in ``[0, 1)^n``."""

    coords: tuple[Fraction, ...]

    def __init__(self, coords: Iterable):
        object.__setattr__(self, "coords", tuple(as_fraction(c) % 1 for c in coords))

    @property
    def n(self) -> int:
        return len(self.coords)

    @property
    def denominator(self) -> int:
        return lcm(*(c.denominator for c in self.coords))

    def pair(self, k: Sequence[int]) -> Fraction:
        """``<x, k> mod 1``, exactly."""
        if len(k) != self.n:
            raise DimensionMismatch(f"frequency of length {len(k)} vs n={self.n}")
        return sum((c * int(ki) for c, ki in zip(self.coords, k)), Fraction(0)) % 1

    def __repr__(self):
        return f"TorusPoint({[str(c) for c in self.coords]})"


@dataclass(frozen=True)
class Atomic:
    """Finitely supported probability measure, points sorted canonically."""

    points: tuple[TorusPoint, ...]
    weights: tuple[Fraction, ...]

    def __init__(self, points: Iterable, weights: Iterable):
        pts = [p if isinstance(p, TorusPoint) else TorusPoint(p) for p in points]
        ws = [as_fraction(w) for w in weights]
        if not pts or len(pts) != len(ws):
            raise ValueError("need one positive weight per support point")
        if len({p.n for p in pts}) != 1:
            raise DimensionMismatch("support points have different dimensions")
        if len(set(pts)) != len(pts):
            raise ValueError("support points must be distinct")
        if any(w <= 0 for w in ws):
            raise ValueError("weights must be positive")
        if sum(ws) != 1:
            raise ValueError(f"weights sum to {sum(ws)}, not 1")
        order = sorted(range(len(pts)), key=lambda i: pts[i])
        object.__setattr__(self, "points", tuple(pts[i] for i in order))
        object.__setattr__(self, "weights", tuple(ws[i] for i in order))

    @property
    def n(self) -> int:
        return self.points[0].n

    @property
    def denominator(self) -> int:
        return lcm(*(p.denominator for p in self.points))

    @property
    def size(self) -> int:
        return len(self.points)


@dataclass(frozen=True)
class Lebesgue:
    """Haar measure on the n-torus; its Fourier transform is the indicator of ``k = 0``."""

    n: int

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("dimension must be >= 1")


TorusMeasure = Union[Atomic, Lebesgue]


def dirac(point: Iterable) -> Atomic:
    return Atomic([point], [1])


def uniform(points: Iterable) -> Atomic:
    pts = sorted({p if isinstance(p, TorusPoint) else TorusPoint(p) for p in points})
    return Atomic(pts, [Fraction(1, len(pts))] * len(pts))


@dataclass(frozen=True)
class OrbitRecord:
    """Forward orbit ``x, T x, T^2 x, ...``: a tail of ``preperiod`` points then one cycle."""

    preperiod: int
    period: int
    points: tuple[TorusPoint, ...]


def _check_map(A: RatMatrix, n: int) -> None:
    if not A.is_integer():
        raise ValueError("the map needs an integer matrix")
    if A.n != n:
        raise DimensionMismatch(f"matrix is {A.n}x{A.n} but the point has {n} coordinates")


def apply_map(A: RatMatrix, x: TorusPoint) -> TorusPoint:
    _check_map(A, x.n)
    return TorusPoint(A.vec_mat(x.coords))


def orbit(A: RatMatrix, x: TorusPoint, cap: int = 10**6) -> OrbitRecord:
    """Iterate until the first repeat; the orbit stays in ``(1/d) Z^n / Z^n``."""
    _check_map(A, x.n)
    d = x.denominator
    if d**x.n > cap:
        raise OrbitBudgetExceeded(f"orbit space of size {d}^{x.n} exceeds cap {cap}")
    seen: dict[TorusPoint, int] = {}
    pts: list[TorusPoint] = []
    cur = x
    while cur not in seen:
        seen[cur] = len(pts)
        pts.append(cur)
        cur = apply_map(A, cur)
    pre = seen[cur]
    return OrbitRecord(pre, len(pts) - pre, tuple(pts))


def _check_freq(mu: TorusMeasure, k: Sequence[int]) -> None:
    if len(k) != mu.n:
        raise DimensionMismatch(f"frequency of length {len(k)} vs n={mu.n}")


# phase denominators up to this size are first tried on the exact rational path
EXACT_PHASE_LIMIT = 64


def fourier(mu: TorusMeasure, k: Sequence[int]) -> complex:
    """``mu^(k) = sum_i w_i exp(2 pi i <x_i, k>)``; phases are reduced mod 1 before exponentiating."""
    _check_freq(mu, k)
    if isinstance(mu, Lebesgue):
        return complex(1.0) if not any(k) else complex(0.0)
    phases = [x.pair(k) for x in mu.points]
    if lcm(*(ph.denominator for ph in phases)) <= EXACT_PHASE_LIMIT:
        exact = fourier_exact(mu, k)
        if exact is not None:
            return complex(exact)
    total = 0j
    for ph, w in zip(phases, mu.weights):
        total += float(w) * cmath.exp(2j * cmath.pi * float(ph))
    return total


def fourier_is_one(mu: Atomic, k: Sequence[int]) -> bool:
    """True iff ``<x, k>`` is an integer on the whole support (so ``mu^(k) = 1``)."""
    _check_freq(mu, k)
    return all(x.pair(k) == 0 for x in mu.points)


@lru_cache(maxsize=256)
def _cyclotomic(q: int) -> IntPoly:
    """The q-th cyclotomic polynomial: ``t^q - 1`` divided by all ``Phi_d``, d | q, d < q."""
    out = IntPoly([-1] + [0] * (q - 1) + [1])
    for d in range(1, q):
        if q % d == 0:
            out = out // _cyclotomic(d)
    return out


def fourier_exact(mu: TorusMeasure, k: Sequence[int]) -> Fraction | None:
    """``mu^(k)`` as an exact rational when it is one, else None.

    With ``q`` the common denominator of the phases, the coefficient is
    ``c(zeta_q)`` for ``c(t) = sum_i w_i t^(q <x_i, k>)``. It is rational
    exactly when ``c`` reduces to a constant modulo the q-th cyclotomic
    polynomial (the minimal polynomial of ``zeta_q``).
    """
    _check_freq(mu, k)
    if isinstance(mu, Lebesgue):
        return Fraction(0) if any(k) else Fraction(1)
    phases = [x.pair(k) for x in mu.points]
    q = lcm(*(ph.denominator for ph in phases))
    if q == 1:
        return Fraction(1)
    coeffs = [Fraction(0)] * q
    for ph, w in zip(phases, mu.weights):
        coeffs[(ph * q).numerator] += w
    r = IntPoly(coeffs) % _cyclotomic(q)
    if r.degree <= 0:
        return r[0]
    return None


def pushforward(A: RatMatrix, mu: TorusMeasure) -> TorusMeasure:
    if isinstance(mu, Lebesgue):
        _check_map(A, mu.n)
        if mat_det(A) == 0:
            raise LebesgueSingularPush("image of Lebesgue under a singular map is not representable")
        return mu
    acc: dict[TorusPoint, Fraction] = {}
    for x, w in zip(mu.points, mu.weights):
        y = apply_map(A, x)
        acc[y] = acc.get(y, Fraction(0)) + w
    return Atomic(list(acc), list(acc.values()))


def is_invariant(A: RatMatrix, mu: TorusMeasure) -> bool:
    """Exact ``x A``-invariance: structural equality of the pushforward (Lebesgue: ``det A != 0``)."""
    if isinstance(mu, Lebesgue):
        _check_map(A, mu.n)
        return mat_det(A) != 0
    return pushforward(A, mu) == mu
