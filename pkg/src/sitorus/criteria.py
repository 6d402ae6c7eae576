"""Følner averages, upper density, and finite-truncation tests of the Fourier
characterizations of ergodic, weakly mixing and strongly mixing measures.

For an ``x A``-invariant measure ``mu`` and frequencies ``k, l``:

* ergodic       -- Følner averages of ``mu^(A^j k + l)`` tend to ``mu^(k) mu^(l)``
* weak mixing   -- Følner averages of ``|mu^(A^j k + l) - mu^(k) mu^(l)|^2`` tend to 0
* strong mixing -- ``mu^(A^j k + l)`` itself tends to ``mu^(k) mu^(l)``

Limits cannot be computed, so each tester evaluates a truncation and returns a
verdict with the per-pair statistics as evidence. Fourier values are exact
rationals whenever :func:`fourier_exact` can decide them, and every statistic
built only from exact values stays exact.
"""
from __future__ import annotations

import itertools
import operator
from dataclasses import dataclass, field
from fractions import Fraction
from math import ceil, lcm
from typing import Iterable, Sequence

from .errors import BudgetExceeded
from .exact import RatMatrix, char_poly, mat_det
from .torus import Lebesgue, TorusMeasure, _cyclotomic, fourier, fourier_exact

__all__ = [
    "CriterionReport",
    "DensityEstimate",
    "DensitySet",
    "FolnerFamily",
    "PairRecord",
    "default_pairs",
    "ergodic_criterion",
    "folner_defect",
    "strong_mixing_criterion",
    "upper_density",
    "weak_mixing_criterion",
]

PASS = "PassWithin"
FAIL = "Fail"
INCONCLUSIVE = "Inconclusive"

Value = Fraction | complex


@dataclass(frozen=True)
class FolnerFamily:
    """Intervals ``F_m = [a_m, a_m + L_m)`` with ``a_m = start + start_slope*m``
    and ``L_m = length + length_slope*m``. The canonical family is ``[0, m)``."""

    start: int = 0
    start_slope: int = 0
    length: int = 0
    length_slope: int = 1

    def __post_init__(self):
        if self.length_slope < 1:
            raise ValueError("interval lengths must grow without bound (length_slope >= 1)")
        if self.start < 0 or self.start_slope < 0:
            raise ValueError("intervals must stay inside N")
        if self.length + self.length_slope < 1:
            raise ValueError("L_1 must be at least 1")

    def bounds(self, m: int) -> tuple[int, int]:
        if m < 1:
            raise ValueError("m starts at 1")
        a = self.start + self.start_slope * m
        return a, a + self.length + self.length_slope * m

    def interval(self, m: int) -> range:
        return range(*self.bounds(m))

    def size(self, m: int) -> int:
        return self.length + self.length_slope * m

    def check(self, samples: Iterable[int] = (1, 2, 4, 8, 16, 64, 256, 1024)) -> None:
        """Verify on sampled m that lengths are >= 1, nondecreasing and growing."""
        sizes = [self.size(m) for m in sorted(samples)]
        if min(sizes) < 1 or sizes != sorted(sizes) or sizes[-1] <= sizes[0]:
            raise ValueError("not a valid interval Følner family")


CANONICAL = FolnerFamily()


def folner_defect(F: FolnerFamily, m: int, shift: int) -> Fraction:
    """``|(F_m + shift) symdiff F_m| / |F_m|``; for an interval of length L it is ``2 min(shift, L) / L``."""
    if shift < 0:
        raise ValueError("shift must be >= 0")
    L = F.size(m)
    return Fraction(2 * min(shift, L), L)


@dataclass(frozen=True)
class DensitySet:
    """Subset of N: an arithmetic progression, a finite set, or a cofinite set."""

    kind: str
    start: int = 0
    step: int = 1
    elements: frozenset = frozenset()

    def __post_init__(self):
        if self.kind not in ("progression", "finite", "cofinite"):
            raise ValueError(f"unknown set kind {self.kind!r}")
        if self.kind == "progression" and (self.step < 1 or self.start < 0):
            raise ValueError("progression needs start >= 0 and step >= 1")

    @classmethod
    def progression(cls, start: int, step: int) -> "DensitySet":
        return cls("progression", start=start, step=step)

    @classmethod
    def finite(cls, elements: Iterable[int]) -> "DensitySet":
        return cls("finite", elements=frozenset(int(e) for e in elements))

    @classmethod
    def cofinite(cls, missing: Iterable[int]) -> "DensitySet":
        return cls("cofinite", elements=frozenset(int(e) for e in missing))

    @classmethod
    def evens(cls) -> "DensitySet":
        return cls.progression(0, 2)

    @classmethod
    def naturals(cls) -> "DensitySet":
        return cls.cofinite(())

    def __contains__(self, j: int) -> bool:
        if j < 0:
            return False
        if self.kind == "progression":
            return j >= self.start and (j - self.start) % self.step == 0
        if self.kind == "finite":
            return j in self.elements
        return j not in self.elements

    def members(self, upto: int) -> list[int]:
        """Elements below ``upto``, ascending."""
        if self.kind == "finite":
            return sorted(e for e in self.elements if 0 <= e < upto)
        if self.kind == "progression":
            return list(range(self.start, upto, self.step))
        return [j for j in range(upto) if j not in self.elements]


@dataclass(frozen=True)
class DensityEstimate:
    samples: tuple[Fraction, ...]
    estimate: Fraction


def upper_density(E: DensitySet, F: FolnerFamily, m_max: int) -> DensityEstimate:
    """Exact ``|E cap F_m| / |F_m|`` for ``m = 1..m_max``; the estimate is the max
    over the last ``ceil(m_max / 4)`` samples, a finite stand-in for the limsup."""
    if m_max < 1:
        raise ValueError("m_max must be >= 1")
    end = max(F.bounds(m)[1] for m in range(1, m_max + 1))
    prefix = [0]
    for j in range(end):
        prefix.append(prefix[-1] + (j in E))
    samples = []
    for m in range(1, m_max + 1):
        a, b = F.bounds(m)
        samples.append(Fraction(prefix[b] - prefix[a], b - a))
    tail = samples[m_max - ceil(m_max / 4):]
    return DensityEstimate(tuple(samples), max(tail))


# ---------------------------------------------------------------------------
# criteria
# ---------------------------------------------------------------------------

@dataclass
class PairRecord:
    k: tuple[int, ...]
    l: tuple[int, ...]
    target: Value
    samples: list[dict] = field(default_factory=list)
    deviation: Fraction | float = 0
    excluded: list[int] = field(default_factory=list)
    status: str = PASS

    @property
    def exact(self) -> bool:
        return isinstance(self.deviation, Fraction)


@dataclass
class CriterionReport:
    kind: str
    verdict: str
    tol: float
    records: list[PairRecord]
    worst: PairRecord | None = None
    params: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.verdict == PASS

    @property
    def max_deviation(self) -> Fraction | float:
        return max((r.deviation for r in self.records), default=Fraction(0))


def default_pairs(n: int, radius: int = 3) -> list[tuple[tuple[int, ...], tuple[int, ...]]]:
    """All ``(k, l)`` with entries in ``[-radius, radius]`` and ``k != 0``, keeping one
    of each conjugate pair ``(k, l) ~ (-k, -l)`` (their statistics are conjugate)."""
    rng = range(-radius, radius + 1)
    out = []
    for k in itertools.product(rng, repeat=n):
        if not any(k):
            continue
        for l in itertools.product(rng, repeat=n):
            first = next(x for x in k + l if x)
            if first > 0:
                out.append((k, l))
    return out


class _Evaluator:
    """Fourier values with a cache keyed by the frequency modulo the measure's denominator."""

    def __init__(self, mu: TorusMeasure):
        self.mu = mu
        self.mod = None if isinstance(mu, Lebesgue) else mu.denominator
        self.cache: dict[tuple, Value] = {}

    def __call__(self, v: Sequence[int]) -> Value:
        if self.mod is None:
            return Fraction(0) if any(v) else Fraction(1)
        key = tuple(x % self.mod for x in v)
        val = self.cache.get(key)
        if val is None:
            val = fourier_exact(self.mu, key)
            if val is None:
                val = fourier(self.mu, key)
            self.cache[key] = val
        return val


def _mul(a: Value, b: Value) -> Value:
    if isinstance(a, Fraction) and isinstance(b, Fraction):
        return a * b
    return complex(a) * complex(b)


def _absdiff(a: Value, b: Value) -> Fraction | float:
    if isinstance(a, Fraction) and isinstance(b, Fraction):
        return abs(a - b)
    return abs(complex(a) - complex(b))


def _sqdiff(a: Value, b: Value) -> Fraction | float:
    if isinstance(a, Fraction) and isinstance(b, Fraction):
        return (a - b) ** 2
    return abs(complex(a) - complex(b)) ** 2


class _PrefixSums:
    """Window means of a value sequence; exact when every value is rational."""

    def __init__(self, vals: list):
        self.exact = all(isinstance(v, Fraction) for v in vals)
        if self.exact:
            self.den = lcm(*(v.denominator for v in vals)) if vals else 1
            terms = (v.numerator * (self.den // v.denominator) for v in vals)
        else:
            terms = (complex(v) for v in vals)
        self.pre = [0, *itertools.accumulate(terms)]

    def mean(self, a: int, b: int) -> Value:
        if self.exact:
            return Fraction(self.pre[b] - self.pre[a], self.den * (b - a))
        return (self.pre[b] - self.pre[a]) / (b - a)


def _orbit_freqs(A_int, k, l, j_lo: int, j_hi: int, bit_cap: int):
    """Yield ``(j, A^j k + l)`` for ``j_lo <= j < j_hi`` using exact integer arithmetic."""
    v = list(k)

    def step(v):
        w = [sum(map(operator.mul, row, v)) for row in A_int]
        if max(map(abs, w)).bit_length() > bit_cap:
            raise BudgetExceeded(f"entries of A^j k exceed {bit_cap} bits")
        return w

    for _ in range(j_lo):
        v = step(v)
    for j in range(j_lo, j_hi):
        yield j, [a + b for a, b in zip(v, l)]
        v = step(v)


def _sample_grid(m: int) -> list[int]:
    return sorted({max(1, round(m / 2**i)) for i in range(10)})


def _prepare(mu, A: RatMatrix, pairs):
    if not A.is_integer():
        raise ValueError("the map needs an integer matrix")
    if A.n != mu.n:
        raise ValueError(f"matrix is {A.n}x{A.n} but the measure lives on T^{mu.n}")
    if pairs is None:
        pairs = default_pairs(mu.n)
    pairs = [(tuple(int(x) for x in k), tuple(int(x) for x in l)) for k, l in pairs]
    for k, l in pairs:
        if len(k) != mu.n or len(l) != mu.n:
            raise ValueError("frequency length does not match the dimension")
    return A.int_rows(), pairs


def _trend_status(devs: list, tol: float) -> str:
    """Pass when the final deviation is within tol; otherwise Inconclusive while the
    deviation is still falling (final < half the trailing-window max), else Fail."""
    if devs[-1] <= tol:
        return PASS
    trailing = devs[len(devs) // 2:]
    if devs[-1] < 0.5 * max(trailing):
        return INCONCLUSIVE
    return FAIL


def _assemble(kind, records, tol, params) -> CriterionReport:
    statuses = [r.status for r in records]
    if all(s == PASS for s in statuses):
        verdict = PASS
    elif FAIL in statuses:
        verdict = FAIL
    else:
        verdict = INCONCLUSIVE
    worst = None
    if records:
        bad = [r for r in records if r.status == verdict] if verdict != PASS else records
        worst = max(bad, key=lambda r: r.deviation)
    return CriterionReport(kind, verdict, tol, records, worst, params)


def _averaged(kind, mu, A, pairs, family, m, tol, bit_cap, exclude_collisions) -> CriterionReport:
    family = family or CANONICAL
    A_int, pairs = _prepare(mu, A, pairs)
    skip = exclude_collisions and isinstance(mu, Lebesgue) and collisions_are_finite(A)
    ev = _Evaluator(mu)
    grid = _sample_grid(m)
    bounds = {ms: family.bounds(ms) for ms in grid}
    j_lo = min(a for a, _ in bounds.values())
    j_hi = max(b for _, b in bounds.values())
    records = []
    for k, l in pairs:
        target = _mul(ev(k), ev(l))
        rec = PairRecord(k, l, target)
        vals = []
        for j, v in _orbit_freqs(A_int, k, l, j_lo, j_hi, bit_cap):
            if skip and any(k) and not any(v):
                rec.excluded.append(j)
                vals.append(target)
            else:
                vals.append(ev(v))
        if kind == "weak":
            memo: dict = {}
            vals = [memo[v] if v in memo else memo.setdefault(v, _sqdiff(v, target)) for v in vals]
        sums = _PrefixSums(vals)
        devs = []
        for ms in grid:
            a, b = bounds[ms]
            stat = sums.mean(a - j_lo, b - j_lo)
            dev = stat if kind == "weak" else _absdiff(stat, target)
            if isinstance(dev, complex):
                dev = abs(dev)
            rec.samples.append({"m": ms, "value": stat, "deviation": dev})
            devs.append(dev)
        rec.deviation = devs[-1]
        rec.status = _trend_status(devs, tol)
        records.append(rec)
    params = {"m": m, "family": family, "samples": grid, "exclude_collisions": skip}
    return _assemble(kind, records, tol, params)


def ergodic_criterion(mu: TorusMeasure, A: RatMatrix, pairs=None, family: FolnerFamily | None = None,
                      m: int = 1000, tol: float = 1e-3, bit_cap: int = 4096,
                      exclude_collisions: bool = True) -> CriterionReport:
    """Følner average of ``mu^(A^j k + l)`` against ``mu^(k) mu^(l)``, sampled up to ``F_m``.

    Exact collisions ``A^j k + l = 0`` are handled as in :func:`strong_mixing_criterion`;
    an excluded term is counted at the target value so it cannot move the average.
    """
    return _averaged("ergodic", mu, A, pairs, family, m, tol, bit_cap, exclude_collisions)


def weak_mixing_criterion(mu: TorusMeasure, A: RatMatrix, pairs=None, family: FolnerFamily | None = None,
                          m: int = 1000, tol: float = 1e-3, bit_cap: int = 4096,
                          exclude_collisions: bool = True) -> CriterionReport:
    """Følner average of ``|mu^(A^j k + l) - mu^(k) mu^(l)|^2`` against 0."""
    return _averaged("weak", mu, A, pairs, family, m, tol, bit_cap, exclude_collisions)


def collisions_are_finite(A: RatMatrix) -> bool:
    """True when ``A^j k = -l`` has at most one solution ``j`` for every ``k != 0``.

    Holds when A is invertible and no eigenvalue is a root of unity: two
    solutions would give a nonzero vector fixed by a power of A.
    """
    if mat_det(A) == 0:
        return False
    P = char_poly(A)
    n = A.n
    for q in range(1, 2 * n * n + 3):
        phi = _cyclotomic(q)
        if phi.degree <= n and (P % phi).is_zero():
            return False
    return True


def strong_mixing_criterion(mu: TorusMeasure, A: RatMatrix, pairs=None, window: tuple[int, int] = (1, 40),
                            tol: float = 1e-3, bit_cap: int = 4096,
                            exclude_collisions: bool = True) -> CriterionReport:
    """Max over ``j0 <= j <= j1`` of ``|mu^(A^j k + l) - mu^(k) mu^(l)|``.

    For Lebesgue with ``k != 0`` the only nonzero summands come from exact
    collisions ``A^j k + l = 0``. When :func:`collisions_are_finite` holds there
    is at most one of them, it does not affect the limit, and with
    ``exclude_collisions`` it is listed in ``excluded`` instead of counted.
    A window whose maximum exceeds tol but whose last quarter is within tol
    is reported Inconclusive.
    """
    j0, j1 = window
    if not 0 <= j0 <= j1:
        raise ValueError("window must satisfy 0 <= j0 <= j1")
    A_int, pairs = _prepare(mu, A, pairs)
    ev = _Evaluator(mu)
    skip = exclude_collisions and isinstance(mu, Lebesgue) and collisions_are_finite(A)
    tail_from = j1 - (j1 - j0 + 1) // 4
    records = []
    for k, l in pairs:
        target = _mul(ev(k), ev(l))
        rec = PairRecord(k, l, target)
        devs, tail = [], []
        for j, v in _orbit_freqs(A_int, k, l, j0, j1 + 1, bit_cap):
            if skip and any(k) and not any(v):
                rec.excluded.append(j)
                continue
            val = ev(v)
            dev = _absdiff(val, target)
            rec.samples.append({"j": j, "value": val, "deviation": dev})
            devs.append(dev)
            if j >= tail_from:
                tail.append(dev)
        rec.deviation = max(devs, default=Fraction(0))
        if rec.deviation <= tol:
            rec.status = PASS
        elif tail and max(tail) <= tol:
            rec.status = INCONCLUSIVE
        else:
            rec.status = FAIL
        records.append(rec)
    return _assemble("strong", records, tol, {"window": (j0, j1), "exclude_collisions": skip})
