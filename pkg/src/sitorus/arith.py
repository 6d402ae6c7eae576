"""Scalar arithmetic: primes, divisors and prime-field residues.

Integers are plain Python ``int`` and rationals are ``fractions.Fraction``;
both are exact and arbitrary precision already.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import isqrt

from .errors import NotPrime

__all__ = [
    "Fp",
    "as_fraction",
    "check_prime",
    "divisors",
    "is_prime",
    "parse_rational",
    "primes_up_to",
]


@lru_cache(maxsize=4096)
def is_prime(p: int) -> bool:
    """Trial division up to isqrt(p)."""
    if p < 2:
        return False
    if p < 4:
        return True
    if p % 2 == 0:
        return False
    for d in range(3, isqrt(p) + 1, 2):
        if p % d == 0:
            return False
    return True


def check_prime(p: int) -> int:
    if not isinstance(p, int) or isinstance(p, bool) or not is_prime(p):
        raise NotPrime(f"{p!r} is not a prime")
    return p


def primes_up_to(bound: int) -> list[int]:
    return [q for q in range(2, bound + 1) if is_prime(q)]


def divisors(m: int) -> list[int]:
    """Positive divisors of |m| in increasing order; ``m`` must be nonzero."""
    m = abs(m)
    if m == 0:
        raise ValueError("divisors of 0 are unbounded")
    small, large = [], []
    for d in range(1, isqrt(m) + 1):
        if m % d == 0:
            small.append(d)
            if d != m // d:
                large.append(m // d)
    return small + large[::-1]


def parse_rational(text) -> Fraction:
    """Parse ``"a"`` or ``"a/b"`` (also accepts int/Fraction). Floats are refused."""
    if isinstance(text, bool):
        raise ValueError("booleans are not rationals")
    if isinstance(text, (int, Fraction)):
        return Fraction(text)
    if not isinstance(text, str):
        raise ValueError(f"expected a decimal string, got {type(text).__name__}")
    s = text.strip()
    num, sep, den = s.partition("/")
    try:
        if sep:
            return Fraction(int(num), int(den))
        return Fraction(int(num))
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"not an exact rational: {text!r}") from exc


def as_fraction(x) -> Fraction:
    if isinstance(x, float):
        raise TypeError("floats are not accepted where exact values are required")
    return Fraction(x)


class Fp:
    """Residue ``v`` modulo a prime ``p``, normalized to ``0 <= v < p``."""

    __slots__ = ("p", "v")

    def __init__(self, v: int, p: int):
        check_prime(p)
        self.p = p
        self.v = int(v) % p

    def _other(self, other) -> int:
        if isinstance(other, Fp):
            if other.p != self.p:
                raise ValueError(f"moduli differ: {self.p} vs {other.p}")
            return other.v
        if isinstance(other, int):
            return other
        return NotImplemented

    def __add__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else Fp(self.v + o, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else Fp(self.v - o, self.p)

    def __rsub__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else Fp(o - self.v, self.p)

    def __mul__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else Fp(self.v * o, self.p)

    __rmul__ = __mul__

    def __neg__(self):
        return Fp(-self.v, self.p)

    def inverse(self) -> "Fp":
        if self.v == 0:
            raise ZeroDivisionError("0 has no inverse mod p")
        return Fp(pow(self.v, -1, self.p), self.p)

    def __truediv__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return NotImplemented
        return self * Fp(o, self.p).inverse()

    def __eq__(self, other):
        if isinstance(other, Fp):
            return self.p == other.p and self.v == other.v
        if isinstance(other, int):
            return self.v == other % self.p
        return NotImplemented

    def __hash__(self):
        return hash((self.v, self.p))

    def __bool__(self):
        return self.v != 0

    def __int__(self):
        return self.v

    def __repr__(self):
        return f"Fp({self.v}, {self.p})"
