"""Dense univariate polynomials over Q and over F_p.

Coefficients are stored lowest degree first with no trailing zeros, so the
zero polynomial is the empty tuple and ``degree`` is ``-1`` for it.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

from .arith import Fp, as_fraction, check_prime
from .errors import NonIntegerCoefficients

__all__ = ["IntPoly", "FpPoly"]


def _strip(coeffs: list) -> tuple:
    while coeffs and not coeffs[-1]:
        coeffs.pop()
    return tuple(coeffs)


def _fmt_terms(coeffs: Sequence, var: str = "t") -> str:
    terms = []
    for e in range(len(coeffs) - 1, -1, -1):
        c = coeffs[e]
        if not c:
            continue
        neg = c < 0
        a = -c if neg else c
        if e == 0:
            body = str(a)
        else:
            mono = var if e == 1 else f"{var}^{e}"
            body = mono if a == 1 else f"{a}*{mono}"
        if not terms:
            terms.append(f"-{body}" if neg else body)
        else:
            terms.append(f"- {body}" if neg else f"+ {body}")
    return " ".join(terms) if terms else "0"


class IntPoly:
    """Polynomial with exact rational coefficients (integers as a special case)."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        self.coeffs: tuple[Fraction, ...] = _strip([as_fraction(c) for c in coeffs])

    @classmethod
    def monomial(cls, c, e: int) -> "IntPoly":
        return cls([0] * e + [c])

    @classmethod
    def linear_root(cls, r) -> "IntPoly":
        """The monic ``t - r``."""
        return cls([-as_fraction(r), 1])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def lc(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == 1

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.coeffs)

    def int_coeffs(self) -> list[int]:
        if not self.is_integral():
            raise NonIntegerCoefficients(f"{self} has non-integer coefficients")
        return [c.numerator for c in self.coeffs]

    def __getitem__(self, e: int) -> Fraction:
        return self.coeffs[e] if 0 <= e < len(self.coeffs) else Fraction(0)

    def _coerce(self, other) -> "IntPoly":
        if isinstance(other, IntPoly):
            return other
        if isinstance(other, (int, Fraction)):
            return IntPoly([other])
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        n = max(len(self.coeffs), len(other.coeffs))
        return IntPoly([self[i] + other[i] for i in range(n)])

    __radd__ = __add__

    def __neg__(self):
        return IntPoly([-c for c in self.coeffs])

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if not self.coeffs or not other.coeffs:
            return IntPoly()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return IntPoly(out)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        out, base = IntPoly([1]), self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def __divmod__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dd, lc = other.degree, other.lc
        if len(rem) - 1 < dd:
            return IntPoly(), IntPoly(rem)
        quo = [Fraction(0)] * (len(rem) - dd)
        for i in range(len(rem) - 1 - dd, -1, -1):
            q = rem[i + dd] / lc
            quo[i] = q
            if q:
                for j, b in enumerate(other.coeffs):
                    rem[i + j] -= q * b
        return IntPoly(quo), IntPoly(rem[:dd])

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def __call__(self, x):
        """Horner evaluation; ``x`` may be any ring element closed under + and *."""
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def mod_p(self, p: int) -> "FpPoly":
        return FpPoly(p, self.int_coeffs())

    def __eq__(self, other):
        if isinstance(other, IntPoly):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs == IntPoly([other]).coeffs
        return NotImplemented

    def __hash__(self):
        return hash(("IntPoly", self.coeffs))

    def __repr__(self):
        return f"IntPoly({[str(c) for c in self.coeffs]})"

    def __str__(self):
        return _fmt_terms(self.coeffs)


class FpPoly:
    """Polynomial over the prime field F_p, coefficients as ints in ``[0, p)``."""

    __slots__ = ("p", "coeffs")

    def __init__(self, p: int, coeffs: Iterable = ()):
        check_prime(p)
        self.p = p
        self.coeffs: tuple[int, ...] = _strip([int(c) % p for c in coeffs])

    @classmethod
    def _raw(cls, p: int, coeffs: list) -> "FpPoly":
        obj = object.__new__(cls)
        obj.p = p
        obj.coeffs = _strip(coeffs)
        return obj

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def lc(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == 1

    def monic(self) -> "FpPoly":
        if not self.coeffs:
            return self
        inv = pow(self.lc, -1, self.p)
        return FpPoly._raw(self.p, [c * inv % self.p for c in self.coeffs])

    def scalars(self) -> list[Fp]:
        return [Fp(c, self.p) for c in self.coeffs]

    def __getitem__(self, e: int) -> int:
        return self.coeffs[e] if 0 <= e < len(self.coeffs) else 0

    def _coerce(self, other) -> "FpPoly":
        if isinstance(other, FpPoly):
            if other.p != self.p:
                raise ValueError(f"moduli differ: {self.p} vs {other.p}")
            return other
        if isinstance(other, int):
            return FpPoly._raw(self.p, [other % self.p])
        if isinstance(other, Fp):
            if other.p != self.p:
                raise ValueError(f"moduli differ: {self.p} vs {other.p}")
            return FpPoly._raw(self.p, [other.v])
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        n = max(len(self.coeffs), len(other.coeffs))
        return FpPoly._raw(self.p, [(self[i] + other[i]) % self.p for i in range(n)])

    __radd__ = __add__

    def __neg__(self):
        return FpPoly._raw(self.p, [-c % self.p for c in self.coeffs])

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if not self.coeffs or not other.coeffs:
            return FpPoly._raw(self.p, [])
        p = self.p
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return FpPoly._raw(p, [c % p for c in out])

    __rmul__ = __mul__

    def __divmod__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        p = self.p
        rem = list(self.coeffs)
        dd = other.degree
        if len(rem) - 1 < dd:
            return FpPoly._raw(p, []), FpPoly._raw(p, rem)
        inv = pow(other.lc, -1, p)
        quo = [0] * (len(rem) - dd)
        for i in range(len(rem) - 1 - dd, -1, -1):
            q = rem[i + dd] * inv % p
            quo[i] = q
            if q:
                for j, b in enumerate(other.coeffs):
                    rem[i + j] = (rem[i + j] - q * b) % p
        return FpPoly._raw(p, quo), FpPoly._raw(p, rem[:dd])

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def pow_mod(self, e: int, modulus: "FpPoly") -> "FpPoly":
        out = FpPoly._raw(self.p, [1]) % modulus
        base = self % modulus
        while e:
            if e & 1:
                out = (out * base) % modulus
            base = (base * base) % modulus
            e >>= 1
        return out

    def gcd(self, other: "FpPoly") -> "FpPoly":
        a, b = self, self._coerce(other)
        while not b.is_zero():
            a, b = b, a % b
        return a.monic()

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        if isinstance(acc, int):
            return acc % self.p
        return acc

    def __eq__(self, other):
        if isinstance(other, FpPoly):
            return self.p == other.p and self.coeffs == other.coeffs
        return NotImplemented

    def __lt__(self, other: "FpPoly") -> bool:
        return (self.degree, self.coeffs[::-1]) < (other.degree, other.coeffs[::-1])

    def __hash__(self):
        return hash(("FpPoly", self.p, self.coeffs))

    def __repr__(self):
        return f"FpPoly({self.p}, {list(self.coeffs)})"

    def __str__(self):
        return f"{_fmt_terms(self.coeffs)} (mod {self.p})"
