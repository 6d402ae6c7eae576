"""Exact dense square matrices over Q and F_p.

Determinants use fraction-free Bareiss elimination (over Z after clearing
denominators), inverses use Gauss-Jordan over Q, and characteristic
polynomials use Faddeev-LeVerrier. Over F_p with ``p <= n`` the
Faddeev-LeVerrier divisions by ``k`` are not available, so the determinant
of ``tI - M`` is taken by Bareiss elimination with F_p[t] entries instead.
"""
from __future__ import annotations

from fractions import Fraction
from math import lcm
from typing import Iterable, Sequence

from .arith import Fp, as_fraction, check_prime
from .errors import DimensionMismatch, SingularMatrix
from .polynomial import FpPoly, IntPoly

__all__ = [
    "FpMatrix",
    "RatMatrix",
    "char_poly",
    "kernel_vector",
    "mat_det",
    "mat_inverse",
    "poly_at_matrix",
]


class _SquareMatrix:
    __slots__ = ("rows",)

    def _norm(self, x):
        raise NotImplementedError

    def _like(self, rows):
        raise NotImplementedError

    def _check_rows(self, rows) -> tuple:
        rows = tuple(tuple(self._norm(x) for x in r) for r in rows)
        n = len(rows)
        if n == 0:
            raise ValueError("matrices must be at least 1x1")
        if any(len(r) != n for r in rows):
            raise DimensionMismatch("matrix must be square")
        return rows

    @property
    def n(self) -> int:
        return len(self.rows)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def row(self, i: int) -> tuple:
        return self.rows[i]

    def col(self, j: int) -> tuple:
        return tuple(r[j] for r in self.rows)

    def transpose(self):
        return self._like(zip(*self.rows))

    def is_zero(self) -> bool:
        return not any(x for r in self.rows for x in r)

    def _same_shape(self, other):
        if type(other) is not type(self) or other.n != self.n:
            raise DimensionMismatch(f"incompatible matrices: {self!r} vs {other!r}")
        if getattr(self, "p", None) != getattr(other, "p", None):
            raise DimensionMismatch("matrices live over different fields")

    def __add__(self, other):
        if not isinstance(other, _SquareMatrix):
            return NotImplemented
        self._same_shape(other)
        return self._like([[a + b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def __sub__(self, other):
        if not isinstance(other, _SquareMatrix):
            return NotImplemented
        self._same_shape(other)
        return self._like([[a - b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def __neg__(self):
        return self._like([[-a for a in r] for r in self.rows])

    def __mul__(self, c):
        if isinstance(c, _SquareMatrix):
            return NotImplemented
        c = self._norm(c)
        return self._like([[c * a for a in r] for r in self.rows])

    __rmul__ = __mul__

    def __matmul__(self, other):
        if not isinstance(other, _SquareMatrix):
            return NotImplemented
        self._same_shape(other)
        cols = list(zip(*other.rows))
        return self._like([[sum((a * b for a, b in zip(r, c)), self._norm(0)) for c in cols]
                           for r in self.rows])

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative powers: use mat_inverse")
        out = self.identity_like()
        base = self
        while e:
            if e & 1:
                out = out @ base
            base = base @ base
            e >>= 1
        return out

    def identity_like(self):
        one, zero = self._norm(1), self._norm(0)
        return self._like([[one if i == j else zero for j in range(self.n)] for i in range(self.n)])

    def mat_vec(self, v: Sequence) -> tuple:
        """``M v`` for a column vector ``v``."""
        if len(v) != self.n:
            raise DimensionMismatch(f"vector of length {len(v)} vs n={self.n}")
        v = [self._norm(x) for x in v]
        return tuple(sum((a * b for a, b in zip(r, v)), self._norm(0)) for r in self.rows)

    def vec_mat(self, x: Sequence) -> tuple:
        """``x M`` for a row vector ``x``."""
        if len(x) != self.n:
            raise DimensionMismatch(f"vector of length {len(x)} vs n={self.n}")
        x = [self._norm(a) for a in x]
        return tuple(sum((xi * self.rows[i][j] for i, xi in enumerate(x)), self._norm(0))
                     for j in range(self.n))

    def trace(self):
        return sum((self.rows[i][i] for i in range(self.n)), self._norm(0))

    def __eq__(self, other):
        if type(other) is not type(self):
            return NotImplemented
        return getattr(self, "p", None) == getattr(other, "p", None) and self.rows == other.rows

    def __hash__(self):
        return hash((type(self).__name__, getattr(self, "p", None), self.rows))


class RatMatrix(_SquareMatrix):
    """n x n matrix of exact rationals; integer matrices have all denominators 1."""

    __slots__ = ()

    def __init__(self, rows: Iterable[Iterable]):
        self.rows = self._check_rows(rows)

    def _norm(self, x):
        return as_fraction(x)

    def _like(self, rows):
        return RatMatrix(rows)

    @classmethod
    def identity(cls, n: int) -> "RatMatrix":
        return cls([[int(i == j) for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, n: int) -> "RatMatrix":
        return cls([[0] * n for _ in range(n)])

    @classmethod
    def diag(cls, values: Sequence) -> "RatMatrix":
        n = len(values)
        return cls([[values[i] if i == j else 0 for j in range(n)] for i in range(n)])

    def is_integer(self) -> bool:
        return all(x.denominator == 1 for r in self.rows for x in r)

    def int_rows(self) -> list[list[int]]:
        if not self.is_integer():
            raise ValueError("matrix has non-integer entries")
        return [[x.numerator for x in r] for r in self.rows]

    def mod_p(self, p: int) -> "FpMatrix":
        """Reduce mod ``p``; denominators must be invertible mod ``p``."""
        check_prime(p)
        out = []
        for r in self.rows:
            row = []
            for x in r:
                if x.denominator % p == 0:
                    raise ZeroDivisionError(f"denominator of {x} vanishes mod {p}")
                row.append(x.numerator * pow(x.denominator, -1, p))
            out.append(row)
        return FpMatrix(p, out)

    def __repr__(self):
        return f"RatMatrix({[[str(x) for x in r] for r in self.rows]})"


class FpMatrix(_SquareMatrix):
    """n x n matrix over F_p stored as ints in ``[0, p)``."""

    __slots__ = ("p",)

    def __init__(self, p: int, rows: Iterable[Iterable]):
        self.p = check_prime(p)
        self.rows = self._check_rows(rows)

    def _norm(self, x):
        if isinstance(x, Fp):
            if x.p != self.p:
                raise ValueError(f"moduli differ: {x.p} vs {self.p}")
            return x.v
        return int(x) % self.p

    def _like(self, rows):
        return FpMatrix(self.p, rows)

    @classmethod
    def identity(cls, n: int, p: int) -> "FpMatrix":
        return cls(p, [[int(i == j) for j in range(n)] for i in range(n)])

    def __repr__(self):
        return f"FpMatrix({self.p}, {[list(r) for r in self.rows]})"


def _bareiss(a: list[list]):
    """Fraction-free determinant over an integral domain whose ``//`` is exact division."""
    n = len(a)
    a = [r[:] for r in a]
    sign, prev = 1, 1
    for k in range(n - 1):
        if not a[k][k]:
            for r in range(k + 1, n):
                if a[r][k]:
                    a[k], a[r] = a[r], a[k]
                    sign = -sign
                    break
            else:
                return 0 * a[0][0]
        akk = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * akk - aik * a[k][j]) // prev
        prev = akk
    return sign * a[n - 1][n - 1]


def _det_mod_p(rows: Sequence[Sequence[int]], p: int) -> int:
    a = [list(r) for r in rows]
    n = len(a)
    det = 1
    for c in range(n):
        piv = next((r for r in range(c, n) if a[r][c] % p), None)
        if piv is None:
            return 0
        if piv != c:
            a[c], a[piv] = a[piv], a[c]
            det = -det
        pv = a[c][c] % p
        det = det * pv % p
        inv = pow(pv, -1, p)
        for r in range(c + 1, n):
            f = a[r][c] * inv % p
            if f:
                a[r] = [(x - f * y) % p for x, y in zip(a[r], a[c])]
    return det % p


def mat_det(M: RatMatrix | FpMatrix) -> Fraction | Fp:
    if isinstance(M, FpMatrix):
        return Fp(_det_mod_p(M.rows, M.p), M.p)
    scale = lcm(*(x.denominator for r in M.rows for x in r))
    ints = [[(x * scale).numerator for x in r] for r in M.rows]
    return Fraction(_bareiss(ints), scale**M.n)


def mat_inverse(M: RatMatrix) -> RatMatrix:
    n = M.n
    a = [list(r) + [Fraction(int(i == j)) for j in range(n)] for i, r in enumerate(M.rows)]
    for c in range(n):
        piv = next((r for r in range(c, n) if a[r][c]), None)
        if piv is None:
            raise SingularMatrix("matrix is singular (det = 0)")
        a[c], a[piv] = a[piv], a[c]
        inv = 1 / a[c][c]
        a[c] = [x * inv for x in a[c]]
        for r in range(n):
            if r != c and a[r][c]:
                f = a[r][c]
                a[r] = [x - f * y for x, y in zip(a[r], a[c])]
    return RatMatrix([r[n:] for r in a])


def char_poly(M: RatMatrix | FpMatrix) -> IntPoly | FpPoly:
    """Coefficients of ``det(tI - M)``, lowest degree first."""
    n = M.n
    if isinstance(M, FpMatrix) and M.p <= n:
        p = M.p
        entries = [[FpPoly(p, [-M[i, j], int(i == j)]) for j in range(n)] for i in range(n)]
        return _bareiss(entries)
    # Faddeev-LeVerrier: M_k = A M_{k-1} + c_{n-k+1} I,  c_{n-k} = -tr(A M_k) / k
    I = M.identity_like()
    c = [None] * (n + 1)
    c[n] = M._norm(1)
    Mk = I * 0
    for k in range(1, n + 1):
        Mk = M @ Mk + I * c[n - k + 1]
        tr = (M @ Mk).trace()
        if isinstance(M, FpMatrix):
            c[n - k] = -tr * pow(k, -1, M.p) % M.p
        else:
            c[n - k] = -tr / k
    if isinstance(M, FpMatrix):
        return FpPoly(M.p, c)
    return IntPoly(c)


def poly_at_matrix(f: IntPoly | FpPoly, M: RatMatrix | FpMatrix):
    """Horner evaluation of ``f`` at the matrix ``M``."""
    I = M.identity_like()
    acc = I * 0
    for c in reversed(f.coeffs):
        acc = acc @ M + I * c
    return acc


def kernel_vector(M: RatMatrix | FpMatrix) -> tuple | None:
    """A nonzero ``v`` with ``M v = 0`` by exact row reduction, or None if M is invertible."""
    n = M.n
    if isinstance(M, FpMatrix):
        p = M.p
        norm = lambda x: x % p  # noqa: E731
        inv = lambda x: pow(x, -1, p)  # noqa: E731
    else:
        norm = lambda x: x  # noqa: E731
        inv = lambda x: 1 / x  # noqa: E731
    a = [list(r) for r in M.rows]
    pivots: list[int] = []
    r = 0
    for c in range(n):
        piv = next((i for i in range(r, n) if norm(a[i][c])), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        s = inv(a[r][c])
        a[r] = [norm(x * s) for x in a[r]]
        for i in range(n):
            if i != r and norm(a[i][c]):
                f = a[i][c]
                a[i] = [norm(x - f * y) for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
    free = next((c for c in range(n) if c not in pivots), None)
    if free is None:
        return None
    v = [M._norm(0)] * n
    v[free] = M._norm(1)
    for row, pc in enumerate(pivots):
        v[pc] = norm(-a[row][free])
    return tuple(v)
