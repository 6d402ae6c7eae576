"""Strong independence of matrix tuples and of single matrices.

A tuple ``(B_1, ..., B_n)`` of n x n matrices is strongly independent when
``B_1 v, ..., B_n v`` are linearly independent for every nonzero ``v``;
equivalently every nonzero combination ``sum_j u_j B_j`` is invertible. A
nonzero ``B`` is strongly independent when ``(I, B, ..., B^(n-1))`` is, which
happens exactly when its characteristic polynomial is irreducible.
"""
from __future__ import annotations

import itertools
import time
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, lcm

import numpy as np

from . import _kernels
from .arith import check_prime, primes_up_to
from .errors import NonMonic, WitnessNotFound, ZeroMatrix
from .exact import (
    FpMatrix,
    RatMatrix,
    _bareiss,
    char_poly,
    kernel_vector,
    mat_det,
    poly_at_matrix,
)
from .irreducible import IrredVerdict, factor_mod_p, is_irreducible_q
from .polynomial import FpPoly, IntPoly

__all__ = [
    "CertReport",
    "ComplexWitness",
    "MatrixTuple",
    "certify_tuple_q",
    "companion",
    "find_dependency_witness_c",
    "form_residual",
    "generate_si",
    "is_si_matrix",
    "projective_reps",
    "tuple_bruteforce_fp",
]

CERTIFIED = "Certified"
FALSIFIED = "Falsified"
UNKNOWN = "Unknown"


@dataclass(frozen=True)
class MatrixTuple:
    mats: tuple

    def __init__(self, mats):
        mats = tuple(mats)
        object.__setattr__(self, "mats", mats)
        if not mats:
            raise ValueError("empty tuple")
        n = mats[0].n
        if len(mats) != n:
            raise ValueError(f"an n-tuple of n x n matrices needs {n} matrices, got {len(mats)}")
        kinds = {(type(m), getattr(m, "p", None), m.n) for m in mats}
        if len(kinds) != 1:
            raise ValueError("all matrices must share field, modulus and size")

    @property
    def n(self) -> int:
        return len(self.mats)

    @property
    def field(self) -> str:
        return "Fp" if isinstance(self.mats[0], FpMatrix) else "Q"

    @property
    def p(self) -> int | None:
        return getattr(self.mats[0], "p", None)

    def __getitem__(self, i):
        return self.mats[i]

    def __iter__(self):
        return iter(self.mats)

    def __len__(self):
        return len(self.mats)

    def combination(self, u):
        out = self.mats[0] * u[0]
        for c, B in zip(u[1:], self.mats[1:]):
            out = out + B * c
        return out

    def mod_p(self, p: int) -> "MatrixTuple":
        return MatrixTuple(m.mod_p(p) for m in self.mats)

    def scaled(self, c) -> "MatrixTuple":
        return MatrixTuple(m * c for m in self.mats)

    @classmethod
    def powers(cls, B) -> "MatrixTuple":
        """The tuple ``(I, B, ..., B^(n-1))``."""
        mats = [B.identity_like()]
        for _ in range(B.n - 1):
            mats.append(mats[-1] @ B)
        return cls(mats)

    def power_base(self):
        """``B`` when this tuple is ``(I, B, ..., B^(n-1))`` with n >= 2, else None."""
        if self.n < 2 or self.mats[0] != self.mats[0].identity_like():
            return None
        B = self.mats[1]
        acc = B
        for M in self.mats[2:]:
            acc = acc @ B
            if acc != M:
                return None
        return B


@dataclass
class CertReport:
    """Outcome of a strong-independence test.

    A ``Falsified`` report carries a witness: ``witness_kind == "u"`` means
    ``det(sum u_j B_j) = 0`` with ``u != 0``; ``"v"`` means ``v != 0`` and
    ``(v, Bv, ..., B^(n-1) v)`` is linearly dependent.
    """

    status: str
    evidence: str | None = None
    witness: tuple | None = None
    witness_kind: str | None = None
    prime: int | None = None
    verdict: IrredVerdict | None = None
    diagnostics: dict = field(default_factory=dict)
    elapsed: float = 0.0

    @property
    def certified(self) -> bool:
        return self.status == CERTIFIED

    @property
    def falsified(self) -> bool:
        return self.status == FALSIFIED


@dataclass(frozen=True)
class ComplexWitness:
    """Nonzero ``z`` in C^n with ``det[B_1 z ... B_n z]`` numerically zero."""

    z: np.ndarray
    residual: float
    restarts: int


# ---------------------------------------------------------------------------
# F_p
# ---------------------------------------------------------------------------

def projective_reps(n: int, p: int) -> np.ndarray:
    """One vector per line of F_p^n (first nonzero coordinate 1), lexicographic order."""
    blocks = []
    for lead in range(n - 1, -1, -1):
        tail = n - 1 - lead
        rest = np.array(list(itertools.product(range(p), repeat=tail)), dtype=np.int64).reshape(p**tail, tail)
        block = np.zeros((rest.shape[0], n), dtype=np.int64)
        block[:, lead] = 1
        block[:, lead + 1:] = rest
        blocks.append(block)
    return np.concatenate(blocks)


def tuple_bruteforce_fp(T: MatrixTuple, chunk: int = 1 << 15) -> CertReport:
    """Exhaustive check over F_p: every projective class of ``u`` gives an invertible combination."""
    t0 = time.perf_counter()
    if T.field != "Fp":
        raise ValueError("tuple_bruteforce_fp needs a tuple over F_p")
    p, n = T.p, T.n
    if p >= _kernels.MAX_MODULUS:
        raise ValueError("modulus too large for exhaustive enumeration")
    Bs = np.array([m.rows for m in T.mats], dtype=np.int64)
    U = projective_reps(n, p)
    for lo in range(0, U.shape[0], chunk):
        Uc = U[lo:lo + chunk]
        stack = np.zeros((Uc.shape[0], n, n), dtype=np.int64)
        for j in range(n):
            stack = (stack + Uc[:, j, None, None] * Bs[j][None, :, :] % p) % p
        dets = _kernels.det_mod_p_batch(stack, p)
        hits = np.flatnonzero(dets == 0)
        if hits.size:
            u = tuple(int(x) for x in Uc[hits[0]])
            return CertReport(FALSIFIED, witness=u, witness_kind="u",
                              diagnostics={"classes_checked": lo + int(hits[0]) + 1},
                              elapsed=time.perf_counter() - t0)
    return CertReport(CERTIFIED, evidence="ExhaustiveFp", prime=p,
                      diagnostics={"classes_checked": int(U.shape[0])},
                      elapsed=time.perf_counter() - t0)


# ---------------------------------------------------------------------------
# single matrices
# ---------------------------------------------------------------------------

def _primitive(v) -> tuple[int, ...]:
    """Scale a rational vector to coprime integers with first nonzero entry positive."""
    v = [Fraction(x) for x in v]
    m = lcm(*(x.denominator for x in v))
    ints = [(x * m).numerator for x in v]
    g = 0
    for a in ints:
        g = gcd(g, a)
    if g == 0:
        return tuple(ints)
    ints = [a // g for a in ints]
    first = next(a for a in ints if a)
    return tuple(-a for a in ints) if first < 0 else tuple(ints)


def _monic_vec(v, p: int) -> tuple[int, ...]:
    first = next(a for a in v if a % p)
    inv = pow(first, -1, p)
    return tuple(a * inv % p for a in v)


def _dependence_vector(B, g, h):
    """Nonzero ``v`` with ``g(B) v = 0`` given ``P_B = g * h``."""
    H = poly_at_matrix(h, B)
    for j in range(B.n):
        col = H.col(j)
        if any(col):
            return col
    return kernel_vector(poly_at_matrix(g, B))


def is_si_matrix(B: RatMatrix | FpMatrix) -> CertReport:
    """Decide strong independence of ``B`` through irreducibility of its characteristic polynomial.

    Over Q a rational ``B`` is first scaled to an integer matrix; ``cB`` and
    ``B`` generate the same tuple span, so the verdict is unchanged.
    """
    t0 = time.perf_counter()
    if B.is_zero():
        raise ZeroMatrix("the zero matrix is never strongly independent")
    if isinstance(B, FpMatrix):
        P = char_poly(B)
        fac = factor_mod_p(P)
        diag = {"char_poly": list(P.coeffs), "factors": [list(g.coeffs) for g in fac.factors]}
        if fac.is_irreducible:
            return CertReport(CERTIFIED, evidence="Irreducibility", prime=B.p,
                              diagnostics=diag, elapsed=time.perf_counter() - t0)
        g = fac.factors[0]
        h = FpPoly(B.p, [fac.unit])
        for f in fac.factors[1:]:
            h = h * f
        v = _monic_vec(_dependence_vector(B, g, h), B.p)
        diag["relation"] = list(g.coeffs)
        return CertReport(FALSIFIED, witness=v, witness_kind="v", prime=B.p,
                          diagnostics=diag, elapsed=time.perf_counter() - t0)

    scale = lcm(*(x.denominator for r in B.rows for x in r))
    Bz = B * scale if scale != 1 else B
    P = char_poly(Bz)
    verdict = is_irreducible_q(P)
    diag = {"char_poly": [str(c) for c in P.coeffs], "method": verdict.method}
    if scale != 1:
        diag["scaled_by"] = scale
    if verdict.irreducible:
        return CertReport(CERTIFIED, evidence="Irreducibility", verdict=verdict,
                          prime=verdict.prime, diagnostics=diag,
                          elapsed=time.perf_counter() - t0)
    g, h = verdict.witness
    v = _primitive(_dependence_vector(Bz, g, h))
    diag["relation"] = [str(c) for c in g.coeffs]
    return CertReport(FALSIFIED, witness=v, witness_kind="v", verdict=verdict,
                      diagnostics=diag, elapsed=time.perf_counter() - t0)


# ---------------------------------------------------------------------------
# tuples over Q
# ---------------------------------------------------------------------------

def _ordered_ints(R: int) -> list[int]:
    out = [0]
    for k in range(1, R + 1):
        out += [k, -k]
    return out


def primitive_vectors(n: int, R: int):
    """Primitive integer vectors with max-norm <= R, first nonzero positive.

    Ordered by max-norm, then lexicographically under 0 < 1 < -1 < 2 < -2 < ...
    """
    order = _ordered_ints(R)
    key = {v: i for i, v in enumerate(order)}
    vecs = []
    for u in itertools.product(order, repeat=n):
        nz = [a for a in u if a]
        if not nz or nz[0] < 0:
            continue
        g = 0
        for a in nz:
            g = gcd(g, a)
        if g != 1:
            continue
        vecs.append(u)
    vecs.sort(key=lambda u: (max(abs(a) for a in u), [key[a] for a in u]))
    return vecs


def _int_det(T_int: list[list[list[int]]], u) -> int:
    n = len(T_int)
    rows = [[sum(u[j] * T_int[j][r][c] for j in range(n)) for c in range(n)] for r in range(n)]
    return _bareiss(rows)


def certify_tuple_q(
    T: MatrixTuple,
    prime_budget: list[int] | None = None,
    search_radius: int = 3,
) -> CertReport:
    """Three-phase strong-independence test for an integer tuple.

    (a) search primitive ``u`` with ``|u|_inf <= search_radius`` for a singular
    combination; (b) try each prime in the budget for an exhaustive mod-p
    certificate (a nonzero rational ``u`` scales to a primitive integer vector
    whose reduction is nonzero, so invertibility mod p lifts to Q); (c) when
    the tuple is ``(I, B, ..., B^(n-1))`` decide completely through ``B``'s
    characteristic polynomial. Otherwise the answer is Unknown.
    """
    t0 = time.perf_counter()
    if T.field != "Q" or not all(m.is_integer() for m in T.mats):
        raise ValueError("certify_tuple_q needs integer matrices")
    primes = primes_up_to(50) if prime_budget is None else [check_prime(p) for p in prime_budget]
    T_int = [m.int_rows() for m in T.mats]
    checked = 0
    for u in primitive_vectors(T.n, search_radius):
        checked += 1
        if _int_det(T_int, u) == 0:
            return CertReport(FALSIFIED, witness=u, witness_kind="u",
                              diagnostics={"phase": "search", "vectors_checked": checked},
                              elapsed=time.perf_counter() - t0)
    for p in primes:
        rep = tuple_bruteforce_fp(T.mod_p(p))
        if rep.certified:
            return CertReport(CERTIFIED, evidence="ModPReduction", prime=p,
                              diagnostics={"phase": "mod_p", "vectors_checked": checked,
                                           "classes_checked": rep.diagnostics["classes_checked"]},
                              elapsed=time.perf_counter() - t0)
    B = T.power_base()
    if B is not None:
        rep = is_si_matrix(B)
        if rep.certified:
            rep.diagnostics["phase"] = "power_tuple"
            rep.elapsed = time.perf_counter() - t0
            return rep
        g = rep.verdict.witness[0]
        u = _primitive([g[i] for i in range(T.n)])
        assert _int_det(T_int, u) == 0
        return CertReport(FALSIFIED, witness=u, witness_kind="u", verdict=rep.verdict,
                          diagnostics={"phase": "power_tuple", "relation": rep.diagnostics["relation"]},
                          elapsed=time.perf_counter() - t0)
    return CertReport(UNKNOWN, diagnostics={"phase": "exhausted", "vectors_checked": checked,
                                            "primes_tried": primes},
                      elapsed=time.perf_counter() - t0)


# ---------------------------------------------------------------------------
# constructions
# ---------------------------------------------------------------------------

def companion(f: IntPoly) -> RatMatrix:
    """Companion matrix with subdiagonal ones and last column ``(-a_n, ..., -a_1)``
    for ``f = t^n + a_1 t^(n-1) + ... + a_n``; its characteristic polynomial is ``f``."""
    if not f.is_monic():
        raise NonMonic(f"{f} is not monic")
    n = f.degree
    if n < 1:
        raise ValueError("companion matrix needs degree >= 1")
    rows = [[0] * n for _ in range(n)]
    for i in range(n):
        if i >= 1:
            rows[i][i - 1] = 1
        rows[i][n - 1] = -f[i]
    return RatMatrix(rows)


def generate_si(n: int, p: int) -> RatMatrix:
    """``companion(t^n + p)``: strongly independent over Q by Eisenstein at ``p``."""
    check_prime(p)
    if n < 1:
        raise ValueError("n must be >= 1")
    return companion(IntPoly([p] + [0] * (n - 1) + [1]))


# ---------------------------------------------------------------------------
# numeric witness over C
# ---------------------------------------------------------------------------

def _as_complex(T: MatrixTuple) -> list[np.ndarray]:
    if T.field != "Q":
        raise ValueError("complex witnesses need a tuple over Q")
    return [np.array([[float(x) for x in r] for r in m.rows], dtype=complex) for m in T.mats]


def form_residual(T: MatrixTuple, z) -> float:
    """``|det[B_1 z ... B_n z]|`` divided by ``prod_j |B_j|_F |z|_2`` (Hadamard scale)."""
    Bs = _as_complex(T)
    return _residual(Bs, np.asarray(z, dtype=complex))


def _residual(Bs: list[np.ndarray], z: np.ndarray) -> float:
    scale = 1.0
    nz = float(np.linalg.norm(z))
    for B in Bs:
        scale *= float(np.linalg.norm(B)) * nz
    if scale == 0.0:
        return 0.0
    val = np.linalg.det(np.column_stack([B @ z for B in Bs]))
    return float(abs(val)) / scale


def _restricted_form(T: MatrixTuple, a, b) -> list[Fraction]:
    """Exact coefficients of ``s -> det[B_j (s a + b)]``, lowest first."""
    n = T.n
    xs = list(range(n + 1))
    ys = []
    for s in xs:
        z = [s * ai + bi for ai, bi in zip(a, b)]
        cols = [m.mat_vec(z) for m in T.mats]
        ys.append(mat_det(RatMatrix([[cols[j][i] for j in range(n)] for i in range(n)])))
    out = [Fraction(0)] * (n + 1)
    for i, (xi, yi) in enumerate(zip(xs, ys)):
        if not yi:
            continue
        basis = IntPoly([1])
        denom = Fraction(1)
        for j, xj in enumerate(xs):
            if j != i:
                basis = basis * IntPoly([-xj, 1])
                denom *= xi - xj
        for e, c in enumerate(basis.coeffs):
            out[e] += yi * c / denom
    return out


def _durand_kerner(coeffs: list[complex], iters: int = 200):
    """All roots of ``sum coeffs[k] s^k`` simultaneously; returns (roots, converged)."""
    c = np.array(coeffs[::-1], dtype=complex)
    c = c / c[0]
    deg = len(c) - 1
    radius = 1.0 + float(np.max(np.abs(c[1:])))
    roots = radius * (0.4 + 0.9j) ** np.arange(deg)
    converged = False
    for _ in range(iters):
        vals = np.polyval(c, roots)
        diff = roots[:, None] - roots[None, :]
        np.fill_diagonal(diff, 1.0)
        denom = np.prod(diff, axis=1)
        denom[denom == 0] = 1e-300
        step = vals / denom
        roots = roots - step
        if np.all(np.abs(step) <= 1e-15 * np.maximum(1.0, np.abs(roots))):
            converged = True
            break
    return roots, converged


def _polish(c: np.ndarray, s: complex, steps: int = 8) -> complex:
    dc = np.polyder(c)
    for _ in range(steps):
        d = np.polyval(dc, s)
        if d == 0:
            break
        s = s - np.polyval(c, s) / d
    return s


def _normalize(z: np.ndarray) -> np.ndarray:
    mags = np.abs(z)
    top = mags.max()
    idx = int(np.flatnonzero(mags >= top * (1 - 1e-9))[0])
    return z / z[idx]


def find_dependency_witness_c(
    T: MatrixTuple,
    tol: float = 1e-8,
    max_restarts: int = 20,
    seed: int = 0,
) -> ComplexWitness:
    """Find ``z != 0`` in C^n making ``B_1 z, ..., B_n z`` linearly dependent.

    The degree-n form ``f(z) = det[B_1 z ... B_n z]`` is restricted exactly to
    a random integer plane ``z = s a + b`` and the resulting univariate
    polynomial is solved by Durand-Kerner. If ``f(a) = 0`` (in particular when
    the restriction vanishes identically) ``a`` itself is returned. The
    result is scaled so its first maximal coordinate is exactly 1.
    """
    n = T.n
    if n < 2:
        raise ValueError("complex witnesses exist only for n >= 2")
    Bs = _as_complex(T)
    rng = np.random.default_rng(seed)
    for attempt in range(max_restarts + 1):
        while True:
            a = [int(x) for x in rng.integers(-3, 4, size=n)]
            b = [int(x) for x in rng.integers(-3, 4, size=n)]
            if np.linalg.matrix_rank(np.array([a, b], dtype=float)) == 2:
                break
        coeffs = _restricted_form(T, a, b)
        if coeffs[n] == 0:
            z = np.array(a, dtype=complex)
            return ComplexWitness(_normalize(z), _residual(Bs, z), attempt)
        roots, _ = _durand_kerner([complex(c) for c in coeffs])
        c = np.array([complex(x) for x in coeffs[::-1]])
        av, bv = np.array(a, dtype=complex), np.array(b, dtype=complex)
        best = None
        for s in roots:
            for cand in (s, _polish(c, s)):
                z = cand * av + bv
                r = _residual(Bs, z)
                if best is None or r < best[0]:
                    best = (r, z)
        if best is not None and best[0] <= tol:
            z = _normalize(best[1])
            return ComplexWitness(z, _residual(Bs, z), attempt)
    raise WitnessNotFound(f"no witness with residual <= {tol} after {max_restarts} restarts")
