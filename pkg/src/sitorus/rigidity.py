"""Support constraints from unit Fourier coefficients, the finite candidate set
for measures with ``mu^(B_i k) = 1`` for all i, an audit harness for the
rigidity hypotheses, and the commuting generator set built from one strongly
independent matrix.

If ``mu^(k) = 1`` then ``mu`` lives on ``{x : <x, k> in Z}``. Imposing this for
every column of ``L = [B_1 k | ... | B_n k]`` means ``x L`` is an integer
vector, so ``x = w L^-1`` with ``w`` integral; the box ``|w_i| <= M``,
``M = sum |L_ij|``, reaches every class mod Z^n.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from . import _kernels
from .criteria import (
    CANONICAL,
    CriterionReport,
    DensityEstimate,
    DensitySet,
    FolnerFamily,
    default_pairs,
    ergodic_criterion,
    strong_mixing_criterion,
    upper_density,
    weak_mixing_criterion,
)
from .errors import EnumerationBudget, NotStronglyIndependent, SingularL
from .exact import RatMatrix, mat_det, mat_inverse
from .strong import CertReport, MatrixTuple, certify_tuple_q, is_si_matrix
from .torus import Atomic, Lebesgue, TorusMeasure, TorusPoint, is_invariant

__all__ = [
    "AuditReport",
    "RigidityCase",
    "SupportConstraint",
    "constraint_holds",
    "filter_support",
    "finite_support_enumerate",
    "rigidity_audit",
    "semigroup_generate",
]

ENUM_CAP = 10**7


@dataclass(frozen=True)
class SupportConstraint:
    """The closed subgroup ``{x : <x, k> in Z}`` of the torus."""

    k: tuple[int, ...]

    def __init__(self, k: Sequence[int]):
        object.__setattr__(self, "k", tuple(int(x) for x in k))

    @property
    def trivial(self) -> bool:
        return not any(self.k)


def constraint_holds(c: SupportConstraint, x: TorusPoint) -> bool:
    return x.pair(c.k) == 0


def _support_matrix(T: MatrixTuple, k: Sequence[int]) -> RatMatrix:
    cols = [B.mat_vec(k) for B in T.mats]
    return RatMatrix([[cols[j][i] for j in range(T.n)] for i in range(T.n)])


def _enumerate_exact(L: RatMatrix, M: int, D: int) -> list[TorusPoint]:
    Linv = mat_inverse(L)
    n = L.n
    out = set()
    for idx in range((2 * M + 1) ** n):
        w = []
        for _ in range(n):
            idx, r = divmod(idx, 2 * M + 1)
            w.append(r - M)
        out.add(TorusPoint(Linv.vec_mat(w)))
    return sorted(out)


def finite_support_enumerate(T: MatrixTuple, k: Sequence[int], cap: int = ENUM_CAP) -> list[TorusPoint]:
    """All classes ``w L^-1 mod Z^n`` for integer ``w`` in ``[-M, M]^n``, sorted canonically.

    Raises SingularL when ``L`` is singular (the tuple is then not strongly
    independent, witnessed by ``k``) and EnumerationBudget when the box holds
    more than ``cap`` vectors.
    """
    k = tuple(int(x) for x in k)
    if len(k) != T.n:
        raise ValueError(f"frequency of length {len(k)} vs n={T.n}")
    if not any(k):
        raise ValueError("k must be nonzero")
    if T.field != "Q" or not all(B.is_integer() for B in T.mats):
        raise ValueError("the tuple must consist of integer matrices")
    L = _support_matrix(T, k)
    det = int(mat_det(L))
    if det == 0:
        raise SingularL(f"L = [B_i k] is singular for k={list(k)}")
    M = sum(abs(int(x)) for row in L.rows for x in row)
    total = (2 * M + 1) ** T.n
    if total > cap:
        raise EnumerationBudget(f"(2M+1)^n = {total} exceeds the enumeration cap {cap}")
    adj = mat_inverse(L) * det
    sign = 1 if det > 0 else -1
    D = abs(det)
    try:
        res = _kernels.box_residues(np.array(adj.int_rows(), dtype=np.int64) * sign, D, M)
    except OverflowError:
        return _enumerate_exact(L, M, D)
    return [TorusPoint([Fraction(int(r), D) for r in row]) for row in res]


def filter_support(T: MatrixTuple, k: Sequence[int], points: Sequence[TorusPoint]) -> list[TorusPoint]:
    """Points satisfying ``<x, B_i k> in Z`` for every i."""
    cons = [SupportConstraint(B.mat_vec(k)) for B in T.mats]
    return [x for x in points if all(constraint_holds(c, x) for c in cons)]


def semigroup_generate(B: RatMatrix, j_max: int, include_identity_power: bool = True) -> list[RatMatrix]:
    """Generators ``B`` and ``B^j + B^i`` (``0 <= i <= n-1``, ``1 <= j <= j_max``), duplicates removed.

    With ``include_identity_power=False`` the ``i = 0`` terms ``B^j + I`` are left out.
    All generators are polynomials in ``B`` and so commute.
    """
    if not B.is_integer():
        raise ValueError("B must be an integer matrix")
    if j_max < 1:
        raise ValueError("j_max must be >= 1")
    rep = is_si_matrix(B)
    if not rep.certified:
        raise NotStronglyIndependent(f"B is not strongly independent (witness v={list(rep.witness)})")
    n = B.n
    powers = [B.identity_like()]
    for _ in range(max(n - 1, j_max)):
        powers.append(powers[-1] @ B)
    out = [B]
    seen = {B}
    for j in range(1, j_max + 1):
        for i in range(0 if include_identity_power else 1, n):
            G = powers[j] + powers[i]
            if G not in seen:
                seen.add(G)
                out.append(G)
    return out


# ---------------------------------------------------------------------------
# audit
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class RigidityCase:
    A: RatMatrix
    tuple: MatrixTuple
    E: tuple[int, ...]
    mu: TorusMeasure
    family: FolnerFamily = CANONICAL

    def __post_init__(self):
        E = tuple(sorted(set(int(j) for j in self.E)))
        if not E or E[0] < 0:
            raise ValueError("E must be a nonempty list of exponents j >= 0")
        object.__setattr__(self, "E", E)
        if not self.A.is_integer():
            raise ValueError("A must be an integer matrix")
        if self.tuple.n != self.A.n or self.mu.n != self.A.n:
            raise ValueError("A, the tuple and the measure must share the dimension n")


@dataclass
class AuditReport:
    invariance: list[dict]
    criteria: dict[str, CriterionReport]
    classification: str
    size: int | None
    flags: list[str]
    tuple_status: CertReport
    density: DensityEstimate
    detail: str | None = None

    @property
    def hypotheses_hold(self) -> bool:
        return all(row["invariant"] for row in self.invariance)


@dataclass(frozen=True)
class AuditParams:
    pairs: tuple | None = None
    radius: int = 1
    m: int = 200
    window: tuple[int, int] = (1, 30)
    tol: float = 1e-3
    bit_cap: int = 4096


def rigidity_audit(case: RigidityCase, params: AuditParams | None = None) -> AuditReport:
    """Check the hypotheses exactly, run the three criteria at finite truncation, and classify."""
    params = params or AuditParams()
    A, mu = case.A, case.mu
    rows = [{"map": "A", "j": None, "i": None, "invariant": is_invariant(A, mu)}]
    Aj = A.identity_like()
    j = 0
    for e in case.E:
        while j < e:
            Aj = Aj @ A
            j += 1
        for i, B in enumerate(case.tuple.mats, start=1):
            rows.append({"map": "A^j+B_i", "j": e, "i": i, "invariant": is_invariant(Aj + B, mu)})

    pairs = params.pairs if params.pairs is not None else default_pairs(A.n, params.radius)
    crit = {
        "ergodic": ergodic_criterion(mu, A, pairs, case.family, params.m, params.tol, params.bit_cap),
        "weak": weak_mixing_criterion(mu, A, pairs, case.family, params.m, params.tol, params.bit_cap),
        "strong": strong_mixing_criterion(mu, A, pairs, params.window, params.tol, params.bit_cap),
    }
    tuple_status = certify_tuple_q(case.tuple)
    density = upper_density(DensitySet.finite(case.E), case.family, case.E[-1] + 1)

    flags = []
    for row in rows[1:]:
        if not row["invariant"]:
            flags.append(f"hypothesis fails: not invariant under A^{row['j']}+B_{row['i']}")
    if not rows[0]["invariant"]:
        flags.append("hypothesis fails: not invariant under A")
    if not tuple_status.certified:
        flags.append(f"tuple strong independence: {tuple_status.status}")

    detail = None
    if isinstance(mu, Lebesgue):
        classification, size = "Lebesgue", None
    elif isinstance(mu, Atomic):
        size = mu.size
        classification = "Dirac" if size == 1 else "FinitelySupported"
        mixing = [k for k in ("weak", "strong") if crit[k].passed]
        if size > 1 and mixing:
            detail = f"{'/'.join(mixing)} mixing criterion passed for an atomic measure with {size} atoms"
            classification = "Inconsistent"
            flags.append(f"Inconsistent: {detail}")
    else:
        raise AssertionError("measures are atomic or Lebesgue by construction")
    return AuditReport(rows, crit, classification, size, flags, tuple_status, density, detail)
