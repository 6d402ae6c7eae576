"""Hot integer kernels with two interchangeable backends.

``numba``  -- scalar loops compiled with ``@njit`` (default when numba imports)
``numpy``  -- batch-vectorized pure numpy

Select with the environment variable ``SITORUS_KERNELS=numba|numpy`` or at
runtime via :func:`set_backend`. Both backends return identical arrays; the
test-suite runs every kernel under both.

All kernels work on int64 residues, so moduli must stay below 2**31 (products
of two residues then fit in int64). Callers route larger inputs to exact
Python code.
"""
from __future__ import annotations

import contextlib
import os
import warnings

import numpy as np

try:
    import numba as nb

    HAS_NUMBA = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    nb = None
    HAS_NUMBA = False

MAX_MODULUS = 2**31
# residue tables up to this many classes are deduplicated with a bitmap
BITMAP_LIMIT = 1 << 25
_CHUNK = 1 << 16

__all__ = [
    "HAS_NUMBA",
    "MAX_MODULUS",
    "backend",
    "box_residues",
    "det_mod_p_batch",
    "first_monic_divisor",
    "set_backend",
    "use_backend",
]


def _initial_backend() -> str:
    name = os.environ.get("SITORUS_KERNELS", "numba" if HAS_NUMBA else "numpy").strip().lower()
    if name not in ("numba", "numpy"):
        warnings.warn(f"unknown SITORUS_KERNELS={name!r}; using numpy", stacklevel=2)
        return "numpy"
    if name == "numba" and not HAS_NUMBA:
        warnings.warn("numba requested but not importable; using numpy", stacklevel=2)
        return "numpy"
    return name


_BACKEND = _initial_backend()


def backend() -> str:
    return _BACKEND


def set_backend(name: str) -> None:
    global _BACKEND
    if name not in ("numba", "numpy"):
        raise ValueError(f"unknown backend {name!r}")
    if name == "numba" and not HAS_NUMBA:
        raise RuntimeError("numba is not available")
    _BACKEND = name


@contextlib.contextmanager
def use_backend(name: str):
    prev = _BACKEND
    set_backend(name)
    try:
        yield
    finally:
        set_backend(prev)


# ---------------------------------------------------------------------------
# numpy path
# ---------------------------------------------------------------------------

def _powmod_vec(base: np.ndarray, e: int, p: int) -> np.ndarray:
    out = np.ones_like(base)
    b = base % p
    while e:
        if e & 1:
            out = out * b % p
        b = b * b % p
        e >>= 1
    return out


def _det_mod_p_batch_np(stack: np.ndarray, p: int) -> np.ndarray:
    work = stack % p
    N, n, _ = work.shape
    det = np.ones(N, dtype=np.int64)
    idx = np.arange(N)
    for c in range(n):
        col = work[:, c:, c] != 0
        has = col.any(axis=1)
        det[~has] = 0
        piv = c + col.argmax(axis=1)
        swap = has & (piv != c)
        if swap.any():
            row_c = work[idx, c, :].copy()
            row_p = work[idx, piv, :].copy()
            work[idx, c, :] = np.where(swap[:, None], row_p, row_c)
            work[idx, piv, :] = np.where(swap[:, None], row_c, row_p)
            det = np.where(swap, (-det) % p, det)
        pv = work[:, c, c]
        det = det * pv % p
        if c + 1 < n:
            inv = _powmod_vec(pv, p - 2, p)
            f = work[:, c + 1:, c] * inv[:, None] % p
            work[:, c + 1:, :] = (work[:, c + 1:, :] - f[:, :, None] * work[:, None, c, :]) % p
    return det % p


def _digits_np(idx: np.ndarray, base: int, width: int) -> np.ndarray:
    out = np.empty((idx.size, width), dtype=np.int64)
    rest = idx.copy()
    for i in range(width):
        out[:, i] = rest % base
        rest //= base
    return out


def _first_monic_divisor_np(f: np.ndarray, p: int, d: int, start: int) -> int:
    m = f.size - 1
    total = p**d
    for lo in range(start, total, _CHUNK):
        hi = min(lo + _CHUNK, total)
        H = _digits_np(np.arange(lo, hi, dtype=np.int64), p, d)
        rem = np.broadcast_to(f % p, (hi - lo, m + 1)).copy()
        for i in range(m, d - 1, -1):
            q = rem[:, i]
            rem[:, i - d:i] = (rem[:, i - d:i] - q[:, None] * H) % p
            rem[:, i] = 0
        hit = ~(rem[:, :d].any(axis=1))
        if hit.any():
            return lo + int(np.argmax(hit))
    return -1


def _box_residues_chunk_np(adj: np.ndarray, D: int, M: int, lo: int, hi: int) -> np.ndarray:
    n = adj.shape[0]
    w = _digits_np(np.arange(lo, hi, dtype=np.int64), 2 * M + 1, n) - M
    return (w @ adj) % D


def _box_mark_np(adj: np.ndarray, D: int, M: int, seen: np.ndarray) -> None:
    n = adj.shape[0]
    place = D ** np.arange(n - 1, -1, -1, dtype=np.int64)
    total = (2 * M + 1) ** n
    for lo in range(0, total, _CHUNK * 4):
        hi = min(lo + _CHUNK * 4, total)
        seen[_box_residues_chunk_np(adj, D, M, lo, hi) @ place] = True


# ---------------------------------------------------------------------------
# numba path
# ---------------------------------------------------------------------------

if HAS_NUMBA:

    @nb.njit(cache=True, nogil=True)
    def _powmod_nb(b, e, p):
        out = 1
        b = b % p
        while e > 0:
            if e & 1:
                out = out * b % p
            b = b * b % p
            e >>= 1
        return out

    @nb.njit(cache=True, nogil=True)
    def _det_mod_p_batch_nb(stack, p):
        N, n, _ = stack.shape
        out = np.empty(N, dtype=np.int64)
        work = np.empty((n, n), dtype=np.int64)
        for b in range(N):
            for i in range(n):
                for j in range(n):
                    work[i, j] = stack[b, i, j] % p
            det = 1
            for c in range(n):
                piv = -1
                for r in range(c, n):
                    if work[r, c] != 0:
                        piv = r
                        break
                if piv < 0:
                    det = 0
                    break
                if piv != c:
                    for j in range(n):
                        tmp = work[c, j]
                        work[c, j] = work[piv, j]
                        work[piv, j] = tmp
                    det = (p - det) % p
                pv = work[c, c]
                det = det * pv % p
                inv = _powmod_nb(pv, p - 2, p)
                for r in range(c + 1, n):
                    f = work[r, c] * inv % p
                    if f != 0:
                        for j in range(c, n):
                            work[r, j] = (work[r, j] - f * work[c, j]) % p
            out[b] = det % p
        return out

    @nb.njit(cache=True, nogil=True)
    def _first_monic_divisor_nb(f, p, d, start):
        m = f.shape[0] - 1
        total = 1
        for _ in range(d):
            total *= p
        h = np.empty(d, dtype=np.int64)
        rem = np.empty(m + 1, dtype=np.int64)
        for idx in range(start, total):
            rest = idx
            for i in range(d):
                h[i] = rest % p
                rest //= p
            for i in range(m + 1):
                rem[i] = f[i] % p
            for i in range(m, d - 1, -1):
                q = rem[i]
                if q != 0:
                    for j in range(d):
                        rem[i - d + j] = (rem[i - d + j] - q * h[j]) % p
                    rem[i] = 0
            ok = True
            for i in range(d):
                if rem[i] != 0:
                    ok = False
                    break
            if ok:
                return idx
        return -1

    @nb.njit(cache=True, nogil=True)
    def _box_residues_chunk_nb(adj, D, M, lo, hi):
        n = adj.shape[0]
        base = 2 * M + 1
        out = np.empty((hi - lo, n), dtype=np.int64)
        w = np.empty(n, dtype=np.int64)
        for t in range(hi - lo):
            rest = lo + t
            for i in range(n):
                w[i] = rest % base - M
                rest //= base
            for j in range(n):
                s = 0
                for i in range(n):
                    s += w[i] * adj[i, j]
                out[t, j] = s % D
        return out

    @nb.njit(cache=True, nogil=True)
    def _box_mark_nb(adj, D, M, seen):
        # odometer over w in [-M, M]^n, keeping s = w @ adj up to date incrementally
        n = adj.shape[0]
        w = np.full(n, -M, dtype=np.int64)
        s = np.zeros(n, dtype=np.int64)
        for j in range(n):
            for i in range(n):
                s[j] -= M * adj[i, j]
        while True:
            code = 0
            for j in range(n):
                code = code * D + s[j] % D
            seen[code] = True
            i = 0
            while i < n and w[i] == M:
                w[i] = -M
                for j in range(n):
                    s[j] -= 2 * M * adj[i, j]
                i += 1
            if i == n:
                return
            w[i] += 1
            for j in range(n):
                s[j] += adj[i, j]


# ---------------------------------------------------------------------------
# dispatch
# ---------------------------------------------------------------------------

def _check_modulus(p: int) -> None:
    if not 2 <= p < MAX_MODULUS:
        raise ValueError(f"kernel modulus must be in [2, 2**31), got {p}")


def det_mod_p_batch(stack, p: int) -> np.ndarray:
    """Determinants mod prime ``p`` of a stack of square integer matrices."""
    _check_modulus(p)
    stack = np.ascontiguousarray(np.asarray(stack, dtype=np.int64))
    if stack.ndim != 3 or stack.shape[1] != stack.shape[2]:
        raise ValueError(f"expected shape (N, n, n), got {stack.shape}")
    if stack.shape[0] == 0:
        return np.zeros(0, dtype=np.int64)
    if _BACKEND == "numba":
        return _det_mod_p_batch_nb(stack, p)
    return _det_mod_p_batch_np(stack, p)


def first_monic_divisor(f, p: int, d: int, start: int = 0) -> int:
    """Index of the first monic degree-``d`` divisor of ``f`` over F_p, or -1.

    Candidates ``t^d + c_{d-1} t^{d-1} + ... + c_0`` are indexed by
    ``sum(c_i * p**i)``, so increasing index is lexicographic order on
    ``(c_{d-1}, ..., c_0)``. Scanning starts at ``start``.
    """
    _check_modulus(p)
    f = np.ascontiguousarray(np.asarray(f, dtype=np.int64))
    if d < 1 or f.size - 1 < d:
        return -1
    if p**d >= 2**62:
        raise ValueError("candidate space too large for int64 indexing")
    if _BACKEND == "numba":
        return int(_first_monic_divisor_nb(f, p, d, start))
    return _first_monic_divisor_np(f, p, d, start)


def box_residues(adj, D: int, M: int, cap: int | None = None) -> np.ndarray:
    """Distinct rows ``w @ adj mod D`` over integer ``w`` in the box ``[-M, M]^n``.

    Returned rows are sorted lexicographically.
    """
    adj = np.ascontiguousarray(np.asarray(adj, dtype=np.int64))
    n = adj.shape[0]
    D = abs(int(D))
    total = (2 * M + 1) ** n
    if cap is not None and total > cap:
        raise ValueError(f"box of {total} points exceeds cap {cap}")
    if M * int(np.abs(adj).sum(axis=0).max(initial=0)) >= 2**62 or D >= 2**62:
        raise OverflowError("box residues overflow int64")
    if D**n <= BITMAP_LIMIT:
        seen = np.zeros(D**n, dtype=np.bool_)
        (_box_mark_nb if _BACKEND == "numba" else _box_mark_np)(adj, D, M, seen)
        codes = np.flatnonzero(seen).astype(np.int64)
        out = np.empty((codes.size, n), dtype=np.int64)
        for i in range(n - 1, -1, -1):
            out[:, i] = codes % D
            codes //= D
        return out
    chunk_fn = _box_residues_chunk_nb if _BACKEND == "numba" else _box_residues_chunk_np
    seen = np.zeros((0, n), dtype=np.int64)
    step = _CHUNK * 4
    for lo in range(0, total, step):
        hi = min(lo + step, total)
        part = np.unique(chunk_fn(adj, D, M, lo, hi), axis=0)
        seen = np.unique(np.concatenate([seen, part]), axis=0)
    return seen
