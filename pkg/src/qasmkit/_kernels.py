"""Hot loops with a numba implementation and a numpy fallback.

Set ``QASMKIT_DISABLE_NUMBA=1`` to force the numpy path (also used when numba
cannot be imported). Both paths return identical results.
"""

from __future__ import annotations

import os

import numpy as np

USE_NUMBA = os.environ.get("QASMKIT_DISABLE_NUMBA", "") not in ("1", "true", "yes")

if USE_NUMBA:
    try:
        from numba import njit
    except ImportError:  # pragma: no cover
        USE_NUMBA = False

BACKEND = "numba" if USE_NUMBA else "numpy"


# ---------------------------------------------------------------- GF(2) gauss


def _gauss_numpy(rows: list[int], nrows: int, ncols: int):
    m = np.zeros((nrows, ncols), dtype=np.uint8)
    for i, r in enumerate(rows):
        for j in range(ncols):
            m[i, j] = (r >> j) & 1
    ops: list[tuple[int, int]] = []
    pivot = 0
    for c in range(ncols):
        if pivot >= nrows:
            break
        if not m[pivot, c]:
            below = np.nonzero(m[pivot + 1:, c])[0]
            if below.size == 0:
                continue
            src = pivot + 1 + int(below[0])
            m[pivot] ^= m[src]
            ops.append((pivot, src))
        hit = np.nonzero(m[:, c])[0]
        hit = hit[hit != pivot]
        if hit.size:
            m[hit] ^= m[pivot]
            ops.extend((int(r), pivot) for r in hit)
        pivot += 1
    weights = 1 << np.arange(ncols, dtype=object)
    out = [int((m[i].astype(object) * weights).sum()) for i in range(nrows)]
    return out, ops


def _gauss_python(rows: list[int], nrows: int, ncols: int):
    m = list(rows)
    ops: list[tuple[int, int]] = []
    pivot = 0
    for c in range(ncols):
        if pivot >= nrows:
            break
        bit = 1 << c
        if not m[pivot] & bit:
            for r in range(pivot + 1, nrows):
                if m[r] & bit:
                    m[pivot] ^= m[r]
                    ops.append((pivot, r))
                    break
            else:
                continue
        for r in range(nrows):
            if r != pivot and m[r] & bit:
                m[r] ^= m[pivot]
                ops.append((r, pivot))
        pivot += 1
    return m, ops


if USE_NUMBA:

    @njit(cache=True)
    def _gauss_nb(m, ncols):  # pragma: no cover - compiled
        nrows = m.shape[0]
        ops = np.empty((nrows * (nrows + 1), 2), dtype=np.int64)
        k = 0
        pivot = 0
        one = np.uint64(1)
        for c in range(ncols):
            if pivot >= nrows:
                break
            bit = one << np.uint64(c)
            if m[pivot] & bit == 0:
                found = -1
                for r in range(pivot + 1, nrows):
                    if m[r] & bit:
                        found = r
                        break
                if found < 0:
                    continue
                m[pivot] ^= m[found]
                ops[k, 0] = pivot
                ops[k, 1] = found
                k += 1
            for r in range(nrows):
                if r != pivot and m[r] & bit:
                    m[r] ^= m[pivot]
                    ops[k, 0] = r
                    ops[k, 1] = pivot
                    k += 1
            pivot += 1
        return m, ops[:k]


def gf2_gauss(rows: list[int], nrows: int, ncols: int):
    """Gauss-Jordan by row additions. Returns (rows, [(target, source), ...])."""
    if USE_NUMBA and ncols <= 64:
        m, ops = _gauss_nb(np.array(rows, dtype=np.uint64), ncols)
        return [int(v) for v in m], [(int(a), int(b)) for a, b in ops]
    if ncols <= 64 and not USE_NUMBA:
        return _gauss_numpy(rows, nrows, ncols)
    return _gauss_python(rows, nrows, ncols)


# ---------------------------------------------------------- Pauli commutation
#
# Pauli operators are packed as rows of uint64 words (x part and z part), so
# any qubit count fits.


def last_anticommuting(xs: np.ndarray, zs: np.ndarray, x: np.ndarray, z: np.ndarray, m: int) -> int:
    """Largest k < m such that row k anticommutes with (x, z), or -1."""
    if USE_NUMBA:
        return int(_last_anti_nb(xs, zs, x, z, m))
    if m == 0:
        return -1
    sym = (np.bitwise_count(xs[:m] & z).sum(axis=1, dtype=np.int64)
           + np.bitwise_count(zs[:m] & x).sum(axis=1, dtype=np.int64))
    hit = np.flatnonzero(sym & 1)
    return int(hit[-1]) if hit.size else -1


if USE_NUMBA:

    @njit(cache=True)
    def _popcount(v):  # pragma: no cover - compiled
        c = 0
        while v:
            v &= v - np.uint64(1)
            c += 1
        return c

    @njit(cache=True)
    def _last_anti_nb(xs, zs, x, z, m):  # pragma: no cover - compiled
        for k in range(m - 1, -1, -1):
            c = 0
            for w in range(xs.shape[1]):
                c += _popcount(xs[k, w] & z[w]) + _popcount(zs[k, w] & x[w])
            if c & 1:
                return k
        return -1


def pack(v: int, words: int) -> np.ndarray:
    """Little-endian uint64 words of a non-negative int."""
    out = np.empty(words, dtype=np.uint64)
    mask = (1 << 64) - 1
    for w in range(words):
        out[w] = (v >> (64 * w)) & mask
    return out


# ------------------------------------------------------- unitary construction
#
# Basis index bit (n-1-q) belongs to qubit q, so qubit 0 is the most
# significant. Gates left-multiply ``u`` (shape (2**n, m)) in place.


def _apply_1q_numpy(u: np.ndarray, g: np.ndarray, q: int, n: int) -> None:
    v = u.reshape(1 << q, 2, -1)
    v[:] = np.einsum("ab,xbz->xaz", g, v)


def _apply_cx_numpy(u: np.ndarray, c: int, t: int, n: int) -> None:
    idx = np.arange(1 << n)
    cb, tb = 1 << (n - 1 - c), 1 << (n - 1 - t)
    sel = idx[(idx & cb) != 0]
    sel = sel[(sel & tb) == 0]
    tmp = u[sel].copy()
    u[sel] = u[sel | tb]
    u[sel | tb] = tmp


if USE_NUMBA:

    @njit(cache=True)
    def _apply_1q_nb(u, g, q, n):  # pragma: no cover - compiled
        bit = 1 << (n - 1 - q)
        cols = u.shape[1]
        g00, g01, g10, g11 = g[0, 0], g[0, 1], g[1, 0], g[1, 1]
        for i in range(1 << n):
            if i & bit:
                continue
            j = i | bit
            for k in range(cols):
                a = u[i, k]
                b = u[j, k]
                u[i, k] = g00 * a + g01 * b
                u[j, k] = g10 * a + g11 * b

    @njit(cache=True)
    def _apply_cx_nb(u, c, t, n):  # pragma: no cover - compiled
        cb = 1 << (n - 1 - c)
        tb = 1 << (n - 1 - t)
        cols = u.shape[1]
        for i in range(1 << n):
            if (i & cb) and not (i & tb):
                j = i | tb
                for k in range(cols):
                    tmp = u[i, k]
                    u[i, k] = u[j, k]
                    u[j, k] = tmp


def apply_1q(u: np.ndarray, g: np.ndarray, q: int, n: int) -> None:
    if USE_NUMBA:
        _apply_1q_nb(u, np.ascontiguousarray(g, dtype=np.complex128), q, n)
    else:
        _apply_1q_numpy(u, g, q, n)


def apply_cx(u: np.ndarray, c: int, t: int, n: int) -> None:
    if USE_NUMBA:
        _apply_cx_nb(u, c, t, n)
    else:
        _apply_cx_numpy(u, c, t, n)
