"""Hot loops for lattice-point enumeration.

Both kernels scan an axis-aligned integer box fiber by fiber: the outer
coordinates run over the box, and for each fiber the admissible range of
the last coordinate is cut out exactly from the inequalities
``A @ t + b >= 0`` by integer floor/ceil division.

Two implementations exist.  The numba one is used when numba imports and
``GORPOLY_NO_NUMBA`` is unset; the numpy one is the fallback and also
serves inputs whose magnitudes could overflow int64, in which case it runs
on object arrays of Python ints.
"""
from __future__ import annotations

import os

import numpy as np

_INT64_SAFE = 2**62

try:  # pragma: no cover - exercised implicitly
    if os.environ.get("GORPOLY_NO_NUMBA", "").strip() not in ("", "0"):
        raise ImportError("numba disabled by GORPOLY_NO_NUMBA")
    from numba import njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover
    HAVE_NUMBA = False

__all__ = ["HAVE_NUMBA", "scan_points", "scan_degree_counts", "backend", "warm_up"]


def backend() -> str:
    return "numba" if HAVE_NUMBA else "numpy"


def _fits_int64(A, b, lo, hi, extra=()):
    bound = 0
    for row, bi in zip(A, b):
        s = abs(int(bi))
        for a, l, h in zip(row, lo, hi):
            s += abs(int(a)) * max(abs(int(l)), abs(int(h)))
        bound = max(bound, s)
    for v in extra:
        bound = max(bound, abs(int(v)))
    return bound < _INT64_SAFE


# --------------------------------------------------------------------------
# numpy implementation


def _fiber_bounds_np(S, c, lo_last, hi_last):
    """Per-fiber [lower, upper] range of the last coordinate."""
    nf = S.shape[0]
    lower = np.full(nf, lo_last, dtype=S.dtype)
    upper = np.full(nf, hi_last, dtype=S.dtype)
    ok = np.ones(nf, dtype=bool)
    for i in range(S.shape[1]):
        ci = c[i]
        si = S[:, i]
        if ci > 0:
            # ci * t >= -si  ->  t >= ceil(-si / ci)
            lb = -((si) // ci)
            lower = np.maximum(lower, lb)
        elif ci < 0:
            ub = si // (-ci)
            upper = np.minimum(upper, ub)
        else:
            ok &= si >= 0
    return lower, upper, ok


def _prefix_grid(lo, hi, dtype):
    axes = [np.arange(l, h + 1, dtype=np.int64).astype(dtype) for l, h in zip(lo, hi)]
    if not axes:
        return np.zeros((1, 0), dtype=dtype)
    mesh = np.meshgrid(*axes, indexing="ij")
    return np.stack([m.ravel() for m in mesh], axis=1)


def _scan_chunks_np(A, b, lo, hi, dtype):
    """Yield (prefix rows, lower, upper) per chunk of fibers."""
    r = A.shape[1]
    lead = list(range(lo[0], hi[0] + 1)) if r > 1 else [None]
    for first in lead:
        if r > 1:
            sub_lo = [first] + list(lo[1 : r - 1])
            sub_hi = [first] + list(hi[1 : r - 1])
            pref = _prefix_grid(sub_lo, sub_hi, dtype)
        else:
            pref = np.zeros((1, 0), dtype=dtype)
        S = pref @ A[:, : r - 1].T + b[None, :] if r > 1 else np.repeat(b[None, :], 1, axis=0)
        lower, upper, ok = _fiber_bounds_np(S, A[:, r - 1], lo[r - 1], hi[r - 1])
        keep = ok & (lower <= upper)
        yield pref[keep], lower[keep], upper[keep]


def scan_points_numpy(A, b, lo, hi):
    A, b, dtype = _prepare(A, b, lo, hi)
    out = list(_iter_point_blocks(A, b, lo, hi, dtype))
    if not out:
        return np.zeros((0, A.shape[1]), dtype=dtype)
    return np.concatenate(out, axis=0)


def scan_degree_counts_numpy(A, b, lo, hi, deg, maxdeg):
    A, b, dtype = _prepare(A, b, lo, hi)
    deg = np.asarray([int(x) for x in deg], dtype=dtype)
    counts = [0] * (maxdeg + 1)
    for block in _iter_point_blocks(A, b, lo, hi, dtype):
        vals = block @ deg
        for v, c in zip(*np.unique(vals, return_counts=True)):
            v = int(v)
            if 0 <= v <= maxdeg:
                counts[v] += int(c)
    return counts


def _iter_point_blocks(A, b, lo, hi, dtype):
    for pref, lower, upper in _scan_chunks_np(A, b, lo, hi, dtype):
        lengths = (upper - lower + 1).astype(np.int64)
        if len(lengths) == 0:
            continue
        rows = np.repeat(pref, lengths, axis=0)
        starts = np.repeat(lower, lengths)
        offs = np.arange(int(lengths.sum()), dtype=np.int64) - np.repeat(np.cumsum(lengths) - lengths, lengths)
        yield np.concatenate([rows, (starts + offs.astype(dtype))[:, None]], axis=1)


def _prepare(A, b, lo, hi):
    A = [[int(x) for x in row] for row in A]
    b = [int(x) for x in b]
    dtype = np.int64 if _fits_int64(A, b, lo, hi) else object
    return np.array(A, dtype=dtype).reshape(len(b), len(lo)), np.array(b, dtype=dtype), dtype


# --------------------------------------------------------------------------
# numba implementation

if HAVE_NUMBA:

    @njit(cache=True, nogil=True)
    def _last_range(A, b, t, lo_last, hi_last):
        r = A.shape[1]
        lower = lo_last
        upper = hi_last
        for i in range(A.shape[0]):
            s = b[i]
            for j in range(r - 1):
                s += A[i, j] * t[j]
            c = A[i, r - 1]
            if c > 0:
                lb = -(s // c)
                if lb > lower:
                    lower = lb
            elif c < 0:
                ub = s // (-c)
                if ub < upper:
                    upper = ub
            elif s < 0:
                return 1, 0
        return lower, upper

    @njit(cache=True, nogil=True)
    def _advance(t, lo, hi, r):
        # odometer over the first r-1 coordinates, last varies fastest
        k = r - 2
        while k >= 0:
            if t[k] < hi[k]:
                t[k] += 1
                return True
            t[k] = lo[k]
            k -= 1
        return False

    @njit(cache=True, nogil=True)
    def _count_nb(A, b, lo, hi):
        r = A.shape[1]
        t = lo.copy()
        total = 0
        while True:
            lower, upper = _last_range(A, b, t, lo[r - 1], hi[r - 1])
            if upper >= lower:
                total += upper - lower + 1
            if r == 1 or not _advance(t, lo, hi, r):
                break
        return total

    @njit(cache=True, nogil=True)
    def _fill_nb(A, b, lo, hi, out):
        r = A.shape[1]
        t = lo.copy()
        k = 0
        while True:
            lower, upper = _last_range(A, b, t, lo[r - 1], hi[r - 1])
            for v in range(lower, upper + 1):
                for j in range(r - 1):
                    out[k, j] = t[j]
                out[k, r - 1] = v
                k += 1
            if r == 1 or not _advance(t, lo, hi, r):
                break
        return k

    @njit(cache=True, nogil=True)
    def _degree_counts_nb(A, b, lo, hi, deg, counts):
        r = A.shape[1]
        t = lo.copy()
        maxdeg = counts.shape[0] - 1
        while True:
            lower, upper = _last_range(A, b, t, lo[r - 1], hi[r - 1])
            if upper >= lower:
                base = 0
                for j in range(r - 1):
                    base += deg[j] * t[j]
                step = deg[r - 1]
                for v in range(lower, upper + 1):
                    d = base + step * v
                    if 0 <= d <= maxdeg:
                        counts[d] += 1
            if r == 1 or not _advance(t, lo, hi, r):
                break

    def scan_points_numba(A, b, lo, hi):
        A = np.asarray(A, dtype=np.int64).reshape(len(b), len(lo))
        b = np.asarray(b, dtype=np.int64)
        lo_a = np.asarray(lo, dtype=np.int64)
        hi_a = np.asarray(hi, dtype=np.int64)
        n = _count_nb(A, b, lo_a, hi_a)
        out = np.empty((n, len(lo)), dtype=np.int64)
        _fill_nb(A, b, lo_a, hi_a, out)
        return out

    def scan_degree_counts_numba(A, b, lo, hi, deg, maxdeg):
        A = np.asarray(A, dtype=np.int64).reshape(len(b), len(lo))
        counts = np.zeros(maxdeg + 1, dtype=np.int64)
        _degree_counts_nb(
            A,
            np.asarray(b, dtype=np.int64),
            np.asarray(lo, dtype=np.int64),
            np.asarray(hi, dtype=np.int64),
            np.asarray(deg, dtype=np.int64),
            counts,
        )
        return [int(c) for c in counts]


# --------------------------------------------------------------------------
# dispatch


def _empty_box(lo, hi):
    return any(l > h for l, h in zip(lo, hi))


def scan_points(A, b, lo, hi, use_numba=None):
    """All integer ``t`` in the box ``lo <= t <= hi`` with ``A t + b >= 0``.

    Rows of the result are in lexicographic order.
    """
    r = len(lo)
    lo = [int(x) for x in lo]
    hi = [int(x) for x in hi]
    if r == 0:
        ok = all(int(x) >= 0 for x in b)
        return np.zeros((1 if ok else 0, 0), dtype=np.int64)
    if _empty_box(lo, hi):
        return np.zeros((0, r), dtype=np.int64)
    if len(b) == 0:
        A, b = [[0] * r], [0]
    if use_numba is None:
        use_numba = HAVE_NUMBA
    if use_numba and HAVE_NUMBA and _fits_int64(A, b, lo, hi):
        return scan_points_numba(A, b, lo, hi)
    return scan_points_numpy(A, b, lo, hi)


def scan_degree_counts(A, b, lo, hi, deg, maxdeg, use_numba=None):
    """Histogram of ``deg . t`` (values ``0..maxdeg``) over the box points with ``A t + b >= 0``."""
    r = len(lo)
    lo = [int(x) for x in lo]
    hi = [int(x) for x in hi]
    if r == 0:
        ok = all(int(x) >= 0 for x in b)
        counts = [0] * (maxdeg + 1)
        if ok:
            counts[0] = 1
        return counts
    if _empty_box(lo, hi):
        return [0] * (maxdeg + 1)
    if len(b) == 0:
        A, b = [[0] * r], [0]
    if use_numba is None:
        use_numba = HAVE_NUMBA
    if use_numba and HAVE_NUMBA and _fits_int64(A, b, lo, hi, extra=[sum(abs(int(d)) * max(abs(l), abs(h)) for d, l, h in zip(deg, lo, hi))]):
        return scan_degree_counts_numba(A, b, lo, hi, deg, maxdeg)
    return scan_degree_counts_numpy(A, b, lo, hi, deg, maxdeg)


def warm_up() -> None:
    """Run both kernels once on a tiny box so that JIT compilation happens now."""
    A, b = [[1, 0], [0, 1], [-1, -1]], [0, 0, 2]
    scan_points(A, b, [0, 0], [2, 2])
    scan_degree_counts(A, b, [0, 0], [2, 2], [1, 1], 2)
