"""Exact integer and rational linear algebra.

Vectors are tuples of Python ints (or :class:`fractions.Fraction` for
rational vectors); matrices are lists of such row tuples.  Nothing here
touches floating point.
"""
from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Iterable, Optional, Sequence

IntVector = tuple
IntMatrix = list
RationalVector = tuple

__all__ = [
    "IntVector",
    "IntMatrix",
    "RationalVector",
    "primitive",
    "vector_gcd",
    "dot",
    "mat_mul",
    "mat_vec",
    "transpose",
    "identity",
    "determinant",
    "rank",
    "hermite_normal_form",
    "smith_normal_form",
    "integer_kernel",
    "solve_rational",
    "complete_to_unimodular",
    "lattice_inverse",
    "rational_vector",
]


def vector_gcd(v: Iterable[int]) -> int:
    g = 0
    for x in v:
        g = gcd(g, x)
    return g


def primitive(v: Sequence[int]) -> IntVector:
    """Divide ``v`` by the gcd of its entries, keeping its direction."""
    g = vector_gcd(v)
    if g == 0:
        raise ValueError("no primitive representative")
    return tuple(x // g for x in v)


def rational_vector(v: Iterable) -> RationalVector:
    return tuple(Fraction(x) for x in v)


def dot(u: Sequence, v: Sequence):
    return sum(a * b for a, b in zip(u, v))


def transpose(A: Sequence[Sequence]) -> IntMatrix:
    return [tuple(col) for col in zip(*A)]


def mat_mul(A: Sequence[Sequence], B: Sequence[Sequence]) -> IntMatrix:
    Bt = transpose(B)
    return [tuple(dot(row, col) for col in Bt) for row in A]


def mat_vec(A: Sequence[Sequence], v: Sequence) -> tuple:
    return tuple(dot(row, v) for row in A)


def identity(n: int) -> IntMatrix:
    return [tuple(int(i == j) for j in range(n)) for i in range(n)]


def _as_rows(A) -> list[list]:
    return [list(r) for r in A]


def _ncols(A, ncols: Optional[int]) -> int:
    if ncols is not None:
        return ncols
    if len(A) == 0:
        return 0
    return len(A[0])


def determinant(A: Sequence[Sequence[int]]) -> int:
    """Bareiss fraction-free determinant of a square integer matrix."""
    M = _as_rows(A)
    n = len(M)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if M[k][k] == 0:
            for i in range(k + 1, n):
                if M[i][k] != 0:
                    M[k], M[i] = M[i], M[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) // prev
        prev = M[k][k]
    return sign * M[n - 1][n - 1]


def rank(A: Sequence[Sequence]) -> int:
    M = [[Fraction(x) for x in row] for row in A]
    if not M:
        return 0
    r = 0
    ncols = len(M[0])
    for c in range(ncols):
        piv = next((i for i in range(r, len(M)) if M[i][c] != 0), None)
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        for i in range(r + 1, len(M)):
            if M[i][c] != 0:
                f = M[i][c] / M[r][c]
                M[i] = [a - f * b for a, b in zip(M[i], M[r])]
        r += 1
        if r == len(M):
            break
    return r


def hermite_normal_form(A: Sequence[Sequence[int]], ncols: Optional[int] = None):
    """Row-style Hermite normal form.

    Returns ``(H, U)`` with ``U`` unimodular and ``U @ A == H``.  ``H`` is in
    row echelon form: pivots are positive, each pivot sits strictly right
    of the pivot above it, entries above a pivot lie in ``[0, pivot)`` and
    zero rows come last.  Pivot rows are chosen leftmost-first and, among
    candidates, by smallest absolute value (lowest row index on ties).
    """
    H = _as_rows(A)
    m = len(H)
    n = _ncols(A, ncols)
    U = [list(r) for r in identity(m)]
    r = 0
    for c in range(n):
        if r == m:
            break
        while True:
            nz = [i for i in range(r, m) if H[i][c] != 0]
            if not nz:
                break
            p = min(nz, key=lambda i: (abs(H[i][c]), i))
            H[r], H[p] = H[p], H[r]
            U[r], U[p] = U[p], U[r]
            done = True
            for i in range(r + 1, m):
                if H[i][c] != 0:
                    q = H[i][c] // H[r][c]
                    H[i] = [a - q * b for a, b in zip(H[i], H[r])]
                    U[i] = [a - q * b for a, b in zip(U[i], U[r])]
                    if H[i][c] != 0:
                        done = False
            if done:
                break
        if all(H[i][c] == 0 for i in range(r, m)):
            continue
        if H[r][c] < 0:
            H[r] = [-a for a in H[r]]
            U[r] = [-a for a in U[r]]
        for i in range(r):
            q = H[i][c] // H[r][c]
            if q:
                H[i] = [a - q * b for a, b in zip(H[i], H[r])]
                U[i] = [a - q * b for a, b in zip(U[i], U[r])]
        r += 1
    return [tuple(row) for row in H], [tuple(row) for row in U]


def smith_normal_form(A: Sequence[Sequence[int]], ncols: Optional[int] = None):
    """Smith normal form ``(D, L, R)`` with ``L @ A @ R == D``.

    ``L`` and ``R`` are unimodular and the diagonal of ``D`` is a
    nonnegative divisor chain ``d1 | d2 | ...`` (zeros last).
    """
    D = _as_rows(A)
    m = len(D)
    n = _ncols(A, ncols)
    L = [list(r) for r in identity(m)]
    R = [list(r) for r in identity(n)]

    def swap_rows(i, j):
        D[i], D[j] = D[j], D[i]
        L[i], L[j] = L[j], L[i]

    def swap_cols(i, j):
        for row in D:
            row[i], row[j] = row[j], row[i]
        for row in R:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, q):
        # row_dst -= q * row_src
        D[dst] = [a - q * b for a, b in zip(D[dst], D[src])]
        L[dst] = [a - q * b for a, b in zip(L[dst], L[src])]

    def add_col(dst, src, q):
        for row in D:
            row[dst] -= q * row[src]
        for row in R:
            row[dst] -= q * row[src]

    t = 0
    while t < min(m, n):
        entries = [(abs(D[i][j]), i, j) for i in range(t, m) for j in range(t, n) if D[i][j] != 0]
        if not entries:
            break
        _, pi, pj = min(entries)
        swap_rows(t, pi)
        swap_cols(t, pj)
        while True:
            changed = False
            for i in range(t + 1, m):
                if D[i][t] != 0:
                    q = D[i][t] // D[t][t]
                    add_row(i, t, q)
                    if D[i][t] != 0:
                        swap_rows(t, i)
                        changed = True
            for j in range(t + 1, n):
                if D[t][j] != 0:
                    q = D[t][j] // D[t][t]
                    add_col(j, t, q)
                    if D[t][j] != 0:
                        swap_cols(t, j)
                        changed = True
            if changed:
                continue
            # divisibility of the remaining block
            bad = next(
                ((i, j) for i in range(t + 1, m) for j in range(t + 1, n) if D[i][j] % D[t][t] != 0),
                None,
            )
            if bad is None:
                break
            add_row(t, bad[0], -1)
        if D[t][t] < 0:
            D[t] = [-a for a in D[t]]
            L[t] = [-a for a in L[t]]
        t += 1
    return [tuple(r) for r in D], [tuple(r) for r in L], [tuple(r) for r in R]


def elementary_divisors(A: Sequence[Sequence[int]], ncols: Optional[int] = None) -> list[int]:
    """Nonzero diagonal entries of the Smith normal form."""
    D, _, _ = smith_normal_form(A, ncols)
    return [D[i][i] for i in range(min(len(D), _ncols(A, ncols))) if D[i][i] != 0]


def integer_kernel(A: Sequence[Sequence[int]], ncols: Optional[int] = None) -> IntMatrix:
    """Saturated basis (as rows, in Hermite normal form) of ``{x : A x = 0}``."""
    n = _ncols(A, ncols)
    if n == 0:
        return []
    At = transpose(A) if len(A) else [()] * n
    H, U = hermite_normal_form(At, ncols=len(A))
    basis = [U[i] for i in range(n) if all(x == 0 for x in H[i])]
    if not basis:
        return []
    K, _ = hermite_normal_form(basis, ncols=n)
    return [row for row in K if any(row)]


def solve_rational(A: Sequence[Sequence[int]], b: Sequence[int]) -> Optional[RationalVector]:
    """One exact solution of ``A x = b`` or ``None`` when inconsistent.

    Free variables are set to zero; pivots are taken leftmost-first.
    """
    m = len(A)
    n = len(A[0]) if m else 0
    M = [[Fraction(x) for x in row] + [Fraction(bi)] for row, bi in zip(A, b)]
    pivots = []
    r = 0
    for c in range(n):
        piv = next((i for i in range(r, m) if M[i][c] != 0), None)
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        inv = 1 / M[r][c]
        M[r] = [x * inv for x in M[r]]
        for i in range(m):
            if i != r and M[i][c] != 0:
                f = M[i][c]
                M[i] = [a - f * p for a, p in zip(M[i], M[r])]
        pivots.append(c)
        r += 1
        if r == m:
            break
    for i in range(r, m):
        if M[i][n] != 0:
            return None
    x = [Fraction(0)] * n
    for i, c in enumerate(pivots):
        x[c] = M[i][n]
    return tuple(x)


def complete_to_unimodular(K: Sequence[Sequence[int]], n: int):
    """Extend saturated rows ``K`` (d x n) to a unimodular n x n matrix.

    Returns ``(W, Winv)`` where the first d rows of ``W`` are ``K``.
    Raises ``ValueError`` if the rows of ``K`` are not saturated.
    """
    d = len(K)
    if d == 0:
        return identity(n), identity(n)
    H, U = hermite_normal_form(transpose(K), ncols=d)
    for i in range(d):
        for j in range(d):
            if H[i][j] != int(i == j):
                raise ValueError("rows do not span a saturated sublattice")
    # U K^T = [I; 0]  =>  W = (U^-1)^T has K as leading rows, W^-1 = U^T
    Winv = transpose(U)
    W = transpose(_unimodular_inverse(U))
    return W, Winv


def _unimodular_inverse(U: Sequence[Sequence[int]]) -> IntMatrix:
    n = len(U)
    M = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(U)]
    for c in range(n):
        piv = next(i for i in range(c, n) if M[i][c] != 0)
        M[c], M[piv] = M[piv], M[c]
        inv = 1 / M[c][c]
        M[c] = [x * inv for x in M[c]]
        for i in range(n):
            if i != c and M[i][c] != 0:
                f = M[i][c]
                M[i] = [a - f * p for a, p in zip(M[i], M[c])]
    out = []
    for row in M:
        vals = row[n:]
        if any(v.denominator != 1 for v in vals):
            raise ValueError("matrix is not unimodular")
        out.append(tuple(int(v) for v in vals))
    return out


def lattice_inverse(K: Sequence[Sequence[int]], n: int) -> IntMatrix:
    """Integer n x d matrix ``Kinv`` with ``K @ Kinv == I_d`` for saturated ``K``."""
    d = len(K)
    _, Winv = complete_to_unimodular(K, n)
    return [tuple(row[:d]) for row in Winv]


def reduce_modulo(v: Sequence[int], H: Sequence[Sequence[int]]) -> IntVector:
    """Canonical representative of ``v`` modulo the row lattice of HNF rows ``H``."""
    v = list(v)
    for row in H:
        c = next(j for j, x in enumerate(row) if x != 0)
        q = v[c] // row[c]
        if q:
            v = [a - q * b for a, b in zip(v, row)]
    return tuple(v)
