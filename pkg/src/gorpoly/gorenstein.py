"""Gorenstein points, their degree-1 decompositions and the reduction P -> Q.

A normal positive monoid ``M`` is Gorenstein exactly when the support
forms take the value 1 simultaneously at some lattice point ``y``.  Writing
``y = y_1 + ... + y_m`` with degree-1 Hilbert basis elements and factoring
out the differences ``y_i - y_{i+1}`` yields a polytope ``Q`` with a single
interior lattice point and the same h-vector.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, prod
from typing import NamedTuple, Optional, Sequence

from . import _kernels
from .cone import AffineMonoid, Cone, is_integrally_closed, monoid_of_polytope
from .ehrhart import HVector, boundary_h_vector, h_vector
from .errors import VerificationError
from .linalg import (
    complete_to_unimodular,
    dot,
    mat_mul,
    mat_vec,
    smith_normal_form,
    solve_rational,
    transpose,
)
from .polytope import VPolytope

__all__ = [
    "GorensteinCertificate",
    "ReductionResult",
    "SeriesCheck",
    "find_gorenstein_point",
    "decompose_gorenstein_point",
    "gorenstein_certificate",
    "graded_degree",
    "reduce_polytope",
    "hilbert_series_identity_check",
    "graded_counts",
]


@dataclass(frozen=True)
class GorensteinCertificate:
    y: tuple
    decomposition: tuple
    support_partition: tuple
    k: tuple
    forms: tuple = field(repr=False)

    @property
    def m(self) -> int:
        return len(self.decomposition)

    @property
    def degree_form(self) -> tuple:
        """The linear form ``a -> deg(a)`` as an ambient integer vector."""
        n = len(self.y)
        out = [0] * n
        for r, part in enumerate(self.support_partition):
            c = prod(kj for j, kj in enumerate(self.k) if j != r)
            for i in part:
                for t in range(n):
                    out[t] += c * self.forms[i][t]
        return tuple(out)

    @property
    def generator_degree(self) -> int:
        return prod(self.k)


def find_gorenstein_point(M: AffineMonoid) -> Optional[tuple]:
    """The lattice point ``y`` with all support forms equal to 1, if any."""
    C = M.cone
    sol = solve_rational(C.frame_forms, [1] * len(C.frame_forms))
    if sol is None or any(v.denominator != 1 for v in sol):
        return None
    y = C.frame.point([int(v) for v in sol])
    if C.sigma(y) != (1,) * len(C.support_forms):
        raise VerificationError("gorenstein-point", "solution does not evaluate to all ones")
    return y


def decompose_gorenstein_point(M: AffineMonoid, y: Sequence[int]) -> list[tuple]:
    """Lexicographically first split of ``y`` into degree-1 Hilbert basis elements.

    Candidates are degree-1 elements whose support-form values are 0/1;
    their positive supports must partition all support forms.
    """
    C = M.cone
    s = len(C.support_forms)
    cands = []
    for b in sorted(M.hilbert_basis):
        if M.degree(b) != 1:
            continue
        sig = C.sigma(b)
        if all(v in (0, 1) for v in sig):
            cands.append((b, frozenset(i for i, v in enumerate(sig) if v)))
    full = frozenset(range(s))

    def search(start, covered, chosen):
        if covered == full:
            return list(chosen)
        for j in range(start, len(cands)):
            b, supp = cands[j]
            if supp and not (supp & covered):
                found = search(j + 1, covered | supp, chosen + [b])
                if found is not None:
                    return found
        return None

    found = search(0, frozenset(), [])
    if found is None:
        raise VerificationError("decomposition", "Gorenstein point not degree-1 decomposable")
    total = tuple(sum(col) for col in zip(*found))
    if total != tuple(y):
        raise VerificationError("decomposition", f"parts sum to {total}, not {tuple(y)}")
    return found


def gorenstein_certificate(M: AffineMonoid) -> Optional[GorensteinCertificate]:
    y = find_gorenstein_point(M)
    if y is None:
        return None
    parts = decompose_gorenstein_point(M, y)
    C = M.cone
    supports = tuple(frozenset(i for i, v in enumerate(C.sigma(p)) if v > 0) for p in parts)
    union = frozenset().union(*supports)
    if sum(len(s) for s in supports) != len(C.support_forms) or len(union) != len(C.support_forms):
        raise VerificationError("support-partition", "supports do not partition the support forms")
    if M.degree(y) != len(parts):
        raise VerificationError("decomposition", "number of parts differs from deg(y)")
    return GorensteinCertificate(
        y=tuple(y),
        decomposition=tuple(tuple(p) for p in parts),
        support_partition=supports,
        k=tuple(len(s) for s in supports),
        forms=C.support_forms,
    )


def graded_degree(cert: GorensteinCertificate, a: Sequence[int]) -> int:
    """``sum_r (prod_{j != r} k_j) * sum_{i in supp(y_r)} sigma_i(a)``."""
    return dot(cert.degree_form, a)


# --------------------------------------------------------------------------
# reduction


@dataclass(frozen=True)
class ReductionResult:
    """Projection of ``E(P)`` onto ``U`` and the reduced polytope ``Q``.

    ``projection`` maps ambient homogeneous points ``(x, 1)`` of ``E(P)`` to
    ``U``-coordinates whose last entry is the height; ``Q`` lives in the
    remaining coordinates.
    """

    certificate: GorensteinCertificate
    projection: tuple
    kernel_basis: tuple
    Q: VPolytope
    interior_point: tuple
    h_P: HVector
    h_Q: HVector
    h_boundary_Q: HVector

    def project(self, x: Sequence[int]) -> tuple:
        return mat_vec(self.projection, x)

    def project_to_q(self, point: Sequence[int]) -> tuple:
        """Image of a lattice point of ``P`` as a point of ``Q``."""
        u = self.project(tuple(point) + (1,))
        if u[-1] != 1:
            raise VerificationError("projection", "height is not preserved")
        return _q_coords(u)


def _q_coords(u: Sequence[int]) -> tuple:
    # when U is spanned by the height alone, Q is the point 0 of Z^1
    return tuple(u[:-1]) or (0,)


def _frame_homogenizer(P: VPolytope) -> list[tuple]:
    """Integer matrix sending ambient ``(x, h)`` to frame coordinates ``(t, h)``."""
    fr = P.frame
    n = P.ambient_dim
    d = P.dim
    rows = []
    for j in range(d):
        col = [fr.inverse[i][j] for i in range(n)]
        rows.append(tuple(col) + (-dot(fr.origin, col),))
    rows.append((0,) * n + (1,))
    return rows


def _u_projection(kernel: Sequence[Sequence[int]], k: int) -> list[tuple]:
    """Surjection Z^k -> Z^(k - rank) whose kernel is spanned by ``kernel``."""
    if not kernel:
        return [tuple(int(i == j) for j in range(k)) for i in range(k)]
    D, L, R = smith_normal_form(kernel, ncols=k)
    r = len(kernel)
    if any(D[i][i] != 1 for i in range(r)):
        raise VerificationError("kernel-saturation", "differences y_i - y_(i+1) are not part of a lattice basis")
    # rows of kernel @ R are supported on the first r coordinates
    return [tuple(row) for row in transpose(R)[r:]]


def reduce_polytope(P: VPolytope, monoid: AffineMonoid = None, certificate: GorensteinCertificate = None) -> ReductionResult:
    M = monoid or monoid_of_polytope(P)
    closure = is_integrally_closed(P, M)
    if not closure.closed:
        raise ValueError(f"polytope is not integrally closed (witness {closure.witness})")
    cert = certificate or gorenstein_certificate(M)
    if cert is None:
        raise ValueError("polytope is not Gorenstein")
    m = cert.m
    H = _frame_homogenizer(P)
    k = P.dim + 1
    Y = [mat_vec(H, y) for y in cert.decomposition]
    diffs_frame = [tuple(a - b for a, b in zip(Y[i], Y[i + 1])) for i in range(m - 1)]
    kernel_ambient = tuple(
        tuple(a - b for a, b in zip(cert.decomposition[i], cert.decomposition[i + 1])) for i in range(m - 1)
    )
    pi0 = _u_projection(diffs_frame, k)
    lattice_pts = P.lattice_points(1)
    if m > 1:
        # coordinates on U with the height last
        height = solve_rational(transpose(pi0), [0] * (k - 1) + [1])
        if height is None or any(v.denominator != 1 for v in height):
            raise VerificationError("height", "height does not descend to U")
        h_u = tuple(int(v) for v in height)
        W, _ = complete_to_unimodular([h_u], len(h_u))
        V = [tuple(r) for r in W[1:]] + [tuple(W[0])]
        pi1 = mat_mul(V, pi0)
        imgs = [mat_vec(pi1, mat_vec(H, tuple(p) + (1,))) for p in lattice_pts]
        r = len(pi1)
        shift = [-min(u[i] for u in imgs) for i in range(r - 1)]
        shift.append(0)
        T = [tuple(int(i == j) + (shift[i] if j == r - 1 else 0) for j in range(r)) for i in range(r)]
        pi_u = mat_mul(T, pi1)
    else:
        pi_u = pi0
    projection = tuple(tuple(row) for row in mat_mul(pi_u, H))

    images = []
    for p in lattice_pts:
        u = mat_vec(projection, tuple(p) + (1,))
        if u[-1] != 1:
            raise VerificationError("projection", "height is not preserved")
        images.append(_q_coords(u))
    Q = VPolytope.hull(sorted(set(images)), name=f"Q({P.name})" if P.name else "Q")
    p_int = _q_coords(mat_vec(projection, tuple(cert.decomposition[0])))

    for y in cert.decomposition:
        if _q_coords(mat_vec(projection, y)) != p_int:
            raise VerificationError("projection", "the y_i do not share one image")
    MQ = monoid_of_polytope(Q)
    if not is_integrally_closed(Q, MQ).closed:
        raise VerificationError("Q-integrally-closed", "Q is not integrally closed")
    interior = Q.relint_lattice_points(1)
    if interior != [tuple(p_int)]:
        raise VerificationError("Q-interior", f"interior lattice points of Q are {interior}, expected [{p_int}]")
    hP = h_vector(P)
    hQ = h_vector(Q)
    hB = boundary_h_vector(Q)
    if not (hP.coefficients == hQ.coefficients == hB.coefficients):
        raise VerificationError("h-vectors", f"h(P)={hP}, h(Q)={hQ}, h(boundary Q)={hB}")
    return ReductionResult(cert, projection, kernel_ambient, Q, tuple(p_int), hP, hQ, hB)


# --------------------------------------------------------------------------
# graded series


def graded_counts(C: Cone, degree_form: Sequence[int], top: int, use_numba=None) -> list[int]:
    """``counts[d]`` = number of lattice points of ``C`` (in its span lattice) of degree d."""
    basis = C.frame.basis
    deg_t = [dot(degree_form, row) for row in basis]
    A = [list(f) for f in C.frame_forms] + [[-x for x in deg_t]]
    b = [0] * len(C.frame_forms) + [top]
    lo, hi = [0] * C.dim, [0] * C.dim
    for g in C.extreme_generators:
        c = C.frame.coords(g)
        dg = dot(deg_t, c)
        if dg <= 0:
            raise ValueError("degree form is not positive on the cone")
        for j, x in enumerate(c):
            v = Fraction(top * x, dg)
            lo[j] = min(lo[j], v.numerator // v.denominator)
            hi[j] = max(hi[j], -((-v.numerator) // v.denominator))
    return _kernels.scan_degree_counts(A, b, lo, hi, deg_t, top, use_numba=use_numba)


class SeriesCheck(NamedTuple):
    holds: bool
    table: list  # rows (degree, H_R, (1 - t^K)^(m-1) H_R, H_N)


def hilbert_series_identity_check(M: AffineMonoid, cert: GorensteinCertificate, top: int = 20, projection=None) -> SeriesCheck:
    """Compare ``H_N`` with ``(1 - t^(k_1...k_m))^(m-1) H_R`` up to ``t^top``.

    ``projection`` maps ambient points of ``gp(M)`` onto ``U``; when absent it
    is built from the kernel spanned by the differences ``y_i - y_(i+1)``.
    """
    C = M.cone
    deg = cert.degree_form
    HR = graded_counts(C, deg, top)
    m = cert.m
    K = cert.generator_degree
    factor = [0] * (top + 1)
    for j in range(m):
        if j * K <= top:
            factor[j * K] += (-1) ** j * comb(m - 1, j)
    rhs = [sum(factor[i] * HR[d - i] for i in range(d + 1)) for d in range(top + 1)]

    if projection is None:
        kernel = [tuple(C.frame.coords(tuple(a - b for a, b in zip(cert.decomposition[i], cert.decomposition[i + 1])))) for i in range(m - 1)]
        pi0 = _u_projection(kernel, C.dim)
        coords_map = [tuple(C.frame.inverse[i][j] for i in range(C.ambient_dim)) for j in range(C.dim)]
        projection = mat_mul(pi0, coords_map)
    projection = [tuple(r) for r in projection]
    img = [mat_vec(projection, g) for g in C.extreme_generators]
    CN = Cone(img)
    # degree on U: deg_U . pi(e) = deg(e) on gp(M)
    span = [C.frame.point(tuple(int(i == j) for j in range(C.dim))) for i in range(C.dim)]
    rows = [mat_vec(projection, s) for s in span]
    sol = solve_rational(rows, [dot(deg, s) for s in span])
    if sol is None or any(v.denominator != 1 for v in sol):
        raise VerificationError("degree-descends", "deg does not factor through the projection")
    deg_u = tuple(int(v) for v in sol)
    if CN.frame.dim != len(deg_u):
        raise VerificationError("projection", "projected cone is not full-dimensional in U")
    HN = graded_counts(CN, deg_u, top)
    table = [(d, HR[d], rhs[d], HN[d]) for d in range(top + 1)]
    return SeriesCheck(all(r[2] == r[3] for r in table), table)
