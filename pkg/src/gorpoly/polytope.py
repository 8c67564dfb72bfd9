"""Lattice polytopes: V/H representations, faces, lattice points in dilations."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from itertools import product
from typing import Iterable, Optional, Sequence

from . import _kernels
from .dd import extreme_rays
from .linalg import (
    dot,
    integer_kernel,
    lattice_inverse,
    rank,
    reduce_modulo,
)

__all__ = [
    "AffineFrame",
    "HRep",
    "VPolytope",
    "FaceLattice",
    "dual_description",
    "polytope_dim",
    "lattice_points",
    "relint_lattice_points",
    "face_lattice",
    "form_sort_key",
]


def form_sort_key(form: Sequence[int]):
    """Order linear forms by last entry, then first nonzero position."""
    head = form[:-1]
    first = next((i for i, x in enumerate(head) if x != 0), len(head))
    return (form[-1], first, tuple(-x for x in head))


_SPARSIFY_MAX_EQUATIONS = 6


@dataclass(frozen=True)
class AffineFrame:
    """Affine lattice ``origin + Z-span(basis)`` with integer coordinates.

    ``basis`` rows are a saturated (HNF) basis of the direction lattice and
    ``inverse`` is an integer left inverse, so ``t = (x - origin) @ inverse``.
    """

    origin: tuple
    basis: tuple
    inverse: tuple

    @classmethod
    def of_points(cls, points: Sequence[Sequence[int]]) -> "AffineFrame":
        n = len(points[0])
        p0 = points[0]
        diffs = [tuple(a - b for a, b in zip(p, p0)) for p in points[1:]]
        normals = integer_kernel(diffs, ncols=n)
        basis = integer_kernel(normals, ncols=n)
        origin = reduce_modulo(p0, basis) if basis else tuple(p0)
        inv = lattice_inverse(basis, n) if basis else [()] * n
        return cls(tuple(origin), tuple(basis), tuple(tuple(r) for r in inv))

    @property
    def dim(self) -> int:
        return len(self.basis)

    def coords(self, x: Sequence, scale: int = 1) -> tuple:
        """Coordinates of ``x`` in the frame dilated by ``scale``."""
        diff = [a - scale * b for a, b in zip(x, self.origin)]
        return tuple(sum(diff[i] * self.inverse[i][j] for i in range(len(diff))) for j in range(self.dim))

    def point(self, t: Sequence, scale: int = 1) -> tuple:
        n = len(self.origin)
        return tuple(scale * self.origin[i] + sum(t[j] * self.basis[j][i] for j in range(self.dim)) for i in range(n))

    def pull_form(self, a: Sequence, b) -> tuple:
        """Ambient ``(normal, offset)`` of the frame inequality ``a . t + b``.

        The representative modulo the affine-hull equations is the one of
        least l1 size found among small combinations of the equations.
        """
        n = len(self.origin)
        normal = tuple(sum(self.inverse[i][j] * a[j] for j in range(self.dim)) for i in range(n))
        offset = b - dot(normal, self.origin)
        eqs = self._equations
        if not eqs or len(eqs) > _SPARSIFY_MAX_EQUATIONS:
            return normal, offset

        def size(v, c):
            return (sum(abs(x) for x in v) + abs(c), tuple(-x for x in v))

        best = (normal, offset)
        for coeffs in product(range(-2, 3), repeat=len(eqs)):
            v = list(normal)
            c = offset
            for k, (e, eb) in zip(coeffs, eqs):
                if k:
                    v = [x + k * y for x, y in zip(v, e)]
                    c += k * eb
            if size(v, c) < size(*best):
                best = (tuple(v), c)
        return best

    @cached_property
    def _equations(self) -> tuple:
        return tuple(self.equations())

    def equations(self) -> list[tuple]:
        n = len(self.origin)
        normals = integer_kernel(list(self.basis), ncols=n) if self.basis else [
            tuple(int(i == j) for j in range(n)) for i in range(n)
        ]
        return [(tuple(a), -dot(a, self.origin)) for a in normals]


@dataclass(frozen=True)
class HRep:
    """``normal . x + offset >= 0`` (inequalities) and ``= 0`` (equations)."""

    inequalities: tuple
    equations: tuple

    def contains(self, x: Sequence, scale=1, strict: bool = False) -> bool:
        for a, b in self.equations:
            if dot(a, x) + scale * b != 0:
                return False
        for a, b in self.inequalities:
            v = dot(a, x) + scale * b
            if v < 0 or (strict and v == 0):
                return False
        return True

    def tight(self, x: Sequence, scale=1) -> frozenset:
        return frozenset(i for i, (a, b) in enumerate(self.inequalities) if dot(a, x) + scale * b == 0)


@dataclass(frozen=True)
class FaceLattice:
    """Faces as ``(dim, vertex index set)`` plus the covering relation."""

    faces: tuple
    covers: tuple

    def count(self, dim: int) -> int:
        return sum(1 for d, _ in self.faces if d == dim)

    def contains(self, i: int, j: int) -> bool:
        """Face ``i`` is contained in face ``j``."""
        return self.faces[i][1] <= self.faces[j][1]


class VPolytope:
    """Convex hull of lattice points given by its vertices.

    Construction verifies that the vertices are distinct and extreme; use
    :meth:`hull` to build from an arbitrary point list.
    """

    def __init__(self, vertices: Iterable[Sequence[int]], name: Optional[str] = None):
        verts = [tuple(int(x) for x in v) for v in vertices]
        if not verts:
            raise ValueError("a polytope needs at least one vertex")
        n = len(verts[0])
        if n < 1 or any(len(v) != n for v in verts):
            raise ValueError("vertices must share a positive ambient dimension")
        if len(set(verts)) != len(verts):
            raise ValueError("vertices are not pairwise distinct")
        self.ambient_dim = n
        self.vertices = tuple(verts)
        self.name = name
        bad = [v for v in self.vertices if not self._is_extreme(v)]
        if bad:
            raise ValueError(f"not an extreme point: {bad[0]}")

    @classmethod
    def hull(cls, points: Iterable[Sequence[int]], name: Optional[str] = None) -> "VPolytope":
        pts = list(dict.fromkeys(tuple(int(x) for x in p) for p in points))
        probe = cls.__new__(cls)
        probe.ambient_dim = len(pts[0])
        probe.vertices = tuple(pts)
        probe.name = name
        return cls([p for p in pts if probe._is_extreme(p)], name=name)

    def __repr__(self):
        label = f"{self.name!r}, " if self.name else ""
        return f"VPolytope({label}{list(self.vertices)})"

    def __eq__(self, other):
        return isinstance(other, VPolytope) and set(self.vertices) == set(other.vertices)

    def __hash__(self):
        return hash(frozenset(self.vertices))

    # frame and facets -------------------------------------------------------

    @cached_property
    def frame(self) -> AffineFrame:
        return AffineFrame.of_points(self.vertices)

    @cached_property
    def dim(self) -> int:
        return self.frame.dim

    @cached_property
    def vertex_coords(self) -> tuple:
        return tuple(self.frame.coords(v) for v in self.vertices)

    @cached_property
    def frame_facets(self) -> tuple:
        """Facet inequalities ``(a, b)`` in frame coordinates: ``a . t + b >= 0``."""
        d = self.dim
        if d == 0:
            return ()
        gens = [tuple(t) + (1,) for t in self.vertex_coords]
        forms = extreme_rays(gens, d + 1)
        pairs = []
        for f in forms:
            normal, offset = self.frame.pull_form(f[:-1], f[-1])
            pairs.append(((tuple(normal) + (offset,)), (tuple(f[:-1]), f[-1])))
        pairs.sort(key=lambda p: form_sort_key(p[0]))
        return tuple(p[1] for p in pairs)

    @cached_property
    def hrep(self) -> HRep:
        ineqs = tuple(self.frame.pull_form(a, b) for a, b in self.frame_facets)
        return HRep(ineqs, tuple(self.frame.equations()))

    def _is_extreme(self, v) -> bool:
        d = self.dim
        if d == 0:
            return len(self.vertices) == 1
        t = self.frame.coords(v)
        tight = [a for a, b in self.frame_facets if dot(a, t) + b == 0]
        return rank(tight) == d if tight else False

    def facet_vertex_sets(self) -> list[frozenset]:
        return [
            frozenset(i for i, t in enumerate(self.vertex_coords) if dot(a, t) + b == 0)
            for a, b in self.frame_facets
        ]

    def contains(self, x: Sequence, scale=1, strict=False) -> bool:
        return self.hrep.contains(x, scale=scale, strict=strict)

    # enumeration ------------------------------------------------------------

    def _frame_points(self, m: int, shrink: int = 0):
        d = self.dim
        lo = [m * min(t[j] for t in self.vertex_coords) for j in range(d)]
        hi = [m * max(t[j] for t in self.vertex_coords) for j in range(d)]
        A = [list(a) for a, _ in self.frame_facets]
        b = [m * bb - shrink for _, bb in self.frame_facets]
        return _kernels.scan_points(A, b, lo, hi)

    def lattice_points(self, m: int = 1) -> list[tuple]:
        if m < 0:
            raise ValueError("dilation factor must be nonnegative")
        if m == 0:
            return []
        pts = [self.frame.point([int(x) for x in t], scale=m) for t in self._frame_points(m)]
        return sorted(pts)

    def relint_lattice_points(self, m: int = 1) -> list[tuple]:
        if m < 1:
            raise ValueError("dilation factor must be positive")
        pts = [self.frame.point([int(x) for x in t], scale=m) for t in self._frame_points(m, shrink=1)]
        return sorted(pts)

    def count_lattice_points(self, m: int = 1, interior: bool = False) -> int:
        if m == 0:
            return 0 if interior else 1
        return len(self._frame_points(m, shrink=1 if interior else 0))

    def barycenter(self) -> tuple:
        k = len(self.vertices)
        return tuple(Fraction(sum(v[i] for v in self.vertices), k) for i in range(self.ambient_dim))


def dual_description(P: VPolytope) -> HRep:
    return P.hrep


def polytope_dim(P: VPolytope) -> int:
    return P.dim


def lattice_points(P: VPolytope, m: int) -> list[tuple]:
    return P.lattice_points(m)


def relint_lattice_points(P: VPolytope, m: int) -> list[tuple]:
    return P.relint_lattice_points(m)


def affine_rank(points: Sequence[Sequence]) -> int:
    """Dimension of the affine hull of ``points`` (-1 when empty)."""
    if not points:
        return -1
    p0 = points[0]
    return rank([[a - b for a, b in zip(p, p0)] for p in points[1:]]) if len(points) > 1 else 0


def face_lattice(P: VPolytope) -> FaceLattice:
    full = frozenset(range(len(P.vertices)))
    found = {full}
    frontier = set(P.facet_vertex_sets())
    while frontier:
        found |= frontier
        nxt = set()
        for a in frontier:
            for b in found:
                c = a & b
                if c not in found:
                    nxt.add(c)
        frontier = nxt
    found.add(frozenset())

    def fdim(s):
        return affine_rank([P.vertices[i] for i in sorted(s)])

    faces = sorted(((fdim(s), s) for s in found), key=lambda f: (f[0], sorted(f[1])))
    covers = []
    for i, (di, si) in enumerate(faces):
        for j, (dj, sj) in enumerate(faces):
            if dj == di + 1 and si < sj:
                covers.append((i, j))
    return FaceLattice(tuple(faces), tuple(covers))
