"""A simplicial polytope whose boundary complex is a regular triangulation of ∂Q.

Lift the lattice points of ``Q`` onto the graph of a convex piecewise
affine function, put an apex far below, and intersect the cone of rays
from the apex through the lifted boundary vertices with a horizontal
hyperplane.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import NamedTuple, Sequence

from .complexes import SimplicialComplex
from .dd import extreme_rays
from .errors import InputError, VerificationError
from .linalg import dot, rank, solve_rational
from .polytope import VPolytope
from .triangulation import Triangulation, WeightVector, regular_subdivision, restrict_to_boundary

__all__ = [
    "LiftedGraph",
    "CrossSection",
    "lift_graph",
    "choose_apex",
    "cross_section_polytope",
    "lift_polytope",
]


@dataclass(frozen=True)
class LiftedGraph:
    """Triangulation ``Σ`` of ``Q`` and the lifted vertices ``(t, f(t))`` in frame coordinates."""

    polytope: VPolytope
    triangulation: Triangulation
    coords: tuple  # frame coordinates of every point of the triangulation
    heights: tuple  # f at every point, min f = 1
    planes: tuple  # per cell (a, b) with f = a . t + b on the cell

    @property
    def vertices(self) -> tuple:
        return self.triangulation.vertices

    def lifted(self) -> list[tuple]:
        return [tuple(self.coords[i]) + (self.heights[i],) for i in self.vertices]


def lift_graph(Q: VPolytope, w: WeightVector) -> LiftedGraph:
    pts = Q.lattice_points(1)
    T = regular_subdivision(pts, w)
    bad = T.non_simplicial_cells()
    if bad:
        raise InputError(f"weights do not induce a triangulation (cell {[T.points[i] for i in bad[0]]})")
    vals = w.on(pts)
    low = min(vals)
    heights = tuple(v - low + 1 for v in vals)
    coords = tuple(Q.frame.coords(p) for p in pts)
    d = Q.dim
    planes = []
    for c in T.cells:
        # f = a . t + b through the d+1 lifted vertices of the cell
        rows = [list(coords[i]) + [1] for i in c]
        sol = solve_rational(rows, [heights[i] for i in c])
        if sol is None:
            raise VerificationError("lift", f"cell {c} has no affine lift")
        planes.append((tuple(sol[:d]), sol[d]))
    return LiftedGraph(Q, T, coords, heights, tuple(planes))


def choose_apex(Q: VPolytope, G: LiftedGraph) -> tuple:
    """``(x, z)``: x the barycenter of Q's vertices, z one below every facet plane at x."""
    x = tuple(Fraction(sum(t[j] for t in Q.vertex_coords), len(Q.vertices)) for j in range(Q.dim))
    if not G.planes:
        return x, Fraction(-1)
    z = min(dot(a, x) + b for a, b in G.planes) - 1
    return x, z


def _integer_row(values) -> tuple:
    fr = [Fraction(v) for v in values]
    den = lcm(*(f.denominator for f in fr))
    return tuple(int(f * den) for f in fr)


def _scaled_direction(t, f, x, z) -> tuple:
    s = Fraction(f) - z
    return tuple((Fraction(a) - b) / s for a, b in zip(t, x))


class CrossSection(NamedTuple):
    """``P′`` with its boundary complex and the checks made on it."""

    vertices: tuple  # rational points of P′, one per boundary vertex of Σ
    source: tuple  # index into Σ's points of each vertex of P′
    facets: tuple  # vertex index sets of the facets of P′
    complex: SimplicialComplex
    simplicial: bool
    equivalent: bool
    interior_inside: bool
    apex: tuple


def _cross_section(G: LiftedGraph, boundary: Triangulation, x, z) -> CrossSection:
    d = G.polytope.dim
    bverts = sorted({i for c in boundary.cells for i in c})
    pts = [_scaled_direction(G.coords[i], G.heights[i], x, z) for i in bverts]
    target = {frozenset(bverts.index(i) for i in c) for c in boundary.cells}
    rows = [_integer_row(list(p) + [1]) for p in pts]
    forms = extreme_rays(rows, d + 1)
    facets = sorted(tuple(k for k, r in enumerate(rows) if dot(f, r) == 0) for f in forms)
    simplicial = all(len(s) == d and rank([rows[k] for k in s]) == d for s in facets)
    extreme = all(rank([f for f in forms if dot(f, rows[k]) == 0]) == d for k in range(len(rows)))
    equivalent = simplicial and extreme and {frozenset(s) for s in facets} == target
    inner = [i for i in G.vertices if i not in set(bverts)]
    inside = all(
        all(dot(f, _integer_row(list(_scaled_direction(G.coords[i], G.heights[i], x, z)) + [1])) > 0 for f in forms)
        for i in inner
    )
    K = SimplicialComplex.from_faces(facets, vertex_count=len(pts))
    return CrossSection(tuple(pts), tuple(bverts), tuple(facets), K, simplicial, equivalent, inside, (x, z))


def cross_section_polytope(G: LiftedGraph, apex: tuple) -> CrossSection:
    """Cross-section of the cone from ``apex`` over the lifted boundary vertices.

    If the boundary complex is not the one of ``Σ|∂Q`` the apex is lowered
    once (``z -> min(2z, z - 1)``) before giving up.
    """
    Q = G.polytope
    if Q.dim == 0:
        return CrossSection((), (), ((),), SimplicialComplex(0, ((),)), True, True, True, apex)
    boundary = restrict_to_boundary(G.triangulation, Q)
    x, z = apex
    for _ in range(2):
        cs = _cross_section(G, boundary, x, z)
        if cs.equivalent and cs.interior_inside:
            return cs
        z = min(2 * z, z - 1)
    raise VerificationError("apex degenerate", "boundary complex of P′ differs from Σ|∂Q; lower z")


def lift_polytope(Q: VPolytope, w: WeightVector) -> CrossSection:
    G = lift_graph(Q, w)
    return cross_section_polytope(G, choose_apex(Q, G))
