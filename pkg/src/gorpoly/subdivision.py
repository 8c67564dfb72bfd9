"""Lower hulls of lifted point configurations."""
from __future__ import annotations

from fractions import Fraction
from math import lcm
from typing import Sequence

from .dd import extreme_rays
from .linalg import rank

__all__ = ["lower_hull_cells", "pulling_heights", "is_triangulation_cells"]


def _integer_row(values) -> tuple:
    fr = [Fraction(v) for v in values]
    den = lcm(*(f.denominator for f in fr)) if fr else 1
    return tuple(int(f * den) for f in fr)


def lower_hull_cells(points: Sequence[Sequence], heights: Sequence) -> list[tuple]:
    """Cells of the regular subdivision of ``points`` induced by ``heights``.

    ``points`` must affinely span R^r (entries may be rational).  Each cell
    is the sorted tuple of indices of points whose lift lies on one lower
    facet of the lifted hull, so cells may contain non-vertex points.
    """
    r = len(points[0])
    gens = [_integer_row(list(p) + [h, 1]) for p, h in zip(points, heights)]
    if rank(gens) < r + 2:
        return [tuple(range(len(points)))]
    cells = []
    for f in extreme_rays(gens, r + 2):
        if f[r] <= 0:
            continue
        cells.append(tuple(i for i, g in enumerate(gens) if sum(a * b for a, b in zip(f, g)) == 0))
    return sorted(set(cells))


def is_triangulation_cells(points: Sequence[Sequence], cells: Sequence[Sequence[int]]) -> bool:
    """Every cell has exactly r+1 affinely independent points."""
    r = len(points[0])
    for c in cells:
        if len(c) != r + 1:
            return False
        p0 = points[c[0]]
        if rank([[Fraction(a) - Fraction(b) for a, b in zip(points[i], p0)] for i in c[1:]]) != r:
            return False
    return True


def pulling_heights(count: int, base: int) -> list[int]:
    """Heights pulling the points in order: the first is lifted lowest."""
    return [-(base ** (count - 1 - i)) for i in range(count)]


def pulling_cells(points: Sequence[Sequence]) -> list[tuple]:
    """A pulling triangulation of ``points`` (full-dimensional in R^r)."""
    base = 2 * len(points) + 2
    while True:
        cells = lower_hull_cells(points, pulling_heights(len(points), base))
        if is_triangulation_cells(points, cells):
            return cells
        base *= base
