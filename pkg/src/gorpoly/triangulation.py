"""Triangulations of polytopes and cones built from a Gorenstein certificate.

Cells are stored as sorted tuples of indices into a point list.  For a fan
the points are generators of the rays; for a polytope triangulation they
are lattice points.  ``Γ`` is the union of the faces of the cone cut out by
one support form from each part of the support partition, ``Δ`` joins a
triangulation of ``Γ`` with the simplex on ``y_1, ..., y_m`` and ``Δ′`` is
its image in ``U``.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, product
from typing import Iterable, Mapping, NamedTuple, Optional, Sequence

from .complexes import SimplicialComplex
from .cone import Cone
from .dd import extreme_rays
from .errors import InputError, VerificationError
from .gorenstein import GorensteinCertificate, ReductionResult
from .linalg import determinant, dot, elementary_divisors, mat_vec, rank, solve_rational, transpose
from .polytope import AffineFrame, VPolytope
from .subdivision import lower_hull_cells, pulling_heights

__all__ = [
    "Triangulation",
    "WeightVector",
    "GammaFan",
    "DeltaFan",
    "ProjectedFan",
    "Location",
    "TriangulationPipeline",
    "regular_subdivision",
    "is_unimodular",
    "is_unimodular_cone",
    "normalized_volume",
    "pulling_weights",
    "default_weights",
    "cone_over_triangulation",
    "gamma_subfan",
    "delta_triangulation",
    "locate",
    "project_triangulation",
    "induced_polytope_triangulation",
    "rescale_weights",
    "modify_weights",
    "transport_weights",
    "restrict_to_boundary",
    "build_triangulations",
]

DEFAULT_SEED = 20240601


@dataclass(frozen=True)
class Triangulation:
    """Cells over an indexed point list; ``kind`` is ``"polytope"`` or ``"fan"``."""

    points: tuple
    cells: tuple
    kind: str = "polytope"

    def __post_init__(self):
        if self.kind not in ("polytope", "fan"):
            raise ValueError(f"unknown triangulation kind {self.kind!r}")
        object.__setattr__(self, "points", tuple(tuple(p) for p in self.points))
        object.__setattr__(self, "cells", tuple(sorted(set(tuple(sorted(c)) for c in self.cells))))

    def cell_points(self, cell: Sequence[int]) -> list[tuple]:
        return [self.points[i] for i in cell]

    def _independent(self, cell) -> bool:
        pts = self.cell_points(cell)
        if self.kind == "fan":
            return rank(pts) == len(pts) if pts else True
        if len(pts) <= 1:
            return True
        return rank([[a - b for a, b in zip(p, pts[0])] for p in pts[1:]]) == len(pts) - 1

    @property
    def is_simplicial(self) -> bool:
        return all(self._independent(c) for c in self.cells)

    def non_simplicial_cells(self) -> list[tuple]:
        return [c for c in self.cells if not self._independent(c)]

    @property
    def vertices(self) -> tuple:
        return tuple(sorted({i for c in self.cells for i in c}))

    def cell_sets(self) -> frozenset:
        """Cells as sets of points; independent of how points are indexed."""
        return frozenset(frozenset(self.points[i] for i in c) for c in self.cells)

    def same_cells(self, other: "Triangulation") -> bool:
        return self.cell_sets() == other.cell_sets()

    def complex(self) -> SimplicialComplex:
        return SimplicialComplex.from_faces(self.cells, vertex_count=len(self.points))

    def is_unimodular(self) -> bool:
        test = is_unimodular_cone if self.kind == "fan" else is_unimodular
        return all(test(self.cell_points(c)) for c in self.cells)


class WeightVector(dict):
    """Rational weights keyed by lattice points."""

    def __init__(self, values: Mapping = (), **kw):
        super().__init__({tuple(k): Fraction(v) for k, v in dict(values, **kw).items()})

    def on(self, points: Iterable[Sequence[int]]) -> list[Fraction]:
        out = []
        for p in points:
            p = tuple(p)
            if p not in self:
                raise InputError(f"no weight for lattice point {p}")
            out.append(self[p])
        return out

    def missing(self, points: Iterable[Sequence[int]]) -> list[tuple]:
        return [tuple(p) for p in points if tuple(p) not in self]


# --------------------------------------------------------------------------
# regular subdivisions and unimodularity


def regular_subdivision(points: Sequence[Sequence[int]], w: WeightVector) -> Triangulation:
    """Lower-hull subdivision of ``conv(points)`` for the lift ``x -> (x, w_x)``.

    Non-simplicial cells are allowed; check :attr:`Triangulation.is_simplicial`.
    """
    pts = [tuple(p) for p in points]
    heights = w.on(pts)
    frame = AffineFrame.of_points(pts)
    if frame.dim == 0:
        cells = [tuple(range(len(pts)))]
    else:
        cells = lower_hull_cells([frame.coords(p) for p in pts], heights)
    return Triangulation(tuple(pts), tuple(cells), "polytope")


def is_unimodular(points: Sequence[Sequence[int]]) -> bool:
    """Affinely independent lattice points whose differences span a direct summand."""
    pts = [tuple(p) for p in points]
    if len(pts) <= 1:
        return True
    diffs = [tuple(a - b for a, b in zip(p, pts[0])) for p in pts[1:]]
    return is_unimodular_cone(diffs)


def is_unimodular_cone(generators: Sequence[Sequence[int]]) -> bool:
    gens = [tuple(g) for g in generators]
    if not gens:
        return True
    divs = elementary_divisors(gens, ncols=len(gens[0]))
    return len(divs) == len(gens) and all(d == 1 for d in divs)


def normalized_volume(points: Sequence[Sequence[int]], frame: AffineFrame) -> int:
    """``dim! * volume`` of a full-dimensional simplex of ``frame``."""
    t = [frame.coords(p) for p in points]
    return abs(determinant([[a - b for a, b in zip(p, t[0])] for p in t[1:]]))


def pulling_weights(points: Sequence[Sequence[int]], order: Sequence[int] = None) -> WeightVector:
    """Weights pulling the points in ``order`` (default: list order)."""
    order = list(range(len(points))) if order is None else list(order)
    base = 2 * len(points) + 2
    frame = AffineFrame.of_points([tuple(p) for p in points])
    while True:
        h = pulling_heights(len(order), base)
        w = WeightVector({tuple(points[i]): h[r] for r, i in enumerate(order)})
        T = regular_subdivision(points, w)
        if T.is_simplicial or frame.dim == 0:
            return w
        base *= base


def default_weights(P: VPolytope) -> WeightVector:
    """Pulling weights for the lattice points of ``P``, preferring unimodular results.

    Tries the sorted order, its reverse, and rotations; returns the first
    order whose pulling triangulation is unimodular (else the sorted one).
    """
    pts = P.lattice_points(1)
    n = len(pts)
    base = list(range(n))
    orders = [base, base[::-1]] + [base[r:] + base[:r] for r in range(1, n)]
    first = None
    for order in orders:
        w = pulling_weights(pts, order)
        first = first or w
        if regular_subdivision(pts, w).is_unimodular():
            return w
    return first


def cone_over_triangulation(T: Triangulation) -> Triangulation:
    return Triangulation(tuple(tuple(p) + (1,) for p in T.points), T.cells, "fan")


# --------------------------------------------------------------------------
# proper intersection of cells


def _proper_pair(A: Sequence[Sequence[int]], B: Sequence[Sequence[int]], ia: Sequence[int], ib: Sequence[int]) -> bool:
    """``cn(A) ∩ cn(B) == cn(A ∩ B)`` for linearly independent ``A`` and ``B``.

    The intersection is parametrized by ``(alpha, beta) >= 0`` with
    ``A^T alpha = B^T beta``; every extreme ray must be supported on the
    common generators (given through the index lists ``ia``, ``ib``).
    """
    a, b = len(A), len(B)
    if a == 0 or b == 0:
        return True
    dim = len(A[0])
    rows = [tuple(int(i == j) for j in range(a + b)) for i in range(a + b)]
    for c in range(dim):
        row = tuple(A[i][c] for i in range(a)) + tuple(-B[j][c] for j in range(b))
        if any(row):
            rows.append(row)
            rows.append(tuple(-x for x in row))
    common = set(ia) & set(ib)
    for ray in extreme_rays(rows, a + b):
        if any(ray[i] and ia[i] not in common for i in range(a)):
            return False
        if any(ray[a + j] and ib[j] not in common for j in range(b)):
            return False
    return True


def _check_pairwise(T: Triangulation, coords: Sequence[Sequence[int]], check: str) -> None:
    for c1, c2 in combinations(T.cells, 2):
        if not _proper_pair([coords[i] for i in c1], [coords[i] for i in c2], c1, c2):
            raise VerificationError(check, f"cells {c1} and {c2} do not meet in a common face")


def _homogenized(points: Sequence[Sequence[int]]) -> list[tuple]:
    return [tuple(p) + (1,) for p in points]


def _coefficients(gens: Sequence[Sequence], x: Sequence) -> Optional[tuple]:
    """Coefficients of ``x`` in the independent ``gens`` (``None`` if outside the span)."""
    if not gens:
        return () if not any(x) else None
    sol = solve_rational(transpose(gens), x)
    if sol is None:
        return None
    if tuple(sum(c * g[i] for c, g in zip(sol, gens)) for i in range(len(x))) != tuple(x):
        return None
    return sol


# --------------------------------------------------------------------------
# Γ and Δ


@dataclass(frozen=True)
class GammaFan:
    """Faces ``F_J`` of the cone and the restriction ``Σ`` of a unimodular fan to them.

    ``faces`` holds pairs ``(J, indices)`` where ``J`` picks one support
    form from each part and ``indices`` are the fan points lying in ``F_J``.
    """

    faces: tuple
    sigma: Triangulation


def gamma_subfan(C: Cone, cert: GorensteinCertificate, fan: Triangulation) -> GammaFan:
    """Restrict the unimodular fan ``fan`` of ``C`` to ``Γ``."""
    if fan.kind != "fan":
        raise InputError("gamma_subfan expects a fan over the cone")
    for p in fan.points:
        if not C.contains(p):
            raise InputError(f"fan generator {p} is not in the cone")
    for c in fan.cells:
        if not is_unimodular_cone(fan.cell_points(c)):
            raise InputError(f"cell {c} of the supplied triangulation is not unimodular")
    sig = [C.sigma(p) for p in fan.points]
    faces = []
    for J in product(*(sorted(S) for S in cert.support_partition)):
        Z = frozenset(i for i, s in enumerate(sig) if all(s[j] == 0 for j in J))
        faces.append((J, Z))
    pieces = {frozenset(c) & Z for c in fan.cells for _, Z in faces}
    pieces.discard(frozenset())
    maximal = [s for s in pieces if not any(s < t for t in pieces)]
    cells = [tuple(sorted(s)) for s in maximal] or [()]
    return GammaFan(tuple(faces), Triangulation(fan.points, tuple(cells), "fan"))


class DeltaReport(NamedTuple):
    simplicial: bool
    pairwise: bool
    cover_samples: int
    unimodular: bool


@dataclass(frozen=True)
class DeltaFan:
    """``Δ = Σ ∪ {cn(G, y_i, ...)}``: maximal cells are ``G ∪ {y_1..y_m}``."""

    fan: Triangulation
    sigma: Triangulation
    y_indices: tuple
    cone: Cone = field(repr=False)
    certificate: GorensteinCertificate = field(repr=False)
    report: Optional[DeltaReport] = None

    @property
    def points(self) -> tuple:
        return self.fan.points

    @property
    def cells(self) -> tuple:
        return self.fan.cells

    def join_structure(self) -> tuple:
        """``(cells of Σ, simplex on the y_i)``: Δ is their join."""
        return self.sigma.cells, self.y_indices


def _sample_cone_points(C: Cone, count: int, seed: int) -> list[tuple]:
    rng = random.Random(seed)
    gens = C.extreme_generators
    out = []
    while len(out) < count:
        coeffs = [Fraction(rng.randint(0, 12), rng.randint(1, 7)) for _ in gens]
        if not any(coeffs):
            continue
        out.append(tuple(sum(c * g[i] for c, g in zip(coeffs, gens)) for i in range(C.ambient_dim)))
    return out


def delta_triangulation(
    gamma: GammaFan, cert: GorensteinCertificate, C: Cone, samples: int = 1000, seed: int = DEFAULT_SEED
) -> DeltaFan:
    """Join ``Σ`` with the ``y_i`` and verify the result is a unimodular fan of ``C``."""
    pts = gamma.sigma.points
    try:
        y_idx = tuple(pts.index(tuple(y)) for y in cert.decomposition)
    except ValueError:
        raise VerificationError("delta", "some y_i is not among the fan generators") from None
    cells = tuple(tuple(sorted(set(G) | set(y_idx))) for G in gamma.sigma.cells)
    fan = Triangulation(pts, cells, "fan")
    delta = DeltaFan(fan, gamma.sigma, y_idx, C, cert)

    bad = fan.non_simplicial_cells()
    if bad:
        raise VerificationError("delta-simplicial", f"cell {bad[0]} is not simplicial")
    coords = [C.frame.coords(p) for p in pts]
    _check_pairwise(fan, coords, "delta-pairwise")
    for x in _sample_cone_points(C, samples, seed):
        loc = locate(x, C, cert, delta)
        gens = fan.cell_points(fan.cells[loc.cell])
        back = tuple(sum(c * g[i] for c, g in zip(loc.coefficients, gens)) for i in range(len(x)))
        if back != tuple(x):
            raise VerificationError("delta-cover", f"point {x} not reproduced by its cell")
    if not fan.is_unimodular():
        raise VerificationError("delta-unimodular", "a cell of Δ is not unimodular")
    report = DeltaReport(True, True, samples, True)
    return DeltaFan(fan, gamma.sigma, y_idx, C, cert, report)


class Location(NamedTuple):
    """Cell of Δ containing ``x`` with coefficients in the cell's generator order."""

    cell: int
    coefficients: tuple
    lambdas: tuple
    x_prime: tuple


def locate(x: Sequence, C: Cone, cert: GorensteinCertificate, delta: DeltaFan) -> Location:
    """Locate ``x`` by ``λ_i = min σ_j(x) / σ_j(y_i)`` over ``j`` in part i."""
    x = tuple(Fraction(v) for v in x)
    s = C.sigma(x)
    if not C.in_span(x) or any(v < 0 for v in s):
        raise InputError(f"point {tuple(str(v) for v in x)} is not in the cone")
    lambdas = []
    for y, part in zip(cert.decomposition, cert.support_partition):
        sy = C.sigma(y)
        lambdas.append(min(Fraction(s[j], sy[j]) for j in part))
    xp = tuple(x[i] - sum(l * y[i] for l, y in zip(lambdas, cert.decomposition)) for i in range(len(x)))
    sp = C.sigma(xp)
    if any(v < 0 for v in sp) or not all(any(sp[j] == 0 for j in part) for part in cert.support_partition):
        raise VerificationError("locate", "x' is not in |Γ|")
    pts = delta.fan.points
    ys = set(delta.y_indices)
    for G in delta.sigma.cells:
        alpha = _coefficients([pts[i] for i in G], xp)
        if alpha is None or any(a < 0 for a in alpha):
            continue
        cell = tuple(sorted(set(G) | ys))
        weight = dict(zip(G, alpha))
        for i, l in zip(delta.y_indices, lambdas):
            weight[i] = weight.get(i, 0) + l
        return Location(delta.fan.cells.index(cell), tuple(weight[i] for i in cell), tuple(lambdas), xp)
    raise VerificationError("locate", "x' is not covered by Σ")


# --------------------------------------------------------------------------
# Δ′ on U


class ProjectedReport(NamedTuple):
    unimodular: bool
    pairwise: bool
    injective_samples: int


@dataclass(frozen=True)
class ProjectedFan:
    """``Δ′`` in ``U``-coordinates; ``preimage`` maps its vertices back to Δ's points."""

    fan: Triangulation
    preimage: tuple
    apex: int
    report: ProjectedReport

    @property
    def points(self) -> tuple:
        return self.fan.points

    @property
    def cells(self) -> tuple:
        return self.fan.cells


def project_triangulation(
    delta: DeltaFan, reduction: ReductionResult, samples: int = 200, seed: int = DEFAULT_SEED
) -> ProjectedFan:
    """Cones ``cn(π(G), π(y_1))`` over the maximal cells ``G`` of ``Σ``."""
    pi = reduction.projection
    pts = delta.points
    images = [mat_vec(pi, p) for p in pts]
    y_img = {images[i] for i in delta.y_indices}
    if len(y_img) != 1:
        raise VerificationError("delta-prime", "the y_i have different images")
    apex_img = images[delta.y_indices[0]]
    used = sorted({i for G in delta.sigma.cells for i in G})
    if len({images[i] for i in used} | {apex_img}) != len(used) + 1:
        raise VerificationError("delta-prime-injective", "π identifies two vertices of cn(G) ∪ cn(G, y_1)")
    upoints = sorted(set(images))
    where = {u: k for k, u in enumerate(upoints)}
    apex = where[apex_img]
    preimage = [None] * len(upoints)
    for i in used:
        preimage[where[images[i]]] = i
    preimage[apex] = delta.y_indices[0]
    cells = [tuple(where[images[i]] for i in G) + (apex,) for G in delta.sigma.cells]
    fan = Triangulation(tuple(upoints), tuple(cells), "fan")

    bad = fan.non_simplicial_cells()
    if bad:
        raise VerificationError("delta-prime-simplicial", f"cell {bad[0]} is not simplicial")
    if not fan.is_unimodular():
        raise VerificationError("delta-prime-unimodular", "a cell of Δ′ is not unimodular over U")
    _check_pairwise(fan, fan.points, "delta-prime-pairwise")

    # injectivity of π on the union of the cones cn(G, y_1): lift samples back
    rng = random.Random(seed)
    for _ in range(samples):
        cell = fan.cells[rng.randrange(len(fan.cells))]
        coeffs = [Fraction(rng.randint(0, 9), rng.randint(1, 5)) for _ in cell]
        x = tuple(sum(c * pts[preimage[k]][i] for c, k in zip(coeffs, cell)) for i in range(len(pts[0])))
        u = mat_vec(pi, x)
        lifts = set()
        for other in fan.cells:
            alpha = _coefficients(fan.cell_points(other), u)
            if alpha is None or any(a < 0 for a in alpha):
                continue
            lifts.add(tuple(sum(a * pts[preimage[k]][i] for a, k in zip(alpha, other)) for i in range(len(x))))
        if lifts != {x}:
            raise VerificationError("delta-prime-injective", f"π is not injective near {u}")
    return ProjectedFan(fan, tuple(preimage), apex, ProjectedReport(True, True, samples))


def induced_polytope_triangulation(T: Triangulation) -> Triangulation:
    """Cross-section at height 1 of a fan whose generators all have degree 1."""
    if T.kind != "fan":
        raise InputError("expected a fan")
    for c in T.cells:
        for i in c:
            if T.points[i][-1] != 1:
                raise VerificationError("degree-one", f"generator {T.points[i]} of cell {c} has degree {T.points[i][-1]}")
    pts = tuple(tuple(p[:-1]) or (0,) for p in T.points)
    return Triangulation(pts, T.cells, "polytope")


# --------------------------------------------------------------------------
# weights


def rescale_weights(w: WeightVector, n: int) -> WeightVector:
    """Affine image of ``w`` in ``[1, 1 + 1/n)``: the minimum goes to 1."""
    vals = list(w.values())
    lo, hi = min(vals), max(vals)
    if lo == hi:
        raise InputError("all weights are equal, so they cannot induce a triangulation")
    scale = (hi - lo) * (n + 1)
    return WeightVector({p: 1 + (v - lo) / scale for p, v in w.items()})


def modify_weights(
    w: WeightVector, cert: GorensteinCertificate, n: int, expected: Optional[Triangulation] = None
) -> WeightVector:
    """Rescale ``w`` into ``[1, 1 + 1/n)`` and set the weights of the ``y_i`` to 0.

    With ``expected`` (the triangulation Δ₁) the lower-hull subdivision of
    the new weights is compared with it cell for cell.
    """
    out = rescale_weights(w, n)
    for y in cert.decomposition:
        p = tuple(y[:-1])
        if p not in out:
            raise InputError(f"no weight for lattice point {p}")
        out[p] = Fraction(0)
    if expected is not None:
        got = regular_subdivision(expected.points, out)
        _compare_cells(got, expected, "weight-modification")
    return out


def _compare_cells(got: Triangulation, expected: Triangulation, check: str) -> None:
    a, b = got.cell_sets(), expected.cell_sets()
    if a != b:
        diff = sorted(sorted(c) for c in (a ^ b))[0]
        raise VerificationError(check, f"induced subdivision differs at cell {diff}")


def transport_weights(w_mod: WeightVector, delta_prime: ProjectedFan, delta: DeltaFan, q_points: Sequence) -> WeightVector:
    """Weights on ``Q``: 0 at the interior point, else the weight of the unique preimage."""
    out = {}
    for k, u in enumerate(delta_prime.points):
        q = tuple(u[:-1]) or (0,)
        src = delta_prime.preimage[k]
        if src is None:
            raise VerificationError("transport", f"lattice point {q} of Q has no preimage on |Γ|")
        out[q] = Fraction(0) if k == delta_prime.apex else w_mod[tuple(delta.points[src][:-1])]
    missing = [q for q in q_points if tuple(q) not in out]
    if missing:
        raise VerificationError("transport", f"lattice point {missing[0]} of Q is not a vertex of Δ′")
    return WeightVector(out)


def restrict_to_boundary(T: Triangulation, P: Optional[VPolytope] = None) -> Triangulation:
    """Subcomplex of faces of cells lying in the boundary of the triangulated polytope."""
    P = P or VPolytope.hull(T.points)
    pieces = set()
    for a, b in P.hrep.inequalities:
        tight = {i for i, p in enumerate(T.points) if dot(a, p) + b == 0}
        for c in T.cells:
            s = frozenset(c) & tight
            if s:
                pieces.add(s)
    maximal = [s for s in pieces if not any(s < t for t in pieces)]
    cells = [tuple(sorted(s)) for s in maximal] or [()]
    return Triangulation(T.points, tuple(cells), "polytope")


# --------------------------------------------------------------------------
# the whole chain


@dataclass(frozen=True)
class TriangulationPipeline:
    weights: WeightVector
    xi: Triangulation
    gamma: GammaFan
    delta: DeltaFan
    delta1: Triangulation
    modified_weights: WeightVector
    delta_prime: ProjectedFan
    delta1_prime: Triangulation
    q_weights: WeightVector
    boundary: Triangulation


def build_triangulations(
    P: VPolytope,
    reduction: ReductionResult,
    weights: Optional[WeightVector] = None,
    samples: int = 1000,
    seed: int = DEFAULT_SEED,
) -> TriangulationPipeline:
    """Ξ from ``weights`` (default: pulling), then Γ, Δ, Δ₁, w′, Δ′, Δ′₁ and ∂Q."""
    cert = reduction.certificate
    pts = P.lattice_points(1)
    w = weights if weights is not None else default_weights(P)
    missing = w.missing(pts)
    if missing:
        raise InputError(f"no weight for lattice point {missing[0]}")
    w = WeightVector({p: w[p] for p in pts})
    xi = regular_subdivision(pts, w)
    bad = xi.non_simplicial_cells()
    if bad:
        raise InputError(f"weights induce a non-simplicial cell {[xi.points[i] for i in bad[0]]}")
    for c in xi.cells:
        if not is_unimodular(xi.cell_points(c)):
            raise InputError(f"cell {[xi.points[i] for i in c]} of the weight triangulation is not unimodular")
    from .cone import cone_over_polytope

    C = cone_over_polytope(P)
    gamma = gamma_subfan(C, cert, cone_over_triangulation(xi))
    delta = delta_triangulation(gamma, cert, C, samples=samples, seed=seed)
    delta1 = induced_polytope_triangulation(delta.fan)
    n = P.dim + 1
    w_mod = modify_weights(w, cert, n, expected=delta1) if len(pts) > 1 else w
    dprime = project_triangulation(delta, reduction, seed=seed)
    d1p = induced_polytope_triangulation(dprime.fan)
    q_pts = reduction.Q.lattice_points(1)
    wq = transport_weights(w_mod, dprime, delta, q_pts)
    if reduction.Q.dim > 0:
        _compare_cells(regular_subdivision(d1p.points, wq), d1p, "reduced-weights")
    boundary = restrict_to_boundary(d1p, reduction.Q)
    return TriangulationPipeline(w, xi, gamma, delta, delta1, w_mod, dprime, d1p, wq, boundary)
