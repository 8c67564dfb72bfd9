"""Rational cones, support forms, affine monoids and Hilbert bases."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from itertools import product
from typing import NamedTuple, Optional, Sequence

from .dd import extreme_rays
from .linalg import dot, primitive, rank, smith_normal_form, solve_rational, transpose
from .polytope import AffineFrame, VPolytope, form_sort_key
from .subdivision import pulling_cells

__all__ = [
    "Cone",
    "AffineMonoid",
    "IntegralClosure",
    "cone_over_polytope",
    "standard_embedding",
    "sigma_positive_support",
    "hilbert_basis",
    "monoid_of_polytope",
    "is_integrally_closed",
]


class Cone:
    """Pointed rational cone generated by integer vectors.

    Support forms are primitive on the lattice of the linear span and are
    stored in a fixed order (see :func:`gorpoly.polytope.form_sort_key`).
    """

    def __init__(self, generators: Sequence[Sequence[int]], name: Optional[str] = None):
        gens = [tuple(int(x) for x in g) for g in generators]
        gens = [g for g in gens if any(g)]
        if not gens:
            raise ValueError("a cone needs a nonzero generator")
        self.ambient_dim = len(gens[0])
        self.generators = tuple(dict.fromkeys(gens))
        self.name = name
        self.frame = AffineFrame.of_points([(0,) * self.ambient_dim] + list(self.generators))
        k = self.frame.dim
        coords = [self.frame.coords(g) for g in self.generators]
        forms = extreme_rays(coords, k)
        if rank(forms) < k:
            raise ValueError("cone is not pointed")
        pairs = []
        for f in forms:
            normal, _ = self.frame.pull_form(f, 0)
            pairs.append((normal, f))
        pairs.sort(key=lambda p: form_sort_key(p[0]))
        self.support_forms = tuple(p[0] for p in pairs)
        self.frame_forms = tuple(p[1] for p in pairs)
        self.equations = tuple(a for a, _ in self.frame.equations())

    def __repr__(self):
        return f"Cone(dim={self.dim}, forms={len(self.support_forms)})"

    @property
    def dim(self) -> int:
        return self.frame.dim

    def sigma(self, a: Sequence) -> tuple:
        return tuple(dot(s, a) for s in self.support_forms)

    def in_span(self, x: Sequence) -> bool:
        return all(dot(e, x) == 0 for e in self.equations)

    def contains(self, x: Sequence) -> bool:
        return self.in_span(x) and all(v >= 0 for v in self.sigma(x))

    def in_interior(self, x: Sequence) -> bool:
        return self.in_span(x) and all(v > 0 for v in self.sigma(x))

    @cached_property
    def extreme_generators(self) -> tuple:
        """Primitive integer vectors on the extreme rays, sorted."""
        out = set()
        for g in self.generators:
            vals = self.sigma(g)
            tight = [self.frame_forms[i] for i, v in enumerate(vals) if v == 0]
            if rank(tight) == self.dim - 1 if tight else self.dim == 1:
                out.add(primitive(g))
        return tuple(sorted(out))

    def positive_functional(self) -> tuple:
        """Sum of support forms; positive on every nonzero cone element."""
        return tuple(sum(col) for col in zip(*self.support_forms))

    def triangulate(self) -> list[tuple]:
        """Simplicial cones (index tuples into :attr:`extreme_generators`)."""
        gens = self.extreme_generators
        k = self.dim
        if k == 1:
            return [(0,)]
        ell = self.positive_functional()
        coords = [self.frame.coords(g) for g in gens]
        drop = next(j for j in range(k) if any(c[j] for c in coords) and _frame_functional(self, ell)[j] != 0)
        sections = []
        for g, c in zip(gens, coords):
            s = Fraction(dot(ell, g))
            sections.append(tuple(Fraction(x) / s for j, x in enumerate(c) if j != drop))
        return pulling_cells(sections)


def _frame_functional(cone: Cone, ell) -> tuple:
    # coefficients of ell in frame coordinates
    return tuple(dot(ell, row) for row in cone.frame.basis)


def cone_over_polytope(P: VPolytope) -> Cone:
    """The cone generated by ``P x {1}``."""
    return Cone([tuple(v) + (1,) for v in P.vertices], name=P.name)


def standard_embedding(C: Cone, a: Sequence[int]) -> tuple:
    if not C.in_span(a):
        raise ValueError("vector is not in the linear span of the cone")
    return C.sigma(a)


def sigma_positive_support(C: Cone, x: Sequence) -> frozenset:
    """Indices of support forms that are positive at ``x`` (0-based)."""
    if not C.contains(x):
        raise ValueError("not a cone element")
    return frozenset(i for i, v in enumerate(C.sigma(x)) if v > 0)


def _parallelepiped_points(C: Cone, cell_gens: Sequence[Sequence[int]]) -> list[tuple]:
    """Lattice points of the half-open parallelepiped spanned by ``cell_gens``."""
    k = C.dim
    G = [C.frame.coords(g) for g in cell_gens]
    D, L, R = smith_normal_form(G)
    divs = [D[i][i] for i in range(k)]
    Gt = transpose(G)
    out = []
    # x = w R^-1 ranges over coset representatives of Z^k / (row lattice of G)
    Rinv = _inverse_unimodular(R)
    for w in product(*(range(d) for d in divs)):
        x = [sum(w[i] * Rinv[i][j] for i in range(k)) for j in range(k)]
        lam = solve_rational(Gt, x)
        frac = [l - (l.numerator // l.denominator) for l in lam]
        t = tuple(sum(frac[i] * G[i][j] for i in range(k)) for j in range(k))
        if any(v.denominator != 1 for v in t):
            raise AssertionError("parallelepiped point is not integral")
        t = tuple(int(v) for v in t)
        if any(t):
            out.append(C.frame.point(t))
    return out


def _inverse_unimodular(U):
    from .linalg import _unimodular_inverse

    return _unimodular_inverse(U)


class HilbertBasisResult(NamedTuple):
    basis: list
    degree_bound: int


def _hilbert_basis_with_bound(C: Cone) -> HilbertBasisResult:
    gens = C.extreme_generators
    candidates = set(gens)
    for cell in C.triangulate():
        candidates.update(_parallelepiped_points(C, [gens[i] for i in cell]))
    cands = sorted(candidates)
    sig = {x: C.sigma(x) for x in cands}
    basis = []
    for x in cands:
        sx = sig[x]
        reducible = any(
            y != x and all(a >= b for a, b in zip(sx, sig[y])) for y in cands
        )
        if not reducible:
            basis.append(x)
    bound = max(sum(sig[x]) for x in cands)
    return HilbertBasisResult(basis, bound)


def hilbert_basis(C: Cone) -> list[tuple]:
    """Minimal generating set of ``C`` intersected with the lattice of its span."""
    return _hilbert_basis_with_bound(C).basis


@dataclass(frozen=True)
class AffineMonoid:
    """Normal monoid ``C ∩ L`` with ``L`` the lattice of the span of ``C``."""

    cone: Cone
    lattice_basis: tuple
    hilbert_basis: tuple
    degree_functional: tuple
    degree_bound: int

    @classmethod
    def of_cone(cls, C: Cone, degree_functional: Sequence[int]) -> "AffineMonoid":
        res = _hilbert_basis_with_bound(C)
        return cls(C, C.frame.basis, tuple(res.basis), tuple(degree_functional), res.degree_bound)

    def degree(self, a: Sequence[int]) -> int:
        return dot(self.degree_functional, a)

    def contains(self, a: Sequence[int]) -> bool:
        return all(isinstance(x, int) for x in a) and self.cone.contains(a)

    def in_relint(self, a: Sequence[int]) -> bool:
        return all(isinstance(x, int) for x in a) and self.cone.in_interior(a)


def monoid_of_polytope(P: VPolytope) -> AffineMonoid:
    """The monoid of lattice points of ``C(P)`` graded by the last coordinate."""
    C = cone_over_polytope(P)
    return AffineMonoid.of_cone(C, (0,) * P.ambient_dim + (1,))


class IntegralClosure(NamedTuple):
    closed: bool
    witness: Optional[tuple]


def is_integrally_closed(P: VPolytope, monoid: Optional[AffineMonoid] = None) -> IntegralClosure:
    M = monoid or monoid_of_polytope(P)
    for b in M.hilbert_basis:
        if M.degree(b) >= 2:
            return IntegralClosure(False, b)
    return IntegralClosure(True, None)
