"""Abstract simplicial complexes, their f/h/g-vectors and Macaulay's bound."""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from math import comb
from typing import Iterable, NamedTuple, Sequence, Union

from .ehrhart import HVector

__all__ = [
    "SimplicialComplex",
    "GVector",
    "f_vector",
    "h_vector_complex",
    "minimal_nonfaces",
    "join",
    "euler_characteristic",
    "is_pseudomanifold",
    "sphere_necessary_conditions",
    "dehn_sommerville_check",
    "macaulay_representation",
    "macaulay_bound",
    "is_m_sequence",
    "g_vector",
    "g_theorem_necessity",
]


def _maximal(sets: Iterable[frozenset]) -> list[frozenset]:
    uniq = sorted(set(sets), key=len, reverse=True)
    out = []
    for s in uniq:
        if not any(s <= t for t in out):
            out.append(s)
    return out


@dataclass(frozen=True)
class SimplicialComplex:
    """Complex on vertices ``0..vertex_count-1`` given by its facets.

    The complex ``{∅}`` has the single facet ``()``; the void complex has
    no facets at all.
    """

    vertex_count: int
    facets: tuple

    @classmethod
    def from_faces(cls, faces: Iterable[Iterable[int]], vertex_count: int = None) -> "SimplicialComplex":
        sets = [frozenset(f) for f in faces]
        top = max((max(s) for s in sets if s), default=-1)
        n = top + 1 if vertex_count is None else vertex_count
        if top >= n:
            raise ValueError("face uses a vertex outside the vertex range")
        facets = tuple(sorted(tuple(sorted(s)) for s in _maximal(sets)))
        return cls(n, facets)

    @property
    def dim(self) -> int:
        return max((len(f) for f in self.facets), default=0) - 1

    def is_pure(self) -> bool:
        return len({len(f) for f in self.facets}) <= 1

    def faces(self) -> set[frozenset]:
        out = set()
        for f in self.facets:
            for r in range(len(f) + 1):
                out.update(frozenset(c) for c in combinations(f, r))
        return out

    def contains_face(self, face: Iterable[int]) -> bool:
        s = frozenset(face)
        return any(s <= frozenset(f) for f in self.facets)

    def relabel(self, mapping: Sequence[int], vertex_count: int) -> "SimplicialComplex":
        return SimplicialComplex.from_faces(
            [[mapping[v] for v in f] for f in self.facets], vertex_count=vertex_count
        )


class GVector(NamedTuple):
    entries: tuple

    def __str__(self):
        return " ".join(str(g) for g in self.entries)


def f_vector(K: SimplicialComplex) -> tuple:
    """``(f_-1, f_0, ..., f_dim)``."""
    if not K.facets:
        return ()
    counts = [0] * (K.dim + 2)
    for s in K.faces():
        counts[len(s)] += 1
    return tuple(counts)


def _h_list(K: SimplicialComplex) -> list[int]:
    if not K.is_pure():
        raise ValueError("h-vector needs a pure complex")
    f = f_vector(K)
    d = K.dim + 1
    return [
        sum((-1) ** (k - i) * comb(d - i, k - i) * f[i] for i in range(k + 1))
        for k in range(d + 1)
    ]


def h_vector_complex(K: SimplicialComplex) -> HVector:
    return HVector(tuple(_h_list(K)), K.dim + 1)


def minimal_nonfaces(K: SimplicialComplex) -> list[tuple]:
    faces = K.faces()
    out = [(v,) for v in range(K.vertex_count) if frozenset((v,)) not in faces]
    verts = sorted({v for f in K.facets for v in f})
    for size in range(2, K.dim + 3):
        for c in combinations(verts, size):
            s = frozenset(c)
            if s in faces:
                continue
            if all(s - {v} in faces for v in c):
                out.append(c)
    return sorted(out, key=lambda c: (len(c), c))


def join(K1: SimplicialComplex, K2: SimplicialComplex) -> SimplicialComplex:
    """Join with the vertices of ``K2`` shifted past those of ``K1``."""
    off = K1.vertex_count
    facets = [tuple(a) + tuple(off + v for v in b) for a in K1.facets for b in K2.facets]
    return SimplicialComplex.from_faces(facets, vertex_count=off + K2.vertex_count)


def euler_characteristic(K: SimplicialComplex) -> int:
    f = f_vector(K)
    return sum((-1) ** i * f[i + 1] for i in range(len(f) - 1))


def is_pseudomanifold(K: SimplicialComplex) -> bool:
    """Pure, every ridge in exactly two facets, strongly connected."""
    if not K.facets or not K.is_pure():
        return False
    ridges: dict[frozenset, list[int]] = {}
    for idx, f in enumerate(K.facets):
        for v in f:
            ridges.setdefault(frozenset(f) - {v}, []).append(idx)
    if any(len(owners) != 2 for owners in ridges.values()):
        return False
    seen = {0}
    stack = [0]
    while stack:
        i = stack.pop()
        for owners in ridges.values():
            if i in owners:
                for j in owners:
                    if j not in seen:
                        seen.add(j)
                        stack.append(j)
    return len(seen) == len(K.facets)


class SphereConditions(NamedTuple):
    pseudomanifold: bool
    euler: bool

    @property
    def holds(self) -> bool:
        return self.pseudomanifold and self.euler


def sphere_necessary_conditions(K: SimplicialComplex) -> SphereConditions:
    """Necessary (not sufficient) conditions for ``K`` to be a sphere."""
    d = K.dim + 1
    return SphereConditions(is_pseudomanifold(K), euler_characteristic(K) == 1 + (-1) ** (d - 1))


def dehn_sommerville_check(K: SimplicialComplex) -> bool:
    h = _h_list(K)
    return h == h[::-1]


# Macaulay ------------------------------------------------------------------


def macaulay_representation(a: int, i: int) -> list[tuple]:
    """Pairs ``(k_i, i), (k_{i-1}, i-1), ...`` with ``a = sum binom(k_j, j)``.

    Greedy from the top binomial: ``k_i`` is the largest k with
    ``binom(k, i) <= a``; then repeat with the remainder and ``i - 1``.
    """
    if i < 1:
        raise ValueError("Macaulay representation needs i >= 1")
    out = []
    j = i
    while a > 0 and j >= 1:
        k = j
        while comb(k + 1, j) <= a:
            k += 1
        out.append((k, j))
        a -= comb(k, j)
        j -= 1
    return out


def macaulay_bound(a: int, i: int) -> int:
    """``a^<i>``: the largest possible next value after ``a`` in degree i."""
    return sum(comb(k + 1, j + 1) for k, j in macaulay_representation(a, i))


def is_m_sequence(v: Sequence[int]) -> bool:
    v = list(v)
    if not v or v[0] != 1 or any(x < 0 for x in v):
        return False
    return all(v[i + 1] <= macaulay_bound(v[i], i) for i in range(1, len(v) - 1))


def _coefficients(h: Union[HVector, Sequence[int]]) -> tuple:
    return tuple(h.coefficients) if isinstance(h, HVector) else tuple(h)


def g_vector(h: Union[HVector, Sequence[int]]) -> GVector:
    c = _coefficients(h)
    while len(c) > 1 and c[-1] == 0:
        c = c[:-1]
    if c != c[::-1]:
        raise ValueError("g-vector undefined without symmetry")
    d = len(c) - 1
    return GVector((c[0],) + tuple(c[i] - c[i - 1] for i in range(1, d // 2 + 1)))


def g_theorem_necessity(h: Union[HVector, Sequence[int]]) -> bool:
    return is_m_sequence(g_vector(h).entries)
