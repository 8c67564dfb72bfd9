"""Ehrhart counts and h-vectors of P, relint(P) and the boundary of P."""
from __future__ import annotations

from dataclasses import dataclass
from math import comb
from typing import Sequence, Union

from .errors import VerificationError
from .polytope import VPolytope

__all__ = [
    "HVector",
    "EhrhartData",
    "ehrhart_data",
    "h_vector",
    "interior_h_numerator",
    "boundary_h_vector",
    "is_symmetric",
    "is_unimodal",
    "numerator_from_counts",
]


def _trim(coeffs: Sequence[int]) -> tuple:
    c = list(coeffs)
    while len(c) > 1 and c[-1] == 0:
        c.pop()
    return tuple(c)


@dataclass(frozen=True)
class HVector:
    """Numerator coefficients over ``(1 - t)^denominator_exponent``."""

    coefficients: tuple
    denominator_exponent: int

    def __post_init__(self):
        object.__setattr__(self, "coefficients", _trim(self.coefficients))

    def __iter__(self):
        return iter(self.coefficients)

    def __len__(self):
        return len(self.coefficients)

    def __getitem__(self, i):
        return self.coefficients[i]

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    def __str__(self):
        return " ".join(str(c) for c in self.coefficients)


@dataclass(frozen=True)
class EhrhartData:
    """``counts[m] = E(P, m)`` for m = 0..D+1, ``interior[m] = E(relint P, m)``."""

    dim: int
    counts: tuple
    interior: tuple

    @property
    def boundary(self) -> tuple:
        return tuple(e - i for e, i in zip(self.counts, self.interior))


def ehrhart_data(P: VPolytope, upto: int = None) -> EhrhartData:
    D = P.dim
    top = D + 1 if upto is None else upto
    counts = tuple(P.count_lattice_points(m) for m in range(top + 1))
    interior = (0,) + tuple(P.count_lattice_points(m, interior=True) for m in range(1, top + 1))
    return EhrhartData(D, counts, interior)


def numerator_from_counts(counts: Sequence[int], exponent: int, length: int) -> list[int]:
    """First ``length`` coefficients of ``(1 - t)^exponent * sum counts[m] t^m``."""
    return [
        sum((-1) ** (j - i) * comb(exponent, j - i) * counts[i] for i in range(j + 1))
        for j in range(length)
    ]


def h_vector(P: VPolytope, data: EhrhartData = None) -> HVector:
    data = data or ehrhart_data(P)
    D = data.dim
    return HVector(tuple(numerator_from_counts(data.counts, D + 1, D + 1)), D + 1)


def interior_h_numerator(P: VPolytope, data: EhrhartData = None) -> tuple:
    """Coefficients (index = power of t) of the interior series numerator."""
    data = data or ehrhart_data(P)
    D = data.dim
    return _trim(numerator_from_counts(data.interior, D + 1, D + 2))


def boundary_h_vector(P: VPolytope, data: EhrhartData = None) -> HVector:
    data = data or ehrhart_data(P)
    D = data.dim
    if D == 0:
        # the boundary of a point is the empty complex
        return HVector((1,), 0)
    full = numerator_from_counts(data.boundary, D + 1, D + 2)
    # divide by (1 - t)
    quotient = []
    acc = 0
    for c in full:
        acc += c
        quotient.append(acc)
    if quotient[-1] != 0:
        raise VerificationError("boundary-series", "series not polynomial-divisible")
    return HVector(tuple(quotient[:-1]), D)


def _coeffs(h: Union[HVector, Sequence[int]]) -> tuple:
    return tuple(h.coefficients) if isinstance(h, HVector) else _trim(h)


def is_symmetric(h: Union[HVector, Sequence[int]]) -> bool:
    c = _coeffs(h)
    return c == c[::-1]


def is_unimodal(h: Union[HVector, Sequence[int]]) -> bool:
    c = _coeffs(h)
    i = 0
    while i + 1 < len(c) and c[i] <= c[i + 1]:
        i += 1
    while i + 1 < len(c) and c[i] >= c[i + 1]:
        i += 1
    return i == len(c) - 1
