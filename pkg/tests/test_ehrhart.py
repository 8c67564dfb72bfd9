import pytest
from hypothesis import given, settings, strategies as st

from gorpoly.cone import monoid_of_polytope
from gorpoly.ehrhart import (
    HVector,
    boundary_h_vector,
    ehrhart_data,
    h_vector,
    interior_h_numerator,
    is_symmetric,
    is_unimodal,
)
from gorpoly.gorenstein import gorenstein_certificate
from gorpoly.polytope import VPolytope

from conftest import GORENSTEIN, NON_GORENSTEIN
from oracles import magic_squares, series_numerator


def test_h_examples(square, cube, birkhoff):
    assert tuple(h_vector(square)) == (1, 1)
    assert tuple(h_vector(cube)) == (1, 4, 1)
    assert tuple(h_vector(birkhoff)) == (1, 1, 1)
    assert h_vector(birkhoff).denominator_exponent == 5


def test_birkhoff_counts_vs_magic_squares(birkhoff):
    data = ehrhart_data(birkhoff)
    assert data.counts == (1, 6, 21, 55, 120, 231)
    assert data.counts[1:] == tuple(len(magic_squares(m)) for m in range(1, 6))


def test_interior_examples(square, corpus, birkhoff):
    assert interior_h_numerator(square) == (0, 0, 1, 1)
    assert interior_h_numerator(corpus["unit-segment"]) == (0, 0, 1)
    assert interior_h_numerator(birkhoff) == (0, 0, 0, 1, 1, 1)
    assert ehrhart_data(birkhoff).interior[3:6] == (1, 6, 21)


def test_boundary_examples(square, segment2, corpus):
    assert tuple(boundary_h_vector(square)) == (1, 2, 1)
    assert tuple(boundary_h_vector(segment2)) == (1, 1)
    # boundary of the unimodal triangle: E(m) = 3m, 3t/(1-t)^2 = (t + t^2 + ... ) ... over (1-t)^2 -> 1 + t + t^2
    assert tuple(boundary_h_vector(corpus["simplex2"])) == (1, 1, 1)


def test_boundary_of_point():
    assert tuple(boundary_h_vector(VPolytope([(3, 5)]))) == (1,)


def test_predicates():
    assert is_symmetric((1, 4, 1)) and not is_symmetric((1, 3)) and is_symmetric((1, 1, 1))
    assert is_unimodal((1, 4, 1)) and not is_unimodal((1, 0, 1)) and is_unimodal((1, 2, 2, 1))
    assert is_symmetric(HVector((1, 2, 1, 0), 4))


@pytest.mark.parametrize("name", GORENSTEIN + NON_GORENSTEIN)
def test_h_vs_series_oracle(corpus, name):
    P = corpus[name]
    data = ehrhart_data(P, upto=P.dim + 6)
    h = h_vector(P, data)
    series = series_numerator(data.counts, P.dim + 1)
    # the numerator is a polynomial of degree <= dim
    assert tuple(series[: len(h)]) == tuple(h)
    assert all(c == 0 for c in series[len(h):])
    assert h[0] == 1 and all(c >= 0 for c in h)


@pytest.mark.parametrize("name", GORENSTEIN + NON_GORENSTEIN)
def test_interior_plus_boundary(corpus, name):
    P = corpus[name]
    data = ehrhart_data(P)
    for m in range(1, P.dim + 2):
        assert data.counts[m] == data.interior[m] + data.boundary[m]


@pytest.mark.parametrize("name", [n for n in GORENSTEIN + NON_GORENSTEIN if n != "point"])
def test_reciprocity_shape(corpus, name):
    P = corpus[name]
    D = P.dim
    data = ehrhart_data(P, upto=D + 6)
    h = list(h_vector(P, data)) + [0] * (D + 1)
    expected = [0] * (D + 2)
    for i in range(D + 1):
        expected[D + 1 - i] += h[i]
    assert list(interior_h_numerator(P, data)) + [0] * (D + 2 - len(interior_h_numerator(P, data))) == expected
    # cross-check interior counts beyond D+1 by the series oracle
    num = series_numerator(data.interior, D + 1)
    assert num[: D + 2] == expected and not any(num[D + 2:])


@pytest.mark.parametrize("name", [n for n in GORENSTEIN + NON_GORENSTEIN if n != "point"])
def test_boundary_series(corpus, name):
    P = corpus[name]
    D = P.dim
    data = ehrhart_data(P, upto=D + 6)
    hb = list(boundary_h_vector(P, data))
    num = series_numerator(data.boundary, D)
    assert num[: len(hb)] == hb and not any(num[len(hb):])


@pytest.mark.parametrize("name", GORENSTEIN + NON_GORENSTEIN)
def test_symmetry_iff_gorenstein(corpus, name):
    P = corpus[name]
    cert = gorenstein_certificate(monoid_of_polytope(P))
    assert is_symmetric(h_vector(P)) == (cert is not None)


REFLEXIVE = {
    "square-2": [(-1, -1), (1, -1), (-1, 1), (1, 1)],
    "triangle-3": [(-1, -1), (2, -1), (-1, 2)],
    "octahedron": [(1, 0, 0), (-1, 0, 0), (0, 1, 0), (0, -1, 0), (0, 0, 1), (0, 0, -1)],
}


@pytest.mark.parametrize("name", ["hexagon"] + sorted(REFLEXIVE))
def test_reflexive_interior_shift(corpus, name):
    # a single interior point in degree 1: interior numerator = t * h
    P = corpus[name] if name in corpus else VPolytope(REFLEXIVE[name])
    assert P.count_lattice_points(1, interior=True) == 1
    h = list(h_vector(P))
    assert list(interior_h_numerator(P)) == [0] + h


def test_rect_not_symmetric(corpus):
    assert tuple(h_vector(corpus["rect-1x2"])) == (1, 3)
    assert not is_symmetric(h_vector(corpus["rect-1x2"]))


pts = st.lists(st.tuples(st.integers(0, 3), st.integers(0, 3)), min_size=3, max_size=6, unique=True)


@settings(max_examples=30, deadline=None)
@given(pts)
def test_random_polygons(points):
    P = VPolytope.hull(points)
    if P.dim < 2:
        return
    data = ehrhart_data(P, upto=8)
    h = h_vector(P, data)
    num = series_numerator(data.counts, 3)
    assert num[: len(h)] == list(h) and not any(num[len(h):])
    assert h[0] == 1 and all(c >= 0 for c in h)
    assert sum(h) == 2 * _area(P)


def _area(P):
    # shoelace on the vertices in angular order
    from math import atan2

    cx = sum(v[0] for v in P.vertices) / len(P.vertices)
    cy = sum(v[1] for v in P.vertices) / len(P.vertices)
    vs = sorted(P.vertices, key=lambda v: atan2(v[1] - cy, v[0] - cx))
    s = sum(vs[i][0] * vs[i - 1][1] - vs[i - 1][0] * vs[i][1] for i in range(len(vs)))
    return abs(s) / 2
