import pytest
from hypothesis import given, settings, strategies as st

from gorpoly.polytope import (
    VPolytope,
    dual_description,
    face_lattice,
    lattice_points,
    polytope_dim,
    relint_lattice_points,
)

from conftest import permutation_matrices
from oracles import box_points, brute_facets, magic_squares


def test_square_hrep(square):
    H = dual_description(square)
    assert H.equations == ()
    assert sorted(H.inequalities) == sorted([((1, 0), 0), ((0, 1), 0), ((-1, 0), 1), ((0, -1), 1)])


def test_point_hrep():
    H = dual_description(VPolytope([(3, 5)]))
    assert H.inequalities == ()
    assert len(H.equations) == 2
    assert H.contains((3, 5)) and not H.contains((3, 4))


def test_segment_in_plane():
    H = dual_description(VPolytope([(0, 0), (2, 0)]))
    assert len(H.equations) == 1 and len(H.inequalities) == 2
    (a, b), = H.equations
    assert b == 0 and a[0] == 0 and abs(a[1]) == 1
    assert H.contains((1, 0)) and not H.contains((3, 0)) and not H.contains((1, 1))


@pytest.mark.parametrize("name", ["unit-square", "unit-cube3", "simplex2", "simplex3", "hexagon", "rect-1x2"])
def test_full_dim_facets_match_bruteforce(corpus, name):
    P = corpus[name]
    H = dual_description(P)
    assert sorted(tuple(a) + (b,) for a, b in H.inequalities) == brute_facets(list(P.vertices))


def test_irredundant(corpus):
    for P in corpus.values():
        H = dual_description(P)
        for i, (a, b) in enumerate(H.inequalities):
            # each facet carries at least dim affinely independent vertices
            tight = [v for v in P.vertices if sum(x * y for x, y in zip(a, v)) + b == 0]
            assert len(tight) >= P.dim
            assert any(sum(x * y for x, y in zip(a, v)) + b > 0 for v in P.vertices), i


def test_vertices_satisfy_hrep(corpus):
    for P in corpus.values():
        H = dual_description(P)
        for v in P.vertices:
            assert H.contains(v)
            # a vertex lies on at least dim facets
            assert len(H.tight(v)) >= P.dim


def test_dims(square, birkhoff):
    assert polytope_dim(square) == 2
    assert polytope_dim(VPolytope([(3, 5)])) == 0
    assert polytope_dim(birkhoff) == 4


def test_birkhoff_vertices(birkhoff):
    assert sorted(birkhoff.vertices) == sorted(permutation_matrices(3))


def test_lattice_points_examples(square, birkhoff):
    assert len(lattice_points(square, 2)) == 9
    assert lattice_points(square, 0) == []
    assert len(lattice_points(birkhoff, 2)) == 21
    assert relint_lattice_points(square, 2) == [(1, 1)]
    assert relint_lattice_points(square, 1) == []
    assert relint_lattice_points(birkhoff, 3) == [(1,) * 9]


@pytest.mark.parametrize("m", [1, 2, 3, 4])
def test_birkhoff_counts_vs_magic_squares(birkhoff, m):
    assert lattice_points(birkhoff, m) == sorted(magic_squares(m))


@pytest.mark.parametrize("name", ["unit-square", "unit-cube3", "simplex2", "simplex3", "hexagon", "rect-1x2", "unit-segment", "segment-2"])
@pytest.mark.parametrize("m", [1, 2, 3, 4])
def test_counts_vs_box_scan(corpus, name, m):
    P = corpus[name]
    assert lattice_points(P, m) == sorted(box_points(list(P.vertices), m))
    assert relint_lattice_points(P, m) == sorted(box_points(list(P.vertices), m, strict=True))


def test_lower_dim_points_satisfy_dilated_hrep(corpus):
    for P in corpus.values():
        H = dual_description(P)
        for m in (1, 2, 3):
            for x in lattice_points(P, m):
                assert H.contains(x, scale=m)


def test_lattice_points_sorted(join_tetra):
    pts = lattice_points(join_tetra, 2)
    assert pts == sorted(pts)


def test_face_lattice_counts(corpus, cube):
    tri = face_lattice(corpus["simplex2"])
    assert len(tri.faces) == 8
    sq = face_lattice(corpus["unit-square"])
    assert [sq.count(d) for d in (-1, 0, 1, 2)] == [1, 4, 4, 1]
    L = face_lattice(cube)
    assert [L.count(d) for d in (0, 1, 2, 3)] == [8, 12, 6, 1]


def test_face_lattice_closed_under_meet(corpus):
    for name in ("unit-cube3", "birkhoff3", "join-tetra"):
        L = face_lattice(corpus[name])
        sets = {s for _, s in L.faces}
        assert frozenset() in sets and frozenset(range(len(corpus[name].vertices))) in sets
        for a in sets:
            for b in sets:
                assert a & b in sets


def test_birkhoff_face_count(birkhoff):
    # B3 has 9 facets (x_ij >= 0) and 15 edges
    L = face_lattice(birkhoff)
    assert L.count(3) == 9
    assert L.count(1) == 15


def test_bad_vertices():
    with pytest.raises(ValueError, match="extreme"):
        VPolytope([(0, 0), (1, 0), (2, 0)])
    with pytest.raises(ValueError, match="distinct"):
        VPolytope([(0, 0), (0, 0)])
    with pytest.raises(ValueError):
        VPolytope([])


def test_hull_drops_interior_points():
    P = VPolytope.hull([(0, 0), (2, 0), (0, 2), (2, 2), (1, 1), (1, 0)])
    assert sorted(P.vertices) == [(0, 0), (0, 2), (2, 0), (2, 2)]


points2 = st.lists(st.tuples(st.integers(-3, 3), st.integers(-3, 3)), min_size=3, max_size=7, unique=True)


@settings(max_examples=40, deadline=None)
@given(points2)
def test_random_hulls_vs_box_scan(pts):
    P = VPolytope.hull(pts)
    if P.dim < 2:
        return
    for m in (1, 2):
        assert lattice_points(P, m) == sorted(box_points(list(P.vertices), m))
    assert sorted(tuple(a) + (b,) for a, b in dual_description(P).inequalities) == brute_facets(list(P.vertices))
