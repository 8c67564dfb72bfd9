import itertools

import pytest
from hypothesis import given, settings, strategies as st

from gorpoly.cone import (
    Cone,
    cone_over_polytope,
    hilbert_basis,
    is_integrally_closed,
    monoid_of_polytope,
    sigma_positive_support,
    standard_embedding,
)
from gorpoly.polytope import VPolytope, lattice_points

from oracles import brute_facets, cone_points, irreducibles, magic_squares

REEVE = VPolytope([(0, 0, 0), (1, 0, 0), (0, 1, 0), (1, 1, 2)])


def test_square_forms(square):
    C = cone_over_polytope(square)
    assert C.ambient_dim == 3
    assert set(C.support_forms) == {(1, 0, 0), (0, 1, 0), (-1, 0, 1), (0, -1, 1)}


def test_forms_order_fixed(square):
    # x, y, z-x, z-y
    assert cone_over_polytope(square).support_forms == ((1, 0, 0), (0, 1, 0), (-1, 0, 1), (0, -1, 1))


def test_segment_forms(segment2):
    assert set(cone_over_polytope(segment2).support_forms) == {(1, 0), (-1, 2)}


def test_cube_forms(cube):
    forms = set(cone_over_polytope(cube).support_forms)
    expected = {tuple(int(i == j) for j in range(3)) + (0,) for i in range(3)}
    expected |= {tuple(-int(i == j) for j in range(3)) + (1,) for i in range(3)}
    assert forms == expected


@pytest.mark.parametrize("name", ["unit-square", "unit-cube3", "simplex3", "hexagon", "rect-1x2"])
def test_forms_are_homogenized_facets(corpus, name):
    P = corpus[name]
    assert sorted(cone_over_polytope(P).support_forms) == brute_facets(list(P.vertices))


def test_standard_embedding(square, cube):
    assert standard_embedding(cone_over_polytope(square), (1, 1, 2)) == (1, 1, 1, 1)
    assert standard_embedding(cone_over_polytope(square), (0, 0, 0)) == (0, 0, 0, 0)
    assert standard_embedding(cone_over_polytope(cube), (1, 1, 1, 2)) == (1,) * 6


def test_standard_embedding_off_span(birkhoff):
    C = cone_over_polytope(birkhoff)
    with pytest.raises(ValueError):
        standard_embedding(C, (1,) + (0,) * 9)


def test_sigma_positive_support(square):
    C = cone_over_polytope(square)
    assert sigma_positive_support(C, (1, 1, 1)) == {0, 1}
    assert sigma_positive_support(C, (0, 0, 1)) == {2, 3}
    assert sigma_positive_support(C, (0, 0, 0)) == frozenset()
    with pytest.raises(ValueError, match="not a cone element"):
        sigma_positive_support(C, (2, 0, 1))


def test_embedding_injective(birkhoff, join_tetra):
    for P in (birkhoff, join_tetra):
        C = cone_over_polytope(P)
        pts = [tuple(x) + (k,) for k in (1, 2, 3) for x in lattice_points(P, k)]
        diffs = {tuple(a - b for a, b in zip(p, q)) for p, q in itertools.product(pts[:40], repeat=2)}
        images = [C.sigma(d) for d in diffs]
        assert len(set(images)) == len(diffs)


def test_hilbert_basis_examples(square, corpus, segment2):
    assert hilbert_basis(cone_over_polytope(square)) == [(0, 0, 1), (0, 1, 1), (1, 0, 1), (1, 1, 1)]
    assert hilbert_basis(cone_over_polytope(corpus["simplex2"])) == [(0, 0, 1), (0, 1, 1), (1, 0, 1)]
    assert hilbert_basis(cone_over_polytope(segment2)) == [(0, 1), (1, 1), (2, 1)]


@pytest.mark.parametrize("name", ["unit-square", "unit-cube3", "simplex3", "hexagon", "rect-1x2", "join-tetra", "segment-2"])
def test_hilbert_basis_vs_bruteforce(corpus, name):
    P = corpus[name]
    if P.dim < P.ambient_dim:
        pytest.skip("oracle needs a full-dimensional polytope")
    expected = irreducibles(cone_points(list(P.vertices), P.dim + 1))
    assert hilbert_basis(cone_over_polytope(P)) == expected


def test_hilbert_basis_reeve():
    expected = irreducibles(cone_points(list(REEVE.vertices), 4))
    assert hilbert_basis(cone_over_polytope(REEVE)) == expected
    assert (1, 1, 1, 2) in expected


def test_hilbert_basis_birkhoff(birkhoff):
    grades = {k: [M + (k,) for M in magic_squares(k)] for k in (1, 2, 3, 4)}
    assert hilbert_basis(cone_over_polytope(birkhoff)) == irreducibles(grades)


def test_hilbert_basis_elements_in_cone(corpus):
    for P in corpus.values():
        M = monoid_of_polytope(P)
        for b in M.hilbert_basis:
            assert all(v >= 0 for v in M.cone.sigma(b))


def test_non_pointed():
    with pytest.raises(ValueError, match="pointed"):
        Cone([(1, 0), (-1, 0), (0, 1)])


def test_integrally_closed(corpus, cube, birkhoff):
    assert is_integrally_closed(cube).closed
    assert is_integrally_closed(corpus["unit-square"]).closed
    assert is_integrally_closed(corpus["unit-segment"]).closed
    assert is_integrally_closed(corpus["simplex3"]).closed
    assert is_integrally_closed(birkhoff) == (True, None)
    res = is_integrally_closed(REEVE)
    assert not res.closed and res.witness[-1] >= 2


def _sum_of_degree_one(x, gens, c):
    if c == 0:
        return not any(x)
    for g in gens:
        rest = tuple(a - b for a, b in zip(x, g))
        if _sum_of_degree_one(rest, [h for h in gens if h >= g], c - 1):
            return True
    return False


@pytest.mark.parametrize("name", ["unit-square", "unit-cube3", "hexagon", "join-tetra", "birkhoff3", "rect-1x2"])
def test_decomposes_into_degree_one(corpus, name):
    P = corpus[name]
    M = monoid_of_polytope(P)
    gens = sorted(M.hilbert_basis)
    for c in (1, 2, 3):
        for x in lattice_points(P, c):
            assert _sum_of_degree_one(tuple(x) + (c,), gens, c)


def test_minimal_face_of_basis_elements(cube):
    M = monoid_of_polytope(cube)
    C = M.cone
    for b in M.hilbert_basis:
        zeros = {i for i, v in enumerate(C.sigma(b)) if v == 0}
        # the face cut out by the zero set contains b and has b in its relative interior
        face = [g for g in C.generators if all(C.sigma(g)[i] == 0 for i in zeros)]
        assert face
        assert all(any(C.sigma(g)[i] > 0 for g in face) for i in set(range(len(C.support_forms))) - zeros)


gens3 = st.lists(st.tuples(st.integers(0, 3), st.integers(0, 3), st.integers(1, 3)), min_size=3, max_size=5, unique=True)


@settings(max_examples=25, deadline=None)
@given(gens3)
def test_random_cones_vs_bruteforce(gens):
    try:
        C = Cone(gens)
    except ValueError:
        return
    if C.dim < 3:
        return
    H = hilbert_basis(C)
    top = max(b[2] for b in H)
    # every element with last coordinate <= top is an N-combination of H, and H is irreducible
    grades = {}
    lo = [0, 0]
    hi = [3 * top, 3 * top]
    for k in range(1, top + 1):
        grades[k] = [(a, b, k) for a in range(lo[0], hi[0] + 1) for b in range(lo[1], hi[1] + 1) if C.contains((a, b, k))]
    # the last coordinate is a positive grading here since every generator has it >= 1
    assert H == [x for x in irreducibles(grades)]
