import itertools

import pytest

from gorpoly.cone import monoid_of_polytope
from gorpoly.ehrhart import h_vector
from gorpoly.errors import VerificationError
from gorpoly.gorenstein import (
    decompose_gorenstein_point,
    find_gorenstein_point,
    gorenstein_certificate,
    graded_degree,
    hilbert_series_identity_check,
    reduce_polytope,
)
from gorpoly.linalg import smith_normal_form
from gorpoly.polytope import VPolytope

from conftest import GORENSTEIN, NON_GORENSTEIN, permutation_matrices
from oracles import det


@pytest.fixture(scope="module")
def monoids(corpus):
    return {name: monoid_of_polytope(P) for name, P in corpus.items()}


@pytest.fixture(scope="module")
def certs(monoids):
    return {name: gorenstein_certificate(M) for name, M in monoids.items()}


@pytest.fixture(scope="module")
def reductions(corpus, monoids, certs):
    return {n: reduce_polytope(corpus[n], monoids[n], certs[n]) for n in GORENSTEIN}


def test_find_point_examples(monoids):
    assert find_gorenstein_point(monoids["unit-square"]) == (1, 1, 2)
    assert find_gorenstein_point(monoids["unit-cube3"]) == (1, 1, 1, 2)
    assert find_gorenstein_point(monoids["rect-1x2"]) is None


def _all_ones_points(M, top):
    """Brute force: cone points with all support forms equal to 1, degree <= top."""
    C = M.cone
    n = C.ambient_dim
    hits = []
    bound = top * max(max(abs(x) for x in g) for g in C.generators)
    for x in itertools.product(range(-bound, bound + 1), repeat=n - 1):
        for k in range(1, top + 1):
            a = tuple(x) + (k,)
            if C.in_span(a) and all(v == 1 for v in C.sigma(a)):
                hits.append(a)
    return hits


@pytest.mark.parametrize("name", ["unit-square", "unit-cube3", "simplex2", "segment-2", "join-tetra", "hexagon", "rect-1x2", "unit-segment"])
def test_point_unique_by_enumeration(corpus, monoids, name):
    M = monoids[name]
    y = find_gorenstein_point(M)
    hits = _all_ones_points(M, corpus[name].dim + 1)
    assert hits == ([] if y is None else [y])


def test_decomposition_examples(monoids, certs):
    assert decompose_gorenstein_point(monoids["unit-square"], (1, 1, 2)) == [(0, 0, 1), (1, 1, 1)]
    c = certs["segment-2"]
    assert c.m == 1 and c.decomposition == ((1, 1),)
    b = certs["birkhoff3"]
    assert b.m == 3
    assert b.y == (1,) * 9 + (3,)
    assert all(tuple(y[:-1]) in permutation_matrices(3) for y in b.decomposition)


@pytest.mark.parametrize("name", GORENSTEIN)
def test_certificate_invariants(corpus, monoids, certs, name):
    M, c = monoids[name], certs[name]
    assert c is not None
    s = len(M.cone.support_forms)
    assert M.cone.sigma(c.y) == (1,) * s
    assert tuple(map(sum, zip(*c.decomposition))) == c.y
    assert all(M.degree(y) == 1 for y in c.decomposition)
    assert sorted(i for part in c.support_partition for i in part) == list(range(s))
    assert c.k == tuple(len(p) for p in c.support_partition)
    # deg(y) = m for integrally closed P
    assert M.degree(c.y) == c.m


def test_non_gorenstein(monoids, certs):
    for name in NON_GORENSTEIN:
        assert certs[name] is None


@pytest.mark.parametrize("name", GORENSTEIN)
def test_relint_is_y_plus_monoid(corpus, monoids, certs, name):
    P, M, y = corpus[name], monoids[name], certs[name].y
    for k in (1, 2, 3):
        elems = [tuple(x) + (k,) for x in P.lattice_points(k)]
        for a in elems:
            assert M.in_relint(tuple(u + v for u, v in zip(a, y)))
        for x in P.relint_lattice_points(k):
            a = tuple(x) + (k,)
            assert M.contains(tuple(u - v for u, v in zip(a, y)))


def test_graded_degree(certs):
    c = certs["unit-square"]
    assert c.k == (2, 2)
    assert graded_degree(c, c.y) == 8
    assert graded_degree(c, (0, 0, 0)) == 0
    assert graded_degree(c, (1, 0, 1)) == 4
    assert all(graded_degree(c, y) == c.generator_degree for y in c.decomposition)


@pytest.mark.parametrize("name", GORENSTEIN)
def test_graded_degree_positive(corpus, monoids, certs, name):
    c, M = certs[name], monoids[name]
    for b in M.hilbert_basis:
        assert graded_degree(c, b) > 0
    for y in c.decomposition:
        assert graded_degree(c, y) == c.generator_degree


@pytest.mark.parametrize("name", ["segment-2", "unit-square", "join-tetra"])
def test_series_identity(monoids, certs, name):
    res = hilbert_series_identity_check(monoids[name], certs[name], top=20)
    assert res.holds
    assert len(res.table) == 21


@pytest.mark.parametrize("name", ["unit-cube3", "hexagon", "simplex2"])
def test_series_identity_more(monoids, certs, name):
    assert hilbert_series_identity_check(monoids[name], certs[name], top=12).holds


def test_reduction_square(reductions):
    R = reductions["unit-square"]
    assert R.Q.dim == 1
    assert sorted(R.Q.vertices) == [(0,), (2,)]
    assert R.interior_point == (1,)
    assert tuple(R.h_Q) == (1, 1)


def test_reduction_cube(reductions):
    R = reductions["unit-cube3"]
    assert R.Q.dim == 2 and tuple(R.h_Q) == (1, 4, 1)
    assert len(R.Q.relint_lattice_points(1)) == 1


def test_reduction_birkhoff(reductions):
    R = reductions["birkhoff3"]
    Q = R.Q
    assert Q.dim == 2 and tuple(R.h_Q) == (1, 1, 1)
    assert len(Q.relint_lattice_points(1)) == 1
    assert len(Q.lattice_points(1)) - 1 == 3
    # twice the area equals the normalized volume sum(h) = 3
    a, b, c = sorted(Q.vertices)
    assert abs(det([[b[0] - a[0], b[1] - a[1]], [c[0] - a[0], c[1] - a[1]]])) == 3


@pytest.mark.parametrize("name", GORENSTEIN)
def test_reduction_invariants(corpus, reductions, certs, name):
    P, R, c = corpus[name], reductions[name], certs[name]
    assert tuple(R.h_Q) == tuple(h_vector(P)) == tuple(R.h_boundary_Q)
    assert R.Q.relint_lattice_points(1) == [R.interior_point]
    # the kernel differences are part of a lattice basis
    if R.kernel_basis:
        D, _, _ = smith_normal_form([list(r) for r in R.kernel_basis], ncols=len(R.kernel_basis[0]))
        assert all(D[i][i] == 1 for i in range(len(R.kernel_basis)))
    for kvec in R.kernel_basis:
        assert all(v == 0 for v in R.project(kvec))
    for y in c.decomposition:
        assert R.project(y)[:-1] == R.project(c.decomposition[0])[:-1]
    for p in P.lattice_points(1):
        q = R.project_to_q(p)
        assert R.Q.contains(q)
    # Q has dim P + 1 - m
    assert R.Q.dim == max(P.dim + 1 - c.m, 0)


def test_reduction_refuses_non_gorenstein(corpus, monoids):
    with pytest.raises(ValueError, match="not Gorenstein"):
        reduce_polytope(corpus["rect-1x2"], monoids["rect-1x2"])


def test_reduction_refuses_not_closed():
    reeve = VPolytope([(0, 0, 0), (1, 0, 0), (0, 1, 0), (1, 1, 2)])
    with pytest.raises(ValueError, match="integrally closed"):
        reduce_polytope(reeve)
