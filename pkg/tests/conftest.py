import itertools

import pytest

from gorpoly.io import corpus_names, read_polytope, resolve_input
from gorpoly.polytope import VPolytope


def load(name):
    return read_polytope(resolve_input(name))


@pytest.fixture(scope="session")
def corpus():
    return {name: load(name) for name in corpus_names()}


@pytest.fixture(scope="session")
def square():
    return load("unit-square")


@pytest.fixture(scope="session")
def cube():
    return load("unit-cube3")


@pytest.fixture(scope="session")
def birkhoff():
    return load("birkhoff3")


@pytest.fixture(scope="session")
def join_tetra():
    return load("join-tetra")


@pytest.fixture(scope="session")
def hexagon():
    return load("hexagon")


@pytest.fixture(scope="session")
def segment2():
    return load("segment-2")


def permutation_matrices(n):
    return [tuple(int(p[i] == j) for i in range(n) for j in range(n)) for p in itertools.permutations(range(n))]


GORENSTEIN = ["unit-segment", "unit-square", "unit-cube3", "simplex2", "simplex3", "segment-2", "join-tetra", "birkhoff3", "hexagon", "point"]
NON_GORENSTEIN = ["rect-1x2"]
