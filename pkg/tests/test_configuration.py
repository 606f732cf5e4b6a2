from itertools import combinations, product

import pytest
from hypothesis import given, settings, strategies as st

from adet.configuration import (DoesNotSpan, DuplicatePoint, EmptyConfiguration, FaceNotInLattice,
                                LastCoordNotOne, RaggedPoints, face_lattice, face_polynomial, from_aprime,
                                validate)
from adet.polynomials import Ring

from conftest import configs


def brute_faces(A, bound=3):
    """Argmax sets of integer functionals, plus P for the zero functional."""
    pts = A.aprime
    m = A.k - 1
    found = {tuple(range(A.d))}
    for lam in product(range(-bound, bound + 1), repeat=m):
        vals = [sum(l * p for l, p in zip(lam, q)) for q in pts]
        top = max(vals)
        found.add(tuple(i for i, v in enumerate(vals) if v == top))
    return found


def test_validate_examples():
    A = validate([(0, 1), (1, 1), (2, 1)])
    assert (A.d, A.k, A.n) == (3, 2, 1)
    with pytest.raises(LastCoordNotOne) as err:
        validate([(0, 2)])
    assert err.value.detail["index"] == 1
    with pytest.raises(DuplicatePoint) as err:
        validate([(0, 1), (0, 1)])
    assert err.value.detail["indices"] == [1, 2]


def test_validate_other_errors():
    with pytest.raises(EmptyConfiguration):
        validate([])
    with pytest.raises(RaggedPoints):
        validate([(0, 1), (1, 0, 1)])
    with pytest.raises(RaggedPoints):
        validate([(0.5, 1)])
    with pytest.raises(DoesNotSpan):
        validate([(0, 0, 1), (1, 0, 1)])


@pytest.mark.parametrize("name", sorted(configs()))
def test_face_lattice_matches_brute_force(name):
    A = configs()[name]
    assert {F.indices for F in face_lattice(A)} == brute_faces(A)


def test_face_counts(quadratic, square):
    assert [F.label for F in face_lattice(quadratic)] == [(1,), (3,), (1, 2, 3)]
    L = face_lattice(square)
    assert len(L) == 9
    assert [F.dim for F in L].count(0) == 4 and [F.dim for F in L].count(1) == 4
    single = from_aprime([()])
    assert [F.indices for F in face_lattice(single)] == [(0,)]


@pytest.mark.parametrize("name", sorted(configs()))
def test_functionals_certify_faces(name):
    A = configs()[name]
    for F in face_lattice(A):
        if F.normal is None:
            assert len(F) == A.d
            continue
        for i, p in enumerate(A.aprime):
            val = sum(a * b for a, b in zip(F.normal, p))
            assert (val == F.offset) if i in F else (val < F.offset)


@pytest.mark.parametrize("name", sorted(configs()))
def test_intersections_are_faces(name):
    L = face_lattice(configs()[name])
    faces = {F.indices for F in L}
    for F, G in combinations(L, 2):
        inter = tuple(sorted(set(F.indices) & set(G.indices)))
        assert not inter or inter in faces


def test_interior_point_only_in_polytope(quadratic, twisted_cubic):
    for A, interior in ((quadratic, {1}), (twisted_cubic, {1, 2})):
        for F in face_lattice(A):
            if F is not face_lattice(A).polytope:
                assert not interior & set(F.indices)


def test_find_rejects_non_face(quadratic):
    with pytest.raises(FaceNotInLattice):
        face_lattice(quadratic).find([0, 2])


def test_face_polynomial_examples(quadratic, square):
    x1, x2 = Ring(["x1", "x2"]).gens()
    assert face_polynomial(quadratic, [0, 1, 2], [1, 2, 1]) == x2 + 2 * x1 * x2 + x1 ** 2 * x2
    vertex = face_polynomial(quadratic, [0])
    assert vertex == vertex.ring.parse("a1*x2")
    edge = face_polynomial(square, [0, 1])
    assert edge.ring.names == ("x1", "x2", "x3", "a1", "a2")
    assert edge == edge.ring.parse("a1*x3 + a2*x1*x3")


def test_negative_coordinates_are_translated():
    A = from_aprime([(-1,), (0,), (1,)])
    assert A.exponents == ((0, 1), (1, 1), (2, 1))
    assert {F.label for F in face_lattice(A)} == {(1,), (3,), (1, 2, 3)}


segment_points = st.lists(st.integers(-4, 4), min_size=2, max_size=5, unique=True)


@settings(max_examples=40, deadline=None)
@given(segment_points)
def test_one_dimensional_lattice_is_two_vertices_and_p(xs):
    A = from_aprime([(x,) for x in xs])
    labels = {F.indices for F in face_lattice(A)}
    lo, hi = xs.index(min(xs)), xs.index(max(xs))
    assert labels == {(lo,), (hi,), tuple(range(len(xs)))}


planar = st.lists(st.tuples(st.integers(0, 3), st.integers(0, 3)), min_size=3, max_size=6, unique=True)


@settings(max_examples=40, deadline=None)
@given(planar)
def test_planar_lattice_matches_brute_force(pts):
    try:
        A = from_aprime(pts)
    except DoesNotSpan:
        return
    # functionals in [-6,6]^2 reach every edge direction of a polygon in [0,3]^2
    assert {F.indices for F in face_lattice(A)} == brute_faces(A, bound=6)
