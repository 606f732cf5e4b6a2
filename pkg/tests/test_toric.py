import random
from fractions import Fraction
from itertools import combinations

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from adet.configuration import face_lattice, from_aprime
from adet.discriminant import euler_operator_ideal
from adet.groebner import Ideal, reduced_groebner_basis, zero_dim_report
from adet.toric import (CAP_HIT, REACHED_ZERO, ZeroTorusCoordinate, hilbert_quotient_profile, orbit_point,
                        quotient_dimension_direct, semigroup_degree_basis, toric_ideal, vanishing_window)

from conftest import configs


def implicitization_oracle(A):
    """Kernel of z_i -> t^{a_i} by lex elimination of t in sympy."""
    ts = sympy.symbols(f"t1:{A.k + 1}")
    zs = sympy.symbols(A.z_names())
    gens = [z - sympy.Mul(*[t ** e for t, e in zip(ts, a)]) for z, a in zip(zs, A.exponents)]
    G = sympy.groebner(gens, *ts, *zs, order="lex")
    return [g for g in G.exprs if not (g.free_symbols & set(ts))]


@pytest.mark.parametrize("name", sorted(configs()))
def test_toric_ideal_matches_implicitization(name):
    A = configs()[name]
    T = toric_ideal(A)
    oracle = implicitization_oracle(A)
    ring = T.ring
    ours = reduced_groebner_basis(T.ideal)
    theirs = reduced_groebner_basis(Ideal(ring, [ring.parse(str(sympy.expand(g)).replace("**", "^"))
                                                  for g in oracle]))
    assert ours.basis == theirs.basis


def test_toric_ideal_examples(quadratic, segment2, square):
    assert [str(g) for g in toric_ideal(quadratic).generators] == ["z2^2 - z1*z3"]
    assert toric_ideal(quadratic).lattice == ((1, -2, 1),)
    assert toric_ideal(segment2).generators == ()
    assert [str(g) for g in toric_ideal(square).generators] == ["z2*z3 - z1*z4"]


def test_semigroup_basis(quadratic, bundled):
    assert semigroup_degree_basis(quadratic, 2) == ((0, 2), (1, 2), (2, 2), (3, 2), (4, 2))
    for A in bundled.values():
        assert semigroup_degree_basis(A, 0) == ((0,) * A.k,)
        assert sorted(semigroup_degree_basis(A, 1)) == sorted(A.points)
        sizes = [len(semigroup_degree_basis(A, n)) for n in range(8)]
        assert sizes == sorted(sizes)


def test_orbit_point_examples(quadratic, square):
    assert orbit_point(quadratic, [0, 1, 2], (2, 1)) == (1, 2, 4)
    assert orbit_point(quadratic, [0], (2, 3)) == (3, 0, 0)
    assert orbit_point(square, [0, 1], (2, 1, 1)) == (1, 2, 0, 0)
    with pytest.raises(ZeroTorusCoordinate):
        orbit_point(quadratic, [0], (0, 1))


def _eval(gens, z):
    return [g.evaluate(dict(zip(g.ring.names, z))) for g in gens]


@pytest.mark.parametrize("name", sorted(configs()))
def test_orbit_points_of_faces_satisfy_toric_ideal(name):
    A = configs()[name]
    gens = toric_ideal(A).generators
    rng = random.Random(3)
    for F in face_lattice(A):
        for _ in range(5):
            u = [Fraction(rng.choice([-1, 1]) * rng.randint(1, 7), rng.randint(1, 5)) for _ in range(A.k)]
            assert not any(_eval(gens, orbit_point(A, F, u)))


@pytest.mark.parametrize("name", sorted(configs()))
def test_orbit_points_of_non_faces_violate_toric_ideal(name):
    A = configs()[name]
    gens = toric_ideal(A).generators
    faces = {F.indices for F in face_lattice(A)}
    for r in range(1, A.d + 1):
        for S in combinations(range(A.d), r):
            if S not in faces:
                assert any(_eval(gens, orbit_point(A, S, [2] * A.k)))


def test_profile_examples(quadratic):
    prof = hilbert_quotient_profile(quadratic, [1, 3, 1], 10)
    assert prof.dims == (1, 1, 0) and prof.status == REACHED_ZERO and prof.at == 2 and prof.total == 2
    prof = hilbert_quotient_profile(quadratic, [1, 2, 1], 25)
    assert prof.status == CAP_HIT and prof.dims == (1,) * 26
    assert not zero_dim_report(euler_operator_ideal(quadratic, [1, 2, 1])).finite
    point = from_aprime([()])
    prof = hilbert_quotient_profile(point, [1], 5)
    assert prof.dims == (1, 0) and prof.at == 1


def test_profile_rejects_bad_input(quadratic):
    with pytest.raises(ValueError):
        hilbert_quotient_profile(quadratic, [1, 2], 5)
    with pytest.raises(ValueError):
        hilbert_quotient_profile(quadratic, [1, 2, 1], 0)
    with pytest.raises(ValueError):
        hilbert_quotient_profile(quadratic, [1, 2, 1], 3, method="magic")


rationals = st.fractions(min_value=-4, max_value=4, max_denominator=3)


@settings(max_examples=25, deadline=None)
@given(st.sampled_from(sorted(configs())), st.data())
def test_walker_agrees_with_direct_ranks(name, data):
    A = configs()[name]
    alpha = data.draw(st.lists(rationals, min_size=A.d, max_size=A.d))
    fast = hilbert_quotient_profile(A, alpha, 6)
    slow = hilbert_quotient_profile(A, alpha, 6, method="direct")
    assert fast == slow


@settings(max_examples=25, deadline=None)
@given(st.sampled_from(sorted(configs())), st.data())
def test_bridge_and_vanishing_window(name, data):
    A = configs()[name]
    alpha = data.draw(st.lists(rationals, min_size=A.d, max_size=A.d))
    rep = zero_dim_report(euler_operator_ideal(A, alpha))
    if rep.finite:
        prof = hilbert_quotient_profile(A, alpha, rep.dimension + 2)
        assert prof.reached_zero() and prof.total == rep.dimension
        assert vanishing_window(A, alpha, prof.at) == (0,) * 5
    else:
        prof = hilbert_quotient_profile(A, alpha, 12)
        assert prof.status == CAP_HIT and all(prof.dims)


def test_direct_dimension_by_hand(quadratic):
    # degree 1: span of 3 x1x2 + 2 x1^2x2 and x2 + 3 x1x2 + x1^2x2 in a 3-dim space
    assert quotient_dimension_direct(quadratic, [1, 3, 1], 1) == 1
    assert quotient_dimension_direct(quadratic, [1, 3, 1], 0) == 1
