import math
from fractions import Fraction

import numpy as np
import pytest

from demazure.roots import (
    GCM,
    Decomposable,
    InvalidGCM,
    InvalidLattice,
    Lattice,
    NotAffine,
    NotIntegralInverse,
    PairingNotIntegral,
    DimensionMismatch,
    check_fdl,
    classify_gcm,
    coxeter_order,
    lattice_compare,
    lattice_quotient,
    make_real_root,
    null_root,
    real_roots_up_to,
    reflection,
    weyl_reduce,
)
from helpers import fixture

A1AFF = [[2, -2], [-2, 2]]
G2AFF = [[2, -1, 0], [-1, 2, -1], [0, -3, 2]]


def lam(n):
    q = Fraction(1, 4 * n)
    return Lattice.from_B(GCM(A1AFF), [[1, q + Fraction(1, 2)], [0, q]])


@pytest.mark.parametrize(
    "bad",
    [[[2, 1], [-1, 2]], [[1, -1], [-1, 2]], [[2, 0], [-1, 2]], [[2, -1, 0], [-1, 2]]],
)
def test_invalid_gcm(bad):
    with pytest.raises(InvalidGCM):
        GCM(bad)


@pytest.mark.parametrize(
    "m, tag",
    [([[2, -1], [-1, 2]], "Fin"), (A1AFF, "Aff"), ([[2, -4], [-4, 2]], "Ind"), (G2AFF, "Aff"), ([[2, -1], [-5, 2]], "Ind")],
)
def test_classify(m, tag):
    assert classify_gcm(GCM(m)).tag == tag


def test_classify_rejects_decomposable():
    with pytest.raises(Decomposable):
        classify_gcm(GCM([[2, 0], [0, 2]]))


def test_null_roots():
    assert null_root(GCM(A1AFF)) == [1, 1]
    assert null_root(GCM(G2AFF)) == [1, 2, 3]
    with pytest.raises(NotAffine):
        null_root(GCM([[2, -1], [-1, 2]]))


@pytest.mark.parametrize("a12, a21, m", [(0, 0, 2), (-1, -1, 3), (-1, -2, 4), (-3, -1, 6), (-2, -2, math.inf), (-1, -5, math.inf)])
def test_coxeter_order(a12, a21, m):
    assert coxeter_order(GCM([[2, a12], [a21, 2]]), 0, 1) == m


def test_weyl_reduce_basics():
    lat = Lattice.root_lattice(GCM([[2, -1], [-1, 2]]))
    assert weyl_reduce(lat, [0, 0]).length == 0
    a, b = weyl_reduce(lat, [0, 1, 0]), weyl_reduce(lat, [1, 0, 1])
    assert a == b and a.length == 3
    assert a.word == (0, 1, 0)


def test_affine_lengths_grow():
    lat = Lattice.root_lattice(GCM(A1AFF))
    for k in range(1, 7):
        assert weyl_reduce(lat, [0, 1] * k).length == 2 * k


def test_coxeter_relations_respected():
    for m, mat in ((3, [[2, -1], [-1, 2]]), (4, [[2, -1], [-2, 2]]), (6, [[2, -1], [-3, 2]])):
        lat = Lattice.root_lattice(GCM(mat))
        assert weyl_reduce(lat, [0, 1] * m).is_identity()
        assert not weyl_reduce(lat, [0, 1] * (m - 1)).is_identity()
    lat = Lattice.root_lattice(GCM(A1AFF))
    assert all(not weyl_reduce(lat, [0, 1] * k).is_identity() for k in range(1, 13))


def test_weyl_matrices_preserve_lattice():
    lat = lam(3)
    for w in lat.weyl.elements_up_to(5):
        assert abs(round(np.linalg.det(w.L))) == 1


def test_real_roots_a2():
    lat = Lattice.root_lattice(GCM([[2, -1], [-1, 2]]))
    roots = real_roots_up_to(lat, 3)
    assert {r.coords for r in roots} == {(1, 0), (0, 1), (1, 1), (-1, 0), (0, -1), (-1, -1)}
    assert len(real_roots_up_to(lat, 0)) == 2


def test_real_roots_g2_include_long_roots():
    lat = Lattice.root_lattice(GCM([[2, -1], [-3, 2]]))
    coords = {r.coords for r in real_roots_up_to(lat, 6)}
    assert (1, 3) in coords and (2, 3) in coords
    assert len(coords) == 12


def test_real_root_coroot_pairing():
    lat = lam(2)
    for r in real_roots_up_to(lat, 4):
        assert int(np.dot(r.coroot, r.vec)) == 2
        assert math.gcd(*r.vec) == 1


def test_imaginary_root_is_not_real():
    lat = Lattice.root_lattice(GCM(A1AFF))
    assert lat.is_real_root((1, 1)) is None
    with pytest.raises(ValueError):
        make_real_root(lat, (1, 1))


def test_reflection_is_involution():
    lat = Lattice.root_lattice(GCM([[2, -1], [-3, 2]]))
    r = make_real_root(lat, (2, 3))
    w = reflection(lat, r)
    assert (w * w).is_identity()
    assert tuple(w.act(r.vec)) == tuple(-x for x in r.vec)


def test_null_root_fixed_by_reflections():
    lat = Lattice.root_lattice(GCM(G2AFF))
    delta = lat.root_to_lattice([1, 2, 3])
    for i in range(3):
        assert tuple(lat.weyl.simple(i).act(delta)) == delta


def test_lambda_one_basis():
    l1 = lam(1)
    assert l1.B == [[1, Fraction(3, 4)], [0, Fraction(1, 4)]]
    assert check_fdl(l1).ok


def test_identity_b_is_root_lattice():
    lat = Lattice.from_B(GCM([[2, -1], [-1, 2]]), [[1, 0], [0, 1]])
    assert (lat.S == np.eye(2, dtype=int)).all()


def test_from_b_errors():
    with pytest.raises(NotIntegralInverse):
        Lattice.from_B(GCM(A1AFF), [[2, 0], [0, 1]])
    with pytest.raises(PairingNotIntegral):
        Lattice.from_B(GCM([[2, -1], [-1, 2]]), [[1, Fraction(1, 2)], [0, Fraction(1, 2)]])


def test_half_pairing_lattice_for_a1_affine_passes():
    lat = Lattice.from_json(fixture("a1aff-half-pairing.json"))
    assert check_fdl(lat).ok


def test_restricted_weight_lattice_fails_fdl1():
    rep = check_fdl(Lattice.from_json(fixture("rwl-counterexample.json")))
    assert rep.fdl1 == [True, False]
    assert not rep.ok
    assert "FDL1" in rep.failures[0]


def test_inconsistent_lattice_rejected():
    with pytest.raises(InvalidLattice):
        Lattice(GCM([[2, -1], [-1, 2]]), [[1, 0], [0, 1]], [[2, 0], [-1, 2]])


def test_lattice_compare_family():
    assert lattice_compare(lam(1), lam(3))["contains"]
    assert not lattice_compare(lam(3), lam(1))["contains"]
    assert not lattice_compare(lam(1), lam(2))["contains"]
    assert lattice_quotient(lam(2)) == ([8], 0)


def test_compare_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        lattice_compare(lam(1), Lattice.from_json(fixture("a1aff-delta-over-2.json")))


def test_lattice_json_round_trip():
    lat = Lattice.from_json(fixture("g2aff-delta-over-5.json"))
    again = Lattice.from_json(lat.to_json())
    assert (again.S == lat.S).all() and (again.C == lat.C).all()


@pytest.mark.parametrize("m", [[[2, -1], [-3, 2]], A1AFF, G2AFF, [[2, -4], [-4, 2]]])
def test_witnesses_agree_with_orbit(m):
    lat = Lattice.root_lattice(GCM(m))
    for r in real_roots_up_to(lat, 5):
        found = make_real_root(lat, r.coords)
        assert found.coroot == r.coroot
        s = reflection(lat, found)
        assert tuple(s.act(found.vec)) == tuple(-x for x in found.vec)
        assert (s * s).is_identity()
