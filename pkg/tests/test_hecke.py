from itertools import product

import pytest

from demazure.hecke import (
    DemazureExpression,
    HeckeElement,
    affine_bindings,
    affine_relation_check,
    demazure_relations,
    phi_expression,
    phi_map,
    psi_map,
    realize,
    relation_images,
    verify_iso,
)
from demazure.roots import GCM, Lattice
from demazure.scalars import MU1, MU2, ONE, T, U, hecke_bindings
from demazure.twisted import x_word
from helpers import RANK2, context, fixture

TINV = T.inverse()


def group_of(matrix):
    return Lattice.root_lattice(GCM(matrix)).weyl


def affine_group():
    return Lattice.root_lattice(GCM.from_json(fixture("a1aff.json"))).weyl


def test_quadratic_relation():
    W = group_of(RANK2["a2"])
    Ti = HeckeElement.generator(W, 0)
    one = HeckeElement.one(W)
    assert Ti * Ti == one + Ti.scale(TINV - T)
    assert (Ti + one.scale(T)) * (Ti - one.scale(TINV)) == HeckeElement(W)


def test_affine_word_is_a_basis_element():
    W = affine_group()
    t010 = HeckeElement.word(W, (0, 1, 0))
    assert t010 == HeckeElement.basis(W, W.element((0, 1, 0)))


def test_braid_relation_in_hecke_algebra():
    for name, m in [("a2", 3), ("b2", 4), ("g2", 6)]:
        W = group_of(RANK2[name])
        lhs = HeckeElement.word(W, tuple(0 if k % 2 == 0 else 1 for k in range(m)))
        rhs = HeckeElement.word(W, tuple(1 if k % 2 == 0 else 0 for k in range(m)))
        assert lhs == rhs, name


def test_associativity_and_unit():
    W = group_of(RANK2["b2"])
    a = HeckeElement.word(W, (0, 1)) + HeckeElement.generator(W, 1).scale(T)
    b = HeckeElement.word(W, (1, 0, 1)).scale(U) - HeckeElement.one(W)
    c = HeckeElement.word(W, (0,)) + HeckeElement.word(W, (1, 0))
    assert (a * b) * c == a * (b * c)
    one = HeckeElement.one(W)
    assert one * a == a and a * one == a


def test_basis_words_up_to_length_six():
    W = affine_group()
    seen = set()
    for k in range(7):
        for word in product(range(2), repeat=k):
            w = W.element(word)
            if w.length == k:
                assert HeckeElement.word(W, word) == HeckeElement.basis(W, w)
                seen.add(w)
    assert len(seen) == 13


def test_psi_generator():
    W = group_of(RANK2["a2"])
    got = psi_map(DemazureExpression.X(0), W)
    assert got == (HeckeElement.generator(W, 0) + HeckeElement.one(W).scale(T)).scale(U)


def test_psi_specializes_coefficients():
    W = group_of(RANK2["a2"])
    got = psi_map(DemazureExpression.constant(MU2), W)
    assert got == HeckeElement.one(W).scale(-(U * U))


@pytest.mark.parametrize("name", ["a1xa1", "a2", "b2", "g2"])
def test_psi_kills_relations(name):
    gcm = GCM(RANK2[name])
    assert relation_images(group_of(RANK2[name]), gcm) == []


def test_wrong_relation_is_detected():
    W = group_of(RANK2["a2"])
    X = DemazureExpression.X
    wrong = X(1, 0, 1) - X(0, 1, 0) - (X(0) - X(1)).scale(-MU2)
    assert not psi_map(wrong, W).is_zero()


def test_relation_list():
    names = [n for n, _ in demazure_relations(GCM(RANK2["g2"]))]
    assert names == ["quadratic[0]", "quadratic[1]", "braid[0,1] m=6"]
    assert len(demazure_relations(GCM.from_json(fixture("a1aff.json")))) == 2


def test_phi_expression():
    W = group_of(RANK2["a2"])
    got = phi_expression(HeckeElement.generator(W, 1))
    assert got == DemazureExpression.X(1).scale(U.inverse()) - DemazureExpression.constant(T)


def test_phi_psi_round_trip_on_expressions():
    W = group_of(RANK2["b2"])
    h = HeckeElement.word(W, (0, 1)).scale(T) + HeckeElement.one(W)
    assert psi_map(phi_expression(h), W) == h


def test_phi_lands_in_twisted_algebra():
    ctx = context(RANK2["a2"], order=6, bindings=hecke_bindings())
    W = ctx.lat.weyl
    image = phi_map(HeckeElement.generator(W, 0), ctx)
    assert (image - realize(phi_expression(HeckeElement.generator(W, 0)), ctx)).is_zero()


def test_phi_independent_of_reduced_word():
    ctx = context(RANK2["a2"], order=6, bindings=hecke_bindings())
    a = realize(phi_expression(HeckeElement.word(ctx.lat.weyl, (0, 1, 0))), ctx)
    X = DemazureExpression.X
    b = realize(
        (X(1).scale(U.inverse()) - DemazureExpression.constant(T))
        * (X(0).scale(U.inverse()) - DemazureExpression.constant(T))
        * (X(1).scale(U.inverse()) - DemazureExpression.constant(T)),
        ctx,
    )
    assert (a - b).is_zero()


@pytest.mark.parametrize("name", ["a2", "b2"])
def test_iso_short_words(name):
    ctx = context(RANK2[name], order=6, bindings=hecke_bindings())
    report = verify_iso(ctx, 2)
    assert report.holds and report.certified_order >= 4
    assert report.details["words"] == 6


def test_iso_at_unit_u():
    ctx = context(RANK2["a2"], order=6, bindings=hecke_bindings(ONE))
    assert verify_iso(ctx, 2, ONE).holds


def test_realize_matches_x_word():
    ctx = context(RANK2["g2"], order=5, bindings=hecke_bindings())
    assert (realize(DemazureExpression.X(0, 1), ctx) - x_word(ctx, (0, 1))).is_zero()


@pytest.mark.parametrize("name", ["a2", "g2"])
def test_affine_relation(name):
    ctx = context(RANK2[name], order=7, bindings=affine_bindings())
    for i in range(2):
        root = ctx.simple_root(i)
        assert affine_relation_check(ctx, ctx.one(), i).holds
        assert affine_relation_check(ctx, ctx.x(root.vec), i).holds
        assert affine_relation_check(ctx, ctx.x((1, 1)) * ctx.variable(1), i).holds


def test_affine_bindings():
    b = affine_bindings()
    assert b["mu1"] == T + TINV
    assert b["mu2"] == -ONE
