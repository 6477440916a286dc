"""Acceptance gate: one group of tests per criterion.

Tests named ``test_c<k>_...`` feed the per-criterion PASS/FAIL lines
printed at the end of the run (see conftest.py).  Run directly with
``python3 tests/test_acceptance.py``.
"""

import time
from fractions import Fraction

import pytest

from demazure.fga import check_axioms, formal_inverse, kappa_alpha, kappa_pair, make_fgl
from demazure.hecke import affine_bindings, affine_relation_check, verify_iso
from demazure.roots import (
    GCM,
    Lattice,
    check_fdl,
    classify_gcm,
    coxeter_order,
    lattice_compare,
    lattice_quotient,
)
from demazure.scalars import MU1, MU2, hecke_bindings
from demazure.series import PowerSeries
from demazure.twisted import QFraction, check_independence, orient, qf_eq, verify_relation, xi_terms
from helpers import RANK2, context, fixture, monomial, monomials

N = 8
A1AFF = GCM.from_json(fixture("a1aff.json"))
BRAIDED = ["a2", "b2", "g2"]


def lam(n):
    q = Fraction(1, 4 * n)
    return Lattice.from_B(A1AFF, [[1, q + Fraction(1, 2)], [0, q]])


# -- 1. formal group law --------------------------------------------------------
def test_c1_hyperbolic_axioms_order_10():
    start = time.perf_counter()
    law = make_fgl("hyperbolic", 10)
    checks = check_axioms(law.F)
    assert set(checks) == {"unit", "commutativity", "associativity"}
    for name, (ok, order) in checks.items():
        assert ok, name
        assert order >= 10, name
    assert time.perf_counter() - start < 10


def test_c1_inverse_literal_closed_form():
    # The stated closed form -sum (-mu1)^n u^(n+1).  The inverse of this law
    # is -sum mu1^n u^(n+1), so this comparison is expected to fail.
    start = time.perf_counter()
    G = formal_inverse(make_fgl("hyperbolic", 10))
    stated = PowerSeries(1, 10, {(n + 1,): -((-MU1) ** n) for n in range(10)})
    mismatched = [n for n in range(1, 11) if G.coefficient((n,)) != stated.coefficient((n,))]
    assert time.perf_counter() - start < 10
    assert not mismatched, f"inverse differs from the stated form in degrees {mismatched}"


def test_inverse_sign_corrected_form():
    law = make_fgl("hyperbolic", 10)
    G = formal_inverse(law)
    assert G == PowerSeries(1, 10, {(n + 1,): -(MU1 ** n) for n in range(10)})
    u = PowerSeries.variable(1, 10, 0)
    assert law.F.substitute([u, G]).is_zero()


# -- 2. kappa identities ----------------------------------------------------------
@pytest.fixture(scope="module")
def c2_clock():
    return time.perf_counter()


@pytest.mark.parametrize("name", ["a1xa1"] + BRAIDED)
def test_c2_kappa_alpha_is_mu1(c2_clock, name):
    ctx = context(RANK2[name], order=N)
    for i in range(2):
        ok, order = kappa_alpha(ctx, ctx.simple_root(i)).certified_equal(MU1)
        assert ok and order >= N


@pytest.mark.parametrize("name", BRAIDED)
def test_c2_kappa_pair_is_mu2(c2_clock, name):
    ctx = context(RANK2[name], order=N)
    assert coxeter_order(ctx.lat.gcm, 0, 1) in (3, 4, 6)
    for lam_, mu in [((1, 0), (0, 1)), ((0, 1), (1, 0))]:
        ok, order = kappa_pair(ctx, lam_, mu).certified_equal(MU2)
        assert ok, (lam_, mu)
        assert order >= N - 2


def test_c2_xi_is_three_mu2_squared(c2_clock):
    ctx = context(RANK2["g2"], order=N)
    p, q, _ = orient(ctx, 0, 1)
    target = QFraction(ctx, ctx.constant(3 * MU2 * MU2))
    for xi in xi_terms(ctx, p, q):
        ok, order = qf_eq(xi.reduce(), target)
        assert ok and order >= 0
    assert time.perf_counter() - c2_clock < 300


# -- 3. relation suite ----------------------------------------------------------------
@pytest.mark.parametrize("name", ["a1xa1"] + BRAIDED)
def test_c3_quadratic(name):
    ctx = context(RANK2[name], order=N)
    for i in range(2):
        rep = verify_relation(ctx, "quadratic", i)
        assert rep.holds and rep.certified_order >= 0


@pytest.mark.parametrize("name", ["a1xa1"] + BRAIDED)
def test_c3_hyperbolic_braid(name):
    ctx = context(RANK2[name], order=N)
    rep = verify_relation(ctx, "braid-hyperbolic", 0, 1)
    assert rep.holds
    assert rep.certified_order >= N - 6


@pytest.mark.parametrize("name", ["a1xa1"] + BRAIDED)
def test_c3_commutation_degree_three(name):
    ctx = context(RANK2[name], order=N)
    for exps in monomials(2, 3):
        gamma = monomial(ctx, exps)
        for i in range(2):
            rep = verify_relation(ctx, "commutation", i, gamma=gamma)
            assert rep.holds, (exps, i)


def test_c3_affine_independence_length_6():
    ctx = context(lattice=Lattice.root_lattice(A1AFF), order=N)
    rep = check_independence(ctx, 6)
    assert rep.holds
    assert rep.details["elements"] == 13


# -- 4. specialization coherence ------------------------------------------------------
SPECIALIZATIONS = [{"mu1": 0, "mu2": 0}, {"mu2": 0}]


@pytest.mark.parametrize("bindings", SPECIALIZATIONS, ids=["additive", "multiplicative"])
@pytest.mark.parametrize("name", BRAIDED)
def test_c4_kappa_pairs_vanish(name, bindings):
    ctx = context(RANK2[name], order=N, bindings=bindings)
    for lam_, mu in [((1, 0), (0, 1)), ((0, 1), (1, 0))]:
        ok, order = kappa_pair(ctx, lam_, mu).certified_equal(0)
        assert ok and order >= 0


@pytest.mark.parametrize("bindings", SPECIALIZATIONS, ids=["additive", "multiplicative"])
@pytest.mark.parametrize("name", ["a1xa1"] + BRAIDED)
def test_c4_braid_without_corrections(name, bindings):
    ctx = context(RANK2[name], order=N, bindings=bindings)
    rep = verify_relation(ctx, "braid-plain", 0, 1)
    assert rep.holds and rep.certified_order >= 0


# -- 5. Hecke isomorphism ---------------------------------------------------------------
@pytest.fixture(scope="module")
def c5_clock():
    return time.perf_counter()


@pytest.mark.parametrize("name", ["a1aff", "a2", "b2", "g2"])
def test_c5_hecke_round_trips_length_5(c5_clock, name):
    lat = Lattice.root_lattice(A1AFF if name == "a1aff" else GCM(RANK2[name]))
    ctx = context(lattice=lat, order=N, bindings=hecke_bindings())
    rep = verify_iso(ctx, 5)
    assert rep.details["failures"] == []
    assert rep.holds and rep.certified_order >= 0
    assert time.perf_counter() - c5_clock < 600


# -- 6. affine corollary ------------------------------------------------------------------
@pytest.mark.parametrize("name", ["a2", "g2"])
def test_c6_affine_relation_degree_three(name):
    ctx = context(RANK2[name], order=N, bindings=affine_bindings())
    for exps in monomials(2, 3):
        gamma = monomial(ctx, exps)
        for i in range(2):
            rep = affine_relation_check(ctx, gamma, i)
            assert rep.holds, (exps, i)
            assert rep.certified_order >= N - 4


# -- 7. lattice family ------------------------------------------------------------------------
def test_c7_lattice_family():
    start = time.perf_counter()
    assert lattice_compare(lam(1), lam(3))["contains"]
    assert not lattice_compare(lam(3), lam(1))["contains"]
    assert lattice_compare(lam(3), lam(9))["contains"]
    assert not lattice_compare(lam(9), lam(3))["contains"]
    family = [n for n in range(-12, 13) if n]
    lattices = {n: lam(n) for n in family}
    mismatches = []
    for m in family:
        for n in family:
            expected = n % m == 0 and (n // m) % 2 == 1
            if lattice_compare(lattices[m], lattices[n])["contains"] != expected:
                mismatches.append((m, n))
    assert not mismatches
    for n in range(1, 7):
        orders, free = lattice_quotient(lattices[n])
        assert free == 0
        total = 1
        for d in orders:
            total *= d
        assert total == 4 * n
    assert time.perf_counter() - start < 5


# -- 8. classification ----------------------------------------------------------------------------
def test_c8_classification():
    start = time.perf_counter()
    a1 = classify_gcm(A1AFF)
    assert a1.tag == "Aff" and list(a1.delta) == [1, 1]
    g2 = classify_gcm(GCM.from_json(fixture("g2aff.json")))
    assert g2.tag == "Aff" and list(g2.delta) == [1, 2, 3]
    assert classify_gcm(GCM([[2, -4], [-4, 2]])).tag == "Ind"
    assert classify_gcm(GCM(RANK2["a2"])).tag == "Fin"
    assert time.perf_counter() - start < 1


# -- 9. example lattices ----------------------------------------------------------------------------
EXAMPLES = [
    "a1aff-delta-over-1.json",
    "a1aff-delta-over-2.json",
    "a1aff-delta-over-3.json",
    "a1aff-delta-over-minus5.json",
    "a2aff-delta-over-2.json",
    "a2aff-delta-over-7.json",
    "g2aff-delta-over-1.json",
    "g2aff-delta-over-2.json",
    "g2aff-delta-over-5.json",
    "g2aff-delta-over-minus4.json",
    "indefinite24.json",
]


@pytest.mark.parametrize("name", EXAMPLES)
def test_c9_example_lattices_pass(name):
    rep = check_fdl(Lattice.from_json(fixture(name)))
    assert rep.ok, rep.failures


def test_c9_restricted_weight_lattice_fails_fdl1():
    rep = check_fdl(Lattice.from_json(fixture("rwl-counterexample.json")))
    assert not all(rep.fdl1)


if __name__ == "__main__":
    raise SystemExit(pytest.main([__file__, "-q"]))
