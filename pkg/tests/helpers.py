"""Shared builders for the test modules."""

import json
from pathlib import Path

from demazure.fga import FGAContext, make_fgl
from demazure.roots import GCM, Lattice

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"

RANK2 = {
    "a1xa1": [[2, 0], [0, 2]],
    "a2": [[2, -1], [-1, 2]],
    "b2": [[2, -1], [-2, 2]],
    "g2": [[2, -1], [-3, 2]],
}


def context(matrix=None, tag="hyperbolic", order=8, guard=2, bindings=None, lattice=None):
    lat = lattice if lattice is not None else Lattice.root_lattice(GCM(matrix))
    return FGAContext(make_fgl(tag, order + guard, bindings), lat, order=order, guard=guard)


def fixture(name):
    return json.loads((FIXTURES / name).read_text())


def monomials(nvars, max_degree):
    """Exponent vectors of total degree at most ``max_degree``."""
    from itertools import product

    return [e for e in product(range(max_degree + 1), repeat=nvars) if sum(e) <= max_degree]


def monomial(ctx, exps):
    g = ctx.one()
    for k, e in enumerate(exps):
        for _ in range(e):
            g = g * ctx.variable(k)
    return g
