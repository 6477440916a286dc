"""Formal group laws and the formal group algebra of a lattice.

Elements of the formal group algebra are power series in the variables
``x_{e_1}, ..., x_{e_n}`` attached to a basis of the lattice.  The symbol
``x_lambda`` of any lattice vector is obtained by folding the basis
variables together with the formal sum.
"""

from fractions import Fraction

from . import intlinalg
from .roots import RealRoot, make_real_root, reflection
from .scalars import MU1, MU2, Scalar
from .series import NotDivisible, NotPrimitive, PowerSeries, SeriesError, Substitution

TAGS = ("additive", "multiplicative", "hyperbolic", "custom")


class AxiomViolation(ValueError):
    pass


class NotRegular(SeriesError):
    pass


def _uv(order):
    return PowerSeries.variable(2, order, 0), PowerSeries.variable(2, order, 1)


def _standard_series(tag, order, mu1=MU1, mu2=MU2):
    u, v = _uv(order)
    if tag == "additive":
        return u + v
    base = u + v - (u * v).scale(mu1)
    if tag == "multiplicative":
        return base
    # (u + v - mu1 uv) / (1 + mu2 uv), expanded as a geometric series
    w = (u * v).scale(-mu2)
    geo = PowerSeries.one(2, order)
    term = geo
    for _ in range(order // 2):
        term = term * w
        geo = geo + term
    return base * geo


def check_axioms(F):
    """Unit, commutativity and associativity of ``F``; returns a dict of (holds, order)."""
    n = F.order
    u1 = PowerSeries.variable(1, n, 0)
    zero = PowerSeries.zero(1, n)
    unit = F.substitute([u1, zero]).certified_equal(u1)
    u, v = _uv(n)
    comm = F.substitute([v, u]).certified_equal(F)
    a, b, c = (PowerSeries.variable(3, n, k) for k in range(3))
    fab = F.substitute([a, b])
    fbc = F.substitute([b, c])
    assoc = F.substitute([fab, c]).certified_equal(F.substitute([a, fbc]))
    return {"unit": unit, "commutativity": comm, "associativity": assoc}


class FormalGroupLaw:
    """A formal group law ``F(u, v)`` truncated at total degree ``order``."""

    def __init__(self, series, tag="custom", bindings=None, check=True):
        if series.nvars != 2:
            raise AxiomViolation("a formal group law has two variables")
        self.F = series
        self.order = series.order
        self.tag = tag
        self.bindings = dict(bindings or {})
        self._inverse = None
        self._g = None
        self.axioms = check_axioms(series) if check else None
        if check and not all(ok for ok, _ in self.axioms.values()):
            bad = [k for k, (ok, _) in self.axioms.items() if not ok]
            raise AxiomViolation(f"formal group law fails {', '.join(bad)}")

    def __repr__(self):
        return f"<FormalGroupLaw {self.tag} order {self.order}>"

    def params(self):
        used = set()
        for c in self.F.coeffs().values():
            used |= c.variables()
        return used

    def extended(self, order):
        """The same law at another truncation order (custom laws cannot grow)."""
        if order == self.order:
            return self
        if self.tag == "custom":
            if order > self.order:
                return self
            return FormalGroupLaw(self.F.with_order(order), "custom", check=False)
        return make_fgl(self.tag, order, self.bindings, check=False)

    def add(self, a, b):
        """Formal sum ``a +_F b`` of two series without constant term."""
        return Substitution([a, b]).apply(self.F)

    def inverse(self):
        """Formal inverse G with F(u, G(u)) = 0, solved degree by degree."""
        if self._inverse is None:
            n = self.order
            u = PowerSeries.variable(1, n, 0)
            g = self.g()
            G = -u
            # G = -u + u G g(u, G); each pass fixes one more degree
            for _ in range(n):
                G = -u + u * G * g.substitute([u, G])
            self._inverse = G
        return self._inverse

    def g(self):
        """The series g^F with u +_F v = u + v - uv g^F(u, v)."""
        if self._g is None:
            # standard laws are rebuilt two degrees higher so g^F is exact
            src = self.F if self.tag == "custom" else _standard_series(self.tag, self.order + 2)
            if self.tag != "custom" and self.bindings:
                src = src.specialize(self.bindings)
            u, v = _uv(src.order)
            try:
                g = (u + v - src).divide_by_variable(0).divide_by_variable(1)
            except NotDivisible as exc:
                raise AxiomViolation("u + v - F(u, v) is not divisible by uv") from exc
            self._g = g.with_order(min(g.order, self.order))
        return self._g

    def multiple(self, m):
        """Formal multiple [m](u) as a univariate series."""
        n = self.order
        u = PowerSeries.variable(1, n, 0)
        if m == 0:
            return PowerSeries.zero(1, n)
        if m < 0:
            return self.multiple(-m).substitute([self.inverse()])
        result, base = None, u
        while m:
            if m & 1:
                result = base if result is None else self.add(result, base)
            m >>= 1
            if m:
                base = self.add(base, base)
        return result


def make_fgl(tag, order, bindings=None, check=True):
    """Build the additive, multiplicative or hyperbolic law to ``order``."""
    if order < 2:
        raise ValueError("order must be at least 2")
    if tag not in TAGS[:3]:
        raise ValueError(f"unknown formal group law {tag!r}")
    F = _standard_series(tag, order)
    if bindings:
        F = F.specialize(bindings)
    return FormalGroupLaw(F, tag, bindings, check=check)


def fgl_from_json(data, order=None, bindings=None, check=True):
    """Custom law from a serialized two-variable series."""
    F = PowerSeries.from_dict(data) if isinstance(data, dict) else PowerSeries.from_json(data)
    if order is not None:
        F = F.with_order(min(order, F.order))
    if bindings:
        F = F.specialize(bindings)
    return FormalGroupLaw(F, "custom", bindings, check=check)


def formal_inverse(fgl):
    return fgl.inverse()


class FGAElement:
    """An element of the formal group algebra: a series plus its context."""

    __slots__ = ("ctx", "ps")

    def __init__(self, ctx, ps):
        self.ctx = ctx
        self.ps = ps

    def _wrap(self, other):
        if isinstance(other, FGAElement):
            return other.ps
        return other

    def __add__(self, other):
        return FGAElement(self.ctx, self.ps + self._wrap(other))

    __radd__ = __add__

    def __sub__(self, other):
        return FGAElement(self.ctx, self.ps - self._wrap(other))

    def __rsub__(self, other):
        return FGAElement(self.ctx, self._wrap(other) - self.ps)

    def __neg__(self):
        return FGAElement(self.ctx, -self.ps)

    def __mul__(self, other):
        return FGAElement(self.ctx, self.ps * self._wrap(other))

    __rmul__ = __mul__

    def __eq__(self, other):
        other = self._wrap(other)
        if isinstance(other, (PowerSeries, Scalar, int, Fraction)):
            return self.ps == other
        return NotImplemented

    __hash__ = None

    @property
    def reliable(self):
        return self.ps.reliable

    def certified_equal(self, other):
        other = self._wrap(other)
        if not isinstance(other, PowerSeries):
            other = PowerSeries.constant(self.ps.nvars, self.ps.order, other)
        return self.ps.certified_equal(other)

    def __str__(self):
        return str(self.ps)

    def __repr__(self):
        return f"FGAElement({self.ps}, reliable={self.ps.reliable})"


def _ps(f):
    return f.ps if isinstance(f, FGAElement) else f


class FGAContext:
    """The formal group algebra of ``lattice`` for ``fgl`` truncated at ``order``.

    ``guard`` extra degrees are stored beyond ``order``.  Fractions lose
    one degree of certified precision per pole, so computations in the
    twisted algebra use a small guard to keep certified orders near ``order``.
    """

    def __init__(self, fgl, lattice, order=None, guard=0):
        self.target = fgl.order if order is None else order
        self.guard = guard
        self.order = self.target + guard
        self.fgl = fgl.extended(self.order)
        self.lat = lattice
        self.n = lattice.n
        self._x = {}
        self._mult = {}
        self._weyl_subs = {}
        self._div_subs = {}
        self._unit = {}
        self._h = None
        self.memo = {}

    def __repr__(self):
        return f"<FGAContext {self.fgl.tag} over {self.lat!r}, order {self.order}>"

    # -- symbols --------------------------------------------------------------
    def variable(self, k):
        return PowerSeries.variable(self.n, self.order, k)

    def one(self):
        return PowerSeries.one(self.n, self.order)

    def constant(self, value):
        return PowerSeries.constant(self.n, self.order, value)

    def element(self, ps):
        return FGAElement(self, ps)

    def _multiple(self, m):
        if m not in self._mult:
            self._mult[m] = self.fgl.multiple(m)
        return self._mult[m]

    def fold(self, coords, variables):
        """x of sum(coords[k] * b_k), where ``variables[k]`` is x_{b_k}."""
        acc = None
        for k, c in enumerate(coords):
            if not c:
                continue
            part = self._multiple(int(c)).substitute([variables[k]])
            acc = part if acc is None else self.fgl.add(acc, part)
        if acc is None:
            return PowerSeries.zero(self.n, self.order)
        return acc

    def x(self, vec):
        """The series x_lambda for a lattice vector (lattice coordinates)."""
        key = tuple(int(c) for c in vec)
        if len(key) != self.n:
            raise ValueError(f"vector {key} does not have {self.n} coordinates")
        cached = self._x.get(key)
        if cached is None:
            gens = [self.variable(k) for k in range(self.n)]
            cached = self.fold(key, gens)
            self._x[key] = cached
        return cached

    def x_root(self, coords):
        """x_alpha for a root given in root coordinates."""
        return self.x(self.lat.root_to_lattice(coords))

    def root(self, coords):
        return make_real_root(self.lat, coords)

    def simple_root(self, i):
        coords = [0] * self.lat.l
        coords[i] = 1
        return self.root(coords)

    # -- Weyl action ------------------------------------------------------------
    def _weyl_substitution(self, w):
        sub = self._weyl_subs.get(w.key)
        if sub is None:
            images = [self.x(w.L[:, k]) for k in range(self.n)]
            sub = Substitution(images)
            self._weyl_subs[w.key] = sub
        return sub

    def weyl_act(self, w, f):
        if w.is_identity():
            return f
        return self._weyl_substitution(w).apply(f)

    def reflect(self, root, f):
        return self.weyl_act(reflection(self.lat, root), f)

    # -- division ---------------------------------------------------------------
    def _division_maps(self, vec):
        maps = self._div_subs.get(vec)
        if maps is None:
            U, Uinv = intlinalg.complete_to_basis(vec)
            ys = [self.variable(k) for k in range(self.n)]
            gens = [self.variable(k) for k in range(self.n)]
            forward = [self.fold([Uinv[r][i] for r in range(self.n)], ys) for i in range(self.n)]
            back = [self.fold([U[r][k] for r in range(self.n)], gens) for k in range(self.n)]
            maps = (Substitution(forward), Substitution(back))
            self._div_subs[vec] = maps
        return maps

    def _cofactor_inverse(self, k):
        """Inverse of [k](y)/y as a univariate series."""
        key = ("cofactor", k)
        if key not in self._unit:
            law = self.fgl.extended(self.order + 1)
            quotient = law.multiple(k).divide_by_variable(0).with_order(self.order)
            self._unit[key] = quotient.invert_unit()
        return self._unit[key]

    def divide(self, f, vec):
        """Exact quotient f / x_lambda; the reliable order drops by one."""
        vec = tuple(int(c) for c in vec)
        g = intlinalg.content(vec)
        if g == 0:
            raise NotPrimitive("cannot divide by x_0")
        if g != 1:
            prim = tuple(c // g for c in vec)
            q = self.divide(f, prim)
            return q * self._cofactor_inverse(g).substitute([self.x(prim)])
        forward, back = self._division_maps(vec)
        rewritten = forward.apply(f)
        try:
            q = rewritten.divide_by_variable(0)
        except NotDivisible as exc:
            raise NotDivisible(f"series is not divisible by x_{list(vec)}") from exc
        return back.apply(q)

    def demazure(self, root, f):
        """Demazure operator (f - s_alpha f) / x_alpha."""
        f = _ps(f)
        try:
            return self.divide(f - self.reflect(root, f), root.vec)
        except NotDivisible as exc:
            raise AssertionError(f"Demazure quotient failed for {root.coords}: {exc}") from exc

    # -- kappa classes ------------------------------------------------------------
    def kappa_alpha(self, root):
        """g^F(x_alpha, x_{-alpha})."""
        g = self.fgl.g()
        neg = tuple(-c for c in root.vec)
        return g.substitute([self.x(root.vec), self.x(neg)])

    def kappa_pair(self, lam, mu):
        """kappa_{lambda,mu} by exact division of its numerator.

        The numerator over x_lambda x_mu x_{-lambda} x_{lambda+mu} is
        x_lambda x_{-lambda} - x_lambda x_mu - x_{lambda+mu} x_{-lambda}.
        """
        lam = tuple(int(c) for c in lam)
        mu = tuple(int(c) for c in mu)
        lm = tuple(a + b for a, b in zip(lam, mu))
        neg = tuple(-a for a in lam)
        if not any(lam) or not any(mu) or not any(lm):
            raise ValueError("lambda, mu and lambda + mu must be nonzero")
        xl, xm, xn, xs = self.x(lam), self.x(mu), self.x(neg), self.x(lm)
        num = xl * xn - xl * xm - xs * xn
        try:
            for vec in (lam, mu, neg, lm):
                num = self.divide(num, vec)
        except NotDivisible as exc:
            raise NotRegular(f"kappa_{{{list(lam)},{list(mu)}}} is not a power series: {exc}") from exc
        return num

    # -- units x_{-alpha} / x_alpha -------------------------------------------------
    def _h_series(self):
        if self._h is None:
            law = self.fgl.extended(self.order + 1)
            h = law.inverse().divide_by_variable(0).with_order(self.order)
            self._h = (h, h.invert_unit())
        return self._h

    def neg_ratio(self, coords, inverse=False):
        """x_{-alpha} / x_alpha (or its inverse) for a positive root alpha."""
        key = (tuple(coords), inverse)
        cached = self._unit.get(key)
        if cached is None:
            h, hinv = self._h_series()
            cached = (hinv if inverse else h).substitute([self.x_root(coords)])
            self._unit[key] = cached
        return cached


# module-level operations over FGAElement ------------------------------------------
def x_lambda(ctx, vec):
    return FGAElement(ctx, ctx.x(vec))


def weyl_act(ctx, w, f):
    return FGAElement(ctx, ctx.weyl_act(w, _ps(f)))


def demazure(ctx, root, f):
    if not isinstance(root, RealRoot):
        root = ctx.root(root)
    return FGAElement(ctx, ctx.demazure(root, _ps(f)))


def divide_by_xlambda(ctx, f, vec):
    return FGAElement(ctx, ctx.divide(_ps(f), vec))


def kappa_alpha(ctx, root):
    if not isinstance(root, RealRoot):
        root = ctx.root(root)
    return FGAElement(ctx, ctx.kappa_alpha(root))


def kappa_pair(ctx, lam, mu):
    return FGAElement(ctx, ctx.kappa_pair(lam, mu))
