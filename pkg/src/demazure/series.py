"""Truncated multivariate power series over :class:`~demazure.scalars.Scalar`.

Every series is truncated at a total degree ``order`` and carries a
``reliable`` order: coefficients of total degree <= ``reliable`` are exact.
Ring operations propagate the reliable order, so precision lost to
division is visible instead of silently wrong.
"""

import json
from fractions import Fraction
from numbers import Rational

from ._packing import (
    PBITS,
    PSHALF,
    XDIGIT,
    add_terms,
    clean,
    pack_vars,
    scale_terms,
    split_key,
    unpack_vars,
)
from .scalars import Scalar


class SeriesError(ArithmeticError):
    pass


class ShapeMismatch(SeriesError):
    pass


class NonNilpotentImage(SeriesError):
    pass


class NotAUnit(SeriesError):
    pass


class NotDivisible(SeriesError):
    pass


class NotPrimitive(SeriesError):
    pass


def _shift(nvars):
    return PBITS + XDIGIT * nvars


def _buckets(terms, nvars):
    shift = _shift(nvars)
    out = {}
    for k, c in terms.items():
        out.setdefault((k + PSHALF) >> shift, []).append((k, c))
    return out


def _mul_flat(a, b, nvars, limit):
    ba = _buckets(a, nvars)
    bb = _buckets(b, nvars)
    out = {}
    get = out.get
    for da, la in ba.items():
        for db, lb in bb.items():
            if da + db > limit:
                continue
            for ka, ca in la:
                for kb, cb in lb:
                    k = ka + kb
                    v = get(k)
                    out[k] = ca * cb if v is None else v + ca * cb
    return {k: clean(v) for k, v in out.items() if v}


class PowerSeries:
    """Immutable truncated power series in ``nvars`` variables."""

    __slots__ = ("nvars", "order", "reliable", "_t")

    def __init__(self, nvars, order, terms=None, reliable=None):
        flat = {}
        for exps, c in (terms or {}).items():
            exps = tuple(exps)
            if len(exps) != nvars:
                raise ShapeMismatch(f"exponent {exps} does not have {nvars} entries")
            if sum(exps) > order:
                continue
            c = c if isinstance(c, Scalar) else Scalar(c)
            base = pack_vars(exps) << PBITS
            flat = add_terms(flat, {base + k: v for k, v in c._terms.items()})
        self._init(nvars, order, flat, order if reliable is None else reliable)

    def _init(self, nvars, order, flat, reliable):
        self.nvars = nvars
        self.order = order
        self.reliable = min(reliable, order)
        self._t = flat

    @classmethod
    def _make(cls, nvars, order, flat, reliable):
        obj = cls.__new__(cls)
        obj._init(nvars, order, flat, reliable)
        return obj

    # -- constructors -------------------------------------------------------
    @classmethod
    def zero(cls, nvars, order):
        return cls._make(nvars, order, {}, order)

    @classmethod
    def constant(cls, nvars, order, value):
        value = value if isinstance(value, Scalar) else Scalar(value)
        base = pack_vars((0,) * nvars) << PBITS
        return cls._make(nvars, order, {base + k: c for k, c in value._terms.items()}, order)

    @classmethod
    def one(cls, nvars, order):
        return cls.constant(nvars, order, 1)

    @classmethod
    def variable(cls, nvars, order, i):
        exps = [0] * nvars
        exps[i] = 1
        return cls._make(nvars, order, {pack_vars(exps) << PBITS: 1}, order)

    # -- inspection ---------------------------------------------------------
    def coeffs(self):
        """Return ``{exponent tuple: Scalar}``."""
        grouped = {}
        for k, c in self._t.items():
            xk, pk = split_key(k)
            grouped.setdefault(xk, {})[pk] = c
        return {unpack_vars(xk, self.nvars): Scalar._from_terms(d) for xk, d in grouped.items()}

    def coefficient(self, exps):
        base = pack_vars(tuple(exps)) << PBITS
        out = {}
        for k, c in self._t.items():
            xk, pk = split_key(k)
            if xk << PBITS == base:
                out[pk] = c
        return Scalar._from_terms(out)

    def constant_term(self):
        return self.coefficient((0,) * self.nvars)

    def degrees(self):
        shift = _shift(self.nvars)
        return {(k + PSHALF) >> shift for k in self._t}

    def valuation(self):
        """Lowest stored total degree (``order + 1`` for the zero series)."""
        degs = self.degrees()
        return min(degs) if degs else self.order + 1

    def effective_valuation(self):
        return min(self.valuation(), self.reliable + 1)

    def is_zero(self):
        """True when every coefficient up to the reliable order vanishes."""
        return self.valuation() > self.reliable

    def is_exactly_zero(self):
        return not self._t

    def homogeneous(self, d):
        shift = _shift(self.nvars)
        flat = {k: c for k, c in self._t.items() if (k + PSHALF) >> shift == d}
        return PowerSeries._make(self.nvars, self.order, flat, self.order)

    def truncate(self, degree):
        """Drop terms above ``degree`` (the series keeps its storage order)."""
        shift = _shift(self.nvars)
        flat = {k: c for k, c in self._t.items() if (k + PSHALF) >> shift <= degree}
        return PowerSeries._make(self.nvars, self.order, flat, min(self.reliable, degree))

    def with_order(self, order):
        """Re-truncate at a new storage order."""
        if order >= self.order:
            return PowerSeries._make(self.nvars, order, dict(self._t), self.reliable)
        shift = _shift(self.nvars)
        flat = {k: c for k, c in self._t.items() if (k + PSHALF) >> shift <= order}
        return PowerSeries._make(self.nvars, order, flat, min(self.reliable, order))

    def with_reliable(self, reliable):
        return PowerSeries._make(self.nvars, self.order, self._t, min(reliable, self.reliable))

    def map_coefficients(self, fn):
        """Apply ``fn: Scalar -> Scalar`` to every coefficient."""
        out = {}
        for exps, c in self.coeffs().items():
            out[exps] = fn(c)
        return PowerSeries(self.nvars, self.order, out, self.reliable)

    def specialize(self, bindings):
        return self.map_coefficients(lambda c: c.specialize(bindings))

    # -- arithmetic ---------------------------------------------------------
    def _check(self, other):
        if other.nvars != self.nvars:
            raise ShapeMismatch(f"{self.nvars} vs {other.nvars} variables")
        if other.order != self.order:
            raise ShapeMismatch(f"truncation order {self.order} vs {other.order}")

    def _lift(self, other):
        if isinstance(other, PowerSeries):
            self._check(other)
            return other
        if isinstance(other, (Scalar, Rational)):
            return PowerSeries.constant(self.nvars, self.order, other)
        return NotImplemented

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return PowerSeries._make(
            self.nvars, self.order, add_terms(self._t, other._t), min(self.reliable, other.reliable)
        )

    __radd__ = __add__

    def __neg__(self):
        return PowerSeries._make(self.nvars, self.order, {k: -c for k, c in self._t.items()}, self.reliable)

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return PowerSeries._make(
            self.nvars, self.order, add_terms(self._t, other._t, -1), min(self.reliable, other.reliable)
        )

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, value):
        if isinstance(value, Rational):
            return PowerSeries._make(self.nvars, self.order, scale_terms(self._t, Fraction(value)), self.reliable)
        value = value if isinstance(value, Scalar) else Scalar(value)
        if len(value._terms) == 1:
            ((pk, c),) = value._terms.items()
            flat = {k + pk: clean(v * c) for k, v in self._t.items()}
            return PowerSeries._make(self.nvars, self.order, flat, self.reliable)
        flat = _mul_flat(self._t, value._terms, self.nvars, self.order)
        return PowerSeries._make(self.nvars, self.order, flat, self.reliable)

    def __mul__(self, other):
        if isinstance(other, (Scalar, Rational)):
            return self.scale(other)
        if not isinstance(other, PowerSeries):
            return NotImplemented
        self._check(other)
        n = self.order
        flat = _mul_flat(self._t, other._t, self.nvars, n)
        rel = min(
            self.reliable + other.effective_valuation(),
            other.reliable + self.effective_valuation(),
            n,
        )
        return PowerSeries._make(self.nvars, n, flat, rel)

    __rmul__ = __mul__

    def __pow__(self, k):
        if not isinstance(k, int) or k < 0:
            return NotImplemented
        result = PowerSeries.one(self.nvars, self.order)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def certified_equal(self, other):
        """Compare up to the common reliable order.

        Returns ``(equal, order)`` where ``order`` is the degree through
        which the comparison is exact.
        """
        diff = self - other
        return diff.is_zero(), diff.reliable

    def __eq__(self, other):
        if isinstance(other, (Scalar, Rational)):
            other = PowerSeries.constant(self.nvars, self.order, other)
        if not isinstance(other, PowerSeries):
            return NotImplemented
        if other.nvars != self.nvars:
            return False
        if other.order != self.order:
            n = min(self.order, other.order)
            return self.with_order(n) == other.with_order(n)
        return self.certified_equal(other)[0]

    __hash__ = None

    # -- composition ----------------------------------------------------------
    def substitute(self, images):
        """Compose: replace variable i by ``images[i]`` (no constant terms)."""
        return Substitution(images).apply(self)

    def invert_unit(self):
        """Multiplicative inverse; the constant term must be a unit Scalar."""
        c0 = self.constant_term()
        if not c0.is_unit():
            raise NotAUnit(f"constant term {c0} is not invertible")
        inv0 = c0.inverse()
        nv, n = self.nvars, self.order
        parts = {}
        for k, c in self._t.items():
            parts.setdefault((k + PSHALF) >> _shift(nv), {})[k] = c
        base = pack_vars((0,) * nv) << PBITS
        g = {0: {base + k: c for k, c in inv0._terms.items()}}
        neg_inv0 = (-inv0)._terms
        for d in range(1, self.reliable + 1):
            acc = {}
            for a in range(1, d + 1):
                if a in parts and (d - a) in g:
                    acc = add_terms(acc, _mul_flat(parts[a], g[d - a], nv, n))
            if acc:
                g[d] = _mul_flat(acc, neg_inv0, nv, n)
        flat = {}
        for part in g.values():
            flat.update(part)
        return PowerSeries._make(nv, n, flat, self.reliable)

    def divide_by_variable(self, i):
        """Exact quotient by ``x_i``; the reliable order drops by one."""
        nv = self.nvars
        exps = [0] * nv
        exps[i] = 1
        step = pack_vars(exps) << PBITS
        shift = _shift(nv)
        flat = {}
        for k, c in self._t.items():
            xk, _ = split_key(k)
            if (xk >> (XDIGIT * i)) & 0xFF:
                flat[k - step] = c
            elif (k + PSHALF) >> shift <= self.reliable:
                raise NotDivisible(f"term of degree {(k + PSHALF) >> shift} has no factor x{i + 1}")
        return PowerSeries._make(nv, self.order, flat, self.reliable - 1)

    def embed(self, nvars, positions):
        """View as a series in ``nvars`` variables, variable j -> positions[j]."""
        flat = {}
        for k, c in self._t.items():
            xk, pk = split_key(k)
            old = unpack_vars(xk, self.nvars)
            new = [0] * nvars
            for j, e in enumerate(old):
                new[positions[j]] += e
            flat[(pack_vars(new) << PBITS) + pk] = c
        return PowerSeries._make(nvars, self.order, flat, self.reliable)

    # -- text / json ----------------------------------------------------------
    def sorted_terms(self):
        items = list(self.coeffs().items())
        items.sort(key=lambda kv: (sum(kv[0]), tuple(-e for e in kv[0])))
        return items

    def __str__(self):
        if not self._t:
            return "0"
        names = ["x"] if self.nvars == 1 else [f"x{i + 1}" for i in range(self.nvars)]
        parts = []
        for exps, c in self.sorted_terms():
            mono = "*".join(
                name if e == 1 else f"{name}^{e}" for name, e in zip(names, exps) if e
            )
            cs = str(c)
            if not mono:
                parts.append(f"({cs})" if " " in cs else cs)
            elif cs == "1":
                parts.append(mono)
            elif cs == "-1":
                parts.append(f"-{mono}")
            else:
                parts.append(f"({cs})*{mono}" if " " in cs else f"{cs}*{mono}")
        return " + ".join(parts).replace(" + -", " - ")

    def __repr__(self):
        return f"PowerSeries({self.nvars}, order={self.order}, reliable={self.reliable}: {self})"

    def to_dict(self):
        return {
            "nvars": self.nvars,
            "order": self.order,
            "reliable": self.reliable,
            "terms": [{"exp": list(e), "coef": str(c)} for e, c in self.sorted_terms()],
        }

    def to_json(self):
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, data):
        terms = {tuple(t["exp"]): Scalar.parse(t["coef"]) for t in data["terms"]}
        return cls(data["nvars"], data["order"], terms, data.get("reliable"))

    @classmethod
    def from_json(cls, text):
        return cls.from_dict(json.loads(text))


class Substitution:
    """Reusable substitution ``x_i -> images[i]`` with cached monomial images."""

    def __init__(self, images):
        images = list(images)
        if not images:
            raise ShapeMismatch("need at least one image")
        nv = images[0].nvars
        for img in images:
            if img.nvars != nv:
                raise ShapeMismatch("images must share the number of variables")
            if not img.constant_term().is_zero():
                raise NonNilpotentImage(f"image {img} has a nonzero constant term")
        self.order = min(img.order for img in images)
        self.images = [img.with_order(self.order) for img in images]
        self.nvars_out = nv
        self.minval = min(img.effective_valuation() for img in self.images)
        self._cache = {(0,) * len(images): PowerSeries.one(nv, self.order)._t}

    def monomial(self, exps):
        cached = self._cache.get(exps)
        if cached is not None:
            return cached
        i = next(j for j, e in enumerate(exps) if e)
        lower = list(exps)
        lower[i] -= 1
        prev = self.monomial(tuple(lower))
        img = _mul_flat(prev, self.images[i]._t, self.nvars_out, self.order)
        self._cache[exps] = img
        return img

    def apply(self, f):
        if f.nvars != len(self.images):
            raise ShapeMismatch(f"{len(self.images)} images for {f.nvars} variables")
        grouped = {}
        for k, c in f._t.items():
            xk, pk = split_key(k)
            grouped.setdefault(xk, {})[pk] = c
        out = {}
        get = out.get
        used = set()
        for xk, scal in grouped.items():
            exps = unpack_vars(xk, f.nvars)
            if sum(exps) * self.minval > self.order:
                continue
            used.update(j for j, e in enumerate(exps) if e)
            img = self.monomial(exps)
            for pk, c in scal.items():
                for ki, ci in img.items():
                    k = ki + pk
                    v = get(k)
                    out[k] = c * ci if v is None else v + c * ci
        flat = {k: clean(v) for k, v in out.items() if v}
        rel = min((f.reliable + 1) * self.minval - 1, self.order)
        for j in used:
            rel = min(rel, self.images[j].reliable)
        return PowerSeries._make(self.nvars_out, self.order, flat, rel)
