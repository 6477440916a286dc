"""Iwahori-Hecke algebra and its comparison with the formal Demazure algebra.

Quadratic relation in Lusztig's normalization: (T_i + t)(T_i - t^-1) = 0.
The maps are psi: X_i -> u(T_i + t) and phi: T_i -> u^-1 X_i - t, which
match once mu1 = u(t + t^-1) and mu2 = -u^2.
"""

from dataclasses import dataclass, field
from itertools import product

from .roots import coxeter_order
from .scalars import MU1, MU2, ONE, T, U, Scalar, hecke_bindings
from .twisted import QFraction, TwistedElement, _verdict, generator, twisted_mul, x_word


def _s(value):
    return value if isinstance(value, Scalar) else Scalar(value)


def _add_into(terms, key, c):
    v = terms.get(key)
    v = c if v is None else v + c
    if v.is_zero():
        terms.pop(key, None)
    else:
        terms[key] = v


class HeckeElement:
    """Finite combination sum c_w T_w over a Weyl group."""

    __slots__ = ("group", "terms")

    def __init__(self, group, terms=None):
        self.group = group
        self.terms = {}
        for w, c in (terms or {}).items():
            _add_into(self.terms, w, _s(c))

    @classmethod
    def basis(cls, group, w):
        return cls(group, {w: ONE})

    @classmethod
    def one(cls, group):
        return cls.basis(group, group.identity)

    @classmethod
    def generator(cls, group, i):
        return cls.basis(group, group.simple(i))

    @classmethod
    def word(cls, group, word):
        """T_{i1} T_{i2} ... T_{ik} (the word need not be reduced)."""
        out = cls.one(group)
        for i in reversed(tuple(word)):
            out = out.left_generator(i)
        return out

    def is_zero(self):
        return not self.terms

    def __add__(self, other):
        terms = dict(self.terms)
        for w, c in other.terms.items():
            _add_into(terms, w, c)
        return HeckeElement(self.group, terms)

    def __neg__(self):
        return HeckeElement(self.group, {w: -c for w, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        c = _s(c)
        return HeckeElement(self.group, {w: c * v for w, v in self.terms.items()})

    def left_generator(self, i):
        """T_i times self, by the length rule."""
        out = {}
        si = self.group.simple(i)
        shift = T.inverse() - T
        for w, c in self.terms.items():
            sw = si * w
            _add_into(out, sw, c)
            if sw.length < w.length:
                _add_into(out, w, shift * c)
        return HeckeElement(self.group, out)

    def __mul__(self, other):
        if isinstance(other, HeckeElement):
            return hecke_mul(self, other)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def __eq__(self, other):
        if not isinstance(other, HeckeElement):
            return NotImplemented
        return self.terms == other.terms

    __hash__ = None

    def specialize(self, bindings):
        return HeckeElement(self.group, {w: c.specialize(bindings) for w, c in self.terms.items()})

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for w in sorted(self.terms, key=lambda v: (v.length, v.word)):
            c = self.terms[w]
            name = "T_e" if not w.word else "T_" + "".join(map(str, w.word))
            parts.append(f"({c})*{name}")
        return " + ".join(parts)

    __repr__ = __str__


def hecke_mul(a, b):
    """Bilinear product, expanding each T_w of ``a`` along its reduced word."""
    out = HeckeElement(a.group)
    for w, c in a.terms.items():
        x = b
        for i in reversed(w.word):
            x = x.left_generator(i)
        out = out + x.scale(c)
    return out


class DemazureExpression:
    """Scalar combination of words in abstract generators X_i."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = {}
        for word, c in (terms or {}).items():
            _add_into(self.terms, tuple(word), _s(c))

    @classmethod
    def X(cls, *word):
        return cls({tuple(word): ONE})

    @classmethod
    def constant(cls, c):
        return cls({(): _s(c)})

    def __add__(self, other):
        terms = dict(self.terms)
        for w, c in other.terms.items():
            _add_into(terms, w, c)
        return DemazureExpression(terms)

    def __neg__(self):
        return DemazureExpression({w: -c for w, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        c = _s(c)
        return DemazureExpression({w: c * v for w, v in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, DemazureExpression):
            return self.scale(other)
        out = {}
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                _add_into(out, w1 + w2, c1 * c2)
        return DemazureExpression(out)

    def __rmul__(self, other):
        return self.scale(other)

    def specialize(self, bindings):
        return DemazureExpression({w: c.specialize(bindings) for w, c in self.terms.items()})

    def is_zero(self):
        return not self.terms

    def __eq__(self, other):
        if not isinstance(other, DemazureExpression):
            return NotImplemented
        return self.terms == other.terms

    __hash__ = None

    def __str__(self):
        if not self.terms:
            return "0"
        return " + ".join(
            f"({c})*X_{''.join(map(str, w)) or 'e'}" for w, c in sorted(self.terms.items(), key=lambda kv: (len(kv[0]), kv[0]))
        )


def psi_map(expr, group, u=U):
    """X_i -> u(T_i + t), after mu1 = u(t + t^-1), mu2 = -u^2."""
    u = _s(u)
    bindings = hecke_bindings(u)
    cache = {(): HeckeElement.one(group)}

    def image(word):
        if word not in cache:
            prev = image(word[1:])
            cache[word] = (prev.left_generator(word[0]) + prev.scale(T)).scale(u)
        return cache[word]

    out = HeckeElement(group)
    for word, c in expr.terms.items():
        out = out + image(word).scale(c.specialize(bindings))
    return out


def phi_expression(h, u=U):
    """T_i -> u^-1 X_i - t, expanded along the chosen reduced word of each T_w."""
    u = _s(u)
    out = DemazureExpression()
    for w, c in h.terms.items():
        term = DemazureExpression.constant(c)
        for i in w.word:
            term = term * (DemazureExpression.X(i).scale(u.inverse()) - DemazureExpression.constant(T))
        out = out + term
    return out


def realize(expr, ctx):
    """Evaluate an expression in the twisted algebra of ``ctx``."""
    bindings = ctx.fgl.bindings
    total = TwistedElement(ctx)
    for word, c in expr.terms.items():
        total = total + x_word(ctx, word).rmul(c.specialize(bindings) if bindings else c)
    return total


def _phi_tw(ctx, w, u):
    """phi(T_w) in the twisted algebra, built from cached prefixes."""
    key = ("phiT", w.word, u)
    cached = ctx.memo.get(key)
    if cached is None:
        if not w.word:
            cached = TwistedElement.one(ctx)
        else:
            group = ctx.lat.weyl
            prefix = _phi_tw(ctx, group.element(w.word[:-1]), u)
            i = w.word[-1]
            gen = generator(ctx, ctx.simple_root(i)).rmul(u.inverse()) - TwistedElement.one(ctx).rmul(T)
            cached = twisted_mul(prefix, gen)
        ctx.memo[key] = cached
    return cached


def phi_map(h, ctx, u=U):
    """phi(h) as an element of the twisted algebra."""
    u = _s(u)
    total = TwistedElement(ctx)
    for w, c in h.terms.items():
        total = total + _phi_tw(ctx, w, u).rmul(c)
    return total


def demazure_relations(gcm, mu1=MU1, mu2=MU2):
    """Defining relations of the Demazure algebra for the hyperbolic law."""
    X = DemazureExpression.X
    rels = []
    for i in range(gcm.l):
        rels.append((f"quadratic[{i}]", X(i, i) - X(i).scale(mu1)))
    for i in range(gcm.l):
        for j in range(i + 1, gcm.l):
            m = coxeter_order(gcm, i, j)
            alt = lambda a, b, k: tuple(a if n % 2 == 0 else b for n in range(k))  # noqa: E731
            if m == 2:
                rel = X(i, j) - X(j, i)
            elif m == 3:
                rel = X(j, i, j) - X(i, j, i) - (X(i) - X(j)).scale(mu2)
            elif m == 4:
                rel = X(*alt(j, i, 4)) - X(*alt(i, j, 4)) - (X(i, j) - X(j, i)).scale(2 * mu2)
            elif m == 6:
                rel = (
                    X(*alt(j, i, 6))
                    - X(*alt(i, j, 6))
                    - (X(*alt(i, j, 4)) - X(*alt(j, i, 4))).scale(4 * mu2)
                    - (X(i, j) - X(j, i)).scale(3 * mu2 * mu2)
                )
            else:
                continue
            rels.append((f"braid[{i},{j}] m={m}", rel))
    return rels


@dataclass
class IsoReport:
    check: str
    holds: bool
    max_word_length: int
    certified_order: int
    details: dict = field(default_factory=dict)

    def to_json(self):
        return {
            "check": self.check,
            "holds": self.holds,
            "max_word_length": self.max_word_length,
            "certified_order": self.certified_order,
            "details": self.details,
        }


def relation_images(group, gcm, u=U):
    """psi of every defining relation; all must vanish."""
    bad = []
    for name, rel in demazure_relations(gcm):
        if not psi_map(rel, group, u).is_zero():
            bad.append(name)
    return bad


def verify_iso(ctx, max_length, u=U):
    """Round trips psi(phi(T_word)) and phi(psi(X_word)) for every word up to ``max_length``.

    ``ctx`` must carry the specialization mu1 = u(t + t^-1), mu2 = -u^2.
    """
    u = _s(u)
    group = ctx.lat.weyl
    l = ctx.lat.l
    failures = []
    order = ctx.order
    bad_relations = relation_images(group, ctx.lat.gcm, u)
    failures.extend(f"psi kills {name}: no" for name in bad_relations)
    words = 0
    for k in range(1, max_length + 1):
        for word in product(range(l), repeat=k):
            words += 1
            tw = HeckeElement.word(group, word)
            back = psi_map(phi_expression(tw, u), group, u)
            if back != tw:
                failures.append(f"psi(phi(T_{''.join(map(str, word))}))")
            xw = x_word(ctx, word)
            image = phi_map(psi_map(DemazureExpression.X(*word), group, u), ctx, u)
            diff = xw - image
            ok, cert = _verdict(diff)
            order = min(order, cert)
            if not ok:
                failures.append(f"phi(psi(X_{''.join(map(str, word))}))")
    details = {"words": words, "failures": failures, "relations_checked": len(demazure_relations(ctx.lat.gcm))}
    return IsoReport("iso", not failures, max_length, order, details)


def affine_relation_check(ctx, gamma, i):
    """gamma T_i - T_i s_i(gamma) = (1 - t x_i) Delta_i(gamma) with T_i = X_i - t.

    ``ctx`` carries u = 1: mu1 = t + t^-1, mu2 = -1.
    """
    g = gamma.ps if hasattr(gamma, "ps") else gamma
    root = ctx.simple_root(i)
    Ti = generator(ctx, root) - TwistedElement.one(ctx).rmul(T)
    lhs = Ti.lmul(QFraction(ctx, g)) - Ti.rmul(QFraction(ctx, ctx.reflect(root, g)))
    factor = ctx.one() - ctx.x(root.vec).scale(T)
    rhs = TwistedElement.scalar(ctx, QFraction(ctx, factor * ctx.demazure(root, g)))
    holds, order = _verdict(lhs - rhs)
    return IsoReport("affine", holds, 1, order, {"i": i})


def affine_bindings():
    """u = 1: mu1 = t + t^-1, mu2 = -1."""
    return hecke_bindings(ONE)
