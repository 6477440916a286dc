"""Exact coefficients in Q[mu1, mu2, t, t^-1, u, u^-1].

A :class:`Scalar` is an immutable Laurent polynomial with rational
coefficients, stored in canonical form (no zero terms, reduced
fractions, unique exponent keys), so ``==`` is exact equality.
"""

import ast
from fractions import Fraction
from numbers import Rational

from ._packing import (
    PARAMS,
    add_terms,
    clean,
    mul_terms,
    pack_params,
    scale_terms,
    unpack_params,
)


class CyclicBinding(ValueError):
    """A bound parameter occurs in its own image."""


class Scalar:
    __slots__ = ("_terms", "_hash")

    def __init__(self, value=0):
        if isinstance(value, Scalar):
            self._terms = value._terms
        elif isinstance(value, Rational):
            self._terms = {0: clean(Fraction(value))} if value else {}
        elif isinstance(value, str):
            self._terms = Scalar.parse(value)._terms
        else:
            raise TypeError(f"cannot build a Scalar from {type(value).__name__}")
        self._hash = None

    @classmethod
    def _from_terms(cls, terms):
        obj = cls.__new__(cls)
        obj._terms = terms
        obj._hash = None
        return obj

    @classmethod
    def from_dict(cls, mapping):
        """Build from ``{(mu1, mu2, t, u): coefficient}``."""
        terms = {}
        for exps, c in mapping.items():
            c = clean(Fraction(c))
            if c:
                k = pack_params(tuple(exps))
                terms[k] = clean(terms.get(k, 0) + c)
        return cls._from_terms({k: v for k, v in terms.items() if v})

    @classmethod
    def gen(cls, name):
        """The parameter ``name`` as a Scalar."""
        exps = [0] * len(PARAMS)
        exps[PARAMS.index(name)] = 1
        return cls._from_terms({pack_params(exps): 1})

    @classmethod
    def monomial(cls, coef=1, mu1=0, mu2=0, t=0, u=0):
        if not coef:
            return cls._from_terms({})
        return cls._from_terms({pack_params((mu1, mu2, t, u)): clean(Fraction(coef))})

    # -- inspection ---------------------------------------------------------
    def terms(self):
        """Return ``{(mu1, mu2, t, u): Fraction}``."""
        return {unpack_params(k): Fraction(c) for k, c in self._terms.items()}

    def is_zero(self):
        return not self._terms

    def is_constant(self):
        return not self._terms or set(self._terms) == {0}

    def constant(self):
        return Fraction(self._terms.get(0, 0))

    def is_unit(self):
        """True for c * t^a * u^b with c a nonzero rational."""
        if len(self._terms) != 1:
            return False
        (k,) = self._terms
        m1, m2, _, _ = unpack_params(k)
        return m1 == 0 and m2 == 0

    def variables(self):
        used = set()
        for k in self._terms:
            for name, e in zip(PARAMS, unpack_params(k)):
                if e:
                    used.add(name)
        return used

    # -- arithmetic ---------------------------------------------------------
    @staticmethod
    def _coerce(other):
        if isinstance(other, Scalar):
            return other
        if isinstance(other, Rational):
            return Scalar(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return Scalar._from_terms(add_terms(self._terms, other._terms))

    __radd__ = __add__

    def __neg__(self):
        return Scalar._from_terms({k: -c for k, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return Scalar._from_terms(add_terms(self._terms, other._terms, -1))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, Rational):
            return Scalar._from_terms(scale_terms(self._terms, Fraction(other)))
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return Scalar._from_terms(mul_terms(self._terms, other._terms))

    __rmul__ = __mul__

    def inverse(self):
        if not self.is_unit():
            raise ZeroDivisionError(f"{self} is not a unit")
        ((k, c),) = self._terms.items()
        return Scalar._from_terms({-k: clean(1 / Fraction(c))})

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        return Scalar(other) * self.inverse()

    def __pow__(self, n):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        result = Scalar(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __bool__(self):
        return bool(self._terms)

    # -- specialization -----------------------------------------------------
    def specialize(self, bindings):
        """Substitute parameters simultaneously.

        ``bindings`` maps parameter names to Scalars (or anything
        :class:`Scalar` accepts).  Raises :class:`CyclicBinding` when a
        bound parameter appears in its own image.
        """
        images = {}
        for name, value in bindings.items():
            if name not in PARAMS:
                raise KeyError(f"unknown parameter {name!r}")
            value = value if isinstance(value, Scalar) else Scalar(value)
            if name in value.variables():
                raise CyclicBinding(f"{name} occurs in its own image {value}")
            images[PARAMS.index(name)] = value
        if not images:
            return self
        powers = {}

        def power(idx, e):
            key = (idx, e)
            if key not in powers:
                powers[key] = images[idx] ** e
            return powers[key]

        acc = {}
        for k, c in self._terms.items():
            exps = list(unpack_params(k))
            factor = Scalar(c)
            for idx in images:
                if exps[idx]:
                    factor = factor * power(idx, exps[idx])
                    exps[idx] = 0
            if factor:
                acc = add_terms(acc, mul_terms(factor._terms, {pack_params(exps): 1}))
        return Scalar._from_terms(acc)

    # -- text form ----------------------------------------------------------
    def __str__(self):
        if not self._terms:
            return "0"
        parts = []
        for k in sorted(self._terms, reverse=True):
            c = Fraction(self._terms[k])
            factors = []
            for name, e in zip(PARAMS, unpack_params(k)):
                if e == 1:
                    factors.append(name)
                elif e:
                    factors.append(f"{name}^{e}")
            mag = abs(c)
            if factors and mag == 1:
                body = "*".join(factors)
            else:
                body = "*".join([str(mag)] + factors)
            parts.append(("-" if c < 0 else "+", body))
        sign, body = parts[0]
        text = ("-" if sign == "-" else "") + body
        for sign, body in parts[1:]:
            text += f" {sign} {body}"
        return text

    def __repr__(self):
        return f"Scalar('{self}')"

    @classmethod
    def parse(cls, text):
        """Parse an expression such as ``"u*(t + t^-1)"`` or ``"-3/2*mu2^2"``."""
        try:
            tree = ast.parse(text.replace("^", "**"), mode="eval")
        except SyntaxError as exc:
            raise ValueError(f"malformed scalar {text!r}") from exc
        return _eval_node(tree.body, text)


def _eval_node(node, text):
    if isinstance(node, ast.BinOp):
        left = _eval_node(node.left, text)
        if isinstance(node.op, ast.Pow):
            exp = node.right
            sign = 1
            if isinstance(exp, ast.UnaryOp) and isinstance(exp.op, (ast.USub, ast.UAdd)):
                sign = -1 if isinstance(exp.op, ast.USub) else 1
                exp = exp.operand
            if not (isinstance(exp, ast.Constant) and isinstance(exp.value, int)):
                raise ValueError(f"non-integer exponent in {text!r}")
            return left ** (sign * exp.value)
        right = _eval_node(node.right, text)
        if isinstance(node.op, ast.Add):
            return left + right
        if isinstance(node.op, ast.Sub):
            return left - right
        if isinstance(node.op, ast.Mult):
            return left * right
        if isinstance(node.op, ast.Div):
            return left / right
    elif isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
        value = _eval_node(node.operand, text)
        return -value if isinstance(node.op, ast.USub) else value
    elif isinstance(node, ast.Constant) and isinstance(node.value, int):
        return Scalar(node.value)
    elif isinstance(node, ast.Name) and node.id in PARAMS:
        return Scalar.gen(node.id)
    raise ValueError(f"unsupported syntax in scalar {text!r}")


MU1 = Scalar.gen("mu1")
MU2 = Scalar.gen("mu2")
T = Scalar.gen("t")
U = Scalar.gen("u")
ONE = Scalar(1)
ZERO = Scalar(0)


def specialize(a, bindings):
    return Scalar(a).specialize(bindings)


def hecke_bindings(u=U):
    """Parameters under which the hyperbolic law matches the Hecke algebra."""
    u = Scalar(u)
    return {"mu1": u * (T + T.inverse()), "mu2": -(u * u)}
