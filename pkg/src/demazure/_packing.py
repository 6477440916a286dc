"""Integer packing of exponent vectors.

Monomials in the parameters (mu1, mu2, t, u) are packed into one Python
int with balanced base-2**12 digits, so multiplying monomials is integer
addition.  Series terms prepend the variable exponents (and their total
degree) as non-negative base-2**8 digits above the parameter part.
"""

from fractions import Fraction

PARAMS = ("mu1", "mu2", "t", "u")

PDIGIT = 12
PBASE = 1 << PDIGIT
PHALF = PBASE >> 1
PBITS = PDIGIT * len(PARAMS)
PSPAN = 1 << PBITS
PSHALF = PSPAN >> 1

XDIGIT = 8
XMASK = (1 << XDIGIT) - 1


def pack_params(exps):
    key = 0
    for e in exps:
        if not -PHALF <= e < PHALF:
            raise OverflowError(f"parameter exponent {e} out of range")
        key = (key << PDIGIT) + e
    return key


def unpack_params(key):
    out = []
    for _ in PARAMS:
        r = ((key + PHALF) & (PBASE - 1)) - PHALF
        out.append(r)
        key = (key - r) >> PDIGIT
    out.reverse()
    return tuple(out)


def split_key(key):
    """Split a series key into (variable key, parameter key)."""
    pk = ((key + PSHALF) & (PSPAN - 1)) - PSHALF
    return (key - pk) >> PBITS, pk


def pack_vars(exps):
    nv = len(exps)
    xk = sum(exps) << (XDIGIT * nv)
    for i, e in enumerate(exps):
        if e < 0 or e > XMASK:
            raise OverflowError(f"variable exponent {e} out of range")
        xk |= e << (XDIGIT * i)
    return xk


def unpack_vars(xk, nvars):
    return tuple((xk >> (XDIGIT * i)) & XMASK for i in range(nvars))


def var_degree(xk, nvars):
    return xk >> (XDIGIT * nvars)


def degree_of_key(key, nvars):
    return (key + PSHALF) >> (PBITS + XDIGIT * nvars)


def clean(coef):
    if type(coef) is Fraction and coef.denominator == 1:
        return coef.numerator
    return coef


def mul_terms(a, b):
    """Plain product of two packed term dicts (no truncation)."""
    out = {}
    get = out.get
    for ka, ca in a.items():
        for kb, cb in b.items():
            k = ka + kb
            v = get(k)
            out[k] = ca * cb if v is None else v + ca * cb
    return {k: clean(v) for k, v in out.items() if v}


def add_terms(a, b, sign=1):
    out = dict(a)
    get = out.get
    for k, c in b.items():
        v = get(k)
        out[k] = sign * c if v is None else v + sign * c
    return {k: clean(v) for k, v in out.items() if v}


def scale_terms(a, c):
    if c == 1:
        return dict(a)
    if not c:
        return {}
    return {k: clean(v * c) for k, v in a.items()}
