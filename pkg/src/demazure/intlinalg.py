"""Small exact integer/rational linear algebra helpers."""

from fractions import Fraction
from math import gcd

from sympy import Matrix, ZZ
from sympy.matrices.normalforms import invariant_factors


def det(m):
    """Exact determinant of a square integer matrix (Bareiss elimination)."""
    a = [list(map(int, row)) for row in m]
    n = len(a)
    if n == 0:
        return 1
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for r in range(k + 1, n):
                if a[r][k]:
                    a[k], a[r] = a[r], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[-1][-1]


def content(vec):
    g = 0
    for v in vec:
        g = gcd(g, int(v))
    return g


def is_unimodular(vec):
    return content(vec) == 1


def egcd(a, b):
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    return a, x0, y0


def complete_to_basis(vec):
    """Unimodular matrix whose first column is the primitive vector ``vec``.

    Returns ``(U, Uinv)`` as lists of rows.
    """
    n = len(vec)
    v = [int(x) for x in vec]
    if content(v) != 1:
        raise ValueError(f"{vec} is not primitive")
    V = [[int(i == j) for j in range(n)] for i in range(n)]
    Vinv = [[int(i == j) for j in range(n)] for i in range(n)]
    for k in range(1, n):
        a, b = v[0], v[k]
        if b == 0:
            continue
        g, p, q = egcd(a, b)
        # rows (0, k) <- [[p, q], [-b/g, a/g]] @ rows (0, k); inverse acts on columns
        r0, rk = V[0], V[k]
        V[0] = [p * x + q * y for x, y in zip(r0, rk)]
        V[k] = [(-b // g) * x + (a // g) * y for x, y in zip(r0, rk)]
        for row in Vinv:
            c0, ck = row[0], row[k]
            row[0] = (a // g) * c0 + (b // g) * ck
            row[k] = -q * c0 + p * ck
        v[0], v[k] = g, 0
    if v[0] == -1:
        V[0] = [-x for x in V[0]]
        for row in Vinv:
            row[0] = -row[0]
    return Vinv, V


def rational_inverse(m):
    """Inverse of a square rational matrix, as rows of Fractions."""
    n = len(m)
    a = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(m)]
    for c in range(n):
        piv = next((r for r in range(c, n) if a[r][c] != 0), None)
        if piv is None:
            raise ZeroDivisionError("singular matrix")
        a[c], a[piv] = a[piv], a[c]
        pv = a[c][c]
        a[c] = [x / pv for x in a[c]]
        for r in range(n):
            if r != c and a[r][c]:
                f = a[r][c]
                a[r] = [x - f * y for x, y in zip(a[r], a[c])]
    return [row[n:] for row in a]


def left_inverse(m):
    """A rational left inverse of a full-column-rank matrix: (MᵀM)⁻¹Mᵀ."""
    mt = list(zip(*m))
    gram = [[sum(Fraction(x) * y for x, y in zip(r, c)) for c in mt] for r in mt]
    gi = rational_inverse(gram)
    return [[sum(gi[i][k] * mt[k][j] for k in range(len(mt))) for j in range(len(m))] for i in range(len(mt))]


def matmul(a, b):
    return [[sum(x * y for x, y in zip(row, col)) for col in zip(*b)] for row in a]


def is_integral(m):
    return all(Fraction(x).denominator == 1 for row in m for x in row)


def to_int(m):
    return [[int(Fraction(x)) for x in row] for row in m]


def rank(m):
    return Matrix(m).rank()


def smith_invariants(m):
    """Invariant factors of an integer matrix (nonzero diagonal of its Smith form)."""
    facts = invariant_factors(Matrix(m), domain=ZZ)
    return [abs(int(d)) for d in facts if d != 0]


def integer_kernel(m):
    """Primitive integer basis of the rational kernel of ``m``."""
    out = []
    for v in Matrix(m).nullspace():
        den = 1
        for x in v:
            den = den * Fraction(x).denominator // gcd(den, Fraction(x).denominator)
        ints = [int(Fraction(x) * den) for x in v]
        g = content(ints)
        out.append([x // g for x in ints])
    return out
