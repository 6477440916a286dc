"""Generalized Cartan matrices, Weyl groups, real roots and Demazure lattices.

Weyl group elements are identified by their integer action on the
lattice; the action of a Kac-Moody Weyl group on any lattice containing
the root lattice is faithful, so matrix equality is group equality.
"""

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Optional

import numpy as np

from . import intlinalg


class RootSystemError(ValueError):
    pass


class InvalidGCM(RootSystemError):
    pass


class Decomposable(RootSystemError):
    pass


class NotAffine(RootSystemError):
    pass


class InvalidLattice(RootSystemError):
    pass


class NotIntegralInverse(InvalidLattice):
    pass


class PairingNotIntegral(InvalidLattice):
    pass


class DimensionMismatch(RootSystemError):
    pass


class GCM:
    """A generalized Cartan matrix; ``a[i][j] = <alpha_j, alpha_i^vee>``."""

    def __init__(self, matrix, name=None):
        a = [[int(x) for x in row] for row in matrix]
        l = len(a)
        if l == 0 or any(len(row) != l for row in a):
            raise InvalidGCM("matrix must be square and nonempty")
        for i in range(l):
            if a[i][i] != 2:
                raise InvalidGCM(f"a[{i}][{i}] = {a[i][i]}, expected 2")
            for j in range(l):
                if i != j and a[i][j] > 0:
                    raise InvalidGCM(f"a[{i}][{j}] = {a[i][j]} is positive")
                if (a[i][j] == 0) != (a[j][i] == 0):
                    raise InvalidGCM(f"a[{i}][{j}] and a[{j}][{i}] must vanish together")
        self.l = l
        self.a = tuple(tuple(row) for row in a)
        self.name = name

    def __eq__(self, other):
        return isinstance(other, GCM) and other.a == self.a

    def __hash__(self):
        return hash(self.a)

    def __repr__(self):
        return f"GCM({[list(r) for r in self.a]})"

    @property
    def array(self):
        return np.array(self.a, dtype=np.int64)

    def blocks(self):
        """Index sets of the connected components of the Dynkin graph."""
        seen, out = set(), []
        for start in range(self.l):
            if start in seen:
                continue
            comp, stack = [], [start]
            seen.add(start)
            while stack:
                i = stack.pop()
                comp.append(i)
                for j in range(self.l):
                    if j not in seen and self.a[i][j] != 0:
                        seen.add(j)
                        stack.append(j)
            out.append(sorted(comp))
        return out

    def submatrix(self, idx):
        return GCM([[self.a[i][j] for j in idx] for i in idx])

    def is_indecomposable(self):
        return len(self.blocks()) == 1

    @classmethod
    def from_json(cls, data):
        if isinstance(data, str):
            data = json.loads(data)
        return cls(data["matrix"], data.get("name"))

    def to_json(self):
        return {"matrix": [list(r) for r in self.a], **({"name": self.name} if self.name else {})}


@dataclass(frozen=True)
class CartanType:
    tag: str
    labels: Optional[tuple] = None

    @property
    def delta(self):
        return self.labels


def _principal_minors(g):
    for k in range(1, g.l + 1):
        for idx in combinations(range(g.l), k):
            yield idx, intlinalg.det([[g.a[i][j] for j in idx] for i in idx])


def classify_gcm(g):
    """Finite / affine / indefinite type of an indecomposable GCM.

    Finite iff every principal minor is positive; affine iff the
    determinant vanishes and every proper principal minor is positive.
    """
    if not isinstance(g, GCM):
        g = GCM(g)
    if not g.is_indecomposable():
        raise Decomposable(f"GCM splits into blocks {g.blocks()}")
    proper_positive = True
    full = None
    for idx, m in _principal_minors(g):
        if len(idx) == g.l:
            full = m
        elif m <= 0:
            proper_positive = False
    if proper_positive and full > 0:
        return CartanType("Fin")
    if proper_positive and full == 0:
        return CartanType("Aff", tuple(_kernel_labels(g)))
    return CartanType("Ind")


def _kernel_labels(g):
    (vec,) = intlinalg.integer_kernel(g.a)
    if sum(vec) < 0:
        vec = [-x for x in vec]
    return vec


def null_root(g):
    """Labels ``a_i`` with ``sum_j a_ij a_j = 0``; delta = sum a_i alpha_i."""
    ct = classify_gcm(g)
    if ct.tag != "Aff":
        raise NotAffine(f"GCM is of type {ct.tag}")
    return list(ct.labels)


def coxeter_order(g, i, j):
    """Order of s_i s_j (``math.inf`` when unbounded)."""
    if i == j:
        raise ValueError("i and j must differ")
    a = g.a if isinstance(g, GCM) else g
    p = a[i][j] * a[j][i]
    return {0: 2, 1: 3, 2: 4, 3: 6}.get(p, math.inf)


def _as_fraction_matrix(rows):
    return [[Fraction(x) for x in row] for row in rows]


class Lattice:
    """A free Z-module with embedded simple roots and integral coroots.

    ``S`` (n x l): column j holds the coordinates of alpha_j in the chosen
    basis.  ``C`` (l x n): row i is the functional <., alpha_i^vee>.
    ``B`` (l x n, optional): columns are the basis vectors in root
    coordinates, available when the lattice lies in the span of the roots.
    """

    def __init__(self, gcm, S, C, B=None, name=None):
        self.gcm = gcm if isinstance(gcm, GCM) else GCM(gcm)
        if not intlinalg.is_integral(S):
            raise NotIntegralInverse("simple root coordinates are not integral")
        if not intlinalg.is_integral(C):
            raise PairingNotIntegral("coroot pairing is not integral on the lattice")
        self.S = np.array(intlinalg.to_int(S), dtype=np.int64).reshape(-1, self.gcm.l)
        self.C = np.array(intlinalg.to_int(C), dtype=np.int64).reshape(self.gcm.l, -1)
        self.n, self.l = self.S.shape
        if self.C.shape != (self.l, self.n):
            raise InvalidLattice(f"coroot matrix has shape {self.C.shape}, expected {(self.l, self.n)}")
        if (self.C @ self.S != self.gcm.array).any():
            raise InvalidLattice("coroot pairing with simple roots does not reproduce the GCM")
        if intlinalg.rank(self.S.tolist()) != self.l:
            raise InvalidLattice("simple roots are linearly dependent")
        self.B = None if B is None else _as_fraction_matrix(B)
        if self.B is None and self.n == self.l:
            self.B = intlinalg.rational_inverse(self.S.tolist())
        self.name = name
        self._weyl = None

    def __repr__(self):
        label = f" {self.name}" if self.name else ""
        return f"<Lattice{label} rank {self.n} over {self.gcm!r}>"

    @classmethod
    def root_lattice(cls, gcm, name=None):
        g = gcm if isinstance(gcm, GCM) else GCM(gcm)
        eye = np.eye(g.l, dtype=np.int64)
        return cls(g, eye, g.array, B=eye.tolist(), name=name or "root lattice")

    @classmethod
    def from_B(cls, gcm, B, name=None):
        """Lattice spanned by the columns of ``B`` (root coordinates)."""
        g = gcm if isinstance(gcm, GCM) else GCM(gcm)
        Bf = _as_fraction_matrix(B)
        if len(Bf) != g.l or any(len(r) != g.l for r in Bf):
            raise DimensionMismatch("B must be l x l")
        try:
            S = intlinalg.rational_inverse(Bf)
        except ZeroDivisionError as exc:
            raise InvalidLattice("B is singular") from exc
        if not intlinalg.is_integral(S):
            raise NotIntegralInverse(f"B^-1 = {[[str(x) for x in r] for r in S]} is not integral")
        C = intlinalg.matmul([[Fraction(x) for x in r] for r in g.a], Bf)
        if not intlinalg.is_integral(C):
            bad = [(i, k) for i, r in enumerate(C) for k, x in enumerate(r) if x.denominator != 1]
            raise PairingNotIntegral(f"<lambda_k, alpha_i^vee> not integral at (i, k) = {bad}")
        return cls(g, S, C, B=Bf, name=name)

    @classmethod
    def from_json(cls, data, gcm=None):
        if isinstance(data, str):
            data = json.loads(data)
        if "gcm" in data:
            g = GCM(data["gcm"]["matrix"] if isinstance(data["gcm"], dict) else data["gcm"])
            if gcm is not None and GCM(gcm.a if isinstance(gcm, GCM) else gcm) != g:
                raise InvalidLattice("lattice file GCM disagrees with the supplied GCM")
        else:
            g = gcm
        name = data.get("name")
        if "B" in data:
            if g is None:
                raise InvalidLattice("a GCM is required for a lattice given by B")
            return cls.from_B(g, [[Fraction(x) for x in row] for row in data["B"]], name=name)
        if "simple_roots" in data and "coroots" in data:
            S = np.array(data["simple_roots"], dtype=object).T.tolist()
            C = data["coroots"]
            if g is None:
                cs = intlinalg.matmul(C, S)
                g = GCM(cs)
            return cls(g, S, C, name=name)
        raise InvalidLattice("lattice needs either 'B' or 'simple_roots' and 'coroots'")

    def to_json(self):
        out = {"gcm": [list(r) for r in self.gcm.a]}
        if self.name:
            out["name"] = self.name
        out["simple_roots"] = self.S.T.tolist()
        out["coroots"] = self.C.tolist()
        return out

    # -- geometry ---------------------------------------------------------
    def root_to_lattice(self, coords):
        return tuple(int(x) for x in self.S @ np.asarray(coords, dtype=np.int64))

    def pairing(self, vec):
        """Values <vec, alpha_i^vee> for every simple coroot."""
        return tuple(int(x) for x in self.C @ np.asarray(vec, dtype=np.int64))

    @property
    def weyl(self):
        if self._weyl is None:
            self._weyl = WeylGroup(self)
        return self._weyl

    def is_real_root(self, coords):
        """Witness ``(word, i)`` with root = s_word(alpha_i), or None."""
        c = np.asarray(coords, dtype=np.int64)
        if not c.any():
            return None
        negative = bool((c <= 0).all())
        if negative:
            c = -c
        if (c < 0).any():
            return None
        A = self.gcm.array
        word = []
        while True:
            if c.sum() == 1:
                # root = s_{k1} s_{k2} ... (alpha_i) for the reflections applied in order
                i = int(np.argmax(c))
                return tuple(word), i, negative
            pair = A @ c
            k = next((k for k in range(self.l) if pair[k] > 0), None)
            if k is None:
                return None
            c = c.copy()
            c[k] -= pair[k]
            if (c < 0).any():
                return None
            word.append(k)


@dataclass
class FDLReport:
    fdl1: list
    fdl2: list
    failures: list = field(default_factory=list)

    @property
    def ok(self):
        return all(self.fdl1) and all(ok for _, _, ok in self.fdl2)

    def to_json(self):
        return {
            "fdl1": ["pass" if ok else "fail" for ok in self.fdl1],
            "fdl2": "pass" if all(ok for _, _, ok in self.fdl2) else "fail",
            "holds": self.ok,
            "failures": self.failures,
        }


def check_fdl(lat):
    """Check both formal Demazure lattice axioms.

    FDL1 is tested through unimodularity of each simple root's
    coordinates; FDL2 re-verifies integrality of every pairing.
    """
    fdl1, failures = [], []
    for j in range(lat.l):
        col = lat.S[:, j].tolist()
        ok = intlinalg.is_unimodular(col)
        fdl1.append(ok)
        if not ok:
            failures.append(
                f"FDL1: alpha_{j} has coordinates {col} with content {intlinalg.content(col)}, "
                "so it cannot be extended to a basis"
            )
    fdl2 = []
    for i in range(lat.l):
        for k in range(lat.n):
            v = lat.C[i, k]
            ok = Fraction(int(v)) == Fraction(v)
            fdl2.append((i, k, ok))
            if not ok:
                failures.append(f"FDL2: <lambda_{k}, alpha_{i}^vee> = {v} not integral")
    return FDLReport(fdl1, fdl2, failures)


def lattice_quotient(lat):
    """Invariants of Lambda / Lambda_r: (cyclic orders > 1, free rank)."""
    facts = intlinalg.smith_invariants(lat.S.tolist())
    return [d for d in facts if d != 1], lat.n - len(facts)


def lattice_compare(lat1, lat2):
    """Containment of two lattices given over the same root basis."""
    if lat1.l != lat2.l or lat1.B is None or lat2.B is None or lat1.n != lat1.l or lat2.n != lat2.l:
        raise DimensionMismatch("lattices must both be full-rank in the root span of one GCM")
    inv1 = intlinalg.rational_inverse(lat1.B)
    inv2 = intlinalg.rational_inverse(lat2.B)
    a_in_b = intlinalg.is_integral(intlinalg.matmul(inv2, lat1.B))
    b_in_a = intlinalg.is_integral(intlinalg.matmul(inv1, lat2.B))
    q1, _ = lattice_quotient(lat1)
    q2, _ = lattice_quotient(lat2)
    return {
        "contains": a_in_b,
        "a_in_b": a_in_b,
        "b_in_a": b_in_a,
        "equal": a_in_b and b_in_a,
        "quotient_of_root_lattice": {"a": q1, "b": q2},
    }


class WeylElement:
    """An element of W with its lattice matrix and lexicographically least reduced word."""

    __slots__ = ("group", "word", "L", "Linv", "R", "Rinv", "key", "_hash")

    def __init__(self, group, word, L, Linv, R, Rinv):
        self.group = group
        self.word = tuple(word)
        self.L, self.Linv, self.R, self.Rinv = L, Linv, R, Rinv
        self.key = L.tobytes()
        self._hash = hash(self.key)

    @property
    def length(self):
        return len(self.word)

    def __eq__(self, other):
        return isinstance(other, WeylElement) and other.key == self.key

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return "e" if not self.word else "s" + "s".join(str(i) for i in self.word)

    def __mul__(self, other):
        return self.group.element(self.word + other.word)

    def inverse(self):
        return self.group.element(tuple(reversed(self.word)))

    def act(self, vec):
        return tuple(int(x) for x in self.L @ np.asarray(vec, dtype=np.int64))

    def act_root(self, coords):
        return tuple(int(x) for x in self.R @ np.asarray(coords, dtype=np.int64))

    def is_left_descent(self, i):
        return bool((self.Rinv[:, i] < 0).any())

    def is_right_descent(self, i):
        return bool((self.R[:, i] < 0).any())

    def is_identity(self):
        return not self.word


class WeylGroup:
    def __init__(self, lattice):
        self.lattice = lattice
        A = lattice.gcm.array
        l, n = lattice.l, lattice.n
        self.l = l
        self.Rs = [np.eye(l, dtype=np.int64) - np.outer(np.eye(l, dtype=np.int64)[i], A[i]) for i in range(l)]
        self.Ls = [np.eye(n, dtype=np.int64) - np.outer(lattice.S[:, i], lattice.C[i]) for i in range(l)]
        self._by_word = {}
        self._by_key = {}
        self.identity = self.element(())

    def _product(self, mats, word, size):
        m = np.eye(size, dtype=np.int64)
        for i in word:
            m = m @ mats[i]
        return m

    def element(self, word):
        word = tuple(int(i) for i in word)
        cached = self._by_word.get(word)
        if cached is not None:
            return cached
        for i in word:
            if not 0 <= i < self.l:
                raise IndexError(f"generator index {i} out of range")
        rinv = self._product(self.Rs, reversed(word), self.l)
        reduced = []
        cur = rinv.copy()
        eye = np.eye(self.l, dtype=np.int64)
        while not (cur == eye).all():
            i = next(i for i in range(self.l) if (cur[:, i] < 0).any())
            reduced.append(i)
            cur = cur @ self.Rs[i]
        reduced = tuple(reduced)
        elt = self._by_word.get(reduced)
        if elt is None:
            L = self._product(self.Ls, reduced, self.lattice.n)
            Linv = self._product(self.Ls, reversed(reduced), self.lattice.n)
            R = self._product(self.Rs, reduced, self.l)
            elt = self._by_key.setdefault(L.tobytes(), WeylElement(self, reduced, L, Linv, R, rinv))
            self._by_word[reduced] = elt
        self._by_word[word] = elt
        return elt

    def simple(self, i):
        return self.element((i,))

    def elements_up_to(self, length):
        """All elements of length <= ``length``, by breadth-first search."""
        layer = [self.identity]
        seen = {self.identity}
        out = [self.identity]
        for _ in range(length):
            nxt = []
            for w in layer:
                for i in range(self.l):
                    if not w.is_right_descent(i):
                        v = self.element(w.word + (i,))
                        if v not in seen:
                            seen.add(v)
                            nxt.append(v)
            out.extend(nxt)
            layer = nxt
        return out


def weyl_reduce(lat, word):
    """The Weyl element of a word, carrying its reduced word and length."""
    return lat.weyl.element(word)


@dataclass(frozen=True)
class RealRoot:
    coords: tuple  # root-lattice coordinates
    vec: tuple  # lattice coordinates
    coroot: tuple  # integer functional row of alpha^vee
    witness: tuple  # (word, i) with root = s_word(alpha_i)

    @property
    def positive(self):
        return all(c >= 0 for c in self.coords)


def make_real_root(lat, coords):
    coords = tuple(int(c) for c in coords)
    found = lat.is_real_root(coords)
    if found is None:
        raise RootSystemError(f"{coords} is not a real root")
    word, i, negative = found
    w = lat.weyl.element(word)
    if negative:
        w = w * lat.weyl.simple(i)
    vec = lat.root_to_lattice(coords)
    coroot = tuple(int(x) for x in lat.C[i] @ w.Linv)
    return RealRoot(coords, vec, coroot, (w.word, i))


def real_roots_up_to(lat, max_length):
    """Real roots w(alpha_i) for words of length <= ``max_length``."""
    roots = {}
    for w in lat.weyl.elements_up_to(max_length):
        for i in range(lat.l):
            coords = tuple(int(x) for x in w.R[:, i])
            vec = lat.root_to_lattice(coords)
            coroot = tuple(int(x) for x in lat.C[i] @ w.Linv)
            prev = roots.get(vec)
            if prev is None:
                roots[vec] = RealRoot(coords, vec, coroot, (w.word, i))
            elif prev.coroot != coroot:
                raise AssertionError(f"coroot of {coords} depends on the witness")
    return set(roots.values())


def reflection(lat, root):
    """The reflection s_alpha as a Weyl element."""
    word, i = root.witness
    return lat.weyl.element(word + (i,) + tuple(reversed(word)))
