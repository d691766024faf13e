"""Finite abelian groups, their subgroup lattices, coprime splittings,
and invariant-factor bases of subquotients.

A group is a tuple of cyclic orders; elements are int tuples reduced
componentwise.  Subgroups are kept concrete (element sets inside the
ambient group) with a canonical lattice matrix used for ordering and
serialization.
"""

from __future__ import annotations

import os
import re

from sympy import factorint

from .errors import InternalConsistencyError, ParseError, SizeBoundError
from .linalg import IntMat, hnf_cols, snf, solve

DEFAULT_SIZE_BOUND = 512

_NAME_RE = re.compile(r"^C(\d+)$")


def size_bound():
    raw = os.environ.get("KHOM_SIZE_BOUND", "")
    if not raw:
        return DEFAULT_SIZE_BOUND
    try:
        return int(raw)
    except ValueError:
        raise ParseError("KHOM_SIZE_BOUND must be an integer, got %r" % raw)


def check_size_bound(order):
    bound = size_bound()
    if order > bound:
        raise SizeBoundError(
            "group order %d exceeds the size bound %d" % (order, bound))


class FinAbGroup:
    """Finite abelian group C_{o1} x ... x C_{ok}; elements are int
    tuples with coordinate i taken modulo oi."""

    __slots__ = ("orders", "order")

    def __init__(self, orders):
        orders = tuple(int(o) for o in orders)
        if any(o < 2 for o in orders):
            raise InternalConsistencyError("cyclic factor of order < 2")
        self.orders = orders
        n = 1
        for o in orders:
            n *= o
        self.order = n

    @classmethod
    def from_string(cls, s):
        s = s.strip()
        if s == "e":
            return cls(())
        factors = []
        for part in s.split("x"):
            m = _NAME_RE.match(part.strip())
            if not m:
                raise ParseError(
                    "bad group %r: expected e or CnxCm... with n,m >= 2" % s)
            o = int(m.group(1))
            if o < 2:
                raise ParseError(
                    "bad group %r: cyclic factors must have order >= 2" % s)
            factors.append(o)
        return cls(factors)

    def name(self):
        if not self.orders:
            return "e"
        return "x".join("C%d" % o for o in self.orders)

    @property
    def rank(self):
        return len(self.orders)

    def zero(self):
        return (0,) * self.rank

    def reduce(self, x):
        return tuple(x[i] % self.orders[i] for i in range(self.rank))

    def add(self, x, y):
        return tuple((x[i] + y[i]) % self.orders[i] for i in range(self.rank))

    def neg(self, x):
        return tuple((-x[i]) % self.orders[i] for i in range(self.rank))

    def scale(self, k, x):
        return tuple((k * x[i]) % self.orders[i] for i in range(self.rank))

    def elements(self):
        out = [()]
        for o in self.orders:
            out = [e + (v,) for e in out for v in range(o)]
        return out

    def element_order(self, x):
        k = 1
        y = x
        while any(y):
            y = self.add(y, x)
            k += 1
        return k

    def __eq__(self, other):
        return isinstance(other, FinAbGroup) and self.orders == other.orders

    def __hash__(self):
        return hash(self.orders)

    def __repr__(self):
        return "FinAbGroup(%s)" % self.name()


def closure(G, gens):
    """Subgroup generated by the given elements, as a frozenset."""
    elems = {G.zero()}
    frontier = [G.zero()]
    gens = [G.reduce(g) for g in gens]
    while frontier:
        x = frontier.pop()
        for g in gens:
            y = G.add(x, g)
            if y not in elems:
                elems.add(y)
                frontier.append(y)
    return frozenset(elems)


class Subgroup:
    """Subgroup of an ambient FinAbGroup, stored as its element set
    plus the canonical Hermite basis of its preimage lattice in Z^n
    (used as a stable sort / serialization key)."""

    __slots__ = ("ambient", "elements", "lattice", "order", "key",
                 "_decomp", "_subgroups")

    def __init__(self, ambient, elements):
        self.ambient = ambient
        self.elements = frozenset(elements)
        self.order = len(self.elements)
        n = ambient.rank
        cols = [list(e) for e in sorted(self.elements)]
        for i, o in enumerate(ambient.orders):
            col = [0] * n
            col[i] = o
            cols.append(col)
        self.lattice = hnf_cols(IntMat.from_cols(cols, n))
        self.key = (self.order, tuple(tuple(r) for r in self.lattice.a))
        self._decomp = None
        self._subgroups = None

    def contains(self, x):
        return self.ambient.reduce(x) in self.elements

    def le(self, other):
        return self.elements <= other.elements

    def index_in(self, other):
        if not self.le(other):
            raise InternalConsistencyError("index of a non-subgroup")
        return other.order // self.order

    @property
    def decomp(self):
        """Invariant-factor basis of this subgroup itself."""
        if self._decomp is None:
            self._decomp = Decomp(self, trivial_subgroup(self.ambient))
        return self._decomp

    def sorted_elements(self):
        return sorted(self.elements)

    def __eq__(self, other):
        return (isinstance(other, Subgroup)
                and self.ambient == other.ambient
                and self.elements == other.elements)

    def __hash__(self):
        return hash((self.ambient.orders, self.elements))

    def __repr__(self):
        return "Subgroup(order=%d of %s)" % (self.order, self.ambient.name())


_subgroup_cache = {}


def subgroups(G):
    """All subgroups, sorted by (order, lattice key).  Cached per
    isomorphism-class-with-coordinates (the orders tuple)."""
    key = G.orders
    hit = _subgroup_cache.get(key)
    if hit is not None:
        return hit[0]
    cyclics = {}
    for g in G.elements():
        c = closure(G, [g])
        cyclics[c] = True
    seen = set(cyclics)
    frontier = list(cyclics)
    while frontier:
        s = frontier.pop()
        for c in cyclics:
            if not c <= s:
                j = closure_of_set(G, s | c)
                if j not in seen:
                    seen.add(j)
                    frontier.append(j)
    subs = sorted((Subgroup(G, e) for e in seen), key=lambda S: S.key)
    by_elements = {S.elements: S for S in subs}
    _subgroup_cache[key] = (subs, by_elements)
    return subs


def closure_of_set(G, elems):
    """Close a union of subgroups under addition."""
    elems = set(elems)
    frontier = list(elems)
    base = list(elems)
    while frontier:
        x = frontier.pop()
        for g in base:
            y = G.add(x, g)
            if y not in elems:
                elems.add(y)
                frontier.append(y)
    return frozenset(elems)


def subgroup_from_elements(G, elems):
    subgroups(G)
    by_elements = _subgroup_cache[G.orders][1]
    S = by_elements.get(frozenset(elems))
    if S is None:
        raise InternalConsistencyError("element set is not a subgroup")
    return S


def trivial_subgroup(G):
    return subgroup_from_elements(G, {G.zero()})


def full_subgroup(G):
    return subgroup_from_elements(G, G.elements())


def cyclic_subgroups(G):
    return [S for S in subgroups(G) if is_cyclic_subgroup(S)]


def is_cyclic_subgroup(S):
    return any(len(closure(S.ambient, [g])) == S.order for g in S.elements)


def subgroups_of(K):
    """Subgroups of the ambient group contained in K, in lattice order."""
    if K._subgroups is None:
        K._subgroups = [S for S in subgroups(K.ambient) if S.le(K)]
    return K._subgroups


def join(A, B):
    return subgroup_from_elements(A.ambient,
                                  closure_of_set(A.ambient,
                                                 A.elements | B.elements))


def intersect(A, B):
    return subgroup_from_elements(A.ambient, A.elements & B.elements)


def multiple_subgroup(K, m):
    """The subgroup {m*x : x in K}."""
    G = K.ambient
    return subgroup_from_elements(G, {G.scale(m, x) for x in K.elements})


def v4_subquotients(K):
    """Pairs (T, L) with L < T <= K, [T:L] = 4 and T/L of exponent 2,
    so T/L is a Klein four group."""
    out = []
    for T in subgroups_of(K):
        if T.order % 4:
            continue
        for L in subgroups_of(T):
            if T.order != 4 * L.order:
                continue
            if all(L.contains(T.ambient.scale(2, x)) for x in T.elements):
                out.append((T, L))
    return out


def intermediates(T, L):
    """The subgroups strictly between L and T."""
    return [M for M in subgroups_of(T)
            if L.le(M) and M.order != L.order and M.order != T.order]


class Decomp:
    """Invariant-factor basis of a subquotient K/L of the ambient group.

    basis[i] is an element of K whose class generates the i-th cyclic
    factor, of order orders[i]; coord(x) are the coefficients of the
    class of x in that basis.
    """

    __slots__ = ("K", "L", "orders", "basis", "_u", "_ddiag", "_v", "_kept")

    def __init__(self, K, L):
        if not L.le(K):
            raise InternalConsistencyError("Decomp needs L <= K")
        G = K.ambient
        n = G.rank
        big = K.lattice
        small = L.lattice
        # write small = big * C; C is integral because L <= K
        C = IntMat(n, n)
        for j in range(n):
            col = solve(big, small.col(j))
            if col is None:
                raise InternalConsistencyError("lattice containment failed")
            for i in range(n):
                C.a[i][j] = col[i]
        s = snf(C)
        newbasis = big.mul(s.Uinv)
        diag = s.diag
        kept = [i for i in range(n) if diag[i] > 1]
        self.K = K
        self.L = L
        self.orders = tuple(diag[i] for i in kept)
        self.basis = [G.reduce(tuple(newbasis.col(i))) for i in kept]
        # exact inverse of newbasis via its own SNF
        s2 = snf(newbasis)
        self._u = s2.U
        self._ddiag = s2.diag
        self._v = s2.V
        self._kept = kept

    def coord(self, x):
        """Coordinates of the class of x (an element of K)."""
        if not self.K.contains(x):
            raise InternalConsistencyError("element not in subgroup")
        t = self._u.times_vec(list(x))
        y = []
        for i, d in enumerate(self._ddiag):
            if t[i] % d:
                raise InternalConsistencyError("element not in lattice span")
            y.append(t[i] // d)
        full = self._v.times_vec(y)
        return tuple(full[i] % self.orders[k]
                     for k, i in enumerate(self._kept))

    def from_coord(self, c):
        G = self.K.ambient
        x = G.zero()
        for k, ck in enumerate(c):
            x = G.add(x, G.scale(ck, self.basis[k]))
        return x

    @property
    def rank(self):
        return len(self.orders)


def quotient_decomp(K, L):
    return Decomp(K, L)


# ---------------------------------------------------------------------------
# coprime splittings

def primes_of(n):
    return sorted(factorint(n).keys()) if n > 1 else []


class CoprimeSplit:
    """Splitting G = P x N along a set of primes, with transport of
    elements and subgroups in both directions."""

    __slots__ = ("G", "P", "N", "p_parts", "n_parts", "p_pos", "n_pos")

    def __init__(self, G, primes):
        primes = set(primes)
        p_orders = []
        n_orders = []
        self.p_parts = []
        self.n_parts = []
        self.p_pos = []
        self.n_pos = []
        for o in G.orders:
            u = 1
            for p, e in factorint(o).items():
                if p in primes:
                    u *= p ** e
            v = o // u
            self.p_parts.append(u)
            self.n_parts.append(v)
            if u > 1:
                self.p_pos.append(len(p_orders))
                p_orders.append(u)
            else:
                self.p_pos.append(None)
            if v > 1:
                self.n_pos.append(len(n_orders))
                n_orders.append(v)
            else:
                self.n_pos.append(None)
        self.G = G
        self.P = FinAbGroup(p_orders)
        self.N = FinAbGroup(n_orders)

    def to_pair(self, x):
        xp = tuple(x[i] % self.p_parts[i]
                   for i in range(self.G.rank) if self.p_parts[i] > 1)
        xn = tuple(x[i] % self.n_parts[i]
                   for i in range(self.G.rank) if self.n_parts[i] > 1)
        return xp, xn

    def from_pair(self, xp, xn):
        out = []
        for i in range(self.G.rank):
            u, v = self.p_parts[i], self.n_parts[i]
            a = xp[self.p_pos[i]] if u > 1 else 0
            b = xn[self.n_pos[i]] if v > 1 else 0
            if u == 1:
                out.append(b % v)
            elif v == 1:
                out.append(a % u)
            else:
                # CRT: y = a mod u, y = b mod v
                y = (a + u * ((b - a) * pow(u, -1, v) % v)) % (u * v)
                out.append(y)
        return tuple(out)

    def subgroup_to_p(self, S):
        return subgroup_from_elements(
            self.P, {self.to_pair(x)[0] for x in S.elements})

    def subgroup_to_n(self, S):
        return subgroup_from_elements(
            self.N, {self.to_pair(x)[1] for x in S.elements})

    def subgroup_from_parts(self, SP, SN):
        elems = {self.from_pair(a, b)
                 for a in SP.elements for b in SN.elements}
        return subgroup_from_elements(self.G, elems)


def sylow_decompose(G, p):
    return CoprimeSplit(G, {p})
