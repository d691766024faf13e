"""Burnside rings of finite abelian groups.

Marks, multiplication through the mark embedding, linearization to the
complex representation ring, lattices of linearization relations with
explicit elementary generators, and the A, J, A/J Mackey functors.
"""

from __future__ import annotations

from .abgroups import (
    Decomp, intermediates, join, intersect, subgroups, subgroups_of,
)
from .errors import InternalConsistencyError
from .linalg import FgAbGroup, IntMat, hnf_cols, kernel_cols, solve
from .mackey import MackeyFunctor
from .reps import RUElement, characters

# q-elementary subquotients generalize the Klein-four case: T/L of
# shape Cq x Cq for a prime q.  For 2-groups only q = 2 occurs.


class BurnsideElement:
    """Integer combination of transitive K-sets [K/H]."""

    __slots__ = ("K", "coeffs")

    def __init__(self, K, coeffs=None):
        self.K = K
        self.coeffs = {}
        if coeffs:
            for H, c in coeffs.items():
                if c:
                    self.coeffs[H] = self.coeffs.get(H, 0) + c
            self.coeffs = {H: c for H, c in self.coeffs.items() if c}

    @classmethod
    def basis(cls, K, H):
        return cls(K, {H: 1})

    @classmethod
    def from_vector(cls, K, vec):
        subs = subgroups_of(K)
        if len(vec) != len(subs):
            raise InternalConsistencyError("vector length mismatch")
        return cls(K, dict(zip(subs, vec)))

    def vector(self):
        return [self.coeffs.get(H, 0) for H in subgroups_of(self.K)]

    def add(self, other):
        out = dict(self.coeffs)
        for H, c in other.coeffs.items():
            out[H] = out.get(H, 0) + c
        return BurnsideElement(self.K, out)

    def scale(self, k):
        return BurnsideElement(self.K, {H: k * c for H, c in self.coeffs.items()})

    def __eq__(self, other):
        return (isinstance(other, BurnsideElement)
                and self.K == other.K and self.coeffs == other.coeffs)

    def __repr__(self):
        subs = subgroups_of(self.K)
        names = {S.key: "S%d" % i
                 for i, S in enumerate(subgroups(self.K.ambient))}
        bits = []
        for H in subs:
            c = self.coeffs.get(H, 0)
            if c:
                bits.append("%+d[K/%s]" % (c, names[H.key]))
        return "".join(bits) or "0"


def marks(x):
    """Mark vector over subgroups_of(K): the T-entry counts the fixed
    points of T, so m_T([K/H]) = |K/H| if T <= H else 0."""
    K = x.K
    out = []
    for T in subgroups_of(K):
        v = 0
        for H, c in x.coeffs.items():
            if T.le(H):
                v += c * (K.order // H.order)
        out.append(v)
    return out


def mark_table(K):
    """Rows T, columns H over subgroups_of(K)."""
    subs = subgroups_of(K)
    M = IntMat(len(subs), len(subs))
    for i, T in enumerate(subs):
        for j, H in enumerate(subs):
            if T.le(H):
                M.a[i][j] = K.order // H.order
    return M


def from_marks(K, mvec):
    """Invert the mark embedding; the preimage must be integral."""
    sol = solve(mark_table(K), mvec)
    if sol is None:
        raise InternalConsistencyError("mark vector has no integral preimage")
    return BurnsideElement.from_vector(K, sol)


def multiply(x, y):
    """Product in A(K), computed pointwise in marks and inverted."""
    if x.K != y.K:
        raise InternalConsistencyError("product across different groups")
    mx, my = marks(x), marks(y)
    return from_marks(x.K, [a * b for a, b in zip(mx, my)])


def multiply_closed(x, y):
    """Cross-check path: [K/H][K/H'] = [K:HH'] [K/(H intersect H')]."""
    K = x.K
    out = BurnsideElement(K)
    for H, c in x.coeffs.items():
        for H2, c2 in y.coeffs.items():
            idx = K.order // join(H, H2).order
            out = out.add(BurnsideElement(K, {intersect(H, H2): c * c2 * idx}))
    return out


def res_basis(T, K, H):
    """Res^K_T [K/H] = [K:TH] [T/(T cap H)]."""
    c = K.order // join(T, H).order
    return BurnsideElement(T, {intersect(T, H): c})


def linearize(x):
    """[K/H] -> sum of the characters trivial on H."""
    K = x.K
    out = {}
    for chi in characters(K):
        ker = chi.kernel()
        v = 0
        for H, c in x.coeffs.items():
            if H.le(ker):
                v += c
        if v:
            out[chi] = v
    return RUElement(K, out)


def linearization_matrix(K):
    """Rows: characters(K) in canonical order; columns: subgroups_of(K);
    entry 1 when the subgroup lies in the character kernel."""
    subs = subgroups_of(K)
    chis = characters(K)
    M = IntMat(len(chis), len(subs))
    for i, chi in enumerate(chis):
        ker = chi.kernel()
        for j, H in enumerate(subs):
            if H.le(ker):
                M.a[i][j] = 1
    return M


def elementary_subquotients(K, q):
    """Pairs (T, L) with T/L of shape Cq x Cq."""
    out = []
    for T in subgroups_of(K):
        if T.order % (q * q):
            continue
        for L in subgroups_of(T):
            if T.order != q * q * L.order:
                continue
            if all(L.contains(T.ambient.scale(q, x)) for x in T.elements):
                if Decomp(T, L).rank == 2:
                    out.append((T, L))
    return out


def brauer_element_V(V):
    """The generating relation of a Klein four group, computed through
    the mark-embedding product ([V/A]-1)([V/B]-1)([V/C]-1) - 1."""
    if V.order != 4 or any(V.ambient.scale(2, x) != V.ambient.zero()
                           for x in V.elements):
        raise InternalConsistencyError("brauer_element_V needs a C2xC2")
    one = BurnsideElement.basis(V, V)
    out = one.scale(-1)
    prod = one
    for A in subgroups_of(V):
        if A.order == 2:
            factor = BurnsideElement.basis(V, A).add(one.scale(-1))
            prod = multiply(prod, factor)
    return prod.add(out)


def brauer_generator(K, T, L, q):
    """Lift of the Cq x Cq relation on T/L: transfer of the inflation
    -[T/L] + sum of [T/M] over intermediates - q[T/T], pushed to K."""
    coeffs = {L: -1, T: -q}
    for M in intermediates(T, L):
        coeffs[M] = coeffs.get(M, 0) + 1
    return BurnsideElement(K, coeffs)


def brauer_generators(K, q=None):
    """Generators of the linearization kernel: one lifted relation per
    Cq x Cq subquotient, over all primes q dividing |K| (or one q)."""
    qs = [q] if q else _primes(K.order)
    out = []
    for qq in qs:
        for (T, L) in elementary_subquotients(K, qq):
            out.append(brauer_generator(K, T, L, qq))
    return out


def _primes(n):
    out = []
    q = 2
    while q * q <= n:
        if n % q == 0:
            out.append(q)
            while n % q == 0:
                n //= q
        q += 1
    if n > 1:
        out.append(n)
    return out


def j_lattice(K):
    """Canonical (Hermite) basis of J(K) = ker(linearization) as columns
    over the subgroup basis.  The elementary generators must span the
    same saturated lattice; if not, something deep is wrong."""
    subs = subgroups_of(K)
    kernel = kernel_cols(linearization_matrix(K))
    gens = brauer_generators(K)
    span = hnf_cols(IntMat.from_cols([g.vector() for g in gens], len(subs)))
    if span != kernel:
        raise InternalConsistencyError(
            "elementary relations do not span the linearization kernel "
            "at level of order %d" % K.order)
    return kernel


def in_j(x):
    """Membership via the mark criterion: all marks at cyclic subgroups
    vanish."""
    from .abgroups import is_cyclic_subgroup
    K = x.K
    mv = marks(x)
    return all(v == 0 for T, v in zip(subgroups_of(K), mv)
               if is_cyclic_subgroup(T))


def cyclic_quotient_subgroups(K):
    """Subgroups H with K/H cyclic; these index the free basis of
    A(K)/J(K).  Their count equals the number of cyclic subgroups."""
    return [H for H in subgroups_of(K) if Decomp(K, H).rank <= 1]


# ---------------------------------------------------------------------------
# the A, J, A/J Mackey functors

def _sub_names(G):
    return {S.key: "S%d" % i for i, S in enumerate(subgroups(G))}


def a_mackey(G):
    names = _sub_names(G)

    def level(K):
        labels = ["[%s/%s]" % (names[K.key], names[H.key])
                  for H in subgroups_of(K)]
        return FgAbGroup(len(labels), (), labels)

    def res(T, K):
        subsK = subgroups_of(K)
        subsT = subgroups_of(T)
        tidx = {S.key: i for i, S in enumerate(subsT)}
        M = IntMat(len(subsT), len(subsK))
        for j, H in enumerate(subsK):
            r = res_basis(T, K, H)
            for S, c in r.coeffs.items():
                M.a[tidx[S.key]][j] += c
        return M

    def tr(T, K):
        subsK = subgroups_of(K)
        subsT = subgroups_of(T)
        kidx = {S.key: i for i, S in enumerate(subsK)}
        M = IntMat(len(subsK), len(subsT))
        for j, H in enumerate(subsT):
            M.a[kidx[H.key]][j] = 1
        return M

    return MackeyFunctor.build(G, level, res, tr)


def _aj_projection(K):
    """Integer matrix A(K) -> Z^{cq(K)} expressing the class of each
    [K/H] in the basis {[K/H0] : K/H0 cyclic}; kernel is exactly J(K)."""
    subs = subgroups_of(K)
    cq = cyclic_quotient_subgroups(K)
    # linearization in the rational-irreducible basis
    P = IntMat(len(cq), len(subs))
    for i, H0 in enumerate(cq):
        for j, H in enumerate(subs):
            if H.le(H0):
                P.a[i][j] = 1
    # the square block on cyclic-quotient columns is unitriangular
    cq_pos = [subs.index(H0) for H0 in cq]
    Tsq = IntMat(len(cq), len(cq), [[P.a[i][j] for j in cq_pos]
                                    for i in range(len(cq))])
    inv_cols = []
    for j in range(len(cq)):
        e = [0] * len(cq)
        e[j] = 1
        col = solve(Tsq, e)
        if col is None:
            raise InternalConsistencyError("unitriangular block not invertible")
        inv_cols.append(col)
    Tinv = IntMat.from_cols(inv_cols, len(cq))
    return Tinv.mul(P), cq_pos


def a_mod_j_mackey(G, ring="Z"):
    names = _sub_names(G)
    proj = {}
    secpos = {}
    for S in subgroups(G):
        proj[S.key], secpos[S.key] = _aj_projection(S)

    def level(K):
        labels = ["[%s/%s]" % (names[K.key], names[H.key])
                  for H in cyclic_quotient_subgroups(K)]
        return FgAbGroup(len(labels), (), labels, ring=ring)

    amf = a_mackey(G)

    def section(K):
        nsub = len(subgroups_of(K))
        cols = []
        for p in secpos[K.key]:
            e = [0] * nsub
            e[p] = 1
            cols.append(e)
        return IntMat.from_cols(cols, nsub)

    def res(T, K):
        return proj[T.key].mul(amf.res(T, K)).mul(section(K))

    def tr(T, K):
        return proj[K.key].mul(amf.tr(T, K)).mul(section(T))

    return MackeyFunctor.build(G, level, res, tr)


def j_mackey(G):
    lattices = {S.key: j_lattice(S) for S in subgroups(G)}
    amf = a_mackey(G)

    def level(K):
        r = lattices[K.key].n
        return FgAbGroup(r, (), ["j%d" % i for i in range(r)])

    def connect(image_mat, target_lattice):
        cols = []
        for j in range(image_mat.n):
            col = solve(target_lattice, image_mat.col(j))
            if col is None:
                raise InternalConsistencyError(
                    "restriction or transfer leaves the relation lattice")
            cols.append(col)
        return IntMat.from_cols(cols, target_lattice.n)

    def res(T, K):
        return connect(amf.res(T, K).mul(lattices[K.key]), lattices[T.key])

    def tr(T, K):
        return connect(amf.tr(T, K).mul(lattices[T.key]), lattices[K.key])

    return MackeyFunctor.build(G, level, res, tr)
