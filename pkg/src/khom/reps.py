"""Complex and real representation rings of finite abelian groups.

Characters are exact: a character is an exponent tuple against the
invariant-factor basis of its domain, and values live in Q/Z as
Fractions.  Real irreducibles are either one-dimensional real
characters or realified conjugate pairs of complex characters.
"""

from __future__ import annotations

import re
from fractions import Fraction
from math import gcd

from .abgroups import subgroup_from_elements, subgroups
from .errors import InternalConsistencyError, ParseError


class Character:
    """A character of a subgroup K, given by exponents against the
    invariant-factor basis K.decomp: the value on an element with
    coordinates c is sum(e_i * c_i / d_i) in Q/Z."""

    __slots__ = ("K", "exps", "_hash", "_kernel")

    def __init__(self, K, exps):
        self.K = K
        d = K.decomp.orders
        if len(exps) != len(d):
            raise InternalConsistencyError("character exponent length")
        self.exps = tuple(e % d[i] for i, e in enumerate(exps))
        self._hash = hash((K.key, self.exps))
        self._kernel = None

    def value(self, x):
        c = self.K.decomp.coord(x)
        d = self.K.decomp.orders
        v = Fraction(0)
        for i in range(len(d)):
            v += Fraction(self.exps[i] * c[i], d[i])
        return v - (v.numerator // v.denominator)

    def mul(self, other):
        if other.K != self.K:
            raise InternalConsistencyError("character product across groups")
        return Character(self.K, [a + b for a, b in zip(self.exps, other.exps)])

    def power(self, g):
        return Character(self.K, [g * e for e in self.exps])

    def conjugate(self):
        return Character(self.K, [-e for e in self.exps])

    def order(self):
        d = self.K.decomp.orders
        out = 1
        for i, e in enumerate(self.exps):
            o = d[i] // gcd(d[i], e) if e else 1
            out = out * o // gcd(out, o)
        return out

    def is_trivial(self):
        return all(e == 0 for e in self.exps)

    def is_real(self):
        return self.order() <= 2

    def kernel(self):
        if self._kernel is None:
            elems = {x for x in self.K.elements if self.value(x) == 0}
            self._kernel = subgroup_from_elements(self.K.ambient, elems)
        return self._kernel

    def restrict(self, T):
        if not T.le(self.K):
            raise InternalConsistencyError("restricting to a non-subgroup")
        d = T.decomp.orders
        exps = []
        for i, b in enumerate(T.decomp.basis):
            v = self.value(b) * d[i]
            if v.denominator != 1:
                raise InternalConsistencyError("restriction not integral")
            exps.append(v.numerator)
        return Character(T, exps)

    def __eq__(self, other):
        return (isinstance(other, Character) and self.K == other.K
                and self.exps == other.exps)

    def __hash__(self):
        return self._hash

    def __lt__(self, other):
        return self.exps < other.exps

    def __repr__(self):
        return "Character%r" % (self.exps,)


_char_cache = {}


def characters(K):
    """All characters of K in lexicographic exponent order."""
    ck = (K.ambient.orders, K.key)
    hit = _char_cache.get(ck)
    if hit is not None:
        return hit
    d = K.decomp.orders
    exps = [()]
    for o in d:
        exps = [e + (v,) for e in exps for v in range(o)]
    out = [Character(K, e) for e in exps]
    _char_cache[ck] = out
    return out


def extensions(K, T, chi):
    """Characters of K restricting to chi on T."""
    return [psi for psi in characters(K) if psi.restrict(T) == chi]


REAL = "R"
CPLX = "C"


class RealIrrep:
    """Irreducible real representation of an abelian group: either a
    real character (dimension 1) or the realification of a conjugate
    pair of complex characters (dimension 2)."""

    __slots__ = ("kind", "rep", "_hash")

    def __init__(self, kind, rep):
        if kind == CPLX:
            conj = rep.conjugate()
            if conj.exps < rep.exps:
                rep = conj
        self.kind = kind
        self.rep = rep
        self._hash = hash((kind, rep))

    @property
    def K(self):
        return self.rep.K

    def dim(self):
        return 1 if self.kind == REAL else 2

    def kernel(self):
        return self.rep.kernel()

    def chars(self):
        if self.kind == REAL:
            return [self.rep]
        return [self.rep, self.rep.conjugate()]

    def fixed_dim(self, H):
        if H.le(self.kernel()):
            return self.dim()
        return 0

    def __eq__(self, other):
        return (isinstance(other, RealIrrep) and self.kind == other.kind
                and self.rep == other.rep)

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return "RealIrrep(%s,%r)" % (self.kind, self.rep.exps)


_irrep_cache = {}


def real_irreps(K):
    """All real irreducibles: real characters first (lex order), then
    conjugate pairs ordered by canonical representative."""
    ck = (K.ambient.orders, K.key)
    hit = _irrep_cache.get(ck)
    if hit is not None:
        return hit
    reals = []
    pairs = []
    seen = set()
    for chi in characters(K):
        if chi.is_real():
            reals.append(RealIrrep(REAL, chi))
        else:
            irr = RealIrrep(CPLX, chi)
            if irr.rep not in seen:
                seen.add(irr.rep)
                pairs.append(irr)
    pairs.sort(key=lambda irr: irr.rep.exps)
    out = reals + pairs
    _irrep_cache[ck] = out
    return out


def real_characters(K):
    """The characters K -> {+-1}, trivial one first."""
    return [irr.rep for irr in real_irreps(K) if irr.kind == REAL]


def irrep_labels(K):
    """r0, r1, ... for real characters, c0, c1, ... for pairs."""
    labels = []
    r = c = 0
    for irr in real_irreps(K):
        if irr.kind == REAL:
            labels.append("r%d" % r)
            r += 1
        else:
            labels.append("c%d" % c)
            c += 1
    return labels


# ---------------------------------------------------------------------------
# elements of RU and RO

class RUElement:
    """Integer combination of complex characters of K."""

    __slots__ = ("K", "coeffs")

    def __init__(self, K, coeffs=None):
        self.K = K
        self.coeffs = {}
        if coeffs:
            for chi, c in coeffs.items():
                if c:
                    self.coeffs[chi] = self.coeffs.get(chi, 0) + c
            self.coeffs = {k: v for k, v in self.coeffs.items() if v}

    def add(self, other):
        out = dict(self.coeffs)
        for chi, c in other.coeffs.items():
            out[chi] = out.get(chi, 0) + c
        return RUElement(self.K, out)

    def scale(self, k):
        return RUElement(self.K, {chi: k * c for chi, c in self.coeffs.items()})

    def apply_power(self, g):
        return RUElement(self.K, _merge((chi.power(g), c)
                                        for chi, c in self.coeffs.items()))

    def conjugate(self):
        return RUElement(self.K, _merge((chi.conjugate(), c)
                                        for chi, c in self.coeffs.items()))

    def restrict(self, T):
        return RUElement(T, _merge((chi.restrict(T), c)
                                   for chi, c in self.coeffs.items()))

    def induce(self, K):
        """Transfer to a supergroup K: each character goes to the sum
        of its extensions."""
        out = []
        for chi, c in self.coeffs.items():
            for psi in extensions(K, self.K, chi):
                out.append((psi, c))
        return RUElement(K, _merge(out))

    def dim(self):
        return sum(self.coeffs.values())

    def is_zero(self):
        return not self.coeffs

    def sorted_items(self):
        return sorted(self.coeffs.items(), key=lambda kv: kv[0].exps)


def _merge(pairs):
    out = {}
    for k, c in pairs:
        out[k] = out.get(k, 0) + c
    return out


class ROElement:
    """Integer combination of real irreducibles of K."""

    __slots__ = ("K", "coeffs")

    def __init__(self, K, coeffs=None):
        self.K = K
        self.coeffs = {}
        if coeffs:
            for irr, c in coeffs.items():
                if c:
                    self.coeffs[irr] = self.coeffs.get(irr, 0) + c
            self.coeffs = {k: v for k, v in self.coeffs.items() if v}

    def add(self, other):
        out = dict(self.coeffs)
        for irr, c in other.coeffs.items():
            out[irr] = out.get(irr, 0) + c
        return ROElement(self.K, out)

    def scale(self, k):
        return ROElement(self.K, {irr: k * c for irr, c in self.coeffs.items()})

    def complexify(self):
        out = []
        for irr, c in self.coeffs.items():
            for chi in irr.chars():
                out.append((chi, c))
        return RUElement(self.K, _merge(out))

    def restrict(self, T):
        out = []
        for irr, c in self.coeffs.items():
            if irr.kind == REAL:
                out.append((RealIrrep(REAL, irr.rep.restrict(T)), c))
            else:
                r = irr.rep.restrict(T)
                if r.is_real():
                    out.append((RealIrrep(REAL, r), 2 * c))
                else:
                    out.append((RealIrrep(CPLX, r), c))
        return ROElement(T, _merge(out))

    def induce(self, K):
        return ro_from_ru(K, self.complexify().induce(K))

    def fixed_dim(self, H):
        return sum(c * irr.fixed_dim(H) for irr, c in self.coeffs.items())

    def dim(self):
        return sum(c * irr.dim() for irr, c in self.coeffs.items())

    def is_zero(self):
        return not self.coeffs

    def sorted_items(self):
        return sorted(self.coeffs.items(),
                      key=lambda kv: (kv[0].kind != REAL, kv[0].rep.exps))


def ro_from_ru(K, u):
    """Real element with the given complexification; the input must be
    conjugation invariant."""
    left = dict(u.coeffs)
    out = {}
    for chi in sorted(left, key=lambda c: c.exps):
        c = left.get(chi, 0)
        if not c:
            continue
        if chi.is_real():
            out[RealIrrep(REAL, chi)] = c
            left[chi] = 0
        else:
            conj = chi.conjugate()
            if left.get(conj, 0) != c:
                raise InternalConsistencyError(
                    "not conjugation invariant, no real structure")
            out[RealIrrep(CPLX, chi)] = c
            left[chi] = 0
            left[conj] = 0
    return ROElement(K, out)


def regular_rep(K):
    """The real regular representation as an ROElement."""
    return ro_from_ru(K, RUElement(K, {chi: 1 for chi in characters(K)}))


# ---------------------------------------------------------------------------
# Adams orbits

class AdamsOrbit:
    """Orbit of the degree-g power operation on the complex part of the
    representation basis, indexed by the common kernel of its members.

    At p = 2 the members are conjugate pairs (CPLX irreps); at odd p
    they are the nontrivial characters themselves.  perm[i] is the
    index of the image of member i.
    """

    __slots__ = ("kernel", "members", "perm", "p")

    def __init__(self, kernel, members, perm, p):
        self.kernel = kernel
        self.members = members
        self.perm = perm
        self.p = p

    @property
    def size(self):
        return len(self.members)


def adams_orbits(K, p, g):
    """Orbits over subgroups-with-cyclic-quotient, largest kernels
    first is not imposed; order follows the subgroup lattice order of
    the kernels."""
    orbits = []
    if p == 2:
        groups = {}
        for irr in real_irreps(K):
            if irr.kind != CPLX:
                continue
            groups.setdefault(irr.kernel().key, []).append(irr)
        for key in sorted(groups):
            members = sorted(groups[key], key=lambda i: i.rep.exps)
            kernel = members[0].kernel()
            index = {m.rep: i for i, m in enumerate(members)}
            perm = []
            for m in members:
                img = RealIrrep(CPLX, m.rep.power(g))
                if img.rep not in index:
                    raise InternalConsistencyError("orbit not closed")
                perm.append(index[img.rep])
            orbits.append(AdamsOrbit(kernel, members, perm, p))
    else:
        groups = {}
        for chi in characters(K):
            if chi.is_trivial():
                continue
            groups.setdefault(chi.kernel().key, []).append(chi)
        for key in sorted(groups):
            members = sorted(groups[key], key=lambda c: c.exps)
            kernel = members[0].kernel()
            index = {c: i for i, c in enumerate(members)}
            perm = []
            for c in members:
                img = c.power(g)
                if img not in index:
                    raise InternalConsistencyError("orbit not closed")
                perm.append(index[img])
            orbits.append(AdamsOrbit(kernel, members, perm, p))
    for orb in orbits:
        seen = set(orb.perm)
        if len(seen) != len(orb.perm):
            raise InternalConsistencyError("orbit action not a permutation")
    return orbits


def rational_irrep_count(K):
    """Number of irreducible rational representations = number of
    distinct character kernels."""
    return len({chi.kernel().key for chi in characters(K)})


# ---------------------------------------------------------------------------
# virtual representation strings

_TERM_RE = re.compile(r"^(?:(\d+)\*)?([rc])(\d+)$")


def parse_virtual_rep(G, s):
    """Parse combinations like '2*r0 + c1 - 3*r1' against the labeled
    real irreducibles of the full group."""
    from .abgroups import full_subgroup
    K = full_subgroup(G)
    irreps = real_irreps(K)
    labels = irrep_labels(K)
    by_label = dict(zip(labels, irreps))
    text = s.replace(" ", "")
    if not text:
        raise ParseError("empty representation string")
    toks = re.findall(r"[+-]|[^+-]+", text)
    out = {}
    pos = 0
    first = True
    while pos < len(toks):
        sign = 1
        if toks[pos] in "+-":
            if toks[pos] == "+" and first:
                raise ParseError("bad leading sign in %r" % s)
            sign = -1 if toks[pos] == "-" else 1
            pos += 1
        elif not first:
            raise ParseError("missing operator in %r" % s)
        if pos >= len(toks) or toks[pos] in "+-":
            raise ParseError("dangling sign in %r" % s)
        m = _TERM_RE.match(toks[pos])
        if not m:
            raise ParseError("bad representation term %r in %r"
                             % (toks[pos], s))
        coeff = int(m.group(1)) if m.group(1) else 1
        label = m.group(2) + m.group(3)
        irr = by_label.get(label)
        if irr is None:
            raise ParseError("unknown irreducible %r for group %s (have %s)"
                             % (label, G.name(), ", ".join(labels)))
        out[irr] = out.get(irr, 0) + sign * coeff
        pos += 1
        first = False
    return ROElement(K, out)
