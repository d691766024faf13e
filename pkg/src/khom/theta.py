"""Degree-0 and degree-(8d+1) assembly over an abelian 2-group.

Both degrees share one shape: a Burnside part and a coefficient part,
glued by identifying a lattice of Burnside relations with explicit
torsion classes on the coefficient side.  In degree 0 the lattice is
the linearization kernel J(K) and the classes are eta-lines mod 2; in
degree 8d+1 the lattice is the kernel of the mod-2 character-sum map
and the classes live in the degree-(8d+2) cokernel.  The glue map is
pinned down by its values on small generators (Klein subquotients,
saturation pairs); evaluating it anywhere else goes through an echelon
basis that carries the values along, with an explicit check that the
answer does not depend on the chosen expression.  The level-wise
quotients assemble into Mackey functors, and every restriction and
transfer is verified to preserve the relation lattice, which is
exactly naturality of the glue map at that covering pair.
"""

from __future__ import annotations

from .abgroups import (check_size_bound, intermediates, join,
                       multiple_subgroup, subgroups, subgroups_of,
                       v4_subquotients)
from .burnside import a_mackey, brauer_generator, cyclic_quotient_subgroups, \
    j_lattice
from .errors import InternalConsistencyError, ParseError
from .kcoeff import (CX, RE, generator_choice, kercoker_closed,
                     kercoker_functors, kercoker_oracle, ko_pi,
                     restriction_items, transfer_items)
from .linalg import (FgAbGroup, IntMat, KernelPresentation, Presentation,
                     direct_sum_groups, hnf_rows, induced_map, snf)
from .mackey import MackeyFunctor
from .reps import REAL, RealIrrep, ROElement, adams_orbits, real_characters


def _require_two_group(order, what):
    o = order
    while o % 2 == 0:
        o //= 2
    if o != 1:
        raise ParseError("%s needs a 2-group" % what)


def _orbit_labels(K):
    names = {S.key: "S%d" % i for i, S in enumerate(subgroups(K.ambient))}
    return ["[%s/%s]" % (names[K.key], names[H.key])
            for H in subgroups_of(K)]


def _log2(x):
    v = x.bit_length() - 1
    if x != 1 << v:
        raise InternalConsistencyError("index is not a power of two")
    return v


# ---------------------------------------------------------------------------
# evaluating a map defined on spanning vectors of a lattice

class ValuedSpan:
    """Row-echelon basis of the lattice spanned by given vectors, each
    row carrying a value vector.  Row operations keep "value = value of
    the combination", so expressing any lattice element against the
    echelon accumulates its value.  Rows that reduce to zero on the
    lattice side must carry even values: that is exactly independence
    of the expression mod 2, and it is checked up front."""

    __slots__ = ("nleft", "width", "pivots")

    def __init__(self, vectors, values, nleft, nval, what):
        self.nleft = nleft
        self.width = nleft + nval
        rows = [list(v) + list(w) for v, w in zip(vectors, values)]
        ech = hnf_rows(IntMat(len(rows), self.width, rows)) if rows \
            else IntMat(0, self.width)
        self.pivots = []
        for row in ech.a:
            lead = next(c for c, x in enumerate(row) if x)
            if lead < nleft:
                self.pivots.append((lead, row))
            elif any(x % 2 for x in row[nleft:]):
                raise InternalConsistencyError(
                    "%s: a vanishing combination carries an odd value"
                    % what)

    def value(self, vec):
        """Mod-2 value of a lattice element; raises if vec is outside
        the lattice."""
        cur = list(vec) + [0] * (self.width - self.nleft)
        for c, row in self.pivots:
            q = cur[c] // row[c]
            if q:
                for j in range(c, self.width):
                    cur[j] -= q * row[j]
        if any(cur[:self.nleft]):
            raise InternalConsistencyError(
                "vector is outside the spanned lattice")
        return [x % 2 for x in cur[self.nleft:]]


# ---------------------------------------------------------------------------
# degree 0: eta-line values on the linearization kernel

def eta_line_vector(K, L):
    """Indicator vector, over the real characters of K, of being
    trivial on L: the eta multiple attached to a Klein subquotient
    (T, L)."""
    return [1 if L.le(tau.kernel()) else 0 for tau in real_characters(K)]


def theta_zero(K, T, L):
    """Eta multiplier (an ROElement, coefficients mod 2) attached to
    the Klein-subquotient relation at (T, L).  For K elementary of
    rank 2 and L = e this is the full regular representation."""
    if (T, L) not in v4_subquotients(K):
        raise ParseError("the pair is not a Klein subquotient of the level")
    return ROElement(K, {RealIrrep(REAL, tau): 1
                         for tau in real_characters(K)
                         if L.le(tau.kernel())})


class ThetaZero:
    """Eta values on the full linearization kernel at one level,
    spanned by the Klein-subquotient relations."""

    __slots__ = ("K", "pairs", "span")

    def __init__(self, K):
        self.K = K
        self.pairs = v4_subquotients(K)
        vectors = [brauer_generator(K, T, L, 2).vector()
                   for (T, L) in self.pairs]
        values = [eta_line_vector(K, L) for (_, L) in self.pairs]
        self.span = ValuedSpan(vectors, values, len(subgroups_of(K)),
                               len(real_characters(K)),
                               "degree-0 values at level of order %d"
                               % K.order)

    def value(self, jvec):
        """Mod-2 eta vector of a linearization-kernel element."""
        return self.span.value(jvec)


# ---------------------------------------------------------------------------
# degree 8d+1: the kernel of the mod-2 character-sum map

class IGenerator:
    """A combination of orbits killed by the mod-2 character-sum map
    [K/H] -> sum of the real characters trivial on H.  Two shapes
    span the kernel: a subgroup with its saturation under 2K (kind
    "D"), and the four proper levels of a Klein subquotient above 2K
    (kind "B")."""

    __slots__ = ("kind", "pair", "vector")

    def __init__(self, kind, pair, vector):
        self.kind = kind
        self.pair = pair
        self.vector = vector

    def __repr__(self):
        return "IGenerator(%s, orders %d, %d)" % (
            self.kind, self.pair[0].order, self.pair[1].order)


def _char_sum_columns(K):
    subs = subgroups_of(K)
    return IntMat.from_cols([eta_line_vector(K, H) for H in subs],
                            len(real_characters(K)))


_I_GEN_CACHE = {}


def i_generators(K):
    """The D and B generators at level K, with the span against an
    independent mod-2 kernel computation checked."""
    cache_key = (K.ambient.orders, K.key)
    hit = _I_GEN_CACHE.get(cache_key)
    if hit is not None:
        return hit
    subs = subgroups_of(K)
    idx = {S.key: i for i, S in enumerate(subs)}
    twoK = multiple_subgroup(K, 2)
    gens = []
    for H in subs:
        sat = join(H, twoK)
        if sat != H:
            vec = [0] * len(subs)
            vec[idx[H.key]] = 1
            vec[idx[sat.key]] = 1
            gens.append(IGenerator("D", (H, sat), vec))
    for (T, L) in v4_subquotients(K):
        if not twoK.le(L):
            continue
        mids = intermediates(T, L)
        if len(mids) != 3:
            raise InternalConsistencyError("Klein subquotient without "
                                           "exactly three middle levels")
        vec = [0] * len(subs)
        vec[idx[L.key]] = 1
        for M in mids:
            vec[idx[M.key]] += 1
        gens.append(IGenerator("B", (T, L), vec))
    _check_i_span(K, gens)
    _I_GEN_CACHE[cache_key] = gens
    return gens


def _rank_mod_2(M):
    return sum(1 for d in snf(M).diag if d % 2)


def _check_i_span(K, gens):
    subs = subgroups_of(K)
    B = _char_sum_columns(K)
    for g in gens:
        if any(x % 2 for x in B.times_vec(g.vector)):
            raise InternalConsistencyError(
                "a D or B generator survives the character-sum map")
    G = IntMat.from_cols([g.vector for g in gens], len(subs))
    if _rank_mod_2(G) != len(subs) - _rank_mod_2(B):
        raise InternalConsistencyError(
            "D and B generators do not span the character-sum kernel "
            "at level of order %d" % K.order)


def theta_odd_raw(kc, gen):
    """Value of an I-generator as a vector over the degree-(8d+2)
    basis of kc.  A D pair contributes 2^(t-1) on the class of the
    leading member of each size-2^t cyclic-quotient orbit that
    separates the pair, plus, when the saturation index 2^s has odd s,
    the eta^2 lines trivial on the pair; a B combination contributes
    the eta^2 lines trivial on its bottom subgroup.

    The eta^2 term on D pairs is forced by naturality: over C2xC4 the
    transfer of B_{V,e} from the Klein subgroup V equals the sum of
    the three D generators in the Burnside ring mod 2, so the D values
    must add up to Tr(eta^2 rho_V), which meets every real line.
    Orbit components alone cannot do that, and transfer-chain
    independence pins the coefficient to the parity of s."""
    if kc.p != 2 or kc.n % 8 != 2:
        raise InternalConsistencyError(
            "extension values live in the cokernel two degrees up")
    K = kc.K
    vec = [0] * len(kc.basis.items)
    if gen.kind == "B":
        _, L = gen.pair
        for tau, hit in zip(real_characters(K), eta_line_vector(K, L)):
            if hit:
                j = kc.basis.index_of(RE, RealIrrep(REAL, tau))
                vec[j] += 1
    elif gen.kind == "D":
        H, Hs = gen.pair
        for orb in adams_orbits(K, 2, generator_choice(2)):
            if H.le(orb.kernel) != Hs.le(orb.kernel):
                t = _log2(K.order // orb.kernel.order)
                j = kc.basis.index_of(CX, orb.members[0])
                if j is None:
                    raise InternalConsistencyError("orbit outside the basis")
                vec[j] += 1 << (t - 1)
        # real characters all kill 2K, so tau >= H iff tau >= Hs
        if _log2(Hs.order // H.order) % 2 == 1:
            for tau, hit in zip(real_characters(K), eta_line_vector(K, Hs)):
                if hit:
                    j = kc.basis.index_of(RE, RealIrrep(REAL, tau))
                    vec[j] += 1
    else:
        raise InternalConsistencyError("unknown generator kind %r"
                                       % (gen.kind,))
    return vec


def theta_odd(K, d, gen, kc=None):
    """Value of an I-generator in the degree-(8d+2) cokernel at K, in
    canonical cokernel coordinates."""
    if kc is None:
        kc = kercoker_closed(K, 8 * d + 2, 2)
    return kc.coker_project(theta_odd_raw(kc, gen))


class ThetaOdd:
    """All I-generator values at one level, checked consistent across
    every mod-2 relation among the generators."""

    __slots__ = ("kc", "gens", "values")

    def __init__(self, kc, gens=None):
        self.kc = kc
        self.gens = i_generators(kc.K) if gens is None else gens
        self.values = [list(kc.coker_project(theta_odd_raw(kc, g)))
                       for g in self.gens]
        if not self.gens:
            return
        nsub = len(self.gens[0].vector)
        G = IntMat.from_cols([g.vector for g in self.gens], nsub)
        lat = _i_relation_lattice(kc.K, G)
        for c in range(lat.n):
            tot = [0] * kc.coker.n_gens
            for a, val in zip(lat.col(c), self.values):
                for i, v in enumerate(val):
                    tot[i] += a * v
            if not kc.coker.is_zero_vec(tot):
                raise InternalConsistencyError(
                    "inconsistent values on a relation among the D and B "
                    "generators")


_I_LATTICE_CACHE = {}


def _i_relation_lattice(K, G):
    cache_key = (K.ambient.orders, K.key)
    hit = _I_LATTICE_CACHE.get(cache_key)
    if hit is None:
        hit = KernelPresentation(G, [0] * G.n, [2] * G.m).lattice
        _I_LATTICE_CACHE[cache_key] = hit
    return hit


# ---------------------------------------------------------------------------
# level presentations

class AssembledLevel:
    """One level of an assembled degree: a presentation whose inputs
    are the Burnside orbits followed by the coefficient block, with
    the quotient group in canonical form."""

    __slots__ = ("K", "pres", "n_a", "n_part")

    def __init__(self, K, pres, n_a, n_part):
        self.K = K
        self.pres = pres
        self.n_a = n_a
        self.n_part = n_part

    @property
    def group(self):
        return self.pres.group

    def project(self, vec):
        return self.pres.project(vec)

    def a_class(self, avec):
        """Class of a vector supported on the Burnside block."""
        return self.pres.project(list(avec) + [0] * self.n_part)

    def part_class(self, pvec):
        """Class of a vector supported on the coefficient block."""
        return self.pres.project([0] * self.n_a + list(pvec))


def pi0_assembly(K, completed=True):
    """Degree-0 level at K: free Burnside part over the subgroups,
    order-2 eta-lines over the real characters, one relation j = value
    per basis vector of the linearization kernel.  The group must come
    out free of rank the number of cyclic subgroups plus one Z/2 per
    real character."""
    _require_two_group(K.order, "degree-0 assembly")
    check_size_bound(K.order)
    ring = "Zp:2" if completed else "Z"
    th = ThetaZero(K)
    subs = subgroups_of(K)
    eta = ko_pi(K, 1)
    orders = [0] * len(subs) + [it.order for it in eta.items]
    labels = _orbit_labels(K) + [it.label for it in eta.items]
    jl = j_lattice(K)
    cols = []
    for c in range(jl.n):
        j = jl.col(c)
        cols.append(j + [-x for x in th.value(j)])
    pres = Presentation(orders, IntMat.from_cols(cols, len(orders)),
                        input_labels=labels, ring=ring)
    expected = FgAbGroup(len(cyclic_quotient_subgroups(K)),
                         (2,) * len(eta.items), ring=ring)
    if not pres.group.same_type(expected):
        raise InternalConsistencyError(
            "degree-0 level of order %d is %s, expected %s"
            % (K.order, pres.group.describe(), expected.describe()))
    return AssembledLevel(K, pres, len(subs), len(eta.items))


def _kc_level(K, d, method):
    if method == "closed":
        return kercoker_closed(K, 8 * d + 2, 2)
    if method == "oracle":
        return kercoker_oracle(K, 8 * d + 2, 2)
    raise ParseError("unknown method %r" % (method,))


def pi_odd_assembly(K, d, method="closed", kc=None):
    """Degree-(8d+1) level at K: order-2 Burnside part, the
    degree-(8d+2) cokernel as coefficient block, one relation r =
    value per D or B generator.  The group must match the split form
    cokernel + (Z/2)^(number of real characters)."""
    _require_two_group(K.order, "degree-(8d+1) assembly")
    check_size_bound(K.order)
    if kc is None:
        kc = _kc_level(K, d, method)
    th = ThetaOdd(kc)
    subs = subgroups_of(K)
    orders = [2] * len(subs) + kc.coker.gen_orders()
    labels = _orbit_labels(K) + list(kc.coker.labels)
    cols = [g.vector + [-v for v in val]
            for g, val in zip(th.gens, th.values)]
    pres = Presentation(orders, IntMat.from_cols(cols, len(orders)),
                        input_labels=labels, ring="Zp:2")
    expected = direct_sum_groups(
        [FgAbGroup(0, (2,) * len(real_characters(K)), ring="Zp:2"),
         kc.coker])
    if not pres.group.same_type(expected):
        raise InternalConsistencyError(
            "degree-(8d+1) level of order %d is %s, expected %s"
            % (K.order, pres.group.describe(), expected.describe()))
    return AssembledLevel(K, pres, len(subs), kc.coker.n_gens)


# ---------------------------------------------------------------------------
# the assembled Mackey functors

def pi_zero_functor(G, completed=True):
    """Degree-0 Mackey functor over the 2-group G.  Restriction and
    transfer act blockwise (Burnside maps and eta-line maps); pushing
    them through the level presentations checks that they match on the
    identified relations."""
    _require_two_group(G.order, "degree-0 assembly")
    amf = a_mackey(G)
    levels = {}
    eta = {}
    for S in subgroups(G):
        levels[S.key] = pi0_assembly(S, completed)
        eta[S.key] = ko_pi(S, 1)

    def res(T, K):
        F = amf.res(T, K).block_diag(restriction_items(eta[K.key],
                                                       eta[T.key]))
        return induced_map(levels[K.key].pres, levels[T.key].pres, F)

    def tr(T, K):
        F = amf.tr(T, K).block_diag(transfer_items(eta[T.key], eta[K.key]))
        return induced_map(levels[T.key].pres, levels[K.key].pres, F)

    return MackeyFunctor.build(G, lambda S: levels[S.key].group, res, tr)


def pi_odd_functor(G, d, method="closed"):
    """Degree-(8d+1) Mackey functor over the 2-group G, on top of the
    chosen kernel/cokernel method."""
    _require_two_group(G.order, "degree-(8d+1) assembly")
    _kerF, cokF, kcs = kercoker_functors(G, 8 * d + 2, 2, method)
    amf = a_mackey(G)
    levels = {S.key: pi_odd_assembly(S, d, method, kc=kcs[S.key])
              for S in subgroups(G)}

    def res(T, K):
        F = amf.res(T, K).block_diag(cokF.res(T, K))
        return induced_map(levels[K.key].pres, levels[T.key].pres, F)

    def tr(T, K):
        F = amf.tr(T, K).block_diag(cokF.tr(T, K))
        return induced_map(levels[T.key].pres, levels[K.key].pres, F)

    return MackeyFunctor.build(G, lambda S: levels[S.key].group, res, tr)
