"""Coefficient bases of the real and complex K-theory spectra at a
level K, the Adams-operation matrices psi^g - 1 on them, their kernels
and cokernels (by closed formula and by an independent Smith-form
oracle), and transport of restriction/transfer onto those kernels and
cokernels.

Real coefficients follow Z[eta, alpha, u^{+-}]/(2 eta, eta^3,
eta*alpha, alpha^2 - 4u) tensored with real characters, plus one
Z[beta^{+-}] line per conjugate pair of complex characters.  The
degree-g operation acts by eta -> eta, alpha -> g^2 alpha, u -> g^4 u,
beta -> g beta, and by chi -> chi^g on characters.
"""

from sympy import primitive_root

from .abgroups import subgroups, subgroups_of
from .errors import InternalConsistencyError, ParseError
from .linalg import (
    FgAbGroup, IntMat, KernelPresentation, Presentation, pval,
)
from .mackey import MackeyFunctor
from .reps import (
    CPLX, REAL, RealIrrep, adams_orbits, characters, real_characters,
    real_irreps,
)


# ---------------------------------------------------------------------------
# generator of the Adams operations used throughout

_gen_cache = {}


def generator_choice(p):
    """The integer g whose power operation generates the relevant unit
    group: 5 at p = 2; at odd p the smallest primitive root, bumped by
    p when its (p-1)-st power is 1 mod p^2 so that it stays primitive
    at all powers of p."""
    hit = _gen_cache.get(p)
    if hit is not None:
        return hit
    if p == 2:
        g = 5
    else:
        g = int(primitive_root(p))
        if pow(g, p - 1, p * p) == 1:
            g += p
    _gen_cache[p] = g
    return g


def psi_val(p, g, w):
    """v_p(g^w - 1) for w != 0 by the closed rule, cross-checked by
    modular exponentiation."""
    if w == 0:
        raise InternalConsistencyError("valuation of the zero exponent")
    a = abs(w)
    if p == 2:
        v = 2 + pval(a, 2)
    elif a % (p - 1) == 0:
        v = 1 + pval(a, p)
    else:
        v = 0
    if v and pow(g, a, p ** v) != 1:
        raise InternalConsistencyError("valuation rule too large at %d" % w)
    if pow(g, a, p ** (v + 1)) == 1:
        raise InternalConsistencyError("valuation rule too small at %d" % w)
    return v


# ---------------------------------------------------------------------------
# degree-n coefficient bases

RE = "re"
CX = "cx"
KU = "ku"

# n mod 8 -> (monomial prefix, coefficient order: 0 free, 2 for eta part)
_REAL_MONO = {0: ("u^%d", 0), 1: ("eta*u^%d", 2),
              2: ("eta^2*u^%d", 2), 4: ("alpha*u^%d", 0)}


class BasisItem:
    """One generator line of a degree-n coefficient basis."""

    __slots__ = ("kind", "carrier", "order", "weight", "m", "label")

    def __init__(self, kind, carrier, order, weight, m, label):
        self.kind = kind
        self.carrier = carrier
        self.order = order
        self.weight = weight
        self.m = m
        self.label = label

    def __repr__(self):
        return "BasisItem(%s)" % self.label


class KOBasis:
    """Ordered degree-n basis at level K: real-character lines first,
    then one line per conjugate pair (or per character for the complex
    theory)."""

    __slots__ = ("K", "n", "items", "_index")

    def __init__(self, K, n, items):
        self.K = K
        self.n = n
        self.items = items
        self._index = {(it.kind, it.carrier): j for j, it in enumerate(items)}

    def __len__(self):
        return len(self.items)

    def index_of(self, kind, carrier):
        return self._index.get((kind, carrier))


def ko_pi(K, n):
    """Degree-n real-theory basis at K."""
    items = []
    d, r = divmod(n, 8)
    if r in _REAL_MONO:
        fmt, order = _REAL_MONO[r]
        mono = fmt % d
        w = n // 2 if order == 0 else 4 * d
        for i, tau in enumerate(real_characters(K)):
            items.append(BasisItem(RE, RealIrrep(REAL, tau), order, w, None,
                                   "%s*r%d" % (mono, i)))
    if n % 2 == 0:
        m = n // 2
        c = 0
        for irr in real_irreps(K):
            if irr.kind == CPLX:
                items.append(BasisItem(CX, irr, 0, None, m,
                                       "beta^%d*c%d" % (m, c)))
                c += 1
    return KOBasis(K, n, items)


def ku_pi(K, n):
    """Degree-n complex-theory basis at K: one line per character in
    even degrees."""
    items = []
    if n % 2 == 0:
        m = n // 2
        for i, chi in enumerate(characters(K)):
            items.append(BasisItem(KU, chi, 0, None, m,
                                   "beta^%d*chi%d" % (m, i)))
    return KOBasis(K, n, items)


def _pi_basis(K, n, p):
    return ko_pi(K, n) if p == 2 else ku_pi(K, n)


# ---------------------------------------------------------------------------
# the matrix of psi^g - 1

class PsiBlock:
    """psi^g - 1 on a degree-n basis, as one integer matrix.  Columns
    with negative beta or u exponent are scaled by the evident unit so
    that every entry is integral; this does not change kernels or
    cokernels over the p-local coefficients."""

    __slots__ = ("basis", "g", "p", "matrix")

    def __init__(self, basis, g, p, matrix):
        self.basis = basis
        self.g = g
        self.p = p
        self.matrix = matrix


def _unit_entry(g, w):
    """g^w - 1 for w >= 0, unit-normalized to 1 - g^{-w} for w < 0."""
    if w >= 0:
        return pow(g, w) - 1
    return 1 - pow(g, -w)


def _pair_sign(chi, m):
    """Sign of r(chi beta^m) against the canonical basis class of the
    pair of chi: conjugation negates beta, so landing on the conjugate
    of the canonical member costs (-1)^m."""
    if chi == RealIrrep(CPLX, chi).rep:
        return 1
    return -1 if m % 2 else 1


def _cx_perm(basis, p, g):
    """Permutation of the complex lines induced by chi -> chi^g, with
    the realification sign of each step."""
    perm = {}
    for j, it in enumerate(basis.items):
        if it.kind == CX:
            img_chi = it.carrier.rep.power(g)
            img = basis.index_of(CX, RealIrrep(CPLX, img_chi))
            sign = _pair_sign(img_chi, it.m)
        elif it.kind == KU:
            img = basis.index_of(KU, it.carrier.power(g))
            sign = 1
        else:
            continue
        if img is None:
            raise InternalConsistencyError("power operation left the basis")
        perm[j] = (img, sign)
    return perm


def psi_minus_one(K, n, p):
    """The matrix of psi^g - 1 on the degree-n basis at K."""
    basis = _pi_basis(K, n, p)
    g = generator_choice(p)
    N = len(basis)
    M = IntMat(N, N)
    perm = _cx_perm(basis, p, g)
    for j, it in enumerate(basis.items):
        if it.kind == RE:
            e = _unit_entry(g, it.weight)
            if it.order:
                # eta lines: g odd forces the zero map on Z/2
                if e % it.order:
                    raise InternalConsistencyError(
                        "nonzero action on a torsion line")
                e = 0
            M.a[j][j] += e
        else:
            i, sign = perm[j]
            if it.m >= 0:
                M.a[i][j] += sign * pow(g, it.m)
                M.a[j][j] -= 1
            else:
                M.a[i][j] += sign
                M.a[j][j] -= pow(g, -it.m)
    return PsiBlock(basis, g, p, M)


# ---------------------------------------------------------------------------
# kernels and cokernels

class KerCoker:
    """Kernel and cokernel of psi^g - 1 on the p-completed degree-n
    coefficients at K, with one representative basis vector per
    generator and coordinate maps back into the canonical form."""

    __slots__ = ("K", "n", "p", "method", "basis", "ker", "coker",
                 "ker_reps", "coker_reps", "_express", "_project")

    def __init__(self, K, n, p, method, basis, ker, coker, ker_reps,
                 coker_reps, express, project):
        self.K = K
        self.n = n
        self.p = p
        self.method = method
        self.basis = basis
        self.ker = ker
        self.coker = coker
        self.ker_reps = ker_reps
        self.coker_reps = coker_reps
        self._express = express
        self._project = project

    def ker_express(self, vec):
        """Coordinates in ker of a psi-fixed basis vector."""
        return self._express(vec)

    def coker_project(self, vec):
        """Coordinates in coker of the class of a basis vector."""
        return self._project(vec)


def _require_p_group(K, p):
    o = K.order
    while o % p == 0:
        o //= p
    if o != 1:
        raise ParseError("kernel/cokernel levels require a %d-group" % p)


def _trivial_kercoker(K, n, p, method, basis):
    zero = FgAbGroup(0, (), (), ring="Zp:%d" % p)

    def express(vec):
        if any(vec):
            raise InternalConsistencyError("vector is not in the kernel")
        return ()

    return KerCoker(K, n, p, method, basis, zero, zero, [], [],
                    express, lambda vec: ())


def _p_view(group, p):
    """The p-completion of an integral group together with the indices
    of the generators that survive."""
    keep = list(range(group.free_rank))
    torsion = []
    labels = list(group.labels[:group.free_rank])
    for k, d in enumerate(group.torsion):
        q = d
        while q % p == 0:
            q //= p
        q = d // q
        if q > 1:
            keep.append(group.free_rank + k)
            torsion.append(q)
            labels.append(group.labels[group.free_rank + k])
    G = FgAbGroup(group.free_rank, tuple(torsion), labels, ring="Zp:%d" % p)
    return G, keep


def kercoker_oracle(K, n, p):
    """ker/coker by Smith normal form of the integral matrix, then
    passage to p-primary parts.  Independent of the closed formulas."""
    _require_p_group(K, p)
    pb = psi_minus_one(K, n, p)
    basis = pb.basis
    if not basis.items:
        return _trivial_kercoker(K, n, p, "oracle", basis)
    orders = [it.order for it in basis.items]
    labels = [it.label for it in basis.items]
    cok = Presentation(orders, pb.matrix, input_labels=labels)
    kerp = KernelPresentation(pb.matrix, orders, orders, labels)
    cgroup, ckeep = _p_view(cok.group, p)
    kgroup, kkeep = _p_view(kerp.group, p)
    coker_reps = [cok.section(i) for i in ckeep]
    ker_reps = [kerp.rep(i) for i in kkeep]

    def project(vec):
        full = cok.project(vec)
        return cgroup.reduce([full[i] for i in ckeep])

    def express(vec):
        full = kerp.express(vec)
        return kgroup.reduce([full[i] for i in kkeep])

    return KerCoker(K, n, p, "oracle", basis, kgroup, cgroup,
                    ker_reps, coker_reps, express, project)


class _GenList:
    """Accumulates closed-form generators: (order, label, representative
    vector, coordinate function).  Free generators keep their original
    order; torsion generators are sorted by invariant factor."""

    def __init__(self):
        self.specs = []
        self.checks = []

    def add(self, order, label, rep, coord):
        self.specs.append((order, label, rep, coord))

    def finish(self, p):
        free = [s for s in self.specs if s[0] == 0]
        tors = sorted((s for s in self.specs if s[0] != 0),
                      key=lambda s: s[0])
        ordered = free + tors
        group = FgAbGroup(len(free), tuple(s[0] for s in tors),
                          [s[1] for s in ordered], ring="Zp:%d" % p)
        reps = [list(s[2]) for s in ordered]
        coords = [s[3] for s in ordered]
        checks = list(self.checks)

        def express(vec):
            for chk in checks:
                chk(vec)
            return group.reduce([fn(vec) for fn in coords])

        return group, reps, express


def _single_coord(j):
    return lambda vec: vec[j]


def _zero_check(j, label):
    def chk(vec):
        if vec[j]:
            raise InternalConsistencyError(
                "kernel vector has a component on %s" % label)
    return chk


def _orbit_coord(idxs, coeffs):
    return lambda vec: sum(vec[j] * c for j, c in zip(idxs, coeffs))


def _orbit_equal_check(idxs, label):
    def chk(vec):
        vals = {vec[j] for j in idxs}
        if len(vals) > 1:
            raise InternalConsistencyError(
                "kernel vector is not psi-fixed on %s" % label)
    return chk


def _orbit_walks(perm, step_signs):
    """Forward distances from position 0 along a single cycle, the
    complementary distances back to 0, and the cumulative step signs.
    The signs must multiply to +1 around the cycle."""
    s = len(perm)
    fwd = [None] * s
    cum = [None] * s
    j = 0
    sg = 1
    for r in range(s):
        if fwd[j] is not None:
            raise InternalConsistencyError("orbit is not a single cycle")
        fwd[j] = r
        cum[j] = sg
        sg *= step_signs[j]
        j = perm[j]
    if j != 0:
        raise InternalConsistencyError("orbit is not a single cycle")
    if sg != 1:
        raise InternalConsistencyError("orbit signs do not close up")
    back = [(s - f) % s for f in fwd]
    return fwd, back, cum


def _orbit_items(basis, orb, p):
    if p == 2:
        return [basis.index_of(CX, irr) for irr in orb.members]
    return [basis.index_of(KU, chi) for chi in orb.members]


def kercoker_closed(K, n, p):
    """ker/coker by the case-list formulas: real lines contribute
    diagonally with order p^{v_p(g^w - 1)}, torsion lines are fixed,
    and each complex orbit contributes one cyclic summand of order
    p^{v_p(g^{m s} - 1)} on the class of its first member (free at
    m = 0, where the fixed sum also generates the kernel)."""
    _require_p_group(K, p)
    basis = _pi_basis(K, n, p)
    if not basis.items:
        return _trivial_kercoker(K, n, p, "closed", basis)
    g = generator_choice(p)
    kg = _GenList()
    cg = _GenList()
    names = {S.key: i for i, S in enumerate(subgroups_of(K))}
    n_items = len(basis.items)

    def unit(j):
        rep = [0] * n_items
        rep[j] = 1
        return rep

    for j, it in enumerate(basis.items):
        if it.kind != RE and not (it.kind == KU and it.carrier.is_trivial()):
            continue
        if it.order:
            kg.add(2, it.label, unit(j), _single_coord(j))
            cg.add(2, it.label, unit(j), _single_coord(j))
            continue
        w = it.weight if it.kind == RE else it.m
        if w == 0:
            kg.add(0, it.label, unit(j), _single_coord(j))
            cg.add(0, it.label, unit(j), _single_coord(j))
            continue
        v = psi_val(p, g, w)
        if v:
            cg.add(p ** v, it.label, unit(j), _single_coord(j))
        kg.checks.append(_zero_check(j, it.label))

    m = n // 2 if n % 2 == 0 else None
    for orb in adams_orbits(K, p, g) if m is not None else []:
        idxs = _orbit_items(basis, orb, p)
        if any(i is None for i in idxs):
            raise InternalConsistencyError("orbit outside the basis")
        s = len(idxs)
        name = "orb[S%d]" % names[orb.kernel.key]
        if p == 2:
            signs = [_pair_sign(mem.rep.power(g), m) for mem in orb.members]
        else:
            signs = [1] * s
        fwd, back, cum = _orbit_walks(orb.perm, signs)
        if m >= 0:
            coeffs = [cum[i] * pow(g, m * back[i]) for i in range(s)]
        else:
            coeffs = [cum[i] * pow(g, -m * fwd[i]) for i in range(s)]
        rep = [0] * n_items
        rep[idxs[0]] = 1
        label = "beta^%d*%s" % (m, name)
        if m == 0:
            cg.add(0, label, rep, _orbit_coord(idxs, coeffs))
            ksum = [0] * n_items
            for j in idxs:
                ksum[j] = 1
            kg.add(0, "sum[S%d]" % names[orb.kernel.key], ksum,
                   _orbit_coord([idxs[0]], [1]))
            kg.checks.append(_orbit_equal_check(idxs, name))
        else:
            v = psi_val(p, g, m * s)
            if v:
                cg.add(p ** v, label, rep, _orbit_coord(idxs, coeffs))
            for j in idxs:
                kg.checks.append(_zero_check(j, name))

    ker, ker_reps, express = kg.finish(p)
    coker, coker_reps, _cexpress = cg.finish(p)

    def project(vec):
        return _cexpress(vec)

    return KerCoker(K, n, p, "closed", basis, ker, coker,
                    ker_reps, coker_reps, express, project)


# ---------------------------------------------------------------------------
# restriction and transfer on the bases, and their transport to ker/coker

def _idx(basis, kind, carrier, what):
    i = basis.index_of(kind, carrier)
    if i is None:
        raise InternalConsistencyError("%s left the degree-%d basis"
                                       % (what, basis.n))
    return i


def restriction_items(bK, bT):
    """Restriction on degree-n bases as a matrix, columns over the
    items of bK.  A complex line whose character restricts to a real
    one lands in the real part through realification: coefficients
    2, 1, 1, 0 on u, eta^2 u, alpha u, nothing as m runs mod 4."""
    if bK.n != bT.n:
        raise InternalConsistencyError("restriction across degrees")
    T = bT.K
    R = IntMat(len(bT), len(bK))
    for j, it in enumerate(bK.items):
        if it.kind == KU:
            R.a[_idx(bT, KU, it.carrier.restrict(T), "character")][j] += 1
        elif it.kind == RE:
            tau = it.carrier.rep.restrict(T)
            R.a[_idx(bT, RE, RealIrrep(REAL, tau), "real line")][j] += 1
        else:
            chi = it.carrier.rep.restrict(T)
            if chi.order() > 2:
                i = _idx(bT, CX, RealIrrep(CPLX, chi), "pair")
                R.a[i][j] += _pair_sign(chi, it.m)
            else:
                r = it.m % 4
                if r != 3:
                    coeff = 2 if r == 0 else 1
                    i = _idx(bT, RE, RealIrrep(REAL, chi), "realified pair")
                    R.a[i][j] += coeff
    return R


def transfer_items(bT, bK):
    """Transfer on degree-n bases as a matrix, columns over the items
    of bT.  Real lines induce up to every real line over them; a u- or
    alpha-line additionally hits each pair over it (coefficient 1
    resp. 2, matching complexification); complex lines induce pair to
    pair with coefficient 1."""
    if bK.n != bT.n:
        raise InternalConsistencyError("transfer across degrees")
    T, K = bT.K, bK.K
    M = IntMat(len(bK), len(bT))
    if not bT.items:
        return M
    if bT.items[0].kind == KU or bK.items and bK.items[0].kind == KU:
        for j, it in enumerate(bT.items):
            for psi in characters(K):
                if psi.restrict(T) == it.carrier:
                    M.a[_idx(bK, KU, psi, "character")][j] += 1
        return M
    r = bK.n % 8
    cx_coeff = {0: 1, 4: 2}.get(r, 0)
    for j, it in enumerate(bT.items):
        if it.kind == RE:
            tau = it.carrier.rep
            for psi in real_characters(K):
                if psi.restrict(T) == tau:
                    M.a[_idx(bK, RE, RealIrrep(REAL, psi), "real line")][j] += 1
            if cx_coeff:
                for irr in real_irreps(K):
                    if irr.kind == CPLX and irr.rep.restrict(T) == tau:
                        M.a[_idx(bK, CX, irr, "pair")][j] += cx_coeff
        else:
            canon = it.carrier.rep
            conj = canon.conjugate()
            neg = -1 if bK.n // 2 % 2 else 1
            for irr in real_irreps(K):
                if irr.kind != CPLX:
                    continue
                rho = irr.rep.restrict(T)
                if rho == canon:
                    M.a[_idx(bK, CX, irr, "pair")][j] += 1
                elif rho == conj:
                    M.a[_idx(bK, CX, irr, "pair")][j] += neg
    return M


class Transport:
    """res/tr matrices between two ker/coker levels at the same
    degree."""

    __slots__ = ("res_ker", "res_coker", "tr_ker", "tr_coker")

    def __init__(self, res_ker, res_coker, tr_ker, tr_coker):
        self.res_ker = res_ker
        self.res_coker = res_coker
        self.tr_ker = tr_ker
        self.tr_coker = tr_coker


def transport_maps(kcT, kcK):
    """Push the representatives of kcK (resp. kcT) through restriction
    (resp. transfer) on the bases and re-express them in the other
    level's coordinates."""
    if (kcT.n, kcT.p) != (kcK.n, kcK.p):
        raise InternalConsistencyError("transport across degrees or primes")
    if not kcT.K.le(kcK.K):
        raise InternalConsistencyError("transport needs nested levels")
    R = restriction_items(kcK.basis, kcT.basis)
    Tm = transfer_items(kcT.basis, kcK.basis)
    res_ker = IntMat.from_cols(
        [list(kcT.ker_express(R.times_vec(rep))) for rep in kcK.ker_reps],
        kcT.ker.n_gens)
    res_coker = IntMat.from_cols(
        [list(kcT.coker_project(R.times_vec(rep))) for rep in kcK.coker_reps],
        kcT.coker.n_gens)
    tr_ker = IntMat.from_cols(
        [list(kcK.ker_express(Tm.times_vec(rep))) for rep in kcT.ker_reps],
        kcK.ker.n_gens)
    tr_coker = IntMat.from_cols(
        [list(kcK.coker_project(Tm.times_vec(rep))) for rep in kcT.coker_reps],
        kcK.coker.n_gens)
    return Transport(res_ker, res_coker, tr_ker, tr_coker)


def kercoker_functors(G, n, p, method="closed"):
    """Mackey functors of ker and coker of psi^g - 1 in degree n over
    all subgroup levels of the p-group G, plus the per-level data."""
    if method == "closed":
        fn = kercoker_closed
    elif method == "oracle":
        fn = kercoker_oracle
    else:
        raise ParseError("unknown method %r" % (method,))
    levels = {S.key: fn(S, n, p) for S in subgroups(G)}
    cache = {}

    def tp(T, K):
        key = (T.key, K.key)
        if key not in cache:
            cache[key] = transport_maps(levels[T.key], levels[K.key])
        return cache[key]

    ker = MackeyFunctor.build(G, lambda S: levels[S.key].ker,
                              lambda T, K: tp(T, K).res_ker,
                              lambda T, K: tp(T, K).tr_ker)
    coker = MackeyFunctor.build(G, lambda S: levels[S.key].coker,
                                lambda T, K: tp(T, K).res_coker,
                                lambda T, K: tp(T, K).tr_coker)
    return ker, coker, levels


def kercoker_isos(levels_a, levels_b, side):
    """Level isomorphisms re-expressing the generators of one method's
    answer in the other's coordinates; feeds the strong comparison."""
    isos = {}
    for key, a in levels_a.items():
        b = levels_b[key]
        if side == "ker":
            cols = [list(b.ker_express(rep)) for rep in a.ker_reps]
            isos[key] = IntMat.from_cols(cols, b.ker.n_gens)
        else:
            cols = [list(b.coker_project(rep)) for rep in a.coker_reps]
            isos[key] = IntMat.from_cols(cols, b.coker.n_gens)
    return isos
