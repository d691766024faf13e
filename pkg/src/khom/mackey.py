"""Mackey functor container for finite abelian groups.

A functor holds one finitely generated abelian group per subgroup of a
fixed ambient group, with restriction and transfer matrices stored on
covering pairs of the subgroup lattice and composed on demand along a
deterministic chain.  Axioms (transitivity, abelian double coset) are
checked, not assumed.
"""

from __future__ import annotations

from .abgroups import intersect, join, subgroups, subgroups_of
from .errors import InternalConsistencyError
from .linalg import (
    FgAbGroup, IntMat, Presentation, induced_map, map_is_isomorphism,
    map_well_defined, mat_mod_orders,
)


def mats_equal_mod(A, B, orders):
    if A.m != B.m or A.n != B.n:
        return False
    for i, o in enumerate(orders):
        for j in range(A.n):
            d = A.a[i][j] - B.a[i][j]
            if (o and d % o) or (not o and d):
                return False
    return True


def kron(A, B):
    """Kronecker product; row/column index (i, j) flattens to i*B.m + j
    and (k, l) to k*B.n + l."""
    R = IntMat(A.m * B.m, A.n * B.n)
    for i in range(A.m):
        for k in range(A.n):
            x = A.a[i][k]
            if x:
                for j in range(B.m):
                    for l in range(B.n):
                        R.a[i * B.m + j][k * B.n + l] = x * B.a[j][l]
    return R


class AxiomReport:
    __slots__ = ("violations", "checked")

    def __init__(self):
        self.violations = []
        self.checked = 0

    @property
    def ok(self):
        return not self.violations

    def add(self, msg):
        if len(self.violations) < 25:
            self.violations.append(msg)

    def __repr__(self):
        state = "ok" if self.ok else "%d violations" % len(self.violations)
        return "AxiomReport(%s, %d identities)" % (state, self.checked)


class MackeyFunctor:
    """Levels indexed by the subgroup lattice of an ambient group.

    res(T, K): level(K) -> level(T) and tr(T, K): level(T) -> level(K)
    for T <= K, as integer matrices in the levels' generator bases,
    entries normalized modulo the target's torsion.
    """

    __slots__ = ("group", "subs", "index", "levels", "_res_cover",
                 "_tr_cover", "_res_cache", "_tr_cache")

    def __init__(self, group, levels, res_cover, tr_cover):
        self.group = group
        self.subs = subgroups(group)
        self.index = {S.key: i for i, S in enumerate(self.subs)}
        if len(levels) != len(self.subs):
            raise InternalConsistencyError("level count mismatch")
        self.levels = list(levels)
        self._res_cover = dict(res_cover)
        self._tr_cover = dict(tr_cover)
        self._res_cache = {}
        self._tr_cache = {}
        for (iT, iK), M in self._res_cover.items():
            self._check_shape(M, iK, iT, "res")
        for (iT, iK), M in self._tr_cover.items():
            self._check_shape(M, iT, iK, "tr")

    def _check_shape(self, M, i_src, i_dst, what):
        src, dst = self.levels[i_src], self.levels[i_dst]
        if M.n != src.n_gens or M.m != dst.n_gens:
            raise InternalConsistencyError(
                "%s matrix shape mismatch at pair %d,%d" % (what, i_src, i_dst))
        if not map_well_defined(M, src, dst):
            raise InternalConsistencyError(
                "%s matrix ignores generator orders" % what)

    @classmethod
    def build(cls, group, level_fn, res_fn, tr_fn):
        """level_fn(S) -> FgAbGroup; res_fn/tr_fn(T, K) -> IntMat,
        called on covering pairs only."""
        subs = subgroups(group)
        levels = [level_fn(S) for S in subs]
        res_cover = {}
        tr_cover = {}
        for iK, K in enumerate(subs):
            for iT, T in enumerate(subs):
                if T.le(K) and T != K and _is_prime_index(T, K):
                    rm = mat_mod_orders(res_fn(T, K), levels[iT].gen_orders())
                    tm = mat_mod_orders(tr_fn(T, K), levels[iK].gen_orders())
                    res_cover[(iT, iK)] = rm
                    tr_cover[(iT, iK)] = tm
        return cls(group, levels, res_cover, tr_cover)

    def level(self, S):
        return self.levels[self.index[S.key]]

    def _chain_step(self, iT, iK):
        """Deterministic intermediate: first M in lattice order with
        T <= M < K and [K:M] prime."""
        T, K = self.subs[iT], self.subs[iK]
        for iM, M in enumerate(self.subs):
            if T.le(M) and M.le(K) and M != K and _is_prime_index(M, K):
                return iM
        raise InternalConsistencyError("no covering step found")

    def res_idx(self, iT, iK):
        if iT == iK:
            return IntMat.identity(self.levels[iK].n_gens)
        hit = self._res_cache.get((iT, iK))
        if hit is not None:
            return hit
        iM = self._chain_step(iT, iK)
        M = self.res_idx(iT, iM).mul(self._res_cover[(iM, iK)])
        M = mat_mod_orders(M, self.levels[iT].gen_orders())
        self._res_cache[(iT, iK)] = M
        return M

    def tr_idx(self, iT, iK):
        if iT == iK:
            return IntMat.identity(self.levels[iK].n_gens)
        hit = self._tr_cache.get((iT, iK))
        if hit is not None:
            return hit
        iM = self._chain_step(iT, iK)
        M = self._tr_cover[(iM, iK)].mul(self.tr_idx(iT, iM))
        M = mat_mod_orders(M, self.levels[iK].gen_orders())
        self._tr_cache[(iT, iK)] = M
        return M

    def res(self, T, K):
        return self.res_idx(self.index[T.key], self.index[K.key])

    def tr(self, T, K):
        return self.tr_idx(self.index[T.key], self.index[K.key])

    # ------------------------------------------------------------------
    def check_axioms(self):
        rep = AxiomReport()
        subs = self.subs
        for iK, K in enumerate(subs):
            n = self.levels[iK].n_gens
            if self.res_idx(iK, iK) != IntMat.identity(n):
                rep.add("res identity fails at %d" % iK)
            inner = [i for i, S in enumerate(subs) if S.le(K)]
            ordK = self.levels[iK].gen_orders()
            for iM in inner:
                M = subs[iM]
                if M == K:
                    continue
                for iT in inner:
                    T = subs[iT]
                    if not (T.le(M) and T != M):
                        continue
                    rep.checked += 2
                    lhs = self.res_idx(iT, iM).mul(self.res_idx(iM, iK))
                    if not mats_equal_mod(lhs, self.res_idx(iT, iK),
                                          self.levels[iT].gen_orders()):
                        rep.add("res transitivity fails: %d<=%d<=%d"
                                % (iT, iM, iK))
                    lhs = self.tr_idx(iM, iK).mul(self.tr_idx(iT, iM))
                    if not mats_equal_mod(lhs, self.tr_idx(iT, iK), ordK):
                        rep.add("tr transitivity fails: %d<=%d<=%d"
                                % (iT, iM, iK))
            for iL in inner:
                L = subs[iL]
                ordL = self.levels[iL].gen_orders()
                for iH in inner:
                    H = subs[iH]
                    rep.checked += 1
                    LH = join(L, H)
                    D = intersect(L, H)
                    iD = self.index[D.key]
                    scale = K.order // LH.order
                    lhs = self.res_idx(iL, iK).mul(self.tr_idx(iH, iK))
                    rhs = self.tr_idx(iD, iL).mul(self.res_idx(iD, iH))
                    rhs = IntMat(rhs.m, rhs.n,
                                 [[scale * x for x in row] for row in rhs.a])
                    if not mats_equal_mod(lhs, rhs, ordL):
                        rep.add("double coset fails at K=%d L=%d H=%d"
                                % (iK, iL, iH))
        return rep

    # ------------------------------------------------------------------
    def to_json(self):
        subs_json = []
        for i, S in enumerate(self.subs):
            d = S.decomp
            subs_json.append({
                "name": "S%d" % i,
                "order": S.order,
                "invariants": list(d.orders),
                "gens": [list(b) for b in d.basis],
            })
        levels = {}
        for i, S in enumerate(self.subs):
            levels["S%d" % i] = self.levels[i].to_json()
        res = {}
        tr = {}
        for iK in range(len(self.subs)):
            for iT in range(len(self.subs)):
                if iT == iK or not self.subs[iT].le(self.subs[iK]):
                    continue
                key = "S%d<S%d" % (iT, iK)
                res[key] = [row[:] for row in self.res_idx(iT, iK).a]
                tr[key] = [row[:] for row in self.tr_idx(iT, iK).a]
        return {
            "group": self.group.name(),
            "subgroups": subs_json,
            "levels": levels,
            "res": res,
            "tr": tr,
        }


def _is_prime_index(T, K):
    return _is_prime(K.order // T.order)


def _is_prime(n):
    if n < 2:
        return False
    q = 2
    while q * q <= n:
        if n % q == 0:
            return False
        q += 1
    return True


def zero_functor(G, ring="Z"):
    zero = FgAbGroup(0, (), ring=ring)
    empty = IntMat(0, 0)
    return MackeyFunctor.build(G, lambda S: zero,
                               lambda T, K: empty, lambda T, K: empty)


# ---------------------------------------------------------------------------
# comparison

def compare_weak(M1, M2):
    """Levelwise invariant factors (and ring tags) only."""
    if M1.group != M2.group:
        return False, ["different ambient groups"]
    msgs = []
    for i, S in enumerate(M1.subs):
        if not M1.levels[i].same_type(M2.levels[i]):
            msgs.append("level S%d: %s vs %s"
                        % (i, M1.levels[i].describe(), M2.levels[i].describe()))
    return not msgs, msgs


def compare_strong(M1, M2, isos):
    """isos: per-level matrices, columns in M1 generators and rows in
    M2 generators.  Verifies each is an isomorphism and that every
    restriction and transfer square commutes."""
    ok, msgs = compare_weak(M1, M2)
    if not ok:
        return False, msgs
    mats = []
    for i, S in enumerate(M1.subs):
        phi = isos[i] if not isinstance(isos, dict) else isos[S.key]
        if not map_is_isomorphism(phi, M1.levels[i], M2.levels[i]):
            msgs.append("level S%d: matrix is not an isomorphism" % i)
        mats.append(phi)
    if msgs:
        return False, msgs
    for iK, K in enumerate(M1.subs):
        for iT, T in enumerate(M1.subs):
            if iT == iK or not T.le(K):
                continue
            ordT = M2.levels[iT].gen_orders()
            ordK = M2.levels[iK].gen_orders()
            lhs = mats[iT].mul(M1.res_idx(iT, iK))
            rhs = M2.res_idx(iT, iK).mul(mats[iK])
            if not mats_equal_mod(lhs, rhs, ordT):
                msgs.append("res square fails at S%d<S%d" % (iT, iK))
            lhs = mats[iK].mul(M1.tr_idx(iT, iK))
            rhs = M2.tr_idx(iT, iK).mul(mats[iT])
            if not mats_equal_mod(lhs, rhs, ordK):
                msgs.append("tr square fails at S%d<S%d" % (iT, iK))
    return not msgs, msgs


# ---------------------------------------------------------------------------
# external tensor over a coprime splitting

def external_tensor(Mp, Mn, split):
    """Tensor of a functor over split.P with one over split.N, giving a
    functor over split.G; levels tensor, maps act through one factor at
    a time (covering pairs move a single prime)."""
    if Mp.group != split.P or Mn.group != split.N:
        raise InternalConsistencyError("tensor factors do not match split")
    G = split.G
    subs = subgroups(G)
    pres = []
    parts = []
    for S in subs:
        SP = split.subgroup_to_p(S)
        SN = split.subgroup_to_n(S)
        gp = Mp.level(SP)
        gn = Mn.level(SN)
        orders = []
        labels = []
        po = gp.gen_orders()
        no = gn.gen_orders()
        for i in range(gp.n_gens):
            for j in range(gn.n_gens):
                orders.append(_gcd_star(po[i], no[j]))
                labels.append("%s*%s" % (gp.labels[i], gn.labels[j]))
        ring = gp.ring if gp.ring not in ("Z", "") else gn.ring
        pres.append(Presentation(orders, None, input_labels=labels,
                                 ring=ring))
        parts.append((SP, SN))
    index = {S.key: i for i, S in enumerate(subs)}

    res_cover = {}
    tr_cover = {}
    for iK, K in enumerate(subs):
        for iT, T in enumerate(subs):
            if not (T.le(K) and T != K and _is_prime_index(T, K)):
                continue
            TP, TN = parts[iT]
            KP, KN = parts[iK]
            if TP == KP:
                rp = IntMat.identity(Mp.level(KP).n_gens)
                tp = rp
            else:
                rp = Mp.res(TP, KP)
                tp = Mp.tr(TP, KP)
            if TN == KN:
                rn = IntMat.identity(Mn.level(KN).n_gens)
                tn = rn
            else:
                rn = Mn.res(TN, KN)
                tn = Mn.tr(TN, KN)
            res_cover[(iT, iK)] = induced_map(pres[iK], pres[iT], kron(rp, rn))
            tr_cover[(iT, iK)] = induced_map(pres[iT], pres[iK], kron(tp, tn))

    levels = [p.group for p in pres]
    M = MackeyFunctor(G, levels, res_cover, tr_cover)
    return M, pres


def _gcd_star(a, b):
    from math import gcd
    if a == 0:
        return b
    if b == 0:
        return a
    return gcd(a, b)


# ---------------------------------------------------------------------------
# levelwise p-completion

def p_complete_functor(M, p):
    """Levelwise p-primary part; free ranks survive with a Zp ring tag,
    prime-to-p torsion generators are dropped."""
    new_levels = []
    keep = []
    for g in M.levels:
        idx = list(range(g.free_rank))
        torsion = []
        labels = list(g.labels[:g.free_rank])
        from .linalg import ppart
        for k, d in enumerate(g.torsion):
            q = ppart(d, p)
            if q > 1:
                idx.append(g.free_rank + k)
                torsion.append(q)
                labels.append(g.labels[g.free_rank + k])
        new_levels.append(FgAbGroup(g.free_rank, torsion, labels,
                                    ring="Zp:%d" % p))
        keep.append(idx)

    def slice_map(mat, rows, cols):
        return IntMat(len(rows), len(cols),
                      [[mat.a[i][j] for j in cols] for i in rows])

    res_cover = {}
    tr_cover = {}
    for iK, K in enumerate(M.subs):
        for iT, T in enumerate(M.subs):
            if not (T.le(K) and T != K and _is_prime_index(T, K)):
                continue
            rm = slice_map(M.res_idx(iT, iK), keep[iT], keep[iK])
            tm = slice_map(M.tr_idx(iT, iK), keep[iK], keep[iT])
            res_cover[(iT, iK)] = mat_mod_orders(
                rm, new_levels[iT].gen_orders())
            tr_cover[(iT, iK)] = mat_mod_orders(
                tm, new_levels[iK].gen_orders())
    return MackeyFunctor(M.group, new_levels, res_cover, tr_cover)
