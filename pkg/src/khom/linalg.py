"""Exact integer linear algebra.

Smith and Hermite normal forms with recorded unimodular transforms,
finitely generated abelian groups in invariant-factor form, and
finite presentations with projection / section maps.

All arithmetic is arbitrary-precision Python int.  No floats.
"""

from __future__ import annotations

from math import gcd

from sympy import factorint

from .errors import InternalConsistencyError


# ---------------------------------------------------------------------------
# dense integer matrices

class IntMat:
    """Dense integer matrix with explicit shape, so that matrices with
    zero rows or zero columns stay well-behaved."""

    __slots__ = ("m", "n", "a")

    def __init__(self, m, n, rows=None):
        self.m = m
        self.n = n
        if rows is None:
            self.a = [[0] * n for _ in range(m)]
        else:
            if len(rows) != m or any(len(r) != n for r in rows):
                raise InternalConsistencyError("matrix shape mismatch")
            self.a = [[int(x) for x in r] for r in rows]

    @classmethod
    def identity(cls, n):
        M = cls(n, n)
        for i in range(n):
            M.a[i][i] = 1
        return M

    @classmethod
    def from_cols(cls, cols, nrows):
        M = cls(nrows, len(cols))
        for j, c in enumerate(cols):
            if len(c) != nrows:
                raise InternalConsistencyError("column length mismatch")
            for i, x in enumerate(c):
                M.a[i][j] = int(x)
        return M

    def copy(self):
        return IntMat(self.m, self.n, self.a)

    def col(self, j):
        return [row[j] for row in self.a]

    def transpose(self):
        T = IntMat(self.n, self.m)
        for i in range(self.m):
            for j in range(self.n):
                T.a[j][i] = self.a[i][j]
        return T

    def mul(self, other):
        if self.n != other.m:
            raise InternalConsistencyError("matmul shape mismatch")
        R = IntMat(self.m, other.n)
        for i in range(self.m):
            ai = self.a[i]
            ri = R.a[i]
            for k in range(self.n):
                x = ai[k]
                if x:
                    bk = other.a[k]
                    for j in range(other.n):
                        ri[j] += x * bk[j]
        return R

    def times_vec(self, v):
        if len(v) != self.n:
            raise InternalConsistencyError("matvec shape mismatch")
        nz = [(j, x) for j, x in enumerate(v) if x]
        return [sum(row[j] * x for j, x in nz) for row in self.a]

    def hstack(self, other):
        if self.m != other.m:
            raise InternalConsistencyError("hstack shape mismatch")
        return IntMat(self.m, self.n + other.n,
                      [self.a[i] + other.a[i] for i in range(self.m)])

    def block_diag(self, other):
        R = IntMat(self.m + other.m, self.n + other.n)
        for i in range(self.m):
            R.a[i][:self.n] = self.a[i]
        for i in range(other.m):
            R.a[self.m + i][self.n:] = other.a[i]
        return R

    def is_zero(self):
        return all(x == 0 for row in self.a for x in row)

    def __eq__(self, other):
        return (isinstance(other, IntMat) and self.m == other.m
                and self.n == other.n and self.a == other.a)

    def __hash__(self):
        return hash((self.m, self.n, tuple(tuple(r) for r in self.a)))

    def __repr__(self):
        return "IntMat(%d,%d,%r)" % (self.m, self.n, self.a)


# ---------------------------------------------------------------------------
# Smith normal form

class SNF:
    """U * M * V == D with U, V unimodular, D diagonal, and the diagonal
    a divisibility chain d_1 | d_2 | ... | d_r followed by zeros."""

    __slots__ = ("U", "D", "V", "Uinv", "Vinv", "diag", "rank")

    def __init__(self, U, D, V, Uinv, Vinv):
        self.U = U
        self.D = D
        self.V = V
        self.Uinv = Uinv
        self.Vinv = Vinv
        self.diag = [D.a[i][i] for i in range(min(D.m, D.n))]
        self.rank = sum(1 for d in self.diag if d)


def snf(M):
    """Smith normal form with all four transforms recorded.

    Pivot rule: smallest absolute nonzero value in the working region,
    ties broken by smallest row index, then smallest column index.
    The rule is fixed so that recorded bases are reproducible.
    """
    m, n = M.m, M.n
    D = M.copy()
    U = IntMat.identity(m)
    Uinv = IntMat.identity(m)
    V = IntMat.identity(n)
    Vinv = IntMat.identity(n)
    a = D.a

    def row_swap(i, j):
        a[i], a[j] = a[j], a[i]
        U.a[i], U.a[j] = U.a[j], U.a[i]
        for r in Uinv.a:
            r[i], r[j] = r[j], r[i]

    def row_add(i, j, q):
        # row_i += q * row_j
        ai, aj = a[i], a[j]
        for c in range(n):
            ai[c] += q * aj[c]
        ui, uj = U.a[i], U.a[j]
        for c in range(m):
            ui[c] += q * uj[c]
        for r in Uinv.a:
            r[j] -= q * r[i]

    def row_neg(i):
        a[i] = [-x for x in a[i]]
        U.a[i] = [-x for x in U.a[i]]
        for r in Uinv.a:
            r[i] = -r[i]

    def col_swap(i, j):
        for r in a:
            r[i], r[j] = r[j], r[i]
        for r in V.a:
            r[i], r[j] = r[j], r[i]
        Vinv.a[i], Vinv.a[j] = Vinv.a[j], Vinv.a[i]

    def col_add(j, i, q):
        # col_j += q * col_i
        for r in a:
            r[j] += q * r[i]
        for r in V.a:
            r[j] += q * r[i]
        vi, vj = Vinv.a[i], Vinv.a[j]
        for c in range(n):
            vi[c] -= q * vj[c]

    def find_pivot(t):
        best = None
        for i in range(t, m):
            row = a[i]
            for j in range(t, n):
                v = row[j]
                if v:
                    av = abs(v)
                    if best is None or av < best[0]:
                        best = (av, i, j)
        return best

    t = 0
    while t < min(m, n):
        piv = find_pivot(t)
        if piv is None:
            break
        _, pi, pj = piv
        if pi != t:
            row_swap(t, pi)
        if pj != t:
            col_swap(t, pj)
        if a[t][t] < 0:
            row_neg(t)
        while True:
            d = a[t][t]
            dirty = False
            for i in range(t + 1, m):
                v = a[i][t]
                if v:
                    row_add(i, t, -(v // d))
                    if a[i][t]:
                        dirty = True
            for j in range(t + 1, n):
                v = a[t][j]
                if v:
                    col_add(j, t, -(v // d))
                    if a[t][j]:
                        dirty = True
            if dirty:
                _, pi, pj = find_pivot(t)
                if pi != t:
                    row_swap(t, pi)
                if pj != t:
                    col_swap(t, pj)
                if a[t][t] < 0:
                    row_neg(t)
                continue
            # row t and column t are clear; enforce divisibility
            d = a[t][t]
            bad = None
            for i in range(t + 1, m):
                row = a[i]
                for j in range(t + 1, n):
                    if row[j] % d:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            row_add(t, bad, 1)
            _, pi, pj = find_pivot(t)
            if pi != t:
                row_swap(t, pi)
            if pj != t:
                col_swap(t, pj)
            if a[t][t] < 0:
                row_neg(t)
        t += 1

    res = SNF(U, D, V, Uinv, Vinv)
    for x, y in zip(res.diag, res.diag[1:]):
        if y and x and y % x:
            raise InternalConsistencyError("SNF diagonal is not a chain")
    return res


def snf_verify(M, s):
    """Check all the claimed identities of an SNF result.  Test helper."""
    if s.U.mul(M).mul(s.V) != s.D:
        return False
    if s.U.mul(s.Uinv) != IntMat.identity(M.m):
        return False
    if s.V.mul(s.Vinv) != IntMat.identity(M.n):
        return False
    for i in range(s.D.m):
        for j in range(s.D.n):
            if i != j and s.D.a[i][j]:
                return False
    return True


# ---------------------------------------------------------------------------
# Hermite normal form and lattice utilities

def hnf_rows(M):
    """Canonical row-echelon basis of the lattice spanned by the rows:
    pivots positive, entries above each pivot reduced into [0, pivot),
    zero rows dropped."""
    m, n = M.m, M.n
    A = [row[:] for row in M.a]
    r = 0
    for c in range(n):
        while True:
            nz = [i for i in range(r, m) if A[i][c]]
            if not nz:
                pivot = None
                break
            i0 = min(nz, key=lambda i: (abs(A[i][c]), i))
            rest = [i for i in nz if i != i0]
            if not rest:
                pivot = i0
                break
            # update only where the pivot row is nonzero
            sup = [(j, v) for j, v in enumerate(A[i0]) if v]
            p = A[i0][c]
            for i in rest:
                q = A[i][c] // p
                if q:
                    Ai = A[i]
                    for j, v in sup:
                        Ai[j] -= q * v
        if pivot is None:
            continue
        A[r], A[pivot] = A[pivot], A[r]
        if A[r][c] < 0:
            A[r] = [-x for x in A[r]]
        p = A[r][c]
        sup = [(j, v) for j, v in enumerate(A[r]) if v]
        for i in range(r):
            q = A[i][c] // p
            if q:
                Ai = A[i]
                for j, v in sup:
                    Ai[j] -= q * v
        r += 1
        if r == m:
            break
    return IntMat(r, n, A[:r])


def hnf_cols(M):
    """Column-style Hermite form: canonical basis of the column span."""
    return hnf_rows(M.transpose()).transpose()


def kernel_cols(M):
    """Canonical basis (as columns) of the integer kernel {x : Mx = 0}.
    The basis is saturated: it spans a direct summand."""
    s = snf(M)
    cols = [s.V.col(j) for j in range(s.rank, M.n)]
    return hnf_cols(IntMat.from_cols(cols, M.n))


def solve(M, b):
    """One integer solution x of M x = b, or None."""
    s = snf(M)
    c = s.U.times_vec(b)
    y = [0] * M.n
    for i in range(M.m):
        d = s.diag[i] if i < len(s.diag) else 0
        if d:
            if c[i] % d:
                return None
            if i < M.n:
                y[i] = c[i] // d
        elif c[i]:
            return None
    return s.V.times_vec(y)


def solve_mixed(M, b, target_orders):
    """Solve M x = b in Z^m / (finite orders): target coordinate i is
    taken modulo target_orders[i] (0 meaning no reduction).  Returns x
    or None."""
    extra = []
    for i, o in enumerate(target_orders):
        if o:
            col = [0] * M.m
            col[i] = o
            extra.append(col)
    full = M.hstack(IntMat.from_cols(extra, M.m))
    sol = solve(full, b)
    if sol is None:
        return None
    return sol[:M.n]


# ---------------------------------------------------------------------------
# number-theoretic helpers

def pval(n, p):
    """p-adic valuation of a nonzero integer."""
    if n == 0:
        raise InternalConsistencyError("valuation of zero")
    n = abs(n)
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def ppart(n, p):
    return p ** pval(n, p) if n else 0


def invariant_factors_from_orders(orders):
    """Canonical invariant-factor chain of a direct sum of cyclic
    groups of the given orders (order 1 entries are dropped)."""
    per_prime = {}
    for d in orders:
        if d < 1:
            raise InternalConsistencyError("cyclic order must be >= 1")
        if d == 1:
            continue
        for p, e in factorint(d).items():
            per_prime.setdefault(p, []).append(e)
    depth = max((len(v) for v in per_prime.values()), default=0)
    factors = []
    for k in range(depth):
        f = 1
        for p in sorted(per_prime):
            exps = sorted(per_prime[p], reverse=True)
            if k < len(exps):
                f *= p ** exps[k]
        factors.append(f)
    return tuple(sorted(factors))


# ---------------------------------------------------------------------------
# finitely generated abelian groups

def _ring_prime(ring):
    if ring.startswith("Zp:"):
        return int(ring.split(":", 1)[1])
    return None


class FgAbGroup:
    """A finitely generated abelian group in invariant-factor form.

    ring: "Z" for honest integral answers, "Zp:<p>" when the free part
    means p-adic copies (p-completed answers), "" when no ring tag is
    meaningful.  Generators are ordered free part first, then torsion
    generators in ascending invariant-factor order.
    """

    __slots__ = ("ring", "free_rank", "torsion", "labels")

    def __init__(self, free_rank=0, torsion=(), labels=None, ring="Z"):
        self.ring = ring
        self.free_rank = int(free_rank)
        self.torsion = tuple(int(d) for d in torsion)
        if any(d < 2 for d in self.torsion):
            raise InternalConsistencyError("invariant factor < 2")
        for x, y in zip(self.torsion, self.torsion[1:]):
            if y % x:
                raise InternalConsistencyError(
                    "torsion %r is not a divisibility chain" % (self.torsion,))
        p = _ring_prime(ring)
        if p is not None:
            for d in self.torsion:
                if ppart(d, p) != d:
                    raise InternalConsistencyError(
                        "non-%d-power torsion in a %s group" % (p, ring))
        n = self.free_rank + len(self.torsion)
        if labels is None:
            labels = tuple("g%d" % i for i in range(n))
        else:
            labels = tuple(labels)
            if len(labels) != n:
                raise InternalConsistencyError("label count mismatch")
        self.labels = labels

    @property
    def n_gens(self):
        return self.free_rank + len(self.torsion)

    def gen_orders(self):
        return [0] * self.free_rank + list(self.torsion)

    def is_trivial(self):
        return self.n_gens == 0

    def order(self):
        """Group order; 0 if infinite."""
        if self.free_rank:
            return 0
        out = 1
        for d in self.torsion:
            out *= d
        return out

    def same_type(self, other):
        return (self.ring == other.ring
                and self.free_rank == other.free_rank
                and self.torsion == other.torsion)

    def reduce(self, vec):
        """Normal form of an element given in generator coordinates."""
        if len(vec) != self.n_gens:
            raise InternalConsistencyError("coordinate length mismatch")
        out = list(vec[:self.free_rank])
        for k, d in enumerate(self.torsion):
            out.append(vec[self.free_rank + k] % d)
        return tuple(out)

    def is_zero_vec(self, vec):
        return all(x == 0 for x in self.reduce(vec))

    def p_part(self, p):
        """p-primary part, tagged as a Zp group (free part completes)."""
        if _ring_prime(self.ring) not in (None, p):
            raise InternalConsistencyError("p_part of a %s group" % self.ring)
        torsion = []
        labels = list(self.labels[:self.free_rank])
        for k, d in enumerate(self.torsion):
            q = ppart(d, p)
            if q > 1:
                torsion.append(q)
                labels.append(self.labels[self.free_rank + k])
        return FgAbGroup(self.free_rank, torsion, labels, ring="Zp:%d" % p)

    def describe(self):
        if self.is_trivial():
            return "0"
        p = _ring_prime(self.ring)
        parts = []
        if self.free_rank:
            if p is None:
                parts.append("Z" if self.free_rank == 1 else
                             "Z^%d" % self.free_rank)
            else:
                parts.append("Z%d" % p if self.free_rank == 1 else
                             "Z%d^%d" % (p, self.free_rank))
        parts.extend("Z/%d" % d for d in self.torsion)
        return " + ".join(parts)

    def to_json(self):
        return {
            "ring": self.ring,
            "free_rank": self.free_rank,
            "torsion": list(self.torsion),
            "labels": list(self.labels),
        }

    def __repr__(self):
        return "FgAbGroup(%s)" % self.describe()


def group_from_orders(orders, free_rank=0, ring="Z", labels=None):
    """Group from an unordered list of finite cyclic orders."""
    return FgAbGroup(free_rank, invariant_factors_from_orders(orders),
                     labels, ring=ring)


def direct_sum_groups(groups, ring=None):
    """Direct sum in canonical form.  Labels are not preserved (use a
    Presentation when coordinate bookkeeping matters)."""
    if ring is None:
        rings = {g.ring for g in groups}
        ring = rings.pop() if len(rings) == 1 else "Z"
    free = sum(g.free_rank for g in groups)
    orders = [d for g in groups for d in g.torsion]
    return group_from_orders(orders, free_rank=free, ring=ring)


# ---------------------------------------------------------------------------
# finite presentations

class Presentation:
    """Z^n with optional finite generator orders, modulo the column
    span of a relation matrix; reduced to canonical invariant-factor
    form with both directions of the coordinate change recorded."""

    __slots__ = ("n_input", "group", "relations", "_U", "_Uinv",
                 "_out_index", "_orders")

    def __init__(self, gen_orders, relations, input_labels=None,
                 ring="Z", labels=None):
        n = len(gen_orders)
        if relations is None:
            relations = IntMat(n, 0)
        if relations.m != n:
            raise InternalConsistencyError("relation rows != generators")
        extra = []
        for i, o in enumerate(gen_orders):
            if o:
                col = [0] * n
                col[i] = o
                extra.append(col)
        full = relations.hstack(IntMat.from_cols(extra, n))
        self.n_input = n
        self.relations = full
        s = snf(full)
        self._U = s.U
        self._Uinv = s.Uinv
        diag = s.diag + [0] * (n - len(s.diag))
        free_idx = [i for i in range(n) if i >= s.rank]
        tors_idx = [i for i in range(s.rank) if diag[i] > 1]
        self._out_index = free_idx + tors_idx
        self._orders = [0] * len(free_idx) + [diag[i] for i in tors_idx]
        torsion = [diag[i] for i in tors_idx]
        if labels is None:
            labels = self._derive_labels(input_labels, len(free_idx),
                                         torsion)
        self.group = FgAbGroup(len(free_idx), torsion, labels, ring=ring)

    def _derive_labels(self, input_labels, n_free, torsion):
        if input_labels is None:
            input_labels = ["g%d" % i for i in range(self.n_input)]
        out = []
        seen = set()
        for j in range(n_free + len(torsion)):
            lab = derive_label(self.section(j), input_labels, "q%d" % j)
            if lab in seen:
                lab = "q%d" % j
            seen.add(lab)
            out.append(lab)
        return out

    def project(self, vec):
        """Canonical coordinates of the class of an input vector."""
        if len(vec) != self.n_input:
            raise InternalConsistencyError("input length mismatch")
        y = self._U.times_vec(vec)
        out = []
        for k, i in enumerate(self._out_index):
            o = self._orders[k]
            out.append(y[i] if o == 0 else y[i] % o)
        return tuple(out)

    def project_cols(self, M):
        """Canonical coordinates of the classes of all columns of M at
        once; same answers as project column by column."""
        if M.m != self.n_input:
            raise InternalConsistencyError("input length mismatch")
        rows = [self._U.a[i] for i in self._out_index]
        P = IntMat(len(rows), self.n_input, rows).mul(M)
        for k, o in enumerate(self._orders):
            if o:
                P.a[k] = [x % o for x in P.a[k]]
        return [tuple(P.col(j)) for j in range(P.n)]

    def section(self, j):
        """An input vector representing output generator j."""
        return self._Uinv.col(self._out_index[j])

    def check_kills(self, vec):
        if any(self.project(vec)):
            raise InternalConsistencyError(
                "vector expected to die in the quotient does not")


def derive_label(vec, input_labels, fallback):
    """Short combination label, or the fallback when messy."""
    terms = [(i, c) for i, c in enumerate(vec) if c]
    if not 1 <= len(terms) <= 2 or any(abs(c) > 2 for _, c in terms):
        return fallback
    bits = []
    for i, c in terms:
        s = input_labels[i]
        if c == 1:
            bits.append(s)
        elif c == -1:
            bits.append("-" + s)
        else:
            bits.append("%d*%s" % (c, s))
    out = bits[0]
    for s in bits[1:]:
        out += ("" if s.startswith("-") else "+") + s
    return out


class KernelPresentation:
    """Kernel of a map between finitely generated abelian groups given
    by generator orders (0 = free) and an integer matrix in generator
    coordinates.  Exposes the canonical form of the kernel, one
    representative per kernel generator, and coordinates for arbitrary
    kernel elements."""

    __slots__ = ("B", "source_orders", "lattice", "pres", "group")

    def __init__(self, B, source_orders, target_orders, input_labels=None):
        if B.n != len(source_orders) or B.m != len(target_orders):
            raise InternalConsistencyError("kernel shape mismatch")
        extra = []
        for i, o in enumerate(target_orders):
            if o:
                col = [0] * B.m
                col[i] = o
                extra.append(col)
        full = B.hstack(IntMat.from_cols(extra, B.m))
        KK = kernel_cols(full)
        xpart = IntMat(B.n, KK.n, KK.a[:B.n])
        # the preimage-of-zero subgroup of the source, as a lattice
        self.lattice = hnf_cols(xpart)
        rel_cols = []
        for i, o in enumerate(source_orders):
            if o:
                e = [0] * B.n
                e[i] = o
                col = solve(self.lattice, e)
                if col is None:
                    raise InternalConsistencyError(
                        "generator orders do not map to zero (map not "
                        "well defined)")
                rel_cols.append(col)
        self.B = B
        self.source_orders = list(source_orders)
        rels = IntMat.from_cols(rel_cols, self.lattice.n)
        self.pres = Presentation([0] * self.lattice.n, rels)
        g = self.pres.group
        labels = []
        if input_labels is None:
            input_labels = ["g%d" % i for i in range(B.n)]
        for j in range(g.n_gens):
            labels.append(derive_label(self.rep(j), input_labels, "k%d" % j))
        seen = set()
        final = []
        for j, lab in enumerate(labels):
            if lab in seen:
                lab = "k%d" % j
            seen.add(lab)
            final.append(lab)
        self.group = FgAbGroup(g.free_rank, g.torsion, final, ring=g.ring)

    def rep(self, j):
        """Source-coordinate vector of kernel generator j."""
        return self.lattice.times_vec(self.pres.section(j))

    def express(self, vec):
        """Coordinates of a kernel element; raises if vec is not in the
        kernel."""
        c = solve(self.lattice, vec)
        if c is None:
            raise InternalConsistencyError("vector is not in the kernel")
        return self.pres.project(c)


def induced_map(src, dst, F):
    """Matrix of the map src.group -> dst.group induced by the matrix
    F on input coordinates.  Verifies that F carries the relations of
    src into the relations of dst."""
    sec = IntMat.from_cols([src.section(j) for j in range(src.group.n_gens)],
                           src.n_input)
    out = dst.project_cols(F.mul(src.relations.hstack(sec)))
    nrel = src.relations.n
    for c in range(nrel):
        if any(out[c]):
            raise InternalConsistencyError(
                "map does not respect presentation relations")
    return IntMat.from_cols([list(col) for col in out[nrel:]],
                            dst.group.n_gens)


# ---------------------------------------------------------------------------
# maps between groups in canonical coordinates

def map_well_defined(phi, source, target):
    """phi columns = images of source generators in target coordinates."""
    t_orders = target.gen_orders()
    for j, o in enumerate(source.gen_orders()):
        if o == 0:
            continue
        for i, t in enumerate(t_orders):
            v = o * phi.a[i][j]
            if (t == 0 and v != 0) or (t != 0 and v % t):
                return False
    return True


def coker_type(M, gen_orders, ring="Z"):
    """Invariant-factor type of Z^m (with generator orders) modulo the
    columns of M."""
    return Presentation(gen_orders, M, ring=ring).group


def map_is_surjective(phi, target):
    """Whether phi (columns in target coordinates) hits all of target.
    Ring-aware: over Zp only the p-part must be hit."""
    cok = coker_type(phi, target.gen_orders(), ring="Z")
    if cok.free_rank:
        return False
    p = _ring_prime(target.ring)
    if p is None:
        return cok.order() == 1
    return all(d % p for d in cok.torsion)


def map_is_isomorphism(phi, source, target):
    """Iso test for a map between groups of identical type: well-defined
    plus surjective suffices (finitely generated groups are Hopfian)."""
    if not source.same_type(target):
        return False
    if not map_well_defined(phi, source, target):
        return False
    return map_is_surjective(phi, target)


def mat_mod_orders(M, gen_orders):
    """Normalize matrix entries modulo the row generator orders."""
    R = M.copy()
    for i, o in enumerate(gen_orders):
        if o:
            R.a[i] = [x % o for x in R.a[i]]
    return R
