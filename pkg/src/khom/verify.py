"""Verification suites.

Five named suites, each a list of pass/fail cases:

  oracle     closed-form kernels and cokernels against the integer
             Smith-form oracle, strong comparison via the recorded
             basis change
  axioms     Mackey axiom checks across every kind of answer the
             library emits on small groups
  golden     the fully worked degree-1 functor over C4, row by row
  tensor     orbit-lattice tensor law A/J(C_m) (x) A/J(C_n) = A/J(C_mn)
  crosspath  integer grading against constant-representation grading

`run_suite` dispatches by name ("all" concatenates the five).
"""

from __future__ import annotations

from math import gcd

from sympy import factorint
from sympy.utilities.iterables import partitions

from khom.abgroups import (CoprimeSplit, FinAbGroup, full_subgroup, primes_of,
                           subgroups, sylow_decompose)
from khom.assemble import assemble_over_complement, pi_integral, pi_mod_p, \
    pi_ro_graded
from khom.burnside import a_mod_j_mackey, cyclic_quotient_subgroups
from khom.errors import ParseError
from khom.kcoeff import kercoker_closed, kercoker_functors, kercoker_isos
from khom.linalg import IntMat, Presentation, induced_map
from khom.mackey import compare_strong, external_tensor
from khom.theta import pi_odd_assembly, pi_odd_functor, pi_zero_functor

SUITES = ("oracle", "axioms", "golden", "tensor", "crosspath")

TWO_GROUPS_16 = ("e", "C2", "C4", "C2xC2", "C8", "C2xC4", "C2xC2xC2",
                 "C16", "C2xC8", "C4xC4", "C2xC2xC4", "C2xC2xC2xC2")
ODD_GROUPS_27 = {3: ("e", "C3", "C9", "C3xC3", "C27", "C3xC9", "C3xC3xC3"),
                 5: ("e", "C5", "C25")}
ORACLE_DEGREES = range(-16, 18)
CROSSPATH_GROUPS = ("C6", "C10", "C2xC2xC3")
CROSSPATH_DEGREES = range(-4, 10)


class Case:
    __slots__ = ("name", "ok", "detail")

    def __init__(self, name, ok, detail=""):
        self.name = name
        self.ok = bool(ok)
        self.detail = detail

    def line(self):
        mark = "ok  " if self.ok else "FAIL"
        out = "%s  %s" % (mark, self.name)
        if self.detail and not self.ok:
            out += "  [%s]" % self.detail
        return out


class SuiteReport:
    __slots__ = ("suite", "cases")

    def __init__(self, suite, cases):
        self.suite = suite
        self.cases = list(cases)

    @property
    def ok(self):
        return all(c.ok for c in self.cases)

    @property
    def failures(self):
        return [c for c in self.cases if not c.ok]

    def lines(self, verbose=False):
        out = []
        for c in self.cases:
            if verbose or not c.ok:
                out.append(c.line())
        out.append("suite %s: %d/%d cases pass"
                   % (self.suite, len(self.cases) - len(self.failures),
                      len(self.cases)))
        return out


def abelian_shapes(m):
    """Cyclic-factor tuples of every abelian group of order m, one per
    isomorphism class (prime-power factors, largest first)."""
    shapes = [()]
    for p, e in sorted(factorint(m).items()):
        pparts = []
        for part in partitions(e):
            factors = []
            for k in sorted(part, reverse=True):
                factors += [p ** k] * part[k]
            pparts.append(tuple(factors))
        shapes = [s + q for s in shapes for q in pparts]
    return shapes


def abelian_groups_upto(bound):
    out = []
    for m in range(1, bound + 1):
        for orders in abelian_shapes(m):
            out.append(FinAbGroup(orders))
    return out


# ---------------------------------------------------------------------------
# oracle

def _oracle_case(G, n, p):
    k1, c1, lv1 = kercoker_functors(G, n, p, "closed")
    k2, c2, lv2 = kercoker_functors(G, n, p, "oracle")
    ok_k, m_k = compare_strong(k1, k2, kercoker_isos(lv1, lv2, "ker"))
    ok_c, m_c = compare_strong(c1, c2, kercoker_isos(lv1, lv2, "coker"))
    detail = "; ".join((m_k + m_c)[:2])
    return Case("%s p=%d n=%d closed=oracle" % (G.name(), p, n),
                ok_k and ok_c, detail)


def suite_oracle():
    """Closed forms against the Smith-form oracle: abelian 2-groups of
    order <= 16 and 3-/5-groups of order <= 27, degrees -16..17."""
    cases = []
    for name in TWO_GROUPS_16:
        G = FinAbGroup.from_string(name)
        for n in ORACLE_DEGREES:
            cases.append(_oracle_case(G, n, 2))
    for p, names in sorted(ODD_GROUPS_27.items()):
        for name in names:
            G = FinAbGroup.from_string(name)
            for n in ORACLE_DEGREES:
                cases.append(_oracle_case(G, n, p))
    return SuiteReport("oracle", cases)


# ---------------------------------------------------------------------------
# axioms

def _axiom_case(name, M):
    rep = M.check_axioms()
    return Case(name, rep.ok, "; ".join(rep.violations[:2]))


def suite_axioms():
    """check_axioms over every kind of emitted functor on small groups:
    kernel/cokernel pairs, glued degree-0 and odd-degree answers, mod-p
    and integral assemblies, orbit lattices, and a representation-graded
    sample."""
    cases = []
    # kernel/cokernel functors on the oracle-suite groups of order <= 24
    for p, names in ((2, TWO_GROUPS_16),
                     (3, ("e", "C3", "C9", "C3xC3")),
                     (5, ("e", "C5"))):
        for name in names:
            G = FinAbGroup.from_string(name)
            for n in ORACLE_DEGREES:
                ker, cok, _lv = kercoker_functors(G, n, p, "closed")
                cases.append(_axiom_case(
                    "ker %s p=%d n=%d" % (name, p, n), ker))
                cases.append(_axiom_case(
                    "coker %s p=%d n=%d" % (name, p, n), cok))
    # glued degree-0 and degree-(8d+1) answers over the 2-groups
    for name in TWO_GROUPS_16:
        G = FinAbGroup.from_string(name)
        cases.append(_axiom_case("pi0 %s" % name, pi_zero_functor(G)))
        cases.append(_axiom_case("pi(8d+1) %s d=0" % name,
                                 pi_odd_functor(G, 0)))
    # orbit lattice and integral degree 0 over every abelian group <= 24
    for G in abelian_groups_upto(24):
        cases.append(_axiom_case("A/J %s" % G.name(), a_mod_j_mackey(G)))
        cases.append(_axiom_case("integral k=0 %s" % G.name(),
                                 pi_integral(G, 0).result))
    # mod-p answers over the cross-path trio
    for name in CROSSPATH_GROUPS:
        G = FinAbGroup.from_string(name)
        for p in (2, 3):
            for n in CROSSPATH_DEGREES:
                cases.append(_axiom_case(
                    "modp %s p=%d n=%d" % (name, p, n), pi_mod_p(G, p, n)))
    # integral answers at the trivial group (image-of-J degrees)
    e = FinAbGroup(())
    for k in (1, 2, 3, 7, 8, 11, 15):
        cases.append(_axiom_case("integral k=%d e" % k,
                                 pi_integral(e, k).result))
    # a representation-graded sample mixing two degree classes
    C6 = FinAbGroup.from_string("C6")
    cases.append(_axiom_case("ro C6 p=2 c0", pi_ro_graded(C6, 2, "c0")))
    return SuiteReport("axioms", cases)


# ---------------------------------------------------------------------------
# golden: the worked degree-1 functor over C4

def _unit_part(kc, j):
    v = [0] * len(kc.basis.items)
    v[j] = 1
    return list(kc.coker_project(v))


def golden_rows():
    """The published row list for the degree-1 functor over C4: level
    shapes and every restriction/transfer value on the named classes.
    Returns (checks, M) where each check is (name, computed, stated)."""
    G = FinAbGroup.from_string("C4")
    Se, S2, S4 = subgroups(G)
    M = pi_odd_functor(G, 0)
    ge, g2, g4 = M.level(Se), M.level(S2), M.level(S4)
    lve, lv2, lv4 = (pi_odd_assembly(S, 0) for S in (Se, S2, S4))
    kce, kc2, kc4 = (kercoker_closed(S, 2, 2) for S in (Se, S2, S4))

    a = lve.a_class([1])
    b = lve.part_class(_unit_part(kce, 0))
    a1 = lv2.a_class([0, 1])
    ae = lv2.a_class([1, 1])
    b1 = lv2.part_class(_unit_part(kc2, 0))
    be = lv2.part_class(_unit_part(kc2, 1))
    A1 = lv4.a_class([0, 0, 1])
    As = lv4.a_class([0, 1, 1])
    B1 = lv4.part_class(_unit_part(kc4, 0))
    Bs = lv4.part_class(_unit_part(kc4, 1))
    c = lv4.part_class(_unit_part(kc4, 2))

    def add(group, *vecs):
        out = [0] * group.n_gens
        for v in vecs:
            for i, x in enumerate(v):
                out[i] += x
        return tuple(group.reduce(out))

    def ap(mat, x, group):
        return tuple(group.reduce(mat.times_vec(list(x))))

    res21, tr12 = M.res(Se, S2), M.tr(Se, S2)
    res42, tr24 = M.res(S2, S4), M.tr(S2, S4)

    checks = [
        ("level e = (Z/2)^2", tuple(ge.gen_orders()), (2, 2)),
        ("level C2 = (Z/2)^4", tuple(g2.gen_orders()), (2, 2, 2, 2)),
        ("level C4 = (Z/2)^4 + Z/4", tuple(g4.gen_orders()),
         (2, 2, 2, 2, 4)),
        ("Res^C2_e(a_1) = a", ap(res21, a1, ge), tuple(ge.reduce(a))),
        ("Res^C2_e(a_eps) = a", ap(res21, ae, ge), tuple(ge.reduce(a))),
        ("Res^C2_e(b_1) = b", ap(res21, b1, ge), tuple(ge.reduce(b))),
        ("Res^C2_e(b_eps) = b", ap(res21, be, ge), tuple(ge.reduce(b))),
        ("Res^C4_C2(A_1) = a_1", ap(res42, A1, g2), tuple(g2.reduce(a1))),
        ("Res^C4_C2(A_sig) = a_1", ap(res42, As, g2), tuple(g2.reduce(a1))),
        ("Res^C4_C2(B_1) = b_1", ap(res42, B1, g2), tuple(g2.reduce(b1))),
        ("Res^C4_C2(B_sig) = b_1", ap(res42, Bs, g2), tuple(g2.reduce(b1))),
        ("Res^C4_C2(c) = b_eps", ap(res42, c, g2), tuple(g2.reduce(be))),
        ("Tr^C2_e(a) = a_1 + a_eps", ap(tr12, a, g2), add(g2, a1, ae)),
        ("Tr^C2_e(b) = b_1 + b_eps", ap(tr12, b, g2), add(g2, b1, be)),
        ("Tr^C4_C2(a_1) = A_1 + A_sig", ap(tr24, a1, g4), add(g4, A1, As)),
        ("Tr^C4_C2(b_1) = B_1 + B_sig", ap(tr24, b1, g4), add(g4, B1, Bs)),
        ("Tr^C4_C2(b_eps) = 0", ap(tr24, be, g4),
         tuple(g4.reduce([0] * 5))),
        ("Tr^C4_C2(a_eps) = 2c", ap(tr24, ae, g4),
         add(g4, [2 * x for x in c])),
    ]
    return checks, M


GOLDEN_DISCREPANCY = ("Tr^C4_C2(a_eps) = 2c")
GOLDEN_NOTE = ("computed value is 2c plus both eta^2 classes B_1 + B_sig; "
               "the extra term is forced by transfer consistency inside "
               "C2xC4 and the published row cannot be realized by any "
               "renaming of generators")


def suite_golden():
    """Row-by-row check of the worked C4 degree-1 table.  One published
    transfer row disagrees with the axiom-consistent functor; the case
    list reports it as a failure with the computed value."""
    checks, M = golden_rows()
    cases = []
    for name, got, want in checks:
        detail = "" if got == want else (
            "computed %r, stated %r%s"
            % (got, want,
               "; " + GOLDEN_NOTE if name == GOLDEN_DISCREPANCY else ""))
        cases.append(Case(name, got == want, detail))
    cases.append(_axiom_case("C4 degree-1 functor axioms", M))
    return SuiteReport("golden", cases)


# ---------------------------------------------------------------------------
# tensor law for the orbit lattice

def _free_pres(level):
    return Presentation(level.gen_orders(), None, ring=level.ring)


def tensor_case(m, n):
    G = FinAbGroup([m * n])
    split = CoprimeSplit(G, primes_of(m))
    target = a_mod_j_mackey(G)
    tens, tpres = external_tensor(a_mod_j_mackey(split.P),
                                  a_mod_j_mackey(split.N), split)
    isos = []
    for i, S in enumerate(subgroups(G)):
        SP = split.subgroup_to_p(S)
        SN = split.subgroup_to_n(S)
        cqP = cyclic_quotient_subgroups(SP)
        cqN = cyclic_quotient_subgroups(SN)
        cqS = {H.key: r for r, H in
               enumerate(cyclic_quotient_subgroups(S))}
        F = IntMat(len(cqS), len(cqP) * len(cqN))
        for ip, H0 in enumerate(cqP):
            for jn, L0 in enumerate(cqN):
                row = cqS[split.subgroup_from_parts(H0, L0).key]
                F.a[row][ip * len(cqN) + jn] = 1
        isos.append(induced_map(tpres[i], _free_pres(target.levels[i]), F))
    ok, msgs = compare_strong(tens, target, isos)
    return Case("A/J(C%d) (x) A/J(C%d) = A/J(C%d)" % (m, n, m * n), ok,
                "; ".join(msgs[:2]))


def suite_tensor():
    """Orbit-lattice tensor law over coprime cyclic factors, product
    order <= 36, matched along the product-subgroup correspondence."""
    cases = []
    for m in range(2, 19):
        for n in range(m + 1, 37):
            if m * n <= 36 and gcd(m, n) == 1:
                cases.append(tensor_case(m, n))
    return SuiteReport("tensor", cases)


# ---------------------------------------------------------------------------
# cross-path: integer degree vs constant representation degree

def crosspath_case(G, p, n):
    A, _pres, _layout = assemble_over_complement(G, p, lambda H: n)
    B = pi_ro_graded(G, p, "%d*r0" % n)
    isos = [IntMat.identity(lv.n_gens) for lv in A.levels]
    ok, msgs = compare_strong(A, B, isos)
    ok = ok and A.check_axioms().ok and B.check_axioms().ok
    return Case("%s p=%d n=%d integer=ro" % (G.name(), p, n), ok,
                "; ".join(msgs[:2]))


def suite_crosspath():
    """pi_ro_graded at n copies of the trivial representation equals
    pi_mod_p in degree n, strongly, on the three mixed-order groups."""
    cases = []
    for name in CROSSPATH_GROUPS:
        G = FinAbGroup.from_string(name)
        for p in (2, 3):
            for n in CROSSPATH_DEGREES:
                cases.append(crosspath_case(G, p, n))
    return SuiteReport("crosspath", cases)


# ---------------------------------------------------------------------------

_SUITE_FNS = {
    "oracle": suite_oracle,
    "axioms": suite_axioms,
    "golden": suite_golden,
    "tensor": suite_tensor,
    "crosspath": suite_crosspath,
}


def run_suite(name):
    """Run one named suite, or all of them; returns a list of
    SuiteReport."""
    if name == "all":
        return [fn() for _n, fn in sorted(_SUITE_FNS.items())]
    if name not in _SUITE_FNS:
        raise ParseError("unknown suite %r (choose from %s or all)"
                         % (name, ", ".join(sorted(_SUITE_FNS))))
    return [_SUITE_FNS[name]()]
