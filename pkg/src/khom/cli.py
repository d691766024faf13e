"""Command-line front end.

One query form plus four subcommands:

  khom --group C4 --mode kumodp --prime 2 --degree 1 --format json
  khom verify oracle|axioms|golden|tensor|crosspath|all
  khom list-irreps --group C6
  khom burnside-table --group C4
  khom kercoker --group C4 --prime 2 --degree 2 --method both

Exit codes: 0 success, 1 verify-suite failure, 2 unusable query,
3 group over the size bound (KHOM_SIZE_BOUND), 4 internal
inconsistency (a mismatch between methods or a violated identity).
JSON output is sorted and printed identically for identical queries.
"""

from __future__ import annotations

import argparse
import json
import sys

from .abgroups import (FinAbGroup, full_subgroup, subgroups,
                       sylow_decompose)
from .assemble import (graded_mod_p, graded_ro, pi_integral,
                       pi_integral_completed_zero)
from .burnside import linearization_matrix, mark_table
from .errors import InternalConsistencyError, ParseError, SizeBoundError
from .kcoeff import kercoker_functors, kercoker_isos
from .mackey import compare_strong, compare_weak
from .reps import REAL, irrep_labels, real_irreps
from .theta import pi0_assembly, pi_odd_assembly
from .verify import SUITES, run_suite


def _json_dumps(doc):
    return json.dumps(doc, sort_keys=True, indent=2)


def _parse_group(s):
    if s is None:
        raise ParseError("--group is required")
    return FinAbGroup.from_string(s)


# ---------------------------------------------------------------------------
# the main query

def _query_parser():
    p = argparse.ArgumentParser(
        prog="khom",
        description="Graded homotopy Mackey functors of K-local spheres "
                    "over finite abelian groups.")
    p.add_argument("--group", required=True,
                   help="group string, e.g. e, C4, C2xC12")
    p.add_argument("--mode", choices=("ku", "kumodp", "ro"), default="ku",
                   help="integral, mod-p, or representation-graded")
    p.add_argument("--prime", type=int,
                   help="the prime (required for kumodp and ro)")
    p.add_argument("--degree", type=int, help="integer degree k")
    p.add_argument("--rep",
                   help="virtual representation, e.g. '2*r0 - c1' "
                        "(required for ro; see khom list-irreps)")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--method", choices=("closed", "oracle", "both"),
                   default="closed",
                   help="closed forms, the Smith-form oracle, or both "
                        "with a consistency check")
    p.add_argument("--show-relations", action="store_true",
                   help="also print the gluing relations of the levels "
                        "(degrees 0 and 1 mod 8 at p=2)")
    p.add_argument("--completed", action="store_true",
                   help="2-complete the free part (mode ku, degree 0)")
    return p


def _check_query(args):
    if args.mode == "ku":
        if args.prime is not None:
            raise ParseError("--prime does not apply to mode ku")
        if args.rep is not None:
            raise ParseError("--rep does not apply to mode ku")
        if args.degree is None:
            raise ParseError("mode ku needs --degree")
        if args.completed and args.degree != 0:
            raise ParseError("--completed applies to degree 0 only")
    else:
        if args.prime is None:
            raise ParseError("mode %s needs --prime" % args.mode)
        if args.completed:
            raise ParseError("--completed applies to mode ku only")
        if args.mode == "kumodp":
            if args.degree is None:
                raise ParseError("mode kumodp needs --degree")
            if args.rep is not None:
                raise ParseError("--rep does not apply to mode kumodp")
        else:
            if args.rep is None:
                raise ParseError("mode ro needs --rep")
            if args.degree is not None:
                raise ParseError("--degree does not apply to mode ro")


def _answer(args, G, method):
    if args.mode == "kumodp":
        return graded_mod_p(G, args.prime, args.degree, method)
    if args.mode == "ro":
        return graded_ro(G, args.prime, args.rep, method)
    if args.completed:
        return pi_integral_completed_zero(G)
    return pi_integral(G, args.degree, method)


def _both_methods(args, G):
    a = _answer(args, G, "closed")
    b = _answer(args, G, "oracle")
    if a.symbolic or b.symbolic:
        return a, "symbolic degree; methods coincide"
    ok, msgs = compare_weak(a.result, b.result)
    if not ok:
        raise InternalConsistencyError(
            "closed and oracle methods disagree: " + "; ".join(msgs[:4]))
    return a, "closed and oracle methods agree on all invariant factors"


def run_query(argv):
    args = _query_parser().parse_args(argv)
    _check_query(args)
    G = _parse_group(args.group)
    if args.method == "both":
        ans, note = _both_methods(args, G)
        ans.provenance["method_check"] = note
    else:
        ans = _answer(args, G, args.method)
    if args.format == "json":
        print(_json_dumps(ans.to_json()))
    else:
        for line in _text_lines(ans, G, args):
            print(line)
    return 0


# ---------------------------------------------------------------------------
# text rendering

def _mat_lines(M, indent="  "):
    if M.m == 0 or M.n == 0:
        return [indent + "(empty %dx%d)" % (M.m, M.n)]
    widths = [max(len(str(M.a[i][j])) for i in range(M.m))
              for j in range(M.n)]
    out = []
    for i in range(M.m):
        row = " ".join(str(M.a[i][j]).rjust(widths[j]) for j in range(M.n))
        out.append(indent + "[" + row + "]")
    return out


def _describe_query(ans, G):
    mode = ans.mode
    bits = ["group %s" % G.name(), "mode %s" % mode["mode"]]
    if "p" in mode:
        bits.append("p=%d" % mode["p"])
    if "k" in mode:
        bits.append("degree %d" % mode["k"])
    if "rep" in mode:
        bits.append("rep %s" % mode["rep"])
    if mode.get("completed"):
        bits.append("completed")
    return "  ".join(bits)


def _text_lines(ans, G, args):
    lines = [_describe_query(ans, G)]
    for key in sorted(ans.provenance):
        val = ans.provenance[key]
        if isinstance(val, (str, list)):
            lines.append("note %s: %s" % (key, val))
    if ans.symbolic:
        lines.append("")
        lines.append(ans.result.describe())
        for name, rank in zip(ans.result.names, ans.result.ranks):
            lines.append("  %s: rank %d at every prime" % (name, rank))
        return lines
    M = ans.result
    subs = M.subs if hasattr(M, "subs") else subgroups(G)
    lines.append("")
    for i, S in enumerate(subs):
        lv = M.levels[i]
        lines.append("level S%d (order %d): %s" % (i, S.order,
                                                   lv.describe()))
        if lv.n_gens:
            lines.append("  generators: " + ", ".join(lv.labels))
    pairs = [(iT, iK) for iK in range(len(subs)) for iT in range(len(subs))
             if iT != iK and subs[iT].le(subs[iK])]
    for iT, iK in pairs:
        lines.append("")
        lines.append("res S%d<S%d:" % (iT, iK))
        lines += _mat_lines(M.res_idx(iT, iK))
        lines.append("tr S%d<S%d:" % (iT, iK))
        lines += _mat_lines(M.tr_idx(iT, iK))
    if args.show_relations:
        lines += _relation_lines(ans, G, args)
    return lines


def _relation_terms(col, labels):
    terms = []
    for x, lab in zip(col, labels):
        if x == 0:
            continue
        mag = "" if abs(x) == 1 else "%d*" % abs(x)
        terms.append(("-" if x < 0 else "+") + mag + lab)
    if not terms:
        return "0"
    head = terms[0][1:] if terms[0][0] == "+" else terms[0]
    return " ".join([head] + terms[1:])


def _relation_lines(ans, G, args):
    """Gluing relations of the 2-part levels, for the degree classes
    that have them (0 and 1 mod 8)."""
    mode = ans.mode
    k = mode.get("k")
    if mode["mode"] == "ro" or k is None or k % 8 not in (0, 1) or (
            mode["mode"] == "kumodp" and mode.get("p") != 2):
        return ["", "no gluing relations in this degree"]
    if k % 8 == 1:
        def assemble(S):
            return pi_odd_assembly(S, (k - 1) // 8)
    elif k == 0:
        completed = mode["mode"] != "ku" or mode.get("completed", False)

        def assemble(S):
            return pi0_assembly(S, completed=completed)
    else:
        # 0 mod 8 but nonzero: plain cokernel, nothing glued
        return ["", "no gluing relations in this degree"]
    split = sylow_decompose(G, 2)
    out = ["", "gluing relations over the 2-part %s:" % split.P.name()]
    for S in subgroups(split.P):
        lv = assemble(S)
        labels = _assembly_input_labels(lv, k)
        # the presentation appends one order column per finite input
        # order; the gluing columns come first
        n_order = lv.n_part if k == 0 else lv.n_a + lv.n_part
        n_glue = lv.pres.relations.n - n_order
        out.append("  at %s (order %d):" % (_orbit_name(S), S.order))
        if n_glue <= 0:
            out.append("    none")
        for c in range(n_glue):
            out.append("    0 = " + _relation_terms(
                lv.pres.relations.col(c), labels))
    return out


def _assembly_input_labels(lv, k):
    from .kcoeff import kercoker_closed, ko_pi
    from .theta import _orbit_labels
    if k == 0:
        eta = ko_pi(lv.K, 1)
        return _orbit_labels(lv.K) + [it.label for it in eta.items]
    kc = kercoker_closed(lv.K, k + 1, 2)
    return _orbit_labels(lv.K) + list(kc.coker.labels)


def _orbit_name(S):
    d = S.decomp
    if not d.orders:
        return "e"
    return "x".join("C%d" % o for o in d.orders)


# ---------------------------------------------------------------------------
# subcommands

def cmd_verify(argv):
    p = argparse.ArgumentParser(prog="khom verify")
    p.add_argument("suite", choices=SUITES + ("all",))
    p.add_argument("--verbose", action="store_true",
                   help="print every case, not only failures")
    args = p.parse_args(argv)
    reports = run_suite(args.suite)
    ok = True
    for rep in reports:
        for line in rep.lines(verbose=args.verbose):
            print(line)
        ok = ok and rep.ok
    print("verify %s: %s" % (args.suite, "PASS" if ok else "FAIL"))
    return 0 if ok else 1


def cmd_list_irreps(argv):
    p = argparse.ArgumentParser(prog="khom list-irreps")
    p.add_argument("--group", required=True)
    p.add_argument("--format", choices=("text", "json"), default="text")
    args = p.parse_args(argv)
    G = _parse_group(args.group)
    K = full_subgroup(G)
    rows = []
    for lab, irr in zip(irrep_labels(K), real_irreps(K)):
        rows.append({
            "label": lab,
            "type": "real" if irr.kind == REAL else "complex-pair",
            "dim": 1 if irr.kind == REAL else 2,
            "exponents": list(irr.rep.exps),
        })
    if args.format == "json":
        print(_json_dumps({"group": G.name(), "irreps": rows}))
    else:
        print("real irreducibles of %s  (syntax: '2*r0 + c1 - 3*r1')"
              % G.name())
        for r in rows:
            print("  %-4s %-12s dim %d  exponents %r"
                  % (r["label"], r["type"], r["dim"],
                     tuple(r["exponents"])))
    return 0


def cmd_burnside_table(argv):
    p = argparse.ArgumentParser(prog="khom burnside-table")
    p.add_argument("--group", required=True)
    args = p.parse_args(argv)
    G = _parse_group(args.group)
    K = full_subgroup(G)
    subs = subgroups(G)
    marks = mark_table(K)
    lin = linearization_matrix(K)
    doc = {
        "group": G.name(),
        "subgroups": [{"name": "S%d" % i, "order": S.order}
                      for i, S in enumerate(subs)],
        "marks": {
            "rows": "fixed-point subgroup T",
            "cols": "orbit [G/H]",
            "matrix": [row[:] for row in marks.a],
        },
        "linearization": {
            "rows": "complex character index",
            "cols": "orbit [G/H]",
            "matrix": [row[:] for row in lin.a],
        },
    }
    print(_json_dumps(doc))
    return 0


def cmd_kercoker(argv):
    p = argparse.ArgumentParser(prog="khom kercoker")
    p.add_argument("--group", required=True)
    p.add_argument("--prime", type=int, required=True)
    p.add_argument("--degree", type=int, required=True)
    p.add_argument("--method", choices=("closed", "oracle", "both"),
                   default="both")
    p.add_argument("--format", choices=("text", "json"), default="text")
    args = p.parse_args(argv)
    G = _parse_group(args.group)
    methods = ("closed", "oracle") if args.method == "both" else (
        args.method,)
    results = {}
    levels = {}
    for m in methods:
        ker, cok, lv = kercoker_functors(G, args.degree, args.prime, m)
        results[m] = (ker, cok)
        levels[m] = lv
    verdict = None
    if args.method == "both":
        ok_k, m_k = compare_strong(
            results["closed"][0], results["oracle"][0],
            kercoker_isos(levels["closed"], levels["oracle"], "ker"))
        ok_c, m_c = compare_strong(
            results["closed"][1], results["oracle"][1],
            kercoker_isos(levels["closed"], levels["oracle"], "coker"))
        verdict = bool(ok_k and ok_c)
    doc = {"group": G.name(), "p": args.prime, "degree": args.degree}
    for m in methods:
        ker, cok = results[m]
        doc[m] = {"ker": ker.to_json(), "coker": cok.to_json()}
    if verdict is not None:
        doc["match"] = verdict
    if args.format == "json":
        print(_json_dumps(doc))
    else:
        print("ker/coker of psi-1: group %s  p=%d  degree %d"
              % (G.name(), args.prime, args.degree))
        subs = subgroups(G)
        for m in methods:
            ker, cok = results[m]
            print("method %s:" % m)
            for i, S in enumerate(subs):
                print("  S%d (order %d): ker %s  coker %s"
                      % (i, S.order, ker.levels[i].describe(),
                         cok.levels[i].describe()))
        if verdict is not None:
            print("match verdict: %s"
                  % ("methods agree" if verdict else "MISMATCH"))
    if verdict is False:
        raise InternalConsistencyError(
            "closed and oracle kernels/cokernels disagree: "
            + "; ".join((m_k + m_c)[:4]))
    return 0


_SUBCOMMANDS = {
    "verify": cmd_verify,
    "list-irreps": cmd_list_irreps,
    "burnside-table": cmd_burnside_table,
    "kercoker": cmd_kercoker,
}


def main(argv=None):
    argv = list(sys.argv[1:]) if argv is None else list(argv)
    try:
        if argv and argv[0] in _SUBCOMMANDS:
            return _SUBCOMMANDS[argv[0]](argv[1:])
        return run_query(argv)
    except ParseError as exc:
        print("error: %s" % exc, file=sys.stderr)
        print("usage: khom --group G --mode {ku,kumodp,ro} [--prime p] "
              "[--degree k] [--rep V] [--format text|json]\n"
              "       khom {verify,list-irreps,burnside-table,kercoker} ...",
              file=sys.stderr)
        return 2
    except SizeBoundError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 3
    except InternalConsistencyError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 4


if __name__ == "__main__":
    sys.exit(main())
