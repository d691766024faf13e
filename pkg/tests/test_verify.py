"""Verification suites: enumeration helper, case bookkeeping, and the
fast suites end to end (the worked C4 table, tensor law, cross-path)."""

import pytest

from khom.abgroups import FinAbGroup
from khom.errors import ParseError
from khom.verify import (Case, GOLDEN_DISCREPANCY, SuiteReport,
                         abelian_groups_upto, abelian_shapes, golden_rows,
                         run_suite, suite_crosspath, suite_golden,
                         suite_tensor, tensor_case, _oracle_case)


def test_abelian_shapes_counts():
    assert abelian_shapes(1) == [()]
    assert sorted(abelian_shapes(4)) == [(2, 2), (4,)]
    assert len(abelian_shapes(8)) == 3
    assert len(abelian_shapes(16)) == 5
    assert len(abelian_shapes(32)) == 7
    assert len(abelian_shapes(36)) == 4
    assert len(abelian_shapes(30)) == 1


def test_abelian_groups_upto_counts():
    assert len(abelian_groups_upto(24)) == 37
    assert len(abelian_groups_upto(36)) == 62
    names = [G.name() for G in abelian_groups_upto(6)]
    assert names == ["e", "C2", "C3", "C4", "C2xC2", "C5", "C2xC3"]


def test_case_and_report_formatting():
    r = SuiteReport("demo", [Case("good", True), Case("bad", False, "why")])
    assert not r.ok
    assert len(r.failures) == 1
    lines = r.lines()
    assert lines[0] == "FAIL  bad  [why]"
    assert lines[-1] == "suite demo: 1/2 cases pass"
    assert any("good" in l for l in r.lines(verbose=True))


def test_run_suite_rejects_unknown_names():
    with pytest.raises(ParseError):
        run_suite("bogus")


def test_oracle_single_cases():
    for name, n, p in (("C4", 2, 2), ("C2xC2", 9, 2), ("C9", 5, 3),
                       ("C5", -3, 5)):
        case = _oracle_case(FinAbGroup.from_string(name), n, p)
        assert case.ok, case.detail


def test_golden_suite_fails_on_exactly_one_published_row():
    rep = suite_golden()
    bad = rep.failures
    assert len(bad) == 1
    assert bad[0].name == GOLDEN_DISCREPANCY
    assert "B_1 + B_sig" in bad[0].detail
    # every other published row and the axiom check pass
    assert len(rep.cases) == 19


def test_golden_rows_cover_all_published_maps():
    checks, M = golden_rows()
    names = [name for name, _g, _w in checks]
    assert sum(1 for n in names if n.startswith("Res")) == 9
    assert sum(1 for n in names if n.startswith("Tr")) == 6
    assert sum(1 for n in names if n.startswith("level")) == 3
    assert M.check_axioms().ok


def test_tensor_suite_passes():
    rep = suite_tensor()
    assert rep.ok, [c.line() for c in rep.failures]
    assert len(rep.cases) == 19


def test_tensor_case_order_is_symmetric():
    assert tensor_case(4, 9).ok
    assert tensor_case(9, 4).ok
    assert tensor_case(2, 15).ok


def test_crosspath_suite_passes():
    rep = suite_crosspath()
    assert rep.ok, [c.line() for c in rep.failures]
    assert len(rep.cases) == 3 * 2 * 14
