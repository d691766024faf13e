"""Command-line front end: queries, subcommands, exit codes, and output
determinism."""

import json

import pytest

from khom.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_query_text_mode(capsys):
    code, out, _ = run(capsys, "--group", "C4", "--mode", "kumodp",
                       "--prime", "2", "--degree", "1")
    assert code == 0
    assert "level S0 (order 1): Z/2 + Z/2" in out
    assert "level S2 (order 4): Z/2 + Z/2 + Z/2 + Z/2 + Z/4" in out
    assert "res S0<S1:" in out and "tr S1<S2:" in out


def test_query_json_is_byte_deterministic(capsys):
    args = ("--group", "C2xC6", "--mode", "kumodp", "--prime", "2",
            "--degree", "1", "--format", "json")
    _, out1, _ = run(capsys, *args)
    _, out2, _ = run(capsys, *args)
    assert out1 == out2
    doc = json.loads(out1)
    assert doc["mode"] == {"mode": "kumodp", "p": 2, "k": 1}
    assert "levels" in doc["result"] and "res" in doc["result"]


def test_integral_degree_minus_one_is_zero(capsys):
    code, out, _ = run(capsys, "--group", "e", "--mode", "ku",
                       "--degree", "-1")
    assert code == 0
    assert "level S0 (order 1): 0" in out


def test_symbolic_degree_minus_two_shape(capsys):
    code, out, _ = run(capsys, "--group", "C6", "--mode", "ku",
                       "--degree", "-2", "--format", "json")
    assert code == 0
    doc = json.loads(out)
    assert "symbolic" in doc["result"]
    assert doc["result"]["symbolic"]["rank_per_level"]["S3"] == 4


def test_ro_query_matches_integer_degree_json(capsys):
    _, ro, _ = run(capsys, "--group", "C2xC3", "--mode", "ro", "--prime",
                   "2", "--rep", "2*r0", "--format", "json")
    _, modp, _ = run(capsys, "--group", "C2xC3", "--mode", "kumodp",
                     "--prime", "2", "--degree", "2", "--format", "json")
    assert json.loads(ro)["result"] == json.loads(modp)["result"]


def test_method_both_records_the_check(capsys):
    code, out, _ = run(capsys, "--group", "C10", "--mode", "ku",
                       "--degree", "3", "--method", "both", "--format",
                       "json")
    assert code == 0
    doc = json.loads(out)
    assert "agree" in doc["provenance"]["method_check"]


def test_show_relations_prints_gluing_rows(capsys):
    code, out, _ = run(capsys, "--group", "C2xC2", "--mode", "ku",
                       "--degree", "0", "--show-relations")
    assert code == 0
    assert "gluing relations over the 2-part C2xC2:" in out
    assert "0 = [S4/S0]" in out
    code, out, _ = run(capsys, "--group", "C4", "--mode", "kumodp",
                       "--prime", "2", "--degree", "1", "--show-relations")
    assert code == 0
    assert "-2*beta^1*orb[S0]" in out
    code, out, _ = run(capsys, "--group", "C4", "--mode", "kumodp",
                       "--prime", "2", "--degree", "2", "--show-relations")
    assert "no gluing relations in this degree" in out


def test_completed_flag(capsys):
    code, out, _ = run(capsys, "--group", "C6", "--mode", "ku",
                       "--degree", "0", "--completed", "--format", "json")
    assert code == 0
    doc = json.loads(out)
    assert doc["mode"]["completed"] is True


# ---------------------------------------------------------------------------
# exit codes

def test_incompatible_flags_exit_2(capsys):
    assert run(capsys, "--group", "C4", "--mode", "kumodp",
               "--degree", "1")[0] == 2
    assert run(capsys, "--group", "C4", "--mode", "ro",
               "--prime", "2")[0] == 2
    assert run(capsys, "--group", "C4", "--mode", "ku", "--degree", "1",
               "--prime", "2")[0] == 2
    assert run(capsys, "--group", "C4", "--mode", "ku", "--degree", "3",
               "--completed")[0] == 2
    assert run(capsys, "--group", "C4", "--mode", "ku")[0] == 2


def test_bad_group_and_rep_exit_2(capsys):
    assert run(capsys, "--group", "Q8", "--mode", "ku",
               "--degree", "1")[0] == 2
    assert run(capsys, "--group", "C6", "--mode", "ro", "--prime", "2",
               "--rep", "z9")[0] == 2


def test_nonprime_exits_2(capsys):
    assert run(capsys, "--group", "C6", "--mode", "kumodp", "--prime",
               "6", "--degree", "1")[0] == 2


def test_size_bound_exit_3(capsys, monkeypatch):
    monkeypatch.setenv("KHOM_SIZE_BOUND", "4")
    assert run(capsys, "--group", "C8", "--mode", "ku",
               "--degree", "3")[0] == 3


def test_unknown_flag_exits_2(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["--group", "C4", "--mode", "ku", "--degree", "1",
              "--frobnicate"])
    assert exc.value.code == 2


# ---------------------------------------------------------------------------
# subcommands

def test_verify_tensor_passes(capsys):
    code, out, _ = run(capsys, "verify", "tensor")
    assert code == 0
    assert "verify tensor: PASS" in out


def test_verify_golden_reports_the_known_row(capsys):
    code, out, _ = run(capsys, "verify", "golden")
    assert code == 1
    assert "FAIL  Tr^C4_C2(a_eps) = 2c" in out
    assert "18/19" in out


def test_verify_rejects_unknown_suite(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["verify", "everything"])
    assert exc.value.code == 2


def test_list_irreps(capsys):
    code, out, _ = run(capsys, "list-irreps", "--group", "C6")
    assert code == 0
    assert "r0" in out and "c1" in out and "complex-pair" in out
    code, out, _ = run(capsys, "list-irreps", "--group", "C6",
                       "--format", "json")
    doc = json.loads(out)
    assert [r["label"] for r in doc["irreps"]] == ["r0", "r1", "c0", "c1"]


def test_burnside_table_json(capsys):
    code, out, _ = run(capsys, "burnside-table", "--group", "C4")
    assert code == 0
    doc = json.loads(out)
    marks = doc["marks"]["matrix"]
    assert marks[0] == [4, 2, 1]
    assert len(doc["linearization"]["matrix"]) == 4


def test_kercoker_subcommand(capsys):
    code, out, _ = run(capsys, "kercoker", "--group", "C4", "--prime",
                       "2", "--degree", "2")
    assert code == 0
    assert "match verdict: methods agree" in out
    code, out, _ = run(capsys, "kercoker", "--group", "C4", "--prime",
                       "2", "--degree", "2", "--format", "json")
    doc = json.loads(out)
    assert doc["match"] is True
    assert "ker" in doc["closed"] and "coker" in doc["oracle"]
