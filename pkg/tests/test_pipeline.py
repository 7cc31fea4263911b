import json
from pathlib import Path

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from selfdual_f5 import cli, codes, io, lattices, pipeline
from selfdual_f5.codes import from_generator, random_self_dual
from selfdual_f5.pipeline import (
    CONTRADICTION,
    DIVERGENCE,
    FAIL,
    NOT_REACHED,
    PASS,
    STAGE_NAMES,
    RefutationReport,
    Stage,
    conclude,
    refute_candidate,
    validate_report,
)

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"
C21 = from_generator([[1, 2]])

verdicts = st.sampled_from([PASS, FAIL, NOT_REACHED])


@given(st.lists(verdicts, min_size=5, max_size=5))
def test_candidates_passing_first_two_stages_never_pass_silently(rest):
    assert conclude([PASS, PASS] + rest) in (CONTRADICTION, DIVERGENCE)


@given(st.lists(verdicts, min_size=7, max_size=7))
def test_conclusion_follows_first_failure(vs):
    c = conclude(vs)
    if c == CONTRADICTION:
        assert vs == [PASS] * 7
    if vs[0] == FAIL:
        assert c == pipeline.NOT_SELF_DUAL
    elif vs[0] == PASS and vs[1] == FAIL:
        assert c == pipeline.MIN_WEIGHT_BELOW


def test_stage_one_rejects_wrong_length():
    rep = refute_candidate(C21)
    assert [s.name for s in rep.stages] == list(STAGE_NAMES)
    assert rep.stages[0].verdict == FAIL
    assert all(s.verdict == NOT_REACHED for s in rep.stages[1:])
    assert rep.conclusion == pipeline.NOT_SELF_DUAL
    assert rep.stages[0].certificate["n"] == 2 and rep.stages[0].certificate["self_dual"]
    assert validate_report(rep, C21) == []


def test_not_self_dual_fixture():
    C = io.read_code(FIXTURES / "notselfdual24.code")
    rep = refute_candidate(C)
    assert rep.conclusion == pipeline.NOT_SELF_DUAL
    assert rep.stages[0].certificate["self_dual"] is False
    assert validate_report(rep, C) == []


def test_report_json_roundtrip():
    rep = refute_candidate(C21, trace_all=True)
    back = RefutationReport.from_json(rep.to_json())
    assert back == rep
    assert json.loads(back.to_json()) == rep.to_dict()


@settings(max_examples=30)
@given(st.lists(st.tuples(st.sampled_from(STAGE_NAMES), verdicts, st.dictionaries(st.text(max_size=5), st.integers())), max_size=7))
def test_report_json_roundtrip_property(items):
    rep = RefutationReport([Stage(n, v, c) for n, v, c in items], conclude([v for _, v, _ in items]))
    assert RefutationReport.from_json(rep.to_json()) == rep


def test_validate_report_catches_tampering():
    C = io.read_code(FIXTURES / "sd12.code")
    stages, _ = pipeline.run_stages(C, STAGE_NAMES[:2], trace_all=True)
    # fill the remaining names so the shape matches
    stages += [Stage(n, NOT_REACHED) for n in STAGE_NAMES[2:]]
    rep = RefutationReport(stages, conclude([s.verdict for s in stages]))
    assert rep.conclusion == pipeline.NOT_SELF_DUAL
    assert validate_report(rep, C) == []
    bad = RefutationReport.from_dict(rep.to_dict())
    bad.conclusion = CONTRADICTION
    assert validate_report(bad, C)
    w = stages[1].certificate["witness"]
    assert C.contains(w)
    bad = RefutationReport.from_dict(rep.to_dict())
    bad.stage("minimum-weight-10").certificate["witness"] = [1] + [0] * (C.n - 1)
    assert validate_report(bad, C)


def test_trace_all_on_split_code():
    C = io.read_code(FIXTURES / "sum12x2.code")
    rep = refute_candidate(C, trace_all=True)
    assert rep.conclusion == pipeline.MIN_WEIGHT_BELOW
    s2 = rep.stage("minimum-weight-10").certificate
    assert s2["minimum_weight"] < 10 and C.contains(s2["witness"])
    # the later stages still run and split the code 12 / 12
    assert rep.stage("unit-vector-claim").certificate["split"] == [12, 12]
    assert rep.stage("component-codes-self-dual").certificate["self_dual"] == [True, True]
    assert rep.stage("singleton-contradiction").certificate["singleton_bound"] == 7
    assert validate_report(rep, C) == []


def test_hypothetical_candidate_is_never_silent():
    # pretend stages 1-2 passed and feed stage 3 a census with the forced data
    C = io.read_code(FIXTURES / "sum12x2.code")
    table = codes.CompositionTable(24, {(24, 0, 0): 1, (14, 10, 0): 528})
    ctx = {"code": C, "table": table}
    stages, _ = pipeline.run_stages(C, STAGE_NAMES[2:], ctx=ctx, trace_all=True)
    assert stages[0].verdict == PASS
    assert conclude([PASS, PASS] + [s.verdict for s in stages]) in (CONTRADICTION, DIVERGENCE)


def test_verify_preliminaries():
    rep = pipeline.verify_preliminaries(seed=3, trials=5)
    assert rep.conclusion == "pass"
    assert rep.stage("d12plus-odd-unimodular").certificate["kissing"] == 264
    assert rep.stage("d12plus-squared").certificate["kissing"] == 528
    assert rep.stage("singleton-12-6").certificate["bound"] == 7


def test_search_small_length_is_deterministic():
    a = pipeline.search(30, 5, 12)
    b = pipeline.search(30, 5, 12)
    assert a == b
    assert a.best_minimum_weight <= 7
    assert sum(a.exact_histogram.values()) + sum(a.bound_histogram.values()) == 30
    C = from_generator(a.best_generator)
    assert codes.is_self_dual(C) and codes.minimum_weight(C) == a.best_minimum_weight
    assert pipeline.search(30, 6, 12) != a


def test_search_errors():
    with pytest.raises(ValueError):
        pipeline.search(0, 0, 12)
    with pytest.raises(ValueError):
        pipeline.search(1, 0, 11)
    with pytest.raises(pipeline.BudgetExceeded):
        pipeline.search(50, 0, 12, budget_seconds=0.0)


# ---------------------------------------------------------------------------
# file formats


@settings(max_examples=30)
@given(st.integers(1, 6).flatmap(lambda n: st.lists(st.lists(st.integers(0, 4), min_size=n, max_size=n), min_size=1, max_size=4)))
def test_code_file_roundtrip(rows):
    C = from_generator(rows)
    assert io.parse_code(io.format_code(C)) == C


def test_gram_file_roundtrip(tmp_path):
    for L in (lattices.dn_plus(12), lattices.zn(3), lattices.GramLattice([[2, 1], [1, 2]])):
        path = tmp_path / "x.gram"
        io.write_gram(L, path, "a comment")
        back = io.read_gram(path)
        assert back.same_gram(L) and back.scale == L.scale
    assert io.read_gram(FIXTURES / "d12plus.gram").same_gram(lattices.dn_plus(12))


@pytest.mark.parametrize(
    "text",
    ["", "5 2", "5 2 1\n1 2 3", "5 2 2\n1 2", "5 2 2\n1 2\n2 4", "4 2 1\n1 2", "5 2 1\n1 x"],
)
def test_code_format_errors(text):
    with pytest.raises(io.FormatError):
        io.parse_code(text)


@pytest.mark.parametrize(
    "text",
    ["", "2\n1 0", "2\n1 0\n0", "2\n1 0\n0 1\nbasis\n1 0\n0 1", "2\n1 0\n0 1\nbasis 1\n1 0", "2\n1 2\n2 1"],
)
def test_gram_format_errors(text):
    with pytest.raises(io.FormatError):
        io.parse_gram(text)


# ---------------------------------------------------------------------------
# command line


def run_cli(capsys, *argv):
    code = cli.main(list(argv))
    return code, capsys.readouterr()


def test_cli_code_info(capsys):
    code, out = run_cli(capsys, "code-info", str(FIXTURES / "c21.code"))
    assert code == 0 and "hamming_enumerator: x^2 + 4y^2" in out.out
    code, out = run_cli(capsys, "code-info", str(FIXTURES / "c21.code"), "--json")
    assert json.loads(out.out)["minimum_weight"]["lee"] == 3


def test_cli_lattice_info(capsys):
    code, out = run_cli(capsys, "lattice-info", str(FIXTURES / "d12plus_sum.gram"), "--json")
    info = json.loads(out.out)
    assert code == 0 and (info["min_norm"], info["kissing"], info["det"]) == (2, 528, 1)
    assert info["theta"][:3] == [1, 0, 528]


def test_cli_construction_a(capsys, tmp_path):
    out_path = tmp_path / "c21.gram"
    code, _ = run_cli(capsys, "construction-a", str(FIXTURES / "c21.code"), "--out", str(out_path))
    assert code == 0
    assert io.read_gram(out_path).gram.tolist() == [[1, 2], [2, 5]]
    code, _ = run_cli(capsys, "construction-a", str(FIXTURES / "notselfdual24.code"), "--out", str(out_path))
    assert code == 1


def test_cli_refute_and_verify(capsys):
    code, out = run_cli(capsys, "refute", str(FIXTURES / "c21.code"), "--json")
    assert code == 0 and json.loads(out.out)["conclusion"] == pipeline.NOT_SELF_DUAL
    code, out = run_cli(capsys, "verify-preliminaries")
    assert code == 0 and "overall: pass" in out.out


def test_cli_search(capsys, tmp_path):
    best = tmp_path / "best.code"
    code, out = run_cli(capsys, "search", "--trials", "5", "--length", "8", "--out", str(best), "--json",
                        "--certificate-dir", str(tmp_path / "certs"))
    summary = json.loads(out.out)
    assert code == 0 and summary["trials"] == 5
    assert codes.minimum_weight(io.read_code(best)) == summary["best_minimum_weight"]


def test_cli_usage_and_parse_errors(capsys, tmp_path):
    assert run_cli(capsys, "no-such-command")[0] == 1
    assert run_cli(capsys)[0] == 1
    assert run_cli(capsys, "refute", str(tmp_path / "missing.code"))[0] == 1
    bad = tmp_path / "bad.code"
    bad.write_text("5 2 1\n1 2 3\n")
    assert run_cli(capsys, "refute", str(bad))[0] == 1
    assert run_cli(capsys, "search", "--length", "7")[0] == 1
