"""Acceptance suite: one test per criterion, exact integers, wall-clock limits.

Each test prints a single ``PASS``/``FAIL`` line.  Run with::

    pytest tests/test_acceptance.py -v

or ``python3 tests/test_acceptance.py`` for just the summary lines.
"""

from __future__ import annotations

import time
from pathlib import Path

import numpy as np
import pytest
from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

from selfdual_f5 import codes, construction_a as ca, io, lattices, pipeline
from selfdual_f5.pipeline import CONTRADICTION, DIVERGENCE, PASS, STAGE_NAMES

ROOT = Path(__file__).resolve().parent.parent
FIXTURES = ROOT / "fixtures"
CERT_DIR = ROOT / "certificates"

_tables: dict = {}
_capsys = None


@pytest.fixture(autouse=True)
def _uncaptured(capsys):
    # summary lines go straight to the terminal, even under output capture
    global _capsys
    _capsys = capsys
    yield
    _capsys = None


def census(name: str) -> codes.CompositionTable:
    """Composition table of a fixture code, swept once per session."""
    if name not in _tables:
        _tables[name] = codes.sweep_compositions(io.read_code(FIXTURES / name))
    return _tables[name]


def fixture_codes():
    return sorted(p.name for p in FIXTURES.glob("*.code"))


def self_dual_fixtures(max_n=None):
    out = []
    for name in fixture_codes():
        C = io.read_code(FIXTURES / name)
        if codes.is_self_dual(C) and (max_n is None or C.n <= max_n):
            out.append(name)
    return out


def report(number: int, ok: bool, seconds: float, limit: float, detail: str) -> None:
    status = "PASS" if ok and seconds < limit else "FAIL"
    line = f"criterion {number}: {status}  ({seconds:.2f}s, limit {limit:g}s)  {detail}"
    if _capsys is not None:
        with _capsys.disabled():
            print("\n" + line, flush=True)
    else:
        print(line, flush=True)
    assert ok, line
    assert seconds < limit, line


def naive_min_and_kissing(L):
    counts = lattices.naive_short_vector_counts(L, 2)
    m = min(counts)
    return m, counts[m]


# ---------------------------------------------------------------------------


def test_criterion_1_construction_a_sanity():
    t0 = time.perf_counter()
    checks = []
    for gen, expect in (([[1, 2]], (1, 1, 4)), ([[1, 0, 2, 0], [0, 1, 0, 2]], (1, 1, 8))):
        L = ca.construction_a(codes.from_generator(gen)).lattice
        m, kiss = lattices._min_and_kissing(L)
        got = (lattices.determinant(L), m, kiss)
        checks.append(got == expect and naive_min_and_kissing(L) == expect[1:])
    dt = time.perf_counter() - t0
    report(1, all(checks), dt, 1, "A5 of (1,2) code: det 1, min 1, kissing 4; A5 of [I|2I]: min 1, kissing 8")


def test_criterion_2_d12plus_invariants():
    t0 = time.perf_counter()
    P = lattices.dn_plus(12)
    p = (lattices.is_even(P), lattices.determinant(P), *lattices._min_and_kissing(P))
    E = lattices.dn_plus(8)
    e = (lattices.is_even(E), lattices.determinant(E), *lattices._min_and_kissing(E))
    dt = time.perf_counter() - t0
    ok = p == (False, 1, 2, 264) and e == (True, 1, 2, 240)
    report(2, ok, dt, 10, f"D12+ (even, det, min, kiss) = {p}; D8+ = {e}")


def test_criterion_3_d12plus_squared():
    t0 = time.perf_counter()
    P = lattices.dn_plus(12)
    S = lattices.direct_sum(P, P)
    m, kiss = lattices._min_and_kissing(S)
    comps = lattices.decompose(S)
    parts = [(c.dim, lattices.kissing_number(c)) for c in comps]
    dt = time.perf_counter() - t0
    ok = (m, kiss) == (2, 528) and parts == [(12, 264), (12, 264)]
    report(3, ok, dt, 30, f"D12+ + D12+: min {m}, kissing {kiss}; components (dim, kissing) {parts}")


def test_criterion_4_singleton_gap():
    t0 = time.perf_counter()
    bound = codes.singleton_bound(12, 6)
    weights = [codes.minimum_weight(codes.random_self_dual(12, s)) for s in range(100)]
    dt = time.perf_counter() - t0
    ok = bound == 7 and bound < 10 and max(weights) <= 7
    report(4, ok, dt, 10, f"singleton_bound(12,6) = {bound}; max weight over 100 length-12 codes = {max(weights)}")


def test_criterion_5_theta_two_paths():
    t0 = time.perf_counter()
    names = self_dual_fixtures(max_n=12)
    bad = []
    for name in names:
        C = io.read_code(FIXTURES / name)
        a = ca.theta_from_compositions(census(name), 5)
        b = lattices.theta_series(ca.construction_a(C).lattice, 5)
        if a != b:
            bad.append((name, a, b))
    dt = time.perf_counter() - t0
    report(5, not bad and len(names) >= 4, dt, 60, f"{len(names)} fixtures {names}; mismatches {bad}")


def test_criterion_6_macwilliams_fixed_point():
    names = self_dual_fixtures()
    sweep_t0 = time.perf_counter()
    tables = {name: census(name) for name in names}
    sweep_dt = time.perf_counter() - sweep_t0
    t0 = time.perf_counter()
    bad = []
    for name, T in tables.items():
        W = codes.hamming_enumerator(T)
        if codes.macwilliams_transform(W, T.n // 2) != W:
            bad.append(name)
    dt = time.perf_counter() - t0
    report(6, not bad, dt, 5,
           f"{len(names)} self-dual fixtures fixed by the transform; failures {bad}; census sweeps took {sweep_dt:.1f}s")


def _recovers(C1, C2) -> bool:
    C = codes.direct_sum(C1, C2)
    stages, ctx = pipeline.run_stages(C, STAGE_NAMES[3:6], trace_all=True)
    supports = [ctx["assignment"].indices_of(b) for b in range(len(ctx["blocks"]))]
    if not ctx["assignment"].ok:
        return False
    # each side may itself split; regroup the component codes per side
    for side, target in ((range(C1.n), C1), (range(C1.n, C.n), C2)):
        side = list(side)
        parts = [(s, cc) for s, cc in zip(supports, ctx["component_codes"]) if set(s) <= set(side)]
        if sorted(j for s, _ in parts for j in s) != side:
            return False
        G = np.zeros((sum(cc.k for _, cc in parts), len(side)), dtype=np.int64)
        r = 0
        for s, cc in parts:
            for row in cc.generator.data:
                G[r, [side.index(j) for j in s]] = row
                r += 1
        if codes.from_generator(G) != target:
            return False
    return True


def test_criterion_7_direct_sum_round_trip():
    t0 = time.perf_counter()
    rng = np.random.default_rng(7)
    failures = []
    trials = 60
    for t in range(trials):
        n1, n2 = 2 * rng.integers(1, 5, size=2)
        C1 = codes.random_self_dual(int(n1), 2 * t)
        C2 = codes.random_self_dual(int(n2), 2 * t + 1)
        if not _recovers(C1, C2):
            failures.append((int(n1), int(n2), t))
    dt = time.perf_counter() - t0
    report(7, not failures, dt, 60, f"{trials} pairs of lengths 2-8 recovered by stages 4-6; failures {failures}")


def test_criterion_8_full_scale():
    C = io.read_code(FIXTURES / "random24.code")
    t0 = time.perf_counter()
    T = codes.sweep_compositions(C)
    sweep_dt = time.perf_counter() - t0
    _tables["random24.code"] = T
    t0 = time.perf_counter()
    summary = pipeline.search(100, 0, 24, certificate_dir=CERT_DIR)
    search_dt = time.perf_counter() - t0
    ok_sweep = T.total == 5**12
    ok_search = summary.best_minimum_weight <= 9 and not summary.at_least_10
    detail = (f"full sweep {T.total} codewords in {sweep_dt:.1f}s; search 100 trials ({search_dt:.1f}s) "
              f"best d = {summary.best_minimum_weight}, trials with d >= 10: {summary.at_least_10}")
    if summary.at_least_10:
        detail += f"; certificates written to {CERT_DIR}"
    report(8, ok_sweep and ok_search, sweep_dt, 600, detail)


# hypothetical candidates: a code plus a census claimed to come from a [24,12,10] code
_hypothetical = st.builds(
    lambda s1, s2, extra: (s1, s2, extra),
    st.integers(0, 50),
    st.integers(0, 50),
    st.dictionaries(st.sampled_from([(13, 11, 0), (12, 12, 0), (11, 13, 0), (14, 9, 1)]), st.integers(0, 9000), max_size=2),
)


@settings(max_examples=15, deadline=None, derandomize=True, suppress_health_check=list(HealthCheck))
@given(_hypothetical)
def _hypothetical_never_silent(case):
    s1, s2, extra = case
    C = codes.direct_sum(codes.random_self_dual(12, s1), codes.random_self_dual(12, s2))
    counts = {(24, 0, 0): 1, (14, 10, 0): 528, **extra}
    ctx = {"code": C, "table": codes.CompositionTable(24, counts)}
    stages, _ = pipeline.run_stages(C, STAGE_NAMES[2:], ctx=ctx, trace_all=True)
    assert pipeline.conclude([PASS, PASS] + [s.verdict for s in stages]) in (CONTRADICTION, DIVERGENCE)


def test_criterion_9_refutation_end_to_end():
    t0 = time.perf_counter()
    results = {}
    problems = {}
    for name in fixture_codes():
        C = io.read_code(FIXTURES / name)
        rep = pipeline.refute_candidate(C)
        back = pipeline.RefutationReport.from_json(rep.to_json())
        issues = pipeline.validate_report(back, C)
        if back != rep:
            issues.append("json round trip changed the report")
        results[name] = rep.conclusion
        if issues:
            problems[name] = issues
    expected = {
        "random24.code": pipeline.MIN_WEIGHT_BELOW,
        "sum12x2.code": pipeline.MIN_WEIGHT_BELOW,
        "notselfdual24.code": pipeline.NOT_SELF_DUAL,
        "c21.code": pipeline.NOT_SELF_DUAL,
    }
    ok = not problems and all(results[k] == v for k, v in expected.items())
    ok = ok and all(results[n] in (pipeline.NOT_SELF_DUAL, pipeline.MIN_WEIGHT_BELOW) for n in results)
    try:
        _hypothetical_never_silent()
        prop = "hypothetical candidates all reach contradiction-derived or divergence"
    except AssertionError as exc:
        ok, prop = False, f"hypothetical candidate passed silently: {exc}"
    dt = time.perf_counter() - t0
    report(9, ok, dt, 900, f"conclusions {results}; certificate problems {problems}; {prop}")


if __name__ == "__main__":
    raise SystemExit(pytest.main([__file__, "-q", "-s", "-p", "no:cacheprovider"]))
