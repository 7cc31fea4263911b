"""Refutation pipeline for candidate self-dual [24,12,10] codes over F5.

``refute_candidate`` walks the proof of nonexistence stage by stage on a
concrete generator matrix and records, per stage, a verdict and an exact
certificate that other modules can re-check.  Any real input stops at the
first failing stage; the conclusion names that stage's outcome.
"""

from __future__ import annotations

import json
import logging
import time
from dataclasses import asdict, dataclass, field
from pathlib import Path

import numpy as np

from . import codes, construction_a as ca, lattices
from .codes import LinearCode

log = logging.getLogger(__name__)

LENGTH, DIMENSION, TARGET_WEIGHT = 24, 12, 10
HALF = LENGTH // 2
EXPECTED_MIN_NORM, EXPECTED_KISSING = 2, 528
D12PLUS_KISSING = 264

PASS, FAIL, NOT_REACHED = "pass", "fail", "not-reached"

NOT_SELF_DUAL = "not-self-dual"
MIN_WEIGHT_BELOW = "min-weight-below-10"
CONTRADICTION = "contradiction-derived"
DIVERGENCE = "paper-step-divergence"

STAGE_NAMES = (
    "self-dual-24-12",
    "minimum-weight-10",
    "kissing-528",
    "decompose-two-d12plus",
    "unit-vector-claim",
    "component-codes-self-dual",
    "singleton-contradiction",
)


@dataclass
class Stage:
    name: str
    verdict: str
    certificate: dict = field(default_factory=dict)


@dataclass
class RefutationReport:
    stages: list
    conclusion: str

    def to_dict(self) -> dict:
        return {"conclusion": self.conclusion, "stages": [asdict(s) for s in self.stages]}

    def to_json(self, **kw) -> str:
        return json.dumps(self.to_dict(), **kw)

    @classmethod
    def from_dict(cls, d: dict) -> "RefutationReport":
        return cls([Stage(**s) for s in d["stages"]], d["conclusion"])

    @classmethod
    def from_json(cls, text: str) -> "RefutationReport":
        return cls.from_dict(json.loads(text))

    def stage(self, name: str) -> Stage:
        return next(s for s in self.stages if s.name == name)


def conclude(verdicts: list[str]) -> str:
    """Conclusion determined by the first failing stage (fixed proof order)."""
    for idx, v in enumerate(verdicts):
        if v == FAIL:
            if idx == 0:
                return NOT_SELF_DUAL
            if idx == 1:
                return MIN_WEIGHT_BELOW
            return DIVERGENCE
        if v != PASS:
            # a stage may only be skipped after an earlier failure
            return DIVERGENCE
    return CONTRADICTION


# ---------------------------------------------------------------------------
# stages; each takes the shared context and returns (verdict, certificate)


def _stage_self_dual(ctx):
    C: LinearCode = ctx["code"]
    gram = (C.generator.data @ C.generator.data.T) % C.p if C.k else np.zeros((0, 0))
    cert = {
        "p": C.p,
        "n": C.n,
        "k": C.k,
        "gram_mod_p_zero": not np.any(gram),
        "self_dual": codes.is_self_dual(C),
    }
    ok = C.p == 5 and C.n == LENGTH and C.k == DIMENSION and cert["self_dual"]
    return ok, cert


def _stage_min_weight(ctx):
    C: LinearCode = ctx["code"]
    table = codes.sweep_compositions(C, allow_large=ctx.get("allow_large", False))
    ctx["table"] = table
    d = codes.minimum_weight_from_table(table, "hamming")
    cert = {"minimum_weight": d, "codewords": table.total}
    if d < TARGET_WEIGHT:
        w = codes.low_weight_codeword(C, d)
        cert["witness"] = [int(x) for x in w]
        cert["witness_weight"] = int(np.count_nonzero(w))
    return d >= TARGET_WEIGHT, cert


def _stage_kissing(ctx):
    table = ctx["table"]
    m, kiss = ca.kissing_from_compositions(table)
    lee = codes.lee_enumerator(table)
    cert = {
        "min_norm": m,
        "kissing": kiss,
        "lee_coefficient_x14_y10": lee.coefficient(LENGTH - TARGET_WEIGHT, TARGET_WEIGHT),
        # codewords whose minimal lift has norm 2, by composition (n1, n2)
        "euclidean_10_compositions": {
            f"{n1},{n2}": c for (n0, n1, n2), c in sorted(table.counts.items()) if n1 + 4 * n2 == 10
        },
    }
    return (m, kiss) == (EXPECTED_MIN_NORM, EXPECTED_KISSING), cert


def _stage_decompose(ctx):
    C: LinearCode = ctx["code"]
    lat = ca.construction_a(C).lattice
    ctx["lattice"] = lat
    comps = lattices.decompose(lat)
    ctx["components"] = comps
    # blocks: components joined where their coordinate supports overlap
    ctx["blocks"] = ca.merge_by_support(comps)
    summary = []
    for comp in comps:
        m, kiss = lattices._min_and_kissing(comp)
        summary.append(
            {"dim": comp.dim, "det": lattices.determinant(comp), "min_norm": m, "kissing": kiss,
             "even": lattices.is_even(comp)}
        )
    cert = {"lattice_det": lattices.determinant(lat), "components": summary,
            "coordinate_blocks": len(ctx["blocks"])}
    expected = {"dim": HALF, "det": 1, "min_norm": 2, "kissing": D12PLUS_KISSING, "even": False}
    return len(comps) == 2 and all(s == expected for s in summary), cert


def _stage_unit_vectors(ctx):
    comps = ctx["blocks"]
    assign = ca.unit_vector_assignment(comps, ctx["code"].n)
    ctx["assignment"] = assign
    per_comp = [assign.indices_of(c) for c in range(len(comps))]
    cert = {"owners": [list(o) for o in assign.owners], "split": [len(s) for s in per_comp]}
    return assign.ok and sorted(cert["split"]) == [HALF, HALF], cert


def _stage_component_codes(ctx):
    C: LinearCode = ctx["code"]
    comps, assign = ctx["blocks"], ctx["assignment"]
    supports = [assign.indices_of(c) for c in range(len(comps))]
    comp_codes = [ca.component_code(comp, sup) for comp, sup in zip(comps, supports)]
    ctx["component_codes"] = comp_codes
    # C must equal the direct sum of the component codes placed on their supports
    perm = [j for sup in supports for j in sup]
    recombined = comp_codes[0]
    for cc in comp_codes[1:]:
        recombined = codes.direct_sum(recombined, cc)
    ok_sum = len(perm) == C.n and codes.permute(C, perm) == recombined
    cert = {
        "supports": supports,
        "generators": [cc.generator.tolist() for cc in comp_codes],
        "parameters": [[cc.n, cc.k] for cc in comp_codes],
        "self_dual": [codes.is_self_dual(cc) for cc in comp_codes],
        "direct_sum_equals_code": bool(ok_sum),
    }
    ok = ok_sum and len(comp_codes) == 2 and all(cert["self_dual"]) and all(cc.n == HALF for cc in comp_codes)
    return ok, cert


def _stage_singleton(ctx):
    comp_codes = ctx["component_codes"]
    bound = codes.singleton_bound(HALF, HALF // 2)
    cert = {
        "singleton_bound": bound,
        "required_minimum_weight": TARGET_WEIGHT,
        "component_parameters": [[cc.n, cc.k] for cc in comp_codes],
        "component_singleton_bounds": [codes.singleton_bound(cc.n, cc.k) for cc in comp_codes],
        # measured only where a sweep is cheap
        "component_minimum_weights": [
            codes.minimum_weight(cc) if 0 < cc.k <= 8 else None for cc in comp_codes
        ],
    }
    # every component codeword is a codeword of C, so each needs weight >= 10
    return bound < TARGET_WEIGHT, cert


_STAGES = (
    _stage_self_dual,
    _stage_min_weight,
    _stage_kissing,
    _stage_decompose,
    _stage_unit_vectors,
    _stage_component_codes,
    _stage_singleton,
)

# context keys each stage needs from its predecessors
_NEEDS = ({"code"}, {"code"}, {"table"}, {"code"}, {"blocks"}, {"assignment"}, {"component_codes"})


def run_stages(
    C: LinearCode,
    names=STAGE_NAMES,
    *,
    trace_all: bool = False,
    allow_large: bool = False,
    ctx: dict | None = None,
) -> tuple[list[Stage], dict]:
    """Run the named stages (in proof order) and return them with the shared context."""
    ctx = {"code": C, "allow_large": allow_large} if ctx is None else ctx
    stages = []
    failed = False
    for name, fn, needs in zip(STAGE_NAMES, _STAGES, _NEEDS):
        if name not in names:
            continue
        if (failed and not trace_all) or not needs <= ctx.keys():
            stages.append(Stage(name, NOT_REACHED))
            continue
        t0 = time.perf_counter()
        try:
            ok, cert = fn(ctx)
        except (lattices.LatticeError, ca.SupportMismatchError, ca.NotSelfOrthogonalError,
                codes.SweepBudgetError) as exc:
            ok, cert = False, {"error": f"{type(exc).__name__}: {exc}"}
        log.info("stage %s: %s (%.2fs)", name, PASS if ok else FAIL, time.perf_counter() - t0)
        stages.append(Stage(name, PASS if ok else FAIL, cert))
        failed = failed or not ok
    return stages, ctx


def refute_candidate(C: LinearCode, *, trace_all: bool = False, allow_large: bool = False) -> RefutationReport:
    """Run the proof stages on ``C`` in order.

    By default the run stops at the first failing stage.  ``trace_all`` keeps
    executing later stages (where their inputs exist) for diagnostics; the
    conclusion is still fixed by the first failure.
    """
    stages, _ = run_stages(C, trace_all=trace_all, allow_large=allow_large)
    return RefutationReport(stages, conclude([s.verdict for s in stages]))


def validate_report(report: RefutationReport, C: LinearCode) -> list[str]:
    """Re-check every certificate against independent computations; returns problems."""
    problems = []
    verdicts = [s.verdict for s in report.stages]
    if [s.name for s in report.stages] != list(STAGE_NAMES):
        problems.append("stage order differs from the proof order")
    if conclude(verdicts) != report.conclusion:
        problems.append("conclusion does not follow from the first failing stage")
    if report.conclusion == CONTRADICTION and any(v != PASS for v in verdicts[:6]):
        problems.append("contradiction claimed without stages 1-6 passing")

    s1 = report.stage("self-dual-24-12")
    if s1.certificate:
        if (s1.certificate["n"], s1.certificate["k"]) != (C.n, C.k):
            problems.append("stage 1: parameters do not match the code")
        if s1.certificate["self_dual"] != codes.is_self_dual(C):
            problems.append("stage 1: self-duality flag wrong")

    s2 = report.stage("minimum-weight-10")
    if "witness" in s2.certificate:
        w = s2.certificate["witness"]
        if not C.contains(w):
            problems.append("stage 2: witness is not a codeword")
        wt = int(np.count_nonzero(np.asarray(w) % 5))
        if wt != s2.certificate["witness_weight"] or wt != s2.certificate["minimum_weight"] or wt == 0:
            problems.append("stage 2: witness weight mismatch")

    s3 = report.stage("kissing-528")
    if s3.certificate and "min_norm" in s3.certificate:
        lat = ca.construction_a(C).lattice
        m = s3.certificate["min_norm"]
        rep = lattices.short_vectors(lat, m)
        if min(rep.counts_by_norm) != m or rep.count(m) != s3.certificate["kissing"]:
            problems.append("stage 3: kissing data not reproduced by lattice enumeration")

    s6 = report.stage("component-codes-self-dual")
    if s6.certificate and "generators" in s6.certificate:
        for sup, gen in zip(s6.certificate["supports"], s6.certificate["generators"]):
            sub = codes.from_generator(np.array(gen, dtype=np.int64).reshape(-1, len(sup)))
            for row in sub.generator.data:
                word = np.zeros(C.n, dtype=np.int64)
                word[sup] = row
                if not C.contains(word):
                    problems.append("stage 6: component codeword not in the code")
                    break

    s7 = report.stage("singleton-contradiction")
    if s7.certificate:
        if s7.certificate["singleton_bound"] != codes.singleton_bound(HALF, HALF // 2):
            problems.append("stage 7: Singleton bound misreported")
        for w, b in zip(s7.certificate["component_minimum_weights"], s7.certificate["component_singleton_bounds"]):
            if w is not None and w > b:
                problems.append("stage 7: component minimum weight above the Singleton bound")
    return problems


# ---------------------------------------------------------------------------
# fixed facts used by the proof


def verify_preliminaries(seed: int = 0, trials: int = 20) -> RefutationReport:
    """Check the lattice and coding facts the proof quotes; conclusion is 'pass' or 'fail'."""
    checks = []

    d12p = lattices.dn_plus(12)
    m, kiss = lattices._min_and_kissing(d12p)
    cert = {"det": lattices.determinant(d12p), "even": lattices.is_even(d12p), "min_norm": m, "kissing": kiss}
    checks.append(Stage("d12plus-odd-unimodular", _v(cert == {"det": 1, "even": False, "min_norm": 2, "kissing": 264}), cert))

    s = lattices.direct_sum(d12p, d12p)
    m, kiss = lattices._min_and_kissing(s)
    comps = lattices.decompose(s)
    cert = {
        "dim": s.dim,
        "det": lattices.determinant(s),
        "min_norm": m,
        "kissing": kiss,
        "component_dims": [c.dim for c in comps],
        "component_kissing": [lattices.kissing_number(c) for c in comps],
    }
    ok = (m, kiss) == (2, 528) and cert["det"] == 1 and cert["component_dims"] == [12, 12] and cert["component_kissing"] == [264, 264]
    checks.append(Stage("d12plus-squared", _v(ok), cert))

    bound = codes.singleton_bound(12, 6)
    checks.append(Stage("singleton-12-6", _v(bound == 7 and bound < TARGET_WEIGHT), {"bound": bound, "required": TARGET_WEIGHT}))

    rng = np.random.default_rng(seed)
    c12 = codes.from_generator([[1, 2]])
    pairs = [(c12, c12)]
    for t in range(trials):
        pairs.append((_random_code(rng), _random_code(rng)))
        pairs.append((codes.random_self_dual(2 * int(rng.integers(1, 5)), seed + 2 * t),
                      codes.random_self_dual(2 * int(rng.integers(1, 5)), seed + 2 * t + 1)))
    bad = []
    for C1, C2 in pairs:
        lhs = codes.dual(codes.direct_sum(C1, C2))
        rhs = codes.direct_sum(codes.dual(C1), codes.dual(C2))
        if lhs != rhs:
            bad.append([C1.generator.tolist(), C2.generator.tolist()])
    checks.append(Stage("dual-of-direct-sum", _v(not bad), {"instances": len(pairs), "counterexamples": bad}))
    return RefutationReport(checks, "pass" if all(c.verdict == PASS for c in checks) else "fail")


def _random_code(rng, max_n: int = 6) -> LinearCode:
    n = int(rng.integers(1, max_n + 1))
    k = int(rng.integers(0, n + 1))
    return codes.from_generator(rng.integers(0, 5, size=(k, n)).reshape(k, n)) if k else codes.zero_code(n)


def _v(ok: bool) -> str:
    return PASS if ok else FAIL


# ---------------------------------------------------------------------------
# randomized search harness


class BudgetExceeded(RuntimeError):
    pass


@dataclass
class SearchSummary:
    trials: int
    seed: int
    n: int
    best_minimum_weight: int
    best_trial: int
    best_generator: list
    exact_histogram: dict  # minimum weight -> trials whose weight was computed exactly
    bound_histogram: dict  # witness weight -> trials cut short by an early exit
    at_least_10: list  # trials whose code reached minimum weight >= 10

    def to_dict(self) -> dict:
        d = asdict(self)
        d["exact_histogram"] = {str(k): v for k, v in sorted(self.exact_histogram.items())}
        d["bound_histogram"] = {str(k): v for k, v in sorted(self.bound_histogram.items())}
        return d

    def to_json(self, **kw) -> str:
        return json.dumps(self.to_dict(), **kw)


def trial_seed(seed: int, trial: int) -> int:
    return (seed << 32) | trial


def search(
    trials: int,
    seed: int,
    n: int = 24,
    *,
    budget_seconds: float | None = None,
    certificate_dir: str | Path | None = None,
) -> SearchSummary:
    """Sample random self-dual codes and track the best minimum weight.

    Small codes (k <= 8) get a full census per trial.  Larger ones first try an
    early-exit sweep for a codeword of weight <= current best; only codes that
    survive it (i.e. improve on the best) are swept fully.
    """
    if trials < 1 or n % 2:
        raise ValueError("need trials >= 1 and even n")
    start = time.monotonic()
    best_w, best_trial, best_code = -1, -1, None
    exact: dict = {}
    bounded: dict = {}
    hits = []
    for t in range(trials):
        if budget_seconds is not None and time.monotonic() - start > budget_seconds:
            raise BudgetExceeded(f"search exceeded {budget_seconds}s after {t} trials")
        C = codes.random_self_dual(n, trial_seed(seed, t))
        w = None
        if C.k > 8 and best_w > 0:
            witness = codes.low_weight_codeword(C, best_w)
            if witness is not None:
                wt = int(np.count_nonzero(witness))
                bounded[wt] = bounded.get(wt, 0) + 1
                continue
        w = codes.minimum_weight(C)
        exact[w] = exact.get(w, 0) + 1
        if w > best_w:
            best_w, best_trial, best_code = w, t, C
        if w >= TARGET_WEIGHT:
            hits.append(t)
            log.error("trial %d: self-dual code with minimum weight %d", t, w)
            if certificate_dir is not None:
                from .io import write_code

                Path(certificate_dir).mkdir(parents=True, exist_ok=True)
                write_code(C, Path(certificate_dir) / f"certificate_seed{seed}_trial{t}.code",
                           comment=f"minimum weight {w}; seed {seed}, trial {t}")
    return SearchSummary(
        trials, seed, n, best_w, best_trial, best_code.generator.tolist(), exact, bounded, hits
    )
