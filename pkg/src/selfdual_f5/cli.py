"""Command line interface.

Exit codes: 0 pass/complete, 1 usage or parse error, 2 mathematical divergence.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys

from . import codes, construction_a as ca, io, lattices, pipeline

EXIT_OK, EXIT_USAGE, EXIT_DIVERGENCE = 0, 1, 2


def _emit(args, payload: dict, text: str) -> None:
    if args.json:
        print(json.dumps(payload, indent=2))
    else:
        print(text)


def cmd_verify_preliminaries(args) -> int:
    rep = pipeline.verify_preliminaries(seed=args.seed)
    lines = [f"{s.name:28s} {s.verdict:5s} {json.dumps(s.certificate)}" for s in rep.stages]
    lines.append(f"overall: {rep.conclusion}")
    _emit(args, rep.to_dict(), "\n".join(lines))
    return EXIT_OK if rep.conclusion == "pass" else EXIT_DIVERGENCE


def cmd_refute(args) -> int:
    C = io.read_code(args.codefile)
    rep = pipeline.refute_candidate(C, trace_all=args.trace_all)
    lines = [f"{s.name:28s} {s.verdict:11s} {json.dumps(s.certificate)}" for s in rep.stages]
    lines.append(f"conclusion: {rep.conclusion}")
    _emit(args, rep.to_dict(), "\n".join(lines))
    return EXIT_DIVERGENCE if rep.conclusion == pipeline.DIVERGENCE else EXIT_OK


def cmd_search(args) -> int:
    summary = pipeline.search(
        args.trials,
        args.seed,
        args.length,
        budget_seconds=args.budget_seconds,
        certificate_dir=args.certificate_dir,
    )
    if args.out:
        best = codes.from_generator(summary.best_generator)
        io.write_code(best, args.out, comment=f"best of {args.trials} trials, seed {args.seed}: d = {summary.best_minimum_weight}")
    text = "\n".join(
        [
            f"trials {summary.trials}, seed {summary.seed}, length {summary.n}",
            f"best minimum weight {summary.best_minimum_weight} (trial {summary.best_trial})",
            f"exact minimum weights: {summary.exact_histogram}",
            f"early exits by witness weight: {summary.bound_histogram}",
        ]
    )
    if summary.at_least_10:
        text += f"\nCERTIFICATE: minimum weight >= 10 reached in trials {summary.at_least_10}"
    _emit(args, summary.to_dict(), text)
    return EXIT_DIVERGENCE if summary.at_least_10 else EXIT_OK


def cmd_code_info(args) -> int:
    C = io.read_code(args.codefile)
    info = {"p": C.p, "n": C.n, "k": C.k, "self_dual": codes.is_self_dual(C)}
    if C.p == 5:
        T = codes.sweep_compositions(C)
        info["hamming_enumerator"] = str(codes.hamming_enumerator(T))
        info["lee_enumerator"] = str(codes.lee_enumerator(T))
        info["euclidean_census"] = {str(k): v for k, v in codes.euclidean_weight_census(T).items()}
        if C.k:
            info["minimum_weight"] = {
                kind: codes.minimum_weight_from_table(T, kind) for kind in ("hamming", "lee", "euclidean")
            }
        info["singleton_bound"] = codes.singleton_bound(C.n, C.k)
    _emit(args, info, "\n".join(f"{k}: {v}" for k, v in info.items()))
    return EXIT_OK


def cmd_lattice_info(args) -> int:
    L = io.read_gram(args.gramfile)
    m, kiss = lattices._min_and_kissing(L)
    bound = args.bound if args.bound is not None else m + 1
    info = {
        "dim": L.dim,
        "det": lattices.determinant(L),
        "unimodular": lattices.is_unimodular(L),
        "even": lattices.is_even(L),
        "min_norm": m,
        "kissing": kiss,
        "theta": lattices.theta_series(L, bound),
    }
    _emit(args, info, "\n".join(f"{k}: {v}" for k, v in info.items()))
    return EXIT_OK


def cmd_construction_a(args) -> int:
    C = io.read_code(args.codefile)
    A = ca.construction_a(C)
    io.write_gram(A.lattice, args.out, comment=f"Construction A of a [{C.n},{C.k}] code over F5")
    info = {"dim": A.lattice.dim, "det": lattices.determinant(A.lattice), "out": str(args.out)}
    _emit(args, info, f"wrote {args.out} (dim {info['dim']}, det {info['det']})")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="selfdual-f5", description=__doc__)
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, fn, help_):
        sp = sub.add_parser(name, help=help_)
        sp.add_argument("--json", action="store_true", help="machine-readable output")
        sp.set_defaults(func=fn)
        return sp

    sp = add("verify-preliminaries", cmd_verify_preliminaries, "check the fixed facts the proof uses")
    sp.add_argument("--seed", type=int, default=0)

    sp = add("refute", cmd_refute, "run the refutation pipeline on a candidate code")
    sp.add_argument("codefile")
    sp.add_argument("--trace-all", action="store_true", help="run later stages after a failure")

    sp = add("search", cmd_search, "random search over self-dual codes")
    sp.add_argument("--trials", type=int, default=100)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--length", type=int, default=24)
    sp.add_argument("--budget-seconds", type=float, default=None)
    sp.add_argument("--out", help="write the best code found here")
    sp.add_argument("--certificate-dir", default="certificates")

    sp = add("code-info", cmd_code_info, "enumerators and minimum weights of a code")
    sp.add_argument("codefile")

    sp = add("lattice-info", cmd_lattice_info, "invariants of a Gram lattice")
    sp.add_argument("gramfile")
    sp.add_argument("--bound", type=int, default=None, help="theta series up to this norm")

    sp = add("construction-a", cmd_construction_a, "write the Construction A Gram file of a code")
    sp.add_argument("codefile")
    sp.add_argument("--out", required=True)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(message)s")
    try:
        return args.func(args)
    except (OSError, io.FormatError, ValueError, pipeline.BudgetExceeded) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
