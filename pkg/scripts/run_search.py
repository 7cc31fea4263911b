"""Run the randomized search over several seeds and print one summary line per seed.

    python3 scripts/run_search.py --seeds 0 1 2 --trials 100 --length 24
"""

import argparse

from selfdual_f5.pipeline import search


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--seeds", type=int, nargs="+", default=[0])
    ap.add_argument("--trials", type=int, default=100)
    ap.add_argument("--length", type=int, default=24)
    ap.add_argument("--certificate-dir", default="certificates")
    args = ap.parse_args()
    for seed in args.seeds:
        s = search(args.trials, seed, args.length, certificate_dir=args.certificate_dir)
        print(f"seed {seed}: best d = {s.best_minimum_weight} (trial {s.best_trial}), "
              f"exact {s.exact_histogram}, early exits {s.bound_histogram}, d >= 10 in {s.at_least_10}")


if __name__ == "__main__":
    main()
