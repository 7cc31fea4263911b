"""Regenerate the files in fixtures/ (deterministic)."""

from pathlib import Path

import numpy as np

from selfdual_f5 import codes, io, lattices
from selfdual_f5.pipeline import trial_seed

OUT = Path(__file__).resolve().parent.parent / "fixtures"


def main():
    OUT.mkdir(exist_ok=True)
    io.write_code(codes.from_generator([[1, 2]]), OUT / "c21.code", "the [2,1] code generated by (1,2)")
    io.write_code(codes.from_generator([[1, 0, 2, 0], [0, 1, 0, 2]]), OUT / "c42.code", "[I | 2I], length 4")
    for n, seed in ((6, 11), (8, 12), (10, 13), (12, 14)):
        io.write_code(codes.random_self_dual(n, seed), OUT / f"sd{n}.code", f"random_self_dual({n}, {seed})")

    c1, c2 = codes.random_self_dual(12, 21), codes.random_self_dual(12, 22)
    io.write_code(codes.direct_sum(c1, c2), OUT / "sum12x2.code",
                  "direct sum of random_self_dual(12, 21) and random_self_dual(12, 22)")
    io.write_code(codes.random_self_dual(24, trial_seed(0, 0)), OUT / "random24.code",
                  "trial 0 of search --seed 0 --length 24")
    rng = np.random.default_rng(5)
    G = np.concatenate([np.eye(12, dtype=np.int64), rng.integers(0, 5, (12, 12))], axis=1)
    io.write_code(codes.from_generator(G), OUT / "notselfdual24.code", "random [24,12] code, not self-dual")

    io.write_gram(lattices.dn_plus(12), OUT / "d12plus.gram", "D12+ (ambient coordinates doubled)")
    d = lattices.dn_plus(12)
    io.write_gram(lattices.direct_sum(d, d), OUT / "d12plus_sum.gram", "D12+ + D12+")
    io.write_gram(lattices.dn_plus(8), OUT / "e8.gram", "D8+ = E8")
    io.write_gram(lattices.dn(12), OUT / "d12.gram", "D12")


if __name__ == "__main__":
    main()
