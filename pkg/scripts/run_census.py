"""Closed 3-manifold census on 5..8 vertices, with oracle cross-checks and
containment of the dunce hat.

    python3 scripts/run_census.py --out results/census
"""
import argparse
import time
from pathlib import Path

from collapsekit import corpus as cp
from collapsekit.enumerate import census_containment, closed_3manifolds_oracle, enumerate_closed_3manifolds, write_census
from collapsekit.iso import are_isomorphic


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-n", type=int, default=8)
    ap.add_argument("--oracle-up-to", type=int, default=7)
    ap.add_argument("--out", type=Path)
    args = ap.parse_args()

    records = []
    for n in range(5, args.max_n + 1):
        t0 = time.perf_counter()
        records = list(enumerate_closed_3manifolds(n))
        line = f"n={n}: {len(records)} types in {time.perf_counter() - t0:.1f}s"
        if n <= args.oracle_up_to:
            oracle = closed_3manifolds_oracle(n)
            line += f", oracle {len(oracle)}, identical {sorted(r.facets for r in records) == oracle}"
        print(line, flush=True)
        if args.out:
            write_census(args.out / f"census_{n}", records)

    hits = census_containment(records, cp.dunce_hat_D())
    print(f"{len(hits)} of {len(records)} contain the dunce hat")
    gs = cp.gs_32()
    for r in hits:
        print(f"  f-vector {r.f_vector}  isomorphic to gs_32: {are_isomorphic(r.complex, gs) is not None}")


if __name__ == "__main__":
    main()
