"""Realize the 8-vertex sphere as a 4-polytope, draw its Schlegel diagram and
export the embedded dunce hat.

    python3 scripts/realize.py --out results/geometry
"""
import argparse
import time
from pathlib import Path

from collapsekit import corpus as cp
from collapsekit.formats import serialize_coordinates
from collapsekit.geometry import (choose_base, export_off, extract_embedding, realize_search, schlegel,
                                  verify_embedding, verify_schlegel)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--trials", type=int, default=10**6)
    ap.add_argument("--sampler", choices=["box", "sphere"], default="box")
    ap.add_argument("--digits", type=int, default=6)
    ap.add_argument("--out", type=Path, default=Path("results/geometry"))
    args = ap.parse_args()

    t0 = time.perf_counter()
    real = realize_search(cp.gs_32(), args.trials, args.seed, args.sampler)
    if real is None:
        print("no realization found")
        return 2
    print(f"realized at trial {real.trial} in {time.perf_counter() - t0:.1f}s")
    base = choose_base(real.points, real.facets)
    proj = schlegel(real.points, real.facets, base)
    print(f"Schlegel diagram on base {base}: {len(proj.tetrahedra)} cells, valid {verify_schlegel(proj)}")
    G = extract_embedding(proj, cp.dunce_hat_D().facets)
    check = verify_embedding(G)
    print(f"dunce hat embedding valid: {check.ok}")

    args.out.mkdir(parents=True, exist_ok=True)
    (args.out / "gs_32.coords.txt").write_text(serialize_coordinates([real.points[v] for v in range(8)]))
    (args.out / "schlegel.coords.txt").write_text(
        serialize_coordinates([proj.coords[v] for v in sorted(proj.coords)]))
    (args.out / "dunce_hat.off").write_text(export_off(G, args.digits))
    print(f"wrote {args.out}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
