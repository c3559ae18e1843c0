"""Search for 3-balls on 8 vertices containing the dunce hat, by number of
tetrahedra.

    python3 scripts/ball_search.py --max-facets 12
"""
import argparse
import time

from collapsekit import corpus as cp
from collapsekit.enumerate import search_balls_containing
from collapsekit.formats import serialize_facets
from collapsekit.iso import are_isomorphic


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--vertices", type=int, default=8)
    ap.add_argument("--max-facets", type=int, default=12)
    ap.add_argument("--budget", type=int)
    args = ap.parse_args()

    t0 = time.perf_counter()
    res = search_balls_containing(cp.dunce_hat_D(), args.vertices, args.max_facets, args.budget)
    print(f"verdict {res.verdict.value}, {time.perf_counter() - t0:.1f}s")
    print(f"classes per level {res.levels}")
    B = cp.ball_B()
    for r in res.balls:
        print(f"ball with f-vector {r.f_vector}; isomorphic to ball_B: {are_isomorphic(r.complex, B) is not None}")
        print(serialize_facets(r.facets), end="")


if __name__ == "__main__":
    main()
