"""Recover the dunce hat from the ball's stuck cores and compare it with the
frozen corpus entry and with the red/blue cone interface.

    python3 scripts/derive_dunce_hat.py
"""
import argparse
import time

from collapsekit import corpus as cp
from collapsekit.collapse import stuck_states
from collapsekit.formats import serialize_facets
from collapsekit.iso import automorphisms


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--budget", type=int, default=10**7)
    ap.add_argument("--out", help="write the derived facet list here")
    args = ap.parse_args()

    t0 = time.perf_counter()
    states, status = stuck_states(cp.ball_B(), args.budget)
    print(f"stuck subcomplexes reachable from ball_B: {len(states)} ({status.value})")
    for s in states:
        print(f"  f-vector {s.complex.f_vector()}  certificate {len(s.certificate)} steps")
    D = cp.derive_dunce_hat(args.budget)
    print(f"derived in {time.perf_counter() - t0:.2f}s: f-vector {D.f_vector()}, chi {D.euler_characteristic()}")
    print(f"matches frozen entry: {D == cp.dunce_hat_D()}")
    print(f"matches cone interface: {D == cp.cone_interface()}")
    print(f"automorphism group order: {len(automorphisms(D))}")
    text = serialize_facets(D.facets)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        print(text, end="")


if __name__ == "__main__":
    main()
