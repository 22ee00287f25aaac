"""Crossing numbers of small graphs via rewiring + assignment search.

Prints the computed value per graph together with how far the automorphism
quotient collapses the rewiring space, then checks additivity over disjoint
and one-point unions.
"""

import pathlib
import sys
import time

sys.path.insert(0, str(pathlib.Path(__file__).resolve().parents[1] / "src"))

from graphknot import (
    additivity_check,
    complete_bipartite,
    complete_graph,
    cycle_graph,
    section3_crossing_number,
)
from graphknot.gallery import subdivided_k5, wheel4

GRAPHS = [
    ("C5", cycle_graph(5)),
    ("K4", complete_graph(4)),
    ("W4", wheel4()),
    ("K2,3", complete_bipartite(2, 3)),
    ("K5", complete_graph(5)),
    ("K5 subdivided", subdivided_k5()),
]

UNIONS = [
    ("K4", complete_graph(4), "K5", complete_graph(5), "disjoint"),
    ("K5", complete_graph(5), "K5", complete_graph(5), "one-point"),
]


def main():
    print(f"{'graph':<14} {'cr':>3} {'closed':>7} {'rewirings':>10} {'time':>8}")
    for name, g in GRAPHS:
        t0 = time.monotonic()
        report = section3_crossing_number(g)
        dt = time.monotonic() - t0
        print(
            f"{name:<14} {report.value:>3} {str(report.closed):>7} "
            f"{len(report.subproblems):>10} {dt:>7.2f}s"
        )

    print()
    for ln, lg, rn, rg, kind in UNIONS:
        t0 = time.monotonic()
        rep = additivity_check(lg, rg, kind)
        dt = time.monotonic() - t0
        verdict = "additive" if rep.holds else f"holds={rep.holds}"
        print(
            f"{ln} {kind} {rn}: cr = {rep.left.value} + {rep.right.value} "
            f"= {rep.combined.value} ({verdict}, {dt:.2f}s)"
        )


if __name__ == "__main__":
    main()
