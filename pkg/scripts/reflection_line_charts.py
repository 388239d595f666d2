"""Stabilizers, fiber certificates and charts for Z/2 reflecting a path about 0.

A closed star that reaches the fixed point from a free vertex is not a
good neighborhood, so no chart is extracted there; refining once makes
the stars of all previous vertices good.
"""

import argparse

from orbikit.algebra import cyclic_group, describe_group
from orbikit.errors import CheckFailed
from orbikit.library import path_complex
from orbikit.orbispace import extract_chart, fiber_report, make_global_quotient, stabilizer


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--half-length", type=int, default=2)
    ap.add_argument("--refine", type=int, default=0)
    args = ap.parse_args()
    k = args.half_length
    n = 2 * k + 1
    M = make_global_quotient(path_complex(2 * k, start=-k), cyclic_group(2),
                             [tuple(range(n)), tuple(reversed(range(n)))], N=3, refine=args.refine)
    print(f"X cells {M.borel.X.counts()}, Q cells {M.Q.counts()}, Borel cells {M.P.counts()}")
    print(f"{'vertex':<26}{'G_x':<6}{'fiber ok':<10}{'chart cells':<16}{'chart ok'}")
    for x in range(M.Q.count(0)):
        f = fiber_report(M, x, 2)
        try:
            ch = extract_chart(M, x, 2)
            cells, ok = str(ch.chart.counts()), str(ch.passed)
        except CheckFailed:
            cells, ok = "-", "star not good"
        print(f"{str(M.vertex_label(x)):<26}{describe_group(stabilizer(M, x)):<6}"
              f"{str(f.passed):<10}{cells:<16}{ok}")


if __name__ == "__main__":
    main()
