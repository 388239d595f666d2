"""Tabulate invariants of [S^2/Z2] (trivial action) against the symbolic S^3/S^1 record.

Both have underlying space S^2 and Z/2 stabilizers everywhere; π₁ of the
Borel space separates them.
"""

import argparse
import time

from orbikit.algebra import cyclic_group
from orbikit.library import simplex_boundary
from orbikit.orbispace import LESSpec, SymbolicOrbispace, compare_orbispaces, make_global_quotient


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--truncation", type=int, default=3)
    args = ap.parse_args()
    t0 = time.perf_counter()
    M = make_global_quotient(simplex_boundary(3), cyclic_group(2), N=args.truncation, name="[S2/Z2]")
    sym = SymbolicOrbispace.from_les("S3/S1", M.Q, "ℤ/2", LESSpec.parse(["0", "?pi1", "0"]), "pi1")
    rep = compare_orbispaces(M, sym, M.valid_degree)
    print(f"Borel space cells: {M.P.counts()}")
    print(f"{'invariant':<28}{'[S2/Z2]':<20}{'S3/S1':<20}differs")
    for r in rep.rows:
        flag = "n/a" if r.differs is None else ("yes" if r.differs else "no")
        print(f"{r.invariant:<28}{r.left:<20}{r.right:<20}{flag}")
    print(f"verdict: {rep.verdict} ({time.perf_counter() - t0:.2f}s)")


if __name__ == "__main__":
    main()
