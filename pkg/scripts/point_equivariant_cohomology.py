"""Equivariant cohomology of a point (the cohomology of BG) for small groups."""

import argparse

from orbikit.algebra import cyclic_group, symmetric_group
from orbikit.borel import equivariant_cohomology
from orbikit.simplicial import point


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--truncation", type=int, default=5)
    args = ap.parse_args()
    N = args.truncation
    for G in (cyclic_group(2), cyclic_group(3), cyclic_group(4), symmetric_group(3)):
        for coeffs in (None, "mod 2", "mod 3"):
            if G.order > 4 and N > 4:
                continue  # the S3 bar construction grows as 6 * 5^n
            gs = equivariant_cohomology(point(N), G, N=N, coefficients=coeffs)
            print(f"{G.name:<5} {gs.coefficients:<9} " + ", ".join(str(g) for g in gs))


if __name__ == "__main__":
    main()
