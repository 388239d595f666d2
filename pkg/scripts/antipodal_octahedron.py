"""Borel space of the antipodal Z/2 action on the octahedral sphere.

The action is free, so the Borel space has the homology of the quotient,
the projective plane. The trivial action on the same sphere is shown for
contrast.
"""

import time

from orbikit.algebra import cyclic_group, homology
from orbikit.fundamental import fundamental_group
from orbikit.library import antipodal_permutation, octahedron
from orbikit.orbispace import make_global_quotient


def main():
    G = cyclic_group(2)
    K = octahedron()
    for label, action in (("antipodal", [tuple(range(6)), tuple(antipodal_permutation())]), ("trivial", None)):
        t0 = time.perf_counter()
        M = make_global_quotient(K, G, action, N=3)
        hp = homology(M.P, range(3), check=False)
        hq = homology(M.Q, range(3), check=False)
        pi1 = fundamental_group(M.P)
        print(f"{label}: cells P={M.P.counts()} Q={M.Q.counts()}")
        print(f"  H(P) = {', '.join(map(str, hp))}   H(Q) = {', '.join(map(str, hq))}   π₁(P) order {pi1.order}")
        print(f"  {time.perf_counter() - t0:.2f}s")


if __name__ == "__main__":
    main()
