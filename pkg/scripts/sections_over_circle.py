"""Count sections of S^1 x BG -> S^1 up to homotopy over S^1 for several G.

Each count is compared with the number of conjugacy classes of G and
recomputed on barycentric refinements of a triangle model of the circle.
"""

from orbikit.algebra import cyclic_group, direct_product, symmetric_group
from orbikit.orbispace import classify_vertical_maps
from orbikit.simplicial import OrderedComplex, barycentric_subdivision, minimal_circle, nerve_of_complex


def conjugacy_classes(G):
    seen, n = set(), 0
    for a in range(G.order):
        if a not in seen:
            n += 1
            seen.update(G.conj(g, a) for g in range(G.order))
    return n


def main():
    groups = [cyclic_group(n) for n in range(1, 7)] + [
        symmetric_group(3), direct_product(cyclic_group(2), cyclic_group(2)), symmetric_group(4)]
    models = [("minimal circle", minimal_circle(2))]
    K = OrderedComplex.from_facets([[0, 1], [1, 2], [0, 2]])
    for level in range(2):
        models.append((f"triangle, {level} refinements", nerve_of_complex(K, 2)))
        K = barycentric_subdivision(K)
    print(f"{'group':<10}{'classes':<10}" + "".join(f"{name:<28}" for name, _ in models))
    for G in groups:
        counts = [classify_vertical_maps(B, G).count for _, B in models]
        print(f"{G.name:<10}{conjugacy_classes(G):<10}" + "".join(f"{c:<28}" for c in counts))


if __name__ == "__main__":
    main()
