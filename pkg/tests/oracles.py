"""Brute-force reference computations used to check the library.

Everything here is written independently of the code under test: chain
counts by permutation search, ranks by Gaussian elimination over ℚ and
GF(p), hom sets by exhaustive search.
"""

from fractions import Fraction
from itertools import combinations, permutations, product


# --- counting -------------------------------------------------------------------


def all_simplices(facets):
    out = set()
    for f in facets:
        for r in range(1, len(f) + 1):
            out.update(frozenset(c) for c in combinations(f, r))
    return sorted(out, key=lambda s: (len(s), sorted(s)))


def brute_chain_counts(facets, N):
    """Strict chains s_0 < ... < s_n of faces, by trying every ordered selection."""
    simp = all_simplices(facets)
    counts = []
    for n in range(N + 1):
        c = 0
        for seq in permutations(simp, n + 1):
            if all(a < b for a, b in zip(seq, seq[1:])):
                c += 1
        counts.append(c)
    return counts


def brute_bar_count(m, n):
    return sum(1 for t in product(range(m), repeat=n + 1) if all(a != b for a, b in zip(t, t[1:])))


def surjections(m, p):
    """Monotone surjections [m] -> [p] as tuples."""
    out = []
    for t in product(range(p + 1), repeat=m + 1):
        if t[0] == 0 and t[-1] == p and all(0 <= b - a <= 1 for a, b in zip(t, t[1:])):
            out.append(t)
    return out


def brute_product_counts(counts_a, counts_b, N):
    """Nondegenerate m-simplices of A x B: pairs not both degenerate in one direction."""
    res = []
    for m in range(N + 1):
        c = 0
        for p in range(m + 1):
            for q in range(m + 1):
                if p >= len(counts_a) or q >= len(counts_b):
                    continue
                for ea in surjections(m, p):
                    for eb in surjections(m, q):
                        if all(not (ea[i] == ea[i + 1] and eb[i] == eb[i + 1]) for i in range(m)):
                            c += counts_a[p] * counts_b[q]
        res.append(c)
    return res


# --- linear algebra -------------------------------------------------------------


def boundary_rows(X, n):
    """Dense ∂_n of normalized chains, built straight from the face lists."""
    rows = [[0] * X.count(n) for _ in range(X.count(n - 1))]
    for k, fs in enumerate(X.faces[n]):
        for i, f in enumerate(fs):
            if f.dim == f.base_dim:
                rows[f.cell][k] += (-1) ** i
    return rows


def rank_q(rows):
    A = [[Fraction(v) for v in r] for r in rows]
    return _eliminate(A, lambda a: a != 0, lambda a: 1 / a, lambda a: a)


def rank_mod(rows, p):
    A = [[v % p for v in r] for r in rows]
    return _eliminate(A, lambda a: a % p != 0, lambda a: pow(a, p - 2, p), lambda a: a % p)


def _eliminate(A, nonzero, inv, norm):
    if not A or not A[0]:
        return 0
    rank, ncols = 0, len(A[0])
    for c in range(ncols):
        piv = next((r for r in range(rank, len(A)) if nonzero(A[r][c])), None)
        if piv is None:
            continue
        A[rank], A[piv] = A[piv], A[rank]
        s = inv(A[rank][c])
        A[rank] = [norm(v * s) for v in A[rank]]
        for r in range(len(A)):
            if r != rank and nonzero(A[r][c]):
                f = A[r][c]
                A[r] = [norm(a - f * b) for a, b in zip(A[r], A[rank])]
        rank += 1
    return rank


def betti(X, n, p=None):
    """Betti number of X in degree n over ℚ (p=None) or GF(p)."""
    rk = (lambda rows: rank_q(rows)) if p is None else (lambda rows: rank_mod(rows, p))
    r_n = rk(boundary_rows(X, n)) if n >= 1 else 0
    r_n1 = rk(boundary_rows(X, n + 1)) if n + 1 <= X.N else 0
    return X.count(n) - r_n - r_n1


def torsion_p_rank(X, n, p):
    """Number of cyclic p-power summands of H_n(X; ℤ), from universal coefficients."""
    total = 0
    for k in range(n + 1):
        total = betti(X, k, p) - betti(X, k) - total
    return total


# --- groups -------------------------------------------------------------------


def brute_homs(ngens, relators, G):
    def ev(word, imgs):
        x = 0
        for letter in word:
            g = imgs[abs(letter) - 1]
            x = G.table[x][g if letter > 0 else G.table[g].index(0)]
        return x
    return [imgs for imgs in product(range(G.order), repeat=ngens)
            if all(ev(r, imgs) == 0 for r in relators)]


def conjugacy_classes_of_tuples(tuples, G):
    inv = [G.table[g].index(0) for g in range(G.order)]
    seen, classes = set(), 0
    for t in tuples:
        if t in seen:
            continue
        classes += 1
        for g in range(G.order):
            seen.add(tuple(G.table[G.table[g][x]][inv[g]] for x in t))
    return classes
