"""Exact integer linear algebra: dense matrices, Smith normal form, f.g. abelian groups."""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from math import gcd
from typing import NamedTuple, Sequence


class IntMatrix:
    """Dense matrix of Python ints (arbitrary precision)."""

    def __init__(self, rows: Sequence[Sequence[int]], ncols: int | None = None):
        self.rows = [list(map(int, r)) for r in rows]
        self.nrows = len(self.rows)
        self.ncols = len(self.rows[0]) if self.rows else (ncols or 0)
        if any(len(r) != self.ncols for r in self.rows):
            raise ValueError("ragged matrix")

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> "IntMatrix":
        return cls([[0] * ncols for _ in range(nrows)], ncols)

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls([[int(i == j) for j in range(n)] for i in range(n)], n)

    @classmethod
    def from_columns(cls, columns: Sequence[dict[int, int]], nrows: int) -> "IntMatrix":
        m = cls.zeros(nrows, len(columns))
        for j, col in enumerate(columns):
            for i, v in col.items():
                m.rows[i][j] = v
        return m

    @property
    def shape(self) -> tuple[int, int]:
        return self.nrows, self.ncols

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __eq__(self, other):
        return isinstance(other, IntMatrix) and self.shape == other.shape and self.rows == other.rows

    def __repr__(self):
        return f"IntMatrix({self.rows})"

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.ncols != other.nrows:
            raise ValueError("shape mismatch")
        cols = list(zip(*other.rows)) if other.nrows else [()] * other.ncols
        return IntMatrix([[sum(a * b for a, b in zip(r, c)) for c in cols] for r in self.rows], other.ncols)

    def transpose(self) -> "IntMatrix":
        return IntMatrix(
            [[self.rows[i][j] for i in range(self.nrows)] for j in range(self.ncols)], self.nrows
        )

    T = property(transpose)

    def copy(self) -> "IntMatrix":
        return IntMatrix([r[:] for r in self.rows], self.ncols)

    def is_zero(self) -> bool:
        return all(v == 0 for r in self.rows for v in r)

    def columns(self) -> list[dict[int, int]]:
        cols = [dict() for _ in range(self.ncols)]
        for i, r in enumerate(self.rows):
            for j, v in enumerate(r):
                if v:
                    cols[j][i] = v
        return cols

    def det(self) -> int:
        """Bareiss fraction-free determinant."""
        n = self.nrows
        if n != self.ncols:
            raise ValueError("determinant of a non-square matrix")
        if n == 0:
            return 1
        a = [r[:] for r in self.rows]
        sign, prev = 1, 1
        for k in range(n - 1):
            if a[k][k] == 0:
                for i in range(k + 1, n):
                    if a[i][k]:
                        a[k], a[i] = a[i], a[k]
                        sign = -sign
                        break
                else:
                    return 0
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            prev = a[k][k]
        return sign * a[n - 1][n - 1]


class SNFResult(NamedTuple):
    divisors: list[int]  # nonzero diagonal entries d1 | d2 | ...
    D: IntMatrix
    U: IntMatrix
    V: IntMatrix


def smith_normal_form(M: IntMatrix) -> SNFResult:
    """``U @ M @ V == D`` with ``U``, ``V`` unimodular and ``D`` diagonal.

    Pivots are chosen by least nonzero absolute value.
    """
    m, n = M.shape
    A = [r[:] for r in M.rows]
    U = [[int(i == j) for j in range(m)] for i in range(m)]
    V = [[int(i == j) for j in range(n)] for i in range(n)]

    def swap_rows(i, j):
        A[i], A[j] = A[j], A[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for r in A:
            r[i], r[j] = r[j], r[i]
        for r in V:
            r[i], r[j] = r[j], r[i]

    def add_row(dst, src, f):  # row dst += f * row src
        A[dst] = [a + f * b for a, b in zip(A[dst], A[src])]
        U[dst] = [a + f * b for a, b in zip(U[dst], U[src])]

    def add_col(dst, src, f):
        for r in A:
            r[dst] += f * r[src]
        for r in V:
            r[dst] += f * r[src]

    t = 0
    while t < min(m, n):
        best = None
        for i in range(t, m):
            for j in range(t, n):
                v = A[i][j]
                if v and (best is None or abs(v) < best[0]):
                    best = (abs(v), i, j)
                    if best[0] == 1:
                        break
            if best and best[0] == 1:
                break
        if best is None:
            break
        _, i, j = best
        swap_rows(t, i)
        swap_cols(t, j)
        while True:
            done = True
            p = A[t][t]
            for i in range(t + 1, m):
                if A[i][t]:
                    q = A[i][t] // p
                    add_row(i, t, -q)
                    if A[i][t]:
                        done = False
            for j in range(t + 1, n):
                if A[t][j]:
                    q = A[t][j] // p
                    add_col(j, t, -q)
                    if A[t][j]:
                        done = False
            if not done:
                # move the smallest leftover in row/column t to the pivot
                cand = [(abs(A[i][t]), i, t) for i in range(t, m) if A[i][t]]
                cand += [(abs(A[t][j]), t, j) for j in range(t, n) if A[t][j]]
                _, i, j = min(cand)
                swap_rows(t, i)
                swap_cols(t, j)
                continue
            bad = next(
                ((i, j) for i in range(t + 1, m) for j in range(t + 1, n) if A[i][j] % p),
                None,
            )
            if bad is None:
                break
            add_row(t, bad[0], 1)
        if A[t][t] < 0:
            A[t] = [-a for a in A[t]]
            U[t] = [-a for a in U[t]]
        t += 1
    divisors = [A[i][i] for i in range(min(m, n)) if A[i][i]]
    return SNFResult(divisors, IntMatrix(A, n), IntMatrix(U, m), IntMatrix(V, n))


def determinantal_divisors(M: IntMatrix) -> list[int]:
    """Invariant factors from gcds of k x k minors (independent slow oracle)."""
    from itertools import combinations

    m, n = M.shape
    d_prev = 1
    out = []
    for k in range(1, min(m, n) + 1):
        g = 0
        for rs in combinations(range(m), k):
            for cs in combinations(range(n), k):
                g = gcd(g, IntMatrix([[M.rows[r][c] for c in cs] for r in rs]).det())
        if g == 0:
            break
        out.append(g // d_prev)
        d_prev = g
    return out


# --- sparse elimination --------------------------------------------------------


def sparse_divisors(columns: Sequence[dict[int, int]], modulus: int | None = None) -> list[int]:
    """Nonzero invariant factors of a sparse matrix given as columns ``{row: value}``.

    Unit pivots are eliminated sparsely; whatever remains is finished by the
    dense Smith form. With ``modulus=p`` entries live in GF(p) and each
    pivot contributes a factor 1 (the list length is the rank mod p).
    """
    cols = {}
    for j, col in enumerate(columns):
        c = {i: (v % modulus if modulus else v) for i, v in col.items()}
        c = {i: v for i, v in c.items() if v}
        if c:
            cols[j] = c
    rows: dict[int, set[int]] = defaultdict(set)
    for j, c in cols.items():
        for i in c:
            rows[i].add(j)
    ones = 0

    def is_unit(v):
        return True if modulus else v in (1, -1)

    def inverse(v):
        return pow(v, -1, modulus) if modulus else v

    progress = True
    while progress and cols:
        progress = False
        for j in sorted(cols, key=lambda j: len(cols[j])):
            c = cols.get(j)
            if c is None:
                continue
            units = [i for i, v in c.items() if is_unit(v)]
            if not units:
                continue
            r = min(units, key=lambda i: (len(rows[i]), i))
            pinv = inverse(c[r])
            for k in list(rows[r]):
                if k == j:
                    continue
                ck = cols[k]
                f = ck[r] * pinv
                if modulus:
                    f %= modulus
                for i, v in c.items():
                    nv = ck.get(i, 0) - f * v
                    if modulus:
                        nv %= modulus
                    if nv:
                        if i not in ck:
                            rows[i].add(k)
                        ck[i] = nv
                    elif i in ck:
                        del ck[i]
                        rows[i].discard(k)
                if not ck:
                    del cols[k]
            for i in c:
                rows[i].discard(j)
            del cols[j]
            rows.pop(r, None)
            ones += 1
            progress = True
    if not cols:
        return [1] * ones
    if modulus:  # unreachable: every nonzero entry is a unit
        raise AssertionError("residual entries over a field")
    row_ids = sorted({i for c in cols.values() for i in c})
    pos = {i: k for k, i in enumerate(row_ids)}
    dense = IntMatrix.from_columns([{pos[i]: v for i, v in c.items()} for c in cols.values()], len(row_ids))
    return [1] * ones + smith_normal_form(dense).divisors


def sparse_rank(columns: Sequence[dict[int, int]], modulus: int | None = None) -> int:
    return len(sparse_divisors(columns, modulus))


# --- finitely generated abelian groups ----------------------------------------------


def _prime_power_factors(n: int) -> dict[int, int]:
    out: dict[int, int] = {}
    p = 2
    while p * p <= n:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        p += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def invariant_factors(orders: Sequence[int]) -> tuple[int, ...]:
    """Invariant factors of a direct sum of cyclic groups of the given orders."""
    powers: dict[int, list[int]] = defaultdict(list)
    for d in orders:
        if d <= 0:
            raise ValueError("cyclic orders must be positive")
        for p, e in _prime_power_factors(d).items():
            powers[p].append(e)
    if not powers:
        return ()
    length = max(len(v) for v in powers.values())
    factors = [1] * length
    for p, es in powers.items():
        es = sorted(es, reverse=True)
        for k, e in enumerate(es):
            factors[length - 1 - k] *= p**e
    return tuple(f for f in factors if f > 1)


@dataclass(frozen=True)
class FGAbelianGroup:
    """``ℤ^rank ⊕ ℤ/d1 ⊕ ... ⊕ ℤ/dk`` with ``d1 | d2 | ...`` and each ``d_i >= 2``."""

    rank: int = 0
    torsion: tuple[int, ...] = ()

    def __post_init__(self):
        t = tuple(self.torsion)
        object.__setattr__(self, "torsion", t)
        if self.rank < 0:
            raise ValueError("negative rank")
        if any(d < 2 for d in t) or any(b % a for a, b in zip(t, t[1:])):
            raise ValueError(f"torsion {t} is not a divisibility chain of factors >= 2")

    @classmethod
    def from_cyclic(cls, rank: int, orders: Sequence[int]) -> "FGAbelianGroup":
        return cls(rank, invariant_factors([d for d in orders if d != 1]))

    @classmethod
    def parse(cls, text: str) -> "FGAbelianGroup":
        """Parse ``0``, ``Z``, ``Z^2``, ``Z/2``, ``Z + Z/2 + Z/4`` (``ℤ``/``⊕`` also accepted)."""
        t = text.replace("ℤ", "Z").replace("⊕", "+").replace(" ", "")
        if t in ("0", "", "1"):
            return cls()
        rank, orders = 0, []
        for part in t.split("+"):
            if part == "Z":
                rank += 1
            elif part.startswith("Z^"):
                rank += int(part[2:])
            elif part.startswith("Z/"):
                orders.append(int(part[2:]))
            else:
                raise ValueError(f"cannot parse abelian group {text!r}")
        return cls.from_cyclic(rank, orders)

    @property
    def is_trivial(self) -> bool:
        return self.rank == 0 and not self.torsion

    @property
    def order(self) -> int | None:
        if self.rank:
            return None
        out = 1
        for d in self.torsion:
            out *= d
        return out

    def __add__(self, other: "FGAbelianGroup") -> "FGAbelianGroup":
        return FGAbelianGroup.from_cyclic(self.rank + other.rank, self.torsion + other.torsion)

    def __str__(self):
        parts = []
        if self.rank == 1:
            parts.append("ℤ")
        elif self.rank > 1:
            parts.append(f"ℤ^{self.rank}")
        parts += [f"ℤ/{d}" for d in self.torsion]
        return " ⊕ ".join(parts) if parts else "0"


def group_from_divisors(ngens: int, divisors: Sequence[int]) -> FGAbelianGroup:
    """Cokernel ``ℤ^ngens / im`` of a matrix with the given invariant factors."""
    return FGAbelianGroup(ngens - len(divisors), tuple(d for d in divisors if d > 1))
