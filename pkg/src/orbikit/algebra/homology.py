"""Chain complexes of simplicial sets and their (co)homology via Smith normal form."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from ..errors import NotAChainComplex, TruncationError
from .linalg import (
    FGAbelianGroup,
    IntMatrix,
    smith_normal_form,
    sparse_divisors,
)

Columns = list[dict[int, int]]


@dataclass
class ChainComplex:
    """``dims[n]`` generators in degree n; ``boundaries[n]`` are the columns of ∂_n (n >= 1)."""

    dims: list[int]
    boundaries: dict[int, Columns]
    valid_degree: int

    @classmethod
    def from_simplicial_set(cls, X) -> "ChainComplex":
        """Normalized chains: nondegenerate cells, ∂ = Σ (-1)^i d_i with degenerate faces dropped."""
        bnd = {}
        for n in range(1, X.N + 1):
            cols = []
            for fs in X.faces[n]:
                col: dict[int, int] = {}
                for i, f in enumerate(fs):
                    if f.degenerate:
                        continue
                    col[f.cell] = col.get(f.cell, 0) + (-1) ** i
                cols.append({r: v for r, v in col.items() if v})
            bnd[n] = cols
        return cls(X.counts(), bnd, X.N - 1)

    @classmethod
    def from_matrices(cls, boundaries: Sequence[IntMatrix]) -> "ChainComplex":
        """``boundaries[k]`` is ∂_{k+1}: C_{k+1} -> C_k as a dense matrix."""
        if not boundaries:
            raise NotAChainComplex("at least one boundary matrix is required")
        dims = [boundaries[0].nrows] + [b.ncols for b in boundaries]
        for k, b in enumerate(boundaries):
            if b.nrows != dims[k]:
                raise NotAChainComplex(f"∂_{k + 1} has {b.nrows} rows, expected {dims[k]}")
        bnd = {k + 1: b.columns() for k, b in enumerate(boundaries)}
        return cls(dims, bnd, len(boundaries))

    @property
    def top(self) -> int:
        return len(self.dims) - 1

    def boundary(self, n: int) -> Columns:
        if 1 <= n <= self.top:
            return self.boundaries[n]
        return [dict() for _ in range(self.dims[n])] if 0 <= n <= self.top else []

    def check(self) -> None:
        for n in range(2, self.top + 1):
            lower = self.boundaries[n - 1]
            for j, col in enumerate(self.boundaries[n]):
                acc: dict[int, int] = {}
                for i, v in col.items():
                    for r, w in lower[i].items():
                        acc[r] = acc.get(r, 0) + v * w
                if any(acc.values()):
                    raise NotAChainComplex(f"∂_{n - 1}∘∂_{n} is nonzero on generator {j}")

    def transposed(self, n: int) -> Columns:
        """Columns of ∂_n^T, i.e. the coboundary δ^{n-1}."""
        cols: Columns = [dict() for _ in range(self.dims[n - 1])]
        for j, col in enumerate(self.boundary(n)):
            for i, v in col.items():
                cols[i][j] = v
        return cols


def _as_complex(chain) -> ChainComplex:
    if isinstance(chain, ChainComplex):
        return chain
    if hasattr(chain, "faces") and hasattr(chain, "labels"):
        return ChainComplex.from_simplicial_set(chain)
    return ChainComplex.from_matrices(list(chain))


def _degrees(cc: ChainComplex, degrees) -> list[int]:
    if degrees is None:
        return list(range(cc.valid_degree + 1))
    degrees = list(degrees)
    for d in degrees:
        if d > cc.valid_degree:
            raise TruncationError(f"degree {d} is above the valid degree {cc.valid_degree}")
    return degrees


def _parse_coefficients(coefficients) -> int | None:
    if coefficients in (None, 0, "integers", "Z"):
        return None
    if isinstance(coefficients, str):
        coefficients = int(coefficients.replace("mod", "").strip())
    if coefficients < 2:
        raise ValueError("modulus must be a prime >= 2")
    return int(coefficients)


def homology(chain, degrees=None, coefficients=None, check: bool = True) -> list[FGAbelianGroup]:
    """H_n = ker ∂_n / im ∂_{n+1}.

    ``chain`` is a :class:`ChainComplex`, a simplicial set, or a list of
    boundary matrices. With ``coefficients=p`` the result in each degree is
    ``(ℤ/p)^b`` where ``b`` is the mod-p Betti number.
    """
    cc = _as_complex(chain)
    if check:
        cc.check()
    p = _parse_coefficients(coefficients)
    out = []
    cache: dict[int, list[int]] = {}

    def divs(n):
        if n not in cache:
            cache[n] = sparse_divisors(cc.boundary(n), p) if 1 <= n <= cc.top else []
        return cache[n]

    for n in _degrees(cc, degrees):
        rank_z = cc.dims[n] - len(divs(n)) - len(divs(n + 1))
        if p is None:
            out.append(FGAbelianGroup(rank_z, tuple(d for d in divs(n + 1) if d > 1)))
        else:
            out.append(FGAbelianGroup(0, (p,) * rank_z))
    return out


def cohomology(chain, degrees=None, coefficients=None, check: bool = True) -> list[FGAbelianGroup]:
    """H^n = ker δ^n / im δ^{n-1} with δ^n = ∂_{n+1}^T."""
    cc = _as_complex(chain)
    if check:
        cc.check()
    p = _parse_coefficients(coefficients)
    out = []
    cache: dict[int, list[int]] = {}

    def cod(n):  # invariant factors of δ^n
        if n not in cache:
            cache[n] = sparse_divisors(cc.transposed(n + 1), p) if 0 <= n < cc.top else []
        return cache[n]

    for n in _degrees(cc, degrees):
        rank_z = cc.dims[n] - len(cod(n)) - len(cod(n - 1))
        if p is None:
            out.append(FGAbelianGroup(rank_z, tuple(d for d in cod(n - 1) if d > 1)))
        else:
            out.append(FGAbelianGroup(0, (p,) * rank_z))
    return out


def reduced_homology(chain, degrees=None, coefficients=None) -> list[FGAbelianGroup]:
    groups = homology(chain, degrees, coefficients)
    degs = _degrees(_as_complex(chain), degrees)
    out = []
    for n, g in zip(degs, groups):
        if n == 0:
            if coefficients in (None, 0, "integers", "Z"):
                g = FGAbelianGroup(max(g.rank - 1, 0), g.torsion)
            else:
                g = FGAbelianGroup(0, g.torsion[1:])
        out.append(g)
    return out


def is_acyclic(X, upto: int) -> bool:
    """Reduced integral homology vanishes in degrees 0..upto."""
    return all(g.is_trivial for g in reduced_homology(X, range(upto + 1)))


# --- chain maps ---------------------------------------------------------------


def chain_map_columns(f, n: int) -> Columns:
    """Degree-n component of the normalized chain map of a simplicial map."""
    return [
        {} if img.degenerate else {img.cell: 1}
        for img in f.images[n]
    ]


def kernel_basis(columns: Columns, nrows: int, ncols: int) -> list[dict[int, int]]:
    """Integral basis of ker of the matrix with the given columns (dense SNF)."""
    M = IntMatrix.from_columns(columns, nrows) if ncols else IntMatrix.zeros(nrows, 0)
    snf = smith_normal_form(M)
    r = len(snf.divisors)
    V = snf.V
    basis = []
    for j in range(r, ncols):
        basis.append({i: V.rows[i][j] for i in range(ncols) if V.rows[i][j]})
    return basis


def induced_iso_in_degree(f, n: int) -> bool:
    """Whether a simplicial map induces an isomorphism on integral H_n.

    Checks abstract isomorphism of H_n of source and target, then
    surjectivity: f(Z_n(source)) + B_n(target) must equal Z_n(target).
    Z_n(target) is saturated, so equality holds iff the sum has the same
    rank and all its invariant factors are 1. A surjection between
    isomorphic f.g. abelian groups is an isomorphism.
    """
    src = ChainComplex.from_simplicial_set(f.source)
    tgt = ChainComplex.from_simplicial_set(f.target)
    if n > min(src.valid_degree, tgt.valid_degree):
        raise TruncationError(f"degree {n} is above the valid degree")
    if homology(src, [n], check=False) != homology(tgt, [n], check=False):
        return False
    z_src = kernel_basis(src.boundary(n), src.dims[n - 1] if n else 0, src.dims[n])
    fmap = chain_map_columns(f, n)
    gens = []
    for z in z_src:
        col: dict[int, int] = {}
        for i, v in z.items():
            for r, w in fmap[i].items():
                col[r] = col.get(r, 0) + v * w
        gens.append({r: v for r, v in col.items() if v})
    gens += tgt.boundary(n + 1)
    divs = sparse_divisors(gens)
    z_rank = tgt.dims[n] - len(sparse_divisors(tgt.boundary(n)))
    return len(divs) == z_rank and all(d == 1 for d in divs)
