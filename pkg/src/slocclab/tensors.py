"""Sparse multiparty tensors over exact scalars.

A tensor on k parties is a finite map from index tuples to nonzero scalars;
all named states here (GHZ, W, Dicke) have support polynomial in their
parameters while the ambient dimension is exponential, so nothing dense is
ever materialized. All operations are pure; tensors are treated as immutable
values.

Exact rank of flattenings uses fraction-free (Bareiss) elimination over the
rationals and ordinary exact elimination with pivot inversion over cyclotomic
fields.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product as iproduct
from math import gcd
from typing import Iterable, Sequence

from .scalars import CyclotomicElement, EpsPolynomial, Scalar, scalar_is_zero, scalar_inv


@dataclass(frozen=True)
class TensorShape:
    dims: tuple[int, ...]

    def __post_init__(self):
        if not self.dims or any(d < 1 for d in self.dims):
            raise ValueError(f"all dimensions must be >= 1, got {self.dims}")

    @property
    def parties(self) -> int:
        return len(self.dims)


@dataclass
class SparseTensor:
    shape: TensorShape
    entries: dict[tuple[int, ...], object]

    def __post_init__(self):
        dims = self.shape.dims
        clean = {}
        for idx, val in self.entries.items():
            if len(idx) != len(dims) or any(not 0 <= i < d for i, d in zip(idx, dims)):
                raise ValueError(f"index {idx} out of bounds for dims {dims}")
            if isinstance(val, int):
                val = Fraction(val)
            if not scalar_is_zero(val):
                clean[tuple(idx)] = val
        self.entries = clean

    @property
    def parties(self) -> int:
        return self.shape.parties

    @property
    def support(self) -> frozenset[tuple[int, ...]]:
        return frozenset(self.entries)

    @property
    def is_zero(self) -> bool:
        return not self.entries

    def __add__(self, other: "SparseTensor") -> "SparseTensor":
        if self.shape != other.shape:
            raise ValueError("shape mismatch in tensor addition")
        out = dict(self.entries)
        for idx, val in other.entries.items():
            out[idx] = out.get(idx, Fraction(0)) + val
        return SparseTensor(self.shape, out)

    def __sub__(self, other: "SparseTensor") -> "SparseTensor":
        return self + other.scale(Fraction(-1))

    def scale(self, s) -> "SparseTensor":
        return SparseTensor(self.shape, {i: s * v for i, v in self.entries.items()})

    def map_values(self, fn) -> "SparseTensor":
        return SparseTensor(self.shape, {i: fn(v) for i, v in self.entries.items()})


# LocalMapSet: one matrix per party, row-major nested sequences of scalars.
Matrix = Sequence[Sequence[object]]
LocalMapSet = Sequence[Matrix]


def tensor_product(f: SparseTensor, g: SparseTensor) -> SparseTensor:
    """Party-wise tensor product; site dimensions multiply.

    The merged index at site j is ``i_f * dim_g + i_g`` (row-major), matching
    the flattening used by :func:`kron` on local maps. The support of the
    result is the set product of the supports: products of nonzero field
    elements cannot vanish.
    """
    if f.parties != g.parties:
        raise ValueError(f"party count mismatch: {f.parties} vs {g.parties}")
    gdims = g.shape.dims
    dims = tuple(df * dg for df, dg in zip(f.shape.dims, gdims))
    entries = {}
    for fi, fv in f.entries.items():
        for gi, gv in g.entries.items():
            idx = tuple(a * dg + b for a, b, dg in zip(fi, gi, gdims))
            entries[idx] = fv * gv
    return SparseTensor(TensorShape(dims), entries)


def tensor_power(f: SparseTensor, n: int) -> SparseTensor:
    if n < 1:
        raise ValueError("power must be >= 1")
    out = f
    for _ in range(n - 1):
        out = tensor_product(out, f)
    return out


def direct_sum(f: SparseTensor, g: SparseTensor) -> SparseTensor:
    """Block-diagonal embedding; site dimensions add, supports stay disjoint."""
    if f.parties != g.parties:
        raise ValueError(f"party count mismatch: {f.parties} vs {g.parties}")
    fdims = f.shape.dims
    dims = tuple(df + dg for df, dg in zip(fdims, g.shape.dims))
    entries = dict(f.entries)
    for gi, gv in g.entries.items():
        entries[tuple(a + df for a, df in zip(gi, fdims))] = gv
    return SparseTensor(TensorShape(dims), entries)


def _column_actions(matrix: Matrix, dim: int):
    """Per input index, the list of (row, entry) with nonzero entry."""
    rows = len(matrix)
    if rows == 0:
        raise ValueError("empty matrix in local map set")
    for row in matrix:
        if len(row) != dim:
            raise ValueError(
                f"matrix has {len(row)} columns, tensor site has dimension {dim}"
            )
    actions = [[] for _ in range(dim)]
    for r in range(rows):
        for c in range(dim):
            v = matrix[r][c]
            if isinstance(v, int):
                v = Fraction(v)
            if not scalar_is_zero(v):
                actions[c].append((r, v))
    return rows, actions


def apply_local_maps(maps: LocalMapSet, f: SparseTensor) -> SparseTensor:
    """Contract one matrix per site against the tensor, exactly."""
    if len(maps) != f.parties:
        raise ValueError(f"{len(maps)} maps for {f.parties} parties")
    per_site = [
        _column_actions(m, d) for m, d in zip(maps, f.shape.dims)
    ]
    out_dims = tuple(rows for rows, _ in per_site)
    acc: dict[tuple[int, ...], object] = {}
    for idx, val in f.entries.items():
        choices = [per_site[j][1][idx[j]] for j in range(f.parties)]
        if any(not c for c in choices):
            continue
        for combo in iproduct(*choices):
            out_idx = tuple(r for r, _ in combo)
            term = val
            for _, m in combo:
                term = term * m
            if out_idx in acc:
                acc[out_idx] = acc[out_idx] + term
            else:
                acc[out_idx] = term
    return SparseTensor(TensorShape(out_dims), acc)


def permute_parties(f: SparseTensor, perm: Sequence[int]) -> SparseTensor:
    """Move site j to position perm[j]."""
    k = f.parties
    if sorted(perm) != list(range(k)):
        raise ValueError(f"{perm} is not a permutation of 0..{k - 1}")
    dims = [0] * k
    for j, p in enumerate(perm):
        dims[p] = f.shape.dims[j]
    entries = {}
    for idx, val in f.entries.items():
        new = [0] * k
        for j, p in enumerate(perm):
            new[p] = idx[j]
        entries[tuple(new)] = val
    return SparseTensor(TensorShape(tuple(dims)), entries)


# ---------------------------------------------------------------------------
# Exact rank.


def _bareiss_rank(mat: list[list[int]]) -> int:
    """Fraction-free elimination; all intermediate divisions are exact."""
    if not mat:
        return 0
    rows, cols = len(mat), len(mat[0])
    rank = 0
    prev = 1
    r = 0
    for c in range(cols):
        pivot_row = next((i for i in range(r, rows) if mat[i][c] != 0), None)
        if pivot_row is None:
            continue
        mat[r], mat[pivot_row] = mat[pivot_row], mat[r]
        piv = mat[r][c]
        for i in range(r + 1, rows):
            fi = mat[i][c]
            for j in range(c, cols):
                mat[i][j] = (mat[i][j] * piv - fi * mat[r][j]) // prev
        prev = piv
        rank += 1
        r += 1
        if r == rows:
            break
    return rank


def _field_rank(mat: list[list[CyclotomicElement]]) -> int:
    if not mat:
        return 0
    rows, cols = len(mat), len(mat[0])
    rank = 0
    r = 0
    for c in range(cols):
        pivot_row = next((i for i in range(r, rows) if not mat[i][c].is_zero), None)
        if pivot_row is None:
            continue
        mat[r], mat[pivot_row] = mat[pivot_row], mat[r]
        inv = mat[r][c].inverse()
        for i in range(r + 1, rows):
            if mat[i][c].is_zero:
                continue
            factor = mat[i][c] * inv
            for j in range(c, cols):
                mat[i][j] = mat[i][j] - factor * mat[r][j]
        rank += 1
        r += 1
        if r == rows:
            break
    return rank


def exact_rank(rows: list[list]) -> int:
    """Rank of a dense matrix of exact scalars."""
    if not rows or not rows[0]:
        return 0
    values = [v for row in rows for v in row]
    if all(isinstance(v, (int, Fraction)) for v in values):
        int_rows = []
        for row in rows:
            fracs = [Fraction(v) for v in row]
            scale = 1
            for fr in fracs:
                scale = scale * fr.denominator // gcd(scale, fr.denominator)
            int_rows.append([int(fr * scale) for fr in fracs])
        return _bareiss_rank(int_rows)
    order = 1
    for v in values:
        if isinstance(v, CyclotomicElement):
            order = order * v.order // gcd(order, v.order)
    cyc_rows = [
        [
            v.embed(order) if isinstance(v, CyclotomicElement)
            else CyclotomicElement.constant(Fraction(v), order)
            for v in row
        ]
        for row in rows
    ]
    return _field_rank(cyc_rows)


def flattening_rank(f: SparseTensor, row_sites: Iterable[int]) -> int:
    """Schmidt rank across the bipartition (row_sites | rest).

    Only occupied rows and columns are materialized: the rank is at most the
    support size, so the matrix stays small even in huge ambient dimensions.
    """
    S = sorted(set(row_sites))
    k = f.parties
    if not S or len(S) >= k or any(not 0 <= s < k for s in S):
        raise ValueError(f"cut {S} must be a nonempty proper subset of 0..{k - 1}")
    comp = [j for j in range(k) if j not in set(S)]
    row_index: dict[tuple[int, ...], int] = {}
    col_index: dict[tuple[int, ...], int] = {}
    cells = []
    for idx, val in f.entries.items():
        rkey = tuple(idx[s] for s in S)
        ckey = tuple(idx[s] for s in comp)
        r = row_index.setdefault(rkey, len(row_index))
        c = col_index.setdefault(ckey, len(col_index))
        cells.append((r, c, val))
    mat = [[Fraction(0)] * len(col_index) for _ in range(len(row_index))]
    for r, c, val in cells:
        mat[r][c] = val
    return exact_rank(mat)


def identity_maps(f: SparseTensor) -> list[list[list[Fraction]]]:
    return [
        [[Fraction(1) if i == j else Fraction(0) for j in range(d)] for i in range(d)]
        for d in f.shape.dims
    ]


def kron(a: Matrix, b: Matrix) -> list[list]:
    """Kronecker product, row-major: consistent with tensor_product indexing."""
    ra, ca = len(a), len(a[0])
    rb, cb = len(b), len(b[0])
    out = [[None] * (ca * cb) for _ in range(ra * rb)]
    for i in range(ra):
        for j in range(ca):
            for p in range(rb):
                for q in range(cb):
                    out[i * rb + p][j * cb + q] = a[i][j] * b[p][q]
    return out
