"""Constructors for the named multiparty states.

All amplitudes are 1: the transformations studied here ignore normalization,
so unnormalized states keep every coefficient an exact integer.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from ._combinat import multiset_permutations
from .tensors import SparseTensor, TensorShape


@dataclass(frozen=True)
class Partition:
    """Weakly decreasing tuple of positive parts."""

    parts: tuple[int, ...]

    def __post_init__(self):
        if not self.parts or any(p < 1 for p in self.parts):
            raise ValueError(f"parts must be positive, got {self.parts}")
        if any(a < b for a, b in zip(self.parts, self.parts[1:])):
            raise ValueError(f"parts must be weakly decreasing, got {self.parts}")

    @property
    def weight(self) -> int:
        return sum(self.parts)

    def __len__(self) -> int:
        return len(self.parts)


def make_ghz(a: int, k: int) -> SparseTensor:
    """Level-a GHZ state on k parties: the a diagonal basis terms."""
    if a < 1 or k < 2:
        raise ValueError("need level >= 1 and at least 2 parties")
    return SparseTensor(
        TensorShape((a,) * k), {(i,) * k: Fraction(1) for i in range(a)}
    )


def make_w(k: int) -> SparseTensor:
    """k-partite W state: all weight-one bit strings."""
    if k < 2:
        raise ValueError("need at least 2 parties")
    entries = {}
    for i in range(k):
        idx = [0] * k
        idx[i] = 1
        entries[tuple(idx)] = Fraction(1)
    return SparseTensor(TensorShape((2,) * k), entries)


def make_dicke(m: int, n: int) -> SparseTensor:
    """Symmetrization of a string with m zeros and n ones (m+n parties)."""
    if m < 0 or n < 0 or m + n < 2:
        raise ValueError("need m, n >= 0 with m + n >= 2")
    entries = {
        word: Fraction(1) for word in multiset_permutations([m, n])
    }
    return SparseTensor(TensorShape((2,) * (m + n)), entries)


def make_dicke_lambda(lam: Partition, k: int) -> SparseTensor:
    """All words on {0..d} with part i appearing lambda_i times, 0 elsewhere."""
    if k < lam.weight:
        raise ValueError(f"k={k} is smaller than the partition weight {lam.weight}")
    d = len(lam)
    counts = [k - lam.weight] + list(lam.parts)
    entries = {word: Fraction(1) for word in multiset_permutations(counts)}
    return SparseTensor(TensorShape((d + 1,) * k), entries)


def make_epr_pair(i: int, j: int, k: int) -> SparseTensor:
    """EPR pair between sites i and j (0-based); all other sites trivial."""
    if not (0 <= i < j < k):
        raise ValueError(f"need 0 <= i < j < k, got i={i}, j={j}, k={k}")
    dims = tuple(2 if s in (i, j) else 1 for s in range(k))
    zero = tuple(0 for _ in range(k))
    one = tuple(1 if s in (i, j) else 0 for s in range(k))
    return SparseTensor(TensorShape(dims), {zero: Fraction(1), one: Fraction(1)})
