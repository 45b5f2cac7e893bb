"""Small combinatorial helpers shared across modules."""
from __future__ import annotations

from math import factorial
from typing import Iterator, Sequence


def multiset_permutations(counts: Sequence[int]) -> Iterator[tuple[int, ...]]:
    """All arrangements with ``counts[v]`` copies of value ``v``, lexicographic.

    >>> list(multiset_permutations([1, 2]))
    [(0, 1, 1), (1, 0, 1), (1, 1, 0)]
    """
    total = sum(counts)
    remaining = list(counts)
    out = [0] * total

    def rec(pos: int) -> Iterator[tuple[int, ...]]:
        if pos == total:
            yield tuple(out)
            return
        for v in range(len(remaining)):
            if remaining[v]:
                remaining[v] -= 1
                out[pos] = v
                yield from rec(pos + 1)
                remaining[v] += 1

    return rec(0)


def multinomial(counts: Sequence[int]) -> int:
    """(sum counts)! / prod(counts[i]!)."""
    out = factorial(sum(counts))
    for c in counts:
        out //= factorial(c)
    return out
