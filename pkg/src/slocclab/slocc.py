"""Single-copy restriction analysis: Schmidt profiles, restriction checks,
rank-based rate lower bounds, and constructive party reduction.

Sites are 0-based throughout. Bipartitions are represented by the subset of
sites forming the row side; profiles canonicalize to the side containing
site 0 because rank is invariant under complementation.
"""
from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Sequence

from .tensors import LocalMapSet, SparseTensor, apply_local_maps, flattening_rank

MAX_PROFILE_PARTIES = 16  # 2^(k-1) cuts; beyond this callers supply explicit cuts


class ReducePartySearchError(RuntimeError):
    """The bounded candidate search for a party-reducing form ran out."""


def _canonical_cuts(k: int):
    """One representative per complement pair: subsets containing site 0."""
    rest = list(range(1, k))
    for size in range(0, k - 1):
        for extra in combinations(rest, size):
            yield frozenset((0,) + extra)


@dataclass
class SchmidtProfile:
    """Exact flattening rank per bipartition class."""

    parties: int
    ranks: dict[frozenset, int]

    def rank_of(self, sites) -> int:
        S = frozenset(sites)
        if 0 not in S:
            S = frozenset(range(self.parties)) - S
        return self.ranks[S]

    def items(self):
        return sorted(self.ranks.items(), key=lambda kv: (len(kv[0]), sorted(kv[0])))


def schmidt_profile(psi: SparseTensor) -> SchmidtProfile:
    k = psi.parties
    if k > MAX_PROFILE_PARTIES:
        raise ValueError(
            f"{k} parties means 2^{k - 1} cuts; supply explicit cuts to"
            " flattening_rank instead"
        )
    ranks = {S: flattening_rank(psi, S) for S in _canonical_cuts(k)}
    return SchmidtProfile(k, ranks)


def check_restriction(
    psi: SparseTensor, phi: SparseTensor, maps: LocalMapSet
) -> bool:
    """True iff applying ``maps`` to psi reproduces phi exactly.

    Every successful verification also re-checks rank monotonicity across all
    cuts, which a genuine restriction can never violate.
    """
    image = apply_local_maps(maps, psi)
    if image.shape != phi.shape or image.entries != phi.entries:
        return False
    if psi.parties <= MAX_PROFILE_PARTIES:
        src = schmidt_profile(psi)
        dst = schmidt_profile(phi)
        for S, r in dst.ranks.items():
            assert r <= src.ranks[S], (
                f"rank monotonicity violated at cut {sorted(S)}: {r} > {src.ranks[S]}"
            )
    return True


def is_globally_entangled(psi: SparseTensor) -> bool:
    """True iff every bipartition has flattening rank >= 2."""
    if psi.is_zero:
        return False
    k = psi.parties
    return all(flattening_rank(psi, S) >= 2 for S in _canonical_cuts(k))


@dataclass
class RateLowerBound:
    """max over cuts of log rank(target) / log rank(source), kept exact."""

    target_rank: int
    source_rank: int
    infinite: bool = False

    @property
    def value(self) -> float:
        if self.infinite:
            return math.inf
        if self.target_rank <= 1:
            return 0.0
        return math.log(self.target_rank) / math.log(self.source_rank)

    def __repr__(self):
        if self.infinite:
            return "RateLowerBound(inf)"
        return (
            f"RateLowerBound(log {self.target_rank}/log {self.source_rank}"
            f" = {self.value:.6f})"
        )


def rate_lower_bound_ranks(psi: SparseTensor, phi: SparseTensor) -> RateLowerBound:
    """Rank-ratio lower bound on the asymptotic conversion rate psi -> phi.

    Returns the witnessing rank pair; the logarithm only enters at display
    time. Signals an infinite bound when some cut separates psi but not phi.
    """
    if psi.parties != phi.parties:
        raise ValueError("states must share the party count")
    best: RateLowerBound | None = None
    for S in _canonical_cuts(psi.parties):
        r_src = flattening_rank(psi, S)
        r_dst = flattening_rank(phi, S)
        if r_src <= 1:
            if r_dst > 1:
                return RateLowerBound(r_dst, r_src, infinite=True)
            continue
        cand = RateLowerBound(r_dst, r_src)
        if best is None or cand.value > best.value:
            best = cand
    if best is None:
        raise ValueError("source has rank 1 across every cut (not entangled)")
    return best


def contract_site(psi: SparseTensor, site: int, form: Sequence) -> SparseTensor:
    """Apply a linear form at one site and drop that site."""
    from .tensors import TensorShape
    from .scalars import scalar_is_zero

    k = psi.parties
    if not 0 <= site < k:
        raise ValueError(f"site {site} out of range")
    if len(form) != psi.shape.dims[site]:
        raise ValueError("form length must match the site dimension")
    dims = tuple(d for j, d in enumerate(psi.shape.dims) if j != site)
    acc: dict[tuple[int, ...], object] = {}
    for idx, val in psi.entries.items():
        c = form[idx[site]]
        if isinstance(c, int):
            c = Fraction(c)
        if scalar_is_zero(c):
            continue
        rest = tuple(x for j, x in enumerate(idx) if j != site)
        acc[rest] = acc.get(rest, Fraction(0)) + c * val
    return SparseTensor(TensorShape(dims), acc)


def _candidate_forms(dim: int, seed: int, random_rounds: int = 60):
    """Coordinate forms, then two-term forms, then seeded random forms of
    growing coefficient height. Order of the pair stage is lexicographic."""
    for p in range(dim):
        form = [Fraction(0)] * dim
        form[p] = Fraction(1)
        yield tuple(form)
    for p1 in range(dim):
        for p2 in range(p1 + 1, dim):
            form = [Fraction(0)] * dim
            form[p1] = Fraction(1)
            form[p2] = Fraction(1)
            yield tuple(form)
    rng = random.Random(seed)
    height = 2
    for round_no in range(random_rounds):
        if round_no and round_no % 10 == 0:
            height *= 2
        yield tuple(Fraction(rng.randint(-height, height)) for _ in range(dim))


def reduce_party(psi: SparseTensor, site: int, seed: int = 0):
    """Find a linear form at ``site`` whose contraction stays globally
    entangled on the remaining parties.

    Genericity makes random rational forms succeed with probability 1, and
    every candidate is verified exactly, so the bounded search is sound;
    exhaustion is surfaced as a diagnostic error rather than silently.
    """
    k = psi.parties
    if k < 3:
        raise ValueError("need at least 3 parties to reduce")
    if not is_globally_entangled(psi):
        raise ValueError("input must be globally entangled")
    tried = 0
    for form in _candidate_forms(psi.shape.dims[site], seed):
        tried += 1
        reduced = contract_site(psi, site, form)
        if not reduced.is_zero and is_globally_entangled(reduced):
            return form
    raise ReducePartySearchError(
        f"no party-reducing form found at site {site} after {tried} candidates;"
        " this should not happen for globally entangled inputs"
    )


@dataclass
class EprChain:
    """Record of successive single-site contractions down to two parties."""

    steps: list[tuple[int, tuple]]
    final_state: SparseTensor


def epr_chain_extract(psi: SparseTensor, seed: int = 0) -> EprChain:
    """Contract parties one at a time (highest site first) until two remain.

    The surviving two-party state has Schmidt rank >= 2, certifying that one
    copy of the input yields an EPR pair between the first two sites by
    local maps alone.
    """
    if not is_globally_entangled(psi):
        raise ValueError("input must be globally entangled")
    steps: list[tuple[int, tuple]] = []
    state = psi
    while state.parties > 2:
        site = state.parties - 1
        form = reduce_party(state, site, seed=seed)
        steps.append((site, form))
        state = contract_site(state, site, form)
    assert flattening_rank(state, [0]) >= 2
    return EprChain(steps, state)
