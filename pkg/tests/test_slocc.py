import math
import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from slocclab.slocc import (
    EprChain,
    check_restriction,
    contract_site,
    epr_chain_extract,
    is_globally_entangled,
    rate_lower_bound_ranks,
    reduce_party,
    schmidt_profile,
)
from slocclab.states import make_epr_pair, make_ghz, make_w
from slocclab.tensors import flattening_rank, identity_maps

F = Fraction


def test_identity_restriction():
    w = make_w(3)
    assert check_restriction(w, w, identity_maps(w))


def test_w_to_epr_by_projecting_spectators():
    # k-2 sites keep |0> only; the remaining two then share an EPR pair.
    k = 4
    w = make_w(k)
    maps = []
    for site in range(k):
        if site < 2:
            maps.append([[F(1), F(0)], [F(0), F(1)]])
        else:
            maps.append([[F(1), F(0)]])  # |0> -> |0>, |1> -> 0
    target = make_epr_pair(0, 1, k)
    # target lives on dims (2,2,1,1); image of W under these maps is
    # |1000> + |0100>, an EPR pair up to relabeling of the two live sites
    image_target = target.map_values(lambda v: v)
    image_target = type(target)(
        target.shape,
        {(1, 0, 0, 0): F(1), (0, 1, 0, 0): F(1)},
    )
    assert check_restriction(w, image_target, maps)


def test_no_tested_map_sends_ghz_to_w_exactly():
    ghz, w = make_ghz(2, 3), make_w(3)
    rng = random.Random(7)
    candidates = [identity_maps(ghz)]
    for _ in range(25):
        candidates.append(
            [
                [[F(rng.randint(-2, 2)) for _ in range(2)] for _ in range(2)]
                for _ in range(3)
            ]
        )
    for maps in candidates:
        assert not check_restriction(ghz, w, maps)


def test_schmidt_profile_w4():
    prof = schmidt_profile(make_w(4))
    assert all(r == 2 for r in prof.ranks.values())
    assert len(prof.ranks) == 2 ** 3 - 1


def test_schmidt_profile_ghz3():
    prof = schmidt_profile(make_ghz(3, 3))
    assert all(r == 3 for r in prof.ranks.values())


def test_schmidt_profile_epr_in_three_parties():
    prof = schmidt_profile(make_epr_pair(0, 1, 3))
    assert prof.rank_of([2]) == 1
    assert prof.rank_of([0]) == 2
    assert prof.rank_of([1]) == 2


def test_profile_complement_symmetry():
    prof = schmidt_profile(make_w(4))
    for S in prof.ranks:
        comp = frozenset(range(4)) - S
        assert prof.rank_of(S) == prof.rank_of(comp)


def test_rate_lower_bound_ghz_to_w():
    b = rate_lower_bound_ranks(make_ghz(2, 3), make_w(3))
    assert (b.target_rank, b.source_rank) == (2, 2)
    assert b.value == 1.0
    b4 = rate_lower_bound_ranks(make_ghz(2, 4), make_w(4))
    assert b4.value == 1.0


def test_rate_lower_bound_ghz_levels():
    b = rate_lower_bound_ranks(make_ghz(2, 3), make_ghz(5, 3))
    assert (b.target_rank, b.source_rank) == (5, 2)
    assert abs(b.value - math.log(5) / math.log(2)) < 1e-12


def test_rate_lower_bound_w_to_ghz_not_tight():
    b = rate_lower_bound_ranks(make_w(3), make_ghz(2, 3))
    assert b.value == 1.0  # both rank 2 everywhere; the true rate is larger


def test_rate_lower_bound_infinite_signal():
    psi = make_epr_pair(0, 1, 3)  # separable at site 2
    phi = make_ghz(2, 3)
    b = rate_lower_bound_ranks(psi, phi)
    assert b.infinite and b.value == math.inf


def test_is_globally_entangled():
    assert is_globally_entangled(make_ghz(2, 4))
    assert is_globally_entangled(make_w(5))
    assert not is_globally_entangled(make_epr_pair(0, 1, 3))


def test_reduce_party_ghz4():
    ghz = make_ghz(2, 4)
    form = reduce_party(ghz, 3)
    reduced = contract_site(ghz, 3, form)
    assert is_globally_entangled(reduced)
    # the (1,1) form gives GHZ on 3 parties; coordinate forms fail first
    assert form == (F(1), F(1))
    assert reduced.entries == make_ghz(2, 3).entries


def test_reduce_party_w4_keeps_zero_branch():
    w = make_w(4)
    form = reduce_party(w, 3)
    assert form == (F(1), F(0))
    reduced = contract_site(w, 3, form)
    assert reduced.entries == make_w(3).entries


def test_reduce_party_rejects_biseparable():
    with pytest.raises(ValueError):
        reduce_party(make_epr_pair(0, 1, 3), 2)


def test_reduce_party_postcondition_rechecked():
    # every returned form must leave a globally entangled state
    for state in [make_ghz(3, 4), make_w(5)]:
        site = state.parties - 1
        form = reduce_party(state, site)
        assert is_globally_entangled(contract_site(state, site, form))


def test_epr_chain_w5():
    chain = epr_chain_extract(make_w(5))
    assert len(chain.steps) == 3  # 5 -> 2 parties
    assert chain.final_state.parties == 2
    assert flattening_rank(chain.final_state, [0]) >= 2


def test_epr_chain_ghz5():
    chain = epr_chain_extract(make_ghz(2, 5))
    assert len(chain.steps) == 3
    assert flattening_rank(chain.final_state, [0]) == 2


def test_epr_chain_rejects_biseparable():
    with pytest.raises(ValueError):
        epr_chain_extract(make_epr_pair(0, 1, 4))
