from itertools import permutations
from math import comb, factorial

import pytest

from slocclab.states import (
    Partition,
    make_dicke,
    make_dicke_lambda,
    make_epr_pair,
    make_ghz,
    make_w,
)
from slocclab.tensors import flattening_rank, permute_parties


def test_ghz_2_3():
    g = make_ghz(2, 3)
    assert g.support == {(0, 0, 0), (1, 1, 1)}
    assert all(v == 1 for v in g.entries.values())


def test_ghz_level_one_is_product_term():
    g = make_ghz(1, 4)
    assert g.support == {(0, 0, 0, 0)}


def test_w_support():
    assert make_w(3).support == {(1, 0, 0), (0, 1, 0), (0, 0, 1)}
    assert make_w(2).support == {(1, 0), (0, 1)}
    assert len(make_w(7).entries) == 7


def test_dicke_21_is_w3():
    assert make_dicke(2, 1).entries == make_w(3).entries


def test_dicke_22_support_count():
    assert len(make_dicke(2, 2).entries) == comb(4, 2) == 6


def test_dicke_lambda_single_part_is_w():
    lam = Partition((1,))
    assert make_dicke_lambda(lam, 3).entries == make_w(3).entries


def test_dicke_lambda_counts():
    assert len(make_dicke_lambda(Partition((1, 1)), 3).entries) == 6
    assert len(make_dicke_lambda(Partition((2, 1)), 4).entries) == 12
    # closed form oracle
    lam = Partition((2, 1))
    k = 4
    expected = factorial(k) // (
        factorial(2) * factorial(1) * factorial(k - lam.weight)
    )
    assert expected == 12


def test_dicke_lambda_weight_guard():
    with pytest.raises(ValueError):
        make_dicke_lambda(Partition((2, 1)), 2)


def test_partition_validation():
    with pytest.raises(ValueError):
        Partition((1, 2))
    with pytest.raises(ValueError):
        Partition((2, 0))


def test_epr_pair_basic():
    e = make_epr_pair(0, 1, 2)
    assert e.support == {(0, 0), (1, 1)}


def test_epr_pair_ranks_in_three_parties():
    e = make_epr_pair(0, 1, 3)
    assert flattening_rank(e, [0]) == 2
    assert flattening_rank(e, [1]) == 2
    assert flattening_rank(e, [2]) == 1


def test_epr_pair_rejects_equal_sites():
    with pytest.raises(ValueError):
        make_epr_pair(1, 1, 3)


def test_support_sizes_match_closed_forms():
    assert len(make_ghz(5, 3).entries) == 5
    assert len(make_w(6).entries) == 6
    assert len(make_dicke(3, 2).entries) == comb(5, 2)
    assert len(make_epr_pair(0, 2, 4).entries) == 2


def test_permutation_symmetry_of_constructors():
    states = [
        make_ghz(3, 4),
        make_w(4),
        make_dicke(2, 2),
        make_dicke_lambda(Partition((1, 1)), 4),
    ]
    for s in states:
        for perm in permutations(range(4)):
            assert permute_parties(s, perm).entries == s.entries
