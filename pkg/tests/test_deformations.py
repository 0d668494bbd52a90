from fractions import Fraction

import pytest

from kummerkit.deformations import (
    DeformationProfile,
    all_profiles,
    blowup_chain,
    deformation_table,
    delta_invariant,
    enumerate_deformations,
    genus_contribution,
    partitions,
    versal_fiber_report,
)
from kummerkit.errors import InvalidInput

from oracles import partition_count


def parts_of(profiles):
    return {p.parts for p in profiles}


@pytest.mark.parametrize("r,delta", [(1, 0), (2, 1), (3, 1), (4, 2), (7, 3)])
def test_delta_invariant(r, delta):
    assert delta_invariant(r) == delta


def test_delta_invariant_rejects_zero():
    with pytest.raises(InvalidInput):
        delta_invariant(0)


@pytest.mark.parametrize("chain,value", [([2], 1), ([2, 2], 2), ([3], 3), ([], 0)])
def test_genus_contribution(chain, value):
    assert genus_contribution(chain) == value


def test_blowup_chain_additivity():
    for r in range(1, 21):
        assert genus_contribution(blowup_chain(r)) == delta_invariant(r)
    assert blowup_chain(5) == [2, 2]


@pytest.mark.parametrize("m,expected", [
    (1, {(2,)}),
    (2, {(2, 2), (4,)}),
    (3, {(2, 2, 2), (4, 2), (6,)}),
])
def test_enumerate_small(m, expected):
    assert parts_of(enumerate_deformations(m)) == expected


def test_only_higher_order_nodes_up_to_12():
    for m in range(1, 13):
        profiles = enumerate_deformations(m)
        assert all(p.all_even for p in profiles)
        assert all(p.total_delta == m for p in profiles)
        assert len(profiles) == partition_count(m)


def test_partitions_are_complete_and_distinct():
    for n in range(1, 16):
        ps = list(partitions(n))
        assert len(ps) == len(set(ps)) == partition_count(n)
        assert all(sum(p) == n and list(p) == sorted(p, reverse=True) for p in ps)


def test_profile_canonical_order_and_validation():
    assert DeformationProfile((2, 4), 3).parts == (4, 2)
    with pytest.raises(InvalidInput):
        DeformationProfile((2, 3), 3)
    with pytest.raises(InvalidInput):
        all_profiles(0)


def test_versal_two_nodes():
    rep = versal_fiber_report([(1, 2), (-1, 2)])
    assert rep.m == 2 and rep.total_delta == 2 and rep.admissible
    assert [(a, n) for a, n, _, _ in rep.singularities] == [(1, 2), (-1, 2)]


def test_versal_tacnode():
    rep = versal_fiber_report([(0, 4)])
    assert rep.admissible and rep.singularities[0][2] == "y^2=x^4"


def test_versal_cusp_rejected():
    rep = versal_fiber_report([(1, 3), (-3, 1)])
    assert rep.m == 2 and rep.total_delta == 1 and not rep.admissible
    assert len(rep.singularities) == 1


def test_versal_rational_positions():
    rep = versal_fiber_report([(Fraction(1, 2), 2), (Fraction(-1, 2), 2)])
    assert rep.admissible


@pytest.mark.parametrize("parts", [
    [(1, 2), (1, 2)],          # repeated a_i
    [(1, 2), (0, 2)],          # not centred
    [(1, 3), (-1, 2)],         # odd total
])
def test_versal_errors(parts):
    with pytest.raises(InvalidInput):
        versal_fiber_report(parts)


def test_deformation_table():
    t = deformation_table(2)
    assert sorted(map(tuple, t["admissible_profiles"])) == [(2, 2), (4,)]
    assert t["theorem_check"]["all_even"]
    assert len(t["all_partitions_with_delta"]) == partition_count(4)
