"""Tests for whole-network structural invariants."""

from __future__ import annotations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from crnkit import fixtures
from crnkit.core import Network, build_matrices, parse_network
from crnkit.linalg import nullspace_basis
from crnkit.structure import (
    deficiency_zero_report,
    kinetic_subspace_coincides,
    linkage_partitions,
    network_numbers,
    structural_flags,
)
from netgen import networks

BRANCHED_TEXT = """\
2 X1 -> X3 @ R1
X2 + X3 -> X3 @ R2
X3 -> X2 + X3 @ R3
3 X4 -> X2 + X3 @ R4
2 X1 -> 3 X4 @ R5
"""


def test_network_numbers_branched_example():
    numbers = network_numbers(parse_network(BRANCHED_TEXT))
    assert numbers.as_tuple() == (4, 4, 4, 1, 3, 5, 1, 3, 1, 3, 4, 0, 0)


def test_network_numbers_lee_profile():
    numbers = network_numbers(fixtures.load("lee"))
    assert numbers.as_tuple() == (15, 21, 19, 9, 4, 22, 8, 12, 8, 11, 15, 2, 4)


def test_network_numbers_schmitz_profile():
    numbers = network_numbers(fixtures.load("schmitz"))
    assert numbers.as_tuple() == (11, 16, 14, 6, 5, 17, 5, 10, 5, 9, 11, 2, 3)


def test_linkage_partitions_branched_example():
    net = parse_network(BRANCHED_TEXT)
    linkage, strong, terminal = linkage_partitions(net)
    # Complex indices: 0 = 2 X1, 1 = X3, 2 = X2 + X3, 3 = 3 X4.
    assert linkage == [[0, 1, 2, 3]]
    assert strong == [[0], [1, 2], [3]]
    assert terminal == [[1, 2]]


def test_linkage_partitions_trivial_cases():
    one_way = parse_network("A -> B")
    linkage, strong, terminal = linkage_partitions(one_way)
    assert linkage == [[0, 1]]
    assert strong == [[0], [1]]
    assert terminal == [[1]]

    both_ways = parse_network("A <-> B")
    linkage, strong, terminal = linkage_partitions(both_ways)
    assert strong == [[0, 1]]
    assert terminal == [[0, 1]]


@pytest.mark.parametrize("name", ["lee", "fal", "maclean", "schmitz"])
def test_structural_flags_wnt_models(name):
    flags = structural_flags(fixtures.load(name))
    assert flags.branching
    assert flags.closed
    assert not flags.cycle_terminal
    assert flags.high_reactant_diversity
    assert not flags.maximally_closed
    assert not flags.point_terminal
    assert flags.t_minimal
    assert not flags.weakly_reversible


def test_structural_flags_trivial_cases():
    assert structural_flags(parse_network("A <-> B")).weakly_reversible
    assert not structural_flags(parse_network("A -> B")).branching


@pytest.mark.parametrize("name", ["lee", "fal", "maclean", "schmitz"])
def test_kinetic_subspace_wnt_models(name):
    assert kinetic_subspace_coincides(fixtures.load(name)) == "yes"


def test_kinetic_subspace_trivial_cases():
    assert kinetic_subspace_coincides(parse_network("A -> B\nA -> C")) == "unknown"
    assert kinetic_subspace_coincides(parse_network("A <-> B")) == "yes"


def test_deficiency_zero_report():
    one_way = deficiency_zero_report(parse_network("A -> B"))
    assert one_way.deficiency == 0
    assert not one_way.weakly_reversible
    assert not one_way.applies

    pair = deficiency_zero_report(parse_network("A <-> B"))
    assert pair.applies and pair.reversible

    cycle = deficiency_zero_report(parse_network("A -> B\nB -> C\nC -> A"))
    assert cycle.applies
    assert cycle.weakly_reversible
    assert not cycle.reversible


# ---------------------------------------------------------------------------
# properties
# ---------------------------------------------------------------------------


@given(networks())
def test_counting_identities(net):
    numbers = network_numbers(net)
    assert numbers.deficiency >= 0
    assert numbers.reactant_deficiency >= 0
    assert 2 * numbers.reversible_pairs + numbers.irreversible == numbers.reactions
    assert (
        numbers.linkage_classes
        <= numbers.terminal_classes
        <= numbers.strong_classes
        <= numbers.complexes
    )
    assert numbers.rank <= min(numbers.species, numbers.reactions)
    assert numbers.reactant_rank <= min(numbers.species, numbers.reactant_complexes)


@given(networks())
def test_rank_matches_left_nullspace_dimension(net):
    numbers = network_numbers(net)
    stoich = build_matrices(net).stoichiometric
    transpose = [list(col) for col in zip(*stoich)]
    assert numbers.rank == numbers.species - len(nullspace_basis(transpose))


@given(networks(), st.randoms(use_true_random=False))
def test_numbers_invariant_under_reaction_permutation(net, rng):
    reactions = list(net.reactions)
    rng.shuffle(reactions)
    shuffled = Network(reactions)
    assert network_numbers(shuffled) == network_numbers(net)


@given(networks())
def test_linkage_classes_partition_complexes(net):
    mats = build_matrices(net)
    linkage, strong, terminal = linkage_partitions(net)
    for partition in (linkage, strong):
        flat = sorted(index for block in partition for index in block)
        assert flat == list(range(len(mats.complexes)))
    terminal_sets = {tuple(block) for block in terminal}
    assert terminal_sets <= {tuple(block) for block in strong}
