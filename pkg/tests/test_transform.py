"""Tests for embedded networks, rewrites, CSEN/CORE comparisons, kinetics."""

from fractions import Fraction

import pytest
from hypothesis import given, settings

from crnkit import fixtures
from crnkit.core import Complex, Network, Reaction, parse_network, reaction_vectors
from crnkit.transform import (
    CsenReport,
    KineticSystem,
    RatedReaction,
    core,
    csen,
    embedded_network,
    restrict_reactions,
    same_dynamics,
    shift,
    split_by_reaction_vector,
)

from netgen import networks

LEE = fixtures.load("lee")
FAL = fixtures.load("fal")
SCHMITZ = fixtures.load("schmitz")
MACLEAN = fixtures.load("maclean")
AUGMENTED = fixtures.load("schmitz-augmented")


def arrows(reactions):
    return {rxn.arrow for rxn in reactions}


def labels(reactions):
    return {rxn.label for rxn in reactions}


def cpx(text: str) -> Complex:
    net = parse_network(f"{text} -> ZZZPROBE" if text != "ZZZPROBE" else "0 -> ZZZPROBE")
    return net.reactions[0].reactant


def arrow(reactant: str, product: str):
    return (cpx(reactant), cpx(product))


# ---------------------------------------------------------------------------
# restriction / embedded networks
# ---------------------------------------------------------------------------


def test_restrict_drops_species_and_marks_changed_labels():
    net = parse_network("A + B -> C @R1\nC -> A @R2\n")
    out = restrict_reactions(net.reactions, {"A", "C"})
    assert [(r.label, r.arrow) for r in out] == [
        ("R1E", arrow("A", "C")),
        ("R2", arrow("C", "A")),
    ]


def test_restrict_to_single_species_keeps_flows():
    net = parse_network("A + B -> C @R1\nC -> A @R2\n")
    out = restrict_reactions(net.reactions, {"A"})
    assert [(r.label, r.arrow) for r in out] == [
        ("R1E", arrow("A", "0")),
        ("R2E", arrow("0", "A")),
    ]


def test_restrict_drops_trivial_and_collapses_duplicates():
    net = parse_network("A + B -> A + C @R1\nA + B -> D @R2\nA + C -> D @R3\n")
    out = restrict_reactions(net.reactions, {"A", "D"})
    assert [(r.label, r.arrow) for r in out] == [("R2E", arrow("A", "D"))]


def test_embedded_network_validates_input():
    net = parse_network("A -> B\n")
    with pytest.raises(ValueError):
        embedded_network(net, [])
    with pytest.raises(ValueError):
        embedded_network(net, ["A", "Z"])
    twin = parse_network("A + B -> A + C\n")
    with pytest.raises(ValueError):
        embedded_network(twin, ["A"])  # every reaction restricts to 0 -> 0


def test_embedded_identity_on_full_species_set():
    assert embedded_network(SCHMITZ, SCHMITZ.species) == SCHMITZ


def test_schmitz_embedded_on_shared_maclean_species():
    shared = [s for s in SCHMITZ.species if s in set(MACLEAN.species)]
    assert sorted(shared) == [f"A{i}" for i in range(1, 10)]
    emb = embedded_network(SCHMITZ, shared)
    assert len(emb.reactions) == 15
    by_label = {r.label: r for r in emb.reactions}
    assert by_label["R10E"].arrow == arrow("A8", "A1")
    assert by_label["R11E"].arrow == arrow("A9", "A3")
    unchanged = {f"R{i}" for i in range(1, 10)} | {"R14", "R15", "R16", "R17"}
    assert set(by_label) == unchanged | {"R10E", "R11E"}


def test_maclean_embedded_on_shared_schmitz_species():
    shared = [s for s in MACLEAN.species if s in set(SCHMITZ.species)]
    emb = embedded_network(MACLEAN, shared)
    assert len(emb.reactions) == 19
    by_label = {r.label: r for r in emb.reactions}
    assert by_label["R22E"].arrow == arrow("A2", "0")
    assert by_label["R23E"].arrow == arrow("0", "A2")
    assert by_label["R24E"].arrow == arrow("A3", "0")
    assert by_label["R25E"].arrow == arrow("0", "A3")
    assert by_label["R30E"].arrow == arrow("A1", "0")
    assert by_label["R31E"].arrow == arrow("0", "A1")
    assert by_label["R36"].arrow == arrow("A8", "A1")
    assert by_label["R38"].arrow == arrow("A4", "0")


# ---------------------------------------------------------------------------
# shift / split at the network level
# ---------------------------------------------------------------------------


def test_shift_adds_species_vector_to_both_sides():
    net = parse_network("A -> B @R1\nB -> A @R2\n")
    out = shift(net, 0, {"A": 1})
    assert out.reactions[0].arrow == arrow("2 A", "A + B")
    assert out.reactions[0].label == "R1"
    assert reaction_vectors(out)[0] == reaction_vectors(net)[0]


def test_shift_rejects_negative_coefficients():
    net = parse_network("A -> B\n")
    with pytest.raises(ValueError):
        shift(net, 0, {"B": -1})


def test_split_replaces_reaction_with_two_parts():
    net = parse_network("A -> B @R1\nB -> A @R2\n")
    out = split_by_reaction_vector(net, 0, arrow("A", "0"), arrow("0", "B"))
    assert [r.label for r in out.reactions] == ["R1a", "R1b", "R2"]
    assert out.reactions[0].arrow == arrow("A", "0")
    assert out.reactions[1].arrow == arrow("0", "B")


def test_split_requires_parts_to_sum_to_the_vector():
    net = parse_network("A -> B\n")
    with pytest.raises(ValueError):
        split_by_reaction_vector(net, 0, arrow("A", "0"), arrow("0", "2 B"))


# ---------------------------------------------------------------------------
# CSEN comparisons
# ---------------------------------------------------------------------------


def test_csen_requires_shared_species():
    with pytest.raises(ValueError):
        csen(parse_network("A -> B\n"), parse_network("C -> D\n"))


def test_csen_lee_fal():
    report = csen(LEE, FAL)
    assert len(report.common_species) == 14
    assert set(report.common_species) == set(LEE.species) - {"A22"}
    assert set(report.common_species) == set(FAL.species) - {"A28"}
    assert len(report.embedded1.reactions) == 22
    assert len(report.embedded2.reactions) == 23
    assert len(report.common_original) == 19
    assert labels(report.embedding_derived) == {"R41E", "R42E"}
    assert arrows(report.embedding_derived) == {arrow("A23", "A2"), arrow("A2", "A23")}
    assert labels(report.unique1) == {"R40E"}
    assert arrows(report.unique1) == {arrow("A13 + A2", "A13 + A23")}
    assert labels(report.unique2) == {"R53E", "R56E"}
    assert arrows(report.unique2) == {arrow("A13 + A2", "0"), arrow("0", "A13 + A23")}


def test_csen_schmitz_maclean():
    report = csen(SCHMITZ, MACLEAN)
    assert sorted(report.common_species) == [f"A{i}" for i in range(1, 10)]
    assert len(report.embedded1.reactions) == 15
    assert len(report.embedded2.reactions) == 19
    assert labels(report.common_original) == {f"R{i}" for i in range(1, 10)}
    assert arrows(report.embedding_derived) == {arrow("A8", "A1"), arrow("A9", "A3")}
    assert labels(report.embedding_derived) == {"R10E", "R11E"}
    assert arrows(report.unique1) == {
        arrow("A1", "A2"),
        arrow("A2", "A1"),
        arrow("A1", "A3"),
        arrow("A3", "A1"),
    }
    assert arrows(report.unique2) == {
        arrow("A4", "0"),
        arrow("A5", "0"),
        arrow("A2", "0"),
        arrow("0", "A2"),
        arrow("A3", "0"),
        arrow("0", "A3"),
        arrow("A1", "0"),
        arrow("0", "A1"),
    }


def test_csen_fal_maclean():
    report = csen(FAL, MACLEAN)
    assert set(report.common_species) == {"A1", "A2", "A4", "A6", "A7", "A8", "A12", "A13"}
    assert len(report.embedded1.reactions) == 16
    assert labels(report.common_original) == {"R1", "R4", "R5", "R18", "R19", "R38"}
    assert arrows(report.embedding_derived) == {
        arrow("0", "A1"),
        arrow("A2", "0"),
        arrow("0", "A2"),
        arrow("0", "A13"),
    }
    assert arrows(report.unique1) == {
        arrow("A1", "A2"),
        arrow("A2", "A1"),
        arrow("A8", "0"),
        arrow("A4 + A6", "A7"),
        arrow("A7", "A4 + A6"),
        arrow("A13 + A2", "0"),
    }
    assert arrows(report.unique2) == {
        arrow("A6", "A7"),
        arrow("A7", "A6"),
        arrow("A13", "0"),
        arrow("A13 + A1", "0"),
        arrow("0", "A13 + A1"),
        arrow("0", "A13 + A2"),
        arrow("A8", "A1"),
    }


def test_csen_classes_partition_the_embedded_union():
    for first, second in [(LEE, FAL), (SCHMITZ, MACLEAN), (FAL, MACLEAN)]:
        report = csen(first, second)
        classes = [
            arrows(report.common_original),
            arrows(report.embedding_derived),
            arrows(report.unique1),
            arrows(report.unique2),
        ]
        union = arrows(report.embedded1.reactions) | arrows(report.embedded2.reactions)
        assert set.union(*classes) == union
        assert sum(len(c) for c in classes) == len(union)


# ---------------------------------------------------------------------------
# CORE comparisons
# ---------------------------------------------------------------------------


def test_core_requires_common_reactions():
    with pytest.raises(ValueError):
        core(parse_network("A -> B\n"), parse_network("A -> 2 B\n"))


def test_core_fal_maclean():
    report = core(FAL, MACLEAN)
    assert labels(report.core.reactions) == {"R1", "R4", "R5", "R18", "R19", "R38"}
    assert report.rank == 3
    assert report.reversible
    assert report.deficiency == 0

    fal_view = report.parent1
    assert {frozenset(b) for b in fal_view.containing_blocks} == {
        frozenset({"R1", "R4", "R5", "R12", "R38", "R45", "R46"}),
        frozenset({"R18", "R19"}),
    }
    assert (fal_view.union_rank, fal_view.core_rank, fal_view.complement_rank) == (5, 3, 3)
    assert not fal_view.independent_inside_union

    mac_view = report.parent2
    assert {frozenset(b) for b in mac_view.containing_blocks} == {
        frozenset({f"R{i}" for i in range(1, 8)} | {"R36", "R37", "R38", "R39"}),
        frozenset({"R18", "R19"}),
    }
    assert (mac_view.union_rank, mac_view.core_rank, mac_view.complement_rank) == (5, 3, 4)
    assert not mac_view.independent_inside_union


def test_core_augmented_schmitz_maclean():
    report = core(AUGMENTED, MACLEAN)
    assert labels(report.core.reactions) == {f"R{i}" for i in range(1, 10)} | {"R38"}
    assert report.rank == 5
    assert report.reversible
    assert report.deficiency == 0
    mac_view = report.parent2
    assert {frozenset(b) for b in mac_view.containing_blocks} == {
        frozenset({f"R{i}" for i in range(1, 8)} | {"R36", "R37", "R38", "R39"}),
        frozenset({"R8", "R9"}),
    }
    # the common reactions already span the whole containing union
    assert mac_view.union_rank == mac_view.core_rank == 5
    assert mac_view.complement_rank == 3
    assert not mac_view.independent_inside_union


# ---------------------------------------------------------------------------
# kinetic systems
# ---------------------------------------------------------------------------


def _mass_action(net: Network) -> KineticSystem:
    return KineticSystem.mass_action(
        net, [Fraction(i + 2, 2 * i + 1) for i in range(len(net.reactions))]
    )


def test_mass_action_rate_constants_by_label():
    net = parse_network("A -> B @R1\nB -> A @R2\n")
    system = KineticSystem.mass_action(net, {"R1": 2, "R2": Fraction(1, 3)})
    assert [r.rate_constant for r in system.reactions] == [Fraction(2), Fraction(1, 3)]
    with pytest.raises(ValueError):
        KineticSystem.mass_action(net, {"R1": 2})
    with pytest.raises(ValueError):
        KineticSystem.mass_action(net, {"R1": 2, "R2": 1, "R9": 1})
    with pytest.raises(ValueError):
        KineticSystem.mass_action(net, [1])


def test_rated_reaction_validation():
    a, b = cpx("A"), cpx("B")
    with pytest.raises(ValueError):
        RatedReaction(a, a, Fraction(1), a)
    with pytest.raises(ValueError):
        RatedReaction(a, b, Fraction(0), a)


def test_rhs_matches_hand_computed_polynomials():
    net = parse_network("2 A -> B @R1\nB -> A @R2\n")
    system = KineticSystem.mass_action(net, [3, Fraction(1, 2)])
    x = {"A": Fraction(1, 2), "B": Fraction(4)}
    # rates: 3 * (1/2)^2 = 3/4 and (1/2) * 4 = 2
    assert system.rhs(x) == {"A": Fraction(-3, 2) + 2, "B": Fraction(3, 4) - 2}


def test_non_mass_action_rate_uses_its_own_exponents():
    rxn = RatedReaction(cpx("2 A"), cpx("A"), Fraction(5), cpx("A"))
    assert not rxn.is_mass_action
    assert rxn.rate({"A": Fraction(1, 3)}) == Fraction(5, 3)
    system = KineticSystem([rxn])
    assert system.rhs({"A": Fraction(1, 3)}) == {"A": -Fraction(5, 3)}
    assert system.mass_action_census() == (0, 1)


def test_kinetic_shift_and_split_preserve_dynamics():
    system = _mass_action(SCHMITZ)
    shifted = system.shift(0, {"A1": 1})
    assert same_dynamics(system, shifted, points=40)
    rxn = system.reactions[13]
    split = system.split(13, (rxn.reactant, Complex({})), (Complex({}), rxn.product))
    assert same_dynamics(system, split, points=40)
    assert len(split.reactions) == len(system.reactions) + 1


def test_same_dynamics_distinguishes_different_rates():
    net = parse_network("A -> B\n")
    one = KineticSystem.mass_action(net, [1])
    two = KineticSystem.mass_action(net, [2])
    assert not same_dynamics(one, two, points=5)
    other = KineticSystem.mass_action(parse_network("C -> D\n"), [1])
    with pytest.raises(ValueError):
        same_dynamics(one, other)


def test_split_validates_vector_sum_for_kinetic_systems():
    system = _mass_action(parse_network("A -> B\n"))
    with pytest.raises(ValueError):
        system.split(0, arrow("A", "0"), arrow("0", "2 B"))


def test_realizing_the_maclean_flows_from_schmitz_kinetics():
    """Rewrite the embedded Schmitz model, with its mass-action rates, into a
    system whose reactions all belong to the (augmented) embedded MacLean
    model: four exchange reactions split into flows, two flow copies shifted
    onto the A1 -> 2 A1 / 2 A1 -> A1 pair. The rewrite is exactly dynamics
    preserving and leaves 14 of the 19 reactions mass action."""
    shared = [s for s in SCHMITZ.species if s in set(MACLEAN.species)]
    nse = embedded_network(SCHMITZ, shared)
    system = KineticSystem.mass_action(
        nse, {r.label: Fraction(i + 3, i + 2) for i, r in enumerate(nse.reactions)}
    )

    def index_of(label):
        return next(i for i, r in enumerate(system.reactions) if r.label == label)

    zero = Complex({})
    for label in ("R14", "R15", "R16", "R17"):
        i = index_of(label)
        rxn = system.reactions[i]
        system = system.split(i, (rxn.reactant, zero), (zero, rxn.product))

    system = system.shift(index_of("R17b"), {"A1": 1})  # 0 -> A1 becomes A1 -> 2 A1
    system = system.shift(index_of("R16a"), {"A1": 1})  # A1 -> 0 becomes 2 A1 -> A1

    assert len(system.reactions) == 19
    assert system.mass_action_census() == (14, 5)

    nme = embedded_network(MACLEAN, shared)
    expected = (arrows(nme.reactions) - {arrow("A4", "0"), arrow("A5", "0")}) | {
        arrow("A1", "2 A1"),
        arrow("2 A1", "A1"),
    }
    got = [ (r.reactant, r.product) for r in system.reactions ]
    assert set(got) == expected
    assert len(got) == len(set(got))

    original = KineticSystem.mass_action(
        nse, {r.label: Fraction(i + 3, i + 2) for i, r in enumerate(nse.reactions)}
    )
    assert same_dynamics(original, system, points=200)


def test_splitting_an_embedded_lee_reaction_preserves_dynamics_exactly():
    shared = [s for s in LEE.species if s in set(FAL.species)]
    nle = embedded_network(LEE, shared)
    assert len(nle.reactions) == 22
    system = KineticSystem.mass_action(
        nle, {r.label: Fraction(2 * i + 1, i + 4) for i, r in enumerate(nle.reactions)}
    )
    i = next(j for j, r in enumerate(system.reactions) if r.label == "R40E")
    zero = Complex({})
    rxn = system.reactions[i]
    split = system.split(i, (rxn.reactant, zero), (zero, rxn.product))
    part_a, part_b = split.reactions[i], split.reactions[i + 1]
    assert part_a.exponents == part_b.exponents == Complex({"A13": 1, "A2": 1})
    assert part_a.rate_constant == part_b.rate_constant == rxn.rate_constant
    assert part_a.is_mass_action and not part_b.is_mass_action
    assert same_dynamics(system, split, points=200)


# ---------------------------------------------------------------------------
# properties
# ---------------------------------------------------------------------------


@settings(max_examples=60, deadline=None)
@given(networks())
def test_embedding_on_all_species_is_identity(net):
    assert embedded_network(net, net.species) == net


@settings(max_examples=60, deadline=None)
@given(networks())
def test_shift_then_unshift_restores_the_network(net):
    name = net.species[0]
    shifted = shift(net, 0, {name: 2})
    assert shift(shifted, 0, {name: -2}) == net


@settings(max_examples=40, deadline=None)
@given(networks())
def test_mass_action_systems_are_mass_action(net):
    system = _mass_action(net)
    assert system.mass_action_census() == (len(net.reactions), 0)
    point = {name: Fraction(1, 2) for name in net.species}
    values = system.rhs(point)
    assert set(values) == set(net.species)
