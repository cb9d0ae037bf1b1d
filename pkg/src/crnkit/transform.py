"""Network transforms and cross-model comparison.

Species-projection (embedded networks), the two reaction rewrites that
preserve dynamics (shifting a reaction by a species vector and splitting it
across its reaction vector), the common-species embedded-network comparison
(CSEN), and the common-reactions (CORE) comparison. A small kinetic layer —
reactions carrying concrete monomial rate functions — supports exact
dynamical-equivalence checking of the rewrites, including rate functions
whose exponents are not the reactant stoichiometry.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .core import Complex, Network, Reaction, common_reactions, reaction_vectors
from .decomp import fid
from .linalg import RowReducer
from .structure import network_numbers

SpeciesVector = Mapping[str, int]


def _as_counts(cpx: Complex) -> dict[str, int]:
    return dict(cpx.terms)


def _shift_complex(cpx: Complex, z: SpeciesVector) -> Complex:
    counts = _as_counts(cpx)
    for name, delta in z.items():
        counts[name] = counts.get(name, 0) + delta
    for name, value in list(counts.items()):
        if value < 0:
            raise ValueError(f"shift makes coefficient of {name} negative")
        if value == 0:
            del counts[name]
    return Complex(counts)


def _vector_of(reactant: Complex, product: Complex) -> dict[str, int]:
    counts = {name: -coeff for name, coeff in reactant}
    for name, coeff in product:
        counts[name] = counts.get(name, 0) + coeff
    return {name: value for name, value in counts.items() if value != 0}


# ---------------------------------------------------------------------------
# embedded networks
# ---------------------------------------------------------------------------


def restrict_reactions(reactions: Sequence[Reaction], keep: Iterable[str]) -> list[Reaction]:
    """Project reactions onto a species subset.

    Species outside ``keep`` are deleted from both complexes; reactions that
    become trivial are dropped, duplicates collapse to their first occurrence.
    A reaction changed by the projection gets its label suffixed with "E".
    """
    kept = set(keep)
    out: list[Reaction] = []
    seen: set[tuple[Complex, Complex]] = set()
    for rxn in reactions:
        reactant = Complex({n: c for n, c in rxn.reactant if n in kept})
        product = Complex({n: c for n, c in rxn.product if n in kept})
        if reactant == product:
            continue
        changed = reactant != rxn.reactant or product != rxn.product
        if (reactant, product) in seen:
            continue
        seen.add((reactant, product))
        label = rxn.label
        if changed and label is not None:
            label = label + "E"
        out.append(Reaction(reactant, product, label))
    return out


def embedded_network(net: Network, keep: Iterable[str]) -> Network:
    """The embedded network of ``net`` on the species subset ``keep``."""
    kept = set(keep)
    if not kept:
        raise ValueError("keep set must be non-empty")
    unknown = kept - set(net.species)
    if unknown:
        raise ValueError(f"unknown species: {', '.join(sorted(unknown))}")
    restricted = restrict_reactions(net.reactions, kept)
    if not restricted:
        raise ValueError("embedding leaves no reactions")
    return Network(restricted)


# ---------------------------------------------------------------------------
# dynamics-preserving rewrites (structural level)
# ---------------------------------------------------------------------------


def shift(net: Network, reaction_index: int, z: SpeciesVector) -> Network:
    """Replace a reaction y→y' with y+z→y'+z (same reaction vector)."""
    rxn = net.reactions[reaction_index]
    shifted = Reaction(_shift_complex(rxn.reactant, z), _shift_complex(rxn.product, z), rxn.label)
    reactions = list(net.reactions)
    reactions[reaction_index] = shifted
    return Network(reactions)


def split_by_reaction_vector(
    net: Network,
    reaction_index: int,
    part1: tuple[Complex, Complex],
    part2: tuple[Complex, Complex],
) -> Network:
    """Replace a reaction by two reactions whose vectors sum to the original's."""
    rxn = net.reactions[reaction_index]
    total = _vector_of(*part1)
    for name, value in _vector_of(*part2).items():
        total[name] = total.get(name, 0) + value
    total = {name: value for name, value in total.items() if value != 0}
    if total != _vector_of(rxn.reactant, rxn.product):
        raise ValueError("part reaction vectors do not sum to the original")
    label_a = rxn.label + "a" if rxn.label else None
    label_b = rxn.label + "b" if rxn.label else None
    reactions = list(net.reactions)
    reactions[reaction_index : reaction_index + 1] = [
        Reaction(part1[0], part1[1], label_a),
        Reaction(part2[0], part2[1], label_b),
    ]
    return Network(reactions)


# ---------------------------------------------------------------------------
# CSEN: common-species embedded-network comparison
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CsenReport:
    """Classification of the two embedded networks' reactions.

    The four classes partition the union of the embedded reaction sets:
    reactions common to the originals, common reactions that only appear
    after embedding, and the reactions unique to each embedded network.
    """

    common_species: tuple[str, ...]
    embedded1: Network
    embedded2: Network
    common_original: tuple[Reaction, ...]
    embedding_derived: tuple[Reaction, ...]
    unique1: tuple[Reaction, ...]
    unique2: tuple[Reaction, ...]


def csen(net1: Network, net2: Network) -> CsenReport:
    """Compare two networks through their common-species embedded networks."""
    shared = [name for name in net1.species if name in set(net2.species)]
    if not shared:
        raise ValueError("networks share no species")
    embedded1 = embedded_network(net1, shared)
    embedded2 = embedded_network(net2, shared)
    arrows1 = {rxn.arrow for rxn in embedded1.reactions}
    arrows2 = {rxn.arrow for rxn in embedded2.reactions}
    original_common = {rxn.arrow for rxn in common_reactions(net1, net2)}
    common_original = tuple(
        rxn for rxn in embedded1.reactions if rxn.arrow in original_common
    )
    embedding_derived = tuple(
        rxn
        for rxn in embedded1.reactions
        if rxn.arrow in arrows2 and rxn.arrow not in original_common
    )
    unique1 = tuple(rxn for rxn in embedded1.reactions if rxn.arrow not in arrows2)
    unique2 = tuple(rxn for rxn in embedded2.reactions if rxn.arrow not in arrows1)
    return CsenReport(
        common_species=tuple(shared),
        embedded1=embedded1,
        embedded2=embedded2,
        common_original=common_original,
        embedding_derived=embedding_derived,
        unique1=unique1,
        unique2=unique2,
    )


# ---------------------------------------------------------------------------
# CORE: the subnetwork generated by common reactions
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ParentCoreView:
    """How the core sits inside one parent's finest independent decomposition."""

    containing_blocks: tuple[frozenset[str], ...]
    union_rank: int
    core_rank: int
    complement_rank: int
    independent_inside_union: bool


@dataclass(frozen=True)
class CoreReport:
    """The common-reactions subnetwork and its placement in both parents."""

    core: Network
    reversible: bool
    deficiency: int
    rank: int
    parent1: ParentCoreView
    parent2: ParentCoreView


def _parent_view(parent: Network, core_arrows: set) -> ParentCoreView:
    decomposition = fid(parent)
    label_sets = decomposition.label_sets()
    containing: list[frozenset[str]] = []
    union_indices: list[int] = []
    for block, labels in zip(decomposition.blocks, label_sets):
        if any(parent.reactions[i].arrow in core_arrows for i in block):
            containing.append(frozenset(labels))
            union_indices.extend(block)
    vectors = reaction_vectors(parent)
    dim = len(parent.species)

    def rank_of(indices: Iterable[int]) -> int:
        acc = RowReducer(dim)
        for i in indices:
            acc.add(vectors[i])
        return acc.rank

    core_indices = [i for i in union_indices if parent.reactions[i].arrow in core_arrows]
    complement = [i for i in union_indices if parent.reactions[i].arrow not in core_arrows]
    union_rank = rank_of(union_indices)
    core_rank = rank_of(core_indices)
    complement_rank = rank_of(complement)
    return ParentCoreView(
        containing_blocks=tuple(containing),
        union_rank=union_rank,
        core_rank=core_rank,
        complement_rank=complement_rank,
        independent_inside_union=core_rank + complement_rank == union_rank,
    )


def core(net1: Network, net2: Network) -> CoreReport:
    """Analyze the subnetwork generated by the common reactions of two models."""
    shared = common_reactions(net1, net2)
    if not shared:
        raise ValueError("networks have no common reactions")
    core_net = Network(shared)
    numbers = network_numbers(core_net)
    core_arrows = {rxn.arrow for rxn in shared}
    return CoreReport(
        core=core_net,
        reversible=numbers.irreversible == 0,
        deficiency=numbers.deficiency,
        rank=numbers.rank,
        parent1=_parent_view(net1, core_arrows),
        parent2=_parent_view(net2, core_arrows),
    )


# ---------------------------------------------------------------------------
# kinetic layer: reactions with concrete monomial rates
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class RatedReaction:
    """A reaction with rate ``rate_constant * Π species^exponent``.

    ``exponents`` need not match the reactant stoichiometry; when it does,
    the reaction is mass action.
    """

    reactant: Complex
    product: Complex
    rate_constant: Fraction
    exponents: Complex
    label: str | None = None

    def __post_init__(self) -> None:
        if self.reactant == self.product:
            raise ValueError("trivial reaction: reactant equals product")
        if self.rate_constant <= 0:
            raise ValueError("rate constant must be positive")

    @property
    def is_mass_action(self) -> bool:
        return self.exponents == self.reactant

    def rate(self, x: Mapping[str, Fraction]) -> Fraction:
        value = self.rate_constant
        for name, power in self.exponents:
            value *= Fraction(x[name]) ** power
        return value


class KineticSystem:
    """An ordered list of rated reactions; structural duplicates are allowed.

    Duplicates matter: splitting reactions apart can produce several copies
    of the same arrow with different rate functions, which is exactly the
    situation the rewrite algebra has to represent faithfully.
    """

    __slots__ = ("_species", "_reactions")

    def __init__(
        self, reactions: Iterable[RatedReaction], species: Sequence[str] | None = None
    ) -> None:
        rxns = tuple(reactions)
        if not rxns:
            raise ValueError("a kinetic system needs at least one reaction")
        seen: dict[str, None] = {}
        for rxn in rxns:
            for part in (rxn.reactant, rxn.product, rxn.exponents):
                for name, _ in part:
                    seen.setdefault(name)
        occurring = tuple(seen)
        if species is None:
            ordered = occurring
        else:
            ordered = tuple(species)
            if len(set(ordered)) != len(ordered) or not set(occurring) <= set(ordered):
                raise ValueError("species list must cover the occurring species")
        object.__setattr__(self, "_species", ordered)
        object.__setattr__(self, "_reactions", rxns)

    def __setattr__(self, name: str, value: object) -> None:
        raise AttributeError("KineticSystem is immutable")

    @property
    def species(self) -> tuple[str, ...]:
        return self._species

    @property
    def reactions(self) -> tuple[RatedReaction, ...]:
        return self._reactions

    @classmethod
    def mass_action(
        cls,
        net: Network,
        rate_constants: Sequence[Fraction | int] | Mapping[str, Fraction | int],
    ) -> KineticSystem:
        """Attach mass-action kinetics to a network.

        ``rate_constants`` is either one value per reaction in order, or a
        mapping keyed by reaction label.
        """
        if isinstance(rate_constants, Mapping):
            values = []
            for rxn in net.reactions:
                if rxn.label is None or rxn.label not in rate_constants:
                    raise ValueError(f"missing rate constant for {rxn}")
                values.append(Fraction(rate_constants[rxn.label]))
            extras = set(rate_constants) - {r.label for r in net.reactions}
            if extras:
                raise ValueError(f"rate constants for unknown labels: {sorted(extras)}")
        else:
            if len(rate_constants) != len(net.reactions):
                raise ValueError("need exactly one rate constant per reaction")
            values = [Fraction(v) for v in rate_constants]
        rated = [
            RatedReaction(rxn.reactant, rxn.product, k, rxn.reactant, rxn.label)
            for rxn, k in zip(net.reactions, values)
        ]
        return cls(rated, species=net.species)

    def rhs(self, x: Mapping[str, Fraction]) -> dict[str, Fraction]:
        """Exact species production rates at the point ``x``."""
        out = {name: Fraction(0) for name in self._species}
        for rxn in self._reactions:
            rate = rxn.rate(x)
            for name, coeff in rxn.product:
                out[name] += coeff * rate
            for name, coeff in rxn.reactant:
                out[name] -= coeff * rate
        return out

    def shift(self, reaction_index: int, z: SpeciesVector) -> KineticSystem:
        """Shift one reaction by a species vector, keeping its rate function."""
        rxn = self._reactions[reaction_index]
        shifted = RatedReaction(
            _shift_complex(rxn.reactant, z),
            _shift_complex(rxn.product, z),
            rxn.rate_constant,
            rxn.exponents,
            rxn.label,
        )
        reactions = list(self._reactions)
        reactions[reaction_index] = shifted
        return KineticSystem(reactions, species=self._merged_species(shifted))

    def split(
        self,
        reaction_index: int,
        part1: tuple[Complex, Complex],
        part2: tuple[Complex, Complex],
    ) -> KineticSystem:
        """Split one reaction across its reaction vector; parts inherit its rate."""
        rxn = self._reactions[reaction_index]
        total = _vector_of(*part1)
        for name, value in _vector_of(*part2).items():
            total[name] = total.get(name, 0) + value
        total = {name: value for name, value in total.items() if value != 0}
        if total != _vector_of(rxn.reactant, rxn.product):
            raise ValueError("part reaction vectors do not sum to the original")
        parts = [
            RatedReaction(
                part[0],
                part[1],
                rxn.rate_constant,
                rxn.exponents,
                f"{rxn.label}{suffix}" if rxn.label else None,
            )
            for part, suffix in ((part1, "a"), (part2, "b"))
        ]
        reactions = list(self._reactions)
        reactions[reaction_index : reaction_index + 1] = parts
        return KineticSystem(reactions, species=self._merged_species(*parts))

    def _merged_species(self, *new: RatedReaction) -> tuple[str, ...]:
        ordered = dict.fromkeys(self._species)
        for rxn in new:
            for part in (rxn.reactant, rxn.product, rxn.exponents):
                for name, _ in part:
                    ordered.setdefault(name)
        return tuple(ordered)

    def mass_action_census(self) -> tuple[int, int]:
        """(mass-action count, generalized count) over the reactions."""
        mak = sum(1 for rxn in self._reactions if rxn.is_mass_action)
        return mak, len(self._reactions) - mak


def same_dynamics(
    first: KineticSystem, second: KineticSystem, points: int = 200, seed: int = 0
) -> bool:
    """Exact equality of the two systems' right-hand sides at random points.

    Points are positive rationals; equality is checked exactly, so a single
    mismatch is decisive and agreement on all points is decisive for
    polynomial right-hand sides of these sizes.
    """
    if set(first.species) != set(second.species):
        raise ValueError("systems live on different species sets")
    rng = random.Random(seed)
    for _ in range(points):
        x = {
            name: Fraction(rng.randint(1, 999), rng.randint(1, 999))
            for name in first.species
        }
        left = first.rhs(x)
        right = second.rhs(x)
        if any(left[name] != right[name] for name in first.species):
            return False
    return True
