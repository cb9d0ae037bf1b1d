"""Independent decompositions of a network's reaction set.

A decomposition partitions the reactions; it is independent when the parent's
stoichiometric subspace is the direct sum of the blocks' subspaces (rank
additivity), and incidence independent when the analogous identity holds for
the incidence maps, n − ℓ = Σ (n_i − ℓ_i). The finest independent
decomposition (FID) is computed by expressing each reaction vector outside a
greedy basis in that basis and joining it to the basis vectors it loads on;
connected components of that graph are the blocks.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .core import Network, reaction_vectors, subnetwork
from .linalg import RowReducer, solve_unique
from .structure import NetworkNumbers, network_numbers


@dataclass(frozen=True)
class Decomposition:
    """A partition of the parent's reaction indices into canonical blocks.

    Blocks are sorted internally and ordered by smallest member, so equal
    partitions compare equal regardless of construction order.
    """

    parent: Network
    blocks: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        count = len(self.parent.reactions)
        flat = [index for block in self.blocks for index in block]
        if not self.blocks or any(not block for block in self.blocks):
            raise ValueError("blocks must be non-empty")
        if sorted(flat) != list(range(count)):
            raise ValueError("blocks must partition the reaction indices")
        canonical = tuple(tuple(sorted(block)) for block in self.blocks)
        if canonical != self.blocks or list(self.blocks) != sorted(self.blocks):
            raise ValueError("blocks must be sorted and ordered by smallest member")

    @classmethod
    def from_blocks(cls, parent: Network, blocks: Iterable[Iterable[int]]) -> Decomposition:
        """Canonicalize and validate arbitrary block input."""
        canonical = sorted(tuple(sorted(set(block))) for block in blocks)
        return cls(parent, tuple(canonical))

    @property
    def trivial(self) -> bool:
        return len(self.blocks) == 1

    def block_networks(self) -> list[Network]:
        return [subnetwork(self.parent, block) for block in self.blocks]

    def label_sets(self) -> list[set[str]]:
        """Blocks as sets of reaction labels (falling back to index strings)."""
        out = []
        for block in self.blocks:
            names = set()
            for index in block:
                label = self.parent.reactions[index].label
                names.add(label if label is not None else f"#{index}")
            out.append(names)
        return out


def is_independent(decomposition: Decomposition) -> bool:
    """True iff parent rank equals the sum of block ranks."""
    vectors = reaction_vectors(decomposition.parent)
    dim = len(decomposition.parent.species)
    total = RowReducer(dim)
    for vec in vectors:
        total.add(vec)
    block_sum = 0
    for block in decomposition.blocks:
        acc = RowReducer(dim)
        for index in block:
            acc.add(vectors[index])
        block_sum += acc.rank
    return block_sum == total.rank


def is_incidence_independent(decomposition: Decomposition) -> bool:
    """True iff n − ℓ of the parent equals the sum over blocks of n_i − ℓ_i."""
    parent = network_numbers(decomposition.parent)
    total = sum(
        numbers.complexes - numbers.linkage_classes
        for numbers in map(network_numbers, decomposition.block_networks())
    )
    return parent.complexes - parent.linkage_classes == total


class _DisjointSet:
    def __init__(self, size: int) -> None:
        self.parent = list(range(size))

    def find(self, item: int) -> int:
        root = item
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[item] != root:
            self.parent[item], item = root, self.parent[item]
        return root

    def join(self, left: int, right: int) -> None:
        self.parent[self.find(left)] = self.find(right)


def fid(net: Network) -> Decomposition:
    """The finest independent decomposition of the network.

    Greedily selects a maximal independent set of reaction vectors in
    reaction order, expands every remaining vector in that basis, links each
    dependent reaction to the basis reactions it loads on, and returns the
    connected components. The partition is independent and does not depend on
    the scan order.
    """
    vectors = reaction_vectors(net)
    dim = len(net.species)
    groups = _DisjointSet(len(vectors))
    acc = RowReducer(dim)
    basis: list[int] = []
    for j, vec in enumerate(vectors):
        if acc.add(vec):
            basis.append(j)
    basis_columns = [vectors[b] for b in basis]
    basis_set = set(basis)
    for j, vec in enumerate(vectors):
        if j in basis_set:
            continue
        coeffs = solve_unique(basis_columns, vec)
        assert coeffs is not None  # basis spans all reaction vectors
        for b, coeff in zip(basis, coeffs):
            if coeff != 0:
                groups.join(j, b)
    components: dict[int, list[int]] = {}
    for j in range(len(vectors)):
        components.setdefault(groups.find(j), []).append(j)
    return Decomposition.from_blocks(net, components.values())


@dataclass(frozen=True)
class DecompositionNumbers:
    """Counting profiles for a decomposition: the parent, then each block."""

    parent: NetworkNumbers
    blocks: tuple[NetworkNumbers, ...]


def decomposition_numbers(decomposition: Decomposition) -> DecompositionNumbers:
    """Network numbers of the parent and of every block subnetwork."""
    return DecompositionNumbers(
        parent=network_numbers(decomposition.parent),
        blocks=tuple(network_numbers(block) for block in decomposition.block_networks()),
    )
