"""Concordance certificates, cone properties, and concordant containers.

A discordance witness is a pair (alpha, sigma): alpha in the kernel of the
stoichiometric matrix and sigma a nonzero vector of its image whose signs are
compatible — a reaction with alpha_r != 0 must have a reactant species whose
sigma-sign equals alpha_r's sign, and a reaction with alpha_r = 0 must have a
reactant support on which sigma is all zero or carries both signs. A network
is concordant when no witness exists.

The decision procedure is a complete branch-and-prune search over sigma sign
patterns, assigned species by species (most-shared reactant species first,
first nonzero sign pinned to + since witnesses negate jointly). Each partial
pattern is pruned by two exact rational LPs: realizability of the signs
inside Im(N), and feasibility of the alpha-signs already forced by completed
reactant supports (a pure-signed support forces alpha_r to that sign, an
all-zero support forces alpha_r = 0, a mixed support leaves it free — so the
inner problem is a single LP rather than a second sign search). Strict
inequalities are encoded as >= 1, which loses nothing because both
constraint cones are invariant under positive scaling. The search is
budgeted; verdicts are Concordant, Discordant (with a witness), or Unknown
when the node budget runs out.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Literal, Sequence

from .core import Network, Reaction, reaction_vectors, subnetwork
from .linalg import lp_feasible, nullspace_basis, rref, scale_to_integers

DEFAULT_NODE_BUDGET = 5_000_000


@dataclass(frozen=True)
class SignWitness:
    """A discordance certificate: alpha over reactions, sigma over species."""

    alpha: tuple[Fraction, ...]
    sigma: tuple[Fraction, ...]


@dataclass(frozen=True)
class ConcordanceVerdict:
    status: Literal["Concordant", "Discordant", "Unknown"]
    witness: SignWitness | None
    search_nodes: int

    @property
    def concordant(self) -> bool:
        return self.status == "Concordant"


@dataclass(frozen=True)
class ConeCertificate:
    """Feasibility result with the certifying vector when one exists."""

    holds: bool
    vector: tuple[Fraction, ...] | None

    def __bool__(self) -> bool:
        return self.holds


@dataclass(frozen=True)
class M3crReport:
    """Greedily grown maximal concordant container of a mandatory set."""

    container: Network
    discordance_set: tuple[Reaction, ...]
    maximality_verified: bool
    order_dependent: bool
    search_nodes: int


def _signed_point(
    rows: Sequence[Sequence[int]], signs: Sequence[int | None]
) -> list[Fraction] | None:
    """Exact feasible point of {rows . x = 0} under per-coordinate signs.

    signs[j] is +1 for x_j >= 1, -1 for x_j <= -1, 0 for x_j = 0, None for
    unconstrained. Returns None when infeasible.
    """
    if not rows:
        return [Fraction(1 if s == 1 else -1 if s == -1 else 0) for s in signs]
    variables: list[tuple[int, int]] = []  # (coordinate, direction)
    for j, s in enumerate(signs):
        if s == 1:
            variables.append((j, 1))
        elif s == -1:
            variables.append((j, -1))
        elif s is None:
            variables.append((j, 1))
            variables.append((j, -1))
    a_eq = []
    b_eq = []
    for row in rows:
        a_eq.append([direction * row[j] for j, direction in variables])
        offset = 0
        for j, s in enumerate(signs):
            if s == 1:
                offset += row[j]
            elif s == -1:
                offset -= row[j]
        b_eq.append(-offset)
    solution = lp_feasible(a_eq, b_eq)
    if solution is None:
        return None
    point = [
        Fraction(1 if s == 1 else -1 if s == -1 else 0) for s in signs
    ]
    for (j, direction), value in zip(variables, solution):
        point[j] += direction * value
    return point


class _BudgetExhausted(Exception):
    pass


_UNDETERMINED, _ALL_ZERO, _PURE_PLUS, _PURE_MINUS, _MIXED = range(5)


class _WitnessSearch:
    def __init__(self, net: Network, node_budget: int) -> None:
        self.node_budget = node_budget
        self.nodes = 0
        columns = [[int(v) for v in col] for col in reaction_vectors(net)]
        self.reaction_count = len(columns)
        self.species_count = len(net.species)
        n_rows = [
            [columns[r][i] for r in range(self.reaction_count)]
            for i in range(self.species_count)
        ]
        # row-reduce once: the kernel only depends on the row space
        reduced, pivots = rref(n_rows)
        self.n_rows = [
            scale_to_integers(reduced[k]) for k in range(len(pivots))
        ]
        self.left_null = [
            scale_to_integers(w) for w in nullspace_basis(columns)
        ]
        index = {name: i for i, name in enumerate(net.species)}
        self.supports = [
            tuple(index[name] for name, _ in rxn.reactant) for rxn in net.reactions
        ]
        touching: dict[int, list[int]] = {}
        for r, support in enumerate(self.supports):
            for i in support:
                touching.setdefault(i, []).append(r)
        self.touching = touching
        self.order = sorted(touching, key=lambda i: (-len(touching[i]), i))
        self.sign: list[int | None] = [None] * self.species_count
        self.pos = [0] * self.reaction_count
        self.neg = [0] * self.reaction_count
        self.unassigned = [len(s) for s in self.supports]
        self.nonzero_count = 0
        self.alpha_cache: dict[tuple[int, int, int], list[Fraction] | None] = {}
        self.alpha_infeasible: list[tuple[int, int, int]] = []
        self.alpha_pool: list[list[Fraction]] = []
        self.sigma_pool: list[list[Fraction]] = []
        self.zero_alpha = [Fraction(0)] * self.reaction_count

    # -- bookkeeping --------------------------------------------------------

    def _assign(self, i: int, value: int) -> None:
        self.sign[i] = value
        if value:
            self.nonzero_count += 1
        for r in self.touching[i]:
            self.unassigned[r] -= 1
            if value == 1:
                self.pos[r] += 1
            elif value == -1:
                self.neg[r] += 1

    def _unassign(self, i: int, value: int) -> None:
        self.sign[i] = None
        if value:
            self.nonzero_count -= 1
        for r in self.touching[i]:
            self.unassigned[r] += 1
            if value == 1:
                self.pos[r] -= 1
            elif value == -1:
                self.neg[r] -= 1

    def _classify(self, r: int) -> int:
        if self.pos[r] and self.neg[r]:
            return _MIXED
        if self.unassigned[r]:
            return _UNDETERMINED
        if self.pos[r]:
            return _PURE_PLUS
        if self.neg[r]:
            return _PURE_MINUS
        return _ALL_ZERO

    def _signature(self) -> tuple[int, int, int]:
        plus = minus = zero = 0
        for r in range(self.reaction_count):
            kind = self._classify(r)
            if kind == _PURE_PLUS:
                plus |= 1 << r
            elif kind == _PURE_MINUS:
                minus |= 1 << r
            elif kind == _ALL_ZERO:
                zero |= 1 << r
        return plus, minus, zero

    # -- pruning LPs ---------------------------------------------------------

    def _alpha_point(self, signature: tuple[int, int, int]) -> list[Fraction] | None:
        for pooled in self.alpha_pool:
            if self._alpha_conforms(pooled, signature):
                return pooled
        cached = self.alpha_cache.get(signature)
        if cached is not None or signature in self.alpha_cache:
            return cached
        plus, minus, zero = signature
        for p2, m2, z2 in self.alpha_infeasible:
            if p2 & plus == p2 and m2 & minus == m2 and z2 & zero == z2:
                self.alpha_cache[signature] = None
                return None
        signs: list[int | None] = []
        for r in range(self.reaction_count):
            bit = 1 << r
            if plus & bit:
                signs.append(1)
            elif minus & bit:
                signs.append(-1)
            elif zero & bit:
                signs.append(0)
            else:
                signs.append(None)
        point = _signed_point(self.n_rows, signs)
        self.alpha_cache[signature] = point
        if point is None:
            self.alpha_infeasible.append(signature)
        else:
            self.alpha_pool.append(point)
            if len(self.alpha_pool) > 64:
                del self.alpha_pool[0]
        return point

    def _sigma_point(self) -> list[Fraction] | None:
        for pooled in self.sigma_pool:
            if self._sigma_conforms(pooled):
                return pooled
        point = _signed_point(self.left_null, self.sign)
        if point is not None:
            self.sigma_pool.append(point)
            if len(self.sigma_pool) > 64:
                del self.sigma_pool[0]
        return point

    # -- search --------------------------------------------------------------

    def _off_support_sigma(self) -> list[Fraction] | None:
        """A nonzero image vector vanishing on every reactant support."""
        pinned = [list(w) for w in self.left_null]
        for i in self.order:
            row = [0] * self.species_count
            row[i] = 1
            pinned.append(row)
        if not pinned:
            # no left-null constraints and no reactant species at all
            return [Fraction(1)] + [Fraction(0)] * (self.species_count - 1)
        basis = nullspace_basis(pinned)
        if not basis:
            return None
        return [Fraction(v) for v in scale_to_integers(basis[0])]

    def _alpha_conforms(
        self, point: Sequence[Fraction], signature: tuple[int, int, int]
    ) -> bool:
        plus, minus, zero = signature
        for r in range(self.reaction_count):
            bit = 1 << r
            value = point[r]
            if plus & bit:
                if value <= 0:
                    return False
            elif minus & bit:
                if value >= 0:
                    return False
            elif zero & bit and value != 0:
                return False
        return True

    def _sigma_conforms(self, point: Sequence[Fraction]) -> bool:
        for i in self.order:
            wanted = self.sign[i]
            if wanted is None:
                continue
            value = point[i]
            if wanted == 0:
                if value != 0:
                    return False
            elif wanted == 1:
                if value <= 0:
                    return False
            elif value >= 0:
                return False
        return True

    def _viable(
        self, alpha: list[Fraction], sigma: list[Fraction]
    ) -> tuple[list[Fraction], list[Fraction]] | None:
        """Sign-feasibility of the current partial pattern.

        ``alpha``/``sigma`` are the feasible points carried from the parent
        node; both constraint cones are closed under positive scaling, so a
        carried point whose signs still conform proves feasibility without
        another LP. Returns conforming points for the children, or None when
        either side is exactly infeasible.
        """
        signature = self._signature()
        if signature[0] or signature[1]:
            if not self._alpha_conforms(alpha, signature):
                solved = self._alpha_point(signature)
                if solved is None:
                    return None
                alpha = solved
        else:
            alpha = self.zero_alpha
        if not self._sigma_conforms(sigma):
            resolved = self._sigma_point()
            if resolved is None:
                return None
            sigma = resolved
        return alpha, sigma

    def _descend(
        self, depth: int, alpha: list[Fraction], sigma: list[Fraction]
    ) -> SignWitness | None:
        self.nodes += 1
        if self.nodes > self.node_budget:
            raise _BudgetExhausted
        if depth == len(self.order):
            if self.nonzero_count == 0:
                return None
            return SignWitness(tuple(alpha), tuple(sigma))
        i = self.order[depth]
        options = (1, -1, 0) if self.nonzero_count else (1, 0)
        for value in options:
            self._assign(i, value)
            try:
                carried = self._viable(alpha, sigma)
                if carried is not None:
                    witness = self._descend(depth + 1, *carried)
                    if witness is not None:
                        return witness
            finally:
                self._unassign(i, value)
        return None

    def run(self) -> ConcordanceVerdict:
        free_sigma = self._off_support_sigma()
        if free_sigma is not None:
            witness = SignWitness(
                tuple(Fraction(0) for _ in range(self.reaction_count)),
                tuple(free_sigma),
            )
            return ConcordanceVerdict("Discordant", witness, self.nodes)
        zero_sigma = [Fraction(0)] * self.species_count
        try:
            witness = self._descend(0, self.zero_alpha, zero_sigma)
        except _BudgetExhausted:
            return ConcordanceVerdict("Unknown", None, self.nodes)
        if witness is not None:
            return ConcordanceVerdict("Discordant", witness, self.nodes)
        return ConcordanceVerdict("Concordant", None, self.nodes)


def check_concordance(
    net: Network, node_budget: int = DEFAULT_NODE_BUDGET
) -> ConcordanceVerdict:
    """Decide concordance by complete search, within a node budget."""
    return _WitnessSearch(net, node_budget).run()


def verify_witness(net: Network, witness: SignWitness) -> bool:
    """Validate a discordance witness by direct inspection, independent of
    the search: kernel and image membership, sigma nonzero, and the two sign
    conditions reaction by reaction."""
    species_count = len(net.species)
    reaction_count = len(net.reactions)
    if len(witness.sigma) != species_count or len(witness.alpha) != reaction_count:
        raise ValueError("witness dimensions do not match the network")
    columns = reaction_vectors(net)
    for i in range(species_count):
        if sum(witness.alpha[r] * columns[r][i] for r in range(reaction_count)) != 0:
            return False
    if all(v == 0 for v in witness.sigma):
        return False
    for w in nullspace_basis(columns):
        if sum(w[i] * witness.sigma[i] for i in range(species_count)) != 0:
            return False
    index = {name: i for i, name in enumerate(net.species)}
    for r, rxn in enumerate(net.reactions):
        support_signs = {
            (witness.sigma[index[name]] > 0) - (witness.sigma[index[name]] < 0)
            for name, _ in rxn.reactant
        }
        a = witness.alpha[r]
        if a > 0 and 1 not in support_signs:
            return False
        if a < 0 and -1 not in support_signs:
            return False
        if a == 0:
            mixed = 1 in support_signs and -1 in support_signs
            if not (mixed or support_signs <= {0}):
                return False
    return True


def is_positive_dependent(net: Network) -> ConeCertificate:
    """Whether some strictly positive combination of reaction vectors is 0."""
    columns = [[int(v) for v in col] for col in reaction_vectors(net)]
    rows = [
        [columns[r][i] for r in range(len(columns))] for i in range(len(net.species))
    ]
    point = _signed_point(rows, [1] * len(net.reactions))
    return ConeCertificate(point is not None, tuple(point) if point else None)


def is_conservative(net: Network) -> ConeCertificate:
    """Whether a strictly positive vector is orthogonal to every reaction."""
    rows = [[int(v) for v in col] for col in reaction_vectors(net)]
    point = _signed_point(rows, [1] * len(net.species))
    return ConeCertificate(point is not None, tuple(point) if point else None)


def _reaction_indices(net: Network, chosen: Iterable[Reaction | str]) -> list[int]:
    items = list(chosen)
    if not items:
        raise ValueError("mandatory reaction set must be non-empty")
    if all(isinstance(item, str) for item in items):
        return net.indices_of_labels(items)  # type: ignore[arg-type]
    by_arrow = {rxn.arrow: i for i, rxn in enumerate(net.reactions)}
    indices = set()
    for item in items:
        if not isinstance(item, Reaction):
            raise TypeError("mandatory set must hold labels or reactions")
        if item.arrow not in by_arrow:
            raise ValueError(f"reaction not in network: {item}")
        indices.add(by_arrow[item.arrow])
    return sorted(indices)


def m3cr(
    net: Network,
    mandatory: Iterable[Reaction | str],
    node_budget: int = DEFAULT_NODE_BUDGET,
) -> M3crReport:
    """Grow a maximal concordant container of the mandatory reactions.

    Reactions are tried in the parent's order and kept when the container
    stays concordant. Maximality is then verified by re-adding each excluded
    reaction, and a second pass in reverse candidate order flags whether the
    construction is order-dependent. Unknown verdicts (budget exhaustion)
    leave the excluded reaction out and clear maximality_verified.
    """
    base = sorted(set(_reaction_indices(net, mandatory)))
    base_verdict = check_concordance(subnetwork(net, base), node_budget)
    if base_verdict.status == "Discordant":
        raise ValueError("mandatory reaction set generates a discordant subnetwork")
    if base_verdict.status == "Unknown":
        raise ValueError(
            "could not verify mandatory-set concordance within the node budget"
        )
    total_nodes = base_verdict.search_nodes
    in_base = set(base)
    candidates = [i for i in range(len(net.reactions)) if i not in in_base]

    def grow(order: list[int]) -> tuple[list[int], list[int], bool]:
        """Add candidates while concordant, re-trying rejects to a fixed point.

        Rejection is not final: a reaction discordant against an early partial
        container can be concordant against the grown one (discordance does
        not lift to supersets when the species set grows), so passes repeat
        until nothing more fits. In the terminal pass every leftover was
        checked against the final container, which is the maximality proof.
        """
        nonlocal total_nodes
        kept = list(base)
        pending = list(order)
        while True:
            leftovers: list[int] = []
            hit_budget = False
            for cand in pending:
                verdict = check_concordance(
                    subnetwork(net, sorted(kept + [cand])), node_budget
                )
                total_nodes += verdict.search_nodes
                if verdict.status == "Concordant":
                    kept.append(cand)
                else:
                    leftovers.append(cand)
                    hit_budget = hit_budget or verdict.status == "Unknown"
            if len(leftovers) == len(pending):
                return sorted(kept), leftovers, not hit_budget
            pending = leftovers

    kept, excluded, maximal = grow(candidates)
    other_kept, _, _ = grow(list(reversed(candidates)))
    return M3crReport(
        container=subnetwork(net, kept),
        discordance_set=tuple(net.reactions[i] for i in excluded),
        maximality_verified=maximal,
        order_dependent=other_kept != kept,
        search_nodes=total_nodes,
    )
