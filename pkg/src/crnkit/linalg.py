"""Exact linear algebra over the rationals.

Everything downstream that makes a structural claim (ranks, deficiencies,
decompositions, concordance verdicts) goes through this module, so all
arithmetic here is `fractions.Fraction` — no floating point, no tolerances.
Matrices are plain lists of lists; sizes in this package are small (tens of
rows/columns), so clarity wins over vectorization.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Sequence

Scalar = int | Fraction
Matrix = list[list[Fraction]]


def to_matrix(rows: Sequence[Sequence[Scalar]]) -> Matrix:
    """Copy ``rows`` into a rectangular Fraction matrix."""
    out = [[Fraction(x) for x in row] for row in rows]
    if out and any(len(row) != len(out[0]) for row in out):
        raise ValueError("ragged matrix")
    return out


def mat_mul(left: Sequence[Sequence[Scalar]], right: Sequence[Sequence[Scalar]]) -> Matrix:
    """Exact matrix product."""
    if left and right and len(left[0]) != len(right):
        raise ValueError("inner dimensions differ")
    inner = len(right)
    width = len(right[0]) if inner else 0
    return [
        [sum((Fraction(row[k]) * right[k][j] for k in range(inner)), Fraction(0)) for j in range(width)]
        for row in left
    ]


def rref(rows: Sequence[Sequence[Scalar]]) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form.

    Returns:
        ``(R, pivots)`` where ``R`` is the RREF and ``pivots`` lists the pivot
        column of each nonzero row, in order.
    """
    mat = to_matrix(rows)
    nrows = len(mat)
    ncols = len(mat[0]) if nrows else 0
    pivots: list[int] = []
    row = 0
    for col in range(ncols):
        if row == nrows:
            break
        pivot_row = next((i for i in range(row, nrows) if mat[i][col] != 0), None)
        if pivot_row is None:
            continue
        mat[row], mat[pivot_row] = mat[pivot_row], mat[row]
        inv = 1 / mat[row][col]
        mat[row] = [x * inv for x in mat[row]]
        for i in range(nrows):
            if i != row and mat[i][col] != 0:
                factor = mat[i][col]
                mat[i] = [a - factor * b for a, b in zip(mat[i], mat[row])]
        pivots.append(col)
        row += 1
    return mat, pivots


def rank(rows: Sequence[Sequence[Scalar]]) -> int:
    """Rank of a matrix (0 for an empty one)."""
    if not rows:
        return 0
    return len(rref(rows)[1])


def nullspace_basis(rows: Sequence[Sequence[Scalar]]) -> list[list[Fraction]]:
    """Canonical basis of the right nullspace ``{v : A v = 0}``.

    One basis vector per free column, in increasing column order; each has a 1
    in its free coordinate and zeros in every other free coordinate, which
    makes the basis unique for a given column order.
    """
    if not rows:
        return []
    reduced, pivots = rref(rows)
    ncols = len(rows[0])
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        vec = [Fraction(0)] * ncols
        vec[f] = Fraction(1)
        for k, p in enumerate(pivots):
            vec[p] = -reduced[k][f]
        basis.append(vec)
    return basis


def solve_unique(columns: Sequence[Sequence[Scalar]], target: Sequence[Scalar]) -> list[Fraction] | None:
    """Solve ``sum_j c_j * columns[j] = target`` for the coefficients ``c``.

    Intended for ``columns`` that are linearly independent, where a solution
    is unique if it exists. Returns None when ``target`` is outside the span.
    Free coefficients (if the columns were in fact dependent) are set to 0.
    """
    ncols = len(columns)
    dim = len(target)
    augmented = [[Fraction(columns[j][i]) for j in range(ncols)] + [Fraction(target[i])] for i in range(dim)]
    reduced, pivots = rref(augmented)
    if ncols in pivots:
        return None
    coeffs = [Fraction(0)] * ncols
    for k, p in enumerate(pivots):
        coeffs[p] = reduced[k][-1]
    return coeffs


class RowReducer:
    """Incremental Gaussian elimination for rank/independence queries.

    Feed vectors one at a time; ``add`` reports whether the vector enlarged
    the span. Used wherever a greedy "is this independent of what we've kept
    so far" scan appears.
    """

    def __init__(self, dim: int) -> None:
        self.dim = dim
        self._rows: list[list[Fraction]] = []
        self._pivot_cols: list[int] = []

    @property
    def rank(self) -> int:
        return len(self._rows)

    def residual(self, vector: Sequence[Scalar]) -> list[Fraction]:
        """Reduce ``vector`` against the stored rows without adding it."""
        vec = [Fraction(x) for x in vector]
        for row, col in zip(self._rows, self._pivot_cols):
            if vec[col] != 0:
                factor = vec[col]
                vec = [a - factor * b for a, b in zip(vec, row)]
        return vec

    def contains(self, vector: Sequence[Scalar]) -> bool:
        return all(x == 0 for x in self.residual(vector))

    def add(self, vector: Sequence[Scalar]) -> bool:
        """Add ``vector`` to the span; True iff it was independent."""
        vec = self.residual(vector)
        col = next((i for i, x in enumerate(vec) if x != 0), None)
        if col is None:
            return False
        inv = 1 / vec[col]
        vec = [x * inv for x in vec]
        for row in self._rows:
            if row[col] != 0:
                factor = row[col]
                row[:] = [a - factor * b for a, b in zip(row, vec)]
        self._rows.append(vec)
        self._pivot_cols.append(col)
        return True


def scale_to_integers(vector: Sequence[Fraction]) -> list[int]:
    """Scale a rational vector by a positive rational into coprime integers."""
    denom_lcm = 1
    for x in vector:
        denom_lcm = denom_lcm * x.denominator // gcd(denom_lcm, x.denominator)
    ints = [int(x * denom_lcm) for x in vector]
    common = 0
    for v in ints:
        common = gcd(common, v)
    if common > 1:
        ints = [v // common for v in ints]
    return ints


def lp_feasible(
    a_eq: Sequence[Sequence[Scalar]], b_eq: Sequence[Scalar]
) -> list[Fraction] | None:
    """Find ``u >= 0`` with ``A u = b``, or None if the system is infeasible.

    Phase-1 simplex on exact rationals with Bland's rule, so termination is
    guaranteed and verdicts are exact. Returns one feasible point (a basic
    one), not anything optimal — callers only need feasibility witnesses.
    """
    nrows = len(a_eq)
    ncols = len(a_eq[0]) if nrows else 0
    if nrows == 0:
        return [Fraction(0)] * ncols

    # Tableau [A | I | b] with b >= 0; artificial variables start basic.
    tableau: Matrix = []
    for i in range(nrows):
        row = [Fraction(x) for x in a_eq[i]] + [Fraction(0)] * nrows + [Fraction(b_eq[i])]
        if row[-1] < 0:
            row = [-x for x in row]
        row[ncols + i] = Fraction(1)
        tableau.append(row)
    basis = list(range(ncols, ncols + nrows))
    width = ncols + nrows

    # Reduced costs for minimizing the sum of artificials (all basic costs 1).
    obj = [Fraction(0)] * (width + 1)
    for j in range(width + 1):
        col_sum = sum(tableau[i][j] for i in range(nrows))
        cost = Fraction(1) if ncols <= j < width else Fraction(0)
        obj[j] = cost - col_sum

    while True:
        entering = next((j for j in range(width) if obj[j] < 0), None)
        if entering is None:
            break
        leaving = None
        best: Fraction | None = None
        for i in range(nrows):
            coef = tableau[i][entering]
            if coef > 0:
                ratio = tableau[i][-1] / coef
                if best is None or ratio < best or (ratio == best and basis[i] < basis[leaving]):
                    best = ratio
                    leaving = i
        if leaving is None:  # pragma: no cover - phase-1 objective is bounded
            raise RuntimeError("unbounded phase-1 LP")
        pivot_val = tableau[leaving][entering]
        tableau[leaving] = [x / pivot_val for x in tableau[leaving]]
        for i in range(nrows):
            if i != leaving and tableau[i][entering] != 0:
                factor = tableau[i][entering]
                tableau[i] = [a - factor * b for a, b in zip(tableau[i], tableau[leaving])]
        if obj[entering] != 0:
            factor = obj[entering]
            obj = [a - factor * b for a, b in zip(obj, tableau[leaving])]
        basis[leaving] = entering

    infeasibility = sum(tableau[i][-1] for i in range(nrows) if basis[i] >= ncols)
    if infeasibility != 0:
        return None
    solution = [Fraction(0)] * ncols
    for i, var in enumerate(basis):
        if var < ncols:
            solution[var] = tableau[i][-1]
    return solution
