"""Integral lattices with symmetric Gram matrices.

Sign convention: definite lattices here are *negative* definite (diagonal
norms negative), and requested norms are passed as nonpositive integers.

Short-vector enumeration is Fincke-Pohst on the positive-definite form -G
with an exact rational (Fraction) decomposition; every pruning bound is an
exact rational comparison, so completeness does not depend on floating
point.  Output order is deterministic: lexicographic on coordinates, and
under ``up_to_sign`` one representative per {x, -x} with the first nonzero
coordinate positive.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import (
    EmptyLatticeError,
    NotDefiniteError,
    NotUnimodularError,
    PreconditionError,
    SelfCheckError,
)
from .intmat import IntegerMatrix, block_diagonal, determinant, integer_kernel

LatticeVector = tuple[int, ...]


@dataclass(frozen=True)
class Lattice:
    """Free module of finite rank with an integer symmetric pairing."""

    gram: IntegerMatrix

    def __post_init__(self):
        if not self.gram.is_symmetric():
            raise ValueError("Gram matrix must be square and symmetric")

    @property
    def rank(self) -> int:
        return self.gram.rows

    @classmethod
    def from_gram(cls, rows: Sequence[Sequence[int]]) -> "Lattice":
        n = len(rows)
        return cls(IntegerMatrix.from_rows(rows, cols=n))

    def inner(self, x: Sequence[int], y: Sequence[int]) -> int:
        gx = self.gram.apply(tuple(x))
        return sum(a * b for a, b in zip(gx, y))

    def norm(self, x: Sequence[int]) -> int:
        return self.inner(x, x)

    def determinant(self) -> int:
        return determinant(self.gram)

    def is_negative_definite(self) -> bool:
        """Exact sign test on all leading principal minors."""
        for i in range(1, self.rank + 1):
            minor = determinant(self.gram.submatrix(range(i), range(i)))
            if (minor if i % 2 == 0 else -minor) <= 0:
                return False
        return True

    def is_unimodular(self) -> bool:
        return abs(self.determinant()) == 1

    def orthogonal_sum(self, other: "Lattice") -> "Lattice":
        return Lattice(block_diagonal([self.gram, other.gram]))

    def vectors_of_norm(self, m: int, up_to_sign: bool = False) -> list[LatticeVector]:
        """All x with x.G.x == m, complete and deduplicated.

        Requires a negative definite lattice and m <= 0.
        """
        if m > 0:
            raise PreconditionError("requested norm must be <= 0 in a negative definite lattice")
        if not self.is_negative_definite():
            raise NotDefiniteError("short-vector enumeration needs a negative definite lattice")
        n = self.rank
        if n == 0:
            return [()] if m == 0 else []
        found = _fincke_pohst_exact(self.gram, -m)
        if up_to_sign:
            vectors = sorted({_canonical_sign(v) for v in found})
        else:
            vectors = sorted(found)
        return vectors

    def change_basis(self, basis_cols: IntegerMatrix) -> "Lattice":
        """Gram matrix induced on the span of the given column vectors."""
        return Lattice(basis_cols.transpose() * self.gram * basis_cols)


def _canonical_sign(v: LatticeVector) -> LatticeVector:
    for x in v:
        if x > 0:
            return v
        if x < 0:
            return tuple(-y for y in v)
    return v


def _fincke_pohst_exact(gram: IntegerMatrix, target: int) -> list[LatticeVector]:
    """Complete set of x with x.(-gram).x == target (target >= 0)."""
    n = gram.rows
    q = [[Fraction(-gram.entries[i][j]) for j in range(n)] for i in range(n)]
    # Fraction-exact Cholesky-style decomposition:
    #   Q(x) = sum_i d_i (x_i + sum_{j>i} u_ij x_j)^2
    # with d_i = q[i][i] and u_ij = q[i][j] after the loop.
    for i in range(n):
        if q[i][i] <= 0:
            raise NotDefiniteError("form is not definite")
        for j in range(i + 1, n):
            q[j][i] = q[i][j]
            q[i][j] = q[i][j] / q[i][i]
        for k in range(i + 1, n):
            for l in range(k, n):
                q[k][l] = q[k][l] - q[k][i] * q[i][l]

    results: list[LatticeVector] = []
    coords = [0] * n
    budget = Fraction(target)

    def descend(i: int, remaining: Fraction):
        if i < 0:
            if remaining == 0:
                results.append(tuple(coords))
            return
        d = q[i][i]
        shift = sum((q[i][j] * coords[j] for j in range(i + 1, n)), Fraction(0))
        # largest s with d*s^2 <= remaining, overestimated exactly:
        # sqrt(num/den) <= (isqrt(num*den) + 1) / den
        ratio = remaining / d
        s_hi = Fraction(math.isqrt(ratio.numerator * ratio.denominator) + 1, ratio.denominator)
        lo = math.ceil(-s_hi - shift)
        hi = math.floor(s_hi - shift)
        for x in range(lo, hi + 1):
            term = d * (x + shift) ** 2
            if term > remaining:
                continue
            coords[i] = x
            descend(i - 1, remaining - term)
        coords[i] = 0

    descend(n - 1, budget)
    return results


@dataclass(frozen=True)
class RootDecomposition:
    """Orthogonal splitting L = (diagonal part) + (core).

    The diagonal part is spanned by the vectors of square -1 (pairwise
    orthogonal, so it is a sum of <-1> summands); the core is its
    orthogonal complement, carrying the induced Gram matrix.  Together the
    two bases generate all of L (unimodular change of basis).
    """

    diagonal_basis: tuple[LatticeVector, ...]
    core_basis: tuple[LatticeVector, ...]
    core: "Lattice"

    @property
    def diagonal_rank(self) -> int:
        return len(self.diagonal_basis)

    @property
    def core_rank(self) -> int:
        return len(self.core_basis)


def root_decomposition(lattice: Lattice) -> RootDecomposition:
    """Split off every <-1> summand of a negative definite unimodular lattice."""
    if not lattice.is_negative_definite():
        raise NotDefiniteError("root decomposition needs a negative definite lattice")
    if not lattice.is_unimodular():
        raise NotUnimodularError("root decomposition needs a unimodular lattice")
    n = lattice.rank
    units = lattice.vectors_of_norm(-1, up_to_sign=True)
    for i, x in enumerate(units):
        for y in units[i + 1 :]:
            if lattice.inner(x, y) != 0:
                # Cauchy-Schwarz in a definite lattice forces |x.y| <= 1 with
                # equality only at x = +-y, so this cannot happen.
                raise SelfCheckError(f"norm -1 vectors {x} and {y} are not orthogonal")
    d = len(units)
    if d == 0:
        identity_cols = tuple(tuple(1 if i == j else 0 for i in range(n)) for j in range(n))
        return RootDecomposition((), identity_cols, lattice)
    unit_rows = IntegerMatrix.from_rows(units, cols=n)
    complement = integer_kernel(unit_rows * lattice.gram)
    basis_cols = [tuple(v) for v in zip(*units)] if units else []
    unit_cols = IntegerMatrix.from_rows(basis_cols, cols=d) if d else IntegerMatrix.zeros(n, 0)
    change = unit_cols.hstack(complement)
    det = determinant(change)
    if abs(det) != 1:
        raise SelfCheckError(
            f"diagonal-plus-complement basis is not unimodular (det {det})"
        )
    core_basis = tuple(complement.col(j) for j in range(complement.cols))
    core = lattice.change_basis(complement)
    return RootDecomposition(tuple(units), core_basis, core)


def is_standard(lattice: Lattice) -> bool:
    """Whether the form is diagonalizable as <-1>^rank over the integers."""
    return root_decomposition(lattice).core_rank == 0


def minus_identity(n: int) -> Lattice:
    if n < 0:
        raise ValueError("rank must be >= 0")
    return Lattice(IntegerMatrix.diagonal([-1] * n))


_E8_EDGES = ((1, 3), (3, 4), (4, 5), (5, 6), (6, 7), (7, 8), (2, 4))


def minus_e8() -> Lattice:
    """The negative definite E8 lattice in its standard root basis."""
    g = [[0] * 8 for _ in range(8)]
    for i in range(8):
        g[i][i] = -2
    for a, b in _E8_EDGES:
        g[a - 1][b - 1] = 1
        g[b - 1][a - 1] = 1
    return Lattice.from_gram(g)


def named_lattice(name: str, n: int | None = None) -> Lattice:
    """Built-in lattices: minus_identity(n) and minus_E8."""
    key = name.strip()
    if key.lower() in ("minus_e8", "-e8"):
        return minus_e8()
    if key.startswith("minus_identity"):
        if "(" in key:
            inner = key[key.index("(") + 1 : key.rindex(")")]
            n = int(inner)
        if n is None:
            raise ValueError("minus_identity needs a rank argument")
        return minus_identity(n)
    raise ValueError(f"unknown lattice name: {name!r}")


def empty_lattice_guard(lattice: Lattice, what: str):
    if lattice.rank == 0:
        raise EmptyLatticeError(f"{what} is undefined on a rank-0 lattice")
