"""Finitely generated abelian groups in invariant-factor form.

The canonical form is the divisibility chain d1 | d2 | ... with every di >= 2
(factors 0 and 1 are never stored), read directly off a Smith diagonal.  This
makes equality testing trivial and keeps small torsion groups cheap to
enumerate element-by-element, which the counting machinery relies on.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import gcd, lcm
from typing import Iterable, Iterator

from .errors import NotTorsionError
from .intmat import IntegerMatrix, smith_normal_form


def _canonical_factors(factors: Iterable[int]) -> tuple[int, ...]:
    """Reassemble an arbitrary multiset of cyclic orders into a chain.

    Splits every factor into prime powers, then rebuilds invariant factors
    by pairing the largest exponents of each prime.
    """
    powers: dict[int, list[int]] = {}
    for d in factors:
        d = int(d)
        if d < 0:
            d = -d
        if d in (0, 1):
            if d == 0:
                raise ValueError("0 is not a torsion order; use free_rank")
            continue
        m = d
        p = 2
        while p * p <= m:
            if m % p == 0:
                e = 0
                while m % p == 0:
                    m //= p
                    e += 1
                powers.setdefault(p, []).append(e)
            p += 1
        if m > 1:
            powers.setdefault(m, []).append(1)
    depth = max((len(v) for v in powers.values()), default=0)
    chain = []
    for slot in range(depth):
        f = 1
        for p, exps in powers.items():
            exps_sorted = sorted(exps, reverse=True)
            if slot < len(exps_sorted):
                f *= p ** exps_sorted[slot]
        chain.append(f)
    return tuple(reversed(chain))


@dataclass(frozen=True)
class FinAbGroup:
    """Z^free_rank + Z/d1 + Z/d2 + ... with d1 | d2 | ... and di >= 2."""

    free_rank: int
    invariant_factors: tuple[int, ...]

    def __post_init__(self):
        if self.free_rank < 0:
            raise ValueError("negative free rank")
        prev = None
        for d in self.invariant_factors:
            if d < 2:
                raise ValueError(f"invariant factor {d} out of range (store neither 0 nor 1)")
            if prev is not None and d % prev:
                raise ValueError("invariant factors must form a divisibility chain")
            prev = d

    @classmethod
    def free(cls, rank: int) -> "FinAbGroup":
        return cls(rank, ())

    @classmethod
    def trivial(cls) -> "FinAbGroup":
        return cls(0, ())

    @classmethod
    def from_factors(cls, factors: Iterable[int], free_rank: int = 0) -> "FinAbGroup":
        """Canonicalize an arbitrary list of cyclic orders (1s are dropped)."""
        return cls(free_rank, _canonical_factors(factors))

    @classmethod
    def from_presentation(cls, relations: IntegerMatrix) -> "FinAbGroup":
        """Cokernel of ``relations``: Z^rows modulo the column span."""
        diag = smith_normal_form(relations).diagonal
        nonzero = [d for d in diag if d != 0]
        return cls(relations.rows - len(nonzero), tuple(d for d in nonzero if d > 1))

    # -- structure ------------------------------------------------------

    @property
    def is_trivial(self) -> bool:
        return self.free_rank == 0 and not self.invariant_factors

    @property
    def is_torsion(self) -> bool:
        return self.free_rank == 0

    def order(self) -> int | None:
        """Number of elements, or None when infinite."""
        if self.free_rank:
            return None
        n = 1
        for d in self.invariant_factors:
            n *= d
        return n

    def torsion_subgroup(self) -> "FinAbGroup":
        return FinAbGroup(0, self.invariant_factors)

    def doubled_torsion(self) -> "FinAbGroup":
        """The subgroup of doubled elements 2T of a torsion group T.

        2(Z/d) = Z/(d / gcd(d, 2)), so |2T| = |T| / 2^(number of even
        factors); doubling is an automorphism on odd-order torsion.
        """
        if self.free_rank:
            raise NotTorsionError("doubled_torsion needs a torsion group")
        return FinAbGroup.from_factors(d // gcd(d, 2) for d in self.invariant_factors)

    def has_element_of_order(self, n: int) -> bool:
        """Whether some element has order exactly ``n`` (n >= 1).

        A cyclic factor Z/d contains an order-n element iff n divides d;
        n == 1 is always realized by the identity.
        """
        if n < 1:
            raise ValueError("order must be >= 1")
        if n == 1:
            return True
        return any(d % n == 0 for d in self.invariant_factors)

    def two_torsion_rank(self) -> int:
        """Z/2-dimension of the 2-torsion, i.e. the count of even factors.

        Equals dim_{Z/2}(G (x) Z/2) - free_rank.
        """
        return sum(1 for d in self.invariant_factors if d % 2 == 0)

    def direct_sum(self, other: "FinAbGroup") -> "FinAbGroup":
        return FinAbGroup.from_factors(
            self.invariant_factors + other.invariant_factors,
            free_rank=self.free_rank + other.free_rank,
        )

    # -- element-level helpers (torsion only) ---------------------------

    def elements(self) -> Iterator[tuple[int, ...]]:
        """Residue tuples of a finite group, in lexicographic order."""
        if self.free_rank:
            raise NotTorsionError("cannot enumerate an infinite group")
        yield from itertools.product(*(range(d) for d in self.invariant_factors))

    def element_order(self, element: tuple[int, ...]) -> int:
        if len(element) != len(self.invariant_factors):
            raise ValueError("residue tuple length mismatch")
        n = 1
        for a, d in zip(element, self.invariant_factors):
            a %= d
            n = lcm(n, d // gcd(a, d)) if a else n
        return n

    def describe(self) -> str:
        parts = []
        if self.free_rank == 1:
            parts.append("Z")
        elif self.free_rank:
            parts.append(f"Z^{self.free_rank}")
        parts.extend(f"Z/{d}" for d in self.invariant_factors)
        return " + ".join(parts) if parts else "0"
