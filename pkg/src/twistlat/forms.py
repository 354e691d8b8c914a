"""Counting machinery for twisted cohomology classes of fixed square.

A cohomology model is a free lattice part plus a finite torsion part; a
twisted class has coordinates in both.  The pairing lives entirely on the
free part (torsion pairs to zero).  Around a class c of square -k this
module enumerates:

* split pairs {r, s}: unordered pairs in the free part with r + s = c and
  r.s = 0;
* reducible classes: all v with v^2 = -k and v congruent to c modulo 2
  (both the free part mod 2F and the torsion residues mod doubled factors);
* reducible pairs: reducible classes up to the sign involution v -> -v.

The counting identity (#reducible pairs) = |2T| * (#split pairs) is checked
by running both enumerations independently and verifying the explicit
bijection v -> ((c+v)/2, (c-v)/2); any mismatch is raised as a finding, not
silently returned.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Sequence

from .abelian import FinAbGroup
from .errors import (
    EmptyLatticeError,
    IdentityViolationError,
    NonNegativeSquareError,
    NotDefiniteError,
    NotUnimodularError,
    OddTildeCountError,
    PreconditionError,
    SelfCheckError,
)
from .intmat import IntegerMatrix, inverse_unimodular, solve_right
from .lattice import Lattice, LatticeVector, root_decomposition


@dataclass(frozen=True)
class CohomologyModel:
    """Second twisted cohomology split as free lattice + finite torsion."""

    free_part: Lattice
    torsion: FinAbGroup

    def __post_init__(self):
        if not self.torsion.is_torsion:
            raise ValueError("torsion component must have free rank 0")

    @property
    def rank(self) -> int:
        return self.free_part.rank


@dataclass(frozen=True)
class TwistedClass:
    """A class with free lattice coordinates and torsion residues."""

    free: LatticeVector
    torsion: tuple[int, ...] = ()

    @classmethod
    def make(cls, free: Sequence[int], torsion: Sequence[int] = ()) -> "TwistedClass":
        return cls(tuple(int(x) for x in free), tuple(int(t) for t in torsion))

    def negate(self, model: CohomologyModel) -> "TwistedClass":
        factors = model.torsion.invariant_factors
        return TwistedClass(
            tuple(-x for x in self.free),
            tuple((-t) % d for t, d in zip(self.torsion, factors)),
        )


def square(model: CohomologyModel, cls: TwistedClass) -> int:
    """Self-pairing; torsion contributes nothing."""
    return model.free_part.norm(cls.free)


def _validate_class(model: CohomologyModel, cls: TwistedClass):
    if len(cls.free) != model.free_part.rank:
        raise PreconditionError("free coordinate length does not match the lattice rank")
    if len(cls.torsion) != len(model.torsion.invariant_factors):
        raise PreconditionError("torsion residue tuple does not match the invariant factors")


@dataclass(frozen=True)
class SplitPair:
    """Unordered pair {r, s} with r + s = c and r.s = 0, stored r <= s (lex)."""

    r: LatticeVector
    s: LatticeVector

    @classmethod
    def of(cls, a: LatticeVector, b: LatticeVector) -> "SplitPair":
        return cls(*sorted((tuple(a), tuple(b))))


def minimal_k(core: Lattice) -> tuple[int, LatticeVector]:
    """Smallest positive k, not divisible by 4, represented as -x^2 in the core.

    The search bound comes from a dual pair a, b with a.b = 1 (columns of
    the inverse Gram are integral by unimodularity): among a^2, b^2 and
    (a+b)^2 at least one is not divisible by 4, so the sweep below is
    guaranteed to terminate at or before that bound.
    """
    if core.rank == 0:
        raise EmptyLatticeError("minimal_k is undefined on a rank-0 lattice")
    if not core.is_negative_definite():
        raise NotDefiniteError("minimal_k needs a negative definite lattice")
    if not core.is_unimodular():
        raise NotUnimodularError("minimal_k needs a unimodular lattice")
    ginv = inverse_unimodular(core.gram)
    bound = None
    for i in range(core.rank):
        a_sq = abs(core.gram.entries[i][i])
        b_sq = abs(ginv.entries[i][i])
        if a_sq % 4:
            candidate = a_sq
        elif b_sq % 4:
            candidate = b_sq
        else:
            candidate = a_sq + b_sq - 2  # |(a+b)^2| with a.b = 1
        bound = candidate if bound is None else min(bound, candidate)
    for k in range(1, bound + 1):
        if k % 4 == 0:
            continue
        hits = core.vectors_of_norm(-k, up_to_sign=True)
        if hits:
            return k, hits[0]
    raise SelfCheckError(f"no represented k <= {bound} despite the dual-pair bound")


def enumerate_split_pairs(lattice: Lattice, c: LatticeVector) -> list[SplitPair]:
    """All unordered {r, s} with r + s = c, r.s = 0, in a definite lattice.

    r.(c - r) = 0 is equivalent to r.c = r^2, and definiteness pins
    r^2 to the window [c^2, 0], so a sweep over short vectors is complete.
    """
    if not lattice.is_negative_definite():
        raise NotDefiniteError("split-pair enumeration needs a negative definite lattice")
    c = tuple(int(x) for x in c)
    k = -lattice.norm(c)
    if k <= 0:
        raise NonNegativeSquareError("the class must have negative square")
    pairs = set()
    for n in range(0, k + 1):
        for r in lattice.vectors_of_norm(-n):
            if lattice.inner(r, c) == -n:
                s = tuple(ci - ri for ci, ri in zip(c, r))
                pairs.add(SplitPair.of(r, s))
    return sorted(pairs, key=lambda p: (p.r, p.s))


def enumerate_reducible_classes(
    model: CohomologyModel, c: TwistedClass, k: int
) -> list[TwistedClass]:
    """All v with v^2 = -k and v = c modulo doubled classes.

    The congruence is componentwise: free parts agree mod 2F (all
    coordinate differences even) and torsion residues agree modulo the
    doubled cyclic factors (no constraint on odd factors).
    """
    _validate_class(model, c)
    if k <= 0:
        raise PreconditionError("k must be positive")
    if square(model, c) != -k:
        raise PreconditionError(
            f"class square is {square(model, c)}, expected -k = {-k}"
        )
    free_hits = [
        v
        for v in model.free_part.vectors_of_norm(-k)
        if all((vi - ci) % 2 == 0 for vi, ci in zip(v, c.free))
    ]
    residue_axes = []
    for ci, d in zip(c.torsion, model.torsion.invariant_factors):
        if d % 2:
            residue_axes.append(range(d))
        else:
            residue_axes.append(range(ci % 2, d, 2))
    classes = [
        TwistedClass(v, t)
        for v in free_hits
        for t in itertools.product(*residue_axes)
    ]
    return sorted(classes, key=lambda cl: (cl.free, cl.torsion))


def count_reducible_pairs(model: CohomologyModel, c: TwistedClass, k: int) -> int:
    """Reducible classes up to sign; the class set is negation-closed and
    fixed-point free for k > 0, so the raw count must be even."""
    total = len(enumerate_reducible_classes(model, c, k))
    if total % 2:
        raise OddTildeCountError(
            f"reducible class count {total} is odd; the set must be closed under negation",
            report={"count": total},
        )
    return total // 2


@dataclass(frozen=True)
class CountingIdentityReport:
    reducible_pairs: int
    doubled_torsion_order: int
    split_pairs: int
    product: int
    matches: bool
    bijection_verified: bool
    details: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "reducible_pairs": self.reducible_pairs,
            "doubled_torsion_order": self.doubled_torsion_order,
            "split_pairs": self.split_pairs,
            "product": self.product,
            "matches": self.matches,
            "bijection_verified": self.bijection_verified,
            "details": self.details,
        }


def verify_counting_identity(
    model: CohomologyModel, c: TwistedClass, k: int
) -> CountingIdentityReport:
    """Check (#reducible pairs) = |2T| * (#split pairs) by double enumeration.

    Also verifies the underlying bijection explicitly: distinct free parts
    of reducible classes map to ordered split pairs via
    v -> ((c+v)/2, (c-v)/2), injectively and onto.  Raises
    IdentityViolationError (with the report attached) on any mismatch.
    """
    classes = enumerate_reducible_classes(model, c, k)
    if len(classes) % 2:
        raise OddTildeCountError(
            f"reducible class count {len(classes)} is odd", report={"count": len(classes)}
        )
    lhs = len(classes) // 2
    two_t = model.torsion.doubled_torsion()
    two_t_order = two_t.order()
    pairs = enumerate_split_pairs(model.free_part, c.free)
    rhs = two_t_order * len(pairs)

    details: dict = {}
    bijection_ok = True
    free_parts = sorted({cl.free for cl in classes})
    if len(classes) != two_t_order * len(free_parts):
        bijection_ok = False
        details["orbit_count_mismatch"] = {
            "classes": len(classes),
            "free_parts": len(free_parts),
            "doubled_torsion_order": two_t_order,
        }
    ordered_targets = set()
    for pair in pairs:
        if pair.r == pair.s:
            bijection_ok = False
            details.setdefault("degenerate_pairs", []).append(pair.r)
        ordered_targets.add((pair.r, pair.s))
        ordered_targets.add((pair.s, pair.r))
    images = set()
    lattice = model.free_part
    for v in free_parts:
        if any((ci + vi) % 2 for ci, vi in zip(c.free, v)):
            bijection_ok = False
            details.setdefault("non_integral_images", []).append(v)
            continue
        r = tuple((ci + vi) // 2 for ci, vi in zip(c.free, v))
        s = tuple((ci - vi) // 2 for ci, vi in zip(c.free, v))
        if lattice.inner(r, s) != 0:
            bijection_ok = False
            details.setdefault("non_orthogonal_images", []).append({"v": v, "r": r, "s": s})
        images.add((r, s))
    if len(images) != len(free_parts):
        bijection_ok = False
        details["not_injective"] = True
    if images != ordered_targets:
        bijection_ok = False
        details["image_mismatch"] = {
            "missing": sorted(ordered_targets - images),
            "extra": sorted(images - ordered_targets),
        }

    report = CountingIdentityReport(
        reducible_pairs=lhs,
        doubled_torsion_order=two_t_order,
        split_pairs=len(pairs),
        product=rhs,
        matches=(lhs == rhs),
        bijection_verified=bijection_ok,
        details=details,
    )
    if not report.matches or not bijection_ok:
        raise IdentityViolationError(
            f"counting identity failed: {lhs} != {two_t_order} * {len(pairs)}",
            report=report.to_json(),
        )
    return report


@dataclass(frozen=True)
class ParityReport:
    parity: int
    reducible_pairs: int
    split_pairs: int
    doubled_torsion_order: int
    has_order_four: bool
    expected_parity_applies: bool
    findings: tuple[str, ...]

    def to_json(self) -> dict:
        return {
            "parity": self.parity,
            "reducible_pairs": self.reducible_pairs,
            "split_pairs": self.split_pairs,
            "doubled_torsion_order": self.doubled_torsion_order,
            "has_order_four": self.has_order_four,
            "expected_parity_applies": self.expected_parity_applies,
            "findings": list(self.findings),
        }


def reducible_count_parity(model: CohomologyModel, c: TwistedClass, k: int) -> ParityReport:
    """Parity of the reducible-pair count at the minimal represented k.

    Preconditions (raised): the free part of c lies in the core of the
    lattice (orthogonal complement of the norm -1 vectors) and k is the
    minimal represented value there.  The order-4 condition is *reported*,
    not raised: when the torsion has an element of order 4 the parity-one
    expectation does not apply and the computed (even) parity is flagged.
    Any other deviation from parity one, and any instance with more than
    one split pair, is surfaced as a finding.
    """
    _validate_class(model, c)
    decomposition = root_decomposition(model.free_part)
    core_coords = _coordinates_in_core(model.free_part, decomposition, c.free)
    if core_coords is None:
        raise PreconditionError(
            "the class does not lie in the core sublattice (it meets a <-1> summand)"
        )
    min_k, _ = minimal_k(decomposition.core)
    if k != min_k:
        raise PreconditionError(f"k = {k} is not the minimal represented value {min_k}")

    has_order_four = model.torsion.has_element_of_order(4)
    pair_count = count_reducible_pairs(model, c, k)
    split_count = len(enumerate_split_pairs(model.free_part, c.free))
    parity = pair_count % 2

    findings = []
    if split_count != 1:
        findings.append(
            f"split-pair count is {split_count} at the minimal k (expected 1); "
            "this instance contradicts the minimality-based uniqueness claim"
        )
    if has_order_four:
        findings.append(
            "torsion contains an element of order 4, so the doubled torsion has even "
            "order and the parity-one claim does not apply"
        )
    if parity != 1 and not has_order_four:
        findings.append(
            f"reducible-pair count {pair_count} is even although no order-4 torsion is present"
        )
    return ParityReport(
        parity=parity,
        reducible_pairs=pair_count,
        split_pairs=split_count,
        doubled_torsion_order=model.torsion.doubled_torsion().order(),
        has_order_four=has_order_four,
        expected_parity_applies=not has_order_four,
        findings=tuple(findings),
    )


def _coordinates_in_core(lattice, decomposition, vector) -> tuple[int, ...] | None:
    """Coordinates of ``vector`` in the core basis, or None if it leaves the core."""
    n = lattice.rank
    d = decomposition.diagonal_rank
    cols = [list(v) for v in decomposition.diagonal_basis] + [
        list(v) for v in decomposition.core_basis
    ]
    change = IntegerMatrix.from_rows(cols, cols=n).transpose()
    solution = solve_right(change, IntegerMatrix.column(vector))
    if solution is None:
        return None
    coeffs = [solution.entries[i][0] for i in range(solution.rows)]
    if any(coeffs[:d]):
        return None
    return tuple(coeffs[d:])
