"""Exact linear algebra: normal forms, kernels, determinants.

The derived expected values are frozen from independent oracles defined in
this file (a pivot-agnostic gcd reduction for Smith diagonals, cofactor
expansion for determinants); the oracles never call the code paths they
check.
"""

import random
from math import gcd

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from twistlat.errors import NonSquareError, NotUnimodularError
from twistlat.intmat import (
    IntegerMatrix,
    determinant,
    hermite_basis,
    hermite_normal_form,
    integer_kernel,
    inverse_unimodular,
    rank,
    smith_normal_form,
    solve_right,
)
from twistlat.lattice import minus_e8
from twistlat.randomize import random_matrix, random_unimodular


# -- independent oracles ------------------------------------------------------

def oracle_diagonalize(rows):
    """Diagonal multiset by first-nonzero pivoting and plain Euclid steps;
    shares no pivot strategy or bookkeeping with the library."""
    m = [list(r) for r in rows]
    diag = []
    while m and m[0] and any(any(r) for r in m):
        i, j = next((i, j) for i, r in enumerate(m) for j, x in enumerate(r) if x)
        m[0], m[i] = m[i], m[0]
        for r in m:
            r[0], r[j] = r[j], r[0]
        while True:
            for i in range(1, len(m)):
                while m[i][0]:
                    q = m[0][0] // m[i][0]
                    for c in range(len(m[0])):
                        m[0][c] -= q * m[i][c]
                    m[0], m[i] = m[i], m[0]
            for j in range(1, len(m[0])):
                while m[0][j]:
                    q = m[0][0] // m[0][j]
                    for r in m:
                        r[0] -= q * r[j]
                    for r in m:
                        r[0], r[j] = r[j], r[0]
            if all(m[i][0] == 0 for i in range(1, len(m))) and all(
                m[0][j] == 0 for j in range(1, len(m[0]))
            ):
                break
        diag.append(abs(m[0][0]))
        m = [r[1:] for r in m[1:]]
    return sorted(d for d in diag if d)


def oracle_invariant_factors(rows):
    """Invariant factors by regrouping the oracle diagonal into prime powers."""
    diag = oracle_diagonalize(rows)
    powers = {}
    for d in diag:
        m, p = d, 2
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
            se = sorted(exps, reverse=True)
            if slot < len(se):
                f *= p ** se[slot]
        chain.append(f)
    ordered = list(reversed(chain))
    return [1] * (len(diag) - len(ordered)) + ordered


def oracle_cofactor_det(rows):
    n = len(rows)
    if n == 0:
        return 1
    if n == 1:
        return rows[0][0]
    total = 0
    for j, x in enumerate(rows[0]):
        if x == 0:
            continue
        minor = [r[:j] + r[j + 1 :] for r in rows[1:]]
        total += (-1) ** j * x * oracle_cofactor_det(minor)
    return total


def assert_smith_contract(a, dec):
    assert dec.reconstruct() == a
    assert abs(determinant(dec.u)) == 1
    assert abs(determinant(dec.v)) == 1
    for i in range(dec.s.rows):
        for j in range(dec.s.cols):
            if i != j:
                assert dec.s.entries[i][j] == 0
    diag = dec.diagonal
    assert all(d >= 0 for d in diag)
    for first, second in zip(diag, diag[1:]):
        if first == 0:
            assert second == 0
        elif second != 0:
            assert second % first == 0


mat_entries = st.integers(min_value=-9, max_value=9)


def matrices(max_dim=5):
    return st.integers(min_value=0, max_value=max_dim).flatmap(
        lambda m: st.integers(min_value=0, max_value=max_dim).flatmap(
            lambda n: st.lists(
                st.lists(mat_entries, min_size=n, max_size=n), min_size=m, max_size=m
            ).map(lambda rows: IntegerMatrix.from_rows(rows, cols=n))
        )
    )


class TestSmith:
    def test_empty(self):
        dec = smith_normal_form(IntegerMatrix.zeros(0, 0))
        assert dec.s == IntegerMatrix.zeros(0, 0)
        assert dec.u == IntegerMatrix.identity(0)
        assert dec.v == IntegerMatrix.identity(0)

    def test_identity(self):
        dec = smith_normal_form(IntegerMatrix.identity(3))
        assert dec.s == IntegerMatrix.identity(3)
        assert_smith_contract(IntegerMatrix.identity(3), dec)

    def test_diag_2_3(self):
        a = IntegerMatrix.diagonal([2, 3])
        dec = smith_normal_form(a)
        assert oracle_invariant_factors([[2, 0], [0, 3]]) == [1, 6]
        assert list(dec.diagonal) == [1, 6]
        assert_smith_contract(a, dec)

    def test_rectangular(self):
        a = IntegerMatrix.from_rows([[2, 4, 4], [-6, 6, 12], [10, 4, 16]])
        dec = smith_normal_form(a)
        assert_smith_contract(a, dec)
        assert [d for d in dec.diagonal if d] == oracle_invariant_factors(a.to_lists())

    @settings(max_examples=150, deadline=None)
    @given(matrices())
    def test_contract_random(self, a):
        dec = smith_normal_form(a)
        assert_smith_contract(a, dec)
        assert [d for d in dec.diagonal if d] == oracle_invariant_factors(a.to_lists())

    @settings(max_examples=60, deadline=None)
    @given(matrices(4), st.integers(0, 2**30))
    def test_diagonal_invariant_under_unimodular_change(self, a, seed):
        rng = random.Random(seed)
        u = random_unimodular(a.rows, rng, entry_bound=30, ops=6)
        v = random_unimodular(a.cols, rng, entry_bound=30, ops=6)
        assert smith_normal_form(u * a * v).diagonal == smith_normal_form(a).diagonal


class TestHermite:
    def test_identity(self):
        h, u = hermite_normal_form(IntegerMatrix.identity(2))
        assert h == IntegerMatrix.identity(2)
        assert u == IntegerMatrix.identity(2)

    def test_zero(self):
        z = IntegerMatrix.zeros(2, 3)
        h, u = hermite_normal_form(z)
        assert h == z
        assert abs(determinant(u)) == 1

    def test_two_by_two(self):
        # The rows (2,4),(1,3) span the same lattice as (1,*),(0,2); with
        # the above-pivot residue reduced into [0,2) the canonical form is
        # [[1,1],[0,2]].
        a = IntegerMatrix.from_rows([[2, 4], [1, 3]])
        h, u = hermite_normal_form(a)
        assert u * a == h
        assert abs(determinant(u)) == 1
        assert h == IntegerMatrix.from_rows([[1, 1], [0, 2]])

    @settings(max_examples=150, deadline=None)
    @given(matrices())
    def test_contract_random(self, a):
        h, u = hermite_normal_form(a)
        assert u * a == h
        assert abs(determinant(u)) == 1
        pivots = []
        for row in h.entries:
            nz = next((j for j, x in enumerate(row) if x), None)
            if nz is None:
                continue
            assert not pivots or nz > pivots[-1][1]
            pivots.append((row[nz], nz))
        for r, (val, col) in enumerate(pivots):
            assert val > 0
            for above in range(r):
                assert 0 <= h.entries[above][col] < val
        # zero rows trail the nonzero ones
        seen_zero = False
        for row in h.entries:
            if not any(row):
                seen_zero = True
            else:
                assert not seen_zero


class TestKernel:
    def test_identity(self):
        k = integer_kernel(IntegerMatrix.identity(4))
        assert k.cols == 0

    def test_symmetry(self):
        k = integer_kernel(IntegerMatrix.from_rows([[1, 1]]))
        assert k.cols == 1 and k.col(0) == (1, -1)

    def test_saturated(self):
        # Solutions of 2x + 4y = 0 are the multiples of (2,-1); the gcd of
        # the basis coordinates must be 1 (saturation).
        k = integer_kernel(IntegerMatrix.from_rows([[2, 4]]))
        assert k.cols == 1
        v = k.col(0)
        assert v == (2, -1)
        assert gcd(*v) == 1
        small = [
            (x, y)
            for x in range(-8, 9)
            for y in range(-8, 9)
            if 2 * x + 4 * y == 0 and (x, y) != (0, 0)
        ]
        assert small
        for x, y in small:
            assert x % v[0] == 0 and (x // v[0]) * v[1] == y

    @settings(max_examples=120, deadline=None)
    @given(matrices())
    def test_contract_random(self, a):
        k = integer_kernel(a)
        assert (a * k).is_zero()
        assert k.cols == a.cols - rank(a)
        if k.cols:
            assert rank(k) == k.cols


class TestDeterminant:
    def test_identity(self):
        assert determinant(IntegerMatrix.identity(4)) == 1

    def test_minus_ones(self):
        assert determinant(IntegerMatrix.diagonal([-1, -1])) == 1

    def test_e8(self):
        g = minus_e8().gram
        assert oracle_cofactor_det(g.to_lists()) == 1
        assert determinant(g) == 1

    def test_non_square(self):
        with pytest.raises(NonSquareError):
            determinant(IntegerMatrix.zeros(2, 3))

    @settings(max_examples=100, deadline=None)
    @given(matrices(4).filter(lambda m: m.is_square))
    def test_matches_cofactor_and_smith(self, a):
        d = determinant(a)
        assert d == oracle_cofactor_det(a.to_lists())
        prod = 1
        for x in smith_normal_form(a).diagonal:
            prod *= x
        assert abs(d) == prod


class TestSolveAndInverse:
    @settings(max_examples=100, deadline=None)
    @given(matrices(4), st.integers(0, 2**30))
    def test_solve_right_consistent(self, a, seed):
        rng = random.Random(seed)
        x = random_matrix(a.cols, 2, rng, bound=5)
        b = a * x
        sol = solve_right(a, b)
        assert sol is not None
        assert a * sol == b

    def test_solve_right_unsolvable(self):
        a = IntegerMatrix.from_rows([[2]])
        assert solve_right(a, IntegerMatrix.column([1])) is None

    def test_inverse_unimodular(self):
        rng = random.Random(7)
        for n in range(1, 5):
            u = random_unimodular(n, rng, entry_bound=50, ops=8)
            assert u * inverse_unimodular(u) == IntegerMatrix.identity(n)

    def test_inverse_rejects(self):
        with pytest.raises(NotUnimodularError):
            inverse_unimodular(IntegerMatrix.diagonal([2]))

    def test_hermite_basis(self):
        gens = IntegerMatrix.from_rows([[2, 4], [0, 0]])
        b = hermite_basis(gens)
        assert b.cols == 1 and b.col(0) == (2, 0)
