"""Exact integer matrix algebra: normal forms, kernels, determinants.

Everything here runs on Python's arbitrary-precision integers; there is no
floating point anywhere in this module.  Entry blow-up during elimination is
expected and harmless.

Conventions fixed for bit-exact reproducibility:

* Smith pivot selection: smallest absolute value, ties broken by lowest
  (row, col).
* Hermite form is row-style with positive pivots and entries above each
  pivot reduced into ``[0, pivot)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import NonSquareError, NotUnimodularError


@dataclass(frozen=True)
class IntegerMatrix:
    """Immutable dense integer matrix, stored as a tuple of row tuples."""

    rows: int
    cols: int
    entries: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0:
            raise ValueError("negative dimensions")
        if len(self.entries) != self.rows:
            raise ValueError("row count mismatch")
        for row in self.entries:
            if len(row) != self.cols:
                raise ValueError("ragged rows")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], cols: int | None = None) -> "IntegerMatrix":
        data = tuple(tuple(int(x) for x in row) for row in rows)
        if data:
            ncols = len(data[0])
        elif cols is not None:
            ncols = cols
        else:
            ncols = 0
        return cls(len(data), ncols, data)

    @classmethod
    def identity(cls, n: int) -> "IntegerMatrix":
        return cls(n, n, tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n)))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "IntegerMatrix":
        return cls(rows, cols, tuple(tuple(0 for _ in range(cols)) for _ in range(rows)))

    @classmethod
    def diagonal(cls, diag: Sequence[int]) -> "IntegerMatrix":
        n = len(diag)
        return cls(n, n, tuple(tuple(diag[i] if i == j else 0 for j in range(n)) for i in range(n)))

    @classmethod
    def column(cls, values: Sequence[int]) -> "IntegerMatrix":
        return cls(len(values), 1, tuple((int(v),) for v in values))

    def __getitem__(self, key: tuple[int, int]) -> int:
        i, j = key
        return self.entries[i][j]

    def row(self, i: int) -> tuple[int, ...]:
        return self.entries[i]

    def col(self, j: int) -> tuple[int, ...]:
        return tuple(row[j] for row in self.entries)

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    def is_zero(self) -> bool:
        return all(x == 0 for row in self.entries for x in row)

    def is_symmetric(self) -> bool:
        return self.is_square and all(
            self.entries[i][j] == self.entries[j][i]
            for i in range(self.rows)
            for j in range(i + 1, self.cols)
        )

    def transpose(self) -> "IntegerMatrix":
        return IntegerMatrix(
            self.cols, self.rows, tuple(tuple(row[j] for row in self.entries) for j in range(self.cols))
        )

    def __neg__(self) -> "IntegerMatrix":
        return self.map(lambda x: -x)

    def map(self, fn) -> "IntegerMatrix":
        return IntegerMatrix(self.rows, self.cols, tuple(tuple(fn(x) for x in row) for row in self.entries))

    def __add__(self, other: "IntegerMatrix") -> "IntegerMatrix":
        self._same_shape(other)
        return IntegerMatrix(
            self.rows,
            self.cols,
            tuple(
                tuple(a + b for a, b in zip(ra, rb)) for ra, rb in zip(self.entries, other.entries)
            ),
        )

    def __sub__(self, other: "IntegerMatrix") -> "IntegerMatrix":
        self._same_shape(other)
        return IntegerMatrix(
            self.rows,
            self.cols,
            tuple(
                tuple(a - b for a, b in zip(ra, rb)) for ra, rb in zip(self.entries, other.entries)
            ),
        )

    def __mul__(self, other):
        if isinstance(other, int):
            return self.map(lambda x: x * other)
        return self.matmul(other)

    __rmul__ = __mul__

    def __mod__(self, modulus: int) -> "IntegerMatrix":
        return self.map(lambda x: x % modulus)

    def matmul(self, other: "IntegerMatrix") -> "IntegerMatrix":
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch: {self.rows}x{self.cols} @ {other.rows}x{other.cols}")
        bt = other.transpose().entries
        return IntegerMatrix(
            self.rows,
            other.cols,
            tuple(
                tuple(sum(a * b for a, b in zip(row, colt)) for colt in bt) for row in self.entries
            ),
        )

    def apply(self, vec: Sequence[int]) -> tuple[int, ...]:
        if len(vec) != self.cols:
            raise ValueError("vector length mismatch")
        return tuple(sum(a * b for a, b in zip(row, vec)) for row in self.entries)

    def hstack(self, other: "IntegerMatrix") -> "IntegerMatrix":
        if self.rows != other.rows:
            raise ValueError("row mismatch in hstack")
        return IntegerMatrix(
            self.rows,
            self.cols + other.cols,
            tuple(ra + rb for ra, rb in zip(self.entries, other.entries)),
        )

    def vstack(self, other: "IntegerMatrix") -> "IntegerMatrix":
        if self.cols != other.cols:
            raise ValueError("col mismatch in vstack")
        return IntegerMatrix(self.rows + other.rows, self.cols, self.entries + other.entries)

    def submatrix(self, row_idx: Iterable[int], col_idx: Iterable[int]) -> "IntegerMatrix":
        ri = tuple(row_idx)
        ci = tuple(col_idx)
        return IntegerMatrix(
            len(ri), len(ci), tuple(tuple(self.entries[i][j] for j in ci) for i in ri)
        )

    def columns_selected(self, col_idx: Iterable[int]) -> "IntegerMatrix":
        return self.submatrix(range(self.rows), col_idx)

    def kron(self, other: "IntegerMatrix") -> "IntegerMatrix":
        rows = self.rows * other.rows
        cols = self.cols * other.cols
        data = [[0] * cols for _ in range(rows)]
        for i in range(self.rows):
            for j in range(self.cols):
                a = self.entries[i][j]
                if a == 0:
                    continue
                for k in range(other.rows):
                    for l in range(other.cols):
                        data[i * other.rows + k][j * other.cols + l] = a * other.entries[k][l]
        return IntegerMatrix.from_rows(data, cols=cols)

    def to_lists(self) -> list[list[int]]:
        return [list(row) for row in self.entries]

    def _same_shape(self, other: "IntegerMatrix"):
        if self.rows != other.rows or self.cols != other.cols:
            raise ValueError("shape mismatch")


def block_diagonal(blocks: Sequence[IntegerMatrix]) -> IntegerMatrix:
    rows = sum(b.rows for b in blocks)
    cols = sum(b.cols for b in blocks)
    data = [[0] * cols for _ in range(rows)]
    r = c = 0
    for b in blocks:
        for i in range(b.rows):
            for j in range(b.cols):
                data[r + i][c + j] = b.entries[i][j]
        r += b.rows
        c += b.cols
    return IntegerMatrix.from_rows(data, cols=cols)


def block_matrix(grid: Sequence[Sequence[IntegerMatrix]]) -> IntegerMatrix:
    out = None
    for block_row in grid:
        row = block_row[0]
        for b in block_row[1:]:
            row = row.hstack(b)
        out = row if out is None else out.vstack(row)
    if out is None:
        return IntegerMatrix.zeros(0, 0)
    return out


@dataclass(frozen=True)
class SmithDecomposition:
    """``u * s * v`` reconstructs the input exactly.

    ``u`` and ``v`` are square unimodular; ``s`` has the input's shape, is
    diagonal with nonnegative entries, and each diagonal entry divides the
    next.
    """

    u: IntegerMatrix
    s: IntegerMatrix
    v: IntegerMatrix
    source_rows: int
    source_cols: int

    @property
    def diagonal(self) -> tuple[int, ...]:
        n = min(self.s.rows, self.s.cols)
        return tuple(self.s.entries[i][i] for i in range(n))

    def reconstruct(self) -> IntegerMatrix:
        return self.u * self.s * self.v


# -- elementary in-place operations on list-of-list workspaces ---------------

def _swap_rows(m, i, j):
    m[i], m[j] = m[j], m[i]


def _swap_cols(m, i, j):
    for row in m:
        row[i], row[j] = row[j], row[i]


def _row_addmul(m, dst, src, q):
    if q:
        rd, rs = m[dst], m[src]
        for k in range(len(rd)):
            rd[k] += q * rs[k]


def _col_addmul(m, dst, src, q):
    if q:
        for row in m:
            row[dst] += q * row[src]


def _negate_row(m, i):
    m[i] = [-x for x in m[i]]


def _negate_col(m, j):
    for row in m:
        row[j] = -row[j]


def smith_normal_form(a: IntegerMatrix) -> SmithDecomposition:
    """Smith decomposition ``u*s*v == a`` with divisibility chain on ``s``.

    Total on all integer matrices, including empty shapes.  The returned
    diagonal is the canonical one (unique given ``a``); ``u`` and ``v`` are
    deterministic thanks to the fixed pivot rule.
    """
    m, n = a.rows, a.cols
    s = [list(row) for row in a.entries]
    u = [[1 if i == j else 0 for j in range(m)] for i in range(m)]
    v = [[1 if i == j else 0 for j in range(n)] for i in range(n)]

    # Invariant maintained throughout: u * s * v == a.  A row operation
    # S <- E*S is compensated by U <- U*E^{-1}; a column operation
    # S <- S*F by V <- F^{-1}*V.

    t = 0
    while True:
        pivot = None
        best = None
        for i in range(t, m):
            si = s[i]
            for j in range(t, n):
                x = si[j]
                if x != 0 and (best is None or abs(x) < best):
                    best = abs(x)
                    pivot = (i, j)
                    if best == 1:
                        break
            if best == 1:
                break
        if pivot is None:
            break
        pi, pj = pivot
        if pi != t:
            _swap_rows(s, t, pi)
            _swap_cols(u, t, pi)
        if pj != t:
            _swap_cols(s, t, pj)
            _swap_rows(v, t, pj)

        while True:
            # Clear the pivot column.
            dirty = False
            for i in range(t + 1, m):
                if s[i][t]:
                    q = s[i][t] // s[t][t]
                    _row_addmul(s, i, t, -q)
                    _col_addmul(u, t, i, q)
                    if s[i][t]:
                        # Remainder is smaller than the pivot: promote it.
                        _swap_rows(s, t, i)
                        _swap_cols(u, t, i)
                        dirty = True
            if dirty:
                continue
            # Clear the pivot row.
            for j in range(t + 1, n):
                if s[t][j]:
                    q = s[t][j] // s[t][t]
                    _col_addmul(s, j, t, -q)
                    _row_addmul(v, t, j, q)
                    if s[t][j]:
                        _swap_cols(s, t, j)
                        _swap_rows(v, t, j)
                        dirty = True
            if dirty:
                continue
            # Row and column are clear; force divisibility into the rest.
            viol = None
            d = s[t][t]
            for i in range(t + 1, m):
                for j in range(t + 1, n):
                    if s[i][j] % d:
                        viol = i
                        break
                if viol is not None:
                    break
            if viol is None:
                break
            _row_addmul(s, t, viol, 1)
            _col_addmul(u, viol, t, -1)
        t += 1

    for i in range(min(m, n)):
        if s[i][i] < 0:
            _negate_row(s, i)
            _negate_col(u, i)

    return SmithDecomposition(
        IntegerMatrix.from_rows(u, cols=m),
        IntegerMatrix.from_rows(s, cols=n),
        IntegerMatrix.from_rows(v, cols=n),
        m,
        n,
    )


def hermite_normal_form(a: IntegerMatrix) -> tuple[IntegerMatrix, IntegerMatrix]:
    """Row-style Hermite form: returns ``(h, u)`` with ``u*a == h``.

    ``u`` is unimodular; ``h`` is in row echelon form with positive pivots
    and entries above each pivot reduced into ``[0, pivot)``.
    """
    m, n = a.rows, a.cols
    h = [list(row) for row in a.entries]
    u = [[1 if i == j else 0 for j in range(m)] for i in range(m)]
    r = 0
    for c in range(n):
        if r >= m:
            break
        # gcd-reduce the entries of column c at rows >= r.
        while True:
            best = None
            pi = None
            for i in range(r, m):
                x = h[i][c]
                if x != 0 and (best is None or abs(x) < best):
                    best = abs(x)
                    pi = i
            if pi is None:
                break
            if pi != r:
                _swap_rows(h, r, pi)
                _swap_rows(u, r, pi)
            clean = True
            for i in range(r + 1, m):
                if h[i][c]:
                    q = h[i][c] // h[r][c]
                    _row_addmul(h, i, r, -q)
                    _row_addmul(u, i, r, -q)
                    if h[i][c]:
                        clean = False
            if clean:
                break
        if r < m and h[r][c] != 0:
            if h[r][c] < 0:
                _negate_row(h, r)
                _negate_row(u, r)
            for i in range(r):
                q = h[i][c] // h[r][c]
                _row_addmul(h, i, r, -q)
                _row_addmul(u, i, r, -q)
            r += 1
    return IntegerMatrix.from_rows(h, cols=n), IntegerMatrix.from_rows(u, cols=m)


def hermite_basis(generators: IntegerMatrix) -> IntegerMatrix:
    """Canonical basis (as columns) of the lattice generated by the columns."""
    h, _ = hermite_normal_form(generators.transpose())
    rows = [row for row in h.entries if any(row)]
    return IntegerMatrix.from_rows(rows, cols=generators.rows).transpose()


def integer_kernel(a: IntegerMatrix) -> IntegerMatrix:
    """Basis, as columns, of ``{x : a*x == 0}``.

    The kernel of an integer matrix is a saturated submodule, and the rows
    of the Hermite transform sitting over zero rows of the echelon form are
    a basis of it, so the output is automatically primitive.
    """
    h, u = hermite_normal_form(a.transpose())
    kernel_rows = [u.entries[i] for i in range(h.rows) if not any(h.entries[i])]
    if not kernel_rows:
        return IntegerMatrix.zeros(a.cols, 0)
    canon, _ = hermite_normal_form(IntegerMatrix.from_rows(kernel_rows, cols=a.cols))
    rows = [row for row in canon.entries if any(row)]
    return IntegerMatrix.from_rows(rows, cols=a.cols).transpose()


def rank(a: IntegerMatrix) -> int:
    h, _ = hermite_normal_form(a)
    return sum(1 for row in h.entries if any(row))


def determinant(a: IntegerMatrix) -> int:
    """Exact determinant by fraction-free (Bareiss) elimination."""
    if not a.is_square:
        raise NonSquareError(f"determinant needs a square matrix, got {a.rows}x{a.cols}")
    n = a.rows
    if n == 0:
        return 1
    m = [list(row) for row in a.entries]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if m[i][k] != 0), None)
            if swap is None:
                return 0
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
            m[i][k] = 0
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def solve_right(a: IntegerMatrix, b: IntegerMatrix) -> IntegerMatrix | None:
    """One integer solution ``x`` of ``a*x == b``, or ``None`` if there is none.

    Deterministic: forward substitution against the column-echelon form of
    ``a`` (obtained from the Hermite form of the transpose).
    """
    if a.rows != b.rows:
        raise ValueError("shape mismatch in solve_right")
    ht, ut = hermite_normal_form(a.transpose())
    lower = ht.transpose()  # a * ut.T == lower, columns in echelon order
    pivots = []
    for j in range(lower.cols):
        p = next((i for i in range(lower.rows) if lower.entries[i][j] != 0), None)
        pivots.append(p)
    ys = []
    for bc in range(b.cols):
        resid = [b.entries[i][bc] for i in range(b.rows)]
        y = [0] * lower.cols
        for j in range(lower.cols):
            p = pivots[j]
            if p is None:
                continue
            val = resid[p]
            piv = lower.entries[p][j]
            if val % piv:
                return None
            q = val // piv
            if q:
                y[j] = q
                for i in range(p, lower.rows):
                    resid[i] -= q * lower.entries[i][j]
        if any(resid):
            return None
        ys.append(y)
    ycols = IntegerMatrix.from_rows(list(map(list, zip(*ys))) if ys else [], cols=len(ys)) \
        if lower.cols else IntegerMatrix.zeros(0, b.cols)
    if lower.cols and ycols.rows != lower.cols:
        ycols = IntegerMatrix.zeros(lower.cols, b.cols)
    return ut.transpose() * ycols


def inverse_unimodular(a: IntegerMatrix) -> IntegerMatrix:
    """Exact inverse of a unimodular integer matrix."""
    if not a.is_square:
        raise NonSquareError("inverse needs a square matrix")
    h, u = hermite_normal_form(a)
    if h != IntegerMatrix.identity(a.rows):
        raise NotUnimodularError("matrix is not unimodular")
    return u
