"""Seeded random generators used by property checks and the verify suite.

Everything takes an explicit ``random.Random`` so that the identity suite
and the tests are reproducible run to run.
"""

from __future__ import annotations

import random

from .intmat import IntegerMatrix


def random_unimodular(
    n: int, rng: random.Random, entry_bound: int = 3, ops: int | None = None
) -> IntegerMatrix:
    """Random unimodular matrix with all entries bounded by ``entry_bound``.

    Built as a short product of elementary row operations; candidates whose
    entries outgrow the bound are rejected and rebuilt with fewer steps.
    """
    if n == 0:
        return IntegerMatrix.identity(0)
    steps = ops if ops is not None else max(2, 2 * n)
    while True:
        m = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
        for _ in range(steps):
            kind = rng.randrange(3)
            i = rng.randrange(n)
            j = rng.randrange(n)
            if kind == 0 and i != j:
                q = rng.choice((-1, 1))
                for c in range(n):
                    m[i][c] += q * m[j][c]
            elif kind == 1 and i != j:
                m[i], m[j] = m[j], m[i]
            elif kind == 2:
                m[i] = [-x for x in m[i]]
        if max(abs(x) for row in m for x in row) <= entry_bound:
            return IntegerMatrix.from_rows(m, cols=n)
        steps = max(1, steps - 1)


def random_matrix(rows: int, cols: int, rng: random.Random, bound: int = 9) -> IntegerMatrix:
    return IntegerMatrix.from_rows(
        [[rng.randint(-bound, bound) for _ in range(cols)] for _ in range(rows)], cols=cols
    )


def conjugate_gram(gram: IntegerMatrix, u: IntegerMatrix) -> IntegerMatrix:
    """Gram matrix after the change of basis x -> u.x (u unimodular)."""
    return u.transpose() * gram * u
