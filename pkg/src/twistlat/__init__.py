"""Exact-arithmetic toolkit for definite unimodular lattices, homology with
local coefficients from double covers, and non-smoothability certificates
for 4-manifold invariant records."""

from .abelian import FinAbGroup
from .errors import (
    FindingError,
    PreconditionError,
    TwistlatError,
)
from .forms import (
    CohomologyModel,
    SplitPair,
    TwistedClass,
    count_reducible_pairs,
    enumerate_reducible_classes,
    enumerate_split_pairs,
    minimal_k,
    reducible_count_parity,
    verify_counting_identity,
)
from .intmat import (
    IntegerMatrix,
    SmithDecomposition,
    determinant,
    hermite_normal_form,
    integer_kernel,
    smith_normal_form,
)
from .lattice import (
    Lattice,
    RootDecomposition,
    is_standard,
    minus_e8,
    minus_identity,
    named_lattice,
    root_decomposition,
)

__version__ = "0.1.0"
