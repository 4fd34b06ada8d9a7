"""ratsimplex: which squared edge lengths admit regular simplices in Q^n.

Decides membership exactly (two independent methods), explains the local
conditions behind each verdict, and searches for explicit lattice witnesses
of small positive instances.
"""

from ._kernels import BACKEND
from .arith import (
    REAL,
    FactorizationTimeout,
    Place,
    PrimeFactorization,
    Rational,
    ZeroInput,
    factorize,
    is_prime,
    is_rational_square,
    square_class,
    squarefree_part,
    support_primes,
    valuation,
)
from .classify import (
    DerivedParams,
    EtaFamily,
    InvalidQuery,
    LocalCheck,
    MethodsDisagree,
    MissingForms,
    NotSquarefree,
    PreconditionViolated,
    Query,
    Verdict,
    classify,
    classify_engine,
    classify_table,
    complement_exists,
    derive,
    eta_family,
    explain,
    in_H,
    in_U,
    in_norm_group_positive,
    stabilization_equiv,
)
from .forms import (
    BadDimension,
    DegenerateMatrix,
    DiagonalForm,
    FormInvariants,
    SymmetricMatrix,
    ZeroScale,
    diagonalize_congruence,
    direct_sum,
    forms_equivalent,
    gram_regular_simplex,
    hasse_invariant,
    invariants,
    scale,
    unit_form,
)
from .local import (
    BadModulus,
    NotCoprime,
    Sign,
    hilbert_symbol,
    is_local_square,
    legendre,
    symbol_support,
)
from .witness import (
    BudgetExceeded,
    DimensionMismatch,
    SearchConfig,
    Witness,
    builtin_witness,
    canonical_simplex,
    scale_witness,
    search_lattice_witness,
    transfer_witness_stabilized,
    verify_regular_simplex,
)

__version__ = "0.1.0"
