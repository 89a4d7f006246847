"""Dimension polynomials and ideal comparison for differential chains."""

from .chains import (
    DiffChain,
    InvalidChainError,
    NotTriangularError,
    ReductionTrace,
    ValidationReport,
    delta_polynomial,
    full_pseudo_reduce,
    membership,
    prolong,
    validate,
)
from .compare import (
    CompareVerdict,
    Containment,
    RankingMismatchError,
    Relation,
    compare_ideals,
    containment_check,
    degree_product,
)
from .diffpoly import (
    ConstantPolynomialError,
    Derivative,
    DiffPoly,
    Ranking,
    RingSpec,
    make_derivative,
    rank_cmp,
)
from .dimension import (
    InternalDisagreementError,
    JanetCone,
    LeaderSpec,
    OmegaResult,
    SubsetBlowupError,
    count_derivatives,
    janet_complete,
    krull_oracle,
    normalize_leaders,
    omega,
    omega_incl_excl,
    omega_janet,
)
from .numpoly import NumericalPolynomial, cmp
from .ordering import Ordering
from .systemfile import (
    ArityMismatchError,
    ParseError,
    SystemFile,
    UnknownIdentifierError,
    format_system,
    parse_system,
)

__version__ = "0.1.0"
