"""Power-sum decompositions of forms with machine-checkable certificates.

The package computes generic k-ranks via Hilbert-series arithmetic, Sylvester
decompositions of binary forms, three-cubes decompositions of binary sextics,
fiber-based k-rank bounds, monomial k-th power factorizations and canonical
forms.  Everything runs over a dual-mode scalar type: exact Gaussian rationals
or complex doubles.
"""

from .errors import (
    AmbiguousNumericsError,
    BudgetExhausted,
    GenericityError,
    InternalConsistencyError,
    ParseError,
    PreconditionError,
    ScalarModeError,
    WaringError,
)
from .scalars import EXACT, FLOAT, Scalar, roots_of_unity, scalar_str, sc_exact, sc_float
from .forms import BinaryForm, LinearSubstitution, MultiForm, monomials
from .roots import is_square_free, projective_roots
from .parsing import format_form, parse_form, parse_scalar
from .rankseries import (
    RankAnswer,
    TruncatedSeries,
    froeberg_series,
    generic_k_rank,
    hilbert_function_of_ideal,
    macaulay_hilbert_oracle,
    secant_codim,
    series_min_rank,
    si_thresholds,
)
from .apolarity import (
    Catalecticant,
    WaringDecomposition,
    binary_waring_rank_exact,
    catalecticant,
    cubic_three_cubes,
    sylvester_decompose,
    two_squares,
)
from .sexticcubes import (
    CubesCertificate,
    SexticView,
    discriminant_D,
    residual_cubic,
    shear_coefficients,
    three_cubes,
)
from .structured import (
    CanonicalForm,
    MonomialFactorization,
    canonical_form,
    monomial_k_factor,
    monomial_krank_upper,
    univariate_canonical,
)
from .fiber import (
    FiberPoint,
    KrankBound,
    PowerFiber,
    build_power_fiber,
    fiber_cat_rank,
    fiber_point_decompose,
    krank_lower_probe,
    krank_upper,
    lift,
    project,
    veronese_center,
)
from .certificates import certificate_to_json, verify_certificate
from .suite import CaseResult, case_names, run_examples

__all__ = [name for name in dir() if not name.startswith("_")]
