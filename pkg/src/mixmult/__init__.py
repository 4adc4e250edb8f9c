"""Mixed multiplicities of maximal degrees for monomial data in a localized polynomial ring."""
__version__ = "0.1.0"

from .errors import Inconsistency, InputError, Refused, UnstableFit, WindowTooSmall
from .field import Field
from .hilbert import (
    BinomialPoly,
    FittingCertificate,
    difference,
    fit_binomial,
    hilbert_polynomial,
    maximal_support,
    mixed_mult_maximal,
    mixed_multiplicity,
)
from .koszul import chi, chi_oracle, generating_function_check, koszul_homology
from .modules import (
    DirectSum,
    HilbertTable,
    IdealFamily,
    Subquotient,
    Window,
    default_window,
    hilbert_F,
    hilbert_P,
    krull_dim,
    length,
    localized_length,
    saturate_module,
)
from .monomial import (
    MonomialIdeal,
    PolyElement,
    Ring,
    colon_saturate,
    generic_element,
    ideal_power,
    ideal_product,
    minimal_primes,
)
from .reductions import (
    ReductionCandidate,
    find_joint_reduction,
    is_joint_reduction,
    is_minimal_joint_reduction,
    joint_reduction_at,
    weak_fc_check,
)
