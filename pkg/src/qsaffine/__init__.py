"""Self-affine functions over weighted digit expansions of [0, 1].

Evaluation with certified error bounds, local and global Hölder exponents,
closed-form global extrema, continuum level sets, digit-restricted
Cantor-type maximum sets with their Hausdorff dimension, and constructive
preimages witnessing that thin sets can cover a full interval.
"""

from .codec import (
    Cylinder,
    DigitString,
    FrequencyVector,
    StochasticVector,
    compare,
    cylinder_bounds,
    decode,
    digit_frequencies,
    encode,
    run_length,
    twin_representation,
)
from .config import SystemConfig, load_config, parse_config_text
from .errors import (
    AlphabetMismatch,
    CertificationError,
    ConditionsNotMet,
    HypothesisViolated,
    InsufficientDepth,
    InvalidDigit,
    NonConvergence,
    OutOfDomain,
    PreconditionViolated,
    QsAffineError,
    ValidationError,
)
from .extrema import (
    CantorSpec,
    LevelSetDescriptor,
    NonInvarianceReport,
    cantor_construction,
    closed_form_max,
    closed_form_min,
    closed_form_regime,
    derived_levels,
    level_set,
    level_witness,
    maxima_set,
    membership,
    moran_dimension,
    non_invariance_certificate,
    preimage_digits,
    preimage_residual_bound,
)
from .holder import (
    HolderReport,
    almost_everywhere_exponent,
    empirical_exponent,
    global_exponent,
    local_exponent_binary,
    local_exponent_unary,
    nowhere_differentiable_predicate,
    singularity_predicate,
)
from .selfaffine import (
    AffineCoefficients,
    BoundsPair,
    Evaluation,
    SelfAffineSystem,
    bounds_iteration_steps,
    evaluate,
    evaluate_at,
    functional_equation_residual,
    global_bounds,
    sample,
    variation_lower_bound,
)

__all__ = [
    "AffineCoefficients",
    "AlphabetMismatch",
    "BoundsPair",
    "CantorSpec",
    "CertificationError",
    "ConditionsNotMet",
    "Cylinder",
    "DigitString",
    "Evaluation",
    "FrequencyVector",
    "HolderReport",
    "HypothesisViolated",
    "InsufficientDepth",
    "InvalidDigit",
    "LevelSetDescriptor",
    "NonConvergence",
    "NonInvarianceReport",
    "OutOfDomain",
    "PreconditionViolated",
    "QsAffineError",
    "SelfAffineSystem",
    "StochasticVector",
    "SystemConfig",
    "ValidationError",
    "almost_everywhere_exponent",
    "bounds_iteration_steps",
    "cantor_construction",
    "closed_form_max",
    "closed_form_min",
    "closed_form_regime",
    "compare",
    "cylinder_bounds",
    "decode",
    "derived_levels",
    "digit_frequencies",
    "empirical_exponent",
    "encode",
    "evaluate",
    "evaluate_at",
    "functional_equation_residual",
    "global_bounds",
    "global_exponent",
    "level_set",
    "level_witness",
    "load_config",
    "local_exponent_binary",
    "local_exponent_unary",
    "maxima_set",
    "membership",
    "moran_dimension",
    "non_invariance_certificate",
    "nowhere_differentiable_predicate",
    "parse_config_text",
    "preimage_digits",
    "preimage_residual_bound",
    "run_length",
    "sample",
    "singularity_predicate",
    "twin_representation",
    "variation_lower_bound",
]
