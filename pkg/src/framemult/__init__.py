"""Frame multipliers on C^d and their inverses, with discrete Gabor multipliers."""
from .errors import (
    ContractViolation,
    DoesNotCommute,
    FrameMultError,
    MathematicalFailure,
    NoFactorizationStrategy,
    NonConstantSymbol,
    NotADual,
    NotAFrame,
    NotInvertible,
    NotRiesz,
    NotSemiNormalized,
    SingularMatrix,
    ZeroSymbol,
)
from .frames import (
    FrameBounds,
    FrameClass,
    FrameKind,
    FrameSeq,
    analysis,
    are_equivalent,
    canonical_dual,
    classify,
    frame_bounds,
    frame_operator,
    is_dual_pair,
    is_frame,
    is_partial_equivalent,
    random_dual,
    synthesis,
)
from .gabor import (
    GaborSystem,
    Lattice,
    as_gabor_multiplier,
    canonical_dual_window,
    check_gab2_equivalences,
    commutes_all,
    commutes_on_window,
    gabor_frame,
    inverse_gabor_multiplier,
    modulate,
    tf_shift,
    translate,
)
from .multiplier import (
    InverseClass,
    InverseReport,
    Multiplier,
    SymbolSeq,
    apply,
    constant_symbol_inverse,
    dagger_duals,
    factor_symbol,
    inverse_as_multiplier,
    is_invertible,
    riesz_inverse,
    to_matrix,
    verify_inverse,
)

__version__ = "0.1.0"
