"""Crossed-product superalgebra toolkit.

Exact Lie superalgebras with PBW normal forms, group pairings, a closed
function calculus on the epsilon-extension, the twisted-convolution
*-algebra with multipliers, matrix representations with certified
operator-norm bounds, and an s-expression definition language with a CLI.
"""

from .catalog import CATALOG_NAMES, load_catalog
from .crossed import (
    CrossedElement,
    Multiplier,
    gamma_integral,
    mul_compose,
    mul_group,
    mul_lie,
    mul_star,
    orbit_derivative_check,
    xp_multiply,
    xp_star,
)
from .dsl import Workspace, parse, parse_file, print_workspace
from .enveloping import UEElement, dagger, normal_form
from .errors import (
    DslError,
    MismatchError,
    StructureError,
    SuperrepError,
    UnsupportedInstanceError,
)
from .functions import FiniteFunction, GaussianPoly, convolve, fourier_at, l1_bound
from .groups import (
    FiniteGroup,
    GroupData,
    GroupPoint,
    Supergroup,
    build_pair,
    validate_pair,
)
from .reps import (
    MatrixRep,
    SeminormInterval,
    ccr_report,
    prop33_bound,
    reconstruct_pi,
    reconstruct_rho,
    rep_hat,
    seminorm_interval,
    taylor_norm_check,
    validate_rep,
)
from .scalars import GaussianRational
from .superalgebra import (
    SuperAlgebra,
    build_superalgebra,
    is_nilpotent,
    is_odd_generated,
    lower_central_series,
    validate_superalgebra,
)

__version__ = "0.1.0"

__all__ = [
    "CATALOG_NAMES",
    "CrossedElement",
    "DslError",
    "FiniteFunction",
    "FiniteGroup",
    "GaussianPoly",
    "GaussianRational",
    "GroupData",
    "GroupPoint",
    "MatrixRep",
    "MismatchError",
    "Multiplier",
    "SeminormInterval",
    "StructureError",
    "SuperAlgebra",
    "Supergroup",
    "SuperrepError",
    "UEElement",
    "UnsupportedInstanceError",
    "Workspace",
    "build_pair",
    "build_superalgebra",
    "ccr_report",
    "convolve",
    "dagger",
    "fourier_at",
    "gamma_integral",
    "is_nilpotent",
    "is_odd_generated",
    "l1_bound",
    "load_catalog",
    "lower_central_series",
    "mul_compose",
    "mul_group",
    "mul_lie",
    "mul_star",
    "normal_form",
    "orbit_derivative_check",
    "parse",
    "parse_file",
    "print_workspace",
    "prop33_bound",
    "reconstruct_pi",
    "reconstruct_rho",
    "rep_hat",
    "seminorm_interval",
    "taylor_norm_check",
    "validate_pair",
    "validate_rep",
    "validate_superalgebra",
    "xp_multiply",
    "xp_star",
]
