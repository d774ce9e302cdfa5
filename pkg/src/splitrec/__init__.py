"""Splitting of three-term recurrences into first-order 2-vector systems.

A solution of ``y[k+1] + a[k] y[k] + b[k] y[k-1] = f[k]`` is written as
``y = y1 + y2`` with ``y[k+1] = rho1[k] y1[k] + rho2[k] y2[k]``, which turns
the recurrence into transfer-form or scatter-form step matrices.  Riccati
choices of ``rho`` decouple the two branches.
"""

from .errors import (
    DegenerateSplit,
    IndexOutOfRange,
    InsufficientCoefficients,
    NoPhysicalRoot,
    PoleHit,
    SingularBoundarySystem,
    SingularScatterDenominator,
    SplitRecError,
    StarProductSingular,
)
from .kernels import BACKEND
from .matrices import (
    CumulativeScatter,
    Form,
    StepMatrix,
    cascade_scatter,
    propagate_transfer,
    scatter_step,
    solve_two_point_scatter,
    star,
    transfer_matrix,
)
from .recurrence import (
    GridFunction,
    RecurrenceCoefficients,
    casoratian,
    companion_step,
    residual,
    solve_boundary_first_kind,
    solve_cauchy,
)
from .riccati import (
    RiccatiTrace,
    characteristic_roots,
    diagonal_propagate,
    proportional_coefficients,
    riccati_forward,
    riccati_inverse,
)
from .split import SplitSequences, SplitState, decompose, initial_split, recombine

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "CumulativeScatter",
    "DegenerateSplit",
    "Form",
    "GridFunction",
    "IndexOutOfRange",
    "InsufficientCoefficients",
    "NoPhysicalRoot",
    "PoleHit",
    "RecurrenceCoefficients",
    "RiccatiTrace",
    "SingularBoundarySystem",
    "SingularScatterDenominator",
    "SplitRecError",
    "SplitSequences",
    "SplitState",
    "StarProductSingular",
    "StepMatrix",
    "cascade_scatter",
    "casoratian",
    "characteristic_roots",
    "companion_step",
    "decompose",
    "diagonal_propagate",
    "initial_split",
    "propagate_transfer",
    "proportional_coefficients",
    "recombine",
    "residual",
    "riccati_forward",
    "riccati_inverse",
    "scatter_step",
    "solve_boundary_first_kind",
    "solve_cauchy",
    "solve_two_point_scatter",
    "star",
    "transfer_matrix",
]
