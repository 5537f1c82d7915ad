"""Orlicz-Lorentz norms, their Köthe duals and Algorithm A on step functions.

The numerical core works with nonnegative step functions ``f`` on
``[0, inf)`` and decreasing weights ``w``. The dual modular
``P_{phi,w}(f) = inf { int phi(f*/g) g : g submajorized by w }`` is
computed in closed form by Algorithm A, which also yields Halperin's level
function.
"""
from ._solvers import NotConverged
from .duality import (
    DualNormRequest,
    aligned_dual_witness,
    dual_norm,
    halperin_dual_q_norm,
    hoelder_check,
    primal_norm,
)
from .level import (
    LevelDecomposition,
    LevelFunction,
    algorithm_a,
    contact_points,
    inverse_level_weight,
    is_level_interval,
    level_function,
)
from .modular import (
    NormReport,
    RouteMismatch,
    amemiya_norm,
    luxemburg_norm,
    modular_I,
    modular_P,
    norm,
)
from .orlicz import Custom, ExpM, NumericConjugate, OrliczFn, Power, conjugate, young_gap
from .sequence import WeightedSeq, embed, seq_level_modular, seq_level_sequence, seq_modular_p, seq_norms
from .stepfn import (
    PowerWeight,
    ShiftedWeight,
    StepFunction,
    StepWeight,
    Weight,
    inner,
    integrate,
    marcinkiewicz_norm,
    rearrange,
    submajorized,
)
from .tolerance import Tolerance, get_tolerance, set_tolerance, tolerance

__version__ = "0.1.0"

__all__ = [
    "Custom",
    "DualNormRequest",
    "ExpM",
    "LevelDecomposition",
    "LevelFunction",
    "NormReport",
    "NotConverged",
    "NumericConjugate",
    "OrliczFn",
    "Power",
    "PowerWeight",
    "RouteMismatch",
    "ShiftedWeight",
    "StepFunction",
    "StepWeight",
    "Tolerance",
    "Weight",
    "WeightedSeq",
    "algorithm_a",
    "aligned_dual_witness",
    "amemiya_norm",
    "conjugate",
    "contact_points",
    "dual_norm",
    "embed",
    "get_tolerance",
    "halperin_dual_q_norm",
    "hoelder_check",
    "inner",
    "integrate",
    "inverse_level_weight",
    "is_level_interval",
    "level_function",
    "luxemburg_norm",
    "marcinkiewicz_norm",
    "modular_I",
    "modular_P",
    "norm",
    "primal_norm",
    "rearrange",
    "seq_level_modular",
    "seq_level_sequence",
    "seq_modular_p",
    "seq_norms",
    "set_tolerance",
    "submajorized",
    "tolerance",
    "young_gap",
]
