"""Generalized level measures over finite ground sets.

Monotone measures, conditional aggregation operators, exact level and
survival step functions, nonadditive integrals, citation indices and
measure-to-hyperset transformations.
"""

from .cao import Cao, Pfca, builtin, check_C1_C2, check_property, psi_family
from .glm import (
    bounds_chain_check,
    dual_pfca,
    duality_identity_check,
    glm,
    glm_const,
    glm_step,
    gsf,
    gsf_const,
    gsf_step,
    level_measure,
    level_step,
    survival_function,
    survival_step,
)
from .integrals import Semicopula, choquet, glm_functional, gsf_functional, seminormed, sugeno
from .measure import (
    GroundSet,
    MeasureFamily,
    MonotoneMeasure,
    Paving,
    PavingProcess,
    counting_measure,
    validate_monotone,
)
from .scientometrics import IndexSpec, ScientificRecord, glm_index, named_index
from .stepfun import StepFunction

__all__ = [
    "Cao", "Pfca", "builtin", "check_C1_C2", "check_property", "psi_family",
    "bounds_chain_check", "dual_pfca", "duality_identity_check", "glm", "glm_const",
    "glm_step", "gsf", "gsf_const", "gsf_step", "level_measure", "level_step",
    "survival_function", "survival_step", "Semicopula", "choquet", "glm_functional",
    "gsf_functional", "seminormed", "sugeno", "GroundSet", "MeasureFamily",
    "MonotoneMeasure", "Paving", "PavingProcess", "counting_measure", "validate_monotone",
    "IndexSpec", "ScientificRecord", "glm_index", "named_index", "StepFunction",
]
