"""
Lifting module for funtf.

Turns eigensteps into frames and eigensteps paths into frame paths.

Architecture:
    - steps: per-step index data and the v / w / W evaluator, including
      the endpoint limit for boundary targets
    - synthesis: BaseData, synthesize and recover_base_data
    - paths: lift_path (eigensteps move, fiber fixed) and fiber_path
      (eigensteps fixed, fiber moves)
"""

from funtf.lifting.paths import fiber_path, lift_path, lift_t_grid
from funtf.lifting.steps import (
    LiftEvaluation,
    StepIndexData,
    eval_vwW,
    eval_vwW_limit,
    step_index_data,
)
from funtf.lifting.synthesis import (
    BaseData,
    identity_base_data,
    random_base_data,
    recover_base_data,
    synthesize,
)

__all__ = [
    "BaseData",
    "LiftEvaluation",
    "StepIndexData",
    "eval_vwW",
    "eval_vwW_limit",
    "fiber_path",
    "identity_base_data",
    "lift_path",
    "lift_t_grid",
    "random_base_data",
    "recover_base_data",
    "step_index_data",
    "synthesize",
]
