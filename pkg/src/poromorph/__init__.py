"""Finite-element solver and analysis tools for a growing poro-viscoelastic
tissue: velocity, strain, and pressure on P1 elements with a stabilized
equal-order pressure equation, plus the 1D stability and monotonicity
machinery behind the stabilization threshold.
"""

from ._kernels import BACKEND, COMPILED
from .mesh import (ElementInversion, Mesh, interval_mesh, move_vertices,
                   unit_square_mesh)
from .params import ModelParams, ValidationError
from .timestepper import (NonConvergence, RunResult, State, StepReport, run,
                          step, zero_state)

__version__ = "0.1.0"

__all__ = [
    "BACKEND", "COMPILED", "ElementInversion", "Mesh", "ModelParams",
    "NonConvergence", "RunResult", "State", "StepReport", "ValidationError",
    "interval_mesh", "move_vertices", "run", "step", "unit_square_mesh",
    "zero_state", "__version__",
]
