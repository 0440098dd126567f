"""Casimir pressure between a gold half-space and thin gold films near percolation."""

from .lifshitz import (
    ConvergenceError,
    ForceResult,
    LayeredStack,
    QuadratureSpec,
    casimir_force,
    default_stack,
    ideal_casimir_pressure,
    reduction_factor,
)
from .materials import (
    Constant,
    Drude,
    DrudeSmith,
    DrudeSmithParams,
    LorentzOscillator,
    PerfectConductor,
    Plasma,
    epsilon_iw,
    table1_registry,
)

__version__ = "0.1.0"
