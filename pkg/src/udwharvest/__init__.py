"""Entanglement harvesting by accelerated Unruh-DeWitt detector pairs.

Library + CLI computing the excitation probability A and coherence term X for
two identical detectors on parallel / anti-parallel accelerated, comoving
de Sitter, thermal-bath, or inertial worldlines, the resulting negativity,
the critical-distance resonance structure, and three rangefinding protocols
built on the harvested correlations.

All amplitudes are stored in the scaled convention
    A~ = e^{(sigma*Omega)^2} A / eta0^2
(and likewise X~), which keeps numbers in floating-point range where the raw
second-order quantities would underflow.
"""

__version__ = "0.1.0"

from .core import (
    DetectorConfig,
    DimensionlessPoint,
    Scenario,
    SpacetimeEvent,
    config_from_point,
    reduce,
    trajectory,
    unruh_temperature,
    window,
)
from .errors import (
    ConvergenceError,
    DegeneratePoleError,
    OracleUnreliableError,
    ResonanceDivergenceError,
    SingularKernelError,
    UdwHarvestError,
    UnsupportedScenarioError,
    ValidationError,
)

__all__ = [
    "DetectorConfig",
    "DimensionlessPoint",
    "Scenario",
    "SpacetimeEvent",
    "config_from_point",
    "reduce",
    "trajectory",
    "unruh_temperature",
    "window",
    "UdwHarvestError",
    "ValidationError",
    "UnsupportedScenarioError",
    "SingularKernelError",
    "ResonanceDivergenceError",
    "DegeneratePoleError",
    "ConvergenceError",
    "OracleUnreliableError",
    "__version__",
]
