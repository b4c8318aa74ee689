"""Exception types shared across the package."""


class UdwHarvestError(Exception):
    """Base class for all package errors."""


class ValidationError(UdwHarvestError, ValueError):
    """A physical parameter or precondition was violated."""


class UnsupportedScenarioError(UdwHarvestError):
    """The requested closed form does not exist for this scenario."""


class SingularKernelError(UdwHarvestError, ArithmeticError):
    """A two-point kernel was evaluated on (or too close to) one of its poles."""


class ResonanceDivergenceError(UdwHarvestError, ArithmeticError):
    """Coherence denominator vanished: the configuration sits at the critical distance."""


class DegeneratePoleError(UdwHarvestError, ArithmeticError):
    """The two pole branches coincide, so a single-branch residue is undefined."""


class ConvergenceError(UdwHarvestError, RuntimeError):
    """An iterative solver or adaptive integrator failed to converge."""


class OracleUnreliableError(UdwHarvestError, RuntimeError):
    """The brute-force oracle cannot be trusted here (range guard or
    non-monotone regulator extrapolation).  Recorded, never fatal for scans."""
