"""Physical parameters, trajectories, window function, and dimensionless reductions.

Natural units throughout: c = hbar = k_B = 1.  Lengths and times share one
unit; kappa and omega carry the inverse unit.  Everything downstream works in
the dimensionless groupings (a, w, g) = (L*kappa, kappa*sigma^2*omega,
kappa*sigma) wherever possible.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

from .errors import ValidationError


class Scenario(enum.Enum):
    """Which pair of worldlines (or field state) the two detectors probe."""

    PARALLEL = "parallel"
    ANTIPARALLEL = "antiparallel"
    DESITTER = "desitter"
    THERMAL = "thermal"
    INERTIAL = "inertial"


_SCENARIO_ALIASES = {
    "parallel": Scenario.PARALLEL,
    "antiparallel": Scenario.ANTIPARALLEL,
    "anti-parallel": Scenario.ANTIPARALLEL,
    "anti_parallel": Scenario.ANTIPARALLEL,
    "desitter": Scenario.DESITTER,
    "de-sitter": Scenario.DESITTER,
    "de_sitter": Scenario.DESITTER,
    "ds": Scenario.DESITTER,
    "thermal": Scenario.THERMAL,
    "inertial": Scenario.INERTIAL,
}


def parse_scenario(name) -> Scenario:
    if isinstance(name, Scenario):
        return name
    key = str(name).strip().lower()
    if key not in _SCENARIO_ALIASES:
        raise ValidationError(
            f"unknown scenario {name!r}; expected one of "
            f"{sorted(set(a.value for a in Scenario))}"
        )
    return _SCENARIO_ALIASES[key]


@dataclass(frozen=True)
class DetectorConfig:
    """Single source of truth for one run.

    kappa : acceleration magnitude (expansion rate / bath temperature scale
            for the de Sitter / thermal scenarios); must be 0 exactly for the
            inertial scenario and positive otherwise.
    sigma : standard deviation of the Gaussian switching window.
    omega : detector energy gap.
    L     : distance of closest approach (parallel/anti-parallel), comoving
            distance (de Sitter), or fixed proper distance (thermal/inertial).
    eta0  : peak coupling strength, 0 < eta0 << 1.
    """

    kappa: float
    sigma: float
    omega: float
    L: float
    eta0: float = 0.01
    scenario: Scenario = Scenario.ANTIPARALLEL

    def __post_init__(self):
        object.__setattr__(self, "scenario", parse_scenario(self.scenario))
        if self.sigma <= 0:
            raise ValidationError(f"sigma must be > 0, got {self.sigma}")
        if self.omega <= 0:
            raise ValidationError(f"omega must be > 0, got {self.omega}")
        if self.L <= 0:
            raise ValidationError(f"L must be > 0, got {self.L}")
        if not 0 < self.eta0 < 1:
            raise ValidationError(f"eta0 must lie in (0, 1), got {self.eta0}")
        if self.scenario is Scenario.INERTIAL:
            if self.kappa != 0:
                raise ValidationError("inertial scenario requires kappa = 0")
        elif self.kappa <= 0:
            raise ValidationError(
                f"kappa must be > 0 for scenario {self.scenario.value}, got {self.kappa}"
            )

    @property
    def sigma_omega(self) -> float:
        return self.sigma * self.omega

    @property
    def w(self) -> float:
        """kappa * sigma^2 * omega (0 for the inertial scenario)."""
        return self.kappa * self.sigma**2 * self.omega

    @property
    def spacelike_ok(self) -> bool:
        """Diagnostic only: window comfortably shorter than the separation."""
        return self.sigma < self.L / 10.0

    def require_a_window(self):
        """Excitation-probability integrals need kappa*sigma^2*omega < pi."""
        if self.w >= math.pi:
            raise ValidationError(
                f"kappa*sigma^2*omega must be < pi, got {self.w:.6g}"
            )

    def replace(self, **kw) -> "DetectorConfig":
        data = {
            "kappa": self.kappa,
            "sigma": self.sigma,
            "omega": self.omega,
            "L": self.L,
            "eta0": self.eta0,
            "scenario": self.scenario,
        }
        data.update(kw)
        return DetectorConfig(**data)


@dataclass(frozen=True)
class DimensionlessPoint:
    """The invariants indexing parameter space.

    a = L*kappa, w = kappa*sigma^2*omega, g = kappa*sigma, and the derived
    b = 1 - a/2 whose sign separates overlapping (b > 0) from disjoint (b < 0)
    wedge configurations.
    """

    a: float
    w: float
    g: float

    def __post_init__(self):
        if self.a <= 0:
            raise ValidationError(f"a = L*kappa must be > 0, got {self.a}")
        if not 0 < self.w < math.pi:
            raise ValidationError(f"w = kappa*sigma^2*omega must lie in (0, pi), got {self.w}")
        if self.g <= 0:
            raise ValidationError(f"g = kappa*sigma must be > 0, got {self.g}")

    @property
    def b(self) -> float:
        return 1.0 - self.a / 2.0

    @property
    def sigma_omega(self) -> float:
        return self.w / self.g


@dataclass(frozen=True)
class SpacetimeEvent:
    """A point (t, x) on a worldline; the other two spatial coordinates are 0."""

    t: float
    x: float


def trajectory(cfg: DetectorConfig, detector: str, tau: float) -> SpacetimeEvent:
    """Worldline event of detector 'a' or 'b' at proper time tau.

    Both detectors follow hyperbolae with the same |acceleration| kappa and
    closest approach L at t = 0; detector b accelerates in the same (parallel)
    or opposite (anti-parallel) direction.
    """
    if cfg.scenario not in (Scenario.PARALLEL, Scenario.ANTIPARALLEL):
        raise UnsupportedTrajectory(cfg.scenario)
    if cfg.kappa == 0:
        raise ValidationError("kappa = 0: use the inertial closed forms instead")
    k = cfg.kappa
    t = math.sinh(k * tau) / k
    bulge = (math.cosh(k * tau) - 1.0) / k
    if detector == "a":
        x = bulge + cfg.L / 2.0
    elif detector == "b":
        sign = 1.0 if cfg.scenario is Scenario.PARALLEL else -1.0
        x = sign * bulge - cfg.L / 2.0
    else:
        raise ValidationError(f"detector must be 'a' or 'b', got {detector!r}")
    return SpacetimeEvent(t=t, x=x)


class UnsupportedTrajectory(ValidationError):
    def __init__(self, scenario):
        super().__init__(
            f"scenario {scenario.value} has no explicit worldline; "
            "only parallel/anti-parallel accelerated pairs do"
        )


def window(cfg: DetectorConfig, tau: float) -> float:
    """Gaussian switching function eta0 * exp(-tau^2 / 2 sigma^2)."""
    return cfg.eta0 * math.exp(-(tau**2) / (2.0 * cfg.sigma**2))


def unruh_temperature(kappa: float) -> float:
    """Temperature kappa / 2 pi seen by a uniformly accelerated detector."""
    if kappa < 0:
        raise ValidationError(f"kappa must be >= 0, got {kappa}")
    return kappa / (2.0 * math.pi)


def reduce(cfg: DetectorConfig) -> DimensionlessPoint:
    """Collapse a configuration onto the dimensionless invariants (a, w, g)."""
    if cfg.kappa == 0:
        raise ValidationError(
            "kappa = 0 has no dimensionless reduction; use the inertial closed forms"
        )
    return DimensionlessPoint(
        a=cfg.L * cfg.kappa,
        w=cfg.kappa * cfg.sigma**2 * cfg.omega,
        g=cfg.kappa * cfg.sigma,
    )


def config_from_point(point: DimensionlessPoint, sigma: float = 1.0,
                      eta0: float = 0.01,
                      scenario: Scenario = Scenario.ANTIPARALLEL) -> DetectorConfig:
    """Reconstruct a physical configuration from (a, w, g) at a chosen sigma."""
    kappa = point.g / sigma
    return DetectorConfig(
        kappa=kappa,
        sigma=sigma,
        omega=point.w / (kappa * sigma**2),
        L=point.a / kappa,
        eta0=eta0,
        scenario=scenario,
    )
