"""Closed-form stationary-phase approximations and the analytic criteria.

With the Gaussian window, both amplitudes reduce at leading order to the
kernel evaluated at the complex stationary point of the completed-square
exponent.  In the dimensionless groupings a = L kappa, w = kappa sigma^2
Omega, g = kappa sigma:

    A~        = (1/2 pi) [(g/2) csc w]^2                 (all scenarios)
    X~_par    = -(1/2 pi) (sigma/L)^2
    X~_anti   = -(1/2 pi) [g / (a + 2 cos w - 2)]^2
    X~_dS     = -(1/2 pi) (sigma/L)^2 e^{-2 i w}
    X~_th     = -(1/2 pi) (kappa sigma^2 / 2 L) coth(a/2)

The anti-parallel form diverges at the critical distance a = 2 (1 - cos w);
near it the true coherence flips sign, which this approximation misses, so
evaluation there is refused rather than extrapolated.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .core import DetectorConfig, DimensionlessPoint, Scenario, reduce
from .errors import (
    ResonanceDivergenceError,
    UnsupportedScenarioError,
    ValidationError,
)
from .quadrature import ScaledAmplitude

_RESONANCE_GUARD = 1e-9


def _norm(cfg_or_point, scenario=None):
    if isinstance(cfg_or_point, DetectorConfig):
        return cfg_or_point.scenario, cfg_or_point
    if scenario is None:
        raise ValidationError("a DimensionlessPoint needs an explicit scenario")
    return scenario, cfg_or_point


def a_saddle(cfg: DetectorConfig) -> ScaledAmplitude:
    """Leading-order excitation probability, identical for all accelerated /
    expanding / thermal scenarios; the inertial limit is hard-coded."""
    if cfg.scenario is Scenario.INERTIAL or cfg.kappa == 0.0:
        val = 1.0 / (8.0 * math.pi * cfg.sigma_omega**2)
        return ScaledAmplitude(value=val, kind="A", diagnostics={"method": "saddle"})
    w = cfg.w
    if not 0.0 < w < math.pi:
        raise ValidationError(f"stationary-phase response needs 0 < w < pi, got {w:.6g}")
    g = cfg.kappa * cfg.sigma
    val = (1.0 / (2.0 * math.pi)) * ((g / 2.0) / math.sin(w)) ** 2
    return ScaledAmplitude(value=val, kind="A", diagnostics={"method": "saddle"})


def x_saddle(cfg: DetectorConfig) -> ScaledAmplitude:
    """Leading-order residue-free coherence term for cfg's scenario."""
    sigma, L = cfg.sigma, cfg.L
    scen = cfg.scenario
    pref = 1.0 / (2.0 * math.pi)
    if scen is Scenario.INERTIAL or cfg.kappa == 0.0:
        val = complex(-pref * (sigma / L) ** 2)
    elif scen is Scenario.PARALLEL:
        val = complex(-pref * (sigma / L) ** 2)
    elif scen is Scenario.DESITTER:
        w = cfg.w
        val = -pref * (sigma / L) ** 2 * complex(math.cos(2 * w), -math.sin(2 * w))
    elif scen is Scenario.THERMAL:
        a = cfg.kappa * L
        val = complex(-pref * (cfg.kappa * sigma**2 / (2.0 * L)) / math.tanh(a / 2.0))
    elif scen is Scenario.ANTIPARALLEL:
        a = cfg.kappa * L
        w = cfg.w
        denom = a + 2.0 * (math.cos(w) - 1.0)
        if abs(denom) < _RESONANCE_GUARD:
            raise ResonanceDivergenceError(
                f"separation sits at the critical distance (a + 2 cos w - 2 = "
                f"{denom:.2e}); the stationary-phase form diverges and even its "
                "sign is wrong nearby -- use quadrature"
            )
        g = cfg.kappa * sigma
        val = complex(-pref * (g / denom) ** 2)
    else:
        raise UnsupportedScenarioError(f"no coherence closed form for {scen}")
    return ScaledAmplitude(value=val, kind="X", residue_free=val, residue=0j,
                           diagnostics={"method": "saddle"})


@dataclass(frozen=True)
class CriterionResult:
    """Two sides of an entanglement inequality; entangled iff margin > 0."""

    entangled: bool
    lhs: float
    rhs: float

    @property
    def margin(self) -> float:
        return self.rhs - self.lhs


def criterion(cfg_or_point, scenario: Scenario | None = None) -> CriterionResult:
    """Closed-form entanglement criterion.

    parallel / de Sitter:  a/2 < sin w
    thermal:               (a/2) tanh(a/2) < sin^2 w
    inertial:              L/2 < sigma^2 Omega

    Anti-parallel worldlines have no closed criterion (the residue terms set
    the boundary); assemble the full state instead.
    """
    scen, obj = _norm(cfg_or_point, scenario)
    if scen is Scenario.ANTIPARALLEL:
        raise UnsupportedScenarioError(
            "anti-parallel entanglement has no closed-form criterion; "
            "use the assembled negativity"
        )
    if scen is Scenario.INERTIAL:
        if not isinstance(obj, DetectorConfig):
            raise ValidationError("inertial criterion needs a full configuration")
        lhs, rhs = obj.L / 2.0, obj.sigma**2 * obj.omega
    else:
        point = obj if isinstance(obj, DimensionlessPoint) else reduce(obj)
        if scen in (Scenario.PARALLEL, Scenario.DESITTER):
            lhs, rhs = point.a / 2.0, math.sin(point.w)
        elif scen is Scenario.THERMAL:
            half = point.a / 2.0
            lhs, rhs = half * math.tanh(half), math.sin(point.w) ** 2
        else:
            raise UnsupportedScenarioError(str(scen))
    return CriterionResult(entangled=lhs < rhs, lhs=lhs, rhs=rhs)


def negativity_closed_form(cfg: DetectorConfig) -> float:
    """max(|X~| - A~, 0) assembled from the closed forms (scaled units)."""
    a_val = a_saddle(cfg).value.real
    x_val = x_saddle(cfg).value
    return max(abs(x_val) - a_val, 0.0)


def critical_distance(kappa: float, sigma: float, omega: float) -> float:
    """Separation at which the anti-parallel coherence diverges:
    (2/kappa) (1 - cos(kappa sigma^2 omega)).  Always below 4/kappa."""
    w = kappa * sigma**2 * omega
    if not 0.0 < w < math.pi:
        raise ValidationError(f"critical distance needs 0 < kappa sigma^2 omega < pi, got {w:.6g}")
    return (2.0 / kappa) * (1.0 - math.cos(w))


def resonant_omega(kappa: float, sigma: float, L: float) -> float:
    """Detector gap that places a given separation at the critical distance:
    arccos(1 - L kappa / 2) / (kappa sigma^2); inverse of critical_distance."""
    a = L * kappa
    if not 0.0 < a < 4.0:
        raise ValidationError(
            f"resonant tuning exists only for 0 < L kappa < 4, got {a:.6g}"
        )
    return math.acos(1.0 - a / 2.0) / (kappa * sigma**2)
