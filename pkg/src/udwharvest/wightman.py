"""Two-point (Wightman) kernels evaluated at complex arguments.

All pair kernels are expressed in the sum/difference variables
x = tau + tau', y = tau - tau' and are meromorphic in both, so they can be
evaluated on shifted contours.  The i*epsilon regulator is always an explicit
argument; epsilon = 0 is legitimate only on contours the caller knows to be
pole free.

Every kernel guards against evaluation on top of a pole and raises
SingularKernelError instead of returning a huge float; near-pole work belongs
to the residue machinery, not to direct evaluation.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import DetectorConfig, Scenario, SpacetimeEvent
from .errors import SingularKernelError, ValidationError


@dataclass(frozen=True)
class KernelArgs:
    """Bundle of kernel arguments: sum variable x, difference variable y
    (both possibly contour shifted), and the regulator epsilon >= 0."""

    x: complex
    y: complex
    epsilon: float = 0.0

    def __post_init__(self):
        if self.epsilon < 0:
            raise ValidationError(f"epsilon must be >= 0, got {self.epsilon}")

FOUR_PI_SQ = 4.0 * np.pi**2
SIXTEEN_PI_SQ = 16.0 * np.pi**2

# Relative pole-proximity threshold on the dimensionless bracket factors.
_POLE_RTOL = 1e-12


def _guard(denom, scale, what: str):
    """Raise if any denominator entry sits within _POLE_RTOL of zero."""
    bad = np.abs(denom) < _POLE_RTOL * scale
    if np.any(bad):
        raise SingularKernelError(f"{what} evaluated on (or too near) a pole")
    return denom


def d_plus_minkowski(e1: SpacetimeEvent, e2: SpacetimeEvent, epsilon: float) -> complex:
    """Massless vacuum two-point function between two events.

    -1 / (4 pi^2 [(t - t' - i eps)^2 - |x - x'|^2]).
    """
    dt = e1.t - e2.t
    dx = e1.x - e2.x
    denom = (dt - 1j * epsilon) ** 2 - dx**2
    scale = max(dt * dt, dx * dx, epsilon * epsilon, 1e-300)
    _guard(denom, scale, "d_plus_minkowski")
    return -1.0 / (FOUR_PI_SQ * denom)


def d_parallel(x, y, kappa: float, a: float, epsilon: float = 0.0):
    """Kernel for two detectors accelerating in the same direction.

    Arguments x, y may be complex (contour shifted); a = L*kappa.
    """
    x = np.asarray(x, dtype=complex)
    y = np.asarray(y, dtype=complex)
    s = np.sinh(y * (kappa / 2.0))
    e_m = np.exp(-x * (kappa / 2.0))
    e_p = np.exp(x * (kappa / 2.0))
    b1 = a / 2.0 + 1j * epsilon - e_m * s
    b2 = a / 2.0 - 1j * epsilon + e_p * s
    _guard(b1, a / 2.0 + np.abs(e_m * s) + 1e-300, "d_parallel")
    _guard(b2, a / 2.0 + np.abs(e_p * s) + 1e-300, "d_parallel")
    out = (kappa**2 / SIXTEEN_PI_SQ) / (b1 * b2)
    return out[()] if out.ndim == 0 else out


def d_antiparallel(x, y, kappa: float, a: float, epsilon: float = 0.0):
    """Kernel for two detectors accelerating in opposite directions.

    The brackets read e^{-/+ y kappa/2} (a/2 - 1) -/+ i eps + cosh(x kappa/2);
    with b = 1 - a/2 this is cosh(x kappa/2) - b e^{-/+ y kappa/2} -/+ i eps.
    """
    x = np.asarray(x, dtype=complex)
    y = np.asarray(y, dtype=complex)
    c = np.cosh(x * (kappa / 2.0))
    m = a / 2.0 - 1.0  # = -b
    e_m = np.exp(-y * (kappa / 2.0))
    e_p = np.exp(y * (kappa / 2.0))
    b1 = e_m * m - 1j * epsilon + c
    b2 = e_p * m + 1j * epsilon + c
    _guard(b1, np.abs(c) + np.abs(e_m * m) + 1e-300, "d_antiparallel")
    _guard(b2, np.abs(c) + np.abs(e_p * m) + 1e-300, "d_antiparallel")
    out = (kappa**2 / SIXTEEN_PI_SQ) / (b1 * b2)
    return out[()] if out.ndim == 0 else out


def d_desitter(x, y, kappa: float, a: float, epsilon: float = 0.0):
    """Kernel for comoving detectors in an exponentially expanding universe
    (conformally coupled field), expansion rate kappa, comoving distance a/kappa."""
    x = np.asarray(x, dtype=complex)
    y = np.asarray(y, dtype=complex)
    denom = np.exp(x * kappa) * (a / 2.0) ** 2 - np.sinh((y - 1j * epsilon) * (kappa / 2.0)) ** 2
    scale = np.abs(np.exp(x * kappa)) * (a / 2.0) ** 2 + np.abs(
        np.sinh((y - 1j * epsilon) * (kappa / 2.0))
    ) ** 2 + 1e-300
    _guard(denom, scale, "d_desitter")
    out = (kappa**2 / SIXTEEN_PI_SQ) / denom
    return out[()] if out.ndim == 0 else out


def d_thermal(y, kappa: float, L: float, epsilon: float = 0.0):
    """Kernel for two static detectors at proper distance L in a thermal bath
    of temperature kappa / 2 pi.  Independent of the sum variable x.

    At kappa = 0 the closed limit -1 / (4 pi^2 [(y - i eps)^2 - L^2]) is used.
    """
    y = np.asarray(y, dtype=complex)
    if kappa == 0.0:
        denom = (y - 1j * epsilon) ** 2 - L**2
        scale = np.abs(y) ** 2 + L**2 + epsilon**2
        _guard(denom, scale, "d_thermal(kappa=0)")
        out = -1.0 / (FOUR_PI_SQ * denom)
        return out[()] if out.ndim == 0 else out
    u1 = (kappa / 2.0) * (L - y + 1j * epsilon)
    u2 = (kappa / 2.0) * (L + y - 1j * epsilon)
    s1 = np.sinh(u1)
    s2 = np.sinh(u2)
    # |sinh(u)| measures the distance to the poles at u = i pi n
    _guard(s1, 1.0, "d_thermal")
    _guard(s2, 1.0, "d_thermal")
    out = (kappa / (SIXTEEN_PI_SQ * L)) * (np.cosh(u1) / s1 + np.cosh(u2) / s2)
    return out[()] if out.ndim == 0 else out


def d_detect(y, kappa: float, epsilon: float = 0.0):
    """Single-detector response kernel: the two-point function along one
    uniformly accelerated worldline, -kappa^2/(16 pi^2) csch^2[kappa (y - i eps)/2].

    Poles at y = i eps + 2 pi i n / kappa.  At kappa = 0 the inertial limit
    -1 / (4 pi^2 (y - i eps)^2) is used.
    """
    y = np.asarray(y, dtype=complex)
    if kappa == 0.0:
        denom = (y - 1j * epsilon) ** 2
        _guard(denom, np.abs(y) ** 2 + epsilon**2 + 1e-300, "d_detect(kappa=0)")
        out = -1.0 / (FOUR_PI_SQ * denom)
        return out[()] if out.ndim == 0 else out
    s = np.sinh((y - 1j * epsilon) * (kappa / 2.0))
    _guard(s, 1.0, "d_detect")
    out = -(kappa**2 / SIXTEEN_PI_SQ) / (s * s)
    return out[()] if out.ndim == 0 else out


def pair_kernel(cfg: DetectorConfig):
    """Return f(x, y, epsilon) evaluating the cross-detector kernel for cfg's scenario."""
    k, L = cfg.kappa, cfg.L
    a = k * L
    scen = cfg.scenario
    if scen is Scenario.PARALLEL:
        return lambda x, y, epsilon=0.0: d_parallel(x, y, k, a, epsilon)
    if scen is Scenario.ANTIPARALLEL:
        return lambda x, y, epsilon=0.0: d_antiparallel(x, y, k, a, epsilon)
    if scen is Scenario.DESITTER:
        return lambda x, y, epsilon=0.0: d_desitter(x, y, k, a, epsilon)
    if scen is Scenario.THERMAL:
        return lambda x, y, epsilon=0.0: d_thermal(y, k, L, epsilon)
    if scen is Scenario.INERTIAL:
        return lambda x, y, epsilon=0.0: d_thermal(y, 0.0, L, epsilon)
    raise ValidationError(f"no pair kernel for scenario {scen}")
