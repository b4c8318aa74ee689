"""Cross-validation suites: every fast path checked against an independent
slow path at fixed parameter sets, with pass/fail gates.

Three suites:
  saddle   -- closed stationary-phase forms vs adaptive shifted quadrature
              in the asymptotic regime (g <= 0.1, w <= 1), gate 5%;
  shift    -- shifted-contour integrals vs the direct regulated oscillatory
              integrals where no poles are crossed;
  assembly -- anti-parallel residue bookkeeping: residue-free + residue vs
              the direct oracle, spanning both contour cases, gate 5% on |X~|.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .core import DetectorConfig, DimensionlessPoint, Scenario, config_from_point
from .quadrature import (
    DEFAULT_SETTINGS,
    a_direct_oracle,
    a_shifted,
    x_direct_oracle,
    x_shifted_residue_free,
)
from .residues import residue_contribution
from .saddle import a_saddle, x_saddle


@dataclass(frozen=True)
class OracleRow:
    suite: str
    label: str
    reference: float
    candidate: float
    rel_error: float
    tolerance: float

    @property
    def passed(self) -> bool:
        return self.rel_error <= self.tolerance


def _row(suite, label, reference, candidate, tol) -> OracleRow:
    rel = abs(candidate - reference) / max(abs(reference), 1e-300)
    return OracleRow(suite=suite, label=label, reference=float(reference),
                     candidate=float(candidate), rel_error=float(rel),
                     tolerance=tol)


SADDLE_POINTS = [(1.0, 1.0, 0.1), (0.5, 0.6, 0.05), (2.5, 0.9, 0.1), (1.5, 0.3, 0.02)]
SADDLE_SCENARIOS = (Scenario.PARALLEL, Scenario.DESITTER, Scenario.THERMAL)


def saddle_suite(settings=DEFAULT_SETTINGS):
    rows = []
    for (a, w, g) in SADDLE_POINTS:
        pt = DimensionlessPoint(a=a, w=w, g=g)
        for scen in SADDLE_SCENARIOS:
            cfg = config_from_point(pt, scenario=scen)
            rows.append(_row("saddle", f"A a={a} w={w} g={g} {scen.value}",
                             a_shifted(cfg, settings).value.real,
                             a_saddle(cfg).value.real, 0.05))
            rows.append(_row("saddle", f"|X| a={a} w={w} g={g} {scen.value}",
                             abs(x_shifted_residue_free(cfg, settings).value),
                             abs(x_saddle(cfg).value), 0.05))
    return rows


SHIFT_POINTS = [
    (Scenario.PARALLEL, 0.1, 0.5, 1.0, 2.0, 0.02),
    (Scenario.ANTIPARALLEL, 0.8, 1.0, 1.25, 3.75, 1e-3),   # b < 0, w < pi/2
    (Scenario.ANTIPARALLEL, 0.5, 1.0, 1.8, 5.2, 1e-3),     # b = -0.3, w = 0.9
    (Scenario.DESITTER, 0.3, 1.0, 1.5, 3.0, 1e-3),
    (Scenario.THERMAL, 0.3, 1.0, 1.5, 3.0, 1e-3),
    (Scenario.INERTIAL, 0.0, 1.0, 1.5, 3.0, 1e-3),
]


def shift_suite(settings=DEFAULT_SETTINGS):
    rows = []
    for scen, kappa, sigma, omega, L, tol in SHIFT_POINTS:
        cfg = DetectorConfig(kappa=kappa, sigma=sigma, omega=omega, L=L,
                             scenario=scen)
        rows.append(_row("shift", f"|X| {scen.value} k={kappa} s={sigma} O={omega} L={L}",
                         abs(x_direct_oracle(cfg, settings).value),
                         abs(x_shifted_residue_free(cfg, settings).value), tol))
    cfg = DetectorConfig(kappa=0.1, sigma=1.0, omega=0.5, L=5.0,
                         scenario=Scenario.PARALLEL)
    rows.append(_row("shift", "A parallel k=0.1 O=0.5",
                     a_direct_oracle(cfg, settings).value.real,
                     a_shifted(cfg, settings).value.real, 0.01))
    return rows


# ten anti-parallel points spanning both residue-contour cases, all with
# sigma*Omega <= 2 so the direct oracle stays trustworthy
ASSEMBLY_POINTS = [
    # (a, w, g): b < 0 (disjoint wedges)
    (2.6, 2.0, 1.0),    # merge pole on the contour
    (2.4, 1.8, 0.9),    # merge pole on the contour
    (3.2, 1.7, 0.9),    # pole above the cut: quiet tail
    (2.8, 2.2, 1.2),    # deeper in the active region
    (2.2, 1.6, 1.0),    # just past the case boundary
    # b > 0 (overlapping wedges)
    (1.0, 2.0, 1.0),    # merge pole on the vertical segment
    (1.9, 1.2, 0.8),    # clean contour, threshold-dominated
    (1.5, 1.0, 0.8),    # corridor-like, residue subdominant
    (0.8, 1.6, 0.9),    # strong causal residue
    (1.2, 2.4, 1.3),    # large w, overlapping wedges
]


def assembly_suite(settings=DEFAULT_SETTINGS):
    rows = []
    for (a, w, g) in ASSEMBLY_POINTS:
        pt = DimensionlessPoint(a=a, w=w, g=g)
        cfg = config_from_point(pt, scenario=Scenario.ANTIPARALLEL)
        rf = x_shifted_residue_free(cfg, settings).value
        res = residue_contribution(pt)
        total = rf + res.value
        direct = x_direct_oracle(cfg, settings).value
        case = "b<0" if pt.b < 0 else "b>0"
        rows.append(_row("assembly",
                         f"|X| a={a} w={w} g={g} ({case}, {res.validity})",
                         abs(direct), abs(total), 0.05))
    return rows


SUITES = {
    "saddle": saddle_suite,
    "shift": shift_suite,
    "assembly": assembly_suite,
}


def run_suites(names, settings=DEFAULT_SETTINGS):
    rows = []
    for name in names:
        rows.extend(SUITES[name](settings))
    return rows
