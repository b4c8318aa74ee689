"""Parameter-space sweeps, boundary/resonance tracing, corridor sweeps, and
the three distance-from-entanglement protocols.

Grids are indexed by the dimensionless pair (a, w) = (L kappa, kappa sigma^2
Omega) with g = kappa sigma held fixed per scan; the physical configuration
behind each cell is reconstructed as kappa = g/sigma, L = a/kappa,
Omega = w/(kappa sigma^2).  Every cell records which evaluation path produced
it, and cells straddling the critical-distance curve are computed by adaptive
quadrature and flagged regardless of the requested method.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import bisect

from .core import DetectorConfig, DimensionlessPoint, Scenario, config_from_point, parse_scenario
from .entanglement import assemble, negativity, sample_measurements, to_raw
from .errors import ResonanceDivergenceError, UdwHarvestError, ValidationError
from .quadrature import (
    DEFAULT_SETTINGS,
    QuadratureSettings,
    a_shifted_fixed,
    x_shifted_fixed,
    x_shifted_residue_free,
)
from .residues import residue_contribution
from .saddle import a_saddle, criterion, critical_distance, x_saddle

SADDLE_ONLY = "saddle"
QUADRATURE_WITH_RESIDUES = "quadrature"

_CLOSED_FORM_SCENARIOS = (Scenario.PARALLEL, Scenario.DESITTER,
                          Scenario.THERMAL, Scenario.INERTIAL)


@dataclass
class ScanGrid:
    """Rectangular negativity scan with provenance per cell."""

    scenario: Scenario
    a_axis: np.ndarray
    w_axis: np.ndarray
    g: float
    sigma: float
    method: str
    negativity: np.ndarray      # (nw, na), scaled units, may hold inf
    entangled: np.ndarray       # (nw, na) bool
    log10_abs_x: np.ndarray     # (nw, na) exact magnitude of X~
    cell_method: np.ndarray     # (nw, na) short strings
    flags: np.ndarray           # (nw, na) strings, "-" when clean
    manifest: dict = field(default_factory=dict)

    def rows(self):
        """Flat (a, w, N, entangled, method, flags, log10_absX) records."""
        for j, w in enumerate(self.w_axis):
            for i, a in enumerate(self.a_axis):
                yield (float(a), float(w), float(self.negativity[j, i]),
                       int(self.entangled[j, i]), str(self.cell_method[j, i]),
                       str(self.flags[j, i]), float(self.log10_abs_x[j, i]))


def _amplitude_log10(value: complex, fallback: float | None) -> float:
    m = abs(value)
    if math.isfinite(m):
        return math.log10(m) if m > 0 else -math.inf
    return fallback if fallback is not None else math.inf


def _cell(scenario, a, w, g, sigma, method, settings, cell_tol):
    """Evaluate one grid cell; returns (N, entangled, log10|X|, method, flags)."""
    point = DimensionlessPoint(a=a, w=w, g=g)
    flags = []
    used = method
    try:
        if scenario is Scenario.INERTIAL:
            # kappa = 0 closed forms are exact; quadrature adds nothing
            cfg = DetectorConfig(kappa=0.0, sigma=sigma, omega=w / (g * sigma),
                                 L=a * sigma / g, scenario=Scenario.INERTIAL)
            a_val = a_saddle(cfg).value.real
            x_val = x_saddle(cfg).value
            used = "closed"
        elif method == SADDLE_ONLY:
            cfg = config_from_point(point, sigma=sigma, scenario=scenario)
            a_val = a_saddle(cfg).value.real
            x_val = x_saddle(cfg).value
        else:
            cfg = config_from_point(point, sigma=sigma, scenario=scenario)
            a_val = a_shifted_fixed(cfg, settings=settings)
            x_val = x_shifted_fixed(cfg, settings=settings)

        res_log10 = None
        if scenario is Scenario.ANTIPARALLEL:
            near_resonance = abs(a - 2.0 * (1.0 - math.cos(w))) < cell_tol
            if near_resonance:
                x_val = x_shifted_residue_free(cfg, settings).value
                flags.append("resonance")
                used = "quadrature"
            res = residue_contribution(point)
            if res.validity != "zero":
                flags.append(f"residue:{res.validity}")
            if np.isfinite(res.value.real) and np.isfinite(res.value.imag):
                x_val = x_val + res.value
            else:
                res_log10 = res.log10_abs
                x_val = res.value
                flags.append("overflow")

        log10_x = _amplitude_log10(x_val, res_log10)
        if math.isfinite(abs(x_val)):
            n_val = max(abs(x_val) - a_val, 0.0)
            ent = abs(x_val) > a_val
        else:
            n_val = math.inf
            ent = log10_x > math.log10(max(a_val, 1e-300))
        return n_val, ent, log10_x, used, flags
    except ResonanceDivergenceError:
        # exactly-at-resonance saddle refusal: retry by quadrature
        if method == SADDLE_ONLY and scenario is Scenario.ANTIPARALLEL:
            return _cell(scenario, a, w, g, sigma, QUADRATURE_WITH_RESIDUES,
                         settings, cell_tol)
        raise
    except UdwHarvestError as exc:
        flags.append(f"error:{type(exc).__name__}")
        return math.nan, False, math.nan, used, flags


def grid_scan(scenario, a_range=(None, 4.5), w_range=(None, math.pi - 0.01),
              n_a: int = 200, n_w: int = 200, g: float = 1e-3,
              sigma: float = 1.0, method: str = SADDLE_ONLY,
              settings: QuadratureSettings = DEFAULT_SETTINGS,
              threads: int = 1) -> ScanGrid:
    """Negativity over an (a, w) grid.

    Axis ranges default to a in (0, 4.5] and w in (0, pi - 0.01], open at
    zero: the first point sits one grid step in.
    """
    scenario = parse_scenario(scenario)
    if method not in (SADDLE_ONLY, QUADRATURE_WITH_RESIDUES):
        raise ValidationError(f"method must be '{SADDLE_ONLY}' or "
                              f"'{QUADRATURE_WITH_RESIDUES}', got {method!r}")
    a_hi = a_range[1]
    w_hi = w_range[1]
    a_lo = a_range[0] if a_range[0] is not None else a_hi / n_a
    w_lo = w_range[0] if w_range[0] is not None else w_hi / n_w
    if not 0 < w_lo <= w_hi < math.pi:
        raise ValidationError("w axis must lie inside (0, pi)")
    a_axis = np.linspace(a_lo, a_hi, n_a)
    w_axis = np.linspace(w_lo, w_hi, n_w)
    cell_tol = float(a_axis[1] - a_axis[0]) if n_a > 1 else 1e-3

    neg = np.empty((n_w, n_a))
    ent = np.zeros((n_w, n_a), dtype=bool)
    logx = np.empty((n_w, n_a))
    meth = np.empty((n_w, n_a), dtype=object)
    flg = np.empty((n_w, n_a), dtype=object)

    def do_row(j):
        w = float(w_axis[j])
        for i, a in enumerate(a_axis):
            n_val, e_val, lx, used, flags = _cell(
                scenario, float(a), w, g, sigma, method, settings, cell_tol)
            neg[j, i] = n_val
            ent[j, i] = e_val
            logx[j, i] = lx
            meth[j, i] = used
            flg[j, i] = ";".join(flags) if flags else "-"

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            list(pool.map(do_row, range(n_w)))
    else:
        for j in range(n_w):
            do_row(j)

    manifest = {
        "scenario": scenario.value, "g": g, "sigma": sigma, "method": method,
        "n_a": n_a, "n_w": n_w,
        "a_range": [float(a_axis[0]), float(a_axis[-1])],
        "w_range": [float(w_axis[0]), float(w_axis[-1])],
    }
    return ScanGrid(scenario=scenario, a_axis=a_axis, w_axis=w_axis, g=g,
                    sigma=sigma, method=method, negativity=neg, entangled=ent,
                    log10_abs_x=logx, cell_method=meth, flags=flg,
                    manifest=manifest)


def boundary_trace(scenario, w: float, xtol: float = 1e-12) -> float:
    """Root of the closed criterion margin in a at fixed w, by bisection."""
    scenario = parse_scenario(scenario)
    if scenario not in (Scenario.PARALLEL, Scenario.DESITTER, Scenario.THERMAL):
        raise ValidationError(f"no closed boundary for scenario {scenario.value}")

    def margin(a):
        return criterion(DimensionlessPoint(a=a, w=w, g=1e-3), scenario).margin

    lo, hi = 1e-9, 10.0
    if margin(lo) <= 0:
        raise ValidationError(f"criterion margin not positive at a -> 0 for w = {w}")
    return float(bisect(margin, lo, hi, xtol=xtol))


def resonance_locus(w_values, kappa: float | None = None,
                    sigma: float = 1.0) -> np.ndarray:
    """The critical-distance curve a_crit(w) = 2 (1 - cos w); columns
    (w, a_crit) plus L_crit when kappa is given."""
    w_values = np.asarray(w_values, dtype=float)
    a_crit = 2.0 * (1.0 - np.cos(w_values))
    if kappa is None:
        return np.column_stack([w_values, a_crit])
    return np.column_stack([w_values, a_crit, a_crit / kappa])


@dataclass
class CorridorSweep:
    """Re X~ against the distance offset from the critical separation."""

    kappa: float
    sigma: float
    omega: float
    L_crit: float
    deltaL_axis: np.ndarray
    re_x: np.ndarray
    im_x: np.ndarray
    sign_change_interval: tuple[float, float] | None

    def rows(self):
        for dl, re, im in zip(self.deltaL_axis, self.re_x, self.im_x):
            yield (float(dl), float(re), float(im))


def corridor_sweep(kappa: float, sigma: float, omega: float,
                   deltaL_range: tuple[float, float] | None = None,
                   n_points: int = 41,
                   settings: QuadratureSettings = DEFAULT_SETTINGS) -> CorridorSweep:
    """Residue-free Re X~ versus deltaL = L - L_crit.

    Restricted to the corridor window 1.2 < w < pi/2 (and the swept a inside
    (0, 2)) where the residue terms are negligible and the sign flip of the
    coherence near the critical distance is the whole story.
    """
    w = kappa * sigma**2 * omega
    if not 1.2 < w < math.pi / 2:
        raise ValidationError(
            f"corridor protocol expects 1.2 < kappa sigma^2 omega < pi/2, got {w:.4g}"
        )
    L_crit = critical_distance(kappa, sigma, omega)
    if deltaL_range is None:
        deltaL_range = (-0.5 * L_crit, 0.5 * L_crit)
    lo, hi = deltaL_range
    if not lo < 0 < hi:
        raise ValidationError("deltaL range must bracket 0")
    # geometric ladder on both sides: the sign-flip corridor is orders of
    # magnitude narrower than the far field, so uniform spacing misses it
    decades = 4.0
    half = n_points // 2
    pos = np.geomspace(hi * 10.0 ** (-decades), hi, max(half, 4))
    neg = np.geomspace(-lo * 10.0 ** (-decades), -lo, max(n_points - half, 4))
    axis = np.concatenate([-neg[::-1], pos])
    # keep a strictly inside (0, 2) and never sit exactly on the divergence
    keep = (L_crit + axis) * kappa < 2.0
    keep &= (L_crit + axis) > 0
    keep &= np.abs(axis) > 1e-9 * L_crit
    axis = axis[keep]
    re_x = np.empty(axis.shape)
    im_x = np.empty(axis.shape)
    for k, dl in enumerate(axis):
        cfg = DetectorConfig(kappa=kappa, sigma=sigma, omega=omega,
                             L=L_crit + float(dl), scenario=Scenario.ANTIPARALLEL)
        val = x_shifted_residue_free(cfg, settings).value
        re_x[k] = val.real
        im_x[k] = val.imag
    interval = None
    for k in range(len(axis) - 1):
        if re_x[k] * re_x[k + 1] < 0:
            interval = (float(axis[k]), float(axis[k + 1]))
            break
    return CorridorSweep(kappa=kappa, sigma=sigma, omega=omega, L_crit=L_crit,
                         deltaL_axis=axis, re_x=re_x, im_x=im_x,
                         sign_change_interval=interval)


# ---------------------------------------------------------------------------
# rangefinding protocols


@dataclass(frozen=True)
class CorridorVerdict:
    index: int
    deltaL: float
    estimate_4_re_x: float
    standard_error: float
    at_critical_distance: bool  # positive at >= 3 standard errors
    true_re_x: float

    @property
    def estimate_positive(self) -> bool:
        return self.estimate_4_re_x > 0.0


def rangefind_corridor(ensemble_cfgs, n_shots: int, seed: int,
                       normalization: str = "coupling",
                       settings: QuadratureSettings = DEFAULT_SETTINGS) -> list[CorridorVerdict]:
    """Coherence-corridor protocol: estimate 4 Re X from sampled sigma_y x
    sigma_y and sigma_x x sigma_x statistics; a positive estimate places the
    pair at the critical separation up to the corridor width.

    normalization: the universal Gaussian prefactor e^{-(sigma Omega)^2} is
    common to every ensemble member and carries no distance information, yet
    it pushes the physical statistics far beyond any shot budget in the
    corridor window; "coupling" (default) samples the distance-dependent
    correlation structure with only the eta0^2 coupling factor applied, while
    "physical" insists on the fully raw amplitudes (and underflows for
    sigma*Omega beyond ~27, as it must).

    A pair is declared at the critical separation only when the estimate is
    positive at three standard errors; away from the corridor the coherence
    is orders of magnitude below shot noise, so a bare sign test would be a
    coin flip there.
    """
    if normalization not in ("coupling", "physical"):
        raise ValidationError("normalization must be 'coupling' or 'physical'")
    out = []
    for idx, cfg in enumerate(ensemble_cfgs):
        w = cfg.w
        if not 1.2 < w < math.pi / 2:
            raise ValidationError(
                f"ensemble member {idx}: corridor window needs 1.2 < w < pi/2, got {w:.4g}"
            )
        state = assemble(cfg, method="quadrature", settings=settings)
        if normalization == "physical":
            raw = to_raw(state, cfg.eta0, cfg.sigma_omega)
        else:
            raw = to_raw(state, cfg.eta0, 0.0)
        rec_yy = sample_measurements(raw, "yy", n_shots, seed ^ (2 * idx))
        rec_xx = sample_measurements(raw, "xx", n_shots, seed ^ (2 * idx + 1))
        est = rec_yy.empirical_correlator - rec_xx.empirical_correlator
        se = math.hypot(rec_yy.standard_error, rec_xx.standard_error)
        L_crit = critical_distance(cfg.kappa, cfg.sigma, cfg.omega)
        out.append(CorridorVerdict(
            index=idx, deltaL=cfg.L - L_crit, estimate_4_re_x=est,
            standard_error=se, at_critical_distance=est > 3.0 * se,
            true_re_x=raw.X.real))
    return out


def rangefind_sudden_death(kappa: float, sigma: float, omega: float,
                           delta: float,
                           settings: QuadratureSettings = DEFAULT_SETTINGS) -> dict:
    """Entanglement as a threshold trigger for the separation L = 2/kappa.

    Evaluates the negativity just above and below the wedge-apex distance; the
    trigger fires when the pair (above, below) = (entangled, separable)."""
    w = kappa * sigma**2 * omega
    if w < 2.4:
        raise ValidationError(
            f"sudden-death trigger needs kappa sigma^2 omega >= 2.4 "
            f"(the zero-negativity strip), got {w:.4g}"
        )
    if not 0 < delta < 2.0 / kappa:
        raise ValidationError("delta must lie in (0, 2/kappa)")
    out = {}
    for tag, L in (("above", 2.0 / kappa + delta), ("below", 2.0 / kappa - delta)):
        cfg = DetectorConfig(kappa=kappa, sigma=sigma, omega=omega, L=L,
                             scenario=Scenario.ANTIPARALLEL)
        state = assemble(cfg, method="saddle", settings=settings)
        n_val = negativity(state)
        out[tag] = bool(n_val > 0)
        out[f"N_{tag}"] = n_val
        out[f"log10_absX_{tag}"] = state.x_magnitude_log10
    out["triggered"] = out["above"] and not out["below"]
    return out


def rangefind_gradient(reference_cfg: DetectorConfig, measured_N: float,
                       rel_step: float = 1e-3,
                       settings: QuadratureSettings = DEFAULT_SETTINGS) -> dict:
    """Distance-change readout from the negativity slope.

    Linearises N(L) around the reference separation: deltaL ~ (measured_N -
    N_ref) / (dN/dL), with the derivative by central differences at relative
    step 1e-3.  Flags ill-conditioning when the slope is too shallow to
    invert meaningfully."""
    def n_at(L):
        cfg = reference_cfg.replace(L=L)
        state = assemble(cfg, method="quadrature", settings=settings)
        val = negativity(state)
        if not math.isfinite(val):
            raise ValidationError(
                "negativity overflows the scaled convention here; the gradient "
                "protocol needs a regime with representable values"
            )
        return val

    L0 = reference_cfg.L
    h = rel_step * L0
    n_ref = n_at(L0)
    slope = (n_at(L0 + h) - n_at(L0 - h)) / (2.0 * h)
    scale = max(n_ref, abs(measured_N), 1e-300)
    ill = abs(slope) * L0 < 10.0 * scale * rel_step
    est = (measured_N - n_ref) / slope if slope != 0 else math.nan
    return {
        "deltaL_estimate": est,
        "dN_dL": slope,
        "N_reference": n_ref,
        "ill_conditioned": bool(ill),
    }
