"""Two-detector state assembly, negativity, and measurement statistics.

To second order in the coupling the joint detector state in the energy
eigenbasis (|ee>, |eg>, |ge>, |gg>) is

    rho = [[C,   0,  0, -X*],
           [0,   A, B*,   0],
           [0,   B,  A,   0],
           [-X,  0,  0, 1 - 2A - C]]

with A the single-excitation probability and X the exchange coherence.  The
off-diagonal B and the double-excitation C are higher order and carry no
second-order formula; they default to zero but stay settable so robustness
against them can be tested.  The partial transpose moves -X into the middle
block, whose eigenvalues A -/+ |X| decide entanglement: negativity
max(|X| - A, 0) regardless of B and C while the corner block stays positive.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace

import numpy as np

from .core import DetectorConfig, Scenario
from .errors import ValidationError
from .quadrature import (
    DEFAULT_SETTINGS,
    QuadratureSettings,
    ScaledAmplitude,
    a_shifted,
    x_shifted_residue_free,
)
from .residues import residue_contribution
from .saddle import a_saddle, x_saddle

RAW = "raw"
SCALED = "scaled"

# scaled -> raw conversion underflows double precision near sigma*Omega ~ 27;
# refuse silently meaningless conversions beyond this
_UNDERFLOW_SIGMA_OMEGA = 30.0


@dataclass
class TwoDetectorState:
    """Second-order two-detector density matrix parameters.

    scale records whether A and X are raw probabilities/amplitudes or carry
    the e^{(sigma Omega)^2}/eta0^2 rescaling.  x_log10 preserves the exact
    magnitude of X when the scaled value overflows floating point.
    """

    A: float
    X: complex
    B: complex = 0j
    C: float = 0.0
    scale: str = SCALED
    x_log10: float | None = None
    residue_free: complex | None = None
    residue: complex | None = None
    diagnostics: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.A < 0 or self.C < 0:
            raise ValidationError("probabilities A and C must be >= 0")
        if self.scale not in (RAW, SCALED):
            raise ValidationError(f"scale must be '{RAW}' or '{SCALED}'")
        if self.scale == RAW and not 0.0 <= 1.0 - 2.0 * self.A - self.C <= 1.0:
            raise ValidationError("ground-state population 1 - 2A - C outside [0, 1]")

    @property
    def x_magnitude_log10(self) -> float:
        if self.x_log10 is not None:
            return self.x_log10
        m = abs(self.X)
        return math.log10(m) if m > 0 else -math.inf

    @property
    def corner_block_psd(self) -> bool:
        return self.C * (1.0 - 2.0 * self.A - self.C) >= abs(self.B) ** 2 - 1e-15

    def density_matrix(self) -> np.ndarray:
        """The explicit 4x4 matrix (raw scale only)."""
        if self.scale != RAW:
            raise ValidationError("density matrix requires raw-scale amplitudes")
        gg = 1.0 - 2.0 * self.A - self.C
        rho = np.array([
            [self.C, 0, 0, -np.conj(self.X)],
            [0, self.A, np.conj(self.B), 0],
            [0, self.B, self.A, 0],
            [-self.X, 0, 0, gg],
        ], dtype=complex)
        return rho


def to_raw(state: TwoDetectorState, eta0: float, sigma_omega: float,
           force: bool = False) -> TwoDetectorState:
    """Undo the scaled convention: multiply by eta0^2 e^{-(sigma Omega)^2}."""
    if state.scale == RAW:
        return state
    if sigma_omega > _UNDERFLOW_SIGMA_OMEGA and not force:
        raise ValidationError(
            f"sigma*Omega = {sigma_omega:.3g} > {_UNDERFLOW_SIGMA_OMEGA:g}: raw "
            "amplitudes underflow double precision (pass force=True to insist)"
        )
    f = eta0**2 * math.exp(-(sigma_omega**2))  # may underflow to 0 (documented)
    log10_f = 2.0 * math.log10(eta0) - sigma_omega**2 / math.log(10.0)
    x_log10 = (state.x_magnitude_log10 + log10_f
               if math.isfinite(state.x_magnitude_log10) else state.x_magnitude_log10)
    return replace(state, A=state.A * f, X=state.X * f, scale=RAW,
                   x_log10=x_log10,
                   residue_free=None, residue=None)


def assemble(cfg: DetectorConfig, method: str = "quadrature",
             settings: QuadratureSettings = DEFAULT_SETTINGS,
             residue_method: str = "auto") -> TwoDetectorState:
    """Compute A~ and X~ (residue-free part plus, for anti-parallel
    worldlines, the residue term) and package them as a scaled state."""
    if method == "saddle":
        a_amp = a_saddle(cfg)
        x_amp = x_saddle(cfg)
    elif method == "quadrature":
        a_amp = a_shifted(cfg, settings)
        x_amp = x_shifted_residue_free(cfg, settings)
    else:
        raise ValidationError(f"method must be 'saddle' or 'quadrature', got {method!r}")

    rf = complex(x_amp.value)
    res_value = 0j
    res_log10 = None
    diagnostics = {"a_method": a_amp.diagnostics.get("method"),
                   "x_method": x_amp.diagnostics.get("method")}
    if cfg.scenario is Scenario.ANTIPARALLEL:
        res = residue_contribution(cfg, method=residue_method)
        res_value = res.value
        diagnostics["residue_path"] = res.validity
        if res.saddle is not None:
            diagnostics["residue_saddle"] = str(res.saddle)
        if not np.isfinite(res_value.real) or not np.isfinite(res_value.imag):
            res_log10 = res.log10_abs

    if res_log10 is None:
        x_total = rf + res_value
        x_log10 = None
    else:
        x_total = res_value  # inf-carrying; rf is negligible at that magnitude
        x_log10 = res_log10
    return TwoDetectorState(A=float(a_amp.value.real), X=x_total,
                            scale=SCALED, x_log10=x_log10,
                            residue_free=rf, residue=res_value,
                            diagnostics=diagnostics)


def negativity(state: TwoDetectorState) -> float:
    """max(|X| - A, 0) in the state's own scale (inf when X overflowed)."""
    if state.x_log10 is not None and not math.isfinite(abs(state.X)):
        return math.inf
    return max(abs(state.X) - state.A, 0.0)


def pt_oracle(state: TwoDetectorState) -> float:
    """Brute-force negativity: build the 4x4 matrix, partially transpose the
    second qubit, and sum the magnitudes of negative eigenvalues."""
    rho = state.density_matrix()
    if not state.corner_block_psd:
        raise ValidationError("corner block not positive semidefinite "
                              "(C (1-2A-C) < |B|^2)")
    pt = rho.reshape(2, 2, 2, 2).transpose(0, 3, 2, 1).reshape(4, 4)
    eigs = np.linalg.eigvalsh(pt)
    return float(-np.sum(eigs[eigs < 0.0]))


def correlators(state: TwoDetectorState) -> tuple[float, float]:
    """(<sigma_x sigma_x>, <sigma_y sigma_y>) = (-2 Re X + 2 Re B,
    2 Re X + 2 Re B); their difference reads out 4 Re X."""
    re_x, re_b = state.X.real, state.B.real
    return (-2.0 * re_x + 2.0 * re_b, 2.0 * re_x + 2.0 * re_b)


@dataclass(frozen=True)
class MeasurementRecord:
    """Shots of a joint +-1-valued measurement in one product Pauli basis."""

    basis: str  # "xx" or "yy"
    outcomes: np.ndarray  # shape (n, 2), entries +-1
    seed: int

    @property
    def empirical_correlator(self) -> float:
        return float(np.mean(self.outcomes[:, 0] * self.outcomes[:, 1]))

    @property
    def standard_error(self) -> float:
        n = self.outcomes.shape[0]
        prods = self.outcomes[:, 0] * self.outcomes[:, 1]
        return float(np.std(prods) / math.sqrt(n)) if n > 1 else math.inf


def sample_measurements(state: TwoDetectorState, basis: str, n_shots: int,
                        seed: int) -> MeasurementRecord:
    """Draw i.i.d. outcome pairs from the Born distribution of the state in
    the sigma_x x sigma_x or sigma_y x sigma_y basis.

    The state's sparsity kills all single-qubit marginals, so the joint
    distribution is P(s1, s2) = (1 + s1 s2 c)/4 with c the basis correlator.
    """
    if state.scale != RAW:
        raise ValidationError(
            "sampling needs raw-scale probabilities; convert with to_raw first"
        )
    basis = basis.lower()
    xx, yy = correlators(state)
    if basis == "xx":
        c = xx
    elif basis == "yy":
        c = yy
    else:
        raise ValidationError(f"basis must be 'xx' or 'yy', got {basis!r}")
    if abs(c) > 1.0 + 1e-12:
        raise ValidationError(f"degenerate correlator {c:.3g} outside [-1, 1]")
    c = min(1.0, max(-1.0, c))
    probs = np.array([(1 + c) / 4, (1 - c) / 4, (1 - c) / 4, (1 + c) / 4])
    rng = np.random.default_rng(seed)
    counts = rng.multinomial(n_shots, probs)
    pairs = np.array([[1, 1], [1, -1], [-1, 1], [-1, -1]], dtype=np.int8)
    outcomes = np.repeat(pairs, counts, axis=0)
    rng.shuffle(outcomes, axis=0)
    return MeasurementRecord(basis=basis, outcomes=outcomes, seed=seed)
