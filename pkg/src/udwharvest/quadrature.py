"""Numerical integration engines.

Two routes to the same physics:

* shifted-contour integrals (`a_shifted`, `x_shifted_residue_free`): the
  oscillatory phase is absorbed by completing the square, leaving a real
  Gaussian against a kernel evaluated off the real axis.  Fast and accurate,
  but for anti-parallel worldlines the shift can cross kernel poles, whose
  contribution lives in the `residues` module.

* direct oscillatory integrals (`a_direct_oracle`, `x_direct_oracle`): brute
  evaluation of the defining integrals at finite regulator epsilon, Richardson
  extrapolated to epsilon -> 0.  No contour games, hence the ground truth, but
  only trustworthy at small sigma*Omega where the e^{(sigma Omega)^2} rescale
  does not amplify quadrature noise.

All results use the scaled convention A~ = e^{(sigma Omega)^2} A / eta0^2.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass, field, replace

import numpy as np

from .core import DetectorConfig, Scenario
from .errors import ConvergenceError, OracleUnreliableError, ValidationError
from .wightman import d_antiparallel, d_desitter, d_detect, d_parallel, d_thermal

# ---------------------------------------------------------------------------
# result containers


@dataclass
class ScaledAmplitude:
    """A scaled amplitude e^{(sigma Omega)^2} (A or X) / eta0^2.

    residue_free / residue carry the contour-split breakdown when one exists;
    value = residue_free + residue then.  residue_log10 preserves the exact
    magnitude of the residue part when it exceeds floating-point range (value
    becomes inf but the logarithm stays meaningful for comparisons).
    """

    value: complex
    kind: str  # "A" or "X"
    residue_free: complex | None = None
    residue: complex | None = None
    residue_log10: float | None = None
    diagnostics: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.kind == "A":
            v = complex(self.value)
            if abs(v.imag) > 1e-8 * abs(v.real) + 1e-300:
                raise ConvergenceError(
                    f"excitation probability came out non-real: {v!r}"
                )
            self.value = complex(v.real, 0.0)

    @property
    def log10_abs(self) -> float:
        """log10 |value|, exact even when value overflowed to inf."""
        v = complex(self.value)
        if np.isfinite(v.real) and np.isfinite(v.imag):
            m = abs(v)
            return math.log10(m) if m > 0 else -math.inf
        if self.residue_log10 is not None:
            return self.residue_log10
        return math.inf


@dataclass(frozen=True)
class QuadratureSettings:
    """Tolerances and truncation for all integrations.

    truncation_radius is in units of sqrt(2)*sigma; the default 12 leaves a
    Gaussian tail below e^{-72}.  epsilon_ladder, when None, resolves to
    [1e-2, 1e-3, 1e-4] * min(sigma, 1/kappa) per configuration.
    """

    abs_tol: float = 1e-12
    rel_tol: float = 1e-9
    truncation_radius: float = 12.0
    max_subdivisions: int = 400
    epsilon_ladder: tuple[float, ...] | None = None

    def __post_init__(self):
        if self.abs_tol <= 0 or self.rel_tol <= 0:
            raise ValidationError("tolerances must be positive")
        if self.epsilon_ladder is not None:
            lad = tuple(self.epsilon_ladder)
            if any(e2 >= e1 for e1, e2 in zip(lad, lad[1:])) or any(e <= 0 for e in lad):
                raise ValidationError("epsilon ladder must be positive and strictly decreasing")

    def radius(self, sigma: float) -> float:
        return self.truncation_radius * math.sqrt(2.0) * sigma

    def ladder_for(self, cfg: DetectorConfig) -> tuple[float, ...]:
        if self.epsilon_ladder is not None:
            return tuple(self.epsilon_ladder)
        scale = cfg.sigma if cfg.kappa == 0 else min(cfg.sigma, 1.0 / cfg.kappa)
        return tuple(f * scale for f in (1e-2, 1e-3, 1e-4))


DEFAULT_SETTINGS = QuadratureSettings()


# ---------------------------------------------------------------------------
# deterministic adaptive Gauss-Kronrod integration (vectorised integrands)

# 15-point Kronrod nodes on [-1, 1] with the embedded 7-point Gauss rule.
_XGK = np.array([
    0.991455371120813, 0.949107912342759, 0.864864423359769,
    0.741531185599394, 0.586087235467691, 0.405845151377397,
    0.207784955007898, 0.0,
])
_WGK = np.array([
    0.022935322010529, 0.063092092629979, 0.104790010322250,
    0.140653259715525, 0.169004726639267, 0.190350578064785,
    0.204432940075298, 0.209482141084728,
])
_WG = np.array([
    0.129484966168870, 0.279705391489277, 0.381830050505119, 0.417959183673469,
])

_KRONROD_X = np.concatenate([-_XGK[:-1], _XGK[::-1]])  # 15 ascending nodes
_KRONROD_W = np.concatenate([_WGK[:-1], _WGK[::-1]])
_GAUSS_W = np.zeros(15)
_GAUSS_W[1:-1:2] = np.concatenate([_WG[:-1], _WG[::-1]])


def _panel(f, a, b):
    half = 0.5 * (b - a)
    mid = 0.5 * (a + b)
    fx = np.asarray(f(mid + half * _KRONROD_X), dtype=complex)
    coarse = half * np.sum(_GAUSS_W * fx)
    fine = half * np.sum(_KRONROD_W * fx)
    return fine, abs(fine - coarse)


def adaptive_quad(f, a, b, *, points=(), abs_tol=1e-12, rel_tol=1e-9,
                  max_subdivisions=400, what="integral"):
    """Adaptive complex-valued quadrature with deterministic subdivision.

    f must accept a numpy array of abscissae and return complex values.
    `points` lists interior locations (splits) where the integrand is rough.
    """
    cuts = sorted({float(a), float(b), *(float(p) for p in points if a < p < b)})
    heap = []
    total = 0j
    err = 0.0
    n = 0
    for lo, hi in zip(cuts, cuts[1:]):
        val, e = _panel(f, lo, hi)
        heapq.heappush(heap, (-e, lo, hi, val))
        total += val
        err += e
        n += 1
    while err > max(abs_tol, rel_tol * abs(total)) and n < max_subdivisions:
        neg_e, lo, hi, val = heapq.heappop(heap)
        mid = 0.5 * (lo + hi)
        v1, e1 = _panel(f, lo, mid)
        v2, e2 = _panel(f, mid, hi)
        total += v1 + v2 - val
        err += e1 + e2 + neg_e
        heapq.heappush(heap, (-e1, lo, mid, v1))
        heapq.heappush(heap, (-e2, mid, hi, v2))
        n += 1
    if err > 100.0 * max(abs_tol, rel_tol * abs(total)) + abs_tol:
        raise ConvergenceError(
            f"{what}: error estimate {err:.3e} did not reach tolerance "
            f"after {n} panels"
        )
    return total, err


def _scalar(f):
    """Wrap a scalar-argument function for the vectorised integrator."""
    def g(xs):
        xs = np.atleast_1d(xs)
        return np.array([f(float(x)) for x in xs], dtype=complex)
    return g


# ---------------------------------------------------------------------------
# kernels on the shifted line


def _pair_kernel_shifted(cfg: DetectorConfig):
    """f(x, y) = pair kernel at (x + 2 i sigma^2 Omega, y), epsilon = 0.

    The shift realises the i*epsilon prescription, so the regulator is not
    needed on this contour.
    """
    shift = 2j * cfg.sigma**2 * cfg.omega
    k = cfg.kappa
    a = k * cfg.L
    scen = cfg.scenario
    if scen is Scenario.PARALLEL:
        return lambda x, y: d_parallel(x + shift, y, k, a, 0.0)
    if scen is Scenario.ANTIPARALLEL:
        return lambda x, y: d_antiparallel(x + shift, y, k, a, 0.0)
    if scen is Scenario.DESITTER:
        return lambda x, y: d_desitter(x + shift, y, k, a, 0.0)
    raise ValidationError(f"no shifted pair kernel for scenario {scen}")


def singular_y_on_shifted_line(cfg: DetectorConfig) -> float | None:
    """y at which the shifted anti-parallel kernel is singular at x = 0.

    With b = 1 - a/2 and w = kappa sigma^2 Omega the shifted kernel blows up
    where b e^{+-y kappa/2} = cos w with matching signs; returns None when no
    real crossing exists.  At y -> 0 this is the critical-distance resonance.
    """
    if cfg.scenario is not Scenario.ANTIPARALLEL:
        return None
    b = 1.0 - cfg.kappa * cfg.L / 2.0
    cw = math.cos(cfg.w)
    if b * cw <= 0 or b == cw:
        return None
    return abs(2.0 / cfg.kappa * math.log(b / cw))


# ---------------------------------------------------------------------------
# shifted-contour evaluations


def a_shifted(cfg: DetectorConfig, settings: QuadratureSettings = DEFAULT_SETTINGS) -> ScaledAmplitude:
    """Excitation probability, scaled: sqrt(pi) sigma Integral dy
    e^{-y^2/4 sigma^2} D_detect(y - 2 i sigma^2 Omega).

    Requires kappa sigma^2 Omega < pi so the downward shift crosses no poles
    of the response kernel; the contour itself then supplies the regulator.
    """
    cfg.require_a_window()
    sigma = cfg.sigma
    shift = 2j * sigma**2 * cfg.omega
    R = settings.radius(sigma)

    def integrand(ys):
        ys = np.asarray(ys, dtype=float)
        return np.exp(-(ys**2) / (4.0 * sigma**2)) * d_detect(ys - shift, cfg.kappa, 0.0)

    val, err = adaptive_quad(
        integrand, -R, R, points=(0.0,),
        abs_tol=settings.abs_tol, rel_tol=settings.rel_tol,
        max_subdivisions=settings.max_subdivisions, what="a_shifted",
    )
    val *= math.sqrt(math.pi) * sigma
    return ScaledAmplitude(
        value=val, kind="A",
        diagnostics={"method": "shifted", "quad_error": err * math.sqrt(math.pi) * sigma},
    )


def _x_weighted_inner(kernel, sigma, R, abs_tol, rel_tol, max_sub, x_splits):
    """Return inner(y) = Integral dx e^{-(x^2+y^2)/4 sigma^2} kernel(x, y)."""

    def inner(y):
        w_y = math.exp(-(y * y) / (4.0 * sigma**2))
        if w_y == 0.0:
            return 0j

        def f(xs):
            xs = np.asarray(xs, dtype=float)
            return np.exp(-(xs**2) / (4.0 * sigma**2)) * kernel(xs, y)

        pts = x_splits(y) if x_splits is not None else ()
        val, _ = adaptive_quad(
            f, -R, R, points=pts,
            abs_tol=abs_tol * 0.05, rel_tol=rel_tol,
            max_subdivisions=max_sub, what="x inner integral",
        )
        return w_y * val

    return inner


def x_shifted_residue_free(cfg: DetectorConfig,
                           settings: QuadratureSettings = DEFAULT_SETTINGS) -> ScaledAmplitude:
    """Residue-free part of the scaled coherence term on the shifted contour.

    X~_rf = -Integral_0^inf dy Integral dx e^{-(x^2+y^2)/4 sigma^2}
            D(x + 2 i sigma^2 Omega, y).

    The thermal and inertial kernels do not depend on x, and that integral
    factorises.  For parallel worldlines exchanging detector labels reflects
    the sum variable, so the defining integral averages the two shift
    directions; the single-shift value returned here is the closed-form
    convention and agrees with the defining integral in magnitude (exactly,
    in the small kappa*sigma regime where the window never reaches the null
    separations).
    """
    sigma = cfg.sigma
    R = settings.radius(sigma)
    scen = cfg.scenario

    if scen in (Scenario.THERMAL, Scenario.INERTIAL):
        val, diag = _x_thermal_factorised(cfg, settings)
        return ScaledAmplitude(value=val, kind="X", residue_free=val, residue=0j,
                               diagnostics=diag)

    kernel = _pair_kernel_shifted(cfg)
    x_splits = None
    y_c = singular_y_on_shifted_line(cfg)
    if scen is Scenario.ANTIPARALLEL:
        x_splits = lambda y: (0.0,)

    inner = _x_weighted_inner(kernel, sigma, R, settings.abs_tol, settings.rel_tol,
                              settings.max_subdivisions, x_splits)

    if y_c is not None and y_c < R:
        # the kernel is singular (integrably, ~log) at (x, y) = (0, y_c);
        # excise a sliver whose contribution is O(delta log 1/delta)
        delta = 1e-8 * max(sigma, y_c)
        y_splits = [d for d in (y_c - 1e-2, y_c - 1e-4, y_c + 1e-4, y_c + 1e-2)
                    if 0.0 < d < R]
        val = 0j
        err = 0.0
        for lo, hi in ((0.0, y_c - delta), (y_c + delta, R)):
            if hi <= lo:
                continue
            pts = tuple(p for p in y_splits if lo < p < hi)
            v, e = adaptive_quad(
                _scalar(inner), lo, hi, points=pts,
                abs_tol=settings.abs_tol, rel_tol=settings.rel_tol,
                max_subdivisions=settings.max_subdivisions,
                what="x_shifted_residue_free",
            )
            val += v
            err += e
    else:
        val, err = adaptive_quad(
            _scalar(inner), 0.0, R,
            abs_tol=settings.abs_tol, rel_tol=settings.rel_tol,
            max_subdivisions=settings.max_subdivisions, what="x_shifted_residue_free",
        )
    val = -val
    return ScaledAmplitude(
        value=val, kind="X", residue_free=val, residue=0j,
        diagnostics={"method": "shifted", "quad_error": err,
                     "singular_y": y_c},
    )


def _x_thermal_factorised(cfg, settings):
    """x-integral = 2 sigma sqrt(pi); the remaining y-integral has a real pole
    at y = L, handled as a principal value plus the explicit -i pi delta term."""
    sigma, L, k = cfg.sigma, cfg.L, cfg.kappa
    R = settings.radius(sigma)

    def f(ys):
        ys = np.asarray(ys, dtype=float)
        return np.exp(-(ys**2) / (4.0 * sigma**2)) * d_thermal(ys, k, L, 0.0)

    gauss_x = 2.0 * sigma * math.sqrt(math.pi)
    if L >= R:
        val, err = adaptive_quad(f, 0.0, R, abs_tol=settings.abs_tol,
                                 rel_tol=settings.rel_tol,
                                 max_subdivisions=settings.max_subdivisions,
                                 what="x thermal")
        delta_term = 0j
    else:
        # pair the pole at y = L symmetrically: PV over [L-d, L+d] plus tails
        d = min(L, R - L, 0.5 * sigma)

        def paired(ts):
            ts = np.asarray(ts, dtype=float)
            return f(L + ts) + f(L - ts)

        v1, e1 = adaptive_quad(f, 0.0, L - d, abs_tol=settings.abs_tol,
                               rel_tol=settings.rel_tol,
                               max_subdivisions=settings.max_subdivisions,
                               what="x thermal left")
        # integrable after pairing; exclude a negligible ball around the pole
        v2, e2 = adaptive_quad(paired, 1e-10 * max(L, sigma), d,
                               abs_tol=settings.abs_tol, rel_tol=settings.rel_tol,
                               max_subdivisions=settings.max_subdivisions,
                               what="x thermal pole pair")
        v3, e3 = adaptive_quad(f, L + d, R, abs_tol=settings.abs_tol,
                               rel_tol=settings.rel_tol,
                               max_subdivisions=settings.max_subdivisions,
                               what="x thermal right")
        val = v1 + v2 + v3
        err = e1 + e2 + e3
        # both kernels behave as -1/(8 pi^2 L) * 1/(y - L - i0+) near y = L;
        # 1/(y - L - i0+) = PV + i pi delta(y - L)
        weight = math.exp(-(L**2) / (4.0 * sigma**2))
        delta_term = 1j * math.pi * weight * (-1.0 / (8.0 * math.pi**2 * L))
    total = -gauss_x * (val + delta_term)
    return total, {"method": "shifted-factorised", "quad_error": gauss_x * err,
                   "pole_delta_term": str(delta_term)}


# ---------------------------------------------------------------------------
# direct oscillatory oracles


def _oracle_guard(cfg: DetectorConfig):
    so = cfg.sigma_omega
    if so > 2.0:
        raise OracleUnreliableError(
            f"direct oracle restricted to sigma*Omega <= 2 (got {so:.3g}): "
            "the e^{(sigma Omega)^2} rescale would amplify quadrature noise"
        )


def richardson_limit(values, ratio: float) -> complex:
    """Extrapolate f(eps) -> f(0) from values on a geometric epsilon ladder."""
    tbl = [complex(v) for v in values]
    level = 1
    while len(tbl) > 1:
        factor = ratio**level
        tbl = [(factor * tbl[i + 1] - tbl[i]) / (factor - 1.0) for i in range(len(tbl) - 1)]
        level += 1
    return tbl[0]


def _ladder_extrapolate(evaluate, ladder, what):
    vals = [evaluate(eps) for eps in ladder]
    deltas = [abs(v2 - v1) for v1, v2 in zip(vals, vals[1:])]
    monotone = all(d2 <= d1 * 1.2 + 1e-300 for d1, d2 in zip(deltas, deltas[1:]))
    if not monotone:
        raise OracleUnreliableError(
            f"{what}: regulator extrapolation non-monotone (deltas {deltas})"
        )
    ratio = ladder[0] / ladder[1] if len(ladder) > 1 else 10.0
    out = richardson_limit(vals, ratio)
    diag = {
        "epsilon_ladder": list(ladder),
        "ladder_values": [str(v) for v in vals],
        "ladder_deltas": deltas,
    }
    return out, diag


def a_direct_oracle(cfg: DetectorConfig,
                    settings: QuadratureSettings = DEFAULT_SETTINGS) -> ScaledAmplitude:
    """Brute evaluation of the excitation probability with its oscillatory
    phase in place, at finite regulator, extrapolated to zero regulator."""
    _oracle_guard(cfg)
    sigma, omega = cfg.sigma, cfg.omega
    R = settings.radius(sigma)
    scale = math.exp(cfg.sigma_omega**2) * math.sqrt(math.pi) * sigma

    def evaluate(eps):
        def f(ys):
            ys = np.asarray(ys, dtype=float)
            return (np.exp(-(ys**2) / (4.0 * sigma**2) - 1j * omega * ys)
                    * d_detect(ys, cfg.kappa, eps))

        pts = (-10 * eps, -eps, 0.0, eps, 10 * eps)
        val, _ = adaptive_quad(f, -R, R, points=pts,
                               abs_tol=settings.abs_tol, rel_tol=settings.rel_tol,
                               max_subdivisions=settings.max_subdivisions,
                               what="a_direct")
        return scale * val

    value, diag = _ladder_extrapolate(evaluate, settings.ladder_for(cfg), "a_direct_oracle")
    diag["method"] = "direct-oracle"
    return ScaledAmplitude(value=value, kind="A", diagnostics=diag)


def _null_line_splits(cfg: DetectorConfig):
    """Per-y interior x points where the unshifted pair kernel can blow up."""
    k = cfg.kappa
    a = k * cfg.L
    b = 1.0 - a / 2.0
    scen = cfg.scenario

    if scen is Scenario.PARALLEL:
        def splits(y):
            s = math.sinh(y * k / 2.0)
            if s <= 0:
                return ()
            return (-(2.0 / k) * math.log((a / 2.0) / s),)
        return splits

    if scen is Scenario.ANTIPARALLEL:
        def splits(y):
            pts = []
            for sgn in (1.0, -1.0):
                c = b * math.exp(sgn * y * k / 2.0)
                if c >= 1.0:
                    r = (2.0 / k) * math.acosh(c)
                    pts.extend((r, -r))
            return tuple(pts)
        return splits

    if scen is Scenario.DESITTER:
        def splits(y):
            s = abs(math.sinh(y * k / 2.0))
            if s == 0.0:
                return ()
            return ((2.0 / k) * math.log(s / (a / 2.0)),)
        return splits

    return lambda y: ()


def x_direct_oracle(cfg: DetectorConfig,
                    settings: QuadratureSettings = DEFAULT_SETTINGS) -> ScaledAmplitude:
    """Ground-truth coherence term: the time-ordered double integral with both
    operator orderings, finite regulator, Richardson-extrapolated.

    In sum/difference variables the ordered domain is y > 0 and the two
    orderings combine into 2 D(x, y) e^{i Omega x} for the anti-parallel,
    de Sitter and thermal kernels, and into 2 D(x, y) cos(Omega x) for
    parallel worldlines (label exchange sends x -> -x there).
    """
    _oracle_guard(cfg)
    sigma, omega = cfg.sigma, cfg.omega
    k = cfg.kappa
    a = k * cfg.L
    R = settings.radius(sigma)
    scen = cfg.scenario
    scale = math.exp(cfg.sigma_omega**2)
    splits = _null_line_splits(cfg)

    if scen in (Scenario.THERMAL, Scenario.INERTIAL):
        def evaluate(eps):
            gauss_x = 2.0 * sigma * math.sqrt(math.pi) * math.exp(-(sigma * omega) ** 2)

            def f(ys):
                ys = np.asarray(ys, dtype=float)
                return (np.exp(-(ys**2) / (4.0 * sigma**2))
                        * d_thermal(ys, k, cfg.L, eps))

            pts = [cfg.L + d for d in (-10 * eps, -eps, 0.0, eps, 10 * eps)
                   if 0.0 < cfg.L + d < R]
            val, _ = adaptive_quad(f, 0.0, R, points=tuple(pts),
                                   abs_tol=settings.abs_tol, rel_tol=settings.rel_tol,
                                   max_subdivisions=settings.max_subdivisions,
                                   what="x_direct thermal")
            # the x Gaussian against e^{i Omega x} gives the e^{-(sigma Omega)^2}
            return -scale * gauss_x * val
    else:
        if scen is Scenario.PARALLEL:
            phase = lambda xs: np.cos(omega * xs)
            kernel = lambda xs, y, eps: d_parallel(xs, y, k, a, eps)
        elif scen is Scenario.ANTIPARALLEL:
            phase = lambda xs: np.exp(1j * omega * xs)
            kernel = lambda xs, y, eps: d_antiparallel(xs, y, k, a, eps)
        else:
            phase = lambda xs: np.exp(1j * omega * xs)
            kernel = lambda xs, y, eps: d_desitter(xs, y, k, a, eps)

        def evaluate(eps):
            def inner(y):
                w_y = math.exp(-(y * y) / (4.0 * sigma**2))
                if w_y == 0.0:
                    return 0j

                def f(xs):
                    xs = np.asarray(xs, dtype=float)
                    return (np.exp(-(xs**2) / (4.0 * sigma**2)) * phase(xs)
                            * kernel(xs, y, eps))

                base = splits(y)
                pts = []
                for p in base:
                    pts.extend((p - 10 * eps, p, p + 10 * eps))
                val, _ = adaptive_quad(f, -R, R, points=tuple(pts),
                                       abs_tol=settings.abs_tol * 0.05,
                                       rel_tol=settings.rel_tol,
                                       max_subdivisions=settings.max_subdivisions,
                                       what="x_direct inner")
                return w_y * val

            val, _ = adaptive_quad(_scalar(inner), 0.0, R,
                                   abs_tol=settings.abs_tol, rel_tol=settings.rel_tol,
                                   max_subdivisions=settings.max_subdivisions,
                                   what="x_direct outer")
            return -scale * val

    value, diag = _ladder_extrapolate(evaluate, settings.ladder_for(cfg), "x_direct_oracle")
    diag["method"] = "direct-oracle"
    return ScaledAmplitude(value=value, kind="X", diagnostics=diag)


# ---------------------------------------------------------------------------
# fast fixed-order evaluation for dense parameter grids

from functools import lru_cache


@lru_cache(maxsize=32)
def _gl_nodes(n: int):
    x, w = np.polynomial.legendre.leggauss(n)
    return x, w


def a_shifted_fixed(cfg: DetectorConfig, n: int = 128,
                    settings: QuadratureSettings = DEFAULT_SETTINGS) -> float:
    """Fixed-order Gauss-Legendre version of a_shifted for grid scans."""
    cfg.require_a_window()
    sigma = cfg.sigma
    R = settings.radius(sigma)
    xg, wg = _gl_nodes(n)
    ys = R * xg
    vals = np.exp(-(ys**2) / (4.0 * sigma**2)) * d_detect(
        ys - 2j * sigma**2 * cfg.omega, cfg.kappa, 0.0)
    out = math.sqrt(math.pi) * sigma * R * np.sum(wg * vals)
    return float(out.real)


def x_shifted_fixed(cfg: DetectorConfig, nx: int = 96, ny: int = 96,
                    settings: QuadratureSettings = DEFAULT_SETTINGS) -> complex:
    """Fixed-order tensor Gauss-Legendre version of the residue-free coherence
    integral.  Accurate while the kernel is smooth on the shifted line; near
    the resonance singularity use the adaptive route instead."""
    sigma = cfg.sigma
    R = settings.radius(sigma)
    if cfg.scenario in (Scenario.THERMAL, Scenario.INERTIAL):
        val, _ = _x_thermal_factorised(cfg, settings)
        return complex(val)
    kernel = _pair_kernel_shifted(cfg)
    xg, wx = _gl_nodes(nx)
    yg, wy = _gl_nodes(ny)
    xs = R * xg
    ys = 0.5 * R * (yg + 1.0)
    X, Y = np.meshgrid(xs, ys)
    W = np.outer(wy, wx) * (R * 0.5 * R)
    vals = np.exp(-(X**2 + Y**2) / (4.0 * sigma**2)) * kernel(X, Y)
    return complex(-np.sum(W * vals))
