import math

import numpy as np
import pytest

from udwharvest.core import DetectorConfig, Scenario, SpacetimeEvent, trajectory
from udwharvest.errors import SingularKernelError
from udwharvest.wightman import (
    d_antiparallel,
    d_desitter,
    d_detect,
    d_parallel,
    d_plus_minkowski,
    d_thermal,
    pair_kernel,
)

PI2 = math.pi**2


class TestMinkowski:
    def test_equal_times(self):
        L = 3.0
        val = d_plus_minkowski(SpacetimeEvent(0, 0), SpacetimeEvent(0, L), 1e-12)
        assert val.real == pytest.approx(1.0 / (4 * PI2 * L**2), rel=1e-6)

    def test_coincidence(self):
        eps = 1e-3
        val = d_plus_minkowski(SpacetimeEvent(0, 0), SpacetimeEvent(0, 0), eps)
        assert val == pytest.approx(1.0 / (4 * PI2 * eps**2), rel=1e-12)

    def test_timelike_unit(self):
        val = d_plus_minkowski(SpacetimeEvent(1, 0), SpacetimeEvent(0, 0), 1e-6)
        assert val.real == pytest.approx(-1.0 / (4 * PI2), rel=1e-5)

    def test_null_guarded(self):
        with pytest.raises(SingularKernelError):
            d_plus_minkowski(SpacetimeEvent(1.0, 0.0), SpacetimeEvent(0.0, 1.0), 0.0)


def _grid_identity(scenario, kernel, kappa=0.8, L=2.5, tol=1e-10):
    """Closed-form kernel against the vacuum two-point function composed with
    the explicit worldlines, on a 20x20 grid of real proper times.

    Exchanging the detector labels leaves the anti-parallel kernel untouched
    (the worldlines are mirror images), while for parallel worldlines it maps
    the sum variable x -> -x.
    """
    cfg = DetectorConfig(kappa=kappa, sigma=1.0, omega=1.0, L=L, scenario=scenario)
    taus = np.linspace(-1.8, 1.8, 20)
    a = kappa * L
    for tau in taus:
        for taup in taus:
            x, y = tau + taup, tau - taup
            ea = trajectory(cfg, "a", tau)
            eb = trajectory(cfg, "b", taup)
            direct = d_plus_minkowski(ea, eb, 0.0)
            closed = kernel(x, y, kappa, a, 0.0)
            assert closed == pytest.approx(direct, rel=tol)
            eb2 = trajectory(cfg, "b", tau)
            ea2 = trajectory(cfg, "a", taup)
            swapped = d_plus_minkowski(eb2, ea2, 0.0)
            x_sw = -x if scenario is Scenario.PARALLEL else x
            assert kernel(x_sw, y, kappa, a, 0.0) == pytest.approx(swapped, rel=tol)


class TestParallel:
    def test_origin_value(self):
        # x = y = 0 reduces to the static separation L
        for a, kappa in [(1.0, 1.0), (2.0, 0.5), (0.3, 2.0)]:
            L = a / kappa
            val = d_parallel(0.0, 0.0, kappa, a, 0.0)
            assert complex(val) == pytest.approx(1.0 / (4 * PI2 * L**2), rel=1e-13)

    def test_trajectory_identity(self):
        _grid_identity(Scenario.PARALLEL, d_parallel)

    def test_conjugation_under_y_flip(self):
        # flipping y swaps which bracket carries +i eps: D(x, -y) = conj(D(-x, y))
        # for real x, y; the anti-parallel kernel needs no x flip (x enters evenly)
        rng = np.random.default_rng(7)
        for _ in range(25):
            x, y = rng.uniform(-2, 2, size=2)
            for eps in (0.0, 1e-3):
                lhs = complex(d_parallel(x, -y, 1.1, 0.9, eps))
                rhs = complex(d_parallel(-x, y, 1.1, 0.9, eps)).conjugate()
                assert lhs == pytest.approx(rhs, rel=1e-13)
                lhs = complex(d_antiparallel(x, -y, 1.1, 0.9, eps))
                rhs = complex(d_antiparallel(x, y, 1.1, 0.9, eps)).conjugate()
                assert lhs == pytest.approx(rhs, rel=1e-13)


class TestAntiparallel:
    def test_origin_value(self):
        for a, kappa in [(1.0, 1.0), (3.0, 0.5)]:
            L = a / kappa
            val = d_antiparallel(0.0, 0.0, kappa, a, 0.0)
            assert complex(val) == pytest.approx(1.0 / (4 * PI2 * L**2), rel=1e-13)

    def test_trajectory_identity(self):
        _grid_identity(Scenario.ANTIPARALLEL, d_antiparallel)

    def test_pole_raises(self):
        # b = 1 - a/2 in (0,1): pole at x = 2 arccosh(b)/kappa (imaginary), y = 0
        kappa, a = 1.0, 1.0  # b = 0.5
        x_pole = 2.0 * complex(np.arccosh(0.5 + 0j)) / kappa
        with pytest.raises(SingularKernelError):
            d_antiparallel(x_pole, 0.0, kappa, a, 0.0)


class TestDeSitter:
    def test_origin_value(self):
        kappa, a = 1.0, 1.0
        L = a / kappa
        val = d_desitter(0.0, 0.0, kappa, a, 0.0)
        assert complex(val) == pytest.approx(1.0 / (4 * PI2 * L**2), rel=1e-13)

    def test_phase_at_shifted_saddle(self):
        # at (x, y) = (2 i sigma^2 Omega, 0) the kernel picks up e^{-2iw}
        kappa, sigma, omega, L = 0.5, 1.0, 2.0, 3.0
        w = kappa * sigma**2 * omega
        val = complex(d_desitter(2j * sigma**2 * omega, 0.0, kappa, kappa * L, 0.0))
        expected = np.exp(-2j * w) / (4 * PI2 * L**2)
        assert val == pytest.approx(expected, rel=1e-13)

    def test_y_periodicity(self):
        kappa = 0.7
        y0 = 0.4 + 0.2j
        v1 = complex(d_desitter(0.3, y0, kappa, 1.2, 0.0))
        v2 = complex(d_desitter(0.3, y0 + 2j * math.pi / kappa, kappa, 1.2, 0.0))
        assert v1 == pytest.approx(v2, rel=1e-12)


class TestThermal:
    def test_y_zero(self):
        kappa, L = 0.8, 2.0
        val = complex(d_thermal(0.0, kappa, L, 0.0))
        expected = kappa / (8 * PI2 * L) / math.tanh(kappa * L / 2.0)
        assert val == pytest.approx(expected, rel=1e-13)

    def test_small_kappa_limit(self):
        L = 2.0
        val = complex(d_thermal(0.0, 1e-8, L, 0.0))
        assert val == pytest.approx(1.0 / (4 * PI2 * L**2), rel=1e-8)
        # kappa = 0 closed form agrees
        exact = complex(d_thermal(0.0, 0.0, L, 0.0))
        assert exact == pytest.approx(1.0 / (4 * PI2 * L**2), rel=1e-14)

    def test_x_independent(self):
        cfg = DetectorConfig(kappa=0.5, sigma=1.0, omega=1.0, L=2.0,
                             scenario=Scenario.THERMAL)
        f = pair_kernel(cfg)
        v1 = f(0.0, 0.7)
        v2 = f(123.0 + 4j, 0.7)
        assert complex(v1) == complex(v2)

    def test_pole_at_y_equals_L(self):
        with pytest.raises(SingularKernelError):
            d_thermal(2.0, 1.0, 2.0, 0.0)


class TestDetect:
    def test_value_at_half_period(self):
        kappa = 1.3
        val = complex(d_detect(1j * math.pi / kappa, kappa, 0.0))
        assert val == pytest.approx(kappa**2 / (16 * PI2), rel=1e-13)

    def test_poles_on_lattice(self):
        kappa = 0.9
        for n in (-1, 0, 1, 2):
            with pytest.raises(SingularKernelError):
                d_detect(2j * math.pi * n / kappa, kappa, 0.0)

    def test_small_kappa_limit(self):
        y = 0.8
        val = complex(d_detect(y, 1e-8, 0.0))
        assert val == pytest.approx(-1.0 / (4 * PI2 * y**2), rel=1e-8)
        exact = complex(d_detect(y, 0.0, 0.0))
        assert exact == pytest.approx(-1.0 / (4 * PI2 * y**2), rel=1e-14)

    def test_finite_near_pole(self):
        # evaluation 1e-8 away from a pole must return a finite value
        kappa = 1.0
        val = complex(d_detect(1e-8, kappa, 0.0))
        assert np.isfinite(val.real) and np.isfinite(val.imag)


class TestMeromorphy:
    def test_finite_on_random_complex_points(self):
        rng = np.random.default_rng(11)
        for _ in range(50):
            x = complex(rng.uniform(-2, 2), rng.uniform(-2, 2))
            y = complex(rng.uniform(-2, 2), rng.uniform(-2, 2))
            for f in (
                lambda: d_parallel(x, y, 1.0, 1.5, 0.0),
                lambda: d_antiparallel(x, y, 1.0, 3.3, 0.0),
                lambda: d_desitter(x, y, 1.0, 1.5, 0.0),
            ):
                try:
                    v = complex(f())
                except SingularKernelError:
                    continue
                assert np.isfinite(v.real) and np.isfinite(v.imag)
