import math

import numpy as np
import pytest

from udwharvest.core import (
    DetectorConfig,
    DimensionlessPoint,
    Scenario,
    config_from_point,
    reduce,
    trajectory,
    unruh_temperature,
    window,
)
from udwharvest.errors import ValidationError


def make_cfg(scenario=Scenario.ANTIPARALLEL, kappa=1.0, sigma=1.0, omega=1.0, L=2.0):
    return DetectorConfig(kappa=kappa, sigma=sigma, omega=omega, L=L,
                          eta0=0.01, scenario=scenario)


class TestTrajectory:
    def test_closest_approach_detector_a(self):
        cfg = make_cfg()
        ev = trajectory(cfg, "a", 0.0)
        assert ev.t == 0.0
        assert ev.x == pytest.approx(cfg.L / 2.0)

    def test_closest_approach_detector_b_antiparallel(self):
        cfg = make_cfg(Scenario.ANTIPARALLEL)
        ev = trajectory(cfg, "b", 0.0)
        assert ev.t == 0.0
        assert ev.x == pytest.approx(-cfg.L / 2.0)

    def test_hand_evaluated_point(self):
        # kappa=1, L=2, detector a, tau=1: t = sinh 1, x = cosh 1 - 1 + 1
        cfg = make_cfg(kappa=1.0, L=2.0)
        ev = trajectory(cfg, "a", 1.0)
        assert ev.t == pytest.approx(1.1752011936438014, rel=1e-12)
        assert ev.x == pytest.approx(1.5430806348152437, rel=1e-12)

    def test_time_odd_position_even(self):
        for scen in (Scenario.PARALLEL, Scenario.ANTIPARALLEL):
            cfg = make_cfg(scen, kappa=0.7, L=3.0)
            for det in "ab":
                for tau in (0.3, 1.1, 2.5):
                    p = trajectory(cfg, det, tau)
                    m = trajectory(cfg, det, -tau)
                    assert p.t == pytest.approx(-m.t, rel=1e-14)
                    assert p.x == pytest.approx(m.x, rel=1e-14)

    def test_separation_identities(self):
        taus = np.linspace(-3.0, 3.0, 13)
        anti = make_cfg(Scenario.ANTIPARALLEL, kappa=0.5, L=1.5)
        for tau in taus:
            xa = trajectory(anti, "a", tau).x
            xb = trajectory(anti, "b", tau).x
            assert xa + xb == pytest.approx(0.0, abs=1e-12)
        par = make_cfg(Scenario.PARALLEL, kappa=0.5, L=1.5)
        for tau in taus:
            xa = trajectory(par, "a", tau).x
            xb = trajectory(par, "b", tau).x
            assert xa - xb == pytest.approx(par.L, rel=1e-13)

    def test_closest_approach_is_L_in_both_scenarios(self):
        for scen in (Scenario.PARALLEL, Scenario.ANTIPARALLEL):
            cfg = make_cfg(scen, L=2.7)
            d0 = trajectory(cfg, "a", 0.0).x - trajectory(cfg, "b", 0.0).x
            assert abs(d0) == pytest.approx(cfg.L, rel=1e-14)

    def test_rejects_inertial(self):
        cfg = DetectorConfig(kappa=0.0, sigma=1.0, omega=1.0, L=2.0,
                             scenario=Scenario.INERTIAL)
        with pytest.raises(ValidationError, match="inertial"):
            trajectory(cfg, "a", 1.0)


class TestWindow:
    def test_peak(self):
        cfg = make_cfg()
        assert window(cfg, 0.0) == pytest.approx(cfg.eta0)

    def test_one_sigma(self):
        cfg = make_cfg(sigma=2.0)
        assert window(cfg, 2.0) == pytest.approx(cfg.eta0 * math.exp(-0.5))

    def test_even_bounded_decaying(self):
        cfg = make_cfg()
        vals = [window(cfg, t) for t in (0.5, 1.0, 2.0, 5.0, 20.0)]
        assert all(window(cfg, -t) == window(cfg, t) for t in (0.3, 1.7))
        assert all(0 < v <= cfg.eta0 for v in vals)
        assert all(a > b for a, b in zip(vals, vals[1:]))


class TestUnruhTemperature:
    def test_values(self):
        assert unruh_temperature(0.0) == 0.0
        assert unruh_temperature(2.0 * math.pi) == pytest.approx(1.0)
        assert unruh_temperature(1.0) == pytest.approx(0.15915494309189535)


class TestReduce:
    def test_reference_point(self):
        # kappa = 1/1000, sigma = 1, Omega = 1250 with L = 1000
        cfg = DetectorConfig(kappa=0.001, sigma=1.0, omega=1250.0, L=1000.0)
        pt = reduce(cfg)
        assert pt.a == pytest.approx(1.0)
        assert pt.w == pytest.approx(1.25)
        assert pt.g == pytest.approx(0.001)
        assert pt.b == pytest.approx(0.5)

    def test_boundary_b_zero(self):
        pt = DimensionlessPoint(a=2.0, w=3.14, g=2.0)
        assert pt.b == 0.0

    def test_negative_b(self):
        cfg = DetectorConfig(kappa=1.0, sigma=1.0, omega=1.0, L=4.0)
        assert reduce(cfg).b == pytest.approx(-1.0)

    def test_kappa_zero_rejected(self):
        cfg = DetectorConfig(kappa=0.0, sigma=1.0, omega=1.0, L=2.0,
                             scenario=Scenario.INERTIAL)
        with pytest.raises(ValidationError, match="inertial"):
            reduce(cfg)

    def test_roundtrip_through_config(self):
        pt = DimensionlessPoint(a=1.3, w=2.2, g=0.05)
        cfg = config_from_point(pt, sigma=2.0)
        back = reduce(cfg)
        assert back.a == pytest.approx(pt.a, rel=1e-13)
        assert back.w == pytest.approx(pt.w, rel=1e-13)
        assert back.g == pytest.approx(pt.g, rel=1e-13)


class TestValidation:
    def test_w_window_guard(self):
        cfg = make_cfg(kappa=2.0, sigma=1.0, omega=2.0)  # w = 4 > pi
        with pytest.raises(ValidationError, match="pi"):
            cfg.require_a_window()

    def test_scenario_parsing(self):
        cfg = DetectorConfig(kappa=1.0, sigma=1.0, omega=1.0, L=1.0,
                             scenario="anti-parallel")
        assert cfg.scenario is Scenario.ANTIPARALLEL

    def test_spacelike_diagnostic(self):
        assert make_cfg(sigma=1.0, L=20.0).spacelike_ok
        assert not make_cfg(sigma=1.0, L=5.0).spacelike_ok

    @pytest.mark.parametrize("field,value", [
        ("sigma", -1.0), ("omega", 0.0), ("L", -2.0), ("eta0", 1.5),
    ])
    def test_bad_parameters(self, field, value):
        kw = dict(kappa=1.0, sigma=1.0, omega=1.0, L=1.0, eta0=0.01)
        kw[field] = value
        with pytest.raises(ValidationError):
            DetectorConfig(**kw)
