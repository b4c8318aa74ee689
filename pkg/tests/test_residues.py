import cmath
import math

import numpy as np
import pytest

from udwharvest.core import DetectorConfig, DimensionlessPoint, Scenario, config_from_point
from udwharvest.errors import DegeneratePoleError, ValidationError
from udwharvest.quadrature import x_direct_oracle, x_shifted_residue_free
from udwharvest.residues import (
    LogComplex,
    ResidueContour,
    build_contour,
    contour_integrand,
    descent_path_quadrature,
    find_saddle,
    kernel_residue,
    pole_included,
    pole_location,
    residue_contribution,
    _exponent_deriv,
    _steepest_descent_value,
)
from udwharvest.wightman import d_antiparallel


def pt(a, w, g=0.001):
    return DimensionlessPoint(a=a, w=w, g=g)


class TestPoleLocation:
    def test_merge_point(self):
        p = pt(1.0, 1.0)  # b = 0.5
        for branch in (1, -1):
            th = pole_location(0.0, branch, p).theta
            assert th == pytest.approx(1j * math.pi / 3, abs=1e-12)

    def test_minus_branch_limit(self):
        p = pt(1.0, 1.0)
        th = pole_location(5e4, -1, p).theta  # y >> 1 in units of sigma
        assert th.imag == pytest.approx(math.pi / 2, abs=1e-6)
        assert abs(th.real) < 1e-6

    def test_plus_branch_limit_positive_b(self):
        p = pt(1.0, 1.0)  # b = 0.5 > 0
        th = pole_location(5e4, 1, p).theta
        assert th.real < -5.0
        assert th.imag == pytest.approx(0.0, abs=1e-9)

    def test_plus_branch_limit_negative_b(self):
        p = pt(3.0, 2.0)  # b = -0.5
        th = pole_location(5e4, 1, p).theta
        assert th.real < -5.0
        assert th.imag == pytest.approx(math.pi, abs=1e-9)


class TestInclusion:
    def test_negative_b_small_w_never(self):
        p = pt(3.0, 1.2)  # b = -0.5, cos w > ... lhs < 0 < cos w
        for y in (0.0, 1.0, 10.0, 1e4):
            assert not pole_included(y, 1, p)
            assert not pole_included(y, -1, p)

    def test_merge_inclusion(self):
        assert pole_included(0.0, 1, pt(1.0, math.pi / 2))  # 0.5 > 0

    def test_negative_b_against_cos(self):
        p = pt(2.2, 2.0)  # b = -0.1, cos 2.0 = -0.416
        assert pole_included(0.0, 1, p)


class TestKernelResidue:
    def test_degenerate_at_merge(self):
        p = pt(1.0, 1.0)
        pole = pole_location(0.0, 1, p)
        with pytest.raises(DegeneratePoleError):
            kernel_residue(pole, p, kappa=0.001)

    def test_branch_swap_antisymmetry(self):
        p = pt(1.0, 1.0, g=0.5)
        y = 2.0
        r_plus = kernel_residue(pole_location(y, 1, p), p, kappa=0.5)
        th_p = pole_location(y, 1, p).theta
        th_m = pole_location(y, -1, p).theta
        # denominators cosh(th_opp) - cosh(th_s) flip sign between branches
        d_plus = np.cosh(th_m) - np.cosh(th_p)
        d_minus = np.cosh(th_p) - np.cosh(th_m)
        assert complex(d_plus) == pytest.approx(complex(-d_minus), rel=1e-13)

    def test_against_numeric_limit(self):
        # residue = lim (x - x_pole) D(x, y) computed numerically
        p = pt(1.0, 1.0, g=0.5)
        kappa = 0.5
        y_phys = 2.0 / 1.0  # sigma = g/kappa... y measured in sigma units
        pole = pole_location(y_phys, 1, p)
        x_pole = 2.0 * pole.theta / kappa
        closed = kernel_residue(pole, p, kappa)
        y_time = y_phys * (p.g / kappa)  # convert sigma units to time
        for h in (1e-5, 1e-6):
            x = x_pole + h
            numeric = complex(d_antiparallel(x, y_time, kappa, p.a, 0.0)) * h
            assert numeric == pytest.approx(closed, rel=5e-4)


class TestContourIntegrand:
    def test_value_at_iw(self):
        p = pt(1.0, 1.25, g=0.5)
        val = contour_integrand(1j * p.w, p)
        mag = abs(val)
        expected = (1 / (2 * math.pi)) / abs(math.cos(p.w) ** 2 - p.b**2) * math.exp(
            -math.log(math.cos(p.w) / p.b) ** 2 / p.g**2)
        assert mag == pytest.approx(expected, rel=1e-12)

    def test_pole_guard(self):
        p = pt(1.0, 1.25, g=0.5)
        with pytest.raises(ValidationError):
            contour_integrand(1j * math.acos(p.b), p)


class TestContour:
    def test_negative_b_below_half_pi_empty(self):
        assert build_contour(pt(3.0, 1.2)).empty

    def test_negative_b_above_half_pi(self):
        c = build_contour(pt(3.0, 2.0))
        assert c.case == "b_negative"
        (z0, z1), = c.segments
        assert z0 == pytest.approx(1j * math.pi / 2)
        assert z1 == pytest.approx(2j)

    def test_positive_b_l_shape(self):
        c = build_contour(pt(1.0, 2.0))
        assert c.case == "b_positive"
        assert len(c.segments) == 2
        assert c.segments[0][0] == pytest.approx(1j * math.pi / 2)
        assert c.segments[0][1] == 0j
        # truncated where the Gaussian weight is ~e^{-(T^2-w^2)/g^2}
        assert c.segments[1][1].real < -(abs(math.log(0.5)) + 2.0) + 1e-12

    def test_pv_pole_flagged(self):
        c = build_contour(pt(1.0, 2.0))  # beta = arccos(0.5) < pi/2 < w
        assert len(c.pv_points) == 1
        assert c.pv_points[0] == pytest.approx(1j * math.acos(0.5))


class TestVanishing:
    def test_fifty_random_noncausal_quiet_points(self):
        rng = np.random.default_rng(17)
        for _ in range(50):
            a = rng.uniform(2.0 + 1e-6, 6.0)
            w = rng.uniform(0.05, math.pi / 2 - 1e-9)
            g = 10 ** rng.uniform(-3.5, -0.5)
            r = residue_contribution(pt(a, w, g))
            assert r.value == 0j
            assert r.validity == "zero"


class TestAssemblyAgainstOracle:
    @pytest.mark.parametrize("a,w,g", [
        (2.6, 2.0, 1.0),   # noncausal case, merge pole on the contour
        (1.0, 2.0, 1.0),   # causal case, merge pole on the vertical segment
        (1.9, 1.2, 0.8),   # causal case, clean contour
    ])
    def test_total_matches_direct(self, a, w, g):
        p = pt(a, w, g)
        cfg = config_from_point(p, scenario=Scenario.ANTIPARALLEL)
        total = x_shifted_residue_free(cfg).value + residue_contribution(p).value
        direct = x_direct_oracle(cfg).value
        assert abs(total - direct) / abs(direct) < 0.05
        assert abs(abs(total) - abs(direct)) / abs(direct) < 0.02


class TestSaddle:
    def test_pure_quadratic_exponent(self):
        # with the log term negligible the stationary point sits at theta = i w
        # (solver sanity on E = (theta - i w)^2 / g^2 via a huge |log| scale)
        w = 1.3

        def F(theta):
            return theta - 1j * w

        theta = 0.2 + 0.3j
        for _ in range(60):
            f0 = F(theta)
            h = 1e-7
            fp = (F(theta + h) - F(theta - h)) / (2 * h)
            theta = theta - f0 / fp
        assert theta == pytest.approx(1j * w, abs=1e-12)

    def test_axis_pass_found(self):
        p = pt(1.95, 2.6)
        th = find_saddle(p)
        assert abs(th.real) < 1e-12
        assert 0 < th.imag < math.pi / 2
        assert abs(complex(_exponent_deriv(th, p.b, p.w))) < 1e-10

    def test_deterministic(self):
        p = pt(1.6, 2.6)
        assert find_saddle(p) == find_saddle(p)

    def test_descent_path_agreement(self):
        # Gaussian saddle value against brute quadrature along the descent
        # line through the saddle, on a five-point validation set
        points = [(1.9, 2.6, 0.05), (1.95, 2.4, 0.05), (1.85, 2.7, 0.04),
                  (1.9, 1.4, 0.05), (1.8, 2.5, 0.06)]
        for (a, w, g) in points:
            p = pt(a, w, g)
            th = find_saddle(p)
            sd = _steepest_descent_value(p, g, w, th, -1j)
            dq = descent_path_quadrature(p, th, -1j)
            ratio = sd.mantissa / (dq.mantissa * math.exp(dq.log_shift - sd.log_shift))
            assert abs(ratio - 1.0) < 0.02


class TestLandscape:
    def test_necktie_point_suppressed(self):
        r = residue_contribution(pt(1.95, 2.6))
        assert r.validity == "steepest_descent"
        assert r.log10_abs < -1e5

    def test_noncausal_point_magnitude(self):
        # included merge pole at height beta: |residue| = e^{(beta-w)^2/g^2}
        # up to prefactors
        p = pt(2.05, 2.6)
        r = residue_contribution(p)
        beta = math.acos(p.b)
        expected = (beta - p.w) ** 2 / p.g**2 / math.log(10.0)
        assert r.validity == "quadrature"
        assert r.log10_abs == pytest.approx(expected, rel=0.001)

    def test_beyond_resonance_curve_suppressed(self):
        r = residue_contribution(pt(3.9, 2.6))
        assert r.log10_abs < -1000

    def test_continuity_within_noncausal_region(self):
        vals = [residue_contribution(pt(a, 2.6)).log10_abs
                for a in (2.4, 2.45, 2.5, 2.55, 2.6)]
        diffs = np.diff(vals)
        assert np.all(np.abs(np.diff(diffs)) < 0.2 * np.abs(diffs[:-1]) + 50)

    def test_continuity_within_necktie_strip(self):
        vals = [residue_contribution(pt(a, 2.6)).log10_abs
                for a in (1.90, 1.92, 1.94, 1.96, 1.98)]
        assert all(np.isfinite(vals))
        assert np.all(np.diff(vals) < 0)  # deeper suppression toward a = 2


class TestLogComplex:
    def test_addition_across_scales(self):
        big = LogComplex(1.0 + 0j, 100.0)
        small = LogComplex(1.0 + 0j, 0.0)
        total = big + small
        assert total.log10_abs == pytest.approx(big.log10_abs)

    def test_to_complex_overflow(self):
        huge = LogComplex(1.0 + 1j, 1e6)
        v = huge.to_complex()
        assert math.isinf(v.real) and math.isinf(v.imag)
        assert huge.log10_abs == pytest.approx((1e6 + math.log(math.sqrt(2))) / math.log(10))
