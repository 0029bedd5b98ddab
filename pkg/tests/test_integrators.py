"""Adaptive real-line, unit-circle, and bilateral-sum engines."""

import math

import numpy as np
import pytest

from pentaq.integrators import (
    QuadratureResult,
    integrate_real_line,
    integrate_unit_circle,
    sum_over_integers,
)
from pentaq.special_functions import ConvergenceError, TruncationPolicy


class TestRealLine:
    def test_gaussian(self):
        res = integrate_real_line(lambda u: np.exp(-(u**2)))
        assert res.value == pytest.approx(math.sqrt(math.pi), rel=1e-11)
        assert res.converged

    def test_lorentzian(self):
        res = integrate_real_line(lambda u: 1 / (1 + u**2))
        assert res.value == pytest.approx(math.pi, rel=1e-8)

    def test_lorentzian_squared(self):
        res = integrate_real_line(lambda u: 1 / (1 + u**2) ** 2)
        assert res.value == pytest.approx(math.pi / 2, rel=1e-10)

    def test_shifted_center(self):
        res = integrate_real_line(lambda u: np.exp(-((u - 7.5) ** 2)))
        assert res.value == pytest.approx(math.sqrt(math.pi), rel=1e-10)

    def test_complex_valued(self):
        res = integrate_real_line(lambda u: np.exp(-(u**2)) * (1 + 2j))
        assert res.value == pytest.approx((1 + 2j) * math.sqrt(math.pi),
                                          rel=1e-10)

    def test_error_estimate_is_conservative(self):
        res = integrate_real_line(lambda u: 1 / (1 + u**2))
        true_err = abs(res.value - math.pi)
        assert true_err <= 3 * max(res.abs_error_estimate, 1e-15)

    def test_record_shape(self):
        rec = integrate_real_line(lambda u: np.exp(-(u**2))).to_record()
        for key in ("value", "abs_error_estimate", "evaluations",
                    "refinements_used", "tail_estimate", "converged"):
            assert key in rec

    def test_tighter_policy_does_not_hurt(self):
        loose = integrate_real_line(lambda u: 1 / (1 + u**2))
        tight = integrate_real_line(lambda u: 1 / (1 + u**2),
                                    policy=TruncationPolicy().doubled())
        assert abs(tight.value - math.pi) <= 10 * max(
            abs(loose.value - math.pi), 1e-14)


class TestUnitCircle:
    def test_constant(self):
        res = integrate_unit_circle(lambda z: np.ones_like(z))
        assert res.value == pytest.approx(1.0, abs=1e-14)

    @pytest.mark.parametrize("k", [1, 2, 5, -3])
    def test_pure_powers_vanish(self, k):
        res = integrate_unit_circle(lambda z: z**k)
        assert abs(res.value) < 1e-13

    def test_geometric_kernel(self):
        a = 0.45 + 0.2j
        res = integrate_unit_circle(lambda z: 1 / (1 - a * z))
        assert res.value == pytest.approx(1.0, abs=1e-12)

    def test_doubling_detects_convergence(self):
        res = integrate_unit_circle(lambda z: np.exp(z))
        assert res.value == pytest.approx(1.0, abs=1e-13)
        assert res.converged

    def test_rejects_non_power_of_two(self):
        with pytest.raises(ValueError):
            integrate_unit_circle(lambda z: z, num_points=60)


class TestBilateralSum:
    def test_two_sided_geometric(self):
        res = sum_over_integers(lambda m: 2.0 ** (-abs(m)))
        assert res.value == pytest.approx(3.0, rel=1e-12)

    def test_kronecker_delta(self):
        res = sum_over_integers(lambda m: 1.0 if m == 0 else 0.0)
        assert res.value == pytest.approx(1.0)

    def test_algebraic_tail_coth(self):
        # sum 1/(1+m^2) = pi coth(pi); algebraic decay stresses the tail fit
        res = sum_over_integers(
            lambda m: 1 / (1 + m**2),
            policy=TruncationPolicy(sum_tail_tol=1e-6),
        )
        expected = math.pi / math.tanh(math.pi)
        assert res.value == pytest.approx(expected, rel=1e-5)
        assert abs(res.value - expected) <= 3 * res.abs_error_estimate

    def test_alternating_algebraic(self):
        # sum_{m>=1} (-1)^m / m^3 twice (symmetric term), eta(3) = 3 zeta(3)/4
        from scipy.special import zeta

        res = sum_over_integers(
            lambda m: (-1) ** abs(m) / abs(m) ** 3 if m != 0 else 0.0)
        expected = -2 * 0.75 * zeta(3)
        assert res.value == pytest.approx(expected, rel=1e-9)

    def test_linearity(self):
        f = lambda m: 2.0 ** (-abs(m))
        g = lambda m: 3.0 ** (-abs(m)) * (1 + 1j)
        combined = sum_over_integers(lambda m: 2 * f(m) + g(m))
        separate = 2 * sum_over_integers(f).value + sum_over_integers(g).value
        assert combined.value == pytest.approx(separate, rel=1e-9)

    def test_divergent_series_detected(self):
        with pytest.raises(ConvergenceError):
            sum_over_integers(lambda m: float(1 + m**2))

    def test_result_fields(self):
        res = sum_over_integers(lambda m: 2.0 ** (-abs(m)))
        assert isinstance(res, QuadratureResult)
        assert res.evaluations > 0
        assert res.converged
