"""
测试复合 Gauss-Legendre 求积
"""

import os
import sys

import numpy as np
import pytest

# 添加父目录到 path
sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from szego.errors import QuadratureError
from szego.quadrature import build_rule, fourier_integrals, integrate, integrate_batch


def test_rule_is_symmetric():
    rule = build_rule(20, 16, 40)
    half = rule.t.size // 2
    assert np.all(rule.t > 0.0) and np.all(rule.tc > 0.0) and np.all(rule.t <= 1.0)
    np.testing.assert_array_equal(rule.t[:half], rule.tc[half:])
    np.testing.assert_array_equal(rule.w[:half], rule.w[half:])
    assert rule.w.sum() == pytest.approx(1.0, abs=1e-14)


def test_polynomial_is_exact():
    value, estimate = integrate(lambda t, tc: t ** 2, 1e-12)
    assert value == pytest.approx(1.0 / 3.0, abs=1e-14)
    assert estimate <= 1e-12


def test_log_endpoint_singularity():
    value, _ = integrate(lambda t, tc: np.log(t), 1e-10)
    assert value == pytest.approx(-1.0, abs=1e-9)
    # 两端同时奇异，补数 tc 保证右端精度
    value, _ = integrate(lambda t, tc: np.log(t) + np.log(tc), 1e-10)
    assert value == pytest.approx(-2.0, abs=1e-9)


def test_algebraic_endpoint_singularity():
    value, _ = integrate(lambda t, tc: t ** -0.5, 1e-8)
    assert value == pytest.approx(2.0, abs=1e-7)


def test_strong_endpoint_singularity():
    value, _ = integrate(lambda t, tc: t ** -0.8, 1e-10)
    assert value == pytest.approx(5.0, abs=1e-8)
    value, _ = integrate(lambda t, tc: tc ** -0.8, 1e-10)
    assert value == pytest.approx(5.0, abs=1e-8)


def test_deep_rule_keeps_complement_exact():
    rule = build_rule(20, 16, 80)
    assert np.all(rule.tc > 0.0) and np.all(rule.t > 0.0)
    assert rule.w.sum() == pytest.approx(1.0, abs=1e-14)


def test_batch_rows():
    values, _ = integrate_batch(lambda t, tc: np.vstack([np.ones_like(t), t, tc]), 1e-12)
    np.testing.assert_allclose(values, [1.0, 0.5, 0.5], atol=1e-14)


def test_fourier_orthogonality():
    ks = np.arange(-5, 40)
    values, _ = fourier_integrals(lambda t, tc: np.exp(2j * np.pi * 3 * t), ks, 1e-12, sign=-1)
    expected = (ks == 3).astype(float)
    np.testing.assert_allclose(values, expected, atol=1e-12)


def test_fourier_thread_count_does_not_change_result():
    func = lambda t, tc: np.log(t) * np.cos(2 * np.pi * t)
    serial, _ = fourier_integrals(func, range(70), 1e-10, threads=1)
    parallel, _ = fourier_integrals(func, range(70), 1e-10, threads=4)
    np.testing.assert_array_equal(serial, parallel)


def test_non_finite_integrand():
    with pytest.raises(QuadratureError):
        integrate(lambda t, tc: np.full_like(t, np.inf), 1e-10)


def test_non_convergence_reports_estimate():
    with pytest.raises(QuadratureError) as info:
        integrate(lambda t, tc: t ** -0.9, 1e-30, max_refine=0)
    assert info.value.estimate > 1e-30
    assert info.value.tol == 1e-30
