"""
测试谱密度
fGn 密度与自协方差的一致性、带状密度的正定性检查、Szegő 条件
"""

import math
import os
import sys

import numpy as np
import pytest

# 添加父目录到 path
sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from szego.errors import ConfigError, DomainError
from szego.quadrature import build_rule
from szego.spectral_density import (BandedDensity, FgnDensity, autocovariance_sequence, create_density,
                                    density_fourier_coefficient, fgn_autocovariance, fgn_density_eval,
                                    fgn_normalizer, log_density, szego_condition_report)

SEVEN_DIAGONAL = [0.3, (2 + 2j) / 10, (1 + 1j) / 10]


def test_fgn_autocovariance():
    assert fgn_autocovariance(0.5, 3) == 0.0
    for H in (0.2, 0.5, 0.9):
        assert fgn_autocovariance(H, 0) == 1.0
    assert fgn_autocovariance(0.75, 1) == pytest.approx(2 ** 1.5 / 2 - 1, rel=1e-14)
    assert fgn_autocovariance(0.75, -1) == fgn_autocovariance(0.75, 1)
    with pytest.raises(DomainError):
        fgn_autocovariance(1.0, 1)


def test_normalizer_at_half():
    assert fgn_normalizer(0.5) == pytest.approx(1.0 / (4 * math.pi ** 2), abs=1e-12)
    for H in (0.05, 0.3, 0.75, 0.95):
        assert fgn_normalizer(H) > 0.0


def test_half_is_white_noise():
    t = np.linspace(0.001, 0.999, 37)
    np.testing.assert_allclose(FgnDensity(0.5).evaluate(t), 1.0, atol=1e-12)
    assert fgn_density_eval(0.5, 0.3) == pytest.approx(1.0, abs=1e-12)


def test_fgn_lattice_sum():
    H, t = 0.75, 0.5
    e = 2 * H + 1
    n = np.arange(-10 ** 6, 10 ** 6 + 1, dtype=float)
    terms = np.abs(t + n) ** (-e)
    lattice = np.sum(np.sort(terms))
    # |t+n| 的尾部 (n > 10^6 与 n < -10^6)，按中点规则用积分近似
    lattice += (10 ** 6 + 1.0) ** (1 - e) / (e - 1) + (10 ** 6) ** (1 - e) / (e - 1)
    expected = fgn_normalizer(H) * abs(np.exp(2j * np.pi * t) - 1) ** 2 * lattice
    assert fgn_density_eval(H, t) == pytest.approx(expected, rel=1e-9)


def test_fgn_symmetry():
    d = FgnDensity(0.3)
    t = np.array([0.01, 0.2, 0.37, 0.45])
    np.testing.assert_allclose(d.evaluate(t), d.evaluate(1.0 - t), rtol=1e-12)


def test_fgn_endpoint_behaviour():
    H = 0.75
    d = FgnDensity(H)
    t = 10.0 ** -np.arange(1, 7)
    scaled = d.evaluate(t) * t ** (2 * H - 1)
    assert np.all(scaled > 0.1) and np.all(scaled < 1.0)


def test_fgn_rejects_closed_interval():
    d = FgnDensity(0.75)
    with pytest.raises(DomainError):
        d.evaluate(np.array([0.0, 0.5]))
    with pytest.raises(DomainError):
        FgnDensity(1.0)


def test_complement_decides_right_endpoint():
    d = FgnDensity(0.75)
    tiny = np.array([1e-18])
    np.testing.assert_allclose(d.evaluate(np.array([1.0]), tiny), d.evaluate(tiny), rtol=1e-12)
    with pytest.raises(DomainError):
        d.evaluate(np.array([1.0]))
    with pytest.raises(DomainError):
        d.evaluate(np.array([1.0]), np.array([0.0]))
    banded = BandedDensity(SEVEN_DIAGONAL)
    np.testing.assert_allclose(banded.evaluate(np.array([1.0]), tiny), banded.evaluate(tiny), rtol=1e-12)


def test_fgn_on_deep_rule():
    rule = build_rule(20, 16, 60)
    assert np.any(rule.t == 1.0)
    values = FgnDensity(0.75).evaluate(rule.t, rule.tc)
    assert np.all(np.isfinite(values)) and np.all(values > 0.0)


@pytest.mark.parametrize('H', [0.3, 0.5, 0.75])
def test_fourier_inversion_matches_autocovariance(H):
    d = FgnDensity(H)
    for k in range(11):
        value = density_fourier_coefficient(d, k, 1e-9)
        assert abs(value - fgn_autocovariance(H, k)) <= 1e-6



def test_fourier_coefficient_right_endpoint():
    value = density_fourier_coefficient(FgnDensity(0.75), 1, 1e-8)
    assert abs(value - (math.sqrt(2.0) - 1.0)) <= 1e-6

def test_banded_reconstruction():
    d = BandedDensity(SEVEN_DIAGONAL)
    m = len(SEVEN_DIAGONAL)
    for k in range(1, m + 1):
        assert abs(density_fourier_coefficient(d, k, 1e-12) - np.conj(SEVEN_DIAGONAL[k - 1])) <= 1e-12
        assert abs(density_fourier_coefficient(d, -k, 1e-12) - SEVEN_DIAGONAL[k - 1]) <= 1e-12
    for k in range(m + 1, 2 * m + 4):
        assert abs(density_fourier_coefficient(d, k, 1e-12)) <= 1e-12
    assert abs(density_fourier_coefficient(d, 0, 1e-12) - 1.0) <= 1e-12


def test_banded_autocovariance_is_hermitian():
    d = BandedDensity(SEVEN_DIAGONAL)
    assert d.autocovariance(0) == 1.0
    for k in range(1, 6):
        assert d.autocovariance(-k) == np.conj(d.autocovariance(k))
    np.testing.assert_allclose(autocovariance_sequence(d, 5), [1.0, 0.3, 0.2 - 0.2j, 0.1 - 0.1j, 0.0])


def test_banded_positivity():
    t = (np.arange(10 ** 4) + 0.5) / 10 ** 4
    for q in ([-0.2], [-0.25, 1 / 3], SEVEN_DIAGONAL, []):
        assert np.all(BandedDensity(q).evaluate(t) >= -1e-12)


def test_banded_rejects_non_positive():
    with pytest.raises(DomainError):
        BandedDensity([0.6])
    # 最小值恰好为 0
    with pytest.raises(DomainError):
        BandedDensity([0.5])


def test_szego_condition_identity():
    report = szego_condition_report(BandedDensity([]), 1e-10)
    assert report.min_sampled_density == 1.0
    assert report.log_integral == pytest.approx(0.0, abs=1e-14)


def test_szego_condition_tridiagonal():
    q = -0.2
    c0_squared = (1 + math.sqrt(1 - 4 * q * q)) / 2
    report = szego_condition_report(BandedDensity([q]), 1e-10)
    assert report.log_integral == pytest.approx(math.log(c0_squared), abs=1e-10)
    assert report.log_integral == pytest.approx(-0.042638, abs=1e-6)
    assert report.min_sampled_density == pytest.approx(0.6, abs=1e-6)


def test_szego_condition_fgn():
    report = szego_condition_report(FgnDensity(0.75), 1e-10)
    assert report.log_integral == pytest.approx(-2 * 0.113994, abs=1e-5)


def test_create_density():
    assert isinstance(create_density({'kind': 'fgn', 'H': 0.75}), FgnDensity)
    banded = create_density({'kind': 'banded', 'q': [{'re': -0.25, 'im': 0}, {'re': 1 / 3, 'im': 0}]})
    assert banded.band_order == 2
    tri = create_density({'kind': 'tridiagonal', 'q': {'re': 0.1, 'im': 0.2}})
    assert tri.q == (0.1 - 0.2j,)
    assert tri.autocovariance(1) == 0.1 + 0.2j
    with pytest.raises(ConfigError):
        create_density({'kind': 'ar1'})
    with pytest.raises(ConfigError):
        create_density({'kind': 'fgn'})
    with pytest.raises(DomainError):
        create_density({'kind': 'banded', 'q': [0.7]})


def test_log_density_shared_with_transform():
    from szego import szego_transform
    assert szego_transform.log_density is log_density
    t = np.array([0.1, 0.4, 0.7])
    np.testing.assert_allclose(log_density(FgnDensity(0.5))(t, 1.0 - t), 0.0, atol=1e-12)
    d = BandedDensity([-0.2])
    np.testing.assert_allclose(log_density(d)(t, 1.0 - t), np.log(d.evaluate(t)), rtol=1e-14)
