"""
测试计算流程与便捷函数
"""

import os
import sys

import numpy as np
import pytest

# 添加父目录到 path
sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from szego.pipeline import SzegoPipeline, compute_block, run_validation
from szego.spectral_density import BandedDensity, FgnDensity

PENTA = [-0.25, 1 / 3]


def test_run_is_cached():
    pipeline = SzegoPipeline(BandedDensity(PENTA), N=12)
    first = pipeline.run()
    assert pipeline.run() is first
    assert first.N == 12
    assert len(first.a) == 13 and len(first.c) == 13
    assert first.gap is None


def test_default_truncation():
    assert SzegoPipeline(FgnDensity(0.75)).N == 256
    assert SzegoPipeline(BandedDensity(PENTA)).N == 4 * 2 + 16


def test_result_to_dict():
    payload = SzegoPipeline(BandedDensity([]), N=3).run().to_dict()
    assert set(payload) == {'u', 'a', 'c', 'N', 'tol'}
    assert payload['N'] == 3
    assert payload['a'][0] == {'re': 1.0, 'im': 0.0}
    assert len(payload['u']) == 4


def test_gap_early_stop():
    result = SzegoPipeline(BandedDensity(PENTA), N=60, gap_tol=1e-8, min_N=4).run()
    assert 4 <= result.N < 60
    assert result.gap < 1e-8
    assert len(result.a) == result.N + 1
    assert 'diagonal_gap' in result.to_dict()


def test_gap_for_small_hurst():
    result = SzegoPipeline(FgnDensity(0.3), N=64, gap_tol=1e-2, min_N=4).run()
    assert 4 <= result.N <= 64
    assert np.isfinite(result.gap) and result.gap >= -1e-8


def test_compute_block():
    ok, message, block = compute_block(BandedDensity([]), 3)
    assert ok, message
    np.testing.assert_allclose(block.entries, np.eye(3), atol=1e-15)

    ok, message, block = compute_block(BandedDensity([]), 5, N=2)
    assert not ok
    assert block is None
    assert message.startswith('计算失败')


def test_run_validation():
    ok, message, report = run_validation(BandedDensity(PENTA), 5, 100, 1e-6)
    assert ok, message
    assert report.max_abs_diff <= 1e-6

    ok, message, report = run_validation(BandedDensity(PENTA), 5, 100, 0.0)
    assert not ok
    assert report is not None
    assert '超过界限' in message


def test_validation_failure_is_reported():
    ok, message, report = run_validation(BandedDensity([]), 5, 3, 1.0)
    assert not ok
    assert report is None
    assert message.startswith('校验失败')


def test_whittle_matrix():
    entries = SzegoPipeline(BandedDensity([])).whittle_matrix(3)
    np.testing.assert_allclose(entries, np.eye(3), atol=1e-12)
    assert entries.shape == (3, 3)
    assert pytest.approx(1.0) == entries[0, 0]
