"""
计算流程
谱密度 -> u_k -> a_n / c_n -> G⁻¹ 角块，并可与有限截断的 Cholesky 结果比较
"""

import logging
from dataclasses import dataclass
from typing import Any, Dict, Optional, Tuple

import numpy as np

import config
from szego.errors import SzegoError
from szego.formats import encode_series
from szego.inverse_assembly import InverseBlock, diagonal_limit, inverse_block, whittle_matrix
from szego.oracle_validation import OracleReport, compare_blocks, run_oracle
from szego.spectral_density import SpectralDensity
from szego.szego_transform import (CoefficientSeries, LogFourierCoeffs, default_truncation,
                                   log_fourier_coefficients, psi_coefficients, szego_coefficients)

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class PipelineResult:
    u: LogFourierCoeffs
    a: CoefficientSeries
    c: CoefficientSeries
    N: int
    tol: float
    gap: Optional[float] = None

    def to_dict(self) -> Dict[str, Any]:
        payload = {
            'u': encode_series(self.u.u[:self.N + 1]),
            'a': encode_series(self.a.coeffs),
            'c': encode_series(self.c.coeffs),
            'N': self.N,
            'tol': self.tol,
        }
        if self.gap is not None:
            payload['diagonal_gap'] = self.gap
        return payload


class SzegoPipeline:
    """Szegő 方法的完整流程"""

    def __init__(self, density: SpectralDensity, N: int = None, tol: float = None,
                 gap_tol: float = None, min_N: int = 0):
        """
        Args:
            density: 谱密度
            N: 截断阶数，缺省按密度类型取默认值
            tol: 求积容差
            gap_tol: 若给出，∫1/φ - Σ|a_k|² 低于该值时提前截断
            min_N: 提前截断时至少保留的阶数
        """
        self.density = density
        self.N = default_truncation(density) if N is None else N
        self.tol = config.DEFAULT_TOL if tol is None else tol
        self.gap_tol = gap_tol
        self.min_N = min_N
        self._result: Optional[PipelineResult] = None

    def run(self) -> PipelineResult:
        if self._result is not None:
            return self._result

        logger.info("Step 1: 计算 log φ 的 Fourier 系数 (N=%d, tol=%.1e)", self.N, self.tol)
        u = log_fourier_coefficients(self.density, self.N, self.tol)

        logger.info("Step 2: 递推 ψ 与 S 的系数")
        a = psi_coefficients(u)
        c = szego_coefficients(u)
        N = self.N
        gap = None

        if self.gap_tol is not None:
            logger.info("Step 3: 计算对角极限并检查尾部")
            limit = diagonal_limit(self.density, self.tol)
            gaps = limit - np.cumsum(np.abs(a.coeffs) ** 2)
            below = np.flatnonzero(gaps[self.min_N:] < self.gap_tol)
            if below.size:
                N = int(below[0]) + self.min_N
                a, c = a.truncated(N), c.truncated(N)
                logger.info("对角差 %.3e 低于 %.1e，在 N=%d 处截断", gaps[N], self.gap_tol, N)
            gap = float(gaps[N])

        self._result = PipelineResult(u, a, c, N, self.tol, gap)
        return self._result

    def inverse_block(self, n: int) -> InverseBlock:
        result = self.run()
        return inverse_block(result.a, n, result.N, result.tol)

    def whittle_matrix(self, n: int) -> np.ndarray:
        logger.info("计算 %d×%d Whittle 矩阵", n, n)
        return whittle_matrix(self.density, n, self.tol)

    def validate(self, n: int, m: int) -> Tuple[InverseBlock, OracleReport]:
        block = self.inverse_block(n)
        logger.info("有限截断校验: m=%d, n=%d", m, n)
        oracle, min_pivot = run_oracle(self.density, m, n, self.tol)
        report = compare_blocks(block, oracle, m, min_pivot)
        logger.info("最大差 %.3e, Frobenius 差 %.3e", report.max_abs_diff, report.frobenius_diff)
        return block, report


def compute_block(density: SpectralDensity, n: int, N: int = None,
                  tol: float = None) -> Tuple[bool, str, Optional[InverseBlock]]:
    """便捷函数：计算 G⁻¹ 的 n×n 角块"""
    try:
        block = SzegoPipeline(density, N, tol).inverse_block(n)
    except SzegoError as e:
        return False, f"计算失败: {e}", None
    return True, "计算成功", block


def run_validation(density: SpectralDensity, n: int, m: int, bound: float, N: int = None,
                   tol: float = None) -> Tuple[bool, str, Optional[OracleReport]]:
    """便捷函数：与有限截断比较，最大差不超过 bound 时成功"""
    try:
        _, report = SzegoPipeline(density, N, tol).validate(n, m)
    except SzegoError as e:
        return False, f"校验失败: {e}", None
    if report.max_abs_diff > bound:
        return False, f"最大差 {report.max_abs_diff:.3e} 超过界限 {bound:.1e}", report
    return True, "校验通过", report
