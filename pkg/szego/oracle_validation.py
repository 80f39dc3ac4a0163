"""
有限截断校验
由 γ(k) 构造 m×m 协方差矩阵，Cholesky 分解求逆，与 Szegő 方法的角块比较
"""

import logging
from dataclasses import asdict, dataclass
from typing import Callable, Optional, Tuple, Union

import numpy as np
from scipy.linalg import LinAlgError, cho_solve, cholesky, toeplitz

import config
from szego.errors import DimensionMismatchError, DomainError, NotPositiveDefiniteError
from szego.inverse_assembly import InverseBlock
from szego.spectral_density import SpectralDensity, autocovariance_sequence

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class OracleReport:
    m: Optional[int]
    n: int
    max_abs_diff: float
    frobenius_diff: float
    cholesky_min_pivot: Optional[float] = None

    def to_dict(self):
        return asdict(self)


def finite_section_matrix(source: Union[SpectralDensity, Callable[[int], complex]], m: int,
                          tol: float = None) -> np.ndarray:
    """
    m×m 截断 g_{k,j} = γ(j - k)

    Args:
        source: 谱密度 (有闭式 γ 时用闭式，否则求积) 或函数 k -> γ(k)
        m: 截断大小
    """
    if m < 1:
        raise DomainError(f"截断大小必须为正，得到 m = {m}")
    if isinstance(source, SpectralDensity):
        gamma = autocovariance_sequence(source, m, tol or config.DEFAULT_TOL)
    else:
        gamma = np.array([source(k) for k in range(m)], dtype=complex)
    gamma[0] = gamma[0].real
    # 第一行是 γ(0), γ(1), …；第一列是 γ(0), γ(-1) = conj(γ(1)), …
    return toeplitz(np.conj(gamma), gamma)


def cholesky_factor(M: np.ndarray) -> Tuple[np.ndarray, float]:
    """
    下三角 Cholesky 因子与最小主元 (L 对角元的平方)

    Raises:
        NotPositiveDefiniteError: 矩阵不正定
    """
    try:
        L = cholesky(M, lower=True)
    except LinAlgError as e:
        raise NotPositiveDefiniteError(f"{M.shape[0]}×{M.shape[0]} 截断矩阵不正定") from e
    pivots = np.real(np.diag(L)) ** 2
    min_pivot = float(np.min(pivots))
    if not min_pivot > 0.0:
        raise NotPositiveDefiniteError("Cholesky 主元非正", min_pivot)
    return L, min_pivot


def finite_section_inverse_block(M: np.ndarray, n: int) -> InverseBlock:
    """M⁻¹ 的左上角 n×n 块，只解前 n 列"""
    block, _ = finite_section_inverse(M, n)
    return block


def finite_section_inverse(M: np.ndarray, n: int) -> Tuple[InverseBlock, float]:
    """同 finite_section_inverse_block，额外返回最小主元"""
    m = M.shape[0]
    if not 1 <= n <= m:
        raise DimensionMismatchError(f"块大小 n = {n} 必须在 1 与 m = {m} 之间")
    L, min_pivot = cholesky_factor(M)
    rhs = np.eye(m, n, dtype=complex)
    columns = cho_solve((L, True), rhs)
    logger.debug("有限截断 m=%d 求逆完成，最小主元 %.6g", m, min_pivot)
    return InverseBlock(columns[:n, :]), min_pivot


def compare_blocks(A: InverseBlock, B: InverseBlock, m: int = None,
                   min_pivot: float = None) -> OracleReport:
    """逐元素最大差与 Frobenius 差"""
    if A.n != B.n:
        raise DimensionMismatchError(f"块大小不一致: {A.n} 与 {B.n}")
    diff = A.entries - B.entries
    return OracleReport(m, A.n, float(np.max(np.abs(diff))), float(np.linalg.norm(diff)), min_pivot)


def run_oracle(d: SpectralDensity, m: int, n: int, tol: float = None) -> Tuple[InverseBlock, float]:
    """构造截断矩阵并求逆角块，返回 (角块, 最小主元)"""
    M = finite_section_matrix(d, m, tol)
    return finite_section_inverse(M, n)
