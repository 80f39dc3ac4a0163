"""
逆矩阵组装模块
由 ψ 的系数 a_n 组装 G⁻¹ 的元素和左上角块，并提供再生核、Q_n 多项式与 Whittle 近似
"""

import logging
from dataclasses import dataclass
from typing import Callable, List, NamedTuple, Optional

import numpy as np
from scipy.linalg import LinAlgError, cholesky, toeplitz

from szego.errors import CoefficientRangeError, DomainError
from szego.quadrature import fourier_integrals, integrate, integrate_batch
from szego.spectral_density import SpectralDensity
from szego.szego_transform import SeriesLike, as_coefficients

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class InverseBlock:
    """
    G⁻¹ 的左上角 n×n 块

    对外的 entry(k, j) 是 1 起始下标；entries 内部按 0 起始存储，
    只由下三角决定，上三角取共轭，对角线为实数
    """
    entries: np.ndarray
    N: Optional[int] = None
    tol: Optional[float] = None

    def __post_init__(self):
        m = np.asarray(self.entries, dtype=complex)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise DomainError(f"逆矩阵块必须是方阵，得到形状 {m.shape}")
        lower = np.tril(m, -1)
        herm = lower + lower.conj().T + np.diag(np.real(np.diag(m)).astype(complex))
        herm.setflags(write=False)
        object.__setattr__(self, 'entries', herm)

    @property
    def n(self) -> int:
        return self.entries.shape[0]

    @property
    def meta(self) -> dict:
        return {'N': self.N, 'tol': self.tol}

    def entry(self, k: int, j: int) -> complex:
        if not (1 <= k <= self.n and 1 <= j <= self.n):
            raise CoefficientRangeError(f"下标 ({k}, {j}) 超出 {self.n}×{self.n} 块")
        return complex(self.entries[k - 1, j - 1])

    def diagonal(self) -> np.ndarray:
        return np.real(np.diag(self.entries))


class WhittleEntry(NamedTuple):
    """Whittle 矩阵元素 Γ_{k,j}，只依赖 k - j"""
    value: complex
    k: int
    j: int

    def __complex__(self):
        return complex(self.value)


def _require(a: np.ndarray, count: int) -> None:
    if count > a.size:
        raise CoefficientRangeError(f"需要 a_0…a_{count - 1}，只有 {a.size} 个系数")


def inverse_entry(a: SeriesLike, k: int, j: int) -> complex:
    """
    (G⁻¹)_{k,j} = Σ_{i<j} conj(a_i) a_{i+k-j}，j ≤ k；j > k 时取 (j,k) 的共轭

    Args:
        a: ψ 的系数
        k, j: 1 起始的行、列下标
    """
    if k < 1 or j < 1:
        raise CoefficientRangeError(f"下标从 1 开始，得到 ({k}, {j})")
    if j > k:
        return inverse_entry(a, j, k).conjugate()
    a = as_coefficients(a)
    _require(a, k)
    return complex(np.dot(np.conj(a[:j]), a[k - j:k]))


def _lower_toeplitz(a: np.ndarray, n: int) -> np.ndarray:
    return toeplitz(a[:n], np.zeros(n, dtype=complex))


def inverse_block(a: SeriesLike, n: int, N: int = None, tol: float = None) -> InverseBlock:
    """
    LU 形式 G⁻¹_{n×n} = L·L^H，L 为首列 a_0…a_{n-1} 的下三角 Toeplitz 矩阵

    Args:
        a: ψ 的系数 (CoefficientSeries 或数组)
        n: 块大小
    """
    source_tol = getattr(a, 'source_tol', None)
    a = as_coefficients(a)
    if n < 1:
        raise DomainError(f"块大小必须为正，得到 n = {n}")
    _require(a, n)
    L = _lower_toeplitz(a, n)
    return InverseBlock(L @ L.conj().T,
                        a.size - 1 if N is None else N,
                        source_tol if tol is None else tol)


def kernel_coefficient_block(a: SeriesLike, n: int) -> InverseBlock:
    """
    ψ(z)·conj(ψ(w))/(1 - z·conj(w)) 的 Taylor 系数 K[p, r]

    递推 K[p, r] = a_p conj(a_r) + K[p-1, r-1]；K[p, r] = (G⁻¹)_{p+1, r+1}
    """
    a = as_coefficients(a)
    _require(a, n)
    K = np.outer(a[:n], np.conj(a[:n]))
    for p in range(1, n):
        K[p, 1:] += K[p - 1, :-1]
    return InverseBlock(K, a.size - 1)


def reproducing_kernel(a: SeriesLike, z: complex, w: complex) -> complex:
    """K(z, w) = ψ(z)·conj(ψ(w)) / (1 - z·conj(w))，ψ 取截断级数"""
    z, w = complex(z), complex(w)
    if not (abs(z) < 1.0 and abs(w) < 1.0):
        raise DomainError("再生核只在单位圆盘内定义")
    a = as_coefficients(a)
    psi_z = np.polynomial.polynomial.polyval(z, a)
    psi_w = np.polynomial.polynomial.polyval(w, a)
    return complex(psi_z * np.conj(psi_w) / (1.0 - z * np.conj(w)))


def orthonormal_polynomials_Q(a: SeriesLike, n: int) -> List[np.ndarray]:
    """
    Q_k(z) = a_k + a_{k-1} z + … + a_0 z^k，k = 0…n

    Returns:
        升幂排列的系数向量列表
    """
    a = as_coefficients(a)
    if n < 0:
        raise CoefficientRangeError(f"多项式次数必须非负，得到 n = {n}")
    _require(a, n + 1)
    return [a[k::-1].copy() for k in range(n + 1)]


def q_polynomial_gram(a: SeriesLike, n: int, weight: Callable, tol: float) -> np.ndarray:
    """
    Q_0…Q_n 在权函数下的 Gram 矩阵 ∫ Q_i(e^{2πit}) conj(Q_j(e^{2πit})) w(t) dt

    Args:
        weight: 向量化权函数 weight(t, tc)
    """
    polys = orthonormal_polynomials_Q(a, n)

    def integrand(t, tc):
        e = np.exp(2j * np.pi * t)
        values = np.array([np.polynomial.polynomial.polyval(e, p) for p in polys])
        w = weight(t, tc)
        rows = values[:, None, :] * np.conj(values)[None, :, :] * w
        return rows.reshape(-1, t.size)

    flat, estimate = integrate_batch(integrand, tol)
    logger.debug("Q 多项式 Gram 矩阵 n=%d 误差估计 %.3e", n, estimate)
    return flat.reshape(n + 1, n + 1)


def q_polynomial_gram_inverse_weight(a: SeriesLike, n: int, d: SpectralDensity, tol: float) -> np.ndarray:
    """权函数取 1/φ 的 Gram 矩阵"""
    return q_polynomial_gram(a, n, lambda t, tc: 1.0 / d.evaluate(t, tc), tol)


def diagonal_limit(d: SpectralDensity, tol: float) -> float:
    """lim (G⁻¹)_{n,n} = ∫_0^1 dt/φ(t)"""
    value, estimate = integrate(lambda t, tc: 1.0 / d.evaluate(t, tc), tol)
    logger.debug("%r: ∫1/φ = %.12g, 误差估计 %.3e", d, value.real, estimate)
    return float(np.real(value))


def diagonal_gap(a: SeriesLike, d: SpectralDensity, tol: float) -> float:
    """∫1/φ - Σ|a_k|²，截断 ψ 的尾部平方和"""
    a = as_coefficients(a)
    return diagonal_limit(d, tol) - float(np.sum(np.abs(a) ** 2))


def _whittle_moments(d: SpectralDensity, lags, tol: float) -> np.ndarray:
    values, estimate = fourier_integrals(lambda t, tc: 1.0 / d.evaluate(t, tc), lags, tol, sign=-1)
    logger.debug("%r: Whittle 积分 %d 个, 误差估计 %.3e", d, len(values), estimate)
    return values


def whittle_entry(d: SpectralDensity, k: int, j: int, tol: float) -> WhittleEntry:
    """Γ_{k,j} = ∫ e^{-2πi(k-j)t}/φ(t) dt"""
    value = _whittle_moments(d, [k - j], tol)[0]
    return WhittleEntry(complex(value), k, j)


def whittle_matrix(d: SpectralDensity, n: int, tol: float) -> np.ndarray:
    """n×n 的 Whittle 矩阵，Hermitian Toeplitz"""
    moments = _whittle_moments(d, range(n), tol)
    moments[0] = moments[0].real
    return toeplitz(moments, np.conj(moments))


def is_cholesky_positive(block) -> bool:
    """Cholesky 分解成功即视为正定"""
    entries = block.entries if isinstance(block, InverseBlock) else np.asarray(block)
    try:
        cholesky(entries, lower=True)
    except LinAlgError:
        return False
    return True
