"""
Szegő 变换模块
log φ 的 Fourier 系数 u_k，以及 ψ = 1/S 与 S 的 Taylor 系数递推
"""

import logging
from dataclasses import dataclass
from typing import Sequence, Union

import numpy as np

import config
from szego.errors import DomainError, QuadratureError, SzegoConditionError
from szego.quadrature import fourier_integrals, integrate
from szego.spectral_density import SpectralDensity, log_density

logger = logging.getLogger(__name__)

ROLES = ('psi', 'szego')


@dataclass(frozen=True, eq=False)
class LogFourierCoeffs:
    """u_0 = -½∫log φ，u_k = -∫e^{-2πikt} log φ dt (k = 1…N)"""
    u: np.ndarray
    quad_tol: float
    N: int
    estimate: float = 0.0

    @property
    def v(self) -> np.ndarray:
        """S 的指数系数 v_k = -u_k"""
        return -self.u


@dataclass(frozen=True, eq=False)
class CoefficientSeries:
    """
    幂级数系数 (下标 0…N)

    role 为 'psi' 时是 ψ 的系数 a_n，为 'szego' 时是 S 的系数 c_n；
    两种情况下首项都是正实数
    """
    coeffs: np.ndarray
    role: str
    source_tol: float = 0.0

    def __post_init__(self):
        if self.role not in ROLES:
            raise DomainError(f"未知的系数类型: {self.role}")
        coeffs = np.asarray(self.coeffs, dtype=complex)
        if coeffs.ndim != 1 or coeffs.size == 0:
            raise DomainError("系数序列不能为空")
        if not (coeffs[0].real > 0.0 and abs(coeffs[0].imag) <= 1e-12):
            raise DomainError(f"首项系数必须是正实数，得到 {coeffs[0]}")
        coeffs[0] = coeffs[0].real
        object.__setattr__(self, 'coeffs', coeffs)

    @property
    def N(self) -> int:
        return self.coeffs.size - 1

    def __len__(self):
        return self.coeffs.size

    def __getitem__(self, index):
        return self.coeffs[index]

    def truncated(self, N: int) -> 'CoefficientSeries':
        return CoefficientSeries(self.coeffs[:N + 1].copy(), self.role, self.source_tol)

    def evaluate(self, z: complex) -> complex:
        return szego_eval_series(self.coeffs, z)


SeriesLike = Union[CoefficientSeries, Sequence[complex], np.ndarray]


def as_coefficients(series: SeriesLike) -> np.ndarray:
    if isinstance(series, CoefficientSeries):
        return series.coeffs
    return np.asarray(series, dtype=complex)


def log_fourier_coefficients(d: SpectralDensity, N: int, tol: float) -> LogFourierCoeffs:
    """
    计算 log φ 的 Fourier 系数

    Args:
        d: 谱密度
        N: 截断阶数
        tol: 每个积分的绝对误差容差

    Returns:
        LogFourierCoeffs，u 长度为 N + 1

    Raises:
        SzegoConditionError: log φ 在求积节点上发散
        QuadratureError: 求积未收敛
    """
    if N < 0:
        raise DomainError(f"截断阶数必须非负，得到 N = {N}")
    if not tol > 0.0:
        raise DomainError(f"容差必须为正，得到 tol = {tol}")
    try:
        integrals, estimate = fourier_integrals(log_density(d), range(N + 1), tol, sign=-1)
    except QuadratureError as e:
        if np.isinf(e.estimate):
            raise SzegoConditionError("log φ 在求积节点上不是有限值", e.estimate, tol) from e
        raise
    u = -integrals
    u[0] = 0.5 * u[0].real
    logger.debug("%r: u_0 = %.12g, N = %d, 误差估计 %.3e", d, u[0].real, N, estimate)
    return LogFourierCoeffs(u, tol, N, estimate)


def _exp_series(log_coeffs: np.ndarray, N: int) -> np.ndarray:
    """exp(Σ_k w_k z^k) 的 Taylor 系数：b_0 = e^{w_0}，(n+1) b_{n+1} = Σ_{j=1}^{n+1} j w_j b_{n+1-j}"""
    if log_coeffs.size < N + 1:
        raise DomainError(f"需要 {N + 1} 个对数系数，只有 {log_coeffs.size} 个")
    weighted = np.arange(N + 1) * log_coeffs[:N + 1]
    out = np.zeros(N + 1, dtype=complex)
    out[0] = np.exp(log_coeffs[0].real)
    for n in range(N):
        out[n + 1] = np.dot(weighted[1:n + 2], out[n::-1]) / (n + 1)
    return out


def psi_coefficients(u: LogFourierCoeffs, N: int = None) -> CoefficientSeries:
    """ψ(z) = exp(u_0 + Σ u_k z^k) 的系数 a_0…a_N"""
    N = u.N if N is None else N
    return CoefficientSeries(_exp_series(u.u, N), 'psi', u.quad_tol)


def szego_coefficients(u: LogFourierCoeffs, N: int = None) -> CoefficientSeries:
    """S(z) = exp(-u_0 - Σ u_k z^k) 的系数 c_0…c_N"""
    N = u.N if N is None else N
    return CoefficientSeries(_exp_series(u.v, N), 'szego', u.quad_tol)


def series_reciprocal(coeffs: SeriesLike, N: int) -> np.ndarray:
    """
    1/f 的 Taylor 系数 (下标 0…N)

    f 的系数不足 N + 1 个时视为补零
    """
    f = np.zeros(N + 1, dtype=complex)
    given = as_coefficients(coeffs)[:N + 1]
    f[:given.size] = given
    if f[0] == 0:
        raise DomainError("常数项为零的级数没有倒数")
    out = np.zeros(N + 1, dtype=complex)
    out[0] = 1.0 / f[0]
    for n in range(1, N + 1):
        out[n] = -np.dot(f[1:n + 1], out[n - 1::-1]) / f[0]
    return out


def series_reciprocal_residual(a: SeriesLike, c: SeriesLike) -> float:
    """max_n |Σ_{k≤n} a_k c_{n-k} - δ_{n,0}|，n 取到两者共同的截断阶"""
    a = as_coefficients(a)
    c = as_coefficients(c)
    size = min(a.size, c.size)
    product = np.convolve(a[:size], c[:size])[:size]
    product[0] -= 1.0
    return float(np.max(np.abs(product)))


def psi_from_polynomial_szego(c: SeriesLike, N: int) -> CoefficientSeries:
    """S 是多项式 (带状情形) 时直接对级数求倒数得到 ψ"""
    return CoefficientSeries(series_reciprocal(c, N), 'psi')


def szego_eval_series(coeffs: SeriesLike, z: complex) -> complex:
    """Σ c_n z^n"""
    return complex(np.polynomial.polynomial.polyval(z, as_coefficients(coeffs)))


def szego_eval_integral(d: SpectralDensity, z: complex, tol: float) -> complex:
    """
    直接求积 S(z) = exp(½∫ (e^{2πit}+z)/(e^{2πit}-z) log φ(t) dt)

    只用于和系数级数交叉检查
    """
    z = complex(z)
    if not abs(z) < 1.0:
        raise DomainError(f"S(z) 只在单位圆盘内定义，|z| = {abs(z)}")
    log_phi = log_density(d)

    def integrand(t, tc):
        e = np.exp(2j * np.pi * t)
        return (e + z) / (e - z) * log_phi(t, tc)

    try:
        value, estimate = integrate(integrand, tol)
    except QuadratureError as e:
        if np.isinf(e.estimate):
            raise SzegoConditionError("log φ 在求积节点上不是有限值", e.estimate, tol) from e
        raise
    logger.debug("S(%s) 求积误差估计 %.3e", z, estimate)
    return complex(np.exp(0.5 * value))


def default_truncation(d: SpectralDensity) -> int:
    """带状密度 4m + 16，其余 DEFAULT_N_FGN"""
    if d.band_order is not None:
        return config.default_banded_order(d.band_order)
    return config.DEFAULT_N_FGN
