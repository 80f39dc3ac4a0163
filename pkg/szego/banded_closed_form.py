"""
带状 Toeplitz 矩阵的闭式结果
三对角矩阵的显式逆、五对角矩阵的 Szegő 系数，以及 "S 是 m 次多项式" 的数值检查
"""

import logging
import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

import config
from szego.errors import DegenerateDenominatorError, DomainError
from szego.inverse_assembly import InverseBlock
from szego.spectral_density import (BandedDensity, SpectralDensity, density_fourier_coefficient,
                                    szego_condition_report)
from szego.szego_transform import (CoefficientSeries, log_fourier_coefficients,
                                   psi_from_polynomial_szego, szego_coefficients)

logger = logging.getLogger(__name__)

# |q| 必须严格小于 1/2
TRIDIAGONAL_MARGIN = 1e-12
DEGENERATE_DENOMINATOR = 1e-14


@dataclass(frozen=True)
class TridiagonalSpec:
    """首行为 (1, q, 0, 0, …) 的 Hermitian 三对角 Toeplitz 矩阵"""
    q: complex

    def __post_init__(self):
        object.__setattr__(self, 'q', complex(self.q))
        if not abs(self.q) < 0.5 - TRIDIAGONAL_MARGIN:
            raise DomainError(f"三对角情形要求 |q| < 1/2，得到 |q| = {abs(self.q)}")

    @property
    def c0(self) -> float:
        """c_0 = √((1 + √(1 - 4|q|²)) / 2)"""
        return math.sqrt((1.0 + math.sqrt(1.0 - 4.0 * abs(self.q) ** 2)) / 2.0)

    def density(self) -> BandedDensity:
        # g_{1,2} = γ(1) = q，对应带状系数 conj(q)
        return BandedDensity([self.q.conjugate()])


def tridiagonal_inverse_entry(spec: TridiagonalSpec, k: int, j: int) -> complex:
    """
    三对角矩阵逆的显式元素 (1 起始下标)

    j ≤ k 时 (-1)^{j+k} c_0^{2(1-k-j)} conj(q)^{k-j} (c_0^{4j} - |q|^{2j}) / (c_0⁴ - |q|²)
    """
    if k < 1 or j < 1:
        raise DomainError(f"下标从 1 开始，得到 ({k}, {j})")
    if j > k:
        return tridiagonal_inverse_entry(spec, j, k).conjugate()
    c0 = spec.c0
    q2 = abs(spec.q) ** 2
    sign = -1.0 if (j + k) % 2 else 1.0
    # 用 c_0^{4j} - |q|^{2j} = c_0^{4j} (1 - r^j) 避免大 j 时上溢
    r = q2 / c0 ** 4
    ratio = (1.0 - r ** j) / (1.0 - r)
    return complex(sign * c0 ** (-2 * (k - j) - 2) * spec.q.conjugate() ** (k - j) * ratio)


def tridiagonal_inverse_block(spec: TridiagonalSpec, n: int) -> InverseBlock:
    entries = np.array([[tridiagonal_inverse_entry(spec, k, j) for j in range(1, n + 1)]
                        for k in range(1, n + 1)], dtype=complex)
    return InverseBlock(entries)


def tridiagonal_psi_coefficients(spec: TridiagonalSpec, N: int) -> CoefficientSeries:
    """
    a_n = (-1)^n conj(q)^n / c_0^{2n+1}，即 ψ(z) = 1/(c_0 + (conj(q)/c_0) z) 的展开

    与 spec.density() 的 ψ 一致；实数 q 时就是 1/(c_0 + (q/c_0) z)
    """
    c0 = spec.c0
    n = np.arange(N + 1)
    coeffs = (-spec.q.conjugate() / c0 ** 2) ** n / c0
    return CoefficientSeries(coeffs.astype(complex), 'psi')


def tridiagonal_szego_coefficients(spec: TridiagonalSpec) -> CoefficientSeries:
    """S(z) = c_0 + (conj(q)/c_0) z"""
    c0 = spec.c0
    return CoefficientSeries(np.array([c0, spec.q.conjugate() / c0], dtype=complex), 'szego')


def tridiagonal_psi_real_form(q: float, z: complex) -> complex:
    """
    实 q 时 ψ 的另一种写法 ψ(z) = (2/|q|)^{1/2} / (α + βz)

    α = √(1/|q| + √(1/q² - 4))，β = (2/α) sign(q)
    """
    q = complex(q)
    if q.imag != 0.0:
        raise DomainError("只对实数 q 成立")
    q = q.real
    if q == 0.0:
        raise DomainError("q = 0 时该表达式无定义")
    if not abs(q) < 0.5 - TRIDIAGONAL_MARGIN:
        raise DomainError(f"要求 |q| < 1/2，得到 {q}")
    alpha = math.sqrt(1.0 / abs(q) + math.sqrt(1.0 / q ** 2 - 4.0))
    beta = math.copysign(2.0 / alpha, q)
    return complex(math.sqrt(2.0 / abs(q)) / (alpha + beta * complex(z)))


def banded_c0(d: SpectralDensity, tol: float) -> float:
    """c_0 = exp(½∫log φ)，带状情形没有闭式，只能求积"""
    report = szego_condition_report(d, tol)
    return math.exp(0.5 * report.log_integral)


def pentadiagonal_szego_coefficients(q1: complex, q2: complex, c0: float) -> CoefficientSeries:
    """
    五对角情形 S 的三个非零系数

    c_1 = c_0 (c_0² q_1 - q_2 conj(q_1)) / (c_0⁴ - |q_2|²)，c_2 = q_2 / c_0
    """
    q1, q2 = complex(q1), complex(q2)
    denominator = c0 ** 4 - abs(q2) ** 2
    if abs(denominator) < DEGENERATE_DENOMINATOR:
        raise DegenerateDenominatorError(f"c_0⁴ - |q_2|² = {denominator:.3e} 退化")
    c1 = c0 * (c0 ** 2 * q1 - q2 * q1.conjugate()) / denominator
    return CoefficientSeries(np.array([c0, c1, q2 / c0], dtype=complex), 'szego')


def pentadiagonal_psi_coefficients(q1: complex, q2: complex, c0: float, N: int) -> CoefficientSeries:
    return psi_from_polynomial_szego(pentadiagonal_szego_coefficients(q1, q2, c0), N)


@dataclass(frozen=True)
class ConjectureReport:
    m: int
    N: int
    tol: float
    is_polynomial_degree_m: bool
    max_tail_coefficient: float
    coefficients: CoefficientSeries

    def to_dict(self):
        return {
            'm': self.m,
            'N': self.N,
            'tol': self.tol,
            'is_polynomial_degree_m': self.is_polynomial_degree_m,
            'max_tail_coefficient': self.max_tail_coefficient,
        }


def polynomial_conjecture_check(q: Sequence[complex], N: int = None, tol: float = None,
                                quad_tol: float = None) -> ConjectureReport:
    """
    用通用流程算 c_0…c_N，检查 k > m 的系数是否都在 tol 以下

    Args:
        q: 带状系数 q_1…q_m
        N: 截断阶数，缺省 4m + 16
        tol: 尾部阈值，缺省 100 × quad_tol
    """
    d = BandedDensity(q)
    m = d.band_order
    quad_tol = quad_tol or config.DEFAULT_TOL
    N = config.default_banded_order(m) if N is None else N
    tol = 100.0 * quad_tol if tol is None else tol
    c = szego_coefficients(log_fourier_coefficients(d, N, quad_tol), N)
    tail = np.abs(c.coeffs[m + 1:])
    max_tail = float(np.max(tail)) if tail.size else 0.0
    logger.info("m=%d, N=%d: 尾部系数最大模 %.3e (阈值 %.1e)", m, N, max_tail, tol)
    return ConjectureReport(m, N, tol, max_tail <= tol, max_tail, c)


def nearest_neighbour_approximation(d: SpectralDensity, tol: float = None) -> TridiagonalSpec:
    """
    只保留 γ(0) 与 γ(±1) 的三对角近似，按 γ(0) 归一化

    逆矩阵需再除以 γ(0)
    """
    if d.has_closed_form_autocovariance:
        g0, g1 = d.autocovariance(0), d.autocovariance(1)
    else:
        tol = tol or config.DEFAULT_TOL
        g0 = density_fourier_coefficient(d, 0, tol)
        g1 = density_fourier_coefficient(d, 1, tol)
    return TridiagonalSpec(complex(g1) / complex(g0).real)
