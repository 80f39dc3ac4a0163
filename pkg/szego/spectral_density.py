"""
谱密度模块
谱密度抽象、分数高斯噪声 (fGn) 密度与带状 (2m+1 对角) 密度，以及 Szegő 条件检查
"""

import logging
import math
from abc import ABC, abstractmethod
from dataclasses import dataclass
from typing import Any, Dict, Optional, Sequence, Tuple

import numpy as np
from scipy.optimize import minimize_scalar

import config
from szego.errors import ConfigError, DomainError, QuadratureError, SzegoConditionError
from szego.formats import decode_complex, encode_series
from szego.quadrature import fourier_integrals, integrate
from szego.special_functions import hurwitz_zeta, riemann_zeta

logger = logging.getLogger(__name__)


class SpectralDensity(ABC):
    """谱密度 φ 的抽象基类，φ 定义在 (0,1) 上"""

    @abstractmethod
    def evaluate(self, t: np.ndarray, tc: Optional[np.ndarray] = None) -> np.ndarray:
        """
        在 t 处求 φ(t)

        Args:
            t: (0,1) 内的节点
            tc: 1 - t；求积规则会精确给出，缺省时现算
        """

    @property
    def band_order(self) -> Optional[int]:
        """三角多项式的次数 m，非带状密度返回 None"""
        return None

    def autocovariance(self, k: int) -> Optional[complex]:
        """闭式自协方差 γ(k)；没有闭式时返回 None"""
        return None

    @property
    def has_closed_form_autocovariance(self) -> bool:
        return self.autocovariance(0) is not None

    @abstractmethod
    def describe(self) -> Dict[str, Any]:
        """与密度描述文件相同格式的字典"""

    def __call__(self, t, tc=None):
        return self.evaluate(t, tc)


def _open_interval_nodes(t, tc=None) -> Tuple[np.ndarray, np.ndarray]:
    """
    检查节点落在 (0,1) 内，返回 (t, 1 - t)

    给出 tc 时以 tc 为准：t 接近 1 时 t 可能舍入成 1.0，但 tc 仍是精确的正数
    """
    t = np.asarray(t, dtype=float)
    tc = 1.0 - t if tc is None else np.asarray(tc, dtype=float)
    if np.any(~(t > 0.0)) or np.any(~(tc > 0.0)):
        raise DomainError("谱密度只在开区间 (0,1) 上求值")
    return t, tc


def _check_hurst(H: float) -> None:
    if not 0.0 < H < 1.0:
        raise DomainError(f"Hurst 指数必须在 (0,1) 内，得到 H = {H}")


def fgn_autocovariance(H: float, k: int) -> float:
    """fGn 自协方差 ½|k+1|^{2H} + ½|k-1|^{2H} - |k|^{2H}"""
    _check_hurst(H)
    e = 2.0 * H
    return 0.5 * abs(k + 1) ** e + 0.5 * abs(k - 1) ** e - abs(k) ** e


def fgn_normalizer(H: float) -> float:
    """C(H) = -ζ(-2H) / (2 ζ(1+2H))"""
    _check_hurst(H)
    return -riemann_zeta(-2.0 * H) / (2.0 * riemann_zeta(1.0 + 2.0 * H))


class FgnDensity(SpectralDensity):
    """分数高斯噪声的谱密度 φ_H(t) = 4C(H) sin²(πt) (ζ(2H+1,t) + ζ(2H+1,1-t))"""

    def __init__(self, H: float):
        _check_hurst(H)
        self.H = float(H)
        self.normalizer = fgn_normalizer(self.H)

    def evaluate(self, t, tc=None):
        t, tc = _open_interval_nodes(t, tc)
        s = 2.0 * self.H + 1.0
        # sin(πt) = sin(π(1-t))，取较小的一个保证端点附近的精度
        sine = np.sin(np.pi * np.minimum(t, tc))
        return 4.0 * self.normalizer * sine * sine * (hurwitz_zeta(s, t) + hurwitz_zeta(s, tc))

    def autocovariance(self, k):
        return complex(fgn_autocovariance(self.H, k))

    def describe(self):
        return {'kind': 'fgn', 'H': self.H}

    def __repr__(self):
        return f"FgnDensity(H={self.H})"


def fgn_density_eval(H: float, t: float) -> float:
    """单点求 φ_H(t)"""
    return float(FgnDensity(H).evaluate(np.array(t)))


class BandedDensity(SpectralDensity):
    """
    带状密度 φ(t) = 1 + Σ_k (q_k e^{2πikt} + conj(q_k) e^{-2πikt})

    构造时检查严格正定 (网格 + 局部加密)，否则抛 DomainError
    """

    def __init__(self, q: Sequence[complex], grid: int = None, floor: float = None):
        self.q = tuple(complex(v) for v in q)
        self._k = np.arange(1, len(self.q) + 1, dtype=float)
        self._q = np.array(self.q, dtype=complex)
        self.min_value = self._verify_positive(grid or config.POSITIVITY_GRID,
                                               config.POSITIVITY_FLOOR if floor is None else floor)

    def _eval_closed(self, t: np.ndarray) -> np.ndarray:
        t = np.asarray(t, dtype=float)
        if not self.q:
            return np.ones_like(t)
        phases = np.exp(2j * np.pi * np.multiply.outer(t, self._k))
        return 1.0 + 2.0 * np.real(phases @ self._q)

    def _verify_positive(self, grid: int, floor: float) -> float:
        if not self.q:
            return 1.0
        t = (np.arange(grid) + 0.5) / grid
        values = self._eval_closed(t)
        suspects = set(np.flatnonzero(values < floor).tolist())
        suspects.add(int(np.argmin(values)))
        lowest = float(np.min(values))
        h = 1.0 / grid
        for i in sorted(suspects):
            res = minimize_scalar(lambda x: float(self._eval_closed(np.array(x))),
                                  bounds=(t[i] - h, t[i] + h), method='bounded',
                                  options={'xatol': 1e-12})
            lowest = min(lowest, float(res.fun))
        if not lowest > config.POSITIVITY_STRICT:
            raise DomainError(f"带状谱密度不是严格正的 (最小值 {lowest:.3e})，矩阵不正定")
        logger.debug("带状密度 m=%d 最小值 %.6g", len(self.q), lowest)
        return lowest

    @property
    def band_order(self):
        return len(self.q)

    def evaluate(self, t, tc=None):
        t, _ = _open_interval_nodes(t, tc)
        return self._eval_closed(t)

    def autocovariance(self, k):
        k = int(k)
        if k == 0:
            return 1.0 + 0.0j
        m = len(self.q)
        if 1 <= k <= m:
            return self.q[k - 1].conjugate()
        if -m <= k <= -1:
            return self.q[-k - 1]
        return 0.0 + 0.0j

    def describe(self):
        return {'kind': 'banded', 'q': encode_series(self.q)}

    def __repr__(self):
        return f"BandedDensity(q={list(self.q)})"


def create_density(spec: Dict[str, Any]) -> SpectralDensity:
    """
    工厂函数：根据描述字典创建谱密度

    Args:
        spec: {"kind": "fgn", "H": ...}、{"kind": "banded", "q": [...]}
              或 {"kind": "tridiagonal", "q": {...}} (首行为 1, q, 0, ... 的三对角矩阵)
    """
    kind = str(spec.get('kind', '')).lower()
    try:
        if kind == 'fgn':
            return FgnDensity(float(spec['H']))
        if kind == 'banded':
            return BandedDensity([decode_complex(v) for v in spec.get('q', [])])
        if kind == 'tridiagonal':
            # γ(1) = q 对应的带状系数是 conj(q)
            return BandedDensity([decode_complex(spec['q']).conjugate()])
    except (KeyError, TypeError, ValueError) as e:
        if isinstance(e, DomainError):
            raise
        raise ConfigError(f"密度描述无效: {spec!r}") from e
    raise ConfigError(f"未知的密度类型: {kind!r}")


def density_fourier_coefficient(d: SpectralDensity, k: int, tol: float) -> complex:
    """∫_0^1 e^{2πikt} φ(t) dt"""
    values, estimate = fourier_integrals(d.evaluate, [k], tol, sign=+1)
    logger.debug("%r 的 Fourier 系数 k=%d 误差估计 %.3e", d, k, estimate)
    return complex(values[0])


def autocovariance_sequence(d: SpectralDensity, count: int, tol: float = None) -> np.ndarray:
    """γ(0), …, γ(count-1)，有闭式时用闭式，否则用求积"""
    if d.has_closed_form_autocovariance:
        return np.array([d.autocovariance(k) for k in range(count)], dtype=complex)
    values, _ = fourier_integrals(d.evaluate, range(count), tol or config.DEFAULT_TOL, sign=+1)
    return values


@dataclass(frozen=True)
class SzegoConditionReport:
    min_sampled_density: float
    log_integral: float
    error_estimate: float


def log_density(d: SpectralDensity):
    """返回求积用的 log φ(t, tc)，φ 为 0 时给出 -inf"""
    def func(t, tc):
        with np.errstate(divide='ignore', invalid='ignore'):
            return np.log(d.evaluate(t, tc))
    return func


def szego_condition_report(d: SpectralDensity, tol: float, grid: int = None) -> SzegoConditionReport:
    """
    检查 Szegő 条件 ∫ log φ > -∞

    Returns:
        采样最小值与 ∫_0^1 log φ(t) dt

    Raises:
        SzegoConditionError: 积分不稳定 (数值上不满足 Szegő 条件)
    """
    grid = grid or config.POSITIVITY_GRID
    t = (np.arange(grid) + 0.5) / grid
    minimum = float(np.min(d.evaluate(t)))
    try:
        value, estimate = integrate(log_density(d), tol)
    except QuadratureError as e:
        raise SzegoConditionError("log φ 的积分不收敛，Szegő 条件在数值上不成立", e.estimate, tol) from e
    value = float(np.real(value))
    if not math.isfinite(value):
        raise SzegoConditionError("log φ 的积分发散", float('inf'), tol)
    return SzegoConditionReport(minimum, value, estimate)
