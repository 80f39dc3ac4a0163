"""
复合 Gauss-Legendre 求积
(0,1) 均匀分段，首尾两段向端点二分加密；误差用 order 与 2*order 两套节点的差估计
"""

import logging
import math
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, List, NamedTuple, Sequence, Tuple

import numpy as np

import config
from szego.errors import QuadratureError

logger = logging.getLogger(__name__)

# func(t, tc) -> values，tc = 1 - t 精确给出，避免在 t 接近 1 时相减丢精度
Integrand = Callable[[np.ndarray, np.ndarray], np.ndarray]


class QuadratureNodes(NamedTuple):
    t: np.ndarray
    tc: np.ndarray
    w: np.ndarray


def _panel_edges(panels: int, depth: int) -> List[Tuple[float, float]]:
    """[0, 1/2] 上的子区间：第一段二分到宽度 ≤ 2^-depth，其余均匀"""
    h = 1.0 / panels
    edges = []
    levels = max(0, depth - int(round(math.log2(panels))))
    lo = h * 2.0 ** (-levels)
    edges.append((0.0, lo))
    for _ in range(levels):
        edges.append((lo, 2.0 * lo))
        lo *= 2.0
    for i in range(1, panels // 2):
        edges.append((i * h, (i + 1) * h))
    return edges


def build_rule(order: int, panels: int, depth: int) -> QuadratureNodes:
    """
    生成对称的复合求积规则

    Args:
        order: 每段 Gauss-Legendre 节点数
        panels: 均匀分段数 (2 的幂)
        depth: 端点二分加密的深度

    Returns:
        (t, 1 - t, 权重)
    """
    xi, wi = np.polynomial.legendre.leggauss(order)
    edges = _panel_edges(panels, depth)
    # 紧贴端点的一段用 t = lo·u^p 代换，t^α (α > -1) 变成 u 的低次幂
    p = config.ENDPOINT_GRADING
    u = 0.5 * (xi + 1.0)
    lo = edges[0][1]
    left_t = [lo * u ** p]
    left_w = [lo * p * u ** (p - 1) * 0.5 * wi]
    for lo, hi in edges[1:]:
        half = 0.5 * (hi - lo)
        left_t.append(0.5 * (hi + lo) + half * xi)
        left_w.append(half * wi)
    s = np.concatenate(left_t)
    w = np.concatenate(left_w)
    # 右半部分由左半部分镜像得到，补数直接取左侧节点
    t = np.concatenate([s, 1.0 - s])
    tc = np.concatenate([1.0 - s, s])
    return QuadratureNodes(t, tc, np.concatenate([w, w]))


def _panels_for(min_panels: int) -> int:
    return 2 ** max(1, int(math.ceil(math.log2(max(2, min_panels)))))


def integrate(func: Integrand, tol: float, order: int = None,
              min_panels: int = None, max_refine: int = None) -> Tuple[complex, float]:
    """
    ∫_0^1 func(t) dt

    Args:
        func: 向量化被积函数 func(t, tc)
        tol: 绝对误差容差

    Returns:
        (积分值, 误差估计)
    """
    values, estimate = integrate_batch(lambda t, tc: func(t, tc)[None, :], tol, order, min_panels, max_refine)
    return values[0], estimate


def integrate_batch(func: Callable[[np.ndarray, np.ndarray], np.ndarray], tol: float,
                    order: int = None, min_panels: int = None,
                    max_refine: int = None) -> Tuple[np.ndarray, float]:
    """对 func 返回的每一行分别积分 (形状 rows × nodes)，误差取各行的最大值"""
    order = order or config.QUADRATURE_ORDER
    panels = _panels_for(min_panels or config.MIN_PANELS)
    max_refine = config.QUADRATURE_MAX_REFINE if max_refine is None else max_refine
    depth = config.DYADIC_DEPTH
    estimate = float('inf')
    for level in range(max_refine + 1):
        low_rule = build_rule(order, panels, depth)
        high_rule = build_rule(2 * order, panels, depth)
        low = func(low_rule.t, low_rule.tc) @ low_rule.w
        high = func(high_rule.t, high_rule.tc) @ high_rule.w
        if not np.all(np.isfinite(high)):
            raise QuadratureError("被积函数在求积节点上出现非有限值", float('inf'), tol)
        estimate = float(np.max(np.abs(high - low)))
        logger.debug("求积 level=%d panels=%d depth=%d 误差估计=%.3e", level, panels, depth, estimate)
        if estimate <= tol:
            return high, estimate
        panels *= 2
        depth += 20
    raise QuadratureError("求积未收敛", estimate, tol)


def _fourier_chunk(ks: np.ndarray, sign: int, rule: QuadratureNodes, weighted: np.ndarray) -> np.ndarray:
    phase = np.exp(sign * 2j * np.pi * np.outer(ks, rule.t))
    return phase @ weighted


def fourier_integrals(func: Integrand, ks: Sequence[int], tol: float, sign: int = -1,
                      order: int = None, max_refine: int = None,
                      threads: int = None) -> Tuple[np.ndarray, float]:
    """
    批量计算 ∫_0^1 e^{sign·2πikt} func(t) dt，func 在每套节点上只求值一次

    不同 k 的积分相互独立，按块交给线程池
    """
    ks = np.asarray(list(ks), dtype=float)
    order = order or config.QUADRATURE_ORDER
    max_refine = config.QUADRATURE_MAX_REFINE if max_refine is None else max_refine
    threads = threads or config.SZEGO_THREADS
    kmax = int(np.max(np.abs(ks))) if ks.size else 0
    panels = _panels_for(max(config.MIN_PANELS, kmax))
    depth = config.DYADIC_DEPTH
    chunks = [ks[i:i + 32] for i in range(0, ks.size, 32)]

    def run(rule: QuadratureNodes) -> np.ndarray:
        weighted = rule.w * func(rule.t, rule.tc)
        if not np.all(np.isfinite(weighted)):
            raise QuadratureError("被积函数在求积节点上出现非有限值", float('inf'), tol)
        if len(chunks) <= 1 or threads == 1:
            return np.concatenate([_fourier_chunk(c, sign, rule, weighted) for c in chunks])
        with ThreadPoolExecutor(max_workers=threads) as pool:
            parts = list(pool.map(lambda c: _fourier_chunk(c, sign, rule, weighted), chunks))
        return np.concatenate(parts)

    estimate = float('inf')
    for level in range(max_refine + 1):
        low = run(build_rule(order, panels, depth))
        high = run(build_rule(2 * order, panels, depth))
        estimate = float(np.max(np.abs(high - low)))
        logger.debug("Fourier 求积 level=%d panels=%d k_max=%d 误差估计=%.3e", level, panels, kmax, estimate)
        if estimate <= tol:
            return high, estimate
        panels *= 2
        depth += 20
    raise QuadratureError("Fourier 求积未收敛", estimate, tol)
