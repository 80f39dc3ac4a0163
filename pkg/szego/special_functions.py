"""
特殊函数模块
fGn 谱密度需要的实变量 Hurwitz zeta、Riemann zeta 与 log Gamma
"""

import math
from typing import Union

import numpy as np
from scipy.special import gammaln

from szego.errors import DomainError, PoleError

ArrayLike = Union[float, np.ndarray]

# 直接求和的项数，余项用 Euler-Maclaurin 修正
EM_SHIFT = 15

# B_2, B_4, ..., B_12
BERNOULLI_EVEN = (1.0 / 6.0, -1.0 / 30.0, 1.0 / 42.0, -1.0 / 30.0, 5.0 / 66.0, -691.0 / 2730.0)


def _euler_maclaurin(s: float, a: np.ndarray) -> np.ndarray:
    """
    Euler-Maclaurin 求和: 先直接求前 EM_SHIFT 项，再加积分尾项与 Bernoulli 修正

    对 s > 1 收敛；对 s < 1 (s != 1) 给出解析延拓的值，只在 a = 1 时内部使用
    """
    a = np.asarray(a, dtype=float)
    total = np.zeros_like(a)
    for n in range(EM_SHIFT):
        total += (n + a) ** (-s)

    x = EM_SHIFT + a
    total += x ** (1.0 - s) / (s - 1.0) + 0.5 * x ** (-s)

    # (s)_{2k-1} / (2k)! * B_{2k} * x^{-s-2k+1}
    rising = s
    factorial = 2.0
    power = x ** (-s - 1.0)
    for k, b2k in enumerate(BERNOULLI_EVEN, start=1):
        total += b2k / factorial * rising * power
        rising *= (s + 2 * k - 1) * (s + 2 * k)
        factorial *= (2 * k + 1) * (2 * k + 2)
        power = power / (x * x)
    return total


def hurwitz_zeta(s: float, a: ArrayLike) -> ArrayLike:
    """
    Hurwitz zeta 函数 ζ(s, a) = Σ_{n≥0} (n + a)^{-s}

    Args:
        s: 实数，s > 1
        a: 实数或数组，0 < a ≤ 1

    Returns:
        与 a 同形状的 ζ(s, a)
    """
    if not s > 1.0:
        raise DomainError(f"hurwitz_zeta 要求 s > 1，得到 s = {s}")
    arr = np.asarray(a, dtype=float)
    if np.any(~(arr > 0.0)) or np.any(arr > 1.0):
        raise DomainError("hurwitz_zeta 要求 0 < a ≤ 1")
    result = _euler_maclaurin(s, arr)
    if np.ndim(a) == 0:
        return float(result)
    return result


def log_gamma(x: float) -> float:
    """log Γ(x)，x > 0"""
    if not x > 0.0:
        raise DomainError(f"log_gamma 要求 x > 0，得到 x = {x}")
    return float(gammaln(x))


def riemann_zeta(s: float) -> float:
    """
    Riemann zeta 函数 ζ(s)，s != 1

    s > 1 用 ζ(s, 1)；0 ≤ s < 1 直接用 Euler-Maclaurin 的解析延拓；
    s < 0 用函数方程 ζ(s) = 2^s π^{s-1} sin(πs/2) Γ(1-s) ζ(1-s)
    """
    if s == 1.0:
        raise PoleError("riemann_zeta 在 s = 1 处有极点")
    if s > 1.0:
        return hurwitz_zeta(s, 1.0)
    if s >= 0.0:
        return float(_euler_maclaurin(s, np.array(1.0)))
    return _reflected_zeta(s)


def _reflected_zeta(s: float) -> float:
    """s < 0 时的函数方程分支，1 - s > 1 落在收敛区"""
    if s == math.floor(s) and int(s) % 2 == 0:
        # 负偶数是平凡零点
        return 0.0
    sine = math.sin(math.pi * s / 2.0)
    reflected = 1.0 - s
    magnitude = math.exp(s * math.log(2.0) + (s - 1.0) * math.log(math.pi) + log_gamma(reflected))
    return magnitude * sine * hurwitz_zeta(reflected, 1.0)
