"""
异常定义
库代码只抛异常，入口 (app.py) 负责把异常映射到退出码
"""

from typing import Optional


class SzegoError(Exception):
    """所有数值流程错误的基类"""


class DomainError(SzegoError, ValueError):
    """参数超出定义域"""


class PoleError(DomainError):
    """在极点处求值 (例如 zeta(1))"""


class QuadratureError(SzegoError, ArithmeticError):
    """求积在允许的加密次数内没有收敛"""

    def __init__(self, message: str, estimate: float = float('nan'), tol: Optional[float] = None):
        super().__init__(f"{message} (误差估计 {estimate:.3e}, 容差 {tol})")
        self.estimate = estimate
        self.tol = tol


class SzegoConditionError(QuadratureError):
    """log φ 的积分发散，Szegő 条件在数值上不成立"""


class CoefficientRangeError(SzegoError, IndexError):
    """系数不足以计算所需的矩阵元素"""


class NotPositiveDefiniteError(SzegoError, ArithmeticError):
    """Cholesky 分解遇到非正主元"""

    def __init__(self, message: str, pivot: float = float('nan')):
        super().__init__(message)
        self.pivot = pivot


class DimensionMismatchError(SzegoError, ValueError):
    """比较的两个矩阵块尺寸不同"""


class DegenerateDenominatorError(SzegoError, ZeroDivisionError):
    """闭式公式的分母退化"""


class ConfigError(SzegoError, ValueError):
    """运行配置或密度描述文件无效"""
