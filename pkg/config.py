import logging
import os

from dotenv import load_dotenv

BASE_DIR = os.path.dirname(os.path.abspath(__file__))

# 允许在项目目录放一个 .env 覆盖下面的环境变量
load_dotenv(os.path.join(BASE_DIR, '.env'))

# 目录配置
OUTPUT_FOLDER = os.getenv('SZEGO_OUTPUT_FOLDER', os.path.join(BASE_DIR, 'output'))
LOG_LEVEL = os.getenv('SZEGO_LOG_LEVEL', 'INFO')
LOG_FILE = os.path.join(OUTPUT_FOLDER, "debug.log")


def _int_env(name: str, default: int) -> int:
    """读取整数环境变量，不是整数时回退到默认值"""
    raw = os.getenv(name)
    if raw is None or not raw.strip():
        return default
    try:
        return int(raw)
    except ValueError:
        logging.getLogger('szego.config').warning("%s=%r 不是整数，改用默认值 %d", name, raw, default)
        return default


# 并行配置（独立的 Fourier 积分按 k 分块并行）
SZEGO_THREADS = max(1, _int_env('SZEGO_THREADS', min(os.cpu_count() or 1, 8)))

# 数值默认值
DEFAULT_TOL = 1e-10
DEFAULT_N_FGN = 256
DEFAULT_BLOCK = 5
DEFAULT_ORACLE_M = 1000
DEFAULT_BOUND = 2e-4

# 求积配置
QUADRATURE_ORDER = 20          # 每个子区间的 Gauss-Legendre 节点数，误差估计用 2 倍阶数
DYADIC_DEPTH = 40              # 端点二分加密到 2^-40
QUADRATURE_MAX_REFINE = 6      # 误差不达标时最多加密次数
MIN_PANELS = 16
# 端点段的代换 t = h·u^p 中的 p
ENDPOINT_GRADING = 10

# 带状密度正定性检查
POSITIVITY_GRID = 4096
POSITIVITY_FLOOR = 1e-6
# 局部最小值不超过该值即视为零点
POSITIVITY_STRICT = 1e-12

# 输出格式
JSON_DIGITS = 17
TABLE_DIGITS = 6

# 退出码
EXIT_OK = 0
EXIT_CONFIG_ERROR = 2
EXIT_NUMERIC_FAILURE = 3
EXIT_BOUND_BREACH = 4


def default_banded_order(m: int) -> int:
    """带状密度默认截断阶数 4m + 16"""
    return 4 * m + 16
