"""
Szegő 逆矩阵计算器 - 命令行入口
计算 ψ / S 系数、G⁻¹ 角块、Whittle 矩阵，并与有限截断 Cholesky 结果校验
"""

import argparse
import logging
import os
import sys
from typing import Any, Dict, List, Optional

import config
from szego.banded_closed_form import TridiagonalSpec, tridiagonal_inverse_block
from szego.errors import ConfigError, DomainError, SzegoError
from szego.formats import load_density_spec, write_json, write_matrix
from szego.pipeline import SzegoPipeline
from szego.spectral_density import SpectralDensity, create_density
from szego.szego_transform import default_truncation

logger = logging.getLogger('szego.app')

FORMAT_EXTENSIONS = {'json': 'json', 'csv': 'csv', 'table': 'txt'}


def setup_logging():
    """调试日志写入 output/debug.log，进度信息同时输出到 stderr"""
    root = logging.getLogger('szego')
    if root.handlers:
        return
    os.makedirs(config.OUTPUT_FOLDER, exist_ok=True)
    root.setLevel(logging.DEBUG)
    file_handler = logging.FileHandler(config.LOG_FILE, encoding='utf-8')
    file_handler.setFormatter(logging.Formatter('[%(asctime)s] %(message)s', datefmt='%Y-%m-%d %H:%M:%S'))
    file_handler.setLevel(logging.DEBUG)
    stream_handler = logging.StreamHandler(sys.stderr)
    stream_handler.setFormatter(logging.Formatter('%(message)s'))
    stream_handler.setLevel(config.LOG_LEVEL.upper())
    root.addHandler(file_handler)
    root.addHandler(stream_handler)


def log_debug(message):
    """记录调试信息到日志文件"""
    logger.debug(message)


def parse_tridiagonal(text: str) -> complex:
    """解析 re 或 re,im 形式的复数"""
    parts = text.split(',')
    try:
        if len(parts) == 1:
            return complex(float(parts[0]), 0.0)
        if len(parts) == 2:
            return complex(float(parts[0]), float(parts[1]))
    except ValueError as e:
        raise ConfigError(f"无法解析 --tridiagonal {text!r}") from e
    raise ConfigError(f"--tridiagonal 需要 re 或 re,im，得到 {text!r}")


class RunConfig:
    """一次命令行运行的参数"""

    def __init__(self, density_spec: Dict[str, Any], N: Optional[int] = None, tol: float = None,
                 block_n: int = None, oracle_m: int = None, bound: float = None,
                 closed_form: bool = False, fmt: str = 'json', out: Optional[str] = None,
                 gap_tol: Optional[float] = None, tridiagonal: Optional[TridiagonalSpec] = None,
                 command: Optional[str] = None):
        self.density_spec = density_spec
        self.command = command
        self.tridiagonal = tridiagonal
        try:
            self.density: SpectralDensity = create_density(density_spec)
        except DomainError as e:
            raise ConfigError(f"密度描述无效: {e}") from e
        self.N = default_truncation(self.density) if N is None else N
        self.tol = config.DEFAULT_TOL if tol is None else tol
        self.block_n = config.DEFAULT_BLOCK if block_n is None else block_n
        self.oracle_m = config.DEFAULT_ORACLE_M if oracle_m is None else oracle_m
        self.bound = config.DEFAULT_BOUND if bound is None else bound
        self.closed_form = closed_form
        self.fmt = fmt
        self.out = out
        self.gap_tol = gap_tol
        self._validate()

    def _validate(self):
        if self.block_n < 1:
            raise ConfigError(f"--block 必须为正，得到 {self.block_n}")
        if self.N < self.block_n - 1:
            raise ConfigError(f"N = {self.N} 不足以计算 {self.block_n}×{self.block_n} 块 (需要 N ≥ {self.block_n - 1})")
        if not self.tol > 0.0:
            raise ConfigError(f"--tol 必须为正，得到 {self.tol}")
        if self.oracle_m < self.block_n:
            raise ConfigError(f"--oracle-m ({self.oracle_m}) 不能小于 --block ({self.block_n})")
        if self.closed_form and self.tridiagonal is None:
            raise ConfigError("--closed-form 只适用于 --tridiagonal")
        if self.closed_form and self.command not in (None, 'invert'):
            raise ConfigError(f"--closed-form 只适用于 invert 命令，得到 {self.command}")

    @classmethod
    def from_args(cls, args: argparse.Namespace) -> 'RunConfig':
        sources = [s for s in (args.fgn, args.banded, args.tridiagonal) if s is not None]
        if len(sources) != 1:
            raise ConfigError("必须且只能指定 --fgn、--banded、--tridiagonal 中的一个")
        tridiagonal = None
        if args.fgn is not None:
            spec = {'kind': 'fgn', 'H': args.fgn}
        elif args.banded is not None:
            spec = load_density_spec(args.banded)
        else:
            q = parse_tridiagonal(args.tridiagonal)
            try:
                tridiagonal = TridiagonalSpec(q)
            except DomainError as e:
                raise ConfigError(str(e)) from e
            spec = {'kind': 'tridiagonal', 'q': {'re': q.real, 'im': q.imag}}
        return cls(spec, N=args.N, tol=args.tol, block_n=args.block, oracle_m=args.oracle_m,
                   bound=args.bound, closed_form=args.closed_form, fmt=args.format, out=args.out,
                   gap_tol=args.gap_tol, tridiagonal=tridiagonal,
                   command=getattr(args, 'command', None))

    def output_path(self, command: str, fmt: str = None) -> str:
        if self.out:
            return self.out
        ext = FORMAT_EXTENSIONS[fmt or self.fmt]
        return os.path.join(config.OUTPUT_FOLDER, f"{command}.{ext}")

    def pipeline(self) -> SzegoPipeline:
        return SzegoPipeline(self.density, self.N, self.tol, self.gap_tol, min_N=self.block_n - 1)

    def meta(self, method: str, n: int) -> Dict[str, Any]:
        return {'n': n, 'density': self.density.describe(), 'method': method, 'N': self.N, 'tol': self.tol}


def cmd_coeffs(cfg: RunConfig) -> int:
    """写出系数文件 {u, a, c, N, tol}"""
    result = cfg.pipeline().run()
    payload = {'density': cfg.density.describe()}
    payload.update(result.to_dict())
    path = write_json(payload, cfg.output_path('coeffs', 'json'))
    print(path)
    return config.EXIT_OK


def cmd_invert(cfg: RunConfig) -> int:
    """写出 G⁻¹ 的 block_n × block_n 角块"""
    n = cfg.block_n
    if cfg.closed_form:
        block = tridiagonal_inverse_block(cfg.tridiagonal, n)
        meta = {'n': n, 'density': cfg.density.describe(), 'method': 'closed-form'}
    else:
        pipeline = cfg.pipeline()
        block = pipeline.inverse_block(n)
        meta = cfg.meta('szego', n)
        meta['N'] = block.N
    path = write_matrix(block.entries, cfg.output_path('invert'), cfg.fmt, meta)
    print(path)
    return config.EXIT_OK


def cmd_validate(cfg: RunConfig) -> int:
    """与有限截断比较，超出界限时返回 EXIT_BOUND_BREACH"""
    _, report = cfg.pipeline().validate(cfg.block_n, cfg.oracle_m)
    passed = report.max_abs_diff <= cfg.bound
    payload = {'density': cfg.density.describe()}
    payload.update(report.to_dict())
    payload.update({'bound': cfg.bound, 'passed': passed})
    path = write_json(payload, cfg.output_path('validate', 'json'))
    print(path)
    if not passed:
        print(f"最大差 {report.max_abs_diff:.3e} 超过界限 {cfg.bound:.1e}", file=sys.stderr)
        return config.EXIT_BOUND_BREACH
    return config.EXIT_OK


def cmd_whittle(cfg: RunConfig) -> int:
    """写出 block_n × block_n 的 Whittle 矩阵"""
    n = cfg.block_n
    entries = cfg.pipeline().whittle_matrix(n)
    meta = {'n': n, 'density': cfg.density.describe(), 'method': 'whittle', 'tol': cfg.tol}
    path = write_matrix(entries, cfg.output_path('whittle'), cfg.fmt, meta)
    print(path)
    return config.EXIT_OK


COMMANDS = {
    'coeffs': cmd_coeffs,
    'invert': cmd_invert,
    'validate': cmd_validate,
    'whittle': cmd_whittle,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    source = common.add_argument_group('谱密度')
    source.add_argument('--fgn', type=float, metavar='H', help='分数高斯噪声，Hurst 指数 H')
    source.add_argument('--banded', metavar='FILE|JSON', help='带状密度描述文件、内联 JSON 或 identity')
    source.add_argument('--tridiagonal', metavar='RE[,IM]', help='首行为 (1, q, 0, …) 的三对角矩阵')
    common.add_argument('--N', type=int, help='截断阶数 (fGn 默认 256，带状默认 4m+16)')
    common.add_argument('--tol', type=float, help=f'求积容差 (默认 {config.DEFAULT_TOL})')
    common.add_argument('--block', type=int, help=f'角块大小 (默认 {config.DEFAULT_BLOCK})')
    common.add_argument('--oracle-m', type=int, dest='oracle_m', help=f'有限截断大小 (默认 {config.DEFAULT_ORACLE_M})')
    common.add_argument('--bound', type=float, help=f'校验允许的最大差 (默认 {config.DEFAULT_BOUND})')
    common.add_argument('--gap-tol', type=float, dest='gap_tol', help='对角差低于该值时提前截断系数')
    common.add_argument('--closed-form', action='store_true', dest='closed_form', help='三对角情形使用显式公式 (只用于 invert)')
    common.add_argument('--format', choices=sorted(FORMAT_EXTENSIONS), default='json', help='矩阵输出格式')
    common.add_argument('--out', help='输出文件路径 (默认写到 output/)')

    parser = argparse.ArgumentParser(prog='app.py', description='用逆 Szegő 函数计算无穷 Toeplitz 矩阵的逆')
    sub = parser.add_subparsers(dest='command', required=True)
    sub.add_parser('coeffs', parents=[common], help='计算 u、a、c 系数')
    sub.add_parser('invert', parents=[common], help='计算 G⁻¹ 的角块')
    sub.add_parser('validate', parents=[common], help='与有限截断 Cholesky 结果比较')
    sub.add_parser('whittle', parents=[common], help='计算 Whittle 矩阵')
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    setup_logging()
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as e:
        return config.EXIT_OK if e.code in (0, None) else config.EXIT_CONFIG_ERROR

    log_debug(f"命令 {args.command}: {sys.argv if argv is None else argv}")
    try:
        cfg = RunConfig.from_args(args)
        return COMMANDS[args.command](cfg)
    except ConfigError as e:
        logger.debug("配置错误", exc_info=True)
        print(f"配置错误: {e}", file=sys.stderr)
        return config.EXIT_CONFIG_ERROR
    except SzegoError as e:
        logger.debug("数值计算失败", exc_info=True)
        print(f"数值计算失败: {e}", file=sys.stderr)
        return config.EXIT_NUMERIC_FAILURE


if __name__ == '__main__':
    sys.exit(main())
