"""
输入输出格式
复数统一写成 {"re": ..., "im": ...}；矩阵支持 JSON / CSV / 表格三种格式
"""

import json
import os
from typing import Any, Dict, Iterable, List, Optional

import numpy as np

import config
from szego.errors import ConfigError


def encode_complex(z: complex) -> Dict[str, float]:
    z = complex(z)
    # 加 0.0 把 -0.0 规范成 0.0，保证输出逐字节确定
    return {'re': float(z.real) + 0.0, 'im': float(z.imag) + 0.0}


def decode_complex(item: Any) -> complex:
    """解析 {"re","im"}；也接受纯数字"""
    if isinstance(item, dict):
        try:
            return complex(float(item['re']), float(item.get('im', 0.0)))
        except (KeyError, TypeError, ValueError) as e:
            raise ConfigError(f"无法解析复数: {item!r}") from e
    if isinstance(item, (int, float)) and not isinstance(item, bool):
        return complex(float(item), 0.0)
    raise ConfigError(f"无法解析复数: {item!r}")


def encode_series(values: Iterable[complex]) -> List[Dict[str, float]]:
    return [encode_complex(v) for v in values]


def format_complex_text(z: complex, digits: int) -> str:
    """CSV 中的复数文本，形如 1.25+0j"""
    z = complex(z)
    re = float(z.real) + 0.0
    im = float(z.imag) + 0.0
    return f"{re:.{digits}g}{im:+.{digits}g}j"


def load_density_spec(path_or_inline: str) -> Dict[str, Any]:
    """
    读取密度描述

    Args:
        path_or_inline: JSON 文件路径、内联 JSON 文本，或 "identity"

    Returns:
        形如 {"kind": "fgn", "H": 0.75} 或 {"kind": "banded", "q": [...]} 的字典
    """
    if path_or_inline.strip().lower() == 'identity':
        return {'kind': 'banded', 'q': []}
    text = path_or_inline
    if os.path.exists(path_or_inline):
        with open(path_or_inline, 'r', encoding='utf-8') as f:
            text = f.read()
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise ConfigError(f"密度描述不是有效的 JSON: {path_or_inline}") from e
    # 允许直接给出系数列表
    if isinstance(data, list):
        data = {'kind': 'banded', 'q': data}
    if not isinstance(data, dict) or 'kind' not in data:
        raise ConfigError("密度描述必须包含 kind 字段")
    return data


def write_json(payload: Dict[str, Any], path: str) -> str:
    directory = os.path.dirname(os.path.abspath(path))
    os.makedirs(directory, exist_ok=True)
    with open(path, 'w', encoding='utf-8') as f:
        json.dump(payload, f, ensure_ascii=False, indent=2)
        f.write('\n')
    return path


def matrix_payload(entries: np.ndarray, meta: Optional[Dict[str, Any]] = None) -> Dict[str, Any]:
    payload = {'n': int(entries.shape[0])}
    payload.update(meta or {})
    payload['entries'] = [[encode_complex(v) for v in row] for row in entries]
    return payload


def _meta_text(value: Any) -> str:
    if isinstance(value, (dict, list)):
        return json.dumps(value, ensure_ascii=False, sort_keys=True)
    return str(value)


def matrix_csv(entries: np.ndarray, meta: Optional[Dict[str, Any]] = None,
               digits: int = config.JSON_DIGITS) -> str:
    """CSV：注释行写元数据，之后每行一行矩阵"""
    lines = [f"# {key}={_meta_text(value)}" for key, value in (meta or {}).items()]
    for row in entries:
        lines.append(','.join(format_complex_text(v, digits) for v in row))
    return '\n'.join(lines) + '\n'


def matrix_table(entries: np.ndarray, meta: Optional[Dict[str, Any]] = None,
                 digits: int = config.TABLE_DIGITS) -> str:
    """人读的表格，实矩阵只打印实部"""
    lines = [f"{key}: {_meta_text(value)}" for key, value in (meta or {}).items()]
    is_real = bool(np.all(np.abs(np.imag(entries)) == 0.0))
    cells = []
    for row in entries:
        if is_real:
            cells.append([f"{float(v.real) + 0.0:.{digits}g}" for v in row])
        else:
            cells.append([format_complex_text(v, digits) for v in row])
    width = max((len(c) for row in cells for c in row), default=1)
    for row in cells:
        lines.append('  '.join(c.rjust(width) for c in row))
    return '\n'.join(lines) + '\n'


def write_matrix(entries: np.ndarray, path: str, fmt: str = 'json',
                 meta: Optional[Dict[str, Any]] = None) -> str:
    """按格式写矩阵文件，返回路径"""
    if fmt == 'json':
        return write_json(matrix_payload(entries, meta), path)
    if fmt == 'csv':
        text = matrix_csv(entries, meta)
    elif fmt == 'table':
        text = matrix_table(entries, meta)
    else:
        raise ConfigError(f"不支持的输出格式: {fmt}")
    directory = os.path.dirname(os.path.abspath(path))
    os.makedirs(directory, exist_ok=True)
    with open(path, 'w', encoding='utf-8') as f:
        f.write(text)
    return path
