"""
输入文件处理工具函数
解析 JSON / CSV 文本为 InputDocument，并转换为数值类型
"""

import io
import json
import logging
import math
import re
from pathlib import Path
from typing import List, Optional, Tuple

import numpy as np
import pandas as pd
from pandas.errors import ParserError
from pydantic import ValidationError as SchemaError

from hilbert_cone.compute.core_metric import normalize
from hilbert_cone.core.errors import InputParseError, NegativeEntryError, RaggedArrayError, ValidationError
from hilbert_cone.models.cones import PositiveVector, SimplexPoint
from hilbert_cone.models.operators import GridKernel, NonnegMatrix
from hilbert_cone.schemas.schemas import InputDocument

logger = logging.getLogger(__name__)

KINDS = ("vector", "matrix", "kernel_grid")


def load_document(arg: str, kind: Optional[str] = None) -> InputDocument:
    """
    读取命令行参数指定的文档

    Args:
        arg: 文件路径，或直接给出的 JSON / CSV 文本
        kind: 期望的文档类型

    Returns:
        校验后的 InputDocument
    """
    try:
        path = Path(arg)
        is_file = path.is_file()
    except (OSError, ValueError):
        is_file = False
    if is_file:
        logger.debug("reading %s document from %s", kind or "input", path)
        text = path.read_text(encoding="utf-8")
    else:
        text = arg
    return parse_input(text, kind)


def parse_input(text: str, kind: Optional[str] = None) -> InputDocument:
    """
    解析 JSON（数组、二维数组或网格核对象）或 CSV 文本

    CSV 以逗号分隔，以 '#' 开头的行视为注释或表头
    """
    if kind is not None and kind not in KINDS:
        raise ValidationError(f"unknown document kind: {kind}")
    stripped = text.lstrip()
    if stripped.startswith("[") or stripped.startswith("{"):
        doc = _parse_json(text)
    else:
        doc = _parse_csv(text, kind)
    if kind is not None and doc.kind != kind:
        raise InputParseError(f"expected a {kind} document, got {doc.kind}")
    return doc


def _reject_constant(name: str):
    raise InputParseError(f"non-finite literal {name} is not allowed")


def _number(value, where: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise InputParseError(f"expected a number at {where}, got {json.dumps(value)}")
    value = float(value)
    if not math.isfinite(value):
        raise InputParseError(f"non-finite number at {where}")
    return value


def _number_row(values, where: str) -> List[float]:
    if not isinstance(values, list):
        raise InputParseError(f"expected an array at {where}")
    return [_number(v, f"{where}[{j}]") for j, v in enumerate(values)]


def _matrix_rows(values, where: str) -> List[List[float]]:
    rows = [_number_row(row, f"{where}[{i}]") for i, row in enumerate(values)]
    for i, row in enumerate(rows):
        if len(row) != len(rows[0]):
            raise RaggedArrayError(f"row {i} of {where} has {len(row)} entries, expected {len(rows[0])}")
    return rows


def _parse_json(text: str) -> InputDocument:
    try:
        data = json.loads(text, parse_constant=_reject_constant)
    except json.JSONDecodeError as e:
        raise InputParseError(e.msg, e.lineno, e.colno) from e

    if isinstance(data, dict):
        return _kernel_document(data)
    if not isinstance(data, list) or not data:
        raise InputParseError("expected a non-empty array or a kernel grid object")
    if all(isinstance(row, list) for row in data):
        rows = _matrix_rows(data, "matrix")
        _check_nonnegative_matrix(rows)
        return _document(kind="matrix", values=rows)
    if any(isinstance(v, list) for v in data):
        raise RaggedArrayError("array mixes numbers and nested arrays")
    values = _number_row(data, "vector")
    _check_nonnegative_vector(values)
    return _document(kind="vector", values=values)


def _kernel_document(data: dict) -> InputDocument:
    for key in ("a_grid", "x_grid"):
        if key not in data:
            raise InputParseError(f"kernel grid document is missing '{key}'")
    a_grid = _number_row(data["a_grid"], "a_grid")
    x_grid = _number_row(data["x_grid"], "x_grid")
    if "log_values" in data:
        log_values = _matrix_rows(data["log_values"], "log_values")
    elif "values" in data:
        values = _matrix_rows(data["values"], "values")
        for i, row in enumerate(values):
            for j, v in enumerate(row):
                if v <= 0:
                    raise ValidationError(f"kernel value {v!r} at index ({i}, {j}) must be strictly positive")
        log_values = np.log(np.array(values)).tolist()
    else:
        raise InputParseError("kernel grid document needs 'log_values' or 'values'")
    metadata = data.get("metadata") or {}
    if not isinstance(metadata, dict):
        raise InputParseError("metadata must be an object")
    return _document(
        kind="kernel_grid",
        values=log_values,
        a_grid=a_grid,
        x_grid=x_grid,
        metadata={str(k): str(v) for k, v in metadata.items()},
    )


def _csv_lines(text: str) -> Tuple[List[str], List[int]]:
    """去掉空行与 '#' 行，保留原始行号"""
    kept, numbers = [], []
    for lineno, line in enumerate(text.splitlines(), start=1):
        content = line.strip()
        if not content or content.startswith("#"):
            continue
        kept.append(content)
        numbers.append(lineno)
    return kept, numbers


def _parse_csv(text: str, kind: Optional[str]) -> InputDocument:
    lines, numbers = _csv_lines(text)
    if not lines:
        raise InputParseError("document contains no data rows")
    try:
        frame = pd.read_csv(
            io.StringIO("\n".join(lines)),
            header=None,
            dtype=str,
            na_filter=False,
            skipinitialspace=True,
            skip_blank_lines=False,
        )
    except ParserError as e:
        match = re.search(r"line (\d+)", str(e))
        line = numbers[int(match.group(1)) - 1] if match and int(match.group(1)) <= len(numbers) else None
        raise RaggedArrayError("rows have different numbers of fields", line, 1 if line else None) from e

    rows: List[List[float]] = []
    for r, record in enumerate(frame.itertuples(index=False)):
        row = []
        for c, cell in enumerate(record):
            if not isinstance(cell, str):
                raise RaggedArrayError("row is shorter than the first row", numbers[r], c + 1)
            try:
                value = float(cell.strip())
            except ValueError:
                raise InputParseError(f"cannot parse {cell!r} as a number", numbers[r], c + 1) from None
            if not math.isfinite(value):
                raise InputParseError(f"non-finite number {cell!r}", numbers[r], c + 1)
            row.append(value)
        rows.append(row)

    if len(rows) == 1:
        _check_nonnegative_vector(rows[0])
        return _document(kind="vector", values=rows[0])
    if kind == "vector" and all(len(row) == 1 for row in rows):
        values = [row[0] for row in rows]
        _check_nonnegative_vector(values)
        return _document(kind="vector", values=values)
    _check_nonnegative_matrix(rows)
    return _document(kind="matrix", values=rows)


def _check_nonnegative_vector(values: List[float]) -> None:
    for i, v in enumerate(values):
        if v < 0:
            raise NegativeEntryError(i, v)


def _check_nonnegative_matrix(rows: List[List[float]]) -> None:
    for i, row in enumerate(rows):
        for j, v in enumerate(row):
            if v < 0:
                raise NegativeEntryError((i, j), v)


def as_positive_vector(doc: InputDocument) -> PositiveVector:
    if doc.kind != "vector":
        raise InputParseError(f"expected a vector document, got {doc.kind}")
    return PositiveVector(doc.values)


def as_simplex_point(doc: InputDocument) -> SimplexPoint:
    """向量文档按总质量归一化到单纯形"""
    return normalize(as_positive_vector(doc))


def as_matrix(doc: InputDocument) -> NonnegMatrix:
    if doc.kind != "matrix":
        raise InputParseError(f"expected a matrix document, got {doc.kind}")
    return NonnegMatrix(doc.values)


def as_kernel(doc: InputDocument) -> GridKernel:
    if doc.kind != "kernel_grid":
        raise InputParseError(f"expected a kernel_grid document, got {doc.kind}")
    return GridKernel(doc.values, doc.a_grid, doc.x_grid)


def _document(**fields) -> InputDocument:
    try:
        return InputDocument(**fields)
    except SchemaError as e:
        raise InputParseError(f"invalid document: {e.errors()[0]['msg']}") from e
