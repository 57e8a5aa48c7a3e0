"""
结果序列化
JSON 中的无穷距离写作字符串 "inf"，浮点数按 repr 输出（最短可往返表示）
"""

import io
import json
import math
from typing import Any

import numpy as np
import pandas as pd
from pydantic import BaseModel

from hilbert_cone.models.cones import ExtendedDistance
from hilbert_cone.schemas.schemas import MarkovTrace

MARKOV_COLUMNS = ["step", "H", "T", "TV", "certified_bound"]


def to_jsonable(obj: Any) -> Any:
    """递归转换为可写入 JSON 的结构"""
    if isinstance(obj, BaseModel):
        return to_jsonable(obj.model_dump())
    if isinstance(obj, ExtendedDistance):
        return obj.to_json()
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return to_jsonable(obj.tolist())
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        value = float(obj)
        if math.isnan(value):
            raise ValueError("NaN cannot be serialized")
        if math.isinf(value):
            return "inf" if value > 0 else "-inf"
        return value
    return obj


def dumps_json(obj: Any) -> str:
    return json.dumps(to_jsonable(obj), indent=2, ensure_ascii=False, allow_nan=False) + "\n"


def markov_frame(trace: MarkovTrace) -> pd.DataFrame:
    return pd.DataFrame(
        [[s.step, s.hilbert, s.t, s.tv, s.certified_bound] for s in trace.steps],
        columns=MARKOV_COLUMNS,
    )


def markov_csv(trace: MarkovTrace) -> str:
    """CSV 表格，τ = 1 时首行为 "# warning: ..." 注释"""
    buffer = io.StringIO()
    if trace.warning:
        buffer.write(f"# warning: {trace.warning}\n")
    markov_frame(trace).to_csv(buffer, index=False, lineterminator="\n")
    return buffer.getvalue()
