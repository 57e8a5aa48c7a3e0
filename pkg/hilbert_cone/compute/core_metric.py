"""
Hilbert 射影度量的基本运算
β、H、T 距离与可比性，全部在对数空间中计算
"""

import logging
import math
from typing import Sequence

import numpy as np

from hilbert_cone.core.errors import DimensionError, RatioOverflowError
from hilbert_cone.models.cones import ExtendedDistance, LogDensityVector, PositiveVector, SimplexPoint

logger = logging.getLogger(__name__)

# exp 在 float64 中可表示的对数范围
LOG_RATIO_MAX = math.log(np.finfo(np.float64).max)
LOG_RATIO_MIN = math.log(np.finfo(np.float64).smallest_subnormal)


def _check_dims(x, y) -> None:
    if len(x) != len(y):
        raise DimensionError(f"length mismatch: {len(x)} vs {len(y)}")


def _max_log_ratio(num: np.ndarray, den: np.ndarray) -> float:
    """max_j log(num_j/den_j)，按对数差计算"""
    return float(np.max(np.log(num) - np.log(den)))


def beta(x: PositiveVector, y: PositiveVector) -> ExtendedDistance:
    """
    β(x, y) = inf{r > 0 : r·x − y ≥ 0}

    Returns:
        support(y) ⊆ support(x) 时为 max_{j∈supp x} y_j/x_j，否则为 Infinite

    Raises:
        RatioOverflowError: 比值超出 float64 范围，此时应改用 log_beta
    """
    _check_dims(x, y)
    if not y.support <= x.support:
        return ExtendedDistance.infinite()
    log_b = log_beta(x, y)
    if not LOG_RATIO_MIN < log_b < LOG_RATIO_MAX:
        raise RatioOverflowError(
            f"beta is not representable as a float64 (log beta = {log_b:.6g}); use log_beta instead"
        )
    return ExtendedDistance(float(np.exp(log_b)))


def log_beta(x: PositiveVector, y: PositiveVector) -> float:
    """log β(x, y)，在 supp(y) ⊆ supp(x) 时为有限值，否则为 inf"""
    _check_dims(x, y)
    if not y.support <= x.support:
        return math.inf
    mask = y.support_mask
    return _max_log_ratio(y.weights[mask], x.weights[mask])


def hilbert_distance(x: PositiveVector, y: PositiveVector) -> ExtendedDistance:
    """
    H(x, y) = log(β(x, y)·β(y, x))

    支撑集不同时为 Infinite；相同支撑集时在公共支撑上以对数差计算。
    对称性由排序后的同一计算路径保证。
    """
    _check_dims(x, y)
    if x.support != y.support:
        return ExtendedDistance.infinite()
    mask = x.support_mask
    lx = np.log(x.weights[mask])
    ly = np.log(y.weights[mask])
    # 固定参数顺序，使 H(x,y) 与 H(y,x) 逐位相同
    if _order_key(x) > _order_key(y):
        lx, ly = ly, lx
    d = ly - lx
    value = float(np.max(d) + np.max(-d))
    return ExtendedDistance(max(value, 0.0))


def _order_key(x: PositiveVector) -> bytes:
    return x.weights.tobytes()


def t_distance(x: PositiveVector, y: PositiveVector) -> float:
    """T(x, y) = tanh(H/4)，约定 tanh(∞) = 1"""
    return t_from_hilbert(hilbert_distance(x, y))


def t_from_hilbert(h: ExtendedDistance) -> float:
    if h.is_infinite:
        return 1.0
    return math.tanh(h.value / 4.0)


def comparable(x: PositiveVector, y: PositiveVector) -> bool:
    """有限维下可比性等价于支撑集相同，也等价于 H < ∞"""
    _check_dims(x, y)
    return x.support == y.support


def normalize(x: PositiveVector) -> SimplexPoint:
    """除以总质量，得到同一射线上的概率向量"""
    w = x.weights
    # 先按最大值缩放，避免 e^700 量级的权重求和溢出
    scaled = w / w.max()
    return SimplexPoint(scaled / math.fsum(scaled))


def theta_seminorm(f: LogDensityVector) -> float:
    """‖f‖_Θ = max f − min f，对常数向量为 0"""
    e = f.entries
    return float(np.max(e) - np.min(e))


def hilbert_from_log_densities(f: LogDensityVector, g: LogDensityVector) -> float:
    """H(μ, ν) = ‖θ(μ) − θ(ν)‖_Θ"""
    if f.dim != g.dim:
        raise DimensionError(f"length mismatch: {f.dim} vs {g.dim}")
    return theta_seminorm(f - g)


def pairwise_hilbert(points: Sequence[PositiveVector]) -> np.ndarray:
    """点列两两之间的 H 距离矩阵，Infinite 记为 inf"""
    count = len(points)
    out = np.zeros((count, count))
    for i in range(count):
        for j in range(i + 1, count):
            out[i, j] = out[j, i] = float(hilbert_distance(points[i], points[j]))
    return out
