"""
单纯形内部的自然参数坐标与 Hilbert 球多面体
"""

from __future__ import annotations

from typing import NamedTuple, Tuple

import numpy as np

from hilbert_cone.core.errors import ValidationError
from hilbert_cone.models.cones import SimplexPoint


class ThetaVector:
    """坐标卡 k 下的自然参数 coords[i] = log(μ^i/μ^k)，i ≠ k"""

    __slots__ = ("_chart_index", "_coords")

    def __init__(self, chart_index: int, coords):
        arr = np.array(coords, dtype=float).ravel()
        if arr.size < 1:
            raise ValidationError("theta vector needs at least one coordinate")
        if not np.all(np.isfinite(arr)):
            raise ValidationError("theta coordinates must be finite")
        chart_index = int(chart_index)
        if not 0 <= chart_index <= arr.size:
            raise ValidationError(f"chart index {chart_index} out of range 0..{arr.size}")
        arr.setflags(write=False)
        self._chart_index = chart_index
        self._coords = arr

    @property
    def chart_index(self) -> int:
        return self._chart_index

    @property
    def coords(self) -> np.ndarray:
        return self._coords

    @property
    def n(self) -> int:
        """单纯形维数 n"""
        return int(self._coords.size)

    def full(self) -> np.ndarray:
        """在第 k 位补 0 后的长度 n+1 向量"""
        return np.insert(self._coords, self._chart_index, 0.0)

    def __sub__(self, other: "ThetaVector") -> np.ndarray:
        if other.chart_index != self._chart_index:
            raise ValidationError("cannot subtract theta vectors from different charts")
        return self._coords - other._coords

    def __repr__(self) -> str:
        return f"ThetaVector(k={self._chart_index}, {self._coords.tolist()!r})"


class Halfspace(NamedTuple):
    """sign·[(θ^i_0 − θ^k_0)(μ) − (θ^i_0 − θ^k_0)(ν)] ≤ R，其中 i > k，θ^0_0 ≡ 0"""

    i: int
    k: int
    sign: int


class BallPolytope(NamedTuple):
    """Hilbert 球：中心、半径、θ_0 顶点、单纯形顶点与半空间描述"""

    center: SimplexPoint
    radius: float
    theta_vertices: Tuple[ThetaVector, ...]
    simplex_vertices: Tuple[SimplexPoint, ...]
    halfspaces: Tuple[Halfspace, ...]

    @property
    def n(self) -> int:
        return self.center.dim - 1

    def theta_array(self) -> np.ndarray:
        return np.stack([v.coords for v in self.theta_vertices])

    def simplex_array(self) -> np.ndarray:
        return np.stack([v.weights for v in self.simplex_vertices])
