"""
正锥上的数值类型
非负向量、概率单纯形上的点、扩展距离与对数密度
"""

from __future__ import annotations

import math
from functools import total_ordering
from typing import Iterable, Optional, Union

import numpy as np

from hilbert_cone.core.config import settings
from hilbert_cone.core.errors import DimensionError, NegativeEntryError, ValidationError

Number = Union[int, float]


def _readonly(values, name: str) -> np.ndarray:
    arr = np.array(values, dtype=float)
    if arr.ndim != 1:
        raise ValidationError(f"{name} must be one-dimensional, got shape {arr.shape}")
    arr.setflags(write=False)
    return arr


@total_ordering
class ExtendedDistance:
    """取值于 [0, ∞] 的距离，∞ 是显式标记而不是浮点 inf"""

    __slots__ = ("_value", "_infinite")

    def __init__(self, value: Optional[Number] = None, infinite: bool = False):
        if infinite:
            self._value = None
            self._infinite = True
            return
        if value is None:
            raise ValidationError("finite ExtendedDistance needs a value")
        value = float(value)
        if math.isnan(value) or math.isinf(value):
            raise ValidationError(f"finite ExtendedDistance cannot be {value!r}")
        if value < 0:
            raise ValidationError(f"distance must be nonnegative, got {value!r}")
        self._value = value
        self._infinite = False

    @classmethod
    def finite(cls, value: Number) -> "ExtendedDistance":
        return cls(value)

    @classmethod
    def infinite(cls) -> "ExtendedDistance":
        return cls(infinite=True)

    @property
    def is_infinite(self) -> bool:
        return self._infinite

    @property
    def is_finite(self) -> bool:
        return not self._infinite

    @property
    def value(self) -> float:
        """有限值；无穷时抛出异常，强制调用方显式处理"""
        if self._infinite:
            raise ValueError("ExtendedDistance is Infinite")
        return self._value

    def __float__(self) -> float:
        return math.inf if self._infinite else self._value

    def to_json(self) -> Union[float, str]:
        return "inf" if self._infinite else self._value

    def __add__(self, other) -> "ExtendedDistance":
        other = _as_extended(other)
        if self._infinite or other._infinite:
            return ExtendedDistance.infinite()
        return ExtendedDistance(self._value + other._value)

    __radd__ = __add__

    def __eq__(self, other) -> bool:
        if isinstance(other, (ExtendedDistance, int, float)):
            return float(self) == float(other)
        return NotImplemented

    def __lt__(self, other) -> bool:
        if isinstance(other, (ExtendedDistance, int, float)):
            return float(self) < float(other)
        return NotImplemented

    def __hash__(self) -> int:
        return hash(float(self))

    def __repr__(self) -> str:
        return "ExtendedDistance(Infinite)" if self._infinite else f"ExtendedDistance({self._value!r})"


def _as_extended(value) -> ExtendedDistance:
    if isinstance(value, ExtendedDistance):
        return value
    if math.isinf(float(value)):
        return ExtendedDistance.infinite()
    return ExtendedDistance(value)


class PositiveVector:
    """非负象限中的射线代表元，支撑集由与 0 的精确比较决定"""

    __slots__ = ("_weights", "_mask", "_support")

    def __init__(self, weights: Iterable[Number]):
        arr = _readonly(weights, "weights")
        if arr.size < 2:
            raise ValidationError(f"vector needs at least 2 components, got {arr.size}")
        if not np.all(np.isfinite(arr)):
            raise ValidationError("weights must be finite")
        negative = np.flatnonzero(arr < 0)
        if negative.size:
            i = int(negative[0])
            raise NegativeEntryError(i, float(arr[i]))
        mask = arr > 0
        if not mask.any():
            raise ValidationError("at least one weight must be positive")
        mask.setflags(write=False)
        self._weights = arr
        self._mask = mask
        self._support = frozenset(int(i) for i in np.flatnonzero(mask))

    @property
    def weights(self) -> np.ndarray:
        return self._weights

    @property
    def support(self) -> frozenset:
        return self._support

    @property
    def support_mask(self) -> np.ndarray:
        return self._mask

    @property
    def dim(self) -> int:
        """分量个数 n+1"""
        return int(self._weights.size)

    @property
    def has_full_support(self) -> bool:
        return len(self._support) == self.dim

    def __len__(self) -> int:
        return self.dim

    def __eq__(self, other) -> bool:
        if not isinstance(other, PositiveVector):
            return NotImplemented
        return np.array_equal(self._weights, other._weights)

    def __hash__(self) -> int:
        return hash(self._weights.tobytes())

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self._weights.tolist()!r})"


class SimplexPoint(PositiveVector):
    """概率单纯形 S^n 上的点"""

    __slots__ = ()

    def __init__(self, weights: Iterable[Number]):
        super().__init__(weights)
        total = math.fsum(self._weights)
        if abs(total - 1.0) > settings.SIMPLEX_SUM_TOLERANCE:
            raise ValidationError(f"simplex weights must sum to 1, got {total!r}")

    @classmethod
    def uniform(cls, dim: int) -> "SimplexPoint":
        return cls(np.full(dim, 1.0 / dim))


class LogDensityVector:
    """相对计数参考测度的对数密度 θ(μ) = log(dμ/dρ)"""

    __slots__ = ("_entries",)

    def __init__(self, entries: Iterable[Number]):
        arr = _readonly(entries, "entries")
        if arr.size == 0:
            raise ValidationError("log-density vector cannot be empty")
        if not np.all(np.isfinite(arr)):
            raise ValidationError("log-densities must be finite (full-support measures only)")
        self._entries = arr

    @classmethod
    def of(cls, x: PositiveVector) -> "LogDensityVector":
        if not x.has_full_support:
            raise ValidationError("log-density exists only for full-support vectors")
        return cls(np.log(x.weights))

    @property
    def entries(self) -> np.ndarray:
        return self._entries

    @property
    def dim(self) -> int:
        return int(self._entries.size)

    def __sub__(self, other: "LogDensityVector") -> "LogDensityVector":
        if self.dim != other.dim:
            raise DimensionError(f"length mismatch: {self.dim} vs {other.dim}")
        return LogDensityVector(self._entries - other._entries)

    def __len__(self) -> int:
        return self.dim

    def __repr__(self) -> str:
        return f"LogDensityVector({self._entries.tolist()!r})"
