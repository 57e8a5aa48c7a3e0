"""
正线性算子：可容许非负矩阵与网格核
"""

from __future__ import annotations

from typing import Iterable

import numpy as np

from hilbert_cone.core.errors import NegativeEntryError, ValidationError


def _readonly_matrix(values, name: str) -> np.ndarray:
    try:
        arr = np.array(values, dtype=float)
    except ValueError as e:
        raise ValidationError(f"{name} must be a rectangular numeric array: {e}") from e
    if arr.ndim != 2:
        raise ValidationError(f"{name} must be two-dimensional, got shape {arr.shape}")
    arr.setflags(write=False)
    return arr


class NonnegMatrix:
    """可容许非负方阵：每行每列至少有一个正元素"""

    __slots__ = ("_entries",)

    def __init__(self, entries: Iterable[Iterable[float]]):
        arr = _readonly_matrix(entries, "matrix")
        rows, cols = arr.shape
        if rows != cols:
            raise ValidationError(f"matrix must be square, got {rows}x{cols}")
        if rows < 2:
            raise ValidationError("matrix must be at least 2x2")
        if not np.all(np.isfinite(arr)):
            raise ValidationError("matrix entries must be finite")
        negative = np.argwhere(arr < 0)
        if negative.size:
            i, j = (int(v) for v in negative[0])
            raise NegativeEntryError((i, j), float(arr[i, j]))
        positive = arr > 0
        empty_rows = np.flatnonzero(~positive.any(axis=1))
        if empty_rows.size:
            raise ValidationError(f"matrix is not allowable: row {int(empty_rows[0])} has no positive entry")
        empty_cols = np.flatnonzero(~positive.any(axis=0))
        if empty_cols.size:
            raise ValidationError(f"matrix is not allowable: column {int(empty_cols[0])} has no positive entry")
        self._entries = arr

    @property
    def entries(self) -> np.ndarray:
        return self._entries

    @property
    def dim(self) -> int:
        return int(self._entries.shape[0])

    @property
    def is_strictly_positive(self) -> bool:
        return bool(np.all(self._entries > 0))

    @property
    def T(self) -> "NonnegMatrix":
        return NonnegMatrix(self._entries.T)

    def column(self, k: int) -> np.ndarray:
        return self._entries[:, k]

    def __matmul__(self, other):
        if isinstance(other, NonnegMatrix):
            return NonnegMatrix(self._entries @ other._entries)
        return self._entries @ np.asarray(other, dtype=float)

    def __repr__(self) -> str:
        return f"NonnegMatrix({self._entries.tolist()!r})"


class GridKernel:
    """
    网格上离散化的严格正核 κ(a_i, x_j)

    log_values[i, j] = log κ(a_i, x_j)，a_grid 为输出点，x_grid 为输入点
    """

    __slots__ = ("_log_values", "_a_grid", "_x_grid")

    def __init__(self, log_values, a_grid, x_grid):
        lv = _readonly_matrix(log_values, "log_values")
        a = np.array(a_grid, dtype=float).ravel()
        x = np.array(x_grid, dtype=float).ravel()
        m, p = lv.shape
        if m < 2 or p < 2:
            raise ValidationError(f"kernel grid must be at least 2x2, got {m}x{p}")
        if a.size != m or x.size != p:
            raise ValidationError(
                f"grid sizes ({a.size}, {x.size}) do not match log_values shape ({m}, {p})"
            )
        if not np.all(np.isfinite(lv)):
            raise ValidationError("kernel log-values must be finite (kernel strictly positive)")
        for name, grid in (("a_grid", a), ("x_grid", x)):
            if not np.all(np.isfinite(grid)) or np.any(np.diff(grid) <= 0):
                raise ValidationError(f"{name} must be finite and strictly increasing")
        a.setflags(write=False)
        x.setflags(write=False)
        self._log_values = lv
        self._a_grid = a
        self._x_grid = x

    @classmethod
    def from_function(cls, log_kernel, a_grid, x_grid) -> "GridKernel":
        """由向量化的 log κ(a, x) 在网格上取值"""
        a = np.asarray(a_grid, dtype=float)
        x = np.asarray(x_grid, dtype=float)
        return cls(log_kernel(a[:, None], x[None, :]), a, x)

    @property
    def log_values(self) -> np.ndarray:
        return self._log_values

    @property
    def a_grid(self) -> np.ndarray:
        return self._a_grid

    @property
    def x_grid(self) -> np.ndarray:
        return self._x_grid

    @property
    def shape(self) -> tuple:
        return self._log_values.shape

    @property
    def cell_width(self) -> float:
        """输出网格的均匀单元宽度 Δa"""
        return float((self._a_grid[-1] - self._a_grid[0]) / (self._a_grid.size - 1))

    def __repr__(self) -> str:
        m, p = self.shape
        return f"GridKernel({m}x{p})"
