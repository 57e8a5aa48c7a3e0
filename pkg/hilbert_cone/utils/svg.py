"""
SVG 图形输出
Simplex2D 视图把 S² 画成标准等边三角形（重心坐标放置），ThetaPlane 视图直接画 θ_0 坐标并带坐标轴
"""

import math
from dataclasses import dataclass
from enum import Enum
from typing import List, Optional, Sequence

import numpy as np
from jinja2 import Environment, PackageLoader, StrictUndefined

from hilbert_cone.compute.simplex_geometry import ordered_vertices
from hilbert_cone.core.errors import DimensionError
from hilbert_cone.models.charts import BallPolytope

TRIANGLE = np.array([[0.0, 0.0], [1.0, 0.0], [0.5, math.sqrt(3.0) / 2.0]])
MARGIN = 0.05

_env = Environment(
    loader=PackageLoader("hilbert_cone", "templates"),
    undefined=StrictUndefined,
    keep_trailing_newline=True,
    autoescape=True,
)


class View(str, Enum):
    THETA_PLANE = "theta"
    SIMPLEX_2D = "simplex"


@dataclass(frozen=True)
class RenderStyle:
    width: int = 600
    height: int = 600
    stroke: str = "#1f4e79"
    fill: str = "#9ecae1"
    fill_opacity: float = 0.35
    curve_stroke: str = "#b22222"
    frame_stroke: str = "#404040"
    stroke_width: float = 1.0
    decimals: int = 6


def _place(points: np.ndarray, view: View) -> np.ndarray:
    """转换为绘图平面坐标，y 轴向上"""
    if view is View.SIMPLEX_2D:
        return points @ TRIANGLE
    return points


def _fmt(value: float, decimals: int) -> str:
    text = f"{value:.{decimals}f}".rstrip("0").rstrip(".")
    return "0" if text in ("-0", "") else text


def _pair(x: float, y: float, decimals: int) -> str:
    # SVG 的 y 轴向下
    return f"{_fmt(x, decimals)},{_fmt(-y, decimals)}"


def _view_box(points: List[np.ndarray]) -> tuple:
    if points:
        stacked = np.vstack(points)
        lo, hi = stacked.min(axis=0), stacked.max(axis=0)
    else:
        lo, hi = np.array([-1.0, -1.0]), np.array([1.0, 1.0])
    span = np.where(hi - lo > 0, hi - lo, 1.0)
    lo = lo - MARGIN * span
    hi = hi + MARGIN * span
    return lo, hi


def render_svg(
    polytopes: Sequence[BallPolytope],
    view: View = View.SIMPLEX_2D,
    style: Optional[RenderStyle] = None,
    curves: Sequence[np.ndarray] = (),
) -> str:
    """
    把二维 Hilbert 球（以及可选的开曲线）渲染为 SVG 1.1 文本

    Args:
        polytopes: n = 2 的球多面体
        view: 绘图坐标系
        style: 尺寸与颜色
        curves: 开曲线，每条为 (k, 3) 单纯形点或 (k, 2) θ_0 坐标，与 view 对应

    Returns:
        带 XML 声明的 SVG 文本
    """
    style = style or RenderStyle()
    view = View(view)
    d = style.decimals

    shapes = []
    for polytope in polytopes:
        if polytope.n != 2:
            raise DimensionError(f"only 2-dimensional balls can be drawn, got n = {polytope.n}")
        order = ordered_vertices(polytope)
        source = polytope.simplex_array() if view is View.SIMPLEX_2D else polytope.theta_array()
        shapes.append(_place(source[order], view))

    lines = []
    for curve in curves:
        curve = np.asarray(curve, dtype=float)
        expected = 3 if view is View.SIMPLEX_2D else 2
        if curve.ndim != 2 or curve.shape[1] != expected:
            raise DimensionError(f"curves for the {view.value} view need {expected} columns")
        lines.append(_place(curve, view))

    frame = None
    axes = []
    if view is View.SIMPLEX_2D:
        lo, hi = _view_box([TRIANGLE] + shapes + lines)
        frame = " ".join(_pair(x, y, d) for x, y in TRIANGLE)
    else:
        lo, hi = _view_box(shapes + lines)
        axes = [
            (_fmt(lo[0], d), "0", _fmt(hi[0], d), "0"),
            ("0", _fmt(-lo[1], d), "0", _fmt(-hi[1], d)),
        ]

    width, height = hi - lo
    view_box = " ".join(_fmt(v, d) for v in (lo[0], -hi[1], width, height))
    # 线宽以用户坐标给出，按 viewBox 到像素的缩放换算成 style.stroke_width 像素
    units_per_px = max(width / style.width, height / style.height)
    balls = [
        "M " + " L ".join(_pair(x, y, d) for x, y in shape) + " Z"
        for shape in shapes
    ]
    polylines = [" ".join(_pair(x, y, d) for x, y in line) for line in lines]
    return _env.get_template("figure.svg.j2").render(
        style=style,
        view_box=view_box,
        stroke_width=f"{style.stroke_width * units_per_px:.6g}",
        frame=frame,
        axes=axes,
        balls=balls,
        curves=polylines,
    )
