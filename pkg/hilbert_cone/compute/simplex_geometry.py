"""
单纯形几何：自然参数坐标卡、H 的上确界范数表示、Hilbert 球多面体与平铺
"""

import logging
import math
from typing import List, Sequence, Tuple

import numpy as np
from scipy.special import softmax

from hilbert_cone.core.config import settings
from hilbert_cone.core.errors import (
    ChartRangeError,
    DimensionError,
    DomainError,
    UnsupportedDimensionError,
    ValidationError,
)
from hilbert_cone.models.charts import BallPolytope, Halfspace, ThetaVector
from hilbert_cone.models.cones import SimplexPoint

logger = logging.getLogger(__name__)


def _require_interior(mu: SimplexPoint, name: str = "point") -> None:
    if not mu.has_full_support:
        zero = min(set(range(mu.dim)) - mu.support)
        raise DomainError(f"{name} lies on the simplex boundary (weight {zero} is zero)")


def _check_radius(R: float) -> float:
    R = float(R)
    if not math.isfinite(R) or R <= 0:
        raise ValidationError(f"radius must be a positive finite real, got {R!r}")
    return R


def theta_chart(mu: SimplexPoint, k: int = 0) -> ThetaVector:
    """
    坐标卡 θ_k：θ_k^i(μ) = log μ^i − log μ^k，i ≠ k

    Args:
        mu: 单纯形内点
        k: 坐标卡编号，0 ≤ k ≤ n

    Returns:
        坐标卡 k 下的 ThetaVector
    """
    _require_interior(mu)
    n = mu.dim - 1
    if not 0 <= k <= n:
        raise ValidationError(f"chart index {k} out of range 0..{n}")
    logs = np.log(mu.weights)
    return ThetaVector(k, np.delete(logs - logs[k], k))


def theta_inverse(theta: ThetaVector) -> SimplexPoint:
    """
    逆坐标卡：在第 k 位补 0 后做 softmax

    坐标跨度超过 MAX_CHART_SPREAD，或 softmax 下溢出零权重时拒绝
    """
    full = theta.full()
    spread = float(np.max(full) - np.min(full))
    if spread > settings.MAX_CHART_SPREAD:
        raise ChartRangeError(
            f"theta coordinate spread {spread!r} exceeds {settings.MAX_CHART_SPREAD!r}"
        )
    weights = softmax(full)
    if np.any(weights == 0.0):
        raise ChartRangeError(f"theta coordinate spread {spread!r} underflows a simplex weight")
    return SimplexPoint(weights)


def _log_density_gap(mu: SimplexPoint, nu: SimplexPoint) -> np.ndarray:
    _require_interior(mu, "mu")
    _require_interior(nu, "nu")
    if mu.dim != nu.dim:
        raise DimensionError(f"length mismatch: {mu.dim} vs {nu.dim}")
    return np.log(mu.weights) - np.log(nu.weights)


def hilbert_via_theta(mu: SimplexPoint, nu: SimplexPoint) -> float:
    """H(μ, ν) = max_k ‖θ_k(μ) − θ_k(ν)‖_∞"""
    _log_density_gap(mu, nu)
    best = 0.0
    for k in range(mu.dim):
        gap = theta_chart(mu, k) - theta_chart(nu, k)
        best = max(best, float(np.max(np.abs(gap))))
    return best


def hilbert_single_chart(mu: SimplexPoint, nu: SimplexPoint, k: int = 0) -> float:
    """单一坐标卡形式 (max_i d_i)^+ + (min_i d_i)^−，d = θ_k(μ) − θ_k(ν)"""
    _log_density_gap(mu, nu)
    d = theta_chart(mu, k) - theta_chart(nu, k)
    return max(float(np.max(d)), 0.0) + max(-float(np.min(d)), 0.0)


def _subset_indicators(n: int) -> np.ndarray:
    """所有非空子集 I ⊆ {1..n} 的指示向量，按位掩码升序，第 i−1 位对应坐标 i"""
    masks = np.arange(1, 2**n)
    return ((masks[:, None] >> np.arange(n)) & 1).astype(float)


def _halfspaces(n: int) -> Tuple[Halfspace, ...]:
    return tuple(
        Halfspace(i, k, sign)
        for i in range(1, n + 1)
        for k in range(i)
        for sign in (1, -1)
    )


def _polytope_at(center_theta: np.ndarray, offsets: np.ndarray, R: float) -> BallPolytope:
    theta_vertices = tuple(ThetaVector(0, center_theta + row) for row in offsets)
    return BallPolytope(
        center=theta_inverse(ThetaVector(0, center_theta)),
        radius=R,
        theta_vertices=theta_vertices,
        simplex_vertices=tuple(theta_inverse(v) for v in theta_vertices),
        halfspaces=_halfspaces(center_theta.size),
    )


def _vertex_offsets(n: int, R: float) -> np.ndarray:
    indicators = _subset_indicators(n)
    return np.vstack([R * indicators, -R * indicators])


def ball_vertices(nu: SimplexPoint, R: float) -> BallPolytope:
    """
    半径 R 的 Hilbert 球多面体

    顶点为 θ_0(ν) ± R·1_I，I 取遍 {1..n} 的非空子集，共 2(2^n − 1) 个。
    先全部 "+" 再全部 "−"，同号内按子集位掩码升序。
    """
    _require_interior(nu, "center")
    R = _check_radius(R)
    n = nu.dim - 1
    if n > settings.MAX_BALL_DIMENSION:
        raise UnsupportedDimensionError(
            f"ball enumeration supports n <= {settings.MAX_BALL_DIMENSION}, got n = {n}"
        )
    center = theta_chart(nu, 0)
    polytope = _polytope_at(center.coords, _vertex_offsets(n, R), R)
    logger.debug("ball_vertices: n=%d R=%r vertices=%d", n, R, len(polytope.theta_vertices))
    return polytope._replace(center=nu)


def ball_contains(nu: SimplexPoint, R: float, mu: SimplexPoint) -> bool:
    """μ 属于以 ν 为中心、半径 R 的闭球"""
    R = _check_radius(R)
    return hilbert_via_theta(mu, nu) <= R + settings.CHART_TOLERANCE


def halfspace_contains(nu: SimplexPoint, R: float, mu: SimplexPoint) -> bool:
    """逐个检查 n(n+1) 个半空间 sign·[(θ^i_0 − θ^k_0)(μ) − (θ^i_0 − θ^k_0)(ν)] ≤ R"""
    R = _check_radius(R)
    d = theta_chart(mu, 0).full() - theta_chart(nu, 0).full()
    for h in _halfspaces(nu.dim - 1):
        if h.sign * (d[h.i] - d[h.k]) > R + settings.CHART_TOLERANCE:
            return False
    return True


def lattice_offsets(shells: int) -> List[Tuple[int, int]]:
    """六边形格点 (a, b)，满足 max(|a|, |b|, |a+b|) ≤ shells，按层、a、b 排序"""
    points = [
        (a, b)
        for a in range(-shells, shells + 1)
        for b in range(-shells, shells + 1)
        if max(abs(a), abs(b), abs(a + b)) <= shells
    ]
    return sorted(points, key=lambda ab: (max(abs(ab[0]), abs(ab[1]), abs(ab[0] + ab[1])), ab))


def tile(center: SimplexPoint, R: float, shells: int) -> List[BallPolytope]:
    """
    用平移的六边形球平铺 S² 的一块邻域

    θ_0 坐标下的平移格为 {a·(2R, R) + b·(R, 2R)}，格行列式 3R² 等于六边形面积
    """
    if center.dim != 3:
        raise UnsupportedDimensionError(f"tiling is implemented for n = 2 only, got n = {center.dim - 1}")
    _require_interior(center, "center")
    R = _check_radius(R)
    if shells < 0:
        raise ValidationError(f"shells must be nonnegative, got {shells}")
    base = theta_chart(center, 0).coords
    offsets = _vertex_offsets(2, R)
    u = np.array([2.0 * R, R])
    v = np.array([R, 2.0 * R])
    tiles = [_polytope_at(base + a * u + b * v, offsets, R) for a, b in lattice_offsets(shells)]
    logger.debug("tile: R=%r shells=%d balls=%d", R, shells, len(tiles))
    return tiles


def ordered_vertices(polytope: BallPolytope) -> List[int]:
    """二维多面体顶点按绕中心的极角排成环"""
    if polytope.n != 2:
        raise DimensionError(f"cyclic vertex order needs n = 2, got n = {polytope.n}")
    points = polytope.theta_array()
    centroid = points.mean(axis=0)
    angles = np.arctan2(points[:, 1] - centroid[1], points[:, 0] - centroid[0])
    return [int(i) for i in np.argsort(angles, kind="stable")]


def straight_line_images(
    center: SimplexPoint,
    directions: Sequence[Sequence[float]],
    extent: float,
    samples: int = 101,
) -> List[np.ndarray]:
    """过 θ_0(center) 的直线 θ_0(center) + t·d，t ∈ [−extent, extent]，在单纯形中的像"""
    if samples < 2:
        raise ValidationError(f"samples must be at least 2, got {samples}")
    base = theta_chart(center, 0).coords
    ts = np.linspace(-float(extent), float(extent), samples)
    curves = []
    for direction in directions:
        d = np.asarray(direction, dtype=float)
        if d.shape != base.shape:
            raise DimensionError(f"direction must have {base.size} components, got {d.size}")
        curves.append(np.stack([theta_inverse(ThetaVector(0, base + t * d)).weights for t in ts]))
    return curves
