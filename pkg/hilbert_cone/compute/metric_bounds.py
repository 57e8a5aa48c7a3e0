"""
度量之间的不等式

全变差、KL、f-散度、一维 W1，以及它们与 Hilbert 度量 H、T 距离之间的上界。
全变差采用 ℓ¹ 约定（保留因子 2），所有报告都在 convention 字段中注明。
"""

import logging
import math
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np
from scipy.special import rel_entr

from hilbert_cone.compute.core_metric import hilbert_distance, t_distance, t_from_hilbert
from hilbert_cone.compute.simplex_geometry import ball_vertices
from hilbert_cone.core.config import settings
from hilbert_cone.core.errors import (
    BoundInapplicableError,
    ContractionViolationError,
    DimensionError,
    DomainError,
    UnsupportedDimensionError,
    ValidationError,
)
from hilbert_cone.models.cones import ExtendedDistance, SimplexPoint
from hilbert_cone.schemas.schemas import BoundReport

logger = logging.getLogger(__name__)

TV_CONVENTION = "tv = l1 (factor-2 convention)"
SUBGRADIENT_STEP = 1e-6


def _check_dims(mu: SimplexPoint, nu: SimplexPoint) -> None:
    if mu.dim != nu.dim:
        raise DimensionError(f"length mismatch: {mu.dim} vs {nu.dim}")


def _report(
    lhs_name: str,
    rhs_name: str,
    lhs: float,
    rhs: float,
    tolerance: Optional[float] = None,
    notes: Optional[Dict] = None,
) -> BoundReport:
    if tolerance is None:
        tolerance = settings.BOUND_TOLERANCE
    slack = rhs - lhs
    return BoundReport(
        lhs_name=lhs_name,
        rhs_name=rhs_name,
        lhs_value=lhs,
        rhs_value=rhs,
        slack=slack,
        holds=slack >= -tolerance,
        convention=TV_CONVENTION,
        tolerance=tolerance,
        notes=notes or {},
    )


def _inapplicable(lhs_name: str, rhs_name: str, reason: str, lhs: Optional[float] = None) -> BoundReport:
    logger.warning("bound %s <= %s not applicable: %s", lhs_name, rhs_name, reason)
    return BoundReport(
        lhs_name=lhs_name,
        rhs_name=rhs_name,
        lhs_value=lhs,
        applicable=False,
        convention=TV_CONVENTION,
        notes={"reason": reason},
    )


def tv_distance(mu: SimplexPoint, nu: SimplexPoint) -> float:
    """‖μ − ν‖_TV = Σ|μ^i − ν^i|，取值于 [0, 2]"""
    _check_dims(mu, nu)
    return math.fsum(np.abs(mu.weights - nu.weights))


def tv_from_t_bound(mu: SimplexPoint, nu: SimplexPoint, tolerance: Optional[float] = None) -> BoundReport:
    """‖μ − ν‖_TV ≤ 2·tanh(H/4)，对所有输入成立且可以取等"""
    return _report("tv", "2*t", tv_distance(mu, nu), 2.0 * t_distance(mu, nu), tolerance)


def atar_zeitouni_bound(mu: SimplexPoint, nu: SimplexPoint, tolerance: Optional[float] = None) -> BoundReport:
    """
    ‖μ − ν‖_TV ≤ (2/log 3)·H

    同时检查 2·tanh(H/4) ≤ min(2, (2/log 3)·H)，即 T 形式的上界更紧
    """
    tv = tv_distance(mu, nu)
    h = hilbert_distance(mu, nu)
    if h.is_infinite:
        return _inapplicable("tv", "(2/log 3)*h", "hilbert distance is infinite", tv)
    rhs = 2.0 / math.log(3.0) * h.value
    sharp = 2.0 * t_from_hilbert(h)
    if sharp > min(2.0, rhs) + 1e-12:
        logger.error("tanh bound %r not dominated by %r", sharp, min(2.0, rhs))
        raise ContractionViolationError(f"2*t = {sharp!r} exceeds min(2, (2/log 3)*h) = {min(2.0, rhs)!r}")
    return _report("tv", "(2/log 3)*h", tv, rhs, tolerance, {"sharp_rhs": sharp})


def vertex_l1_bound(nu: SimplexPoint, R: float) -> float:
    """
    H-球面 {μ : H(μ, ν) = R} 上 ℓ¹ 距离的最大值

    在每个顶点上取值为 g_R^+(S_I) 或 g_R^−(S_I)，S_I = Σ_{i∈I} ν^i
    """
    if not nu.has_full_support:
        raise DomainError("vertex_l1_bound needs an interior center")
    R = float(R)
    if not math.isfinite(R) or R <= 0:
        raise ValidationError(f"radius must be a positive finite real, got {R!r}")
    n = nu.dim - 1
    if n > settings.MAX_BALL_DIMENSION:
        raise UnsupportedDimensionError(
            f"subset enumeration supports n <= {settings.MAX_BALL_DIMENSION}, got n = {n}"
        )
    masks = np.arange(1, 2**n)
    indicators = ((masks[:, None] >> np.arange(n)) & 1).astype(float)
    s = indicators @ nu.weights[1:]
    up = math.expm1(R)
    down = -math.expm1(-R)
    g_plus = 2.0 * up * s * (1.0 - s) / (1.0 + s * up)
    g_minus = 2.0 * down * s * (1.0 - s) / (1.0 - s * down)
    return float(max(np.max(g_plus), np.max(g_minus)))


def vertex_l1_report(mu: SimplexPoint, nu: SimplexPoint, tolerance: Optional[float] = None) -> BoundReport:
    """‖μ − ν‖_TV 不超过半径 H(μ, ν) 的球面上的顶点 ℓ¹ 最大值"""
    tv = tv_distance(mu, nu)
    h = hilbert_distance(mu, nu)
    if not nu.has_full_support or h.is_infinite or h.value == 0.0:
        return _inapplicable("tv", "vertex_l1(h)", "needs an interior nu and 0 < h < inf", tv)
    if nu.dim - 1 > settings.MAX_BALL_DIMENSION:
        return _inapplicable("tv", "vertex_l1(h)", "dimension too large for subset enumeration", tv)
    return _report("tv", "vertex_l1(h)", tv, vertex_l1_bound(nu, h.value), tolerance)


def kl_divergence(mu: SimplexPoint, nu: SimplexPoint) -> ExtendedDistance:
    """D_KL(μ‖ν) = Σ μ^i log(μ^i/ν^i)，supp μ ⊄ supp ν 时为 Infinite"""
    _check_dims(mu, nu)
    if not mu.support <= nu.support:
        return ExtendedDistance.infinite()
    mask = mu.support_mask
    value = math.fsum(rel_entr(mu.weights[mask], nu.weights[mask]))
    return ExtendedDistance(max(value, 0.0))


def kl_from_h_bound(mu: SimplexPoint, nu: SimplexPoint, tolerance: Optional[float] = None) -> BoundReport:
    """D_KL(μ‖ν) ≤ log‖dμ/dν‖_∞ ≤ H(μ, ν)"""
    h = hilbert_distance(mu, nu)
    kl = kl_divergence(mu, nu)
    if h.is_infinite:
        return _inapplicable("kl", "h", "hilbert distance is infinite", float(kl) if kl.is_finite else None)
    return _report("kl", "h", kl.value, h.value, tolerance)


@dataclass(frozen=True)
class ConvexFunctionSpec:
    """
    f-散度的生成函数 f，要求 f(1) = 0 且在 (0, ∞) 上凸

    evaluator 必须接受 numpy 数组并逐元素求值
    """

    name: str
    evaluator: Callable[[np.ndarray], np.ndarray] = field(compare=False)

    def __post_init__(self):
        at_one = float(self.evaluator(np.array([1.0]))[0])
        if abs(at_one) > 1e-12:
            raise ValidationError(f"f({self.name})(1) = {at_one!r}, expected 0")
        grid = np.exp(np.linspace(-6.0, 6.0, 49))
        values = self.evaluator(grid)
        mid = self.evaluator((grid[:, None] + grid[None, :]) / 2.0)
        chord = (values[:, None] + values[None, :]) / 2.0
        # 大数值处按相对误差放宽
        excess = mid - chord - 1e-9 * np.maximum(1.0, np.abs(chord))
        if np.any(excess > 0):
            raise ValidationError(f"f({self.name}) fails midpoint convexity on [e^-6, e^6]")

    def __call__(self, u):
        return self.evaluator(np.asarray(u, dtype=float))

    def subgradient_at_one(self) -> float:
        """1 处次梯度的中心差分估计"""
        h = SUBGRADIENT_STEP
        values = self(np.array([1.0 + h, 1.0 - h]))
        return float((values[0] - values[1]) / (2.0 * h))

    def normalized(self, u):
        """f̄(u) = f(u) − c(u − 1)，使 0 ∈ ∂f̄(1)"""
        u = np.asarray(u, dtype=float)
        return self(u) - self.subgradient_at_one() * (u - 1.0)


def _js(u):
    return 0.5 * (u * np.log(u) - (1.0 + u) * np.log((1.0 + u) / 2.0))


KL = ConvexFunctionSpec("kl", lambda u: u * np.log(u))
REVERSE_KL = ConvexFunctionSpec("reverse_kl", lambda u: -np.log(u))
TOTAL_VARIATION = ConvexFunctionSpec("total_variation", lambda u: 0.5 * np.abs(u - 1.0))
SQUARED_HELLINGER = ConvexFunctionSpec("squared_hellinger", lambda u: (np.sqrt(u) - 1.0) ** 2)
PEARSON_CHI2 = ConvexFunctionSpec("pearson_chi2", lambda u: (u - 1.0) ** 2)
NEYMAN_CHI2 = ConvexFunctionSpec("neyman_chi2", lambda u: (1.0 - u) ** 2 / u)
JENSEN_SHANNON = ConvexFunctionSpec("jensen_shannon", _js)

NAMED_FUNCTIONS: Dict[str, ConvexFunctionSpec] = {
    spec.name: spec
    for spec in (KL, REVERSE_KL, TOTAL_VARIATION, SQUARED_HELLINGER, PEARSON_CHI2, NEYMAN_CHI2, JENSEN_SHANNON)
}


def f_divergence_envelope(h: float, f: ConvexFunctionSpec) -> float:
    """max{f̄(e^{−H}), f̄(e^{H})}，归一化后的 f 在区间 [e^{−H}, e^{H}] 上的最大值"""
    ends = f.normalized(np.array([math.exp(-h), math.exp(h)]))
    return float(np.max(ends))


def _common_support(mu: SimplexPoint, nu: SimplexPoint) -> np.ndarray:
    _check_dims(mu, nu)
    if mu.support != nu.support:
        raise BoundInapplicableError("f-divergence is only evaluated for measures with equal supports")
    return mu.support_mask


def f_divergence(mu: SimplexPoint, nu: SimplexPoint, f: ConvexFunctionSpec) -> float:
    """
    D_f(μ‖ν) = Σ ν^i f(μ^i/ν^i)，只对支撑集相同的测度求值

    Raises:
        BoundInapplicableError: 支撑集不同
        ContractionViolationError: 超过 max{f̄(e^{−H}), f̄(e^{H})}
    """
    mask = _common_support(mu, nu)
    m = mu.weights[mask]
    n = nu.weights[mask]
    value = math.fsum(n * f(np.exp(np.log(m) - np.log(n))))
    envelope = f_divergence_envelope(hilbert_distance(mu, nu).value, f)
    if value > envelope + settings.BOUND_TOLERANCE:
        logger.error("D_%s = %r exceeds envelope %r", f.name, value, envelope)
        raise ContractionViolationError(f"D_{f.name} = {value!r} exceeds envelope {envelope!r}")
    return value


def f_divergence_envelope_bound(
    mu: SimplexPoint,
    nu: SimplexPoint,
    f: ConvexFunctionSpec,
    tolerance: Optional[float] = None,
) -> BoundReport:
    lhs_name = f"d_{f.name}"
    rhs_name = f"envelope_{f.name}(h)"
    try:
        value = f_divergence(mu, nu, f)
    except BoundInapplicableError as e:
        return _inapplicable(lhs_name, rhs_name, str(e))
    return _report(lhs_name, rhs_name, value, f_divergence_envelope(hilbert_distance(mu, nu).value, f), tolerance)


def _check_support_points(points: Sequence[float], dim: int) -> np.ndarray:
    x = np.asarray(points, dtype=float)
    if x.ndim != 1 or x.size != dim:
        raise DimensionError(f"expected {dim} support points, got {x.size}")
    if not np.all(np.isfinite(x)) or np.any(np.diff(x) <= 0):
        raise ValidationError("support points must be finite and strictly increasing")
    return x


def w1_exact_1d(support_points: Sequence[float], mu: SimplexPoint, nu: SimplexPoint) -> float:
    """一维 W1：Σ_i |F_μ(x_i) − F_ν(x_i)|·(x_{i+1} − x_i)"""
    _check_dims(mu, nu)
    x = _check_support_points(support_points, mu.dim)
    cdf_gap = np.cumsum(mu.weights - nu.weights)[:-1]
    return math.fsum(np.abs(cdf_gap) * np.diff(x))


def w1_bound_from_h(
    support_points: Sequence[float],
    mu: SimplexPoint,
    nu: SimplexPoint,
    x0: float = 0.0,
    tolerance: Optional[float] = None,
) -> BoundReport:
    """W1(μ, ν) ≤ (e^H − 1)·Σ|x_i − x0| μ^i；ν 的一阶矩版本记在 notes 中"""
    lhs = w1_exact_1d(support_points, mu, nu)
    h = hilbert_distance(mu, nu)
    if h.is_infinite:
        return _inapplicable("w1", "(e^h-1)*m1(mu)", "hilbert distance is infinite", lhs)
    distance = np.abs(np.asarray(support_points, dtype=float) - x0)
    factor = math.expm1(h.value)
    rhs = factor * math.fsum(distance * mu.weights)
    notes = {"nu_moment_rhs": factor * math.fsum(distance * nu.weights)}
    return _report("w1", "(e^h-1)*m1(mu)", lhs, rhs, tolerance, notes)


def moment_gap_bound(
    support_points: Sequence[float],
    mu: SimplexPoint,
    nu: SimplexPoint,
    x0: float = 0.0,
    q: int = 1,
    tolerance: Optional[float] = None,
) -> BoundReport:
    """|∫ d(x0, x)^q d(μ − ν)| ≤ (e^H − 1)·K_q，K_q 取 μ 的 q 阶矩，ν 的版本记在 notes 中"""
    if q not in (1, 2):
        raise ValidationError(f"moment order must be 1 or 2, got {q}")
    _check_dims(mu, nu)
    x = _check_support_points(support_points, mu.dim)
    weight = np.abs(x - x0) ** q
    lhs = abs(math.fsum(weight * (mu.weights - nu.weights)))
    lhs_name = f"moment_gap_q{q}"
    rhs_name = f"(e^h-1)*m{q}(mu)"
    h = hilbert_distance(mu, nu)
    if h.is_infinite:
        return _inapplicable(lhs_name, rhs_name, "hilbert distance is infinite", lhs)
    factor = math.expm1(h.value)
    notes = {"nu_moment_rhs": factor * math.fsum(weight * nu.weights)}
    return _report(lhs_name, rhs_name, lhs, factor * math.fsum(weight * mu.weights), tolerance, notes)


def t_upper_from_tv(mu: SimplexPoint, nu: SimplexPoint, tolerance: Optional[float] = None) -> BoundReport:
    """T(μ, ν) ≤ (tv/2) / (2·min(min_i μ^i, min_i ν^i))"""
    t = t_distance(mu, nu)
    if not (mu.has_full_support and nu.has_full_support):
        return _inapplicable("t", "(tv/2)/(2*min_mass)", "some weight is zero", t)
    min_mass = min(float(np.min(mu.weights)), float(np.min(nu.weights)))
    rhs = (tv_distance(mu, nu) / 2.0) / (2.0 * min_mass)
    return _report("t", "(tv/2)/(2*min_mass)", t, rhs, tolerance)


def subset_sup_bound(mu: SimplexPoint, nu: SimplexPoint, tolerance: Optional[float] = None) -> BoundReport:
    """sup_A Σ_{i∈A} (μ^i − ν^i) = Σ_{μ>ν}(μ^i − ν^i) ≤ T(μ, ν)"""
    _check_dims(mu, nu)
    diff = mu.weights - nu.weights
    positive = math.fsum(diff[diff > 0])
    negative = math.fsum(-diff[diff < 0])
    return _report("sup_subset_gap", "t", positive, t_distance(mu, nu), tolerance, {"negative_class": negative})


def sharpness_witness(R: float) -> Tuple[SimplexPoint, SimplexPoint]:
    """
    在 n = 1 上构造使 ‖μ − ν‖_TV = 2·tanh(R/4) 的一对测度

    ν = (x*, 1 − x*)，x* = 1/(1 + e^{R/2})；μ 为半径 R 的球中 ℓ¹ 最远的顶点
    """
    x_star = 1.0 / (1.0 + math.exp(R / 2.0))
    nu = SimplexPoint([x_star, 1.0 - x_star])
    polytope = ball_vertices(nu, R)
    mu = max(polytope.simplex_vertices, key=lambda v: tv_distance(v, nu))
    return mu, nu


def all_bounds(
    mu: SimplexPoint,
    nu: SimplexPoint,
    support_points: Optional[Sequence[float]] = None,
    x0: float = 0.0,
    tolerance: Optional[float] = None,
) -> List[BoundReport]:
    """按固定顺序给出全部不等式报告，支撑点默认为 0..n"""
    _check_dims(mu, nu)
    if support_points is None:
        support_points = np.arange(mu.dim, dtype=float)
    reports = [
        tv_from_t_bound(mu, nu, tolerance),
        atar_zeitouni_bound(mu, nu, tolerance),
        subset_sup_bound(mu, nu, tolerance),
        t_upper_from_tv(mu, nu, tolerance),
        vertex_l1_report(mu, nu, tolerance),
        kl_from_h_bound(mu, nu, tolerance),
    ]
    reports.extend(f_divergence_envelope_bound(mu, nu, f, tolerance) for f in NAMED_FUNCTIONS.values())
    reports.append(w1_bound_from_h(support_points, mu, nu, x0, tolerance))
    reports.extend(moment_gap_bound(support_points, mu, nu, x0, q, tolerance) for q in (1, 2))
    return reports
