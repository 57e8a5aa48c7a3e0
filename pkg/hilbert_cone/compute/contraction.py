"""
Birkhoff 收缩系数

对可容许非负矩阵与网格核给出闭式 φ、τ、Δ，
并提供随机收缩验证与马尔可夫链收敛证书
"""

import logging
import math
from typing import List, NamedTuple, Optional, Sequence

import numpy as np
from scipy.special import logsumexp

from hilbert_cone.compute.core_metric import (
    LOG_RATIO_MAX,
    LOG_RATIO_MIN,
    hilbert_distance,
    normalize,
    t_from_hilbert,
)
from hilbert_cone.core.config import settings
from hilbert_cone.core.errors import (
    ContractionViolationError,
    DimensionError,
    RatioOverflowError,
    ValidationError,
)
from hilbert_cone.models.cones import ExtendedDistance, PositiveVector, SimplexPoint
from hilbert_cone.models.operators import GridKernel, NonnegMatrix
from hilbert_cone.schemas.schemas import ContractionReport, MarkovStep, MarkovTrace
from hilbert_cone.utils.rng import make_rng, random_positive_pairs

logger = logging.getLogger(__name__)


class Coefficients(NamedTuple):
    """一次求值得到的 φ、τ、Δ"""

    phi: float
    tau: float
    diameter: ExtendedDistance


class ProductTau(NamedTuple):
    tau: float
    tau_bound: float


def _max_row_pair_range(log_values: np.ndarray) -> float:
    """
    max_{i,j} [max_k (ℓ_ik − ℓ_jk) − min_k (ℓ_ik − ℓ_jk)]

    等于 −log φ，按行对分解，复杂度 O(m²p)
    """
    best = 0.0
    for i in range(log_values.shape[0] - 1):
        diff = log_values[i] - log_values[i + 1:]
        spread = np.max(diff, axis=1) - np.min(diff, axis=1)
        best = max(best, float(np.max(spread)))
    return best


def _coefficients_from_spread(spread: float) -> Coefficients:
    # √φ = e^{−Δ/2}，直接由 Δ 求得，避免 φ 下溢后再开方
    root = math.exp(-spread / 2.0)
    tau = (1.0 - root) / (1.0 + root)
    return Coefficients(root * root, tau, ExtendedDistance(spread))


def matrix_coefficients(A: NonnegMatrix) -> Coefficients:
    """
    计算可容许矩阵的 φ(A)、τ(A)、Δ(A)

    含零元素的可容许矩阵必有分子为 0、分母为正的四元组，因此 φ = 0。
    严格正矩阵取 A 与 Aᵀ 两种行对分解的较小 φ，使转置不变性逐位成立。
    """
    if not A.is_strictly_positive:
        return Coefficients(0.0, 1.0, ExtendedDistance.infinite())
    log_a = np.log(A.entries)
    spread = max(_max_row_pair_range(log_a), _max_row_pair_range(log_a.T))
    return _coefficients_from_spread(spread)


def birkhoff_phi(A: NonnegMatrix) -> float:
    """φ(A) = min_{i,j,k,l} A_ik A_jl / (A_jk A_il)，约定 0/0 = 1"""
    return matrix_coefficients(A).phi


def birkhoff_tau(A: NonnegMatrix) -> float:
    """τ(A) = (1 − √φ)/(1 + √φ)"""
    return matrix_coefficients(A).tau


def projective_diameter(A: NonnegMatrix) -> ExtendedDistance:
    """Δ(A) = −log φ(A)，φ = 0 时为 Infinite"""
    return matrix_coefficients(A).diameter


def _log_cross_ratio_scan(log_values: np.ndarray) -> float:
    """穷举全部四元组的对数交比最小值，输入允许 -inf（零元素）"""
    finite = np.isfinite(log_values)
    lv = np.where(finite, log_values, 0.0)
    # 下标顺序 (i, j, k, l)：分子 A_ik A_jl，分母 A_jk A_il
    num_ok = finite[:, None, :, None] & finite[None, :, None, :]
    den_ok = finite[None, :, :, None] & finite[:, None, None, :]
    log_num = lv[:, None, :, None] + lv[None, :, None, :]
    log_den = lv[None, :, :, None] + lv[:, None, None, :]
    if np.any(~num_ok & den_ok):
        return -math.inf
    # 0/0 计为 1，正数/0 为 +∞，二者都不会成为最小值以外的候选
    ratios = np.where(num_ok & den_ok, log_num - log_den, np.where(num_ok, math.inf, 0.0))
    return float(np.min(ratios))


def cross_ratio_scan(A: NonnegMatrix) -> float:
    """穷举四元组求 φ(A)，只用于校验闭式计算"""
    with np.errstate(divide="ignore"):
        log_a = np.log(A.entries)
    return math.exp(_log_cross_ratio_scan(log_a))


def grid_kernel_scan(K: GridKernel) -> float:
    """网格核的穷举 O(m²p²) 交比最小值"""
    return math.exp(_log_cross_ratio_scan(K.log_values))


def grid_kernel_phi(K: GridKernel) -> float:
    """
    φ(K) = min_{a,b,x,y} κ(a,x)κ(b,y) / (κ(a,y)κ(b,x))

    网格上按输出点对分解为 min_k(ℓ_ik − ℓ_jk) + min_l(ℓ_jl − ℓ_il)
    """
    spread = _max_row_pair_range(K.log_values)
    return math.exp(-spread)


def grid_kernel_tau(K: GridKernel) -> float:
    spread = _max_row_pair_range(K.log_values)
    return _coefficients_from_spread(spread).tau


def kernel_apply(K: GridKernel, mu: PositiveVector) -> PositiveVector:
    """
    离散化的核作用 (Kμ)_i = Σ_k κ(a_i, x_k) μ_k · Δa

    在对数空间用 logsumexp 求和，输出严格为正

    Raises:
        RatioOverflowError: 某个输出的对数值超出 float64 可表示范围
    """
    m, p = K.shape
    if mu.dim != p:
        raise DimensionError(f"kernel expects {p} input weights, got {mu.dim}")
    mask = mu.support_mask
    terms = K.log_values[:, mask] + np.log(mu.weights[mask])
    log_out = logsumexp(terms, axis=1) + math.log(K.cell_width)
    outside = np.flatnonzero((log_out <= LOG_RATIO_MIN) | (log_out >= LOG_RATIO_MAX))
    if outside.size:
        i = int(outside[0])
        raise RatioOverflowError(
            f"kernel output {i} has log-value {log_out[i]:.6g}, outside the float64 range "
            f"({LOG_RATIO_MIN:.6g}, {LOG_RATIO_MAX:.6g}); shift the kernel log-values"
        )
    return PositiveVector(np.exp(log_out))


def _batch_hilbert(xs: np.ndarray, ys: np.ndarray) -> np.ndarray:
    """逐行计算严格正向量对的 H"""
    d = np.log(ys) - np.log(xs)
    return np.max(d, axis=1) - np.min(d, axis=1)


def verify_contraction(
    A: NonnegMatrix,
    trials: int,
    seed: int,
    tolerance: Optional[float] = None,
) -> ContractionReport:
    """
    随机抽样验证 T(Ax, Ay) ≤ τ(A)·T(x, y)

    同一批样本上还记录经典不等式 H(Ax, Ay) ≤ τ(A)·H(x, y) 的最大违反量。
    passed 只看 T 的违反量，H 的结果记在 h_passed。
    """
    if trials < 1:
        raise ValidationError(f"trials must be at least 1, got {trials}")
    if tolerance is None:
        tolerance = settings.CONTRACTION_TOLERANCE
    coeffs = matrix_coefficients(A)
    xs, ys = random_positive_pairs(make_rng(seed), trials, A.dim)
    # 可容许矩阵把严格正向量映为严格正向量
    axs = xs @ A.entries.T
    ays = ys @ A.entries.T

    h_before = _batch_hilbert(xs, ys)
    h_after = _batch_hilbert(axs, ays)
    t_violation = np.tanh(h_after / 4.0) - coeffs.tau * np.tanh(h_before / 4.0)
    h_violation = h_after - coeffs.tau * h_before

    max_violation = float(np.max(t_violation))
    max_h_violation = float(np.max(h_violation))
    passed = max_violation <= tolerance
    h_passed = max_h_violation <= tolerance
    logger.debug(
        "verify_contraction: n=%d trials=%d tau=%r max_violation=%r max_h_violation=%r",
        A.dim, trials, coeffs.tau, max_violation, max_h_violation,
    )
    if not passed:
        logger.error("T contraction inequality violated: %r > %r", max_violation, tolerance)
    if not h_passed:
        logger.warning("H contraction inequality violated: %r > %r", max_h_violation, tolerance)
    return ContractionReport(
        tau=coeffs.tau,
        phi=coeffs.phi,
        diameter=float(coeffs.diameter),
        trials=trials,
        seed=seed,
        max_violation=max_violation,
        max_h_violation=max_h_violation,
        tolerance=tolerance,
        passed=passed,
        h_passed=h_passed,
    )


def product_tau(matrices: Sequence[NonnegMatrix]) -> ProductTau:
    """非齐次乘积 A_1 A_2 ⋯ A_m 的 τ 及各因子 τ 的乘积（次乘性上界）"""
    if not matrices:
        raise ValidationError("product_tau needs at least one matrix")
    product = matrices[0]
    bound = birkhoff_tau(matrices[0])
    for A in matrices[1:]:
        if A.dim != product.dim:
            raise DimensionError(f"cannot multiply {product.dim}x{product.dim} by {A.dim}x{A.dim}")
        product = product @ A
        bound *= birkhoff_tau(A)
    return ProductTau(birkhoff_tau(product), bound)


def _check_stochastic(P: NonnegMatrix) -> None:
    sums = P.entries.sum(axis=1)
    bad = np.flatnonzero(np.abs(sums - 1.0) > settings.STOCHASTIC_TOLERANCE)
    if bad.size:
        i = int(bad[0])
        raise ValidationError(f"row {i} of transition matrix sums to {float(sums[i])!r}, expected 1")


def _step(P: NonnegMatrix, mu: SimplexPoint) -> SimplexPoint:
    # 行向量约定 μ_{n+1} = μ_n P
    return normalize(PositiveVector(mu.weights @ P.entries))


class Stationary(NamedTuple):
    point: SimplexPoint
    converged: bool
    iterations: int


def stationary_distribution(P: NonnegMatrix) -> Stationary:
    """
    从均匀分布出发做不动点迭代，直到相邻两步的 H 小于阈值

    达到 STATIONARY_MAX_STEPS 仍未收敛时返回最后一次迭代并记为未收敛
    """
    current = SimplexPoint.uniform(P.dim)
    gap = ExtendedDistance.infinite()
    for iteration in range(1, settings.STATIONARY_MAX_STEPS + 1):
        following = _step(P, current)
        gap = hilbert_distance(current, following)
        if gap.is_finite and gap.value < settings.STATIONARY_TOLERANCE:
            return Stationary(following, True, iteration)
        current = following
    logger.warning(
        "stationary iteration stopped at %d steps with H gap %r",
        settings.STATIONARY_MAX_STEPS,
        float(gap),
    )
    return Stationary(current, False, settings.STATIONARY_MAX_STEPS)


def markov_converge(
    P: NonnegMatrix,
    mu0: SimplexPoint,
    steps: int,
    tolerance: Optional[float] = None,
) -> MarkovTrace:
    """
    迭代 μ_{n+1} = μ_n P 并给出到平稳分布的距离及收缩证书

    Args:
        P: 行随机矩阵
        mu0: 初始分布
        steps: 迭代步数
        tolerance: 证书检查容差，默认取 MARKOV_TOLERANCE

    Returns:
        每一步的 (H, T, TV, certified_bound)；证书为 τ(Pᵀ)^n·H(μ_0, π)，
        μ_0 在边界上时改用 τ^(n−1)·Δ(Pᵀ)
    """
    if mu0.dim != P.dim:
        raise DimensionError(f"initial distribution has {mu0.dim} entries, matrix is {P.dim}x{P.dim}")
    if steps < 0:
        raise ValidationError(f"steps must be nonnegative, got {steps}")
    if tolerance is None:
        tolerance = settings.MARKOV_TOLERANCE
    _check_stochastic(P)

    # 测度上的作用是列向量上的 Pᵀ
    coeffs = matrix_coefficients(P.T)
    if coeffs.tau != birkhoff_tau(P):
        raise ContractionViolationError("tau(P^T) differs from tau(P)")
    tau = coeffs.tau

    warnings: List[str] = []
    if tau == 1.0:
        warnings.append("tau = 1: certified bound degenerates to non-expansiveness")
        logger.warning("markov_converge: %s", warnings[-1])

    stationary = stationary_distribution(P)
    pi = stationary.point
    if not stationary.converged:
        warnings.append(
            f"stationary distribution not converged within {stationary.iterations} steps; "
            "distances are to the last iterate"
        )
        logger.warning("markov_converge: %s", warnings[-1])
    h0 = hilbert_distance(mu0, pi)

    rows: List[MarkovStep] = []
    mu = mu0
    for n in range(steps + 1):
        h = hilbert_distance(mu, pi)
        if h0.is_finite:
            bound = tau**n * h0.value
        elif n >= 1 and coeffs.diameter.is_finite:
            bound = tau ** (n - 1) * coeffs.diameter.value
        else:
            bound = math.inf
        if float(h) > bound + tolerance:
            # 近似 π 不是不动点，证书只对真正的平稳分布成立
            if not stationary.converged:
                logger.warning("markov step %d: H=%r above bound %r for approximate pi", n, float(h), bound)
            else:
                logger.error("markov certificate violated at step %d: H=%r bound=%r", n, float(h), bound)
                raise ContractionViolationError(
                    f"H(mu_{n}, pi) = {float(h)!r} exceeds certified bound {bound!r}"
                )
        rows.append(
            MarkovStep(
                step=n,
                hilbert=float(h),
                t=t_from_hilbert(h),
                tv=float(np.sum(np.abs(mu.weights - pi.weights))),
                certified_bound=bound,
            )
        )
        if n < steps:
            mu = _step(P, mu)

    return MarkovTrace(
        tau=tau,
        stationary=pi.weights.tolist(),
        steps=rows,
        warning="; ".join(warnings) or None,
    )
