"""
算子子命令：tau、tau-kernel、verify、markov
"""

import argparse
import logging

from hilbert_cone.api import CommandResult
from hilbert_cone.compute.contraction import (
    grid_kernel_phi,
    grid_kernel_tau,
    markov_converge,
    matrix_coefficients,
    verify_contraction,
)
from hilbert_cone.compute.core_metric import normalize
from hilbert_cone.schemas.schemas import RunConfig
from hilbert_cone.utils.files import as_kernel, as_matrix, as_positive_vector, load_document
from hilbert_cone.utils.serialize import dumps_json, markov_csv

logger = logging.getLogger(__name__)


def _count(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError(f"expected a nonnegative integer, got {text}")
    return value


def register(subparsers):
    tau = subparsers.add_parser("tau", help="矩阵的 φ、τ 与射影直径")
    tau.add_argument("matrix", help="矩阵文档（路径或文本）")
    tau.set_defaults(handler=run_tau)

    kernel = subparsers.add_parser("tau-kernel", help="网格核的 φ 与 τ")
    kernel.add_argument("grid", help="网格核 JSON 文档")
    kernel.set_defaults(handler=run_tau_kernel)

    verify = subparsers.add_parser("verify", help="随机抽样验证 T 收缩不等式")
    verify.add_argument("matrix", help="矩阵文档（路径或文本）")
    verify.add_argument("--trials", type=int, default=None, help="抽样对数，默认 10000")
    verify.add_argument("--seed", type=int, default=None, help="Philox 种子，默认取 HILBERT_CONE_SEED")
    verify.set_defaults(handler=run_verify)

    markov = subparsers.add_parser("markov", help="马尔可夫链收敛轨迹（CSV）")
    markov.add_argument("P", help="行随机矩阵文档")
    markov.add_argument("mu0", help="初始分布文档（按总质量归一化）")
    markov.add_argument("steps", type=_count, help="迭代步数")
    markov.set_defaults(handler=run_markov)


def run_tau(args, config: RunConfig) -> CommandResult:
    coeffs = matrix_coefficients(as_matrix(load_document(args.matrix, "matrix")))
    payload = {"phi": coeffs.phi, "tau": coeffs.tau, "diameter": coeffs.diameter}
    return CommandResult(dumps_json(payload))


def run_tau_kernel(args, config: RunConfig) -> CommandResult:
    kernel = as_kernel(load_document(args.grid, "kernel_grid"))
    payload = {"phi": grid_kernel_phi(kernel), "tau": grid_kernel_tau(kernel)}
    return CommandResult(dumps_json(payload))


def run_verify(args, config: RunConfig) -> CommandResult:
    A = as_matrix(load_document(args.matrix, "matrix"))
    report = verify_contraction(A, config.trials, config.seed, config.tolerances.get("contraction"))
    if not report.passed:
        logger.error("verify failed: max_violation=%r", report.max_violation)
    if not report.h_passed:
        logger.warning("H check failed: max_h_violation=%r", report.max_h_violation)
    return CommandResult(dumps_json(report), 0 if report.passed else 1)


def run_markov(args, config: RunConfig) -> CommandResult:
    P = as_matrix(load_document(args.P, "matrix"))
    mu0 = normalize(as_positive_vector(load_document(args.mu0, "vector")))
    trace = markov_converge(P, mu0, args.steps, config.tolerances.get("markov"))
    return CommandResult(markov_csv(trace))
