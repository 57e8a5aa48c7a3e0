"""
距离与不等式子命令：dist、bounds
"""

import logging

from hilbert_cone.api import CommandResult
from hilbert_cone.compute.core_metric import comparable, hilbert_distance, normalize, t_distance
from hilbert_cone.compute.metric_bounds import all_bounds, kl_divergence, tv_distance
from hilbert_cone.schemas.schemas import RunConfig
from hilbert_cone.utils.files import as_positive_vector, load_document
from hilbert_cone.utils.serialize import dumps_json

logger = logging.getLogger(__name__)


def register(subparsers):
    dist = subparsers.add_parser("dist", help="两个向量之间的 H、T、TV、KL 与可比性")
    dist.add_argument("a", help="向量文档（路径或文本）")
    dist.add_argument("b", help="向量文档（路径或文本）")
    dist.set_defaults(handler=run_dist)

    bounds = subparsers.add_parser("bounds", help="两个测度之间的全部不等式报告")
    bounds.add_argument("a", help="向量文档（按总质量归一化）")
    bounds.add_argument("b", help="向量文档（按总质量归一化）")
    bounds.add_argument("--support", help="一维支撑点文档，默认 0..n")
    bounds.add_argument("--x0", type=float, default=0.0, help="矩的参考点")
    bounds.set_defaults(handler=run_bounds)


def run_dist(args, config: RunConfig) -> CommandResult:
    x = as_positive_vector(load_document(args.a, "vector"))
    y = as_positive_vector(load_document(args.b, "vector"))
    h = hilbert_distance(x, y)
    # TV 与 KL 定义在单纯形上，先归一化
    mu, nu = normalize(x), normalize(y)
    payload = {
        "hilbert": h,
        "t": t_distance(x, y),
        "tv": tv_distance(mu, nu),
        "kl": kl_divergence(mu, nu),
        "comparable": comparable(x, y),
    }
    return CommandResult(dumps_json(payload))


def run_bounds(args, config: RunConfig) -> CommandResult:
    mu = normalize(as_positive_vector(load_document(args.a, "vector")))
    nu = normalize(as_positive_vector(load_document(args.b, "vector")))
    support = None
    if args.support is not None:
        support = load_document(args.support, "vector").values
    reports = all_bounds(mu, nu, support, args.x0, config.tolerances.get("bound"))
    failed = [r for r in reports if r.applicable and not r.holds]
    for r in failed:
        logger.error("bound %s <= %s failed with slack %r", r.lhs_name, r.rhs_name, r.slack)
    return CommandResult(dumps_json(reports), 1 if failed else 0)
