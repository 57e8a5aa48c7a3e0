"""
几何子命令：ball、tile
"""

import logging
from pathlib import Path

from hilbert_cone.api import CommandResult
from hilbert_cone.compute.core_metric import normalize
from hilbert_cone.compute.simplex_geometry import ball_vertices, tile
from hilbert_cone.schemas.schemas import PolytopeDocument, RunConfig, TileDocument
from hilbert_cone.utils.files import as_positive_vector, load_document
from hilbert_cone.utils.serialize import dumps_json
from hilbert_cone.utils.svg import View, render_svg

logger = logging.getLogger(__name__)


def register(subparsers):
    ball = subparsers.add_parser("ball", help="Hilbert 球多面体的顶点与半空间")
    ball.add_argument("center", help="中心向量文档（按总质量归一化）")
    ball.add_argument("R", type=float, help="H 半径")
    ball.set_defaults(handler=run_ball)

    tiling = subparsers.add_parser("tile", help="用 Hilbert 球平铺 S²")
    tiling.add_argument("center", help="中心向量文档（按总质量归一化）")
    tiling.add_argument("R", type=float, help="H 半径")
    tiling.add_argument("shells", type=int, help="六边形格的层数")
    tiling.add_argument("--svg", help="SVG 输出路径")
    tiling.add_argument(
        "--view",
        choices=[v.value for v in View],
        default=View.SIMPLEX_2D.value,
        help="SVG 坐标系：theta 或 simplex",
    )
    tiling.set_defaults(handler=run_tile)


def run_ball(args, config: RunConfig) -> CommandResult:
    center = normalize(as_positive_vector(load_document(args.center, "vector")))
    polytope = ball_vertices(center, args.R)
    return CommandResult(dumps_json(PolytopeDocument.from_polytope(polytope)))


def run_tile(args, config: RunConfig) -> CommandResult:
    center = normalize(as_positive_vector(load_document(args.center, "vector")))
    balls = tile(center, args.R, args.shells)
    if args.svg:
        svg = render_svg(balls, View(args.view))
        Path(args.svg).write_text(svg, encoding="utf-8", newline="\n")
        logger.info("wrote %d balls to %s", len(balls), args.svg)
    document = TileDocument(
        radius=args.R,
        shells=args.shells,
        balls=[PolytopeDocument.from_polytope(b) for b in balls],
        svg_path=args.svg,
    )
    return CommandResult(dumps_json(document))
