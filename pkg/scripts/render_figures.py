#!/usr/bin/env python3
"""
hilbert-cone - 示意图生成工具
生成 S² 上的六边形 Hilbert 球、直线在单纯形中的像以及球平铺三张 SVG
"""

import argparse
import logging
import sys
from pathlib import Path

import numpy as np

# 添加项目根目录到Python路径
project_root = Path(__file__).resolve().parent.parent
sys.path.insert(0, str(project_root))

from hilbert_cone.compute.core_metric import pairwise_hilbert
from hilbert_cone.compute.simplex_geometry import ball_vertices, straight_line_images, tile
from hilbert_cone.core.errors import HilbertConeError
from hilbert_cone.core.logging import setup_logging
from hilbert_cone.models.cones import SimplexPoint
from hilbert_cone.utils.svg import RenderStyle, View, render_svg

logger = logging.getLogger("hilbert_cone.scripts.render_figures")

LINE_DIRECTIONS = [(1.0, 0.0), (0.0, 1.0), (1.0, 1.0), (1.0, -1.0), (2.0, 1.0)]


class FigureRenderer:
    def __init__(self, output_dir=None, view=View.SIMPLEX_2D):
        self.output_dir = Path(output_dir) if output_dir else project_root / "figures"
        self.output_dir.mkdir(parents=True, exist_ok=True)
        self.view = View(view)
        self.style = RenderStyle()

    def _write(self, name, svg):
        path = self.output_dir / f"{name}-{self.view.value}.svg"
        path.write_text(svg, encoding="utf-8", newline="\n")
        logger.info("wrote %s", path)
        return path

    def hexagon(self, radius=1.0):
        """均匀中心处的单个球"""
        polytope = ball_vertices(SimplexPoint.uniform(3), radius)
        return self._write("hexagon", render_svg([polytope], self.view, self.style))

    def lines(self, extent=4.0, samples=201):
        """θ_0 平面中过中心的直线在单纯形中的像"""
        center = SimplexPoint.uniform(3)
        curves = straight_line_images(center, LINE_DIRECTIONS, extent, samples)
        if self.view is View.THETA_PLANE:
            curves = [np.log(c[:, 1:]) - np.log(c[:, :1]) for c in curves]
        return self._write("lines", render_svg([], self.view, self.style, curves))

    def tiling(self, radius=0.5, shells=2):
        """半径 0.5 的球按六边形格平铺"""
        balls = tile(SimplexPoint.uniform(3), radius, shells)
        if len(balls) > 1:
            distances = pairwise_hilbert([b.center for b in balls])
            separation = distances[~np.eye(len(balls), dtype=bool)].min()
            logger.info("tiling: %d balls, nearest centers at H = %.6g (2R = %.6g)", len(balls), separation, 2 * radius)
        return self._write("tiling", render_svg(balls, self.view, self.style))

    def render_all(self):
        return [self.hexagon(), self.lines(), self.tiling()]


def main():
    parser = argparse.ArgumentParser(description='示意图生成工具')
    parser.add_argument('--figure', choices=['hexagon', 'lines', 'tiling', 'all'],
                        default='all', help='要生成的图')
    parser.add_argument('--view', choices=[v.value for v in View],
                        default=View.SIMPLEX_2D.value, help='坐标系')
    parser.add_argument('--output-dir', help='输出目录，默认 figures/')
    parser.add_argument('--radius', type=float, help='球半径')
    parser.add_argument('--shells', type=int, default=2, help='平铺层数')

    args = parser.parse_args()
    setup_logging("INFO")

    renderer = FigureRenderer(args.output_dir, args.view)
    try:
        if args.figure == 'hexagon':
            renderer.hexagon(args.radius or 1.0)
        elif args.figure == 'lines':
            renderer.lines()
        elif args.figure == 'tiling':
            renderer.tiling(args.radius or 0.5, args.shells)
        else:
            renderer.render_all()
    except HilbertConeError as e:
        logger.error("figure generation failed: %s", e)
        sys.exit(1)


if __name__ == "__main__":
    main()
