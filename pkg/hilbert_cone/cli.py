"""
hilbert-cone 命令行入口

退出码：0 成功，1 领域错误或定理检查失败，2 用法错误
"""

import argparse
import logging
import sys
from pathlib import Path
from typing import Optional, Sequence, Tuple

from pydantic import ValidationError as SchemaError

from hilbert_cone.api import distance, geometry, operators
from hilbert_cone.core.config import Settings
from hilbert_cone.core.errors import HilbertConeError, UsageError
from hilbert_cone.core.logging import setup_logging
from hilbert_cone.schemas.schemas import RunConfig

logger = logging.getLogger(__name__)

TOLERANCE_NAMES = ("contraction", "bound", "markov")


def _tolerance(text: str) -> Tuple[str, float]:
    name, sep, value = text.partition("=")
    name = name.strip().lower()
    if not sep or name not in TOLERANCE_NAMES:
        raise argparse.ArgumentTypeError(
            f"expected NAME=VALUE with NAME in {', '.join(TOLERANCE_NAMES)}, got {text!r}"
        )
    try:
        return name, float(value)
    except ValueError:
        raise argparse.ArgumentTypeError(f"tolerance value {value!r} is not a number") from None


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hilbert-cone",
        description="正锥与概率单纯形上的 Hilbert 射影度量工具",
    )
    parser.add_argument("--log-level", default=None, help="日志级别，默认取 HILBERT_CONE_LOG_LEVEL")
    parser.add_argument("--output", default=None, help="把主输出写入文件而不是标准输出")
    parser.add_argument(
        "--tolerance",
        type=_tolerance,
        action="append",
        default=[],
        metavar="NAME=VALUE",
        help="覆盖 contraction / bound / markov 容差，可重复",
    )
    subparsers = parser.add_subparsers(dest="command", metavar="COMMAND")
    distance.register(subparsers)
    operators.register(subparsers)
    geometry.register(subparsers)
    return parser


def _run_config(args, current: Settings) -> RunConfig:
    seed = getattr(args, "seed", None)
    trials = getattr(args, "trials", None)
    try:
        return RunConfig(
            seed=current.DEFAULT_SEED if seed is None else seed,
            trials=10_000 if trials is None else trials,
            tolerances=dict(args.tolerance),
            output_path=args.output,
        )
    except SchemaError as e:
        raise UsageError(e.errors()[0]["msg"]) from e


def run_command(argv: Optional[Sequence[str]] = None) -> int:
    """解析参数、执行子命令并返回退出码"""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        # --help 以 0 退出，其余 argparse 错误均为用法错误
        return 0 if e.code in (0, None) else 2
    if args.command is None:
        parser.print_usage(sys.stderr)
        return 2

    try:
        current = Settings()
        current.validate()
    except ValueError as e:
        print(f"hilbert-cone: error: invalid environment: {e}", file=sys.stderr)
        return UsageError.exit_code

    log_manager = setup_logging(args.log_level, current=current)
    try:
        config = _run_config(args, current)
        result = args.handler(args, config)
    except HilbertConeError as e:
        print(f"hilbert-cone {args.command}: error: {e}", file=sys.stderr)
        log_manager.log_command(args.command, e.exit_code)
        return e.exit_code
    except Exception as e:
        log_manager.log_error(f"unexpected failure in {args.command}", e)
        print(f"hilbert-cone {args.command}: internal error: {e}", file=sys.stderr)
        return 1

    if config.output_path:
        Path(config.output_path).write_text(result.text, encoding="utf-8", newline="\n")
    else:
        sys.stdout.write(result.text)
    log_manager.log_command(args.command, result.exit_code)
    return result.exit_code


def main():
    sys.exit(run_command())


if __name__ == "__main__":
    main()
