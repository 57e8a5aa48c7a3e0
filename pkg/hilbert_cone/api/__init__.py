from typing import NamedTuple


class CommandResult(NamedTuple):
    """子命令的主输出文本与退出码"""

    text: str
    exit_code: int = 0
