import logging
import sys
from pathlib import Path
from typing import Optional

from hilbert_cone.core.config import Settings

ROOT_LOGGER = "hilbert_cone"


class LogManager:
    """日志管理器 - 命令行输出走 stdout，日志统一走 stderr 或日志文件"""

    def __init__(self, level: str = "WARNING", logs_dir: Optional[str] = None):
        self.level = getattr(logging, level.upper(), logging.WARNING)
        self.logs_dir = Path(logs_dir) if logs_dir else None
        self.log_file = self.logs_dir / "hilbert_cone.log" if self.logs_dir else None

        self.setup_loggers()

    def setup_loggers(self):
        """设置包级日志记录器"""
        self.app_logger = logging.getLogger(ROOT_LOGGER)
        self.app_logger.setLevel(self.level)

        formatter = logging.Formatter(
            '%(asctime)s - %(name)s - %(levelname)s - %(message)s'
        )

        json_formatter = logging.Formatter(
            '{"timestamp": "%(asctime)s", "logger": "%(name)s", "level": "%(levelname)s", "message": "%(message)s"}'
        )

        # 重复调用时先清掉旧的处理器
        for handler in list(self.app_logger.handlers):
            self.app_logger.removeHandler(handler)
            handler.close()

        stream_handler = logging.StreamHandler(sys.stderr)
        stream_handler.setFormatter(formatter)
        self.app_logger.addHandler(stream_handler)

        if self.log_file:
            self.logs_dir.mkdir(parents=True, exist_ok=True)
            self._add_file_handler(self.app_logger, self.log_file, json_formatter)

        # 防止重复日志
        self.app_logger.propagate = False

    def _add_file_handler(self, logger, file_path, formatter):
        """为记录器添加文件处理器"""
        handler = logging.FileHandler(file_path, encoding='utf-8')
        handler.setFormatter(formatter)
        logger.addHandler(handler)

    def log_command(self, command: str, exit_code: int):
        """记录子命令执行结果"""
        message = f"command {command} - exit {exit_code}"
        if exit_code == 0:
            self.app_logger.info(message)
        else:
            self.app_logger.warning(message)

    def log_error(self, error_message: str, exception: Optional[Exception] = None):
        """记录错误日志"""
        message = error_message
        if exception:
            message += f" - Exception: {exception}"
        self.app_logger.error(message)


def setup_logging(
    level: Optional[str] = None,
    logs_dir: Optional[str] = None,
    current: Optional[Settings] = None,
) -> LogManager:
    """设置命令行日志，未指定的参数取自环境配置"""
    current = current or Settings()
    return LogManager(level or current.LOG_LEVEL, logs_dir or current.LOG_DIR)
