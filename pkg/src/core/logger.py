"""
日志管理模块
诊断信息写入 stderr 与 logs/，stdout 只留给数据输出
"""

import sys
from pathlib import Path
from loguru import logger
from typing import Optional
from .config import config


DEFAULT_FORMAT = "{time:YYYY-MM-DD HH:mm:ss} | {level} | {name}:{function}:{line} | {message}"


class LoggerManager:
    """日志管理器"""

    def __init__(self):
        self.logger = logger
        self._console_sink: Optional[int] = None
        self._setup_logger()

    def _setup_logger(self):
        self.logger.remove()

        self.log_config = config.get('logging', {}) or {}
        self.log_format = self.log_config.get('format', DEFAULT_FORMAT)
        self.set_console_level(self.log_config.get('level', 'INFO'))

        logs_dir = config.get_path('logs_dir')
        if logs_dir:
            self._add_file_sink(logs_dir / "pauli_moments_{time:YYYY-MM-DD}.log",
                                self.log_config.get('file_level', 'DEBUG'))
            self._add_file_sink(logs_dir / "error_{time:YYYY-MM-DD}.log", "ERROR")

    def _add_file_sink(self, path: Path, level: str):
        """按配置滚动、保留并压缩的文件日志"""
        self.logger.add(
            path,
            format=self.log_format,
            level=level,
            rotation=self.log_config.get('rotation', '100 MB'),
            retention=self.log_config.get('retention', '30 days'),
            compression=self.log_config.get('compression', 'zip'),
            encoding='utf-8'
        )

    def set_console_level(self, level: str):
        """替换 stderr 处理器，--verbose / --quiet 经由这里生效"""
        if self._console_sink is not None:
            self.logger.remove(self._console_sink)
        self._console_sink = self.logger.add(sys.stderr, format=self.log_format, level=level, colorize=True)

    def get_logger(self, name: str = None):
        return self.logger.bind(name=name) if name else self.logger

    def log_run_start(self, run: str, kind: str, **kwargs):
        details = "".join(f" | {key}: {value}" for key, value in kwargs.items())
        self.logger.info(f"计算开始 | 名称: {run} | 类型: {kind}{details}")

    def log_run_complete(self, run: str, kind: str, duration: float, **kwargs):
        self.logger.info(f"计算完成 | 名称: {run} | 类型: {kind} | 耗时: {duration:.2f}s", extra=kwargs)

    def log_run_error(self, run: str, kind: str, error: Exception, **kwargs):
        self.logger.error(f"计算错误 | 名称: {run} | 类型: {kind} | "
                          f"异常: {type(error).__name__} | 错误: {error}", extra=kwargs)

    def log_check(self, name: str, passed: bool, duration: float, **kwargs):
        """校验结果，失败记为 WARNING，由调用方决定退出码"""
        if passed:
            self.logger.info(f"校验 | 名称: {name} | 结果: 通过 | 耗时: {duration:.2f}s", extra=kwargs)
        else:
            self.logger.warning(f"校验 | 名称: {name} | 结果: 失败 | 耗时: {duration:.2f}s", extra=kwargs)


# 全局日志管理器实例
log_manager = LoggerManager()


def get_logger(name: str = None):
    """获取日志记录器的便捷函数"""
    return log_manager.get_logger(name)
