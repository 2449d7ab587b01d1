"""
调度器模块
负责分片计算的并行执行
"""

from .work_scheduler import WorkScheduler, work_scheduler

__all__ = [
    'WorkScheduler',
    'work_scheduler'
]
