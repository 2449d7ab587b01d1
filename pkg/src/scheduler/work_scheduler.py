"""
工作调度器
用线程池执行相互独立的分片计算，结果按提交顺序返回，与线程数无关
"""

import os
import time
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Iterable, List, Optional, TypeVar
from ..core import config, get_logger


T = TypeVar('T')
R = TypeVar('R')


class WorkScheduler:
    """工作调度器类"""
    
    def __init__(self, max_workers: Optional[int] = None):
        self.logger = get_logger('work_scheduler')
        self.configure(max_workers)
    
    def configure(self, max_workers: Optional[int] = None):
        """设置最大并发数，0 或 None 表示使用配置值或全部核心"""
        workers = max_workers or config.get('scheduler.max_workers', 0) or os.cpu_count() or 1
        self.max_workers = max(1, int(workers))
        self.logger.debug(f"工作调度器配置 | 最大并发数: {self.max_workers}")
    
    def map_ordered(self, fn: Callable[[T], R], items: Iterable[T], label: str = "分片") -> List[R]:
        """
        并行执行 fn，结果按 items 的顺序返回
        
        Args:
            fn: 纯函数，不得依赖执行顺序
            items: 输入序列
            label: 日志中的任务名
            
        Returns:
            结果列表
        """
        items = list(items)
        start_time = time.time()
        if self.max_workers == 1 or len(items) <= 1:
            results = [fn(item) for item in items]
        else:
            with ThreadPoolExecutor(max_workers=min(self.max_workers, len(items))) as executor:
                futures = [executor.submit(fn, item) for item in items]
                results = [future.result() for future in futures]
        duration = time.time() - start_time
        self.logger.debug(f"并行任务完成 | 名称: {label} | 数量: {len(items)} | 耗时: {duration:.2f}s")
        return results


# 全局调度器实例
work_scheduler = WorkScheduler()
