#!/usr/bin/env python3
"""
测试工作调度器：结果顺序与并发数配置
"""

import sys
import time
import threading
from pathlib import Path

# 添加项目根目录到Python路径
sys.path.insert(0, str(Path(__file__).resolve().parent.parent))

from src.scheduler import WorkScheduler


def test_configure():
    """并发数至少为 1，None 时取配置或 CPU 核心数"""
    assert WorkScheduler(3).max_workers == 3
    assert WorkScheduler().max_workers >= 1
    scheduler = WorkScheduler(1)
    scheduler.configure(4)
    assert scheduler.max_workers == 4


def test_map_ordered():
    """结果按输入顺序返回，与完成顺序无关"""
    def slow_square(x: int) -> int:
        # 小的数睡得更久，完成顺序与提交顺序相反
        time.sleep(0.01 * (5 - x))
        return x * x

    items = list(range(5))
    assert WorkScheduler(4).map_ordered(slow_square, items) == [0, 1, 4, 9, 16]
    assert WorkScheduler(1).map_ordered(slow_square, items) == [0, 1, 4, 9, 16]
    assert WorkScheduler(4).map_ordered(slow_square, []) == []


def test_runs_in_threads():
    """多于一个任务时使用线程池"""
    seen = set()

    def record(_):
        seen.add(threading.get_ident())
        time.sleep(0.02)
        return None

    WorkScheduler(4).map_ordered(record, range(8), label="线程测试")
    assert threading.get_ident() not in seen
    try:
        WorkScheduler(2).map_ordered(lambda x: 1 // x, [1, 0])
        assert False
    except ZeroDivisionError:
        pass


if __name__ == "__main__":
    tests = [test_configure, test_map_ordered, test_runs_in_threads]
    failed = 0
    for test in tests:
        try:
            test()
            print(f"✓ {test.__doc__}")
        except Exception as e:
            failed += 1
            print(f"✗ {test.__doc__}: {e}")
    print(f"\n{'✓ 全部通过' if not failed else f'✗ {failed} 项失败'}")
    sys.exit(1 if failed else 0)
