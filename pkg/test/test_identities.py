#!/usr/bin/env python3
"""
测试组合恒等式的精确校验
"""

import sys
from pathlib import Path

# 添加项目根目录到Python路径
sys.path.insert(0, str(Path(__file__).resolve().parent.parent))

from src.processors.identities import (
    binomial_sum, central_binomial_pair, check_identities, factorial_sum, geometric_series_pair
)


def test_binomial_sum_small():
    """小参数的二项式和"""
    assert binomial_sum(0, 1) == (1, 1)
    assert binomial_sum(1, 0) == (1, 1)
    lhs, rhs = binomial_sum(2, 3)
    assert lhs == rhs


def test_factorial_sum_small():
    """小参数的阶乘和"""
    assert factorial_sum(0, 0) == (1, 1)
    assert factorial_sum(0, 1) == (4, 4)
    assert factorial_sum(1, 0) == (4, 4)
    lhs, rhs = factorial_sum(3, 4)
    assert lhs == rhs


def test_series_pairs():
    """级数恒等式两侧系数相同"""
    for p in range(6):
        lhs, rhs = geometric_series_pair(p, 12)
        assert lhs == rhs, p
    lhs, rhs = central_binomial_pair(15)
    assert lhs == rhs
    assert lhs[3] == 20


def test_check_identities():
    """全部恒等式在给定范围内成立"""
    checks = check_identities(max_pq=8, order=16)
    assert [c.name for c in checks] == ["binomial_sum", "factorial_sum", "geometric_series", "central_binomial_series"]
    for check in checks:
        assert check.passed, check.describe()
    binomial, factorial = checks[0], checks[1]
    assert binomial.checked == 9 * 9 - 1
    assert factorial.checked == 9 * 9
    assert checks[2].checked == 9


if __name__ == "__main__":
    tests = [test_binomial_sum_small, test_factorial_sum_small, test_series_pairs, test_check_identities]
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
