#!/usr/bin/env python3
"""
测试非交叉划分、Kreweras 补与 join
"""

import sys
from pathlib import Path

# 添加项目根目录到Python路径
sys.path.insert(0, str(Path(__file__).resolve().parent.parent))

from src.core.errors import LimitExceededError, ValidationError
from src.algebra.nc_combinatorics import (
    NCPartition, SetPartition, catalan, delta, enumerate_nc, is_noncrossing, join, kreweras,
    kreweras_by_interleaving, one_partition, set_partitions, zero_partition
)


def test_parse_and_noncrossing():
    """划分文本格式与非交叉判定"""
    p = SetPartition.parse("{1,5}{2}{3,4}{6}")
    assert str(p) == "{1,5}{2}{3,4}{6}"
    assert is_noncrossing(p)
    assert not is_noncrossing(SetPartition.parse("{1,3}{2,4}"))
    try:
        NCPartition.of(SetPartition.parse("{1,3}{2,4}"))
        assert False
    except ValidationError:
        pass
    for bad in ("{1,2}{2}", "{1}{3}", "1,2"):
        try:
            SetPartition.parse(bad)
            assert False, bad
        except ValidationError:
            pass


def test_catalan_counts():
    """|NC(k)| = C_k，且等于穷举集合划分后筛选的个数"""
    assert [catalan(k) for k in range(1, 9)] == [1, 2, 5, 14, 42, 132, 429, 1430]
    for k in range(1, 9):
        assert len(enumerate_nc(k)) == catalan(k)
    for k in range(1, 7):
        assert len([p for p in set_partitions(k) if is_noncrossing(p)]) == catalan(k)
    try:
        enumerate_nc(11)
        assert False
    except LimitExceededError:
        pass


def test_canonical_order():
    """规范顺序：0_k 在最前"""
    assert enumerate_nc(2) == [zero_partition(2), one_partition(2)]
    for k in range(1, 6):
        assert enumerate_nc(k)[0] == zero_partition(k)


def test_kreweras():
    """Kreweras 补的示例、交错定义一致性与对合性质"""
    p = SetPartition.parse("{1,5}{2}{3,4}{6}")
    assert kreweras(p) == SetPartition.parse("{1,2,4}{3}{5,6}")
    for k in range(1, 7):
        assert kreweras(zero_partition(k)) == one_partition(k)
        assert kreweras(one_partition(k)) == zero_partition(k)
        for q in enumerate_nc(k):
            assert kreweras(q) == kreweras_by_interleaving(q)
            # |p| + |K(p)| = k + 1
            assert q.size + kreweras(q).size == k + 1
    try:
        kreweras(SetPartition.parse("{1,3}{2,4}"))
        assert False
    except ValidationError:
        pass


def test_join_and_delta():
    """join 与 δ 指示函数"""
    p = SetPartition.parse("{1,2}{3}{4}")
    q = SetPartition.parse("{1}{2,3}{4}")
    assert join(p, q) == SetPartition.parse("{1,2,3}{4}")
    assert join(zero_partition(4), q) == q

    assert delta(SetPartition.parse("{1,3}{2}"), (2, 4, 2)) == 1
    assert delta(SetPartition.parse("{1,3}{2}"), (2, 4, 3)) == 0
    assert delta(zero_partition(3), (1, 2, 3)) == 1
    try:
        delta(zero_partition(3), (1, 2))
        assert False
    except ValidationError:
        pass


if __name__ == "__main__":
    tests = [test_parse_and_noncrossing, test_catalan_counts, test_canonical_order, test_kreweras, test_join_and_delta]
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
