#!/usr/bin/env python3
"""
测试 Gram/Weingarten 矩阵与两条管线的矩比较
"""

import sys
import random
from fractions import Fraction
from pathlib import Path

# 添加项目根目录到Python路径
sys.path.insert(0, str(Path(__file__).resolve().parent.parent))

from src.core.errors import LimitExceededError, ValidationError
from src.algebra.tensor_ops import multi_indices
from src.processors.weingarten import (
    brute_force_gram, check_inverse, gram, haar_moment_u, model_moment, relabel_invariant,
    verify_faithfulness, weingarten_matrix
)
from src.scheduler import WorkScheduler


def test_gram_k2():
    """k = 2 的 Gram 矩阵与逆"""
    g = gram(2)
    assert g.labels == ("{1}{2}", "{1,2}")
    assert g.entries == ((16, 4), (4, 4))
    w = weingarten_matrix(2)
    assert w == tuple(tuple(Fraction(x, 48) for x in row) for row in ((4, -4), (-4, 16)))


def test_gram_brute_force():
    """4^{|p∨q|} 与逐个数多重下标一致，W·G = I"""
    for k in range(1, 5):
        assert gram(k).entries == brute_force_gram(k)
        assert check_inverse(k)
        assert gram(k).size == len(gram(k).partitions)


def test_gram_cap():
    """k 超出 gram_max_k 时在计算前报错"""
    for build in (gram, weingarten_matrix, brute_force_gram):
        for k in (0, 9):
            try:
                build(k)
                assert False, (build.__name__, k)
            except LimitExceededError as e:
                assert e.value == k and e.cap == 8


def test_haar_moments():
    """低阶 Haar 矩"""
    for i in range(1, 5):
        for j in range(1, 5):
            assert haar_moment_u((i,), (j,)) == Fraction(1, 4)
    assert haar_moment_u((1, 2), (1, 2)) == Fraction(1, 12)
    assert haar_moment_u((1, 1), (1, 1)) == Fraction(1, 4)
    # 同一行两个不同列：正交性
    assert haar_moment_u((1, 1), (1, 2)) == 0
    try:
        haar_moment_u((1, 2), (1,))
        assert False
    except ValidationError:
        pass


def test_pipelines_agree():
    """多项式管线、算子管线与 Weingarten 公式给出同一个数"""
    rng = random.Random(23)
    for k in (1, 2, 3):
        indices = list(multi_indices(k))
        for _ in range(15):
            i, j = rng.choice(indices), rng.choice(indices)
            u = haar_moment_u(i, j)
            assert model_moment(i, j, 'polynomial') == u
            assert model_moment(i, j, 'operator') == u
    try:
        model_moment((1,), (1,), 'numeric')
        assert False
    except ValidationError:
        pass


def test_verify_faithfulness():
    """k ≤ 3 全量比较通过，结果与线程数无关"""
    for k in (1, 2, 3):
        report = verify_faithfulness(k, scheduler=WorkScheduler(2))
        assert report.passed, report.describe()
        assert report.compared == 4 ** k * (4 ** k + 1) // 2
        assert report.oracle_checked == report.compared
    single = verify_faithfulness(2, scheduler=WorkScheduler(1))
    assert single.compared == verify_faithfulness(2, scheduler=WorkScheduler(4)).compared
    assert verify_faithfulness(2, pipeline='polynomial').passed


def test_sampled_oracle():
    """k = 4 时多项式管线按种子抽样"""
    report = verify_faithfulness(4, oracle_samples=20, seed=5)
    assert report.passed, report.describe()
    assert report.oracle_checked == 20
    again = verify_faithfulness(4, oracle_samples=20, seed=5)
    assert again.oracle_checked == 20 and again.discrepancy == report.discrepancy


def test_relabel_invariance():
    """S₄ 重新标号不改变 Haar 矩"""
    assert relabel_invariant(2, (2, 1, 4, 3))
    assert relabel_invariant(3, (4, 3, 2, 1))
    try:
        relabel_invariant(2, (1, 1, 2, 3))
        assert False
    except ValidationError:
        pass


if __name__ == "__main__":
    tests = [
        test_gram_k2, test_gram_brute_force, test_gram_cap, test_haar_moments, test_pipelines_agree,
        test_verify_faithfulness, test_sampled_oracle, test_relabel_invariance
    ]
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
