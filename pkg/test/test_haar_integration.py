#!/usr/bin/env python3
"""
测试 S³ 上的精确积分与蒙特卡洛积分
"""

import sys
from fractions import Fraction
from pathlib import Path

# 添加项目根目录到Python路径
sys.path.insert(0, str(Path(__file__).resolve().parent.parent))

import numpy as np

from src.core.errors import ValidationError
from src.algebra.exact_arith import PARAMETER_T, SPHERE_COORDINATES, norm_polynomial
from src.integration.haar_integration import (
    Monomial4, RunningMoments, SpherePoint, double_factorial, integrate_poly, lemma81_moment, make_generator,
    mc_integrate, sample_sphere, sample_sphere_batch, shard_sizes, shard_streams, sphere_moment
)
from src.scheduler import WorkScheduler


def test_sphere_moments():
    """球面单项式积分的已知值"""
    assert double_factorial(-1) == 1 and double_factorial(5) == 15
    assert sphere_moment((2, 0, 0, 0)) == Fraction(1, 4)
    assert sphere_moment((4, 0, 0, 0)) == Fraction(1, 8)
    assert sphere_moment((2, 2, 0, 0)) == Fraction(1, 24)
    assert sphere_moment((2, 2, 2, 2)) == Fraction(1, 1920)
    assert sphere_moment(Monomial4((1, 1, 0, 0))) == 0
    assert sphere_moment((0, 0, 0, 0)) == 1
    try:
        Monomial4((1, -1, 0, 0))
        assert False
    except ValidationError:
        pass


def test_lemma81_closed_form():
    """∫a^{2k−2p}b^{2p} 的闭式与单项式积分一致"""
    for k in range(13):
        for p in range(k + 1):
            assert lemma81_moment(k, p) == sphere_moment((2 * k - 2 * p, 2 * p, 0, 0))
    try:
        lemma81_moment(2, 3)
        assert False
    except ValidationError:
        pass


def test_integrate_poly():
    """多项式积分，含参数 t 时返回 t 的多项式"""
    a, b, c, d = SPHERE_COORDINATES
    assert integrate_poly(norm_polynomial()) == 1
    assert integrate_poly(norm_polynomial() ** 3) == 1
    assert integrate_poly((1 - d * d) ** 2) == Fraction(5, 8)
    value = integrate_poly((1 + PARAMETER_T) * a * a)
    assert value == (1 + PARAMETER_T) * Fraction(1, 4)


def test_sampling():
    """球面采样落在单位球面上，且只由种子决定"""
    points = sample_sphere_batch(make_generator(1), 1000)
    assert points.shape == (1000, 4)
    assert np.allclose((points ** 2).sum(axis=1), 1.0)
    again = sample_sphere_batch(make_generator(1), 1000)
    assert np.array_equal(points, again)
    point = sample_sphere(make_generator(2))
    assert abs(float(np.dot(point.as_array(), point.as_array())) - 1.0) < 1e-12


def test_sphere_point_tolerance():
    """归一化的舍入误差可以接受，明显偏离球面的点报错"""
    SpherePoint(1.0 + 1e-11, 0.0, 0.0, 0.0)
    rng = make_generator(11)
    for _ in range(2000):
        sample_sphere(rng)
    try:
        SpherePoint(1.001, 0.0, 0.0, 0.0)
        assert False
    except ValidationError:
        pass


def test_running_moments_merge():
    """分片合并与整体计算一致"""
    values = np.random.default_rng(0).normal(size=(1000, 2))
    whole = RunningMoments.from_samples(values)
    merged = RunningMoments.from_samples(values[:300]).merge(RunningMoments.from_samples(values[300:]))
    assert merged.count == 1000
    assert np.allclose(whole.mean, merged.mean)
    assert np.allclose(whole.stderr, merged.stderr)


def test_shards():
    """分片只由样本数和分片大小决定"""
    assert shard_sizes(250, 100) == (100, 100, 50)
    assert shard_sizes(200, 100) == (100, 100)
    assert len(shard_streams(42, 3)) == 3


def test_mc_integrate():
    """蒙特卡洛积分在 3 倍标准误差内，且与线程数无关"""
    a = SPHERE_COORDINATES[0]
    single = mc_integrate(a ** 4, 20000, seed=9, shard_size=5000, scheduler=WorkScheduler(1))
    parallel = mc_integrate(a ** 4, 20000, seed=9, shard_size=5000, scheduler=WorkScheduler(4))
    assert single == parallel
    mean, stderr = single
    assert abs(mean - 0.125) <= 3 * stderr
    try:
        mc_integrate(a, 1, seed=0)
        assert False
    except ValidationError:
        pass


if __name__ == "__main__":
    tests = [
        test_sphere_moments, test_lemma81_closed_form, test_integrate_poly, test_sampling, test_sphere_point_tolerance,
        test_running_moments_merge, test_shards, test_mc_integrate
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
