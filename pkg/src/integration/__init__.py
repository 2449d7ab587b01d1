"""
积分模块
S³ 上的精确积分与蒙特卡洛积分
"""

from .haar_integration import (
    Monomial4, SpherePoint, RunningMoments, sphere_moment, lemma81_moment, integrate_poly,
    sample_sphere, sample_sphere_batch, make_generator, mc_integrate, shard_sizes, shard_streams
)

__all__ = [
    'Monomial4', 'SpherePoint', 'RunningMoments', 'sphere_moment', 'lemma81_moment',
    'integrate_poly', 'sample_sphere', 'sample_sphere_batch', 'make_generator',
    'mc_integrate', 'shard_sizes', 'shard_streams'
]
