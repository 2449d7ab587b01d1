"""
S³ 上的 Haar 积分
精确球面单项式积分（高斯化方法）、多项式积分，以及带种子的蒙特卡洛积分
"""

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Optional, Sequence, Tuple, Union

import numpy as np

from ..core import config, get_logger
from ..core.errors import ValidationError
from ..algebra.exact_arith import Poly4, poly_integrate_ready
from ..scheduler import WorkScheduler, work_scheduler


logger = get_logger('haar_integration')


@dataclass(frozen=True)
class Monomial4:
    """a^e_a b^e_b c^e_c d^e_d"""
    exponents: Tuple[int, int, int, int]

    def __post_init__(self):
        exps = tuple(int(e) for e in self.exponents)
        if len(exps) != 4 or any(e < 0 for e in exps):
            raise ValidationError(f"非法单项式指数: {self.exponents}")
        object.__setattr__(self, 'exponents', exps)

    @property
    def degree(self) -> int:
        return sum(self.exponents)


# 浮点归一化后的模平方容差
SPHERE_TOLERANCE = 1e-9


@dataclass(frozen=True)
class SpherePoint:
    """S³ 上的点"""
    a: float
    b: float
    c: float
    d: float

    def __post_init__(self):
        norm = self.a ** 2 + self.b ** 2 + self.c ** 2 + self.d ** 2
        if abs(norm - 1.0) > SPHERE_TOLERANCE:
            raise ValidationError(f"点不在单位球面上 | 模平方: {norm}")

    def as_array(self) -> np.ndarray:
        return np.array([self.a, self.b, self.c, self.d])


def double_factorial(n: int) -> int:
    """n!!，约定 (−1)!! = 0!! = 1"""
    return math.prod(range(n, 0, -2)) if n > 0 else 1


@lru_cache(maxsize=None)
def _sphere_moment(exponents: Tuple[int, int, int, int]) -> Fraction:
    if any(e % 2 for e in exponents):
        return Fraction(0)
    halves = [e // 2 for e in exponents]
    n = sum(halves)
    # 高斯乘积矩除以 χ²₄ 径向矩 2^n (n+1)!
    gaussian = math.prod(double_factorial(2 * h - 1) for h in halves)
    return Fraction(gaussian, 2 ** n * math.factorial(n + 1))


def sphere_moment(monomial: Union[Monomial4, Sequence[int]]) -> Fraction:
    """
    均匀测度下 ∫_{S³} a^e_a b^e_b c^e_c d^e_d

    任一指数为奇数时为 0；否则把坐标写成独立高斯向量除以其模，
    模的平方服从 χ²₄，偶数阶矩为 2^n (n+1)!。
    """
    if not isinstance(monomial, Monomial4):
        monomial = Monomial4(tuple(monomial))
    return _sphere_moment(monomial.exponents)


def lemma81_moment(k: int, p: int) -> Fraction:
    """∫ a^{2k−2p} b^{2p} 的闭式 4^{−k}/(k+1)! · (2p)!(2k−2p)!/(p!(k−p)!)"""
    if k < 0 or p < 0 or p > k:
        raise ValidationError(f"需要 0 ≤ p ≤ k | k: {k} | p: {p}")
    f = math.factorial
    return Fraction(f(2 * p) * f(2 * k - 2 * p), 4 ** k * f(k + 1) * f(p) * f(k - p))


def integrate_poly(poly: Poly4) -> Union[Fraction, Poly4]:
    """
    多项式在 S³ 上的精确积分

    Returns:
        不含参数 t 时返回 Fraction，否则返回只含 t 的 Poly4
    """
    if not poly.has_parameter():
        return sum((coef * _sphere_moment(exps[:4]) for exps, coef in poly_integrate_ready(poly)),
                   Fraction(0))
    terms = {}
    for exps, coef in poly_integrate_ready(poly):
        value = coef * _sphere_moment(exps[:4])
        if value:
            key = (0, 0, 0, 0, exps[4])
            terms[key] = terms.get(key, Fraction(0)) + value
    return Poly4(terms)


# ---------------------------------------------------------------------------
# 蒙特卡洛
# ---------------------------------------------------------------------------

def make_generator(seed: Union[int, np.random.SeedSequence]) -> np.random.Generator:
    """PCG64 生成器，种子可以是整数或 SeedSequence"""
    return np.random.Generator(np.random.PCG64(seed))


def sample_sphere(rng: np.random.Generator) -> SpherePoint:
    """单个均匀球面点：四个独立标准高斯归一化"""
    while True:
        g = rng.standard_normal(4)
        norm = float(np.sqrt(np.dot(g, g)))
        if norm > 0.0:
            g = g / norm
            return SpherePoint(*(float(x) for x in g))


def sample_sphere_batch(rng: np.random.Generator, n: int) -> np.ndarray:
    """n 个均匀球面点，形状 (n, 4)"""
    g = rng.standard_normal((n, 4))
    norms = np.sqrt(np.einsum('ij,ij->i', g, g))
    # 零向量概率为零，仍按拒绝处理
    bad = norms == 0.0
    while np.any(bad):
        g[bad] = rng.standard_normal((int(bad.sum()), 4))
        norms = np.sqrt(np.einsum('ij,ij->i', g, g))
        bad = norms == 0.0
    return g / norms[:, None]


@dataclass
class RunningMoments:
    """均值与二阶中心矩的累积量，支持 Chan 合并"""
    count: int = 0
    mean: np.ndarray = field(default_factory=lambda: np.zeros(1))
    m2: np.ndarray = field(default_factory=lambda: np.zeros(1))

    @classmethod
    def from_samples(cls, values: np.ndarray) -> 'RunningMoments':
        values = np.asarray(values, dtype=float)
        if values.ndim == 1:
            values = values[:, None]
        if values.shape[0] == 0:
            return cls(0, np.zeros(values.shape[1]), np.zeros(values.shape[1]))
        mean = values.mean(axis=0)
        m2 = ((values - mean) ** 2).sum(axis=0)
        return cls(values.shape[0], mean, m2)

    def merge(self, other: 'RunningMoments') -> 'RunningMoments':
        if self.count == 0:
            return other
        if other.count == 0:
            return self
        n = self.count + other.count
        delta = other.mean - self.mean
        mean = self.mean + delta * (other.count / n)
        m2 = self.m2 + other.m2 + delta ** 2 * (self.count * other.count / n)
        return RunningMoments(n, mean, m2)

    @property
    def stderr(self) -> np.ndarray:
        if self.count < 2:
            return np.full_like(self.mean, np.inf)
        return np.sqrt(self.m2 / (self.count - 1) / self.count)


def shard_sizes(n: int, shard_size: Optional[int] = None) -> Tuple[int, ...]:
    """按固定分片大小切分样本数，切分方式与线程数无关"""
    shard_size = int(shard_size or config.get('monte_carlo.shard_size', 100000))
    full, rest = divmod(n, shard_size)
    return (shard_size,) * full + ((rest,) if rest else ())


def shard_streams(seed: int, count: int) -> Tuple[np.random.SeedSequence, ...]:
    """每个分片一条独立随机流"""
    return tuple(np.random.SeedSequence(seed).spawn(count))


SphereFunction = Union[Poly4, Callable[[np.ndarray], np.ndarray]]


def mc_integrate(f: SphereFunction, n: int, seed: int,
                 shard_size: Optional[int] = None,
                 scheduler: Optional[WorkScheduler] = None) -> Tuple[float, float]:
    """
    蒙特卡洛估计 ∫_{S³} f

    Args:
        f: Poly4，或接受 (m, 4) 数组、返回 (m,) 数组的向量化函数
        n: 样本数，至少为 2
        seed: 64 位种子

    Returns:
        (估计值, 标准误差)
    """
    if n < 2:
        raise ValidationError(f"样本数至少为 2: {n}")
    evaluate = f.evaluate if isinstance(f, Poly4) else f
    sizes = shard_sizes(n, shard_size)
    streams = shard_streams(seed, len(sizes))

    def run_shard(job):
        size, stream = job
        points = sample_sphere_batch(make_generator(stream), size)
        return RunningMoments.from_samples(evaluate(points))

    parts = (scheduler or work_scheduler).map_ordered(run_shard, zip(sizes, streams), label="球面积分分片")
    total = RunningMoments()
    for part in parts:
        total = total.merge(part)
    logger.debug(f"蒙特卡洛积分完成 | 样本: {n} | 分片: {len(sizes)} | 种子: {seed}")
    return float(total.mean[0]), float(total.stderr[0])
