"""
Stieltjes 反演处理器
由 Cauchy 变换在上半平面的值反演密度 −Im G(x+iε)/π，
对 ε 做 Neville 外推；v_t 只有 G′ 的闭式，G 沿竖直路径数值积分得到
"""

import math
import time
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

import numpy as np
from scipy import integrate

from ..core import config, get_logger, log_manager
from ..core.errors import NoClosedFormError, ValidationError
from ..scheduler import WorkScheduler, work_scheduler
from .cauchy import cauchy_closed, cauchy_series, g_series_from_derivative
from .laws import VariableKind, VariableSpec


logger = get_logger('density')


@dataclass(frozen=True)
class DensityPoint:
    """网格点上的密度估计"""
    x: float
    density: float
    converged: bool
    raw: Tuple[float, ...] = ()


@dataclass(frozen=True)
class AtomEstimate:
    """x0 处的原子质量估计"""
    x: float
    mass: float
    converged: bool


def parse_grid(text: str) -> Tuple[float, float, int]:
    """解析 "a:b:n" """
    parts = text.split(":")
    if len(parts) != 3:
        raise ValidationError(f"网格格式应为 a:b:n: {text!r}")
    try:
        x_min, x_max, n = float(parts[0]), float(parts[1]), int(parts[2])
    except ValueError as e:
        raise ValidationError(f"网格格式应为 a:b:n: {text!r}") from e
    return x_min, x_max, n


def parse_eps(text: str) -> Tuple[float, ...]:
    """解析逗号分隔的 ε 序列"""
    try:
        return eps_schedule([float(e) for e in text.split(",")])
    except ValueError as e:
        raise ValidationError(f"ε 序列格式错误: {text!r}") from e


def make_grid(x_min: float, x_max: float, n: int) -> np.ndarray:
    """(0, 1) 内的等距网格"""
    if n < 1:
        raise ValidationError(f"网格点数必须为正: {n}")
    if not (0.0 < x_min <= x_max < 1.0):
        raise ValidationError(f"网格必须落在 (0, 1) 内: [{x_min}, {x_max}]")
    if n == 1:
        return np.array([x_min])
    return np.linspace(x_min, x_max, n)


def eps_schedule(schedule: Optional[Sequence[float]] = None) -> Tuple[float, ...]:
    """从大到小排列的 ε 序列"""
    values = schedule if schedule is not None else config.get('density.eps_schedule', [1e-2, 1e-3, 1e-4, 1e-5, 1e-6])
    values = tuple(sorted((float(e) for e in values), reverse=True))
    if len(values) < 2 or values[-1] <= 0.0:
        raise ValidationError(f"ε 序列至少需要两个正数: {values}")
    return values


def neville_extrapolate(h: Sequence[float], values: Sequence[float]) -> List[float]:
    """
    Neville 表外推到 h = 0

    Returns:
        第 j 项为用前 j+1 个点插值多项式在 0 处的值
    """
    n = len(h)
    p = list(values)
    estimates = [p[0]]
    for m in range(1, n):
        for i in range(n - m):
            p[i] = (h[i] * p[i + 1] - h[i + m] * p[i]) / (h[i] - h[i + m])
        estimates.append(p[0])
    return estimates


def _converged(estimates: Sequence[float], tolerance: float) -> bool:
    last, previous = estimates[-1], estimates[-2]
    return bool(np.isfinite(last)) and abs(last - previous) <= tolerance * max(1.0, abs(last))


class _VerticalCauchy:
    """G(x + iε) 在一列 ε 上的值"""

    def __init__(self, v: VariableSpec):
        if v.kind in (VariableKind.M3, VariableKind.N3):
            raise NoClosedFormError(f"变量 {v.label} 没有闭式 Cauchy 变换，无法反演密度")
        self.v = v
        self.anchor_height = float(config.get('density.anchor_height', 8.0))
        self.quad_limit = int(config.get('density.quad_limit', 200))
        self._g_series = None
        if v.kind is VariableKind.VT:
            order = int(config.get('density.series_order', 60))
            self._g_series = g_series_from_derivative(cauchy_series(v, order))
            self._t = v.numeric_t()

    def _segment(self, x: float, low: float, high: float) -> complex:
        """∫_{low}^{high} G′(x+iy)·i dy，换元 y = e^u"""
        def integrand(u: float) -> complex:
            y = math.exp(u)
            return 1j * cauchy_closed(self.v, complex(x, y)) * y

        a, b = math.log(low), math.log(high)
        real, _ = integrate.quad(lambda u: integrand(u).real, a, b, limit=self.quad_limit)
        imag, _ = integrate.quad(lambda u: integrand(u).imag, a, b, limit=self.quad_limit)
        return complex(real, imag)

    def values(self, x: float, schedule: Sequence[float]) -> List[complex]:
        if self._g_series is None:
            return [cauchy_closed(self.v, complex(x, eps)) for eps in schedule]
        # G(x+iε) = G(x+iY) − ∫_ε^Y G′(x+iy)·i dy，按 ε 从大到小逐段累加
        top = complex(x, self.anchor_height)
        current = complex(self._g_series.evaluate(1.0 / top, self._t))
        high = self.anchor_height
        result = []
        for eps in schedule:
            current -= self._segment(x, eps, high)
            high = eps
            result.append(current)
        return result


def stieltjes_density(v: VariableSpec, grid: Sequence[float], schedule: Optional[Sequence[float]] = None,
                      tolerance: Optional[float] = None,
                      scheduler: Optional[WorkScheduler] = None) -> List[DensityPoint]:
    """
    在网格上反演密度 f(x) ≈ −Im G(x+iε)/π，对 ε → 0 外推

    每个网格点单独给出收敛标记：最后两级外推值之差不超过 tolerance·max(1, |f|)。
    """
    schedule = eps_schedule(schedule)
    tolerance = float(tolerance if tolerance is not None else config.get('density.tolerance', 1e-6))
    grid = [float(x) for x in grid]
    if any(not 0.0 < x < 1.0 for x in grid):
        raise ValidationError("网格必须落在 (0, 1) 内")
    start_time = time.time()
    run = f"density_{v.label}"
    log_manager.log_run_start(run, "Stieltjes 反演", points=len(grid))
    vertical = _VerticalCauchy(v)

    def invert(x: float) -> DensityPoint:
        raw = [-g.imag / math.pi for g in vertical.values(x, schedule)]
        estimates = neville_extrapolate(schedule, raw)
        return DensityPoint(x, float(estimates[-1]), _converged(estimates, tolerance), tuple(raw))

    points = (scheduler or work_scheduler).map_ordered(invert, grid, label=f"密度网格 {v.label}")
    failed = sum(1 for p in points if not p.converged)
    if failed:
        logger.warning(f"外推未收敛 | 变量: {v.label} | 点数: {failed}/{len(points)}")
    log_manager.log_run_complete(run, "Stieltjes 反演", time.time() - start_time)
    return points


def atom_mass(v: VariableSpec, x0: float, schedule: Optional[Sequence[float]] = None,
              tolerance: Optional[float] = None) -> AtomEstimate:
    """
    x0 处的原子质量 lim_{ε→0} Re(iε·G(x0+iε))

    取最小 ε 处的值；最后两个 ε 的值之差不超过 tolerance 时视为收敛。
    """
    schedule = eps_schedule(schedule)
    tolerance = float(tolerance if tolerance is not None else config.get('density.atom_tolerance', 1e-4))
    values = _VerticalCauchy(v).values(float(x0), schedule)
    masses = [(1j * eps * g).real for eps, g in zip(schedule, values)]
    converged = abs(masses[-1] - masses[-2]) <= tolerance
    logger.debug(f"原子质量 | 变量: {v.label} | x0: {x0} | 质量: {masses[-1]:.8f} | 收敛: {converged}")
    return AtomEstimate(float(x0), float(masses[-1]), bool(converged))
