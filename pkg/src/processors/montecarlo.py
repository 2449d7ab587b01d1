"""
蒙特卡洛谱律处理器
在均匀球面点上对模型矩阵数值求值、求特征值，累积经验矩与直方图
"""

import time
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np

from ..core import config, get_logger, log_manager
from ..core.errors import ValidationError
from ..integration.haar_integration import (
    RunningMoments, make_generator, sample_sphere_batch, shard_sizes, shard_streams
)
from ..scheduler import WorkScheduler, work_scheduler
from .laws import VariableKind, VariableSpec, model_matrix


logger = get_logger('montecarlo')


@dataclass
class MCLawResult:
    """经验谱律"""
    variable: str
    samples: int
    seed: int
    accepted: int
    rejected: int
    moments: Tuple[float, ...]
    stderr: Tuple[float, ...]
    counts: Tuple[int, ...]
    edges: Tuple[float, ...]
    zero_fraction: float

    def moment(self, k: int) -> Tuple[float, float]:
        """(第 k 阶经验矩, 标准误差)"""
        return self.moments[k - 1], self.stderr[k - 1]


@dataclass
class _ShardResult:
    moments: RunningMoments
    counts: np.ndarray
    zeros: int
    eigenvalues: int
    rejected: int


def histogram_upper(v: VariableSpec) -> float:
    """直方图上界：N₃ 的谱在 [0, 3] 内，其余在 [0, 1] 内"""
    return 3.0 if v.kind is VariableKind.N3 else 1.0


def evaluate_model(v: VariableSpec, points: np.ndarray) -> np.ndarray:
    """模型矩阵在一批点上的数值，形状 (n, 4, 4)"""
    t = v.numeric_t()
    matrix = model_matrix(v)
    out = np.empty((points.shape[0], 4, 4))
    for r in range(4):
        for c in range(r, 4):
            values = matrix[r][c].evaluate(points, t)
            out[:, r, c] = values
            out[:, c, r] = values
    return out


def _eigenvalues(matrices: np.ndarray) -> Tuple[np.ndarray, int]:
    """批量对称特征值；整批失败时逐个求，失败的样本剔除"""
    try:
        eigs = np.linalg.eigvalsh(matrices)
        good = np.all(np.isfinite(eigs), axis=1)
        return eigs[good], int((~good).sum())
    except np.linalg.LinAlgError:
        kept, rejected = [], 0
        for m in matrices:
            try:
                e = np.linalg.eigvalsh(m)
            except np.linalg.LinAlgError:
                rejected += 1
                continue
            if np.all(np.isfinite(e)):
                kept.append(e)
            else:
                rejected += 1
        return (np.array(kept) if kept else np.empty((0, 4))), rejected


def mc_law(v: VariableSpec, samples: Optional[int] = None, seed: Optional[int] = None,
           max_order: int = 4, bins: Optional[int] = None, shard_size: Optional[int] = None,
           scheduler: Optional[WorkScheduler] = None) -> MCLawResult:
    """
    蒙特卡洛经验谱律

    每个样本的矩为 ¼Σλ^k（归一化迹）。分片与随机流只由 samples 和 shard_size 决定，
    合并按分片顺序进行，结果与线程数无关。
    """
    samples = int(samples or config.get('monte_carlo.samples', 1000000))
    seed = int(seed if seed is not None else config.get('monte_carlo.seed', 42))
    bins = int(bins or config.get('monte_carlo.histogram_bins', 100))
    zero_tol = float(config.get('monte_carlo.zero_tolerance', 1e-9))
    if samples < 1:
        raise ValidationError(f"样本数必须为正: {samples}")
    if max_order < 1:
        raise ValidationError(f"矩的阶数必须为正: {max_order}")
    v.numeric_t()

    upper = histogram_upper(v)
    sizes = shard_sizes(samples, shard_size)
    streams = shard_streams(seed, len(sizes))
    powers = np.arange(1, max_order + 1)
    start_time = time.time()
    run = f"mc_{v.label}"
    log_manager.log_run_start(run, "蒙特卡洛", samples=samples, seed=seed)

    def run_shard(job) -> _ShardResult:
        size, stream = job
        points = sample_sphere_batch(make_generator(stream), size)
        eigs, rejected = _eigenvalues(evaluate_model(v, points))
        per_sample = 0.25 * (eigs[:, :, None] ** powers).sum(axis=1)
        counts, _ = np.histogram(np.clip(eigs.ravel(), 0.0, upper), bins=bins, range=(0.0, upper))
        zeros = int((np.abs(eigs) < zero_tol).sum())
        return _ShardResult(RunningMoments.from_samples(per_sample), counts, zeros, eigs.size, rejected)

    parts = (scheduler or work_scheduler).map_ordered(run_shard, zip(sizes, streams), label=f"蒙特卡洛 {v.label}")

    total = RunningMoments()
    counts = np.zeros(bins, dtype=np.int64)
    zeros = eigen_total = rejected = 0
    for part in parts:
        total = total.merge(part.moments)
        counts += part.counts
        zeros += part.zeros
        eigen_total += part.eigenvalues
        rejected += part.rejected

    if rejected:
        logger.warning(f"特征值求解失败的样本已剔除 | 变量: {v.label} | 数量: {rejected}")
    edges = np.linspace(0.0, upper, bins + 1)
    result = MCLawResult(
        variable=v.label,
        samples=samples,
        seed=seed,
        accepted=total.count,
        rejected=rejected,
        moments=tuple(float(x) for x in total.mean),
        stderr=tuple(float(x) for x in total.stderr),
        counts=tuple(int(c) for c in counts),
        edges=tuple(float(e) for e in edges),
        zero_fraction=zeros / eigen_total if eigen_total else 0.0,
    )
    log_manager.log_run_complete(run, "蒙特卡洛", time.time() - start_time)
    return result
