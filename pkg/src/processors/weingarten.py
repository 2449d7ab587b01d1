"""
Weingarten 处理器
A_s(4) Haar 矩的组合管线（Gram 矩阵与 Weingarten 矩阵），
Pauli 模型矩的多项式管线与算子管线，以及 P = U 的忠实性比较
"""

import time
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import List, Optional, Sequence, Tuple

from ..core import config, get_logger, log_manager
from ..core.errors import ValidationError
from ..algebra.exact_arith import (
    PolyMatrix, RationalMatrix, matrix_identity, matrix_multiply, matrix_trace, rational_matmul,
    rational_matrix_inverse
)
from ..algebra.nc_combinatorics import NCPartition, delta, enumerate_nc, join
from ..algebra.pauli_algebra import check_index, projection_matrix
from ..algebra.tensor_ops import (
    MultiIndex, PauliTensor, fixed_point_projection, multi_indices, omega, r_image, r_star_e_r,
    scalar_product
)
from ..integration.haar_integration import integrate_poly, make_generator
from ..scheduler import WorkScheduler, work_scheduler


logger = get_logger('weingarten')

PIPELINES = ('polynomial', 'operator')

# Gram 元的底数即基本表示的维数
DIMENSION = 4


@dataclass(frozen=True)
class GramMatrix:
    """按 NC(k) 规范顺序排列的 Gram 矩阵"""
    k: int
    partitions: Tuple[NCPartition, ...]
    entries: RationalMatrix

    @property
    def labels(self) -> Tuple[str, ...]:
        return tuple(str(p) for p in self.partitions)

    @property
    def size(self) -> int:
        return len(self.partitions)


@dataclass
class MomentMatrixReport:
    """P 与 U 的比较结果"""
    k: int
    compared: int = 0
    discrepancy: Fraction = Fraction(0)
    oracle_checked: int = 0
    first_mismatch: Optional[Tuple[MultiIndex, MultiIndex, Fraction, Fraction]] = None
    duration: float = 0.0
    notes: List[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.discrepancy == 0 and self.first_mismatch is None

    def describe(self) -> str:
        text = f"k={self.k} 比较 {self.compared} 项，多项式抽查 {self.oracle_checked} 项"
        if self.first_mismatch:
            i, j, p, u = self.first_mismatch
            text += f"，首个不一致 i={i} j={j} P={p} U={u}"
        return text


def _check_pair(i: Sequence[int], j: Sequence[int]) -> Tuple[MultiIndex, MultiIndex]:
    i, j = tuple(i), tuple(j)
    if len(i) != len(j) or not i:
        raise ValidationError(f"多重下标长度不一致: {len(i)} != {len(j)}")
    for x in i + j:
        check_index(x)
    return i, j


@lru_cache(maxsize=None)
def gram(k: int) -> GramMatrix:
    """G_pq = 4^{|p∨q|}"""
    config.check_range("k", k, 'gram_max_k')
    partitions = tuple(enumerate_nc(k))
    entries = tuple(
        tuple(Fraction(DIMENSION ** join(p, q).size) for q in partitions)
        for p in partitions
    )
    return GramMatrix(k, partitions, entries)


def brute_force_gram(k: int) -> RationalMatrix:
    """逐个数多重下标：#{i : δ_pi = δ_qi = 1}"""
    config.check_range("k", k, 'gram_max_k')
    partitions = enumerate_nc(k)
    indices = list(multi_indices(k))
    support = [[delta(p, i) for i in indices] for p in partitions]
    return tuple(
        tuple(Fraction(sum(a * b for a, b in zip(sp, sq))) for sq in support)
        for sp in support
    )


@lru_cache(maxsize=None)
def weingarten_matrix(k: int) -> RationalMatrix:
    """gram(k) 的精确逆"""
    config.check_range("k", k, 'gram_max_k')
    start_time = time.time()
    matrix = rational_matrix_inverse(gram(k).entries)
    logger.debug(f"Weingarten 矩阵完成 | k: {k} | 维数: {len(matrix)} | 耗时: {time.time() - start_time:.2f}s")
    return matrix


def check_inverse(k: int) -> bool:
    """W·G = I"""
    product = rational_matmul(weingarten_matrix(k), gram(k).entries)
    n = len(product)
    return all(product[a][b] == (1 if a == b else 0) for a in range(n) for b in range(n))


def _delta_vector(i: MultiIndex) -> Tuple[int, ...]:
    return tuple(delta(p, i) for p in enumerate_nc(len(i)))


def haar_moment_u(i: Sequence[int], j: Sequence[int]) -> Fraction:
    """∫ u_{i₁j₁}…u_{i_kj_k} = Σ_{p,q} δ_pi δ_qj W_pq"""
    i, j = _check_pair(i, j)
    w = weingarten_matrix(len(i))
    di, dj = _delta_vector(i), _delta_vector(j)
    return sum((w[p][q] for p, a in enumerate(di) if a for q, b in enumerate(dj) if b), Fraction(0))


# ---------------------------------------------------------------------------
# 模型矩
# ---------------------------------------------------------------------------

@lru_cache(maxsize=4096)
def _projection_product(pairs: Tuple[Tuple[int, int], ...]) -> PolyMatrix:
    """π_{i₁j₁}…π_{i_kj_k}，按前缀缓存"""
    if not pairs:
        return matrix_identity()
    head = _projection_product(pairs[:-1])
    return matrix_multiply(head, projection_matrix(*pairs[-1]))


def _polynomial_moment(i: MultiIndex, j: MultiIndex) -> Fraction:
    product = _projection_product(tuple(zip(i, j)))
    return integrate_poly(matrix_trace(product)) / 4


def _operator_moment(i: MultiIndex, j: MultiIndex) -> Fraction:
    image = r_star_e_r(len(i)).apply(PauliTensor.basis(j))
    return scalar_product(image, PauliTensor.basis(i))


def model_moment(i: Sequence[int], j: Sequence[int], pipeline: str = 'operator') -> Fraction:
    """
    ∫ tr(π_{i₁j₁}…π_{i_kj_k})，tr 为 M₄ 上的归一化迹

    Args:
        pipeline: 'polynomial' 展开符号矩阵乘积后精确积分；
                  'operator' 计算 <R*ER(c_j), c_i>
    """
    i, j = _check_pair(i, j)
    if pipeline == 'polynomial':
        return _polynomial_moment(i, j)
    if pipeline == 'operator':
        return _operator_moment(i, j)
    raise ValidationError(f"未知管线: {pipeline}，可选 {PIPELINES}")


# ---------------------------------------------------------------------------
# 忠实性
# ---------------------------------------------------------------------------

class _FactoredMoments:
    """
    两条管线的因子化形式

    U_ij = δ_iᵀ W δ_j；P_ij = ¼σ_iσ_j·a_{m(i)}ᵀ W_ω a_{m(j)}，
    其中 R(c_i) = (σ_i/2) c_{m(i)}，a_m = (ω(p)[m])_p。
    """

    def __init__(self, k: int):
        self.k = k
        partitions = enumerate_nc(k)
        w = weingarten_matrix(k)
        self.deltas = {i: _delta_vector(i) for i in multi_indices(k)}
        self.u_left = {
            i: tuple(sum((w[p][q] for q, b in enumerate(d) if b), Fraction(0)) for p in range(len(partitions)))
            for i, d in self.deltas.items()
        }
        projection = fixed_point_projection(k)
        vectors = [omega(p) for p in partitions]
        images = {m for _, m in (r_image(i) for i in self.deltas)}
        self.a = {m: tuple(v.coefficient(m) for v in vectors) for m in images}
        self.e_left = {
            m: tuple(sum((row[q] * a[q] for q in range(len(a)) if a[q]), Fraction(0)) for row in projection.weights)
            for m, a in self.a.items()
        }
        self._e_cache = {}

    def u(self, i: MultiIndex, j: MultiIndex) -> Fraction:
        return sum((x for x, b in zip(self.u_left[i], self.deltas[j]) if b), Fraction(0))

    def e(self, m: MultiIndex, n: MultiIndex) -> Fraction:
        key = (m, n) if m <= n else (n, m)
        if key not in self._e_cache:
            self._e_cache[key] = sum((x * y for x, y in zip(self.a[key[0]], self.e_left[key[1]]) if y), Fraction(0))
        return self._e_cache[key]

    def p(self, i: MultiIndex, j: MultiIndex) -> Fraction:
        si, mi = r_image(i)
        sj, mj = r_image(j)
        return si * sj * self.e(mi, mj)


def verify_faithfulness(k: int, pipeline: str = 'operator', oracle_samples: Optional[int] = None,
                        seed: Optional[int] = None, scheduler: Optional[WorkScheduler] = None) -> MomentMatrixReport:
    """
    比较 k 阶全部 4^k × 4^k 个模型矩与 Haar 矩

    两侧矩阵都对称，只比较 i ≤ j 的一半。默认用算子管线的因子化形式，
    多项式管线作为独立校验：k 不超过 faithfulness.full_oracle_max_k 时全量，否则抽样。
    """
    if pipeline not in PIPELINES:
        raise ValidationError(f"未知管线: {pipeline}，可选 {PIPELINES}")
    start_time = time.time()
    run = f"faithfulness_k{k}"
    log_manager.log_run_start(run, "忠实性验证", k=k)
    report = MomentMatrixReport(k)
    indices = list(multi_indices(k))
    factored = _FactoredMoments(k)

    if pipeline == 'polynomial':
        def model(i, j):
            return _polynomial_moment(i, j)
    else:
        model = factored.p

    def compare_row(a: int):
        i = indices[a]
        worst, first, count = Fraction(0), None, 0
        for j in indices[a:]:
            p, u = model(i, j), factored.u(i, j)
            count += 1
            if p != u:
                worst = max(worst, abs(p - u))
                first = first or (i, j, p, u)
        return worst, first, count

    rows = (scheduler or work_scheduler).map_ordered(compare_row, range(len(indices)), label=f"忠实性 k={k}")
    for worst, first, count in rows:
        report.compared += count
        report.discrepancy = max(report.discrepancy, worst)
        report.first_mismatch = report.first_mismatch or first

    # 多项式管线独立抽查
    full_k = int(config.get('faithfulness.full_oracle_max_k', 3))
    if pipeline == 'operator':
        if k <= full_k:
            pairs = [(indices[a], j) for a in range(len(indices)) for j in indices[a:]]
        else:
            samples = int(oracle_samples or config.get('faithfulness.oracle_samples', 1000))
            rng = make_generator(int(seed if seed is not None else config.get('faithfulness.oracle_seed', 20240601)))
            picks = rng.integers(0, len(indices), size=(samples, 2))
            pairs = [(indices[a], indices[b]) for a, b in picks]
        for i, j in pairs:
            p, u = _polynomial_moment(i, j), factored.u(i, j)
            report.oracle_checked += 1
            if p != u or p != factored.p(i, j):
                report.discrepancy = max(report.discrepancy, abs(p - u))
                report.first_mismatch = report.first_mismatch or (i, j, p, u)

    report.duration = time.time() - start_time
    log_manager.log_check(run, report.passed, report.duration)
    if not report.passed:
        logger.error(f"忠实性比较失败 | {report.describe()}")
    return report


def relabel_invariant(k: int, sigma: Sequence[int]) -> bool:
    """
    haar_moment_u 在 i、j 同时按 σ ∈ S₄ 重新标号时不变

    σ 以 (σ(1), σ(2), σ(3), σ(4)) 给出。
    """
    if sorted(sigma) != [1, 2, 3, 4]:
        raise ValidationError(f"不是 {{1..4}} 的置换: {sigma}")
    relabel = {x: sigma[x - 1] for x in range(1, 5)}
    for i in multi_indices(k):
        si = tuple(relabel[x] for x in i)
        for j in multi_indices(k):
            sj = tuple(relabel[x] for x in j)
            if haar_moment_u(i, j) != haar_moment_u(si, sj):
                return False
    return True
