"""
M₂(ℂ)^⊗k 上的精确张量运算
Pauli 积基下的稀疏张量、算子 R 及其伴随、不变元 f、向量 c_p 与 ω(p)，
以及不动点投影 E 的两种独立构造（Gram 投影与逐项球面积分）
"""

import itertools
import time
from abc import ABC, abstractmethod
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Dict, Iterable, Iterator, Mapping, Optional, Sequence, Tuple

from ..core import config, get_logger
from ..core.errors import ValidationError
from .exact_arith import (
    Poly4, PolyMatrix, RationalLike, RationalMatrix, POLY_ONE, POLY_ZERO, SPHERE_COORDINATES,
    rational_matrix_inverse
)
from .pauli_algebra import PAULI_INDICES, check_index, pauli_product, pauli_product_star, pauli_star
from .nc_combinatorics import SetPartition, enumerate_nc
from ..integration.haar_integration import integrate_poly


logger = get_logger('tensor_ops')

MultiIndex = Tuple[int, ...]


def multi_indices(k: int) -> Iterator[MultiIndex]:
    """{1..4}^k，按字典序"""
    return itertools.product(PAULI_INDICES, repeat=k)


def _check_multi_index(i: Sequence[int], k: Optional[int] = None) -> MultiIndex:
    i = tuple(int(x) for x in i)
    if k is not None and len(i) != k:
        raise ValidationError(f"多重下标长度 {len(i)} 与腿数 {k} 不一致")
    for x in i:
        check_index(x)
    return i


class PauliTensor:
    """
    Pauli 积基 c_{i₁}⊗…⊗c_{i_k} 下的稀疏张量

    基在归一化迹内积下正交归一，系数均为实有理数，零系数不存储。
    """

    __slots__ = ('_k', '_coefficients')

    def __init__(self, k: int, coefficients: Optional[Mapping[Sequence[int], RationalLike]] = None):
        if k < 1:
            raise ValidationError(f"腿数必须为正: {k}")
        cleaned: Dict[MultiIndex, Fraction] = {}
        for i, coef in (coefficients or {}).items():
            i = _check_multi_index(i, k)
            value = cleaned.get(i, Fraction(0)) + Fraction(coef)
            if value:
                cleaned[i] = value
            else:
                cleaned.pop(i, None)
        self._k = k
        self._coefficients = cleaned

    @classmethod
    def _wrap(cls, k: int, coefficients: Dict[MultiIndex, Fraction]) -> 'PauliTensor':
        obj = cls.__new__(cls)
        obj._k = k
        obj._coefficients = {i: c for i, c in coefficients.items() if c}
        return obj

    @classmethod
    def basis(cls, i: Sequence[int]) -> 'PauliTensor':
        i = _check_multi_index(i)
        return cls._wrap(len(i), {i: Fraction(1)})

    @classmethod
    def zero(cls, k: int) -> 'PauliTensor':
        return cls(k)

    @classmethod
    def from_terms(cls, k: int, terms: Iterable[Tuple[Sequence[int], RationalLike]]) -> 'PauliTensor':
        """累加 (下标, 系数) 序列，重复下标合并"""
        acc: Dict[MultiIndex, Fraction] = {}
        for i, coef in terms:
            i = tuple(i)
            acc[i] = acc.get(i, Fraction(0)) + Fraction(coef)
        return cls(k, acc)

    @property
    def k(self) -> int:
        return self._k

    @property
    def coefficients(self) -> Mapping[MultiIndex, Fraction]:
        return dict(self._coefficients)

    @property
    def nnz(self) -> int:
        return len(self._coefficients)

    def items(self):
        return self._coefficients.items()

    def coefficient(self, i: Sequence[int]) -> Fraction:
        return self._coefficients.get(tuple(i), Fraction(0))

    def is_zero(self) -> bool:
        return not self._coefficients

    def _check_legs(self, other: 'PauliTensor'):
        if self._k != other._k:
            raise ValidationError(f"腿数不一致: {self._k} != {other._k}")

    def __add__(self, other: 'PauliTensor') -> 'PauliTensor':
        if not isinstance(other, PauliTensor):
            return NotImplemented
        self._check_legs(other)
        result = dict(self._coefficients)
        for i, c in other._coefficients.items():
            result[i] = result.get(i, Fraction(0)) + c
        return PauliTensor._wrap(self._k, result)

    def __neg__(self) -> 'PauliTensor':
        return PauliTensor._wrap(self._k, {i: -c for i, c in self._coefficients.items()})

    def __sub__(self, other: 'PauliTensor') -> 'PauliTensor':
        if not isinstance(other, PauliTensor):
            return NotImplemented
        return self + (-other)

    def scale(self, factor: RationalLike) -> 'PauliTensor':
        factor = Fraction(factor)
        return PauliTensor._wrap(self._k, {i: c * factor for i, c in self._coefficients.items()})

    def __mul__(self, other):
        if isinstance(other, PauliTensor):
            return tensor_multiply(self, other)
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __eq__(self, other):
        if not isinstance(other, PauliTensor):
            return NotImplemented
        return self._k == other._k and self._coefficients == other._coefficients

    def __hash__(self):
        return hash((self._k, frozenset(self._coefficients.items())))

    def __str__(self):
        if not self._coefficients:
            return "0"
        parts = []
        for i in sorted(self._coefficients):
            c = self._coefficients[i]
            label = "c" + "".join(str(x) for x in i)
            parts.append(f"{c}·{label}" if c != 1 else label)
        return " + ".join(parts).replace("+ -", "- ")

    def __repr__(self):
        return f"PauliTensor(k={self._k}, {self})"


def scalar_product(u: PauliTensor, v: PauliTensor) -> Fraction:
    """<u, v> = tr(v* u)，基正交归一且系数为实数，逐坐标相乘求和"""
    if u.k != v.k:
        raise ValidationError(f"腿数不一致: {u.k} != {v.k}")
    small, large = (u, v) if u.nnz <= v.nnz else (v, u)
    other = large._coefficients
    return sum((c * other[i] for i, c in small._coefficients.items() if i in other), Fraction(0))


# ---------------------------------------------------------------------------
# 算子 R
# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def r_image(i: MultiIndex) -> Tuple[Fraction, MultiIndex]:
    """
    R(c_i) = coefficient·c_m

    m_l 为 c_{i_l} c_{i_{l+1}}^* 的下标（循环，最后一项与 i₁ 配对），
    系数为 ½ 乘以各因子的符号。
    """
    k = len(i)
    sign = 1
    m = []
    for l in range(k):
        product = pauli_product_star(i[l], i[(l + 1) % k])
        sign *= product.sign
        m.append(product.index)
    return Fraction(sign, 2), tuple(m)


def apply_R(v: PauliTensor) -> PauliTensor:
    """R 在稀疏张量上的线性作用"""
    result: Dict[MultiIndex, Fraction] = {}
    for i, c in v.items():
        coef, m = r_image(i)
        result[m] = result.get(m, Fraction(0)) + coef * c
    return PauliTensor._wrap(v.k, result)


def oplus(i: Sequence[int], s: int) -> MultiIndex:
    """
    i⊕s：与 i 有相同 R 像下标的多重下标中首位为 s 的那个

    j₁ = s，j_{r+1} 为 c_{j_r} c_{m_r} 的下标，m 为 R(c_i) 的下标。
    """
    i = _check_multi_index(i)
    check_index(s)
    _, m = r_image(i)
    j = [s]
    for r in range(len(i) - 1):
        j.append(pauli_product(j[r], m[r]).index)
    return tuple(j)


@lru_cache(maxsize=None)
def _r_preimages(m: MultiIndex) -> Tuple[Tuple[MultiIndex, Fraction], ...]:
    """R 像为 ±c_m 的全部基下标及对应系数；恰为 4 个或 0 个"""
    found = []
    for s in PAULI_INDICES:
        j = [s]
        for r in range(len(m) - 1):
            j.append(pauli_product(j[r], m[r]).index)
        j = tuple(j)
        coef, image = r_image(j)
        if image == m:
            found.append((j, coef))
    return tuple(found)


def apply_R_star(v: PauliTensor) -> PauliTensor:
    """R 的伴随：R*(c_m) = Σ_{R(c_i)=±½c_m} (±½)·c_i"""
    result: Dict[MultiIndex, Fraction] = {}
    for m, c in v.items():
        for i, coef in _r_preimages(m):
            result[i] = result.get(i, Fraction(0)) + coef * c
    return PauliTensor._wrap(v.k, result)


# ---------------------------------------------------------------------------
# 不变元 f、c_p 与 ω(p)
# ---------------------------------------------------------------------------

def f_element() -> PauliTensor:
    """f = Σ c_i⊗c_i^* = c₁⊗c₁ − c₂⊗c₂ − c₃⊗c₃ − c₄⊗c₄"""
    return PauliTensor(2, {(i, i): pauli_star(i).sign for i in PAULI_INDICES})


def tensor_multiply(u: PauliTensor, v: PauliTensor) -> PauliTensor:
    """M₂^⊗k 中的代数乘积，逐腿按乘法表计算并累积符号"""
    if u.k != v.k:
        raise ValidationError(f"腿数不一致: {u.k} != {v.k}")
    result: Dict[MultiIndex, Fraction] = {}
    for i, a in u.items():
        for j, b in v.items():
            sign = 1
            index = []
            for x, y in zip(i, j):
                product = pauli_product(x, y)
                sign *= product.sign
                index.append(product.index)
            index = tuple(index)
            result[index] = result.get(index, Fraction(0)) + sign * a * b
    return PauliTensor._wrap(u.k, result)


def identity_tensor(k: int) -> PauliTensor:
    """c₁^⊗k"""
    return PauliTensor.basis((1,) * k)


def leg_embed(v: PauliTensor, positions: Sequence[int], k: int) -> PauliTensor:
    """把 v 放在给定的腿上（升序），其余腿放 c₁"""
    positions = tuple(positions)
    if len(positions) != v.k:
        raise ValidationError(f"位置数 {len(positions)} 与张量腿数 {v.k} 不一致")
    if len(set(positions)) != len(positions):
        raise ValidationError(f"位置重复: {positions}")
    if any(p < 1 or p > k for p in positions):
        raise ValidationError(f"位置超出 1..{k}: {positions}")
    if list(positions) != sorted(positions):
        raise ValidationError(f"位置必须升序: {positions}")
    result = {}
    for i, c in v.items():
        index = [1] * k
        for pos, x in zip(positions, i):
            index[pos - 1] = x
        result[tuple(index)] = c
    return PauliTensor._wrap(k, result)


def c_p_vector(p: SetPartition) -> PauliTensor:
    """c_p = Σ_j δ_pj c_j，共 4^{块数} 项"""
    result = {}
    for values in itertools.product(PAULI_INDICES, repeat=p.size):
        index = [0] * p.k
        for block, x in zip(p.blocks, values):
            for pos in block:
                index[pos - 1] = x
        result[tuple(index)] = Fraction(1)
    return PauliTensor._wrap(p.k, result)


def omega(p: SetPartition, k: Optional[int] = None) -> PauliTensor:
    """
    ω(p) = 2·∏_块 ∏_r f_{j_r, j_{r+1}}

    按块的顺序、块内相邻元素的顺序依次右乘；单点块贡献空积。
    """
    k = p.k if k is None else k
    if k != p.k:
        raise ValidationError(f"划分大小 {p.k} 与腿数 {k} 不一致")
    f = f_element()
    result = identity_tensor(k).scale(2)
    for block in p.blocks:
        for x, y in zip(block, block[1:]):
            result = tensor_multiply(result, leg_embed(f, (x, y), k))
    return result


# ---------------------------------------------------------------------------
# 算子
# ---------------------------------------------------------------------------

class TensorOperator(ABC):
    """4^k × 4^k 有理矩阵算子，按列（基向量的像）访问"""

    def __init__(self, k: int):
        if k < 1:
            raise ValidationError(f"腿数必须为正: {k}")
        self.k = k

    @abstractmethod
    def apply(self, v: PauliTensor) -> PauliTensor:
        """精确的矩阵-向量作用"""

    def column(self, j: Sequence[int]) -> PauliTensor:
        return self.apply(PauliTensor.basis(_check_multi_index(j, self.k)))

    def entry(self, i: Sequence[int], j: Sequence[int]) -> Fraction:
        return self.column(j).coefficient(i)

    def columns(self, scheduler=None) -> Dict[MultiIndex, PauliTensor]:
        """全部列；提供调度器时按列并行"""
        indices = list(multi_indices(self.k))
        if scheduler is None:
            images = [self.column(j) for j in indices]
        else:
            images = scheduler.map_ordered(self.column, indices, label=f"算子列 k={self.k}")
        return dict(zip(indices, images))

    def first_difference(self, other: 'TensorOperator') -> Optional[Tuple[MultiIndex, MultiIndex, Fraction, Fraction]]:
        """第一个不相等的矩阵元 (i, j, 本算子值, 另一算子值)，全部相等返回 None"""
        if self.k != other.k:
            raise ValidationError(f"腿数不一致: {self.k} != {other.k}")
        for j in multi_indices(self.k):
            mine, theirs = self.column(j), other.column(j)
            if mine != theirs:
                for i in sorted(set(mine.coefficients) | set(theirs.coefficients)):
                    if mine.coefficient(i) != theirs.coefficient(i):
                        return i, j, mine.coefficient(i), theirs.coefficient(i)
        return None

    def equals(self, other: 'TensorOperator') -> bool:
        return self.first_difference(other) is None

    def is_idempotent(self) -> bool:
        for j in multi_indices(self.k):
            image = self.column(j)
            if self.apply(image) != image:
                return False
        return True

    def is_self_adjoint(self) -> bool:
        cols = self.columns()
        for j, image in cols.items():
            for i, c in image.items():
                if cols[i].coefficient(j) != c:
                    return False
        return True

    def trace(self) -> Fraction:
        return sum((self.entry(j, j) for j in multi_indices(self.k)), Fraction(0))


class GramProjection(TensorOperator):
    """
    到一组线性无关向量张成空间的正交投影

    P = Σ_{p,q} (G⁻¹)_{pq} |v_p⟩⟨v_q|，G 为精确 Gram 矩阵；
    G 奇异时抛出 SingularMatrixError。
    """

    def __init__(self, k: int, vectors: Sequence[PauliTensor], labels: Optional[Sequence[str]] = None,
                 gram: Optional[RationalMatrix] = None):
        super().__init__(k)
        if not vectors:
            raise ValidationError("投影至少需要一个向量")
        if any(v.k != k for v in vectors):
            raise ValidationError(f"向量腿数与算子腿数 {k} 不一致")
        self.vectors = tuple(vectors)
        self.labels = tuple(labels) if labels is not None else tuple(str(n) for n in range(len(vectors)))
        if gram is None:
            n = len(self.vectors)
            rows = [[Fraction(0)] * n for _ in range(n)]
            for a in range(n):
                for b in range(a, n):
                    rows[a][b] = rows[b][a] = scalar_product(self.vectors[a], self.vectors[b])
            gram = tuple(tuple(row) for row in rows)
        self.gram = gram
        self.weights = rational_matrix_inverse(gram)

    @property
    def rank(self) -> int:
        return len(self.vectors)

    def apply(self, v: PauliTensor) -> PauliTensor:
        if v.k != self.k:
            raise ValidationError(f"腿数不一致: {v.k} != {self.k}")
        overlaps = [scalar_product(w, v) for w in self.vectors]
        if not any(overlaps):
            return PauliTensor.zero(self.k)
        result: Dict[MultiIndex, Fraction] = {}
        for p, vector in enumerate(self.vectors):
            weight = sum((w * o for w, o in zip(self.weights[p], overlaps) if o), Fraction(0))
            if weight:
                for i, c in vector.items():
                    result[i] = result.get(i, Fraction(0)) + weight * c
        return PauliTensor._wrap(self.k, result)

    def trace(self) -> Fraction:
        # tr(P) = tr(G⁻¹G)
        n = len(self.vectors)
        return sum((self.weights[p][q] * self.gram[q][p] for p in range(n) for q in range(n)), Fraction(0))


class MatrixOperator(TensorOperator):
    """按列存储的显式算子"""

    def __init__(self, k: int, columns: Mapping[MultiIndex, PauliTensor]):
        super().__init__(k)
        self._columns = dict(columns)

    def column(self, j: Sequence[int]) -> PauliTensor:
        j = tuple(j)
        return self._columns.get(j) or PauliTensor.zero(self.k)

    def apply(self, v: PauliTensor) -> PauliTensor:
        result: Dict[MultiIndex, Fraction] = {}
        for j, c in v.items():
            for i, e in self.column(j).items():
                result[i] = result.get(i, Fraction(0)) + c * e
        return PauliTensor._wrap(self.k, result)


class LinearMapOperator(TensorOperator):
    """由线性函数给出的算子"""

    def __init__(self, k: int, fn: Callable[[PauliTensor], PauliTensor], name: str = ""):
        super().__init__(k)
        self.fn = fn
        self.name = name

    def apply(self, v: PauliTensor) -> PauliTensor:
        return self.fn(v)


@lru_cache(maxsize=None)
def fixed_point_projection(k: int) -> GramProjection:
    """
    不动点期望 E：到 span{ω(p) : p ∈ NC(k)} 的正交投影

    Gram 矩阵奇异时直接失败，秩即 Catalan 数 C_k。
    """
    config.check_range("k", k, 'gram_max_k')
    start_time = time.time()
    partitions = enumerate_nc(k)
    vectors = [omega(p) for p in partitions]
    projection = GramProjection(k, vectors, labels=[str(p) for p in partitions])
    logger.info(f"不变投影构建完成 | k: {k} | 向量数: {len(vectors)} | 耗时: {time.time() - start_time:.2f}s")
    return projection


@lru_cache(maxsize=None)
def c_span_projection(k: int) -> GramProjection:
    """到 span{c_p : p ∈ NC(k)} 的正交投影，Gram 元为 4^{|p∨q|}"""
    config.check_range("k", k, 'gram_max_k')
    partitions = enumerate_nc(k)
    return GramProjection(k, [c_p_vector(p) for p in partitions], labels=[str(p) for p in partitions])


def r_star_e_r(k: int) -> LinearMapOperator:
    """R*∘E∘R"""
    projection = fixed_point_projection(k)
    return LinearMapOperator(k, lambda v: apply_R_star(projection.apply(apply_R(v))), name="R*ER")


# ---------------------------------------------------------------------------
# 积分构造
# ---------------------------------------------------------------------------

@lru_cache(maxsize=1)
def adjoint_rotation() -> PolyMatrix:
    """
    单腿伴随作用矩阵 ρ(x)：x c_j x* = Σ_m ρ_mj(x) c_m

    ρ_mj = Σ_{a,b} x_a x_b·sign，求和取 c_a c_j c_b^* = ±c_m 的项。
    """
    rho = [[POLY_ZERO] * 4 for _ in range(4)]
    for j in PAULI_INDICES:
        for a in PAULI_INDICES:
            for b in PAULI_INDICES:
                product = pauli_product(a, j) * pauli_star(b)
                term = SPHERE_COORDINATES[a - 1] * SPHERE_COORDINATES[b - 1] * product.sign
                rho[product.index - 1][j - 1] = rho[product.index - 1][j - 1] + term
    return tuple(tuple(row) for row in rho)


def _integrated_column(j: MultiIndex) -> PauliTensor:
    """E(c_j) = Σ_m (∫ ∏_l ρ_{m_l j_l}) c_m"""
    rho = adjoint_rotation()
    partial: Dict[MultiIndex, Poly4] = {(): POLY_ONE}
    for jl in j:
        grown = {}
        for prefix, poly in partial.items():
            for m in PAULI_INDICES:
                factor = rho[m - 1][jl - 1]
                if not factor.is_zero():
                    grown[prefix + (m,)] = poly * factor
        partial = grown
    result = {}
    for m, poly in partial.items():
        value = integrate_poly(poly)
        if value:
            result[m] = value
    return PauliTensor._wrap(len(j), result)


def E_via_integration(k: int, scheduler=None) -> MatrixOperator:
    """逐项精确球面积分得到的 E，作为 Gram 构造的独立校验"""
    config.check_range("k", k, 'integration_max_k')
    start_time = time.time()
    indices = list(multi_indices(k))
    if scheduler is None:
        images = [_integrated_column(j) for j in indices]
    else:
        images = scheduler.map_ordered(_integrated_column, indices, label=f"积分构造 E k={k}")
    logger.info(f"积分构造 E 完成 | k: {k} | 列数: {len(indices)} | 耗时: {time.time() - start_time:.2f}s")
    return MatrixOperator(k, dict(zip(indices, images)))
