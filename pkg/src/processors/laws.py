"""
谱律处理器
对角坐标变量 M_s、N_3、w_t、v_t 的模型矩阵、精确矩、特征多项式，
以及 M₁、M₂、M₄ 的闭式谱律
"""

import math
import time
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import List, Optional, Tuple, Union

import numpy as np
import sympy as sp

from ..core import config, get_logger
from ..core.errors import (
    BranchCutError, LimitExceededError, MissingParameterError, NoClosedFormError, ValidationError
)
from ..algebra.exact_arith import (
    PARAMETER_T, POLY_ONE, POLY_ZERO, SPHERE_COORDINATES, Poly4, PolyMatrix, RationalLike,
    format_rational, matrix_add, matrix_identity, matrix_multiply, matrix_scale, matrix_trace,
    parse_rational
)
from ..algebra.nc_combinatorics import catalan
from ..algebra.pauli_algebra import projection_matrix
from ..integration.haar_integration import integrate_poly


logger = get_logger('laws')

Exact = Union[Fraction, Poly4]


class VariableKind(Enum):
    """对角坐标变量"""
    M1 = "m1"
    M2 = "m2"
    M3 = "m3"
    M4 = "m4"
    N3 = "n3"
    WT = "wt"
    VT = "vt"

    @property
    def parametric(self) -> bool:
        return self in (VariableKind.WT, VariableKind.VT)


@dataclass(frozen=True)
class VariableSpec:
    """
    变量及其参数

    w_t、v_t 需要 t；symbolic=True 时 t 保持为符号，矩与级数系数都是 t 的多项式。
    """
    kind: VariableKind
    t: Optional[Fraction] = None
    symbolic: bool = False

    def __post_init__(self):
        if self.t is not None:
            object.__setattr__(self, 't', Fraction(self.t))
        if self.kind.parametric:
            if self.t is None and not self.symbolic:
                raise MissingParameterError(f"变量 {self.kind.value} 需要参数 t")
            if self.t is not None and self.symbolic:
                raise ValidationError("符号参数与数值参数不能同时给出")
        elif self.t is not None or self.symbolic:
            raise ValidationError(f"变量 {self.kind.value} 不带参数 t")

    @property
    def label(self) -> str:
        if self.t is not None:
            return f"{self.kind.value}(t={format_rational(self.t)})"
        return self.kind.value

    def parameter(self) -> Poly4:
        """t 作为 Poly4：符号或常数"""
        return PARAMETER_T if self.symbolic else Poly4.constant(self.t)

    def numeric_t(self) -> Optional[float]:
        if self.symbolic:
            raise MissingParameterError(f"变量 {self.kind.value} 的数值计算需要给定 t")
        return None if self.t is None else float(self.t)


def parse_variable(name: str, t: Optional[Union[str, RationalLike]] = None, symbolic: bool = False) -> VariableSpec:
    """由命令行文本构造 VariableSpec"""
    try:
        kind = VariableKind(name.strip().lower())
    except ValueError as e:
        choices = ", ".join(k.value for k in VariableKind)
        raise ValidationError(f"未知变量: {name}，可选 {choices}") from e
    if isinstance(t, str):
        t = parse_rational(t)
    return VariableSpec(kind, t, symbolic)


def _pi_sum(*indices: int) -> PolyMatrix:
    total = projection_matrix(indices[0], indices[0])
    for i in indices[1:]:
        total = matrix_add(total, projection_matrix(i, i))
    return total


def model_matrix(v: VariableSpec) -> PolyMatrix:
    """
    变量的 4×4 模型矩阵

    M_s 为 π_ii 的平均（M₃ 按同律的 (π₂₂+π₃₃+π₄₄)/3 实现），N₃ = 3M₃，
    w_t = ((1+t)π₁₁+(1−t)π₂₂)/2，v_t = ((1+t)(π₁₁+π₂₂)+(1−t)(π₃₃+π₄₄))/4。
    """
    kind = v.kind
    if kind is VariableKind.M1:
        return projection_matrix(1, 1)
    if kind is VariableKind.M2:
        return matrix_scale(_pi_sum(1, 2), Fraction(1, 2))
    if kind is VariableKind.M3:
        return matrix_scale(_pi_sum(2, 3, 4), Fraction(1, 3))
    if kind is VariableKind.M4:
        return matrix_scale(_pi_sum(1, 2, 3, 4), Fraction(1, 4))
    if kind is VariableKind.N3:
        return _pi_sum(2, 3, 4)

    t = v.parameter()
    plus, minus = POLY_ONE + t, POLY_ONE - t
    if kind is VariableKind.WT:
        return matrix_scale(
            matrix_add(matrix_scale(projection_matrix(1, 1), plus), matrix_scale(projection_matrix(2, 2), minus)),
            Fraction(1, 2)
        )
    return matrix_scale(
        matrix_add(matrix_scale(_pi_sum(1, 2), plus), matrix_scale(_pi_sum(3, 4), minus)),
        Fraction(1, 4)
    )


def moment_cap(v: VariableSpec) -> int:
    if v.kind is VariableKind.N3:
        return config.limit('n3_max_order')
    return config.limit('moment_max_order')


def _normalized_trace_integral(matrix: PolyMatrix) -> Exact:
    return integrate_poly(matrix_trace(matrix)) / 4


def exact_moments(v: VariableSpec, order: int) -> List[Exact]:
    """
    第 1..order 阶矩 ∫tr(M^k)，tr 为归一化迹

    逐次右乘模型矩阵，每次只多做一次矩阵乘法。
    """
    cap = moment_cap(v)
    if order < 0 or order > cap:
        raise LimitExceededError("order", order, cap)
    start_time = time.time()
    base = model_matrix(v)
    power = base
    moments = []
    for k in range(1, order + 1):
        if k > 1:
            power = matrix_multiply(power, base)
        moments.append(_normalized_trace_integral(power))
        logger.debug(f"精确矩 | 变量: {v.label} | k: {k} | 耗时: {time.time() - start_time:.2f}s")
    return moments


def exact_moment(v: VariableSpec, k: int) -> Exact:
    """∫tr(M^k)；k = 0 时为 1"""
    if k == 0:
        return Poly4.constant(1) if v.symbolic else Fraction(1)
    return exact_moments(v, k)[-1]


def comparison_second_moment() -> Fraction:
    """¼δ₀ + ¾·law(a²+b²+c²) 的二阶矩，即 (3/4)∫(1−d²)²"""
    d = SPHERE_COORDINATES[3]
    return Fraction(3, 4) * integrate_poly((POLY_ONE - d * d) ** 2)


# ---------------------------------------------------------------------------
# 闭式谱律
# ---------------------------------------------------------------------------

class ContinuousPart(Enum):
    NONE = "none"
    LEBESGUE01 = "lebesgue01"
    FREE_POISSON_NU1 = "free_poisson_nu1"
    NUMERIC = "numeric"


@dataclass(frozen=True)
class SpectralLaw:
    """原子部分加连续部分的谱律"""
    atoms: Tuple[Tuple[Fraction, Fraction], ...]
    continuous: ContinuousPart = ContinuousPart.NONE
    continuous_weight: Fraction = Fraction(0)

    def __post_init__(self):
        total = sum((w for _, w in self.atoms), Fraction(0)) + self.continuous_weight
        if total != 1:
            raise ValidationError(f"谱律总质量不为 1: {total}")
        if self.continuous is ContinuousPart.NONE and self.continuous_weight:
            raise ValidationError("无连续部分时连续质量必须为 0")

    def _continuous_moment(self, k: int) -> Fraction:
        if self.continuous is ContinuousPart.LEBESGUE01:
            return Fraction(1, k + 1)
        if self.continuous is ContinuousPart.FREE_POISSON_NU1:
            return Fraction(catalan(k), 4 ** k)
        if self.continuous is ContinuousPart.NONE:
            return Fraction(0)
        raise NoClosedFormError("数值连续部分没有闭式矩")

    def moment(self, k: int) -> Fraction:
        atoms = sum((w * x ** k for x, w in self.atoms), Fraction(0))
        return atoms + self.continuous_weight * self._continuous_moment(k)

    def moments(self, order: int) -> List[Fraction]:
        return [self.moment(k) for k in range(1, order + 1)]

    def density(self, x: float) -> float:
        """连续部分的密度（已乘连续质量），支撑在 (0, 1)"""
        if not 0.0 < x < 1.0:
            return 0.0
        weight = float(self.continuous_weight)
        if self.continuous is ContinuousPart.LEBESGUE01:
            return weight
        if self.continuous is ContinuousPart.FREE_POISSON_NU1:
            return weight * 2.0 / math.pi * math.sqrt(1.0 / x - 1.0)
        if self.continuous is ContinuousPart.NONE:
            return 0.0
        raise NoClosedFormError("数值连续部分没有闭式密度")

    def cauchy(self, xi: complex) -> complex:
        """G(ξ) = Σ w/(ξ−x) 加连续部分的闭式，主值分支"""
        xi = complex(xi)
        if xi.imag == 0.0 and (0.0 <= xi.real <= 1.0):
            raise BranchCutError(f"ξ 落在支撑 [0, 1] 上: {xi}")
        value = sum(float(w) / (xi - float(x)) for x, w in self.atoms)
        if self.continuous is ContinuousPart.NONE:
            return complex(value)
        weight = float(self.continuous_weight)
        u = 1.0 - 1.0 / xi
        if self.continuous is ContinuousPart.LEBESGUE01:
            return complex(value - weight * np.log(u))
        if self.continuous is ContinuousPart.FREE_POISSON_NU1:
            return complex(value + weight * 2.0 * (1.0 - np.sqrt(u)))
        raise NoClosedFormError("数值连续部分没有闭式 Cauchy 变换")


def theorem51_law(s: int) -> SpectralLaw:
    """M_s 的谱律 (1 − s/4)δ₀ + (s/4)μ_s，μ₁ = δ₁，μ₂ = λ₁，μ₄ = ν₁"""
    if s == 1:
        return SpectralLaw(((Fraction(0), Fraction(3, 4)), (Fraction(1), Fraction(1, 4))))
    if s == 2:
        return SpectralLaw(((Fraction(0), Fraction(1, 2)),), ContinuousPart.LEBESGUE01, Fraction(1, 2))
    if s == 4:
        return SpectralLaw((), ContinuousPart.FREE_POISSON_NU1, Fraction(1))
    if s == 3:
        raise NoClosedFormError("M₃ 的谱律没有闭式，只提供矩与蒙特卡洛直方图")
    raise ValidationError(f"s 必须为 1、2、3 或 4: {s}")


def law_of(v: VariableSpec) -> SpectralLaw:
    """M₁、M₂、M₄ 的闭式谱律"""
    sizes = {VariableKind.M1: 1, VariableKind.M2: 2, VariableKind.M3: 3, VariableKind.M4: 4}
    if v.kind not in sizes:
        raise NoClosedFormError(f"变量 {v.label} 没有闭式谱律")
    return theorem51_law(sizes[v.kind])


# ---------------------------------------------------------------------------
# 特征多项式
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CharPoly:
    """det(y − M) = Σ_j coefficients[j]·y^j"""
    coefficients: Tuple[Poly4, ...]
    reduced: bool

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    @property
    def zero_roots(self) -> int:
        """恒为零的根的个数（y 的最低非零次数）"""
        return next(j for j, c in enumerate(self.coefficients) if not c.is_zero())

    def __str__(self):
        parts = []
        for j in range(self.degree, -1, -1):
            c = self.coefficients[j]
            if c.is_zero():
                continue
            power = "" if j == 0 else ("y" if j == 1 else f"y^{j}")
            if c == 1 and power:
                parts.append(power)
            else:
                parts.append(f"({c})" + (f"*{power}" if power else ""))
        return " + ".join(parts)


def charpoly_of(matrix: PolyMatrix, reduce: bool = True) -> CharPoly:
    """Faddeev–LeVerrier：det(y − A) 的系数"""
    n = len(matrix)
    coefficients = [POLY_ZERO] * (n + 1)
    coefficients[n] = POLY_ONE
    identity = matrix_identity(n)
    current = tuple(tuple(POLY_ZERO for _ in range(n)) for _ in range(n))
    for k in range(1, n + 1):
        current = matrix_add(matrix_multiply(matrix, current), matrix_scale(identity, coefficients[n - k + 1]))
        coefficients[n - k] = -matrix_trace(matrix_multiply(matrix, current)) / k
    if reduce:
        coefficients = [c.reduce_sphere() for c in coefficients]
    return CharPoly(tuple(coefficients), reduce)


def charpoly(v: VariableSpec, reduce: bool = True) -> CharPoly:
    """模型矩阵的特征多项式，reduce 时按 a²+b²+c²+d² = 1 化简"""
    return charpoly_of(model_matrix(v), reduce)


def charpoly_by_determinant(v: VariableSpec, reduce: bool = True) -> CharPoly:
    """sympy 的 Berkowitz 行列式 det(y − M)，与 Faddeev–LeVerrier 互为对照"""
    y = sp.Symbol('y')
    matrix = sp.Matrix([[entry.to_sympy().as_expr() for entry in row] for row in model_matrix(v)])
    det = sp.expand((y * sp.eye(matrix.rows) - matrix).det(method='berkowitz'))
    coefficients = [Poly4.from_sympy(c) for c in reversed(sp.Poly(det, y).all_coeffs())]
    if reduce:
        coefficients = [c.reduce_sphere() for c in coefficients]
    return CharPoly(tuple(coefficients), reduce)


def vt_block_factors(v: VariableSpec) -> Tuple[CharPoly, CharPoly]:
    """
    v_t 的两个 2×2 块的特征多项式

    Q₁ = y² − (a²+b²)y + (1−t²)a²b²，Q₂ = y² − (c²+d²)y + (1−t²)c²d²
    """
    if v.kind is not VariableKind.VT:
        raise ValidationError(f"块分解只适用于 v_t: {v.label}")
    a, b, c, d = SPHERE_COORDINATES
    t = v.parameter()
    s = POLY_ONE - t * t

    def block(x, y):
        return CharPoly((s * x * x * y * y, -(x * x + y * y), POLY_ONE), False)

    return block(a, b), block(c, d)


def multiply_charpolys(left: CharPoly, right: CharPoly, reduce: bool = True) -> CharPoly:
    """两个 y 多项式相乘"""
    coefficients = [POLY_ZERO] * (left.degree + right.degree + 1)
    for i, x in enumerate(left.coefficients):
        for j, y in enumerate(right.coefficients):
            coefficients[i + j] = coefficients[i + j] + x * y
    if reduce:
        coefficients = [c.reduce_sphere() for c in coefficients]
    return CharPoly(tuple(coefficients), reduce)
