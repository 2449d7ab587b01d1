"""
Cauchy 变换处理器
闭式 Cauchy 变换的复数求值、z = 1/ξ 上的精确形式级数，
以及 2×2 块特征多项式给出的双重级数
"""

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence, Union

import numpy as np

from ..core import config, get_logger
from ..core.errors import BranchCutError, NoClosedFormError, ValidationError
from ..algebra.exact_arith import (
    POLY_ONE, SPHERE_COORDINATES, FormalSeries, Poly4, arcsinh_coefficient, series_log, series_sqrt
)
from ..integration.haar_integration import integrate_poly
from .laws import VariableKind, VariableSpec, exact_moments


logger = get_logger('cauchy')

Scalar = Union[Fraction, Poly4]
JointMoment = Callable[[int, int], Scalar]

# |w| 小于此值时用 H(w) ≈ 1 − 2w/3，避免 0/0
SMALL_W = 1e-8


def _check_order(order: int) -> int:
    return config.check_range("order", order, 'series_max_order', minimum=0)


def _check_off_support(xi: complex):
    if xi.imag == 0.0 and 0.0 <= xi.real <= 1.0:
        raise BranchCutError(f"ξ 落在支撑 [0, 1] 的分支割线上: {xi}")


def _s_value(v: VariableSpec) -> Scalar:
    """s = 1 − t²"""
    t = v.parameter()
    s = POLY_ONE - t * t
    return s.constant_value() if s.is_constant() else s


# ---------------------------------------------------------------------------
# 闭式求值
# ---------------------------------------------------------------------------

def _h_function(w: complex) -> complex:
    """H(w) = arcsinh(√w)/(√w·√(1+w))，主值分支"""
    if abs(w) < SMALL_W:
        return 1.0 - 2.0 * w / 3.0
    root = np.sqrt(w)
    return complex(np.arcsinh(root) / (root * np.sqrt(1.0 + w)))


def cauchy_closed(v: VariableSpec, xi: complex) -> complex:
    """
    闭式 Cauchy 变换在复数 ξ 处的值

    v_t 只有导数的闭式，此时返回 G′(ξ)。
    """
    xi = complex(xi)
    _check_off_support(xi)
    kind = v.kind
    if kind is VariableKind.M1:
        return 1.0 / xi + 1.0 / (4.0 * (xi * xi - xi))
    if kind is VariableKind.M2:
        return complex(0.5 * (1.0 / xi - np.log(1.0 - 1.0 / xi)))
    if kind is VariableKind.M4:
        return complex(2.0 * (1.0 - np.sqrt(1.0 - 1.0 / xi)))
    if kind in (VariableKind.M3, VariableKind.N3):
        raise NoClosedFormError(f"变量 {v.label} 没有闭式 Cauchy 变换")

    t = v.numeric_t()
    s = 1.0 - t * t
    q = xi - xi * xi
    if kind is VariableKind.WT:
        w = s / (4.0 * (xi * xi - xi))
        return 1.0 / (2.0 * xi) + (1.0 - 2.0 * xi) / q * 0.25 * _h_function(w)
    # v_t：G′(ξ)
    return complex(0.5 * (2.0 * xi - 1.0) / (xi * xi - xi ** 3) * np.sqrt(q / (q - s / 4.0)))


# ---------------------------------------------------------------------------
# 形式级数
# ---------------------------------------------------------------------------

def g1_series(order: int) -> FormalSeries:
    """G₁ = z + ¼z²/(1−z)"""
    n = order + 1
    return FormalSeries.variable(n) + FormalSeries.geometric(n).shift(2).truncate(n) * Fraction(1, 4)


def g2_series(order: int) -> FormalSeries:
    """G₂ = ½(z − log(1−z))"""
    n = order + 1
    z = FormalSeries.variable(n)
    return (z - series_log(1 - z)) * Fraction(1, 2)


def g4_series(order: int) -> FormalSeries:
    """G₄ = 2(1 − √(1−z))"""
    n = order + 1
    z = FormalSeries.variable(n)
    return (1 - series_sqrt(1 - z)) * 2


def _w_series(s: Scalar, n: int) -> FormalSeries:
    """w(z) = s z²/(4(1−z))"""
    return FormalSeries.geometric(n).shift(2).truncate(n) * (s * Fraction(1, 4))


def _h_series(n: int) -> FormalSeries:
    """H(w) = arcsinh(√w)/√w · (1+w)^{−1/2}，w 的级数"""
    ratio = FormalSeries(tuple(arcsinh_coefficient(2 * m + 1) for m in range(n + 1)))
    w = FormalSeries.variable(n)
    return ratio * series_sqrt(1 + w).inverse()


def wt_series(s: Scalar, order: int) -> FormalSeries:
    """w_t：G = z/2 + z(2−z)/(1−z)·¼·H(w(z))"""
    n = order + 1
    z = FormalSeries.variable(n)
    prefactor = (z * 2 - z * z) * FormalSeries.geometric(n)
    h = _h_series(n // 2 + 1).compose(_w_series(s, n)).truncate(n)
    return z * Fraction(1, 2) + prefactor * h * Fraction(1, 4)


def vt_derivative_series(s: Scalar, order: int) -> FormalSeries:
    """v_t：G′ = −½z²(2−z)/(1−z)·(1 + w(z))^{−1/2}，截断到 z^{order+2}"""
    n = order + 2
    z = FormalSeries.variable(n)
    prefactor = (z * z * 2 - z * z * z) * FormalSeries.geometric(n)
    root = series_sqrt(1 + _w_series(s, n)).inverse()
    return prefactor * root * Fraction(-1, 2)


def moment_series(moments: Sequence[Scalar]) -> FormalSeries:
    """Σ_{k≥0} m_k z^{k+1}，m₀ = 1"""
    return FormalSeries((Fraction(0), Fraction(1)) + tuple(moments))


def cauchy_series(v: VariableSpec, order: int) -> FormalSeries:
    """
    z = 1/ξ 上的精确级数，包含第 1..order 阶矩

    v_t 返回 G′ 的级数，其 z^{k+2} 系数为 −(k+1)m_k。
    M₃、N₃ 没有闭式，直接由精确矩拼成级数。
    """
    _check_order(order)
    kind = v.kind
    if kind is VariableKind.M1:
        return g1_series(order)
    if kind is VariableKind.M2:
        return g2_series(order)
    if kind is VariableKind.M4:
        return g4_series(order)
    if kind in (VariableKind.M3, VariableKind.N3):
        return moment_series(exact_moments(v, order))
    s = _s_value(v)
    if kind is VariableKind.WT:
        return wt_series(s, order)
    return vt_derivative_series(s, order)


def g_series_from_derivative(derivative: FormalSeries) -> FormalSeries:
    """由 G′ 的 z 级数恢复 G：g_n = −[z^{n+1}]G′/n"""
    coefficients = [Fraction(0)]
    for n in range(1, derivative.order):
        coefficients.append(derivative[n + 1] * Fraction(-1, n))
    return FormalSeries(tuple(coefficients))


def lemma71_series(joint_moment: JointMoment, order: int) -> FormalSeries:
    """
    特征多项式 y² − By + C 的 2×2 矩阵（归一化迹）的 Cauchy 级数

    G = z + ½ Σ_{k≥1} z^{k+1} Σ_{2p+q=k} (−1)^p·k/(p+q)·C(p+q, q)·∫B^qC^p

    Args:
        joint_moment: (q, p) ↦ ∫B^q C^p
    """
    _check_order(order)
    coefficients = [Fraction(0), Fraction(1)]
    for k in range(1, order + 1):
        acc = Fraction(0)
        for p in range(k // 2 + 1):
            q = k - 2 * p
            weight = Fraction((-1) ** p * k * math.comb(p + q, q), p + q)
            acc = acc + joint_moment(q, p) * weight
        coefficients.append(acc * Fraction(1, 2))
    return FormalSeries(tuple(coefficients))


def polynomial_joint_moment(b: Poly4, c: Poly4) -> JointMoment:
    """B、C 为球面多项式时的 ∫B^qC^p"""
    cache = {}

    def moment(q: int, p: int) -> Scalar:
        if (q, p) not in cache:
            cache[(q, p)] = integrate_poly(b ** q * c ** p)
        return cache[(q, p)]

    return moment


def block_law_series(v: VariableSpec, order: int) -> FormalSeries:
    """
    由 2×2 块得到的 Cauchy 级数

    w_t：P(y) = y²(y² − y + C)，C = (1−t²)(a²+b²)(c²+d²)，G = ½(z + G_B)；
    v_t：两块同律，G 即 B = a²+b²、C = (1−t²)a²b² 的块级数。
    """
    a, b, c, d = SPHERE_COORDINATES
    t = v.parameter()
    s = POLY_ONE - t * t
    if v.kind is VariableKind.WT:
        block = lemma71_series(polynomial_joint_moment(POLY_ONE, s * (a * a + b * b) * (c * c + d * d)), order)
        return (FormalSeries.variable(order + 1) + block) * Fraction(1, 2)
    if v.kind is VariableKind.VT:
        return lemma71_series(polynomial_joint_moment(a * a + b * b, s * a * a * b * b), order)
    raise ValidationError(f"块级数只适用于 w_t 与 v_t: {v.label}")


@dataclass(frozen=True)
class CauchyEvaluator:
    """变量的 Cauchy 变换：复数求值与形式级数"""
    variable: VariableSpec

    @property
    def derivative_only(self) -> bool:
        return self.variable.kind is VariableKind.VT

    def __call__(self, xi: complex) -> complex:
        return cauchy_closed(self.variable, xi)

    def series(self, order: int) -> FormalSeries:
        return cauchy_series(self.variable, order)

    def series_value(self, xi: complex, order: int) -> complex:
        """级数在 z = 1/ξ 处的数值，|ξ| 大时可作闭式的参照"""
        t = None if self.variable.t is None else float(self.variable.t)
        return complex(self.series(order).evaluate(1.0 / complex(xi), t))
