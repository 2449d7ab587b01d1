#!/usr/bin/env python3
"""
测试闭式 Cauchy 变换与 z = 1/ξ 上的精确级数
"""

import sys
from fractions import Fraction
from pathlib import Path

# 添加项目根目录到Python路径
sys.path.insert(0, str(Path(__file__).resolve().parent.parent))

from src.core.errors import BranchCutError, LimitExceededError, NoClosedFormError, ValidationError
from src.algebra.exact_arith import FormalSeries
from src.processors.cauchy import (
    CauchyEvaluator, block_law_series, cauchy_closed, cauchy_series, g1_series, g2_series, g4_series,
    g_series_from_derivative, lemma71_series, moment_series, vt_derivative_series, wt_series
)
from src.processors.laws import VariableKind, VariableSpec, exact_moments

M1 = VariableSpec(VariableKind.M1)
M2 = VariableSpec(VariableKind.M2)
M4 = VariableSpec(VariableKind.M4)


def _same_coefficients(left: FormalSeries, right: FormalSeries, upto: int) -> bool:
    return all(left[n] == right[n] for n in range(upto + 1))


def test_closed_values():
    """G₄(2) = 2 − √2，远处 G(ξ) ≈ 1/ξ"""
    assert abs(cauchy_closed(M4, 2.0) - 0.585786437626905) < 1e-12
    assert abs(cauchy_closed(M1, 2.0) - (0.375 + 0.25)) < 1e-12
    for v in (M1, M2, M4, VariableSpec(VariableKind.WT, Fraction(1, 3))):
        assert abs(cauchy_closed(v, 1e6) * 1e6 - 1.0) < 1e-5


def test_endpoint_values():
    """t = 0 时 w_t 即 M₂，t = 1 时即 M₁"""
    for xi in (2.0, -1.0, 3.0 - 1.0j, 0.5 + 2.0j):
        assert abs(cauchy_closed(VariableSpec(VariableKind.WT, 0), xi) - cauchy_closed(M2, xi)) < 1e-12
        assert abs(cauchy_closed(VariableSpec(VariableKind.WT, 1), xi) - cauchy_closed(M1, xi)) < 1e-12


def test_branch_cut():
    """支撑 [0, 1] 上的实数 ξ 被拒绝"""
    for xi in (0.0, 0.5, 1.0):
        try:
            cauchy_closed(M4, xi)
            assert False, xi
        except BranchCutError:
            pass
    try:
        cauchy_closed(VariableSpec(VariableKind.M3), 2.0)
        assert False
    except NoClosedFormError:
        pass


def test_closed_series_match_moments():
    """G₁、G₂、G₄ 的级数系数即矩"""
    order = 10
    for series, v in ((g1_series(order), M1), (g2_series(order), M2), (g4_series(order), M4)):
        assert series[0] == 0 and series[1] == 1
        assert _same_coefficients(series, moment_series(exact_moments(v, order)), order + 1)
    try:
        cauchy_series(M4, 10 ** 4)
        assert False
    except LimitExceededError:
        pass


def test_wt_series():
    """w_t：ξ⁻¹ 系数为 1，ξ⁻² 系数为 ¼，两端退化为 G₂、G₁"""
    wt = cauchy_series(VariableSpec(VariableKind.WT, symbolic=True), 8)
    assert wt[1] == 1
    assert wt[2] == Fraction(1, 4)
    assert _same_coefficients(wt_series(Fraction(1), 8), g2_series(8), 9)
    assert _same_coefficients(wt_series(Fraction(0), 8), g1_series(8), 9)
    half = wt.at_parameter(Fraction(1, 2))
    moments = exact_moments(VariableSpec(VariableKind.WT, Fraction(1, 2)), 6)
    assert all(half[k + 1] == moments[k - 1] for k in range(1, 7))


def test_vt_derivative_series():
    """v_t：G′ 的 ξ⁻³ 系数为 −½，积分回 G 后系数即矩"""
    vt = VariableSpec(VariableKind.VT, Fraction(1, 3))
    derivative = cauchy_series(vt, 8)
    assert derivative[2] == -1
    assert derivative[3] == Fraction(-1, 2)
    g = g_series_from_derivative(derivative)
    moments = exact_moments(vt, 6)
    assert all(g[k + 1] == moments[k - 1] for k in range(1, 7))
    assert _same_coefficients(vt_derivative_series(Fraction(1), 8), g4_series(8).xi_derivative(), 9)
    assert _same_coefficients(vt_derivative_series(Fraction(0), 8), g2_series(8).xi_derivative(), 9)


def test_lemma71_deterministic():
    """B、C 为常数时的块级数"""
    # B = 1, C = 0：特征值 0 与 1，G = ½(1/ξ + 1/(ξ−1))
    series = lemma71_series(lambda q, p: Fraction(1) if p == 0 else Fraction(0), 8)
    assert series[1] == 1
    assert all(series[n] == Fraction(1, 2) for n in range(2, 10))
    # B = 0, C = −1：特征值 ±1，G = ξ/(ξ²−1)
    series = lemma71_series(lambda q, p: Fraction(1 if q == 0 else 0) * (-1) ** p, 8)
    assert all(series[n] == (1 if n % 2 else 0) for n in range(10))


def test_block_law_series():
    """2×2 块给出的级数与闭式级数一致"""
    wt = VariableSpec(VariableKind.WT, symbolic=True)
    assert _same_coefficients(block_law_series(wt, 6), cauchy_series(wt, 6), 7)
    vt = VariableSpec(VariableKind.VT, Fraction(1, 2))
    block = block_law_series(vt, 6)
    g = g_series_from_derivative(cauchy_series(vt, 8))
    assert _same_coefficients(block, g, 7)
    try:
        block_law_series(M2, 4)
        assert False
    except ValidationError:
        pass


def test_evaluator():
    """CauchyEvaluator：闭式与级数在 |ξ| 大时一致"""
    evaluator = CauchyEvaluator(M4)
    assert not evaluator.derivative_only
    assert abs(evaluator(10.0) - evaluator.series_value(10.0, 40)) < 1e-12
    wt = CauchyEvaluator(VariableSpec(VariableKind.WT, Fraction(1, 2)))
    assert abs(wt(6.0 + 1.0j) - wt.series_value(6.0 + 1.0j, 50)) < 1e-10
    assert CauchyEvaluator(VariableSpec(VariableKind.VT, Fraction(1, 2))).derivative_only


if __name__ == "__main__":
    tests = [
        test_closed_values, test_endpoint_values, test_branch_cut, test_closed_series_match_moments,
        test_wt_series, test_vt_derivative_series, test_lemma71_deterministic, test_block_law_series,
        test_evaluator
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
