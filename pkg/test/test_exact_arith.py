#!/usr/bin/env python3
"""
测试精确运算：有理数、有理矩阵、Poly4 与形式级数
"""

import sys
import random
from fractions import Fraction
from pathlib import Path

# 添加项目根目录到Python路径
sys.path.insert(0, str(Path(__file__).resolve().parent.parent))

import numpy as np
import sympy as sp

from src.core.errors import DegreeCapError, ExactArithmeticError, SingularMatrixError, ValidationError
from src.algebra.exact_arith import (
    PARAMETER_T, FormalSeries, Poly4, SPHERE_COORDINATES, SYMPY_GENERATORS, arcsinh_coefficient, format_rational, norm_polynomial,
    exact_rank, parse_rational, poly_integrate_ready, rational_add, rational_inv, rational_neg, rational_matmul, rational_matrix_inverse,
    rational_mul, series_arcsinh, series_exp, series_log, series_sqrt
)


def test_rational_ops():
    """有理数运算与序列化"""
    assert rational_add(Fraction(1, 2), Fraction(1, 3)) == Fraction(5, 6)
    assert rational_inv(Fraction(3, 4)) == Fraction(4, 3)
    assert rational_neg(Fraction(-2, 7)) == Fraction(2, 7)
    assert rational_mul(Fraction(109, 20), 1) == Fraction(109, 20)
    assert format_rational(Fraction(4157, 140)) == "4157/140"
    assert format_rational(2) == "2/1"
    assert parse_rational(" 3/4 ") == Fraction(3, 4)
    try:
        rational_inv(0)
        assert False, "除零应抛出异常"
    except ExactArithmeticError:
        pass
    try:
        parse_rational("1/0")
        assert False
    except ValidationError:
        pass


def test_field_axioms():
    """随机小有理数满足结合律与分配律"""
    rng = random.Random(3)
    for _ in range(200):
        x, y, z = (Fraction(rng.randint(-9, 9), rng.randint(1, 9)) for _ in range(3))
        assert rational_add(rational_add(x, y), z) == rational_add(x, rational_add(y, z))
        assert rational_mul(x, rational_add(y, z)) == rational_add(rational_mul(x, y), rational_mul(x, z))


def test_matrix_inverse():
    """有理方阵求逆与奇异矩阵"""
    gram = [[16, 4], [4, 4]]
    inverse = rational_matrix_inverse(gram)
    assert inverse == ((Fraction(1, 12), Fraction(-1, 12)), (Fraction(-1, 12), Fraction(1, 3)))
    assert rational_matmul(inverse, gram) == ((1, 0), (0, 1))

    hilbert = [[Fraction(1, i + j + 1) for j in range(4)] for i in range(4)]
    product = rational_matmul(hilbert, rational_matrix_inverse(hilbert))
    assert product == tuple(tuple(Fraction(int(i == j)) for j in range(4)) for i in range(4))

    try:
        rational_matrix_inverse([[1, 2], [2, 4]])
        assert False, "奇异矩阵应抛出异常"
    except SingularMatrixError as e:
        assert e.size == 2 and e.column == 1
    assert exact_rank([[1, 2], [2, 4]]) == 1
    assert exact_rank(hilbert) == 4
    assert exact_rank([[0, 0, 1], [0, 0, 2]]) == 1


def test_poly_basics():
    """Poly4 展开、积分准备项与次数上限"""
    a, b, c, d = SPHERE_COORDINATES
    square = (a * a + b * b) ** 2
    terms = poly_integrate_ready(square)
    assert len(terms) == 3
    assert sorted(coef for _, coef in terms) == [1, 1, 2]
    assert poly_integrate_ready(Poly4()) == []
    single = poly_integrate_ready(a * a * b * b * c * c * d * d * 3)
    assert single == [((2, 2, 2, 2, 0), Fraction(3))]

    assert (norm_polynomial() - 1).reduce_sphere().is_zero()
    assert (a * b + b * a) == a * b * 2

    try:
        a ** 25
        assert False, "应触发次数上限"
    except DegreeCapError as e:
        assert e.cap == 24


def test_sympy_bridge():
    """Poly4 与 sympy.Poly 互转，乘法和球面化简与 sympy 一致"""
    a, b, c, d = SPHERE_COORDINATES
    p = (a + b * Fraction(1, 2)) * (c - PARAMETER_T)
    q = a * a * d - Fraction(3, 4)
    assert (p * q).to_sympy() == p.to_sympy() * q.to_sympy()
    assert Poly4.from_sympy(p.to_sympy()) == p
    assert Poly4().to_sympy().is_zero

    sa, sb, sc, sd, st = SYMPY_GENERATORS
    norm = Poly4.from_sympy(sa ** 2 + sb ** 2 + sc ** 2 + sd ** 2)
    assert norm == norm_polynomial()
    assert norm.reduce_sphere() == 1
    assert Poly4.from_sympy(sp.expand((sa - st) ** 3)) == (a - PARAMETER_T) ** 3
    try:
        Poly4.from_sympy(sp.Symbol('y') * sa)
        assert False
    except ValidationError:
        pass


def test_series_against_sympy():
    """arcsinh 与 sqrt 的截断级数系数与 sympy 展开一致"""
    x = sp.Symbol('x')
    order = 9
    asinh = sp.asinh(x).series(x, 0, order + 1).removeO()
    ours = series_arcsinh(FormalSeries.variable(order))
    for n in range(order + 1):
        assert ours[n] == Fraction(str(asinh.coeff(x, n))), n
    root = sp.sqrt(1 - 4 * x).series(x, 0, order + 1).removeO()
    ours = series_sqrt(1 - FormalSeries.variable(order) * 4)
    for n in range(order + 1):
        assert ours[n] == Fraction(str(root.coeff(x, n))), n


def test_poly_convolution():
    """Poly4 乘法与数值求值一致"""
    rng = random.Random(11)
    points = np.array([[0.1, -0.7, 0.3, 0.2], [0.5, 0.5, -0.5, 0.5]])
    for _ in range(20):
        p = Poly4({tuple(rng.randint(0, 2) for _ in range(4)): rng.randint(-5, 5) for _ in range(4)})
        q = Poly4({tuple(rng.randint(0, 2) for _ in range(4)): rng.randint(-5, 5) for _ in range(4)})
        assert np.allclose((p * q).evaluate(points), p.evaluate(points) * q.evaluate(points))


def test_poly_parameter():
    """参数 t 作为额外变量"""
    t = Poly4.variable('t')
    a = SPHERE_COORDINATES[0]
    p = (1 + t) * a * a
    assert p.degree == 2 and p.parameter_degree == 1
    assert p.at_parameter(Fraction(1, 2)) == a * a * Fraction(3, 2)
    assert np.allclose(p.evaluate(np.array([[1.0, 0, 0, 0]]), t=0.5), [1.5])


def test_series_functions():
    """开方、对数、arcsinh 的已知系数"""
    x = FormalSeries.variable(3)
    root = series_sqrt(1 - x * 4)
    assert root.coefficients == (1, -2, -2, -4)
    assert (root * root) == (1 - x * 4)

    log = series_log(1 - FormalSeries.variable(2))
    assert log.coefficients == (0, -1, Fraction(-1, 2))

    assert arcsinh_coefficient(3) == Fraction(-1, 6)
    assert series_arcsinh(FormalSeries.variable(5))[5] == Fraction(3, 40)

    s = 1 + FormalSeries.variable(8) * 3 - FormalSeries.variable(8) ** 2
    assert series_sqrt(s) ** 2 == s
    assert series_exp(series_log(s)) == s

    try:
        series_sqrt(FormalSeries.variable(3))
        assert False
    except ExactArithmeticError:
        pass


def test_series_composition():
    """复合与逆"""
    order = 10
    z = FormalSeries.variable(order)
    geometric = FormalSeries.geometric(order)
    assert (geometric * (1 - z)) == FormalSeries.constant(1, order)
    # 1/(1-x) 在 x = z² 处等于 Σ z^{2n}
    composed = geometric.compose(z * z)
    assert composed.coefficients == tuple(Fraction(1 - n % 2) for n in range(order + 1))
    assert composed.even_part() == geometric.truncate(order // 2)


if __name__ == "__main__":
    tests = [
        test_rational_ops, test_field_axioms, test_matrix_inverse, test_poly_basics, test_sympy_bridge,
        test_series_against_sympy, test_poly_convolution, test_poly_parameter, test_series_functions, test_series_composition
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
