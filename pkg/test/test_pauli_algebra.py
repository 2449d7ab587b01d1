#!/usr/bin/env python3
"""
测试 Pauli 符号代数与模型投影
"""

import sys
from pathlib import Path

# 添加项目根目录到Python路径
sys.path.insert(0, str(Path(__file__).resolve().parent.parent))

from src.core.errors import ValidationError
from src.algebra.exact_arith import SPHERE_COORDINATES, matrix_multiply, matrix_trace, norm_polynomial
from src.algebra.pauli_algebra import (
    PAULI_INDICES, SignedPauli, expand_cxc, pauli_product, pauli_product_star, pauli_star, projection_matrix
)


def test_quaternion_table():
    """乘法表就是四元数表"""
    assert pauli_product(2, 3) == SignedPauli(1, 4)
    assert pauli_product(3, 2) == SignedPauli(-1, 4)
    assert pauli_product(3, 3) == SignedPauli(-1, 1)
    for j in PAULI_INDICES:
        assert pauli_product(1, j) == SignedPauli(1, j)
        assert pauli_product(j, 1) == SignedPauli(1, j)
    for i in (2, 3, 4):
        assert pauli_product(i, i) == SignedPauli(-1, 1)
    try:
        pauli_product(0, 2)
        assert False
    except ValidationError:
        pass


def test_star():
    """c₁ 自伴，其余反自伴"""
    assert pauli_star(1) == SignedPauli(1, 1)
    assert pauli_star(2) == SignedPauli(-1, 2)
    assert pauli_star(4) == SignedPauli(-1, 4)
    # c_i c_i^* = c₁
    for i in PAULI_INDICES:
        assert pauli_product_star(i, i) == SignedPauli(1, 1)


def test_expand_cxc():
    """c_i x c_j 是坐标的带符号置换"""
    assert expand_cxc(1, 1).describe() == "(a, b, c, d)"
    assert expand_cxc(2, 2).describe() == "(a, b, -c, -d)"
    for i in PAULI_INDICES:
        for j in PAULI_INDICES:
            vector = expand_cxc(i, j)
            assert vector.is_signed_permutation()
            # 逐个坐标乘回：c_i c_m c_j = sign·c_slot
            for slot, (sign, source) in enumerate(vector.slots, start=1):
                product = pauli_product(i, PAULI_INDICES[source]) * SignedPauli(1, j)
                assert product == SignedPauli(sign, slot)


def test_projection_matrix():
    """π_ij 对称，迹为 a²+b²+c²+d²，模球面关系幂等"""
    for i in PAULI_INDICES:
        for j in PAULI_INDICES:
            pi = projection_matrix(i, j)
            assert all(pi[r][c] == pi[c][r] for r in range(4) for c in range(4))
            assert matrix_trace(pi) == norm_polynomial()
            square = matrix_multiply(pi, pi)
            for r in range(4):
                for c in range(4):
                    assert (square[r][c] - pi[r][c]).reduce_sphere().is_zero()

    a, b, c, d = SPHERE_COORDINATES
    pi22 = projection_matrix(2, 2)
    assert pi22[0][2] == -(a * c)
    assert pi22[1][1] == b * b


if __name__ == "__main__":
    tests = [test_quaternion_table, test_star, test_expand_cxc, test_projection_matrix]
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
