"""
Pauli 符号代数
c₁..c₄ 按四元数规则相乘，c_i x c_j 展开为坐标的带符号置换，
由此得到模型投影 π_ij(x) 的精确多项式矩阵
"""

from dataclasses import dataclass
from typing import Dict, Tuple

from ..core.errors import ValidationError
from .exact_arith import Poly4, PolyMatrix, SPHERE_COORDINATES, SPHERE_VARIABLES


PAULI_INDICES: Tuple[int, ...] = (1, 2, 3, 4)


def check_index(i: int) -> int:
    if i not in PAULI_INDICES:
        raise ValidationError(f"Pauli 下标必须在 1..4 之间: {i}")
    return i


@dataclass(frozen=True)
class SignedPauli:
    """±c_index"""
    sign: int
    index: int

    def __post_init__(self):
        if self.sign not in (1, -1):
            raise ValidationError(f"符号必须为 ±1: {self.sign}")
        check_index(self.index)

    def __mul__(self, other: 'SignedPauli') -> 'SignedPauli':
        product = pauli_product(self.index, other.index)
        return SignedPauli(self.sign * other.sign * product.sign, product.index)

    def __neg__(self):
        return SignedPauli(-self.sign, self.index)


def _build_product_table() -> Dict[Tuple[int, int], SignedPauli]:
    # 四元数: 2=i, 3=j, 4=k
    cyclic = {(2, 3): 4, (3, 4): 2, (4, 2): 3}
    table: Dict[Tuple[int, int], SignedPauli] = {}
    for i in PAULI_INDICES:
        table[(1, i)] = SignedPauli(1, i)
        table[(i, 1)] = SignedPauli(1, i)
    for i in (2, 3, 4):
        table[(i, i)] = SignedPauli(-1, 1)
    for (i, j), m in cyclic.items():
        table[(i, j)] = SignedPauli(1, m)
        table[(j, i)] = SignedPauli(-1, m)
    return table


_PRODUCT_TABLE = _build_product_table()


def pauli_product(i: int, j: int) -> SignedPauli:
    """c_i c_j = sign·c_m"""
    return _PRODUCT_TABLE[(check_index(i), check_index(j))]


def pauli_star(i: int) -> SignedPauli:
    """c_i^*：c₁ 自伴，c₂,c₃,c₄ 反自伴"""
    check_index(i)
    return SignedPauli(1, 1) if i == 1 else SignedPauli(-1, i)


def pauli_product_star(i: int, j: int) -> SignedPauli:
    """c_i c_j^*"""
    star = pauli_star(j)
    product = pauli_product(i, j)
    return SignedPauli(star.sign * product.sign, product.index)


@dataclass(frozen=True)
class SignedCoordinateVector:
    """
    c_i x c_j 在 Pauli 基下的坐标

    slots[m-1] = (sign, source)，表示第 m 个分量为 sign·x_source，
    source 为 0..3 对应 a,b,c,d。
    """
    slots: Tuple[Tuple[int, int], ...]

    def is_signed_permutation(self) -> bool:
        sources = sorted(source for _, source in self.slots)
        return sources == [0, 1, 2, 3] and all(sign in (1, -1) for sign, _ in self.slots)

    def polynomials(self) -> Tuple[Poly4, ...]:
        return tuple(SPHERE_COORDINATES[source] * sign for sign, source in self.slots)

    def describe(self) -> str:
        return "(" + ", ".join(
            ("" if sign > 0 else "-") + SPHERE_VARIABLES[source] for sign, source in self.slots
        ) + ")"


def expand_cxc(i: int, j: int) -> SignedCoordinateVector:
    """x = a c₁ + b c₂ + c c₃ + d c₄ 时 c_i x c_j 的带符号坐标"""
    slots = [None] * 4
    for source, m in enumerate(PAULI_INDICES):
        product = pauli_product(i, m) * SignedPauli(1, check_index(j))
        slots[product.index - 1] = (product.sign, source)
    return SignedCoordinateVector(tuple(slots))


def projection_matrix(i: int, j: int) -> PolyMatrix:
    """π_ij(x)：到 c_i x c_j 上的秩一投影，元素为 v_l·v_m"""
    v = expand_cxc(i, j).polynomials()
    return tuple(tuple(v[l] * v[m] for m in range(4)) for l in range(4))
