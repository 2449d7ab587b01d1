"""
精确运算模块
有理数、四元稀疏多项式 Poly4（可带参数 t）、截断形式幂级数，
以及无分数消元的有理矩阵求逆
"""

import math
from fractions import Fraction
from dataclasses import dataclass
from types import MappingProxyType
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple, Union, Callable

import numpy as np
import sympy as sp
from sympy.polys.polyerrors import BasePolynomialError

from ..core import config
from ..core.errors import (
    ExactArithmeticError, DegreeCapError, ValidationError, SingularMatrixError,
    MissingParameterError
)


Rational = Fraction
RationalLike = Union[int, Fraction]


# ---------------------------------------------------------------------------
# 有理数
# ---------------------------------------------------------------------------

def rational_add(x: RationalLike, y: RationalLike) -> Fraction:
    """有理数加法"""
    return Fraction(x) + Fraction(y)


def rational_mul(x: RationalLike, y: RationalLike) -> Fraction:
    """有理数乘法"""
    return Fraction(x) * Fraction(y)


def rational_neg(x: RationalLike) -> Fraction:
    """有理数取负"""
    return -Fraction(x)


def rational_inv(x: RationalLike) -> Fraction:
    """有理数求逆，零输入抛出异常"""
    x = Fraction(x)
    if x == 0:
        raise ExactArithmeticError("除零错误 | 操作: inv | 输入: 0")
    return 1 / x


def format_rational(x: RationalLike) -> str:
    """序列化为 "分子/分母" 字符串，整数也带分母"""
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def parse_rational(text: str) -> Fraction:
    """解析 "3/4"、"2"、"0.25" 等形式"""
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as e:
        raise ValidationError(f"无法解析有理数: {text!r}") from e


# ---------------------------------------------------------------------------
# 有理矩阵
# ---------------------------------------------------------------------------

RationalMatrix = Tuple[Tuple[Fraction, ...], ...]


def _square_size(matrix: Sequence[Sequence[RationalLike]]) -> int:
    n = len(matrix)
    if n == 0 or any(len(row) != n for row in matrix):
        raise ValidationError(f"需要非空方阵 | 行数: {n}")
    return n


def rational_matrix_inverse(matrix: Sequence[Sequence[RationalLike]]) -> RationalMatrix:
    """
    有理方阵精确求逆

    先按行清分母得到整数矩阵，用 Bareiss 无分数消元化为上三角，
    再以有理数回代。零主元直接抛出 SingularMatrixError，不做任何正则化。

    Args:
        matrix: 有理数方阵

    Returns:
        逆矩阵（元组形式，元素为 Fraction）
    """
    n = _square_size(matrix)
    rows = [[Fraction(x) for x in row] for row in matrix]

    # D·A 为整数矩阵，(D·A)^-1 = A^-1·D^-1
    scales = [math.lcm(*(x.denominator for x in row)) for row in rows]
    aug = [
        [int(x * scales[i]) for x in row] + [1 if i == j else 0 for j in range(n)]
        for i, row in enumerate(rows)
    ]

    width = 2 * n
    prev = 1
    for k in range(n):
        pivot = next((r for r in range(k, n) if aug[r][k] != 0), None)
        if pivot is None:
            raise SingularMatrixError(n, k, "Bareiss 消元")
        if pivot != k:
            aug[k], aug[pivot] = aug[pivot], aug[k]
        pk = aug[k][k]
        row_k = aug[k]
        for i in range(k + 1, n):
            row_i = aug[i]
            factor = row_i[k]
            for j in range(k + 1, width):
                row_i[j] = (row_i[j] * pk - factor * row_k[j]) // prev
            row_i[k] = 0
        prev = pk

    # 上三角回代
    solution: List[List[Fraction]] = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n - 1, -1, -1):
        diag = aug[i][i]
        for col in range(n):
            s = Fraction(aug[i][n + col])
            for j in range(i + 1, n):
                if aug[i][j]:
                    s -= aug[i][j] * solution[j][col]
            solution[i][col] = s / diag

    return tuple(
        tuple(solution[i][j] * scales[j] for j in range(n))
        for i in range(n)
    )


def rational_matmul(left: Sequence[Sequence[RationalLike]],
                    right: Sequence[Sequence[RationalLike]]) -> RationalMatrix:
    """有理矩阵乘法"""
    if not left or len(left[0]) != len(right):
        raise ValidationError("矩阵维数不匹配")
    cols = len(right[0])
    return tuple(
        tuple(sum((Fraction(row[m]) * right[m][j] for m in range(len(right))), Fraction(0))
              for j in range(cols))
        for row in left
    )


def exact_rank(matrix: Sequence[Sequence[RationalLike]]) -> int:
    """精确秩（有理数行化简）"""
    rows = [[Fraction(x) for x in row] for row in matrix]
    if not rows:
        return 0
    n_cols = len(rows[0])
    rank = 0
    for col in range(n_cols):
        pivot = next((r for r in range(rank, len(rows)) if rows[r][col] != 0), None)
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        for r in range(rank + 1, len(rows)):
            if rows[r][col] != 0:
                ratio = rows[r][col] / rows[rank][col]
                rows[r] = [a - ratio * b for a, b in zip(rows[r], rows[rank])]
        rank += 1
    return rank


# ---------------------------------------------------------------------------
# Poly4
# ---------------------------------------------------------------------------

VARIABLES = ('a', 'b', 'c', 'd', 't')
SPHERE_VARIABLES = VARIABLES[:4]
Exponent = Tuple[int, int, int, int, int]
_CONSTANT_EXPONENT: Exponent = (0, 0, 0, 0, 0)
SYMPY_GENERATORS = sp.symbols(VARIABLES)


def _add_exponents(e1: Exponent, e2: Exponent) -> Exponent:
    return (e1[0] + e2[0], e1[1] + e2[1], e1[2] + e2[2], e1[3] + e2[3], e1[4] + e2[4])


class Poly4:
    """
    a,b,c,d 四个球面坐标加参数 t 的稀疏有理系数多项式

    指数向量统一为 5 元组 (e_a, e_b, e_c, e_d, e_t)，不存储零系数。
    对象构造后不可变，可在线程间共享。
    """

    __slots__ = ('_terms', '_hash')

    max_degree: int = config.limit('max_degree')

    def __init__(self, terms: Optional[Mapping[Sequence[int], RationalLike]] = None):
        clean: Dict[Exponent, Fraction] = {}
        for exps, coef in (terms or {}).items():
            exps = tuple(int(e) for e in exps)
            if len(exps) == 4:
                exps = exps + (0,)
            if len(exps) != 5 or any(e < 0 for e in exps):
                raise ValidationError(f"非法指数向量: {exps}")
            value = clean.get(exps, Fraction(0)) + Fraction(coef)
            clean[exps] = value
        self._terms = {e: c for e, c in clean.items() if c != 0}
        self._hash = None
        self._check_degree()

    @classmethod
    def _wrap(cls, terms: Dict[Exponent, Fraction]) -> 'Poly4':
        obj = cls.__new__(cls)
        obj._terms = terms
        obj._hash = None
        return obj

    @classmethod
    def constant(cls, value: RationalLike) -> 'Poly4':
        value = Fraction(value)
        return cls._wrap({_CONSTANT_EXPONENT: value} if value else {})

    @classmethod
    def variable(cls, name: str) -> 'Poly4':
        if name not in VARIABLES:
            raise ValidationError(f"未知变量: {name}")
        exps = [0] * 5
        exps[VARIABLES.index(name)] = 1
        return cls._wrap({tuple(exps): Fraction(1)})

    @classmethod
    def monomial(cls, exps: Sequence[int], coef: RationalLike = 1) -> 'Poly4':
        return cls({tuple(exps): coef})

    def _check_degree(self):
        if self.degree > self.max_degree:
            raise DegreeCapError(self.degree, self.max_degree)

    # ---- 查询 ----

    @property
    def terms(self) -> Mapping[Exponent, Fraction]:
        return MappingProxyType(self._terms)

    @property
    def degree(self) -> int:
        """a,b,c,d 上的总次数，参数 t 不计入"""
        if not self._terms:
            return 0
        return max(e[0] + e[1] + e[2] + e[3] for e in self._terms)

    @property
    def parameter_degree(self) -> int:
        return max((e[4] for e in self._terms), default=0)

    def has_parameter(self) -> bool:
        return any(e[4] for e in self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return all(e == _CONSTANT_EXPONENT for e in self._terms)

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ExactArithmeticError(f"多项式不是常数: {self}")
        return self._terms.get(_CONSTANT_EXPONENT, Fraction(0))

    def coefficient(self, exps: Sequence[int]) -> Fraction:
        exps = tuple(exps)
        if len(exps) == 4:
            exps = exps + (0,)
        return self._terms.get(exps, Fraction(0))

    def sorted_terms(self) -> List[Tuple[Exponent, Fraction]]:
        """按次数降序、指数字典序降序排列的项"""
        return sorted(self._terms.items(),
                      key=lambda item: (sum(item[0][:4]), item[0][4], item[0]),
                      reverse=True)

    # ---- sympy ----

    def to_sympy(self) -> sp.Poly:
        """以 a,b,c,d,t 为生成元的 QQ 上 sympy.Poly"""
        terms = {e: sp.Rational(c.numerator, c.denominator) for e, c in self._terms.items()}
        return sp.Poly.from_dict(terms or {_CONSTANT_EXPONENT: 0}, *SYMPY_GENERATORS, domain='QQ')

    @classmethod
    def from_sympy(cls, expr) -> 'Poly4':
        """sympy 表达式或 Poly 转回 Poly4，只允许 a,b,c,d,t 出现"""
        try:
            poly = sp.Poly(expr, *SYMPY_GENERATORS, domain='QQ')
        except BasePolynomialError as e:
            raise ValidationError(f"不是 a,b,c,d,t 上的有理多项式: {expr}") from e
        return cls({exps: Fraction(str(coef)) for exps, coef in poly.terms()})

    # ---- 运算 ----

    @staticmethod
    def _coerce(other) -> Optional['Poly4']:
        if isinstance(other, Poly4):
            return other
        if isinstance(other, (int, Fraction)):
            return Poly4.constant(other)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        result = dict(self._terms)
        for e, c in other._terms.items():
            value = result.get(e, Fraction(0)) + c
            if value:
                result[e] = value
            else:
                result.pop(e, None)
        return Poly4._wrap(result)

    __radd__ = __add__

    def __neg__(self):
        return Poly4._wrap({e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            factor = Fraction(other)
            if factor == 0:
                return Poly4._wrap({})
            return Poly4._wrap({e: c * factor for e, c in self._terms.items()})
        if not isinstance(other, Poly4):
            return NotImplemented
        if not self._terms or not other._terms:
            return Poly4._wrap({})
        if self.degree + other.degree > self.max_degree:
            raise DegreeCapError(self.degree + other.degree, self.max_degree)
        result: Dict[Exponent, Fraction] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = _add_exponents(e1, e2)
                result[e] = result.get(e, Fraction(0)) + c1 * c2
        return Poly4._wrap({e: c for e, c in result.items() if c})

    __rmul__ = __mul__

    def __truediv__(self, other):
        if not isinstance(other, (int, Fraction)):
            return NotImplemented
        return self * rational_inv(other)

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise ValidationError(f"幂次必须为非负整数: {n}")
        result = Poly4.constant(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __eq__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __bool__(self):
        return bool(self._terms)

    # ---- 代换与求值 ----

    def at_parameter(self, t: RationalLike) -> 'Poly4':
        """把 t 代换为有理数"""
        t = Fraction(t)
        result: Dict[Exponent, Fraction] = {}
        for e, c in self._terms.items():
            key = (e[0], e[1], e[2], e[3], 0)
            result[key] = result.get(key, Fraction(0)) + c * t ** e[4]
        return Poly4._wrap({e: c for e, c in result.items() if c})

    def reduce_sphere(self) -> 'Poly4':
        """按 a²+b²+c²+d² = 1 把 d² 替换为 1−a²−b²−c²"""
        if all(e[3] < 2 for e in self._terms):
            return self
        complement = Poly4({(0, 0, 0, 0): 1, (2, 0, 0, 0): -1, (0, 2, 0, 0): -1, (0, 0, 2, 0): -1})
        powers = {0: Poly4.constant(1)}
        result = Poly4._wrap({})
        for e, c in self._terms.items():
            half, rest = divmod(e[3], 2)
            if half not in powers:
                powers[half] = complement ** half
            base = Poly4._wrap({(e[0], e[1], e[2], rest, e[4]): c})
            result = result + base * powers[half]
        return result

    def evaluate(self, points: np.ndarray, t: Optional[float] = None) -> np.ndarray:
        """
        在一批球面点上数值求值

        Args:
            points: 形状 (n, 4) 的数组，列依次为 a,b,c,d
            t: 参数 t 的数值；多项式含 t 时必须提供

        Returns:
            形状 (n,) 的数组
        """
        points = np.atleast_2d(np.asarray(points, dtype=float))
        values = np.zeros(points.shape[0])
        for e, c in self._terms.items():
            if e[4] and t is None:
                raise MissingParameterError("多项式含参数 t，求值时需要提供 t")
            term = np.full(points.shape[0], float(c))
            for axis in range(4):
                if e[axis]:
                    term = term * points[:, axis] ** e[axis]
            if e[4]:
                term = term * float(t) ** e[4]
            values = values + term
        return values

    # ---- 显示 ----

    def __str__(self):
        if not self._terms:
            return "0"
        parts = []
        for e, c in self.sorted_terms():
            factors = [f"{name}^{p}" if p > 1 else name
                       for name, p in zip(VARIABLES, e) if p]
            magnitude = abs(c)
            if not factors:
                body = str(magnitude)
            elif magnitude == 1:
                body = "*".join(factors)
            else:
                body = f"{magnitude}*" + "*".join(factors)
            sign = "-" if c < 0 else "+"
            parts.append((sign, body))
        text = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, body in parts[1:]:
            text += f" {sign} {body}"
        return text

    def __repr__(self):
        return f"Poly4({self})"


POLY_ZERO = Poly4.constant(0)
POLY_ONE = Poly4.constant(1)
SPHERE_COORDINATES: Tuple[Poly4, ...] = tuple(Poly4.variable(n) for n in SPHERE_VARIABLES)
PARAMETER_T = Poly4.variable('t')


def poly_integrate_ready(poly: Poly4) -> List[Tuple[Exponent, Fraction]]:
    """展开后的完整项列表，供球面积分使用"""
    return poly.sorted_terms()


def norm_polynomial() -> Poly4:
    """a²+b²+c²+d²"""
    return sum((x * x for x in SPHERE_COORDINATES), POLY_ZERO)


# ---------------------------------------------------------------------------
# Poly4 矩阵
# ---------------------------------------------------------------------------

PolyMatrix = Tuple[Tuple[Poly4, ...], ...]


def poly_matrix(rows: Iterable[Iterable[Union[Poly4, RationalLike]]]) -> PolyMatrix:
    return tuple(
        tuple(x if isinstance(x, Poly4) else Poly4.constant(x) for x in row)
        for row in rows
    )


def matrix_identity(n: int = 4) -> PolyMatrix:
    return poly_matrix([[1 if i == j else 0 for j in range(n)] for i in range(n)])


def matrix_add(left: PolyMatrix, right: PolyMatrix) -> PolyMatrix:
    return tuple(tuple(x + y for x, y in zip(r1, r2)) for r1, r2 in zip(left, right))


def matrix_scale(matrix: PolyMatrix, factor: Union[Poly4, RationalLike]) -> PolyMatrix:
    return tuple(tuple(x * factor for x in row) for row in matrix)


def matrix_multiply(left: PolyMatrix, right: PolyMatrix) -> PolyMatrix:
    n = len(right)
    cols = len(right[0])
    result = []
    for row in left:
        out = []
        for j in range(cols):
            acc = POLY_ZERO
            for m in range(n):
                if row[m] and right[m][j]:
                    acc = acc + row[m] * right[m][j]
            out.append(acc)
        result.append(tuple(out))
    return tuple(result)


def matrix_trace(matrix: PolyMatrix) -> Poly4:
    return sum((matrix[i][i] for i in range(len(matrix))), POLY_ZERO)


# ---------------------------------------------------------------------------
# 形式幂级数
# ---------------------------------------------------------------------------

Scalar = Union[Fraction, Poly4]


def _scalar(x) -> Scalar:
    if isinstance(x, Poly4):
        return x.constant_value() if x.is_constant() else x
    return Fraction(x)


def _unit_value(x: Scalar) -> Fraction:
    """系数环中可逆元（非零有理常数）的值"""
    value = x.constant_value() if isinstance(x, Poly4) else Fraction(x)
    if value == 0:
        raise ExactArithmeticError("常数项为零，级数不可逆")
    return value


@dataclass(frozen=True)
class FormalSeries:
    """
    截断形式幂级数 Σ c_n x^n, n = 0..order

    系数为 Fraction 或仅含 t 的 Poly4。所有运算结果截断到参与运算的最小阶。
    """
    coefficients: Tuple[Scalar, ...]

    def __post_init__(self):
        if not self.coefficients:
            raise ValidationError("级数至少包含常数项")
        object.__setattr__(self, 'coefficients', tuple(_scalar(c) for c in self.coefficients))

    @property
    def order(self) -> int:
        return len(self.coefficients) - 1

    @classmethod
    def from_list(cls, coefficients: Sequence, order: int) -> 'FormalSeries':
        coeffs = list(coefficients[:order + 1])
        coeffs += [Fraction(0)] * (order + 1 - len(coeffs))
        return cls(tuple(coeffs))

    @classmethod
    def constant(cls, value, order: int) -> 'FormalSeries':
        return cls.from_list([value], order)

    @classmethod
    def variable(cls, order: int) -> 'FormalSeries':
        return cls.from_list([0, 1], order)

    @classmethod
    def geometric(cls, order: int) -> 'FormalSeries':
        """1/(1−x)"""
        return cls(tuple(Fraction(1) for _ in range(order + 1)))

    def __getitem__(self, n: int) -> Scalar:
        if n > self.order:
            raise ExactArithmeticError(f"超出截断阶 | 下标: {n} | 阶: {self.order}")
        return self.coefficients[n] if n >= 0 else Fraction(0)

    def truncate(self, order: int) -> 'FormalSeries':
        return FormalSeries.from_list(self.coefficients, min(order, self.order))

    def valuation(self) -> Optional[int]:
        return next((n for n, c in enumerate(self.coefficients) if c != 0), None)

    # ---- 环运算 ----

    def __add__(self, other):
        if isinstance(other, FormalSeries):
            order = min(self.order, other.order)
            return FormalSeries(tuple(self.coefficients[n] + other.coefficients[n]
                                      for n in range(order + 1)))
        if isinstance(other, (int, Fraction, Poly4)):
            return FormalSeries((self.coefficients[0] + other,) + self.coefficients[1:])
        return NotImplemented

    __radd__ = __add__

    def __neg__(self):
        return FormalSeries(tuple(-c for c in self.coefficients))

    def __sub__(self, other):
        if isinstance(other, (FormalSeries, int, Fraction, Poly4)):
            return self + (-other)
        return NotImplemented

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, Poly4)):
            return FormalSeries(tuple(c * other for c in self.coefficients))
        if not isinstance(other, FormalSeries):
            return NotImplemented
        order = min(self.order, other.order)
        result = []
        for n in range(order + 1):
            acc = Fraction(0)
            for i in range(n + 1):
                a = self.coefficients[i]
                if a == 0:
                    continue
                b = other.coefficients[n - i]
                if b != 0:
                    acc = acc + a * b
            result.append(acc)
        return FormalSeries(tuple(result))

    __rmul__ = __mul__

    def inverse(self) -> 'FormalSeries':
        """乘法逆，要求常数项为非零有理数"""
        b0 = 1 / _unit_value(self.coefficients[0])
        result = [b0]
        for n in range(1, self.order + 1):
            acc = Fraction(0)
            for i in range(1, n + 1):
                if self.coefficients[i] != 0:
                    acc = acc + self.coefficients[i] * result[n - i]
            result.append(-acc * b0)
        return FormalSeries(tuple(result))

    def __truediv__(self, other):
        if isinstance(other, FormalSeries):
            return self * other.inverse()
        if isinstance(other, (int, Fraction, Poly4)):
            return self * (1 / _unit_value(other))
        return NotImplemented

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise ValidationError(f"幂次必须为非负整数: {n}")
        result = FormalSeries.constant(1, self.order)
        for _ in range(n):
            result = result * self
        return result

    def compose(self, inner: 'FormalSeries') -> 'FormalSeries':
        """
        复合 self(inner(x))，inner 的常数项必须为零

        结果截断到 inner 的阶与 self 截断误差所能保证的阶中的较小者。
        """
        valuation = inner.valuation()
        if valuation is None:
            return FormalSeries.constant(self.coefficients[0], inner.order)
        if valuation < 1:
            raise ExactArithmeticError("复合要求内层级数常数项为零")
        order = min(inner.order, (self.order + 1) * valuation - 1)
        inner = inner.truncate(order)
        result = FormalSeries.constant(self.coefficients[self.order], order)
        for n in range(self.order - 1, -1, -1):
            result = result * inner + self.coefficients[n]
        return result

    def derivative(self) -> 'FormalSeries':
        if self.order == 0:
            return FormalSeries((Fraction(0),))
        return FormalSeries(tuple(self.coefficients[n] * n for n in range(1, self.order + 1)))

    def integral(self, constant: RationalLike = 0) -> 'FormalSeries':
        return FormalSeries((Fraction(constant),) + tuple(
            self.coefficients[n] * Fraction(1, n + 1) for n in range(self.order + 1)))

    def shift(self, n: int) -> 'FormalSeries':
        """乘以 x^n；n 为负时除以 x^|n|，要求低阶系数为零"""
        if n >= 0:
            return FormalSeries((Fraction(0),) * n + self.coefficients)
        if any(c != 0 for c in self.coefficients[:-n]):
            raise ExactArithmeticError(f"级数赋值不足，无法除以 x^{-n}")
        if -n > self.order:
            raise ExactArithmeticError("截断阶不足")
        return FormalSeries(self.coefficients[-n:])

    def even_part(self) -> 'FormalSeries':
        """偶次部分，作为 x² 的级数"""
        return FormalSeries(self.coefficients[0::2])

    def map(self, fn: Callable[[Scalar], Scalar]) -> 'FormalSeries':
        return FormalSeries(tuple(fn(c) for c in self.coefficients))

    def at_parameter(self, t: RationalLike) -> 'FormalSeries':
        return self.map(lambda c: c.at_parameter(t) if isinstance(c, Poly4) else c)

    def xi_derivative(self) -> 'FormalSeries':
        """把级数视为 z = 1/ξ 的函数，对 ξ 求导：d/dξ z^n = −n z^{n+1}"""
        return FormalSeries((Fraction(0),) + tuple(
            -self.coefficients[n] * n for n in range(self.order + 1)))

    def evaluate(self, z, t: Optional[float] = None):
        """数值求和（Horner），系数含 t 时需要提供 t"""
        acc = 0.0
        for c in reversed(self.coefficients):
            if isinstance(c, Poly4):
                if c.has_parameter() and t is None:
                    raise MissingParameterError("级数系数含参数 t")
                value = sum(float(coef) * float(t if t is not None else 0) ** e[4]
                            for e, coef in c.terms.items())
            else:
                value = float(c)
            acc = acc * z + value
        return acc


def series_sqrt(s: FormalSeries) -> FormalSeries:
    """常数项为 1 的级数开平方"""
    if _unit_value(s.coefficients[0]) != 1:
        raise ExactArithmeticError("开方要求常数项为 1")
    result: List[Scalar] = [Fraction(1)]
    half = Fraction(1, 2)
    for n in range(1, s.order + 1):
        acc = s.coefficients[n]
        for i in range(1, n):
            acc = acc - result[i] * result[n - i]
        result.append(acc * half)
    return FormalSeries(tuple(result))


def series_log(s: FormalSeries) -> FormalSeries:
    """常数项为 1 的级数取对数，log s = ∫ s'/s"""
    if _unit_value(s.coefficients[0]) != 1:
        raise ExactArithmeticError("对数要求常数项为 1")
    if s.order == 0:
        return FormalSeries((Fraction(0),))
    return (s.derivative() * s.inverse().truncate(s.order - 1)).integral()


def series_exp(s: FormalSeries) -> FormalSeries:
    """常数项为零的级数取指数"""
    if s.coefficients[0] != 0:
        raise ExactArithmeticError("指数要求常数项为零")
    result: List[Scalar] = [Fraction(1)]
    for n in range(1, s.order + 1):
        acc = Fraction(0)
        for k in range(1, n + 1):
            if s.coefficients[k] != 0:
                acc = acc + s.coefficients[k] * k * result[n - k]
        result.append(acc * Fraction(1, n))
    return FormalSeries(tuple(result))


def arcsinh_coefficient(n: int) -> Fraction:
    """arcsinh 的 Maclaurin 系数 [y^n]"""
    if n % 2 == 0:
        return Fraction(0)
    m = (n - 1) // 2
    return Fraction((-1) ** m * math.factorial(2 * m),
                    4 ** m * math.factorial(m) ** 2 * (2 * m + 1))


def series_arcsinh(s: FormalSeries) -> FormalSeries:
    """常数项为零的级数取 arcsinh"""
    if s.coefficients[0] != 0:
        raise ExactArithmeticError("arcsinh 要求常数项为零")
    maclaurin = FormalSeries(tuple(arcsinh_coefficient(n) for n in range(s.order + 1)))
    return maclaurin.compose(s)
