"""
经典 S₄ 处理器
对角加权和 Σ t_i·u_ii 在经典对称群 S₄ 上的精确分布，作为交换情形的基线
"""

import itertools
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Sequence, Tuple

from ..core import get_logger
from ..core.errors import ConstraintError, ValidationError
from ..algebra.exact_arith import RationalLike, format_rational, parse_rational


logger = get_logger('classical_s4')

GROUP_ORDER = 24


@dataclass(frozen=True)
class Permutation4:
    """{1..4} 上的置换，images[i-1] = σ(i)"""
    images: Tuple[int, int, int, int]

    def __post_init__(self):
        if sorted(self.images) != [1, 2, 3, 4]:
            raise ValidationError(f"不是 {{1..4}} 的置换: {self.images}")

    def fixed_points(self) -> Tuple[int, ...]:
        return tuple(i for i in range(1, 5) if self.images[i - 1] == i)


def all_permutations() -> List[Permutation4]:
    return [Permutation4(p) for p in itertools.permutations((1, 2, 3, 4))]


@dataclass(frozen=True)
class AtomicLaw:
    """有限原子律，原子按位置升序，同位置合并"""
    atoms: Tuple[Tuple[Fraction, Fraction], ...]

    def __post_init__(self):
        total = sum((w for _, w in self.atoms), Fraction(0))
        if total != 1:
            raise ValidationError(f"原子质量和不为 1: {total}")

    @classmethod
    def from_terms(cls, terms: Sequence[Tuple[RationalLike, RationalLike]]) -> 'AtomicLaw':
        merged: Dict[Fraction, Fraction] = {}
        for x, w in terms:
            x = Fraction(x)
            merged[x] = merged.get(x, Fraction(0)) + Fraction(w)
        return cls(tuple((x, w) for x, w in sorted(merged.items()) if w))

    def moment(self, k: int) -> Fraction:
        return sum((w * x ** k for x, w in self.atoms), Fraction(0))

    def scaled_weights(self) -> Tuple[Tuple[Fraction, int], ...]:
        """(位置, 24·权重)"""
        return tuple((x, int(w * GROUP_ORDER)) for x, w in self.atoms)

    def __str__(self):
        body = " + ".join(f"{n}δ_{x}" for x, n in self.scaled_weights())
        return f"({body})/{GROUP_ORDER}"


def check_weights(t: Sequence[RationalLike]) -> Tuple[Fraction, ...]:
    """四个有理权重，和为 1"""
    if len(t) != 4:
        raise ValidationError(f"需要 4 个权重: {len(t)}")
    weights = tuple(parse_rational(x) if isinstance(x, str) else Fraction(x) for x in t)
    total = sum(weights, Fraction(0))
    if total != 1:
        raise ConstraintError(f"权重之和必须为 1 | 实际: {format_rational(total)}")
    return weights


def classical_law(t: Sequence[RationalLike]) -> AtomicLaw:
    """逐个枚举 S₄：每个 σ 贡献 Σ_{σ(i)=i} t_i，权重 1/24"""
    weights = check_weights(t)
    terms = []
    for sigma in all_permutations():
        value = sum((weights[i - 1] for i in sigma.fixed_points()), Fraction(0))
        terms.append((value, Fraction(1, GROUP_ORDER)))
    law = AtomicLaw.from_terms(terms)
    logger.debug(f"S₄ 枚举完成 | 权重: {[format_rational(x) for x in weights]} | 分布: {law}")
    return law


def closed_form_terms(t: Sequence[RationalLike]) -> List[Tuple[Fraction, Fraction]]:
    """
    闭式 (1/24)(9δ₀ + δ₁ + 2Σ_i δ_{t_i} + Σ_{i<j} δ_{t_i+t_j}) 的未合并项
    """
    weights = check_weights(t)
    unit = Fraction(1, GROUP_ORDER)
    terms = [(Fraction(0), 9 * unit), (Fraction(1), unit)]
    terms += [(x, 2 * unit) for x in weights]
    terms += [(x + y, unit) for x, y in itertools.combinations(weights, 2)]
    return terms


def closed_form_law(t: Sequence[RationalLike]) -> AtomicLaw:
    return AtomicLaw.from_terms(closed_form_terms(t))


def classical_moments(law: AtomicLaw, k: int) -> Fraction:
    """Σ 权重·位置^k"""
    if k < 0:
        raise ValidationError(f"阶数必须非负: {k}")
    return law.moment(k)


def fixed_point_distribution() -> Dict[int, int]:
    """S₄ 中不动点个数的分布 {0: 9, 1: 8, 2: 6, 4: 1}"""
    return dict(sorted(Counter(len(s.fixed_points()) for s in all_permutations()).items()))
