"""
组合恒等式
Cauchy 级数推导中用到的四个标准恒等式，整数层面与形式级数层面的精确校验
"""

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Tuple

from ..core import get_logger
from ..algebra.exact_arith import FormalSeries, series_sqrt


logger = get_logger('identities')


@dataclass
class IdentityCheck:
    """一个恒等式的校验结果"""
    name: str
    checked: int = 0
    failures: List[Tuple] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def describe(self) -> str:
        if self.passed:
            return f"{self.checked} 例全部成立"
        return f"{len(self.failures)}/{self.checked} 例不成立，首例 {self.failures[0]}"


def binomial_sum(p: int, q: int) -> Tuple[Fraction, Fraction]:
    """
    Σ_m C(2p+q, 2p+2m)·C(p+m, p) 与 2^{q−1}·(2p+q)/(p+q)·C(p+q, q)

    要求 p + q > 0。
    """
    lhs = sum(math.comb(2 * p + q, 2 * p + 2 * m) * math.comb(p + m, p) for m in range(q + 1))
    rhs = Fraction(2) ** (q - 1) * Fraction(2 * p + q, p + q) * math.comb(p + q, q)
    return Fraction(lhs), rhs


def factorial_sum(p: int, q: int) -> Tuple[Fraction, Fraction]:
    """
    Σ_r (2p+2r)!(2p+2q−2r)!/(r!(q−r)!(p+r)!(p+q−r)!) 与 (4^q/q!)·(2p)!(2p+q)!/(p!p!)
    """
    f = math.factorial
    lhs = sum(
        (Fraction(f(2 * p + 2 * r) * f(2 * p + 2 * q - 2 * r), f(r) * f(q - r) * f(p + r) * f(p + q - r))
         for r in range(q + 1)),
        Fraction(0)
    )
    rhs = Fraction(4 ** q, f(q)) * Fraction(f(2 * p) * f(2 * p + q), f(p) * f(p))
    return lhs, rhs


def _ratio(p: int, q: int) -> Fraction:
    # (2p+q)/(p+q)，p = q = 0 时取极限值 2
    return Fraction(2) if p + q == 0 else Fraction(2 * p + q, p + q)


def geometric_series_pair(p: int, order: int) -> Tuple[FormalSeries, FormalSeries]:
    """
    z = 1/ξ 上的 Σ_q z^{p+q}·(2p+q)/(p+q)·C(p+q, p) 与 (2ξ−1)/(ξ−1)^{p+1} = z^p(2−z)/(1−z)^{p+1}
    """
    coefficients = [Fraction(0)] * (order + 1)
    for q in range(order - p + 1):
        coefficients[p + q] = _ratio(p, q) * math.comb(p + q, p)
    lhs = FormalSeries(tuple(coefficients))
    z = FormalSeries.variable(order)
    rhs = ((2 - z) * (FormalSeries.geometric(order) ** (p + 1))).shift(p).truncate(order)
    return lhs, rhs


def central_binomial_pair(order: int) -> Tuple[FormalSeries, FormalSeries]:
    """Σ_p x^p C(2p, p) 与 (1−4x)^{−1/2}"""
    lhs = FormalSeries(tuple(Fraction(math.comb(2 * p, p)) for p in range(order + 1)))
    x = FormalSeries.variable(order)
    rhs = series_sqrt(1 - x * 4).inverse()
    return lhs, rhs


def check_identities(max_pq: int = 20, order: int = 30) -> List[IdentityCheck]:
    """对 p, q ≤ max_pq 做整数校验，对级数恒等式校验到 order 阶"""
    binomial = IdentityCheck("binomial_sum")
    factorial = IdentityCheck("factorial_sum")
    for p in range(max_pq + 1):
        for q in range(max_pq + 1):
            if p + q:
                lhs, rhs = binomial_sum(p, q)
                binomial.checked += 1
                if lhs != rhs:
                    binomial.failures.append((p, q, lhs, rhs))
            lhs, rhs = factorial_sum(p, q)
            factorial.checked += 1
            if lhs != rhs:
                factorial.failures.append((p, q, lhs, rhs))

    geometric = IdentityCheck("geometric_series")
    for p in range(min(max_pq, order) + 1):
        lhs, rhs = geometric_series_pair(p, order)
        geometric.checked += 1
        if lhs != rhs:
            geometric.failures.append((p, order))

    central = IdentityCheck("central_binomial_series")
    lhs, rhs = central_binomial_pair(order)
    central.checked = 1
    if lhs != rhs:
        central.failures.append((order,))

    checks = [binomial, factorial, geometric, central]
    for check in checks:
        log = logger.info if check.passed else logger.error
        log(f"恒等式校验 | 名称: {check.name} | 结果: {check.describe()}")
    return checks
