"""
验证套件
把各模块的精确不变量与统计交叉校验组织成 algebra / faithfulness / laws / identities 四组，
输出带耗时的通过/失败表
"""

import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, List, Optional, Tuple

from ..core import config, get_logger, log_manager
from ..core.errors import ConsistencyError, PauliMomentsError, ValidationError
from ..algebra.exact_arith import exact_rank
from ..algebra.nc_combinatorics import (
    SetPartition, catalan, delta, enumerate_nc, kreweras, kreweras_by_interleaving, one_partition,
    zero_partition
)
from ..algebra.tensor_ops import (
    E_via_integration, apply_R, c_p_vector, c_span_projection, fixed_point_projection,
    multi_indices, omega, oplus, r_image, r_star_e_r
)
from ..integration.haar_integration import lemma81_moment, make_generator, sphere_moment
from ..scheduler import WorkScheduler
from .cauchy import (
    block_law_series, cauchy_closed, cauchy_series, g1_series, g2_series, g4_series
)
from .classical_s4 import classical_law, closed_form_law
from .density import atom_mass, stieltjes_density
from .identities import check_identities
from .laws import (
    VariableKind, VariableSpec, charpoly, charpoly_by_determinant, comparison_second_moment, exact_moment,
    exact_moments, theorem51_law
)
from .montecarlo import mc_law
from .weingarten import brute_force_gram, check_inverse, gram, verify_faithfulness


logger = get_logger('verification')

SUITES = ('algebra', 'faithfulness', 'laws', 'identities')

N3_TABLE = (
    Fraction(3, 4), Fraction(5, 4), Fraction(5, 2), Fraction(109, 20), Fraction(25, 2),
    Fraction(4157, 140), Fraction(1449, 20), Fraction(75877, 420), Fraction(64223, 140)
)


@dataclass
class CheckResult:
    suite: str
    name: str
    passed: bool
    seconds: float
    detail: str = ""


@dataclass
class SuiteReport:
    """一次 verify 运行的全部结果"""
    results: List[CheckResult] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)

    @property
    def failed(self) -> List[CheckResult]:
        return [r for r in self.results if not r.passed]

    def rows(self) -> List[Tuple[str, str, str, str, str]]:
        return [
            (r.suite, r.name, "PASS" if r.passed else "FAIL", f"{r.seconds:.2f}", r.detail)
            for r in self.results
        ]

    def table(self) -> str:
        header = ("suite", "check", "status", "seconds", "detail")
        rows = [header] + self.rows()
        widths = [max(len(row[c]) for row in rows) for c in range(4)]
        lines = []
        for row in rows:
            cells = [row[c].ljust(widths[c]) for c in range(4)] + [row[4]]
            lines.append("  ".join(cells).rstrip())
        return "\n".join(lines)


def expect(condition: bool, detail: str):
    """交叉校验失败时抛出 ConsistencyError"""
    if not condition:
        raise ConsistencyError(detail)


Check = Callable[[], str]


# ---------------------------------------------------------------------------
# algebra
# ---------------------------------------------------------------------------

def _algebra_checks(max_k: int) -> List[Tuple[str, Check]]:
    k_comb = min(max_k + 2, 6)
    k_prop = min(max_k, 5)
    k_small = min(max_k, 4)
    k_oracle = min(max_k, 3)

    def nc_counts():
        for k in range(1, 9):
            expect(len(enumerate_nc(k)) == catalan(k), f"|NC({k})| != C_{k}")
        return "k ≤ 8"

    def kreweras_oracle():
        for k in range(1, k_comb + 1):
            for p in enumerate_nc(k):
                expect(kreweras(p) == kreweras_by_interleaving(p), f"Kreweras 补不一致: {p}")
        return f"k ≤ {k_comb}"

    def r_of_zero_partition():
        for k in range(1, k_comb + 1):
            expect(apply_R(c_p_vector(zero_partition(k))) == omega(one_partition(k)), f"R(c_0) != ω(1_{k})")
        return f"k ≤ {k_comb}"

    def r_of_c_p():
        count = 0
        for k in range(1, k_comb + 1):
            for p in enumerate_nc(k):
                expect(apply_R(c_p_vector(p)) == omega(kreweras(p)), f"R(c_p) != ω(p^c): {p}")
                count += 1
        worked = SetPartition.parse("{1,5}{2}{3,4}{6}")
        expect(apply_R(c_p_vector(worked)) == omega(SetPartition.parse("{1,2,4}{3}{5,6}")), "示例划分不一致")
        return f"{count} 个划分"

    def pairing_law():
        checked = 0
        for k in range(1, k_small + 1):
            indices = list(multi_indices(k))
            for i in indices:
                partners = {oplus(i, s) for s in (1, 2, 3, 4)}
                si, mi = r_image(i)
                for j in indices:
                    sj, mj = r_image(j)
                    value = si * sj if mi == mj else Fraction(0)
                    expected = Fraction(1, 4) if j in partners else Fraction(0)
                    expect(value == expected, f"<R c_i, R c_j> 异常: i={i} j={j}")
                    if j in partners:
                        expect(all(delta(p, i) == delta(p, j) for p in enumerate_nc(k)), f"δ 传递失败: {i} {j}")
                    checked += 1
        return f"{checked} 对"

    def fixed_point_rank():
        for k in range(1, k_prop + 1):
            trace = fixed_point_projection(k).trace()
            expect(trace == catalan(k), f"rank(E) = {trace} != C_{k}")
            rank = exact_rank(gram(k).entries)
            expect(rank == catalan(k), f"rank(Gram) = {rank} != C_{k}")
        return f"k ≤ {k_prop}"

    def r_star_e_r_fixes_c_p():
        for k in range(1, k_prop + 1):
            operator = r_star_e_r(k)
            for p in enumerate_nc(k):
                vector = c_p_vector(p)
                expect(operator.apply(vector) == vector, f"R*ER(c_p) != c_p: {p}")
        return f"k ≤ {k_prop}"

    def r_star_e_r_projection():
        for k in range(1, k_small + 1):
            operator = r_star_e_r(k)
            expect(operator.is_idempotent(), f"R*ER 不幂等, k={k}")
            expect(operator.is_self_adjoint(), f"R*ER 不自伴, k={k}")
            difference = operator.first_difference(c_span_projection(k))
            expect(difference is None, f"R*ER 与 c_p 张成空间的投影不同: {difference}")
        return f"k ≤ {k_small}"

    def e_constructions():
        for k in range(1, k_oracle + 1):
            difference = fixed_point_projection(k).first_difference(E_via_integration(k))
            expect(difference is None, f"两种 E 构造不同, k={k}: {difference}")
        return f"k ≤ {k_oracle}"

    def sphere_moments():
        for k in range(13):
            for p in range(k + 1):
                expect(sphere_moment((2 * k - 2 * p, 2 * p, 0, 0)) == lemma81_moment(k, p), f"k={k} p={p}")
        return "k ≤ 12"

    return [
        ("nc_catalan_count", nc_counts),
        ("kreweras_interleaving", kreweras_oracle),
        ("r_of_zero_partition", r_of_zero_partition),
        ("r_c_p_is_omega_complement", r_of_c_p),
        ("pairing_law", pairing_law),
        ("fixed_point_rank", fixed_point_rank),
        ("r_star_e_r_fixes_c_p", r_star_e_r_fixes_c_p),
        ("r_star_e_r_projection", r_star_e_r_projection),
        ("e_gram_vs_integration", e_constructions),
        ("sphere_moment_closed_form", sphere_moments),
    ]


# ---------------------------------------------------------------------------
# faithfulness
# ---------------------------------------------------------------------------

def _faithfulness_checks(max_k: int, scheduler: Optional[WorkScheduler]) -> List[Tuple[str, Check]]:
    def gram_counts():
        k_max = min(max_k, 4)
        for k in range(1, k_max + 1):
            expect(gram(k).entries == brute_force_gram(k), f"Gram 与逐个计数不一致, k={k}")
            expect(check_inverse(k), f"W·G != I, k={k}")
        return f"k ≤ {k_max}"

    def faithful(k):
        def check():
            report = verify_faithfulness(k, scheduler=scheduler)
            expect(report.passed, report.describe())
            return report.describe()
        return check

    checks = [("gram_brute_force", gram_counts)]
    checks += [(f"p_equals_u_k{k}", faithful(k)) for k in range(1, max_k + 1)]
    return checks


# ---------------------------------------------------------------------------
# laws
# ---------------------------------------------------------------------------

def _laws_checks(max_k: int, scheduler: Optional[WorkScheduler]) -> List[Tuple[str, Check]]:
    def n3_table():
        moments = exact_moments(VariableSpec(VariableKind.N3), 9)
        expect(tuple(moments) == N3_TABLE, f"N₃ 矩表不一致: {moments}")
        return "k ≤ 9"

    def closed_laws():
        for s, kind in ((1, VariableKind.M1), (2, VariableKind.M2), (4, VariableKind.M4)):
            law = theorem51_law(s)
            moments = exact_moments(VariableSpec(kind), 10)
            expect(moments == law.moments(10), f"M_{s} 的矩与闭式谱律不一致")
        return "s ∈ {1,2,4}, k ≤ 10"

    def m3_second_moment():
        value = exact_moment(VariableSpec(VariableKind.M3), 2)
        other = comparison_second_moment()
        expect(value == Fraction(5, 36) and other == Fraction(15, 32) and value != other,
               f"M₃ 二阶矩 {value}，对照律 {other}")
        return "5/36 != 15/32"

    def wt_series():
        v = VariableSpec(VariableKind.WT, symbolic=True)
        series = cauchy_series(v, 8)
        moments = exact_moments(v, 8)
        for k, m in enumerate(moments, start=1):
            expect(series[k + 1] == m, f"w_t 级数第 {k} 阶不一致")
        expect(block_law_series(v, 6) == series.truncate(7), "w_t 块级数不一致")
        return "k ≤ 8"

    def vt_series():
        v = VariableSpec(VariableKind.VT, symbolic=True)
        series = cauchy_series(v, 8)
        moments = exact_moments(v, 8)
        for k, m in enumerate(moments, start=1):
            expect(series[k + 2] == m * (-(k + 1)), f"v_t 导数级数第 {k} 阶不一致")
        expect(block_law_series(v, 6).xi_derivative() == series.truncate(8), "v_t 块级数不一致")
        return "k ≤ 8"

    def endpoint_collapses():
        order = 12
        wt = VariableSpec(VariableKind.WT, symbolic=True)
        vt = VariableSpec(VariableKind.VT, symbolic=True)
        expect(cauchy_series(wt, order).at_parameter(0) == g2_series(order), "w_0 != G₂")
        expect(cauchy_series(wt, order).at_parameter(1) == g1_series(order), "w_1 != G₁")
        expect(cauchy_series(vt, order).at_parameter(1) == g2_series(order).xi_derivative(), "v_1′ != G₂′")
        expect(cauchy_series(vt, order).at_parameter(0) == g4_series(order).xi_derivative(), "v_0′ != G₄′")
        for xi in (2.0 + 0.5j, -1.0 + 0.1j, 0.5 + 2.0j, 0.3 + 0.01j, 3.0 - 1.0j):
            pairs = (
                (VariableSpec(VariableKind.WT, 0), VariableSpec(VariableKind.M2)),
                (VariableSpec(VariableKind.WT, 1), VariableSpec(VariableKind.M1)),
            )
            for left, right in pairs:
                a, b = cauchy_closed(left, xi), cauchy_closed(right, xi)
                expect(abs(a - b) <= 1e-12 * max(1.0, abs(b)), f"{left.label} 与 {right.label} 在 ξ={xi} 不一致")
        return f"级数到 {order} 阶，闭式 1e−12"

    def charpoly_determinant():
        variables = [VariableSpec(kind) for kind in (
            VariableKind.M1, VariableKind.M2, VariableKind.M3, VariableKind.M4, VariableKind.N3)]
        variables += [VariableSpec(VariableKind.WT, symbolic=True), VariableSpec(VariableKind.VT, symbolic=True)]
        for v in variables:
            expect(charpoly(v) == charpoly_by_determinant(v), f"{v.label} 的两种特征多项式不同")
        return f"{len(variables)} 个变量"

    def monte_carlo():
        samples = int(config.get('verify.mc_samples', 200000))
        seed = int(config.get('verify.mc_seed', 7))
        details = []
        for kind in (VariableKind.M4, VariableKind.N3):
            v = VariableSpec(kind)
            result = mc_law(v, samples, seed, scheduler=scheduler)
            for k in range(1, 5):
                estimate, stderr = result.moment(k)
                exact = float(exact_moment(v, k))
                expect(abs(estimate - exact) <= max(3 * stderr, 1e-9),
                       f"{v.label} 第 {k} 阶: {estimate} vs {exact} ± {stderr}")
            details.append(f"{v.label} ok")
        return f"{samples} 样本, seed={seed}: " + ", ".join(details)

    def densities():
        n = int(config.get('verify.density_points', 9))
        grid = [0.2 + 0.6 * i / max(n - 1, 1) for i in range(n)]
        v = VariableSpec(VariableKind.M4)
        law = theorem51_law(4)
        for point in stieltjes_density(v, grid, scheduler=scheduler):
            expect(abs(point.density - law.density(point.x)) <= 1e-3, f"ν₁ 密度在 x={point.x} 偏差过大")
        atom = atom_mass(VariableSpec(VariableKind.WT, 0), 0.0)
        expect(abs(atom.mass - 0.5) <= 1e-4, f"w_0 在 0 处原子质量 {atom.mass}")
        return f"{n} 个网格点，原子质量 {atom.mass:.6f}"

    def classical():
        rng = make_generator(91)
        for _ in range(100):
            raw = [Fraction(int(rng.integers(0, 13)), int(rng.integers(1, 13))) for _ in range(3)]
            total = sum(raw, Fraction(0)) + 1
            weights = [x / total for x in raw] + [1 / total]
            expect(classical_law(weights) == closed_form_law(weights), f"S₄ 枚举与闭式不同: {weights}")
        return "100 组随机权重"

    return [
        ("n3_moment_table", n3_table),
        ("closed_laws_m1_m2_m4", closed_laws),
        ("m3_second_moment", m3_second_moment),
        ("wt_series_vs_moments", wt_series),
        ("vt_derivative_series_vs_moments", vt_series),
        ("endpoint_collapses", endpoint_collapses),
        ("charpoly_determinant", charpoly_determinant),
        ("monte_carlo_moments", monte_carlo),
        ("stieltjes_density", densities),
        ("classical_s4", classical),
    ]


# ---------------------------------------------------------------------------
# identities
# ---------------------------------------------------------------------------

def _identity_checks() -> List[Tuple[str, Check]]:
    cache = []

    def make(index: int):
        def check():
            if not cache:
                cache.extend(check_identities())
            result = cache[index]
            expect(result.passed, result.describe())
            return result.describe()
        return check

    names = ("binomial_sum", "factorial_sum", "geometric_series", "central_binomial_series")
    return [(name, make(n)) for n, name in enumerate(names)]


def _checks_for(suite: str, max_k: int, scheduler: Optional[WorkScheduler]) -> List[Tuple[str, Check]]:
    if suite == 'algebra':
        return _algebra_checks(max_k)
    if suite == 'faithfulness':
        return _faithfulness_checks(max_k, scheduler)
    if suite == 'laws':
        return _laws_checks(max_k, scheduler)
    if suite == 'identities':
        return _identity_checks()
    raise ValidationError(f"未知套件: {suite}，可选 {SUITES + ('all',)}")


def run_suites(suite: str = 'all', max_k: Optional[int] = None,
               scheduler: Optional[WorkScheduler] = None) -> SuiteReport:
    """
    运行验证套件

    单项检查抛出的业务异常记为失败并继续后续检查。
    """
    max_k = int(max_k if max_k is not None else config.get('faithfulness.default_max_k', 4))
    if max_k < 1:
        raise ValidationError(f"max-k 必须为正: {max_k}")
    suites = SUITES if suite == 'all' else (suite,)
    report = SuiteReport()
    for name in suites:
        for check_name, check in _checks_for(name, max_k, scheduler):
            start_time = time.time()
            try:
                detail, passed = check(), True
            except PauliMomentsError as e:
                detail, passed = str(e), False
            duration = time.time() - start_time
            log_manager.log_check(f"{name}.{check_name}", passed, duration)
            report.results.append(CheckResult(name, check_name, passed, duration, detail))
    logger.info(f"验证结束 | 套件: {suite} | 通过: {len(report.results) - len(report.failed)}/{len(report.results)}")
    return report
