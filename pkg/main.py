#!/usr/bin/env python3
"""
量子置换代数矩模型计算系统主程序
Exact Haar moments of the quantum permutation algebra A_s(4)
"""

import csv
import io
import json
import sys
import argparse
from fractions import Fraction
from typing import Any, Dict, List, Optional, Sequence

from src.core import config, get_logger, log_manager, PauliMomentsError, INPUT_ERRORS
from src.scheduler import work_scheduler
from src.algebra.exact_arith import Poly4, format_rational
from src.algebra.nc_combinatorics import catalan, enumerate_nc, kreweras
from src.processors import (
    SUITES, VariableKind, charpoly, classical_law, exact_moments, gram, make_grid, mc_law,
    parse_eps, parse_grid, parse_variable, run_suites, stieltjes_density, weingarten_matrix
)
from src.processors.laws import multiply_charpolys, vt_block_factors


SCHEMA_VERSION = "1"

logger = get_logger('main')


def exact_text(value) -> str:
    """精确值一律序列化为 "n/d" 或 t 的多项式"""
    if isinstance(value, Poly4):
        return format_rational(value.constant_value()) if value.is_constant() else str(value)
    return format_rational(Fraction(value))


class Output:
    """数据写到 stdout 或 --output 文件，日志只走 stderr"""

    def __init__(self, fmt: str, path: Optional[str] = None):
        self.fmt = fmt
        self.path = path

    def write_text(self, text: str):
        if self.path:
            with open(self.path, 'w', encoding='utf-8') as f:
                f.write(text)
            logger.info(f"结果已写入 | 路径: {self.path}")
        else:
            sys.stdout.write(text)
            sys.stdout.flush()

    def emit(self, payload: Dict[str, Any], tables: Sequence[Sequence[Sequence[Any]]],
             comments: Sequence[str] = ()):
        """
        Args:
            payload: JSON 内容（自动加上 schema 字段）
            tables: CSV 表格列表，每个表第一行为表头
            comments: CSV 开头的 "# 键=值" 行
        """
        if self.fmt == 'json':
            body = {"schema": SCHEMA_VERSION}
            body.update(payload)
            self.write_text(json.dumps(body, ensure_ascii=False, indent=2) + "\n")
            return
        buffer = io.StringIO()
        for line in comments:
            buffer.write(f"# {line}\n")
        writer = csv.writer(buffer, lineterminator="\n")
        for n, table in enumerate(tables):
            if n:
                buffer.write("\n")
            writer.writerows(table)
        self.write_text(buffer.getvalue())


def _variable(args, allow_symbolic: bool = True):
    name = args.variable
    symbolic = allow_symbolic and args.t is None and name.lower() in (VariableKind.WT.value, VariableKind.VT.value)
    return parse_variable(name, args.t, symbolic=symbolic)


# ---------------------------------------------------------------------------
# 子命令
# ---------------------------------------------------------------------------

def cmd_verify(args, out: Output) -> int:
    """运行验证套件，全部通过时返回 0"""
    report = run_suites(args.suite, args.max_k, work_scheduler)
    if args.format == 'json':
        out.emit({
            "suite": args.suite,
            "passed": report.passed,
            "checks": [
                {"suite": r.suite, "check": r.name, "passed": r.passed,
                 "seconds": round(r.seconds, 3), "detail": r.detail}
                for r in report.results
            ]
        }, [])
    elif args.format == 'csv':
        out.emit({}, [[("suite", "check", "status", "seconds", "detail")] + report.rows()])
    else:
        out.write_text(report.table() + "\n")
    if not report.passed:
        logger.error(f"验证失败 | 失败项: {[f'{r.suite}.{r.name}' for r in report.failed]}")
    return 0 if report.passed else 1


def cmd_moments(args, out: Output) -> int:
    """精确矩表；w_t、v_t 未给 t 时输出 t 的多项式"""
    v = _variable(args)
    moments = exact_moments(v, args.order)
    out.emit(
        {"variable": v.label,
         "moments": [{"k": k, "value": exact_text(m)} for k, m in enumerate(moments, start=1)]},
        [[("k", "value")] + [(k, exact_text(m)) for k, m in enumerate(moments, start=1)]]
    )
    return 0


def cmd_density(args, out: Output) -> int:
    """Stieltjes 反演密度"""
    v = _variable(args, allow_symbolic=False)
    grid = make_grid(*parse_grid(args.grid))
    schedule = parse_eps(args.eps) if args.eps else None
    points = stieltjes_density(v, grid, schedule, scheduler=work_scheduler)
    rows = [(f"{p.x:.10g}", f"{p.density:.12g}", str(p.converged).lower()) for p in points]
    out.emit(
        {"variable": v.label,
         "points": [{"x": p.x, "density": p.density, "converged": p.converged} for p in points]},
        [[("x", "density", "converged")] + rows]
    )
    return 0


def cmd_mc(args, out: Output) -> int:
    """蒙特卡洛经验矩与直方图，输出头部记录种子"""
    v = _variable(args, allow_symbolic=False)
    result = mc_law(v, args.samples, args.seed, max_order=args.order or 4,
                    bins=args.bins, scheduler=work_scheduler)
    moment_rows = [(k, f"{m:.12g}", f"{e:.6g}")
                   for k, (m, e) in enumerate(zip(result.moments, result.stderr), start=1)]
    histogram_rows = [(f"{result.edges[n]:.6g}", f"{result.edges[n + 1]:.6g}", c)
                      for n, c in enumerate(result.counts)]
    out.emit(
        {"variable": result.variable, "samples": result.samples, "seed": result.seed,
         "accepted": result.accepted, "rejected": result.rejected,
         "zero_fraction": result.zero_fraction,
         "moments": [{"k": k, "value": m, "stderr": e}
                     for k, (m, e) in enumerate(zip(result.moments, result.stderr), start=1)],
         "histogram": {"edges": list(result.edges), "counts": list(result.counts)}},
        [[("k", "value", "stderr")] + moment_rows, [("bin_low", "bin_high", "count")] + histogram_rows],
        comments=[f"seed={result.seed}", f"samples={result.samples}", f"variable={result.variable}",
                  f"zero_fraction={result.zero_fraction:.8g}"]
    )
    return 0


def cmd_s4(args, out: Output) -> int:
    """经典 S₄ 上 Σ t_i u_ii 的精确分布"""
    weights = [w.strip() for w in args.weights.split(",")]
    law = classical_law(weights)
    out.emit(
        {"weights": weights, "law": str(law),
         "atoms": [{"x": format_rational(x), "weight": format_rational(w)} for x, w in law.atoms]},
        [[("x", "weight")] + [(format_rational(x), format_rational(w)) for x, w in law.atoms]]
    )
    return 0


def cmd_weingarten(args, out: Output) -> int:
    """Gram 矩阵与 Weingarten 矩阵，行列按 NC(k) 规范顺序标注"""
    g = gram(args.k)
    w = weingarten_matrix(args.k)

    def as_text(matrix):
        return [[format_rational(x) for x in row] for row in matrix]

    def table(name, matrix):
        return [("matrix", "row") + g.labels] + [
            (name, label) + tuple(row) for label, row in zip(g.labels, as_text(matrix))
        ]

    out.emit(
        {"k": args.k, "labels": list(g.labels), "gram": as_text(g.entries), "weingarten": as_text(w)},
        [table("gram", g.entries), table("weingarten", w)]
    )
    return 0


def cmd_charpoly(args, out: Output) -> int:
    """模型矩阵特征多项式的精确系数"""
    v = _variable(args)
    poly = charpoly(v)
    payload = {
        "variable": v.label,
        "coefficients": [{"power": j, "value": exact_text(c)} for j, c in enumerate(poly.coefficients)],
        "zero_roots": poly.zero_roots,
        "display": str(poly),
    }
    if v.kind is VariableKind.VT:
        left, right = vt_block_factors(v)
        payload["blocks"] = [str(left), str(right)]
        payload["blocks_match"] = multiply_charpolys(left, right) == poly
    out.emit(payload, [[("power", "coefficient")] +
                       [(j, exact_text(c)) for j, c in enumerate(poly.coefficients)]])
    return 0


def cmd_partitions(args, out: Output) -> int:
    """NC(k) 列表及 Kreweras 补"""
    partitions = enumerate_nc(args.k)
    rows = [(n, str(p), len(p.blocks), str(kreweras(p))) for n, p in enumerate(partitions)]
    out.emit(
        {"k": args.k, "catalan": catalan(args.k),
         "partitions": [{"index": n, "partition": s, "blocks": b, "kreweras": c} for n, s, b, c in rows]},
        [[("index", "partition", "blocks", "kreweras")] + rows],
        comments=[f"k={args.k}", f"catalan={catalan(args.k)}"]
    )
    return 0


COMMANDS = {
    'verify': cmd_verify,
    'moments': cmd_moments,
    'density': cmd_density,
    'mc': cmd_mc,
    's4': cmd_s4,
    'weingarten': cmd_weingarten,
    'charpoly': cmd_charpoly,
    'partitions': cmd_partitions,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(description='量子置换代数 A_s(4) 的精确矩计算与验证')
    parser.add_argument('--threads', type=int, help='最大并发线程数，默认使用全部核心')
    parser.add_argument('--verbose', '-v', action='store_true', help='控制台输出 DEBUG 日志')
    parser.add_argument('--quiet', '-q', action='store_true', help='控制台只输出 WARNING 以上日志')

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--format', choices=('csv', 'json'), default='csv', help='输出格式')
    common.add_argument('--output', '-o', help='输出文件路径，默认写到标准输出')

    variable = argparse.ArgumentParser(add_help=False)
    variable.add_argument('--variable', required=True, choices=[k.value for k in VariableKind], help='变量')
    variable.add_argument('--t', help='w_t / v_t 的参数，有理数文本如 1/2')

    subparsers = parser.add_subparsers(dest='command', required=True)

    p = subparsers.add_parser('verify', parents=[common], help='运行验证套件')
    p.set_defaults(format=None)
    p.add_argument('--suite', choices=SUITES + ('all',), default='all')
    p.add_argument('--max-k', type=int, dest='max_k', help='忠实性比较的最大张量阶数')

    p = subparsers.add_parser('moments', parents=[common, variable], help='精确矩表')
    p.add_argument('--order', type=int, default=6)

    p = subparsers.add_parser('density', parents=[common, variable], help='Stieltjes 反演密度')
    p.add_argument('--grid', default='0.01:0.99:99', help='网格 a:b:n，落在 (0, 1) 内')
    p.add_argument('--eps', help='逗号分隔的 ε 序列')

    p = subparsers.add_parser('mc', parents=[common, variable], help='蒙特卡洛经验谱律')
    p.add_argument('--samples', type=int)
    p.add_argument('--seed', type=int)
    p.add_argument('--order', type=int, default=4)
    p.add_argument('--bins', type=int)

    p = subparsers.add_parser('s4', parents=[common], help='经典 S₄ 的精确分布')
    p.add_argument('--weights', required=True, help='四个逗号分隔的有理权重，和为 1')

    p = subparsers.add_parser('weingarten', parents=[common], help='Gram 与 Weingarten 矩阵')
    p.add_argument('--k', type=int, required=True)

    subparsers.add_parser('charpoly', parents=[common, variable], help='模型矩阵的特征多项式')

    p = subparsers.add_parser('partitions', parents=[common], help='非交叉划分与 Kreweras 补')
    p.add_argument('--k', type=int, required=True)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    """主程序入口"""
    parser = build_parser()
    args = parser.parse_args(argv)

    if args.verbose:
        log_manager.set_console_level("DEBUG")
    elif args.quiet:
        log_manager.set_console_level("WARNING")
    if args.threads is not None:
        if args.threads < 1:
            parser.error(f"--threads 必须为正: {args.threads}")
        work_scheduler.configure(args.threads)

    logger.debug(f"命令开始 | 子命令: {args.command} | 配置: {config.config_path or '默认'}")
    out = Output(args.format or 'table', args.output)
    try:
        return COMMANDS[args.command](args, out)
    except INPUT_ERRORS as e:
        log_manager.log_run_error(args.command, "参数", e)
        parser.print_usage(sys.stderr)
        return 2
    except PauliMomentsError as e:
        log_manager.log_run_error(args.command, "命令", e)
        return 1
    except Exception as e:
        logger.exception(f"系统运行错误: {str(e)}")
        return 1


if __name__ == "__main__":
    sys.exit(main())
