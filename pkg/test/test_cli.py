#!/usr/bin/env python3
"""
测试命令行：子命令输出格式、退出码与参数错误
"""

import sys
import csv
import json
import tempfile
from pathlib import Path

# 添加项目根目录到Python路径
sys.path.insert(0, str(Path(__file__).resolve().parent.parent))

from main import build_parser, main


def _run(*argv: str):
    """运行子命令并把结果写到临时文件，返回 (退出码, 文本)"""
    with tempfile.TemporaryDirectory() as tmp:
        path = Path(tmp) / "out.txt"
        code = main(list(argv) + ["--output", str(path)])
        text = path.read_text(encoding="utf-8") if path.exists() else ""
    return code, text


def _usage_error(*argv: str) -> int:
    try:
        main(list(argv))
    except SystemExit as e:
        return e.code
    return 0


def test_moments_csv():
    """moments 输出 k,value 表，值为 n/d 文本"""
    code, text = _run("moments", "--variable", "m2", "--order", "3")
    assert code == 0
    rows = list(csv.reader(text.splitlines()))
    assert rows == [["k", "value"], ["1", "1/4"], ["2", "1/6"], ["3", "1/8"]]


def test_moments_json_symbolic():
    """w_t 不给 t 时输出 t 的多项式，JSON 带 schema 字段"""
    code, text = _run("moments", "--variable", "wt", "--order", "2", "--format", "json")
    assert code == 0
    body = json.loads(text)
    assert body["schema"] == "1"
    assert body["variable"] == "wt"
    assert body["moments"][0] == {"k": 1, "value": "1/4"}
    assert "t" in body["moments"][1]["value"]


def test_n3_table():
    """n3 的前九阶矩"""
    code, text = _run("moments", "--variable", "n3", "--order", "9")
    assert code == 0
    values = [row[1] for row in csv.reader(text.splitlines())][1:]
    assert values == ["3/4", "5/4", "5/2", "109/20", "25/2", "4157/140", "1449/20", "75877/420", "64223/140"]


def test_s4():
    """s4 --weights 1,0,0,0 给出 (18δ₀ + 6δ₁)/24"""
    code, text = _run("s4", "--weights", "1,0,0,0", "--format", "json")
    assert code == 0
    body = json.loads(text)
    assert body["law"] == "(18δ_0 + 6δ_1)/24"
    assert body["atoms"] == [{"x": "0/1", "weight": "3/4"}, {"x": "1/1", "weight": "1/4"}]
    code, _ = _run("s4", "--weights", "1,1,0,0")
    assert code == 2


def test_weingarten_and_partitions():
    """Gram/Weingarten 矩阵与 NC(k) 列表"""
    code, text = _run("weingarten", "--k", "2", "--format", "json")
    assert code == 0
    body = json.loads(text)
    assert body["labels"] == ["{1}{2}", "{1,2}"]
    assert body["gram"] == [["16/1", "4/1"], ["4/1", "4/1"]]
    assert body["weingarten"][0] == ["1/12", "-1/12"]

    code, text = _run("partitions", "--k", "3")
    assert code == 0
    lines = text.splitlines()
    assert lines[:2] == ["# k=3", "# catalan=5"]
    rows = list(csv.reader(lines[2:]))
    assert rows[0] == ["index", "partition", "blocks", "kreweras"]
    assert len(rows) == 6
    assert rows[1][1:] == ["{1}{2}{3}", "3", "{1,2,3}"]


def test_charpoly_vt():
    """v_t 的特征多项式等于两个块之积"""
    code, text = _run("charpoly", "--variable", "vt", "--t", "1/2", "--format", "json")
    assert code == 0
    body = json.loads(text)
    assert body["blocks_match"] is True
    assert body["zero_roots"] == 0
    assert body["coefficients"][4]["value"] == "1/1"


def test_mc_header():
    """mc 输出头部记录种子与样本数"""
    code, text = _run("mc", "--variable", "m4", "--samples", "2000", "--seed", "3", "--bins", "10")
    assert code == 0
    lines = text.splitlines()
    assert lines[0] == "# seed=3" and lines[1] == "# samples=2000"
    assert lines[4] == "k,value,stderr"


def test_verify_identities():
    """verify 单个套件，全部通过时退出码为 0"""
    code, text = _run("verify", "--suite", "identities", "--format", "json")
    assert code == 0
    body = json.loads(text)
    assert body["passed"] is True
    assert all(check["suite"] == "identities" for check in body["checks"])


def test_usage_errors():
    """参数错误退出码为 2，计算失败为 1"""
    assert _usage_error("s4") == 2
    assert _usage_error("moments", "--variable", "x9") == 2
    assert _usage_error("--threads", "0", "partitions", "--k", "2") == 2
    bad_flags = [
        ("moments", "--variable", "m1", "--t", "1/2"),
        ("moments", "--variable", "m2", "--order", "99"),
        ("moments", "--variable", "m2", "--order", "-1"),
        ("moments", "--variable", "wt", "--t", "1/0"),
        ("density", "--variable", "m4", "--grid", "0:2:3"),
        ("density", "--variable", "m4", "--eps", "1e-2,abc"),
        ("weingarten", "--k", "0"),
        ("weingarten", "--k", "9"),
        ("mc", "--variable", "m4", "--samples", "-5"),
        ("mc", "--variable", "wt", "--samples", "100"),
        ("verify", "--max-k", "0"),
    ]
    for argv in bad_flags:
        code, _ = _run(*argv)
        assert code == 2, argv
    code, _ = _run("density", "--variable", "n3")
    assert code == 1
    assert build_parser().parse_args(["verify"]).format is None


if __name__ == "__main__":
    tests = [
        test_moments_csv, test_moments_json_symbolic, test_n3_table, test_s4, test_weingarten_and_partitions,
        test_charpoly_vt, test_mc_header, test_verify_identities, test_usage_errors
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
