"""CLI 통합 테스트 (main 종료 코드와 출력 파일)"""

import io
import json
import os
import tempfile
import unittest
from contextlib import redirect_stderr, redirect_stdout

from src.skeleton.cli import (
    EXIT_INPUT,
    EXIT_MISMATCH,
    EXIT_OK,
    EXIT_UNSUPPORTED,
    main,
)
from src.skeleton.files import parse_edges, parse_points

SQUARE_CSV = "x,y\n0,0\n1,0\n1,1\n0,1\n"


class CliTestCase(unittest.TestCase):
    """임시 디렉터리 + 출력 캡처"""

    def setUp(self):
        self._tmp = tempfile.TemporaryDirectory()
        self.tmp = self._tmp.name

    def tearDown(self):
        self._tmp.cleanup()

    def path(self, name: str) -> str:
        return os.path.join(self.tmp, name)

    def write(self, name: str, text: str) -> str:
        target = self.path(name)
        with open(target, "w", encoding="utf-8") as f:
            f.write(text)
        return target

    def read(self, name: str) -> str:
        with open(self.path(name), encoding="utf-8") as f:
            return f.read()

    def run_cli(self, *argv: str):
        out, err = io.StringIO(), io.StringIO()
        with redirect_stdout(out), redirect_stderr(err):
            code = main(list(argv))
        return code, out.getvalue(), err.getvalue()


class TestGen(CliTestCase):
    """gen 명령어 테스트"""

    def test_grid(self):
        """2×2 격자"""
        code, _, _ = self.run_cli("gen", "--n", "4", "--mode", "grid", "-o", self.path("grid.csv"))
        self.assertEqual(code, EXIT_OK)
        self.assertEqual(self.read("grid.csv"), "x,y\n0,0\n1,0\n0,1\n1,1\n")

    def test_deterministic(self):
        """같은 시드 -> 같은 파일"""
        self.run_cli("gen", "--n", "50", "--seed", "7", "-o", self.path("a.csv"))
        self.run_cli("gen", "--n", "50", "--seed", "7", "-o", self.path("b.csv"))
        self.run_cli("gen", "--n", "50", "--seed", "8", "-o", self.path("c.csv"))
        self.assertEqual(self.read("a.csv"), self.read("b.csv"))
        self.assertNotEqual(self.read("a.csv"), self.read("c.csv"))
        self.assertEqual(len(parse_points(self.read("a.csv"))), 50)

    def test_stdout(self):
        code, out, _ = self.run_cli("gen", "--n", "3", "--mode", "circle")
        self.assertEqual(code, EXIT_OK)
        self.assertEqual(len(out.strip().splitlines()), 4)

    def test_invalid_n(self):
        """n < 1은 입력 오류"""
        code, _, err = self.run_cli("gen", "--n", "0")
        self.assertEqual(code, EXIT_INPUT)
        self.assertIn("--n", err)


class TestCompute(CliTestCase):
    """compute 명령어 테스트"""

    def test_square_json(self):
        """정사각형 β = ∞: 네 변"""
        points = self.write("square.csv", SQUARE_CSV)
        code, _, _ = self.run_cli("compute", "-i", points, "-b", "inf", "-o", self.path("edges.json"))
        self.assertEqual(code, EXIT_OK)
        data = json.loads(self.read("edges.json"))
        self.assertEqual(data["n"], 4)
        self.assertEqual(data["edges"], [[0, 1], [0, 3], [1, 2], [2, 3]])
        self.assertEqual(data["algorithm"], "batched")

    def test_tsv_stdout(self):
        points = self.write("square.csv", SQUARE_CSV)
        code, out, _ = self.run_cli("compute", "-i", points, "-b", "3", "--format", "tsv")
        self.assertEqual(code, EXIT_OK)
        self.assertEqual(out, "0 1\n0 3\n1 2\n2 3\n")

    def test_report(self):
        """--report: 실행 보고서"""
        points = self.write("square.csv", SQUARE_CSV)
        code, _, _ = self.run_cli(
            "compute", "-i", points, "-b", "3", "--paranoid",
            "-o", self.path("edges.json"), "--report", self.path("report.json"))
        self.assertEqual(code, EXIT_OK)
        report = json.loads(self.read("report.json"))
        self.assertEqual(report["input"]["n"], 4)
        self.assertEqual(report["edge_count"], 4)
        self.assertEqual(report["verification"], "ok")
        self.assertEqual(report["closure"], "open")

    def test_brute_force_small_beta(self):
        """β <= 2는 brute force로 계산"""
        points = self.write("square.csv", SQUARE_CSV)
        code, out, _ = self.run_cli("compute", "-i", points, "-b", "0", "--format", "tsv")
        self.assertEqual(code, EXIT_OK)
        self.assertEqual(len(out.splitlines()), 6)

    def test_batched_beta_two_unsupported(self):
        """--algo batched --beta 2는 종료 코드 3"""
        points = self.write("square.csv", SQUARE_CSV)
        code, _, err = self.run_cli("compute", "-i", points, "-b", "2", "--algo", "batched")
        self.assertEqual(code, EXIT_UNSUPPORTED)
        self.assertIn("beta > 2", err)

    def test_circle_variant_below_one_unsupported(self):
        points = self.write("square.csv", SQUARE_CSV)
        code, _, _ = self.run_cli("compute", "-i", points, "-b", "1/2", "--variant", "circle")
        self.assertEqual(code, EXIT_UNSUPPORTED)

    def test_input_errors(self):
        """형식 오류 / 중복 / 점 부족 / 잘못된 β / 없는 파일"""
        cases = {
            "bad.csv": "x,y\n0,0\n1,2,3\n",
            "dup.csv": "0,0\n1,1\n0.0,0\n",
            "one.csv": "0,0\n",
            "word.csv": "x,y\n0,0\nabc,1\n",
            "huge.csv": "x,y\n1e400,0\n0,1\n",
        }
        for name, text in cases.items():
            with self.subTest(name=name):
                code, _, err = self.run_cli("compute", "-i", self.write(name, text), "-b", "3")
                self.assertEqual(code, EXIT_INPUT)
                self.assertIn("❌", err)
        points = self.write("square.csv", SQUARE_CSV)
        self.assertEqual(self.run_cli("compute", "-i", points, "-b", "abc")[0], EXIT_INPUT)
        self.assertEqual(self.run_cli("compute", "-i", self.path("missing.csv"), "-b", "3")[0], EXIT_INPUT)

    def test_usage_error(self):
        """알 수 없는 명령어 / 필수 인자 누락"""
        self.assertEqual(self.run_cli("frobnicate")[0], EXIT_INPUT)
        self.assertEqual(self.run_cli("compute", "-b", "3")[0], EXIT_INPUT)


class TestVerify(CliTestCase):
    """verify 명령어 테스트"""

    def test_agreement(self):
        """batched / dt-filter / brute force 일치"""
        self.run_cli("gen", "--n", "40", "--seed", "3", "-o", self.path("pts.csv"))
        code, out, _ = self.run_cli("verify", "-i", self.path("pts.csv"), "-b", "3", "--closure", "closed")
        self.assertEqual(code, EXIT_OK)
        self.assertIn("batched", out)
        self.assertIn("bruteforce", out)

    def test_expect_mismatch(self):
        """--expect와 다르면 종료 코드 1과 첫 차이"""
        points = self.write("square.csv", SQUARE_CSV)
        expect = self.write("expect.tsv", "0 1\n1 2\n2 3\n")
        code, out, _ = self.run_cli("verify", "-i", points, "-b", "inf", "--expect", expect)
        self.assertEqual(code, EXIT_MISMATCH)
        self.assertIn("(0, 3)", out)

    def test_expect_match(self):
        points = self.write("square.csv", SQUARE_CSV)
        expect = self.write("expect.tsv", "0 1\n0 3\n1 2\n2 3\n")
        code, _, _ = self.run_cli("verify", "-i", points, "-b", "inf", "--expect", expect)
        self.assertEqual(code, EXIT_OK)

    def test_small_beta_uses_brute_force(self):
        points = self.write("square.csv", SQUARE_CSV)
        code, out, _ = self.run_cli("verify", "-i", points, "-b", "1")
        self.assertEqual(code, EXIT_OK)
        self.assertIn("bruteforce", out)


class TestPlot(CliTestCase):
    """plot 명령어 테스트"""

    def test_edges_and_region(self):
        """간선은 line, lune 윤곽은 원호 path 2개"""
        points = self.write("square.csv", SQUARE_CSV)
        edges = self.write("edges.tsv", "0 1\n1 2\n2 3\n")
        code, _, _ = self.run_cli(
            "plot", "-i", points, "-e", edges, "-o", self.path("out.svg"),
            "--show-region", "0", "2", "-b", "3")
        self.assertEqual(code, EXIT_OK)
        svg = self.read("out.svg")
        self.assertTrue(svg.lstrip().startswith("<?xml"))
        self.assertEqual(svg.count("<line"), 3)
        self.assertEqual(svg.count("<path"), 2)
        self.assertEqual(svg.count("<circle"), 4)

    def test_strip_region(self):
        """β = ∞ strip 윤곽은 직선 2개"""
        points = self.write("square.csv", SQUARE_CSV)
        code, _, _ = self.run_cli(
            "plot", "-i", points, "-o", self.path("strip.svg"), "--show-region", "0", "1", "-b", "inf")
        self.assertEqual(code, EXIT_OK)
        self.assertEqual(self.read("strip.svg").count("<line"), 2)

    def test_edge_index_out_of_range(self):
        points = self.write("square.csv", SQUARE_CSV)
        edges = self.write("edges.tsv", "0 9\n")
        code, _, _ = self.run_cli("plot", "-i", points, "-e", edges, "-o", self.path("x.svg"))
        self.assertEqual(code, EXIT_INPUT)

    def test_compute_output_roundtrip(self):
        """compute JSON 출력을 그대로 plot 입력으로 사용"""
        points = self.write("square.csv", SQUARE_CSV)
        self.run_cli("compute", "-i", points, "-b", "3", "-o", self.path("edges.json"))
        n, edges = parse_edges(self.read("edges.json"))
        self.assertEqual((n, len(edges)), (4, 4))
        code, _, _ = self.run_cli("plot", "-i", points, "-e", self.path("edges.json"), "-o", self.path("sq.svg"))
        self.assertEqual(code, EXIT_OK)
        self.assertEqual(self.read("sq.svg").count("<line"), 4)


class TestBench(CliTestCase):
    """bench 명령어 테스트"""

    def test_markdown_table(self):
        code, _, _ = self.run_cli(
            "bench", "--sizes", "8", "16", "--reps", "1", "--algos", "batched", "dt-filter",
            "-o", self.path("bench.md"))
        self.assertEqual(code, EXIT_OK)
        lines = self.read("bench.md").strip().splitlines()
        self.assertEqual(len(lines), 2 + 4)
        self.assertTrue(lines[0].startswith("| algorithm"))

    def test_invalid_sizes(self):
        code, _, _ = self.run_cli("bench", "--sizes", "1", "--reps", "1")
        self.assertEqual(code, EXIT_INPUT)


if __name__ == "__main__":
    unittest.main()
