"""files / generator / svg / bench 보조 모듈 유닛 테스트"""

import unittest
from fractions import Fraction

from src.common.errors import InputFormatError, PreconditionError
from src.geometry.models import BBox, Point, PointSet
from src.skeleton.algorithms import brute_force
from src.skeleton.bench import format_table, reference_ratios
from src.skeleton.files import format_edges, format_points, parse_edges, parse_points
from src.skeleton.generator import circle_points, generate, grid_points, uniform_points
from src.skeleton.models import Beta
from src.skeleton.regions import make_region
from src.skeleton.svg import arc_path, region_outline, render_svg


class TestParsePoints(unittest.TestCase):
    """parse_points 함수 테스트"""

    def test_header_and_comments(self):
        """헤더, 주석, 빈 줄은 건너뜀"""
        points = parse_points("# sample\nx,y\n\n0,0\n1/3, 0.5\n# end\n")
        self.assertEqual(len(points), 2)
        self.assertEqual(points[1].x, Fraction(1, 3))
        self.assertEqual(points[1].id, 1)

    def test_no_header(self):
        self.assertEqual(len(parse_points("0,0\n1,1\n")), 2)

    def test_bad_row_has_line_number(self):
        """오류에는 줄 번호 포함"""
        with self.assertRaises(InputFormatError) as ctx:
            parse_points("x,y\n0,0\n1\n")
        self.assertEqual(ctx.exception.line, 3)

    def test_second_header_rejected(self):
        """헤더는 첫 데이터 줄에서만 허용"""
        with self.assertRaises(InputFormatError):
            parse_points("0,0\nx,y\n")

    def test_coordinate_beyond_float_range(self):
        """float로 표현할 수 없는 크기의 좌표는 형식 오류 (줄 번호 포함)"""
        with self.assertRaises(InputFormatError) as ctx:
            parse_points("x,y\n1e400,0\n0,1\n")
        self.assertEqual(ctx.exception.line, 2)

    def test_format_points(self):
        points = PointSet.from_coords([(0, "0.25"), (Fraction(1, 3), -2)])
        self.assertEqual(format_points(points), "x,y\n0,0.25\n1/3,-2\n")
        self.assertEqual([p.key for p in parse_points(format_points(points))], [p.key for p in points])


class TestEdges(unittest.TestCase):
    """간선 직렬화 테스트"""

    def test_json_and_tsv(self):
        square = PointSet.from_coords([(0, 0), (1, 0), (1, 1), (0, 1)])
        graph = brute_force(square, "inf")
        self.assertEqual(parse_edges(format_edges(graph, "json")), (4, graph.edges))
        self.assertEqual(parse_edges(format_edges(graph, "tsv")), (None, graph.edges))

    def test_tsv_normalized(self):
        """i > j 간선과 중복은 정규화"""
        self.assertEqual(parse_edges("3\t1\n1 3\n0,2\n"), (None, [(0, 2), (1, 3)]))

    def test_bad_edges(self):
        with self.assertRaises(InputFormatError):
            parse_edges("0 1 2\n")
        with self.assertRaises(InputFormatError):
            parse_edges("a b\n")
        with self.assertRaises(InputFormatError):
            parse_edges('{"edges": [[0]]}')

    def test_unknown_format(self):
        graph = brute_force(PointSet.from_coords([(0, 0), (1, 0)]), 3)
        with self.assertRaises(InputFormatError):
            format_edges(graph, "xml")


class TestGenerator(unittest.TestCase):
    """점 생성 테스트"""

    def test_uniform(self):
        """단위 정사각형 안, 중복 없음, 시드 고정"""
        points = uniform_points(300, seed=1)
        self.assertEqual(len(points), 300)
        points.check_distinct()
        self.assertTrue(all(0 <= p.x <= 1 and 0 <= p.y <= 1 for p in points))
        self.assertEqual(points.to_dict(), uniform_points(300, seed=1).to_dict())

    def test_circle(self):
        """원 위(근사) 점"""
        for p in circle_points(50, seed=2):
            radius_sq = float((p.x - Fraction(1, 2)) ** 2 + (p.y - Fraction(1, 2)) ** 2)
            self.assertAlmostEqual(radius_sq, 0.25, places=7)

    def test_grid(self):
        """k = ceil(sqrt(n)) 격자의 앞 n개"""
        points = grid_points(5)
        self.assertEqual([p.key for p in points][:3], [(0, 0), (Fraction(1, 2), 0), (1, 0)])
        self.assertEqual(points[3].key, (0, Fraction(1, 2)))
        self.assertEqual(grid_points(1)[0].key, (0, 0))

    def test_invalid(self):
        with self.assertRaises(PreconditionError):
            generate(0)
        with self.assertRaises(PreconditionError):
            generate(5, mode="spiral")


class TestSvg(unittest.TestCase):
    """SVG 렌더링 테스트"""

    def test_arc_path(self):
        """원호 path 데이터 (화면 좌표에서 y 뒤집기)"""
        d = arc_path((0.0, 0.0), 1.0, (0.0, 1.0), (1.0, 0.0), (0.0, -1.0))
        self.assertTrue(d.startswith("M 0 -1 A 1 1 0 "))
        self.assertTrue(d.endswith("0 1"))

    def test_region_outlines(self):
        """영역 종류별 윤곽 요소"""
        x, y = Point(0, 0), Point(2, 0)
        view = BBox(-5, -5, 5, 5)
        kinds = {
            "3": ["path", "path"],
            "inf": ["line", "line"],
            "1/2": ["circle", "circle"],
            "0": ["line"],
        }
        for beta, expected in kinds.items():
            with self.subTest(beta=beta):
                outline = region_outline(make_region(x, y, Beta.of(beta)), view)
                self.assertEqual([kind for kind, _ in outline], expected)

    def test_render(self):
        square = PointSet.from_coords([(0, 0), (1, 0), (1, 1), (0, 1)])
        drawing = render_svg(square, [(0, 1), (1, 2)])
        text = drawing.tostring()
        self.assertEqual(text.count("<line"), 2)
        self.assertEqual(text.count("<circle"), 4)


class TestBenchTable(unittest.TestCase):
    """format_table / reference_ratios 함수 테스트"""

    ROWS = [
        {"algorithm": "batched", "n": 100, "reps": 3, "median_s": 0.5, "ratio": None, "size_factor": None,
         "quadratic_ref": None, "expected_ref": None},
        {"algorithm": "batched", "n": 400, "reps": 3, "median_s": 4.0, "ratio": 8.0, "size_factor": 4.0,
         "quadratic_ref": 16.0, "expected_ref": 9.125042},
    ]

    def test_markdown(self):
        lines = format_table(self.ROWS).splitlines()
        self.assertEqual(len(lines), 4)
        self.assertIn("| batched | 400 | 3 | 4.000000 | 8.000 | 4.0 | 16.0 | 9.13 |", lines)

    def test_csv(self):
        lines = format_table(self.ROWS, "csv").splitlines()
        self.assertEqual(lines[0], "algorithm,n,reps,median_s,ratio,size_factor,quadratic_ref,expected_ref")
        self.assertEqual(lines[1], "batched,100,3,0.500000,,,,")

    def test_reference_ratios(self):
        """4배 크기: 이차 16, n^1.5·sqrt(log n)은 8~9"""
        quadratic, expected = reference_ratios(4000, 1000)
        self.assertEqual(quadratic, 16.0)
        self.assertTrue(8.0 < expected < 9.5)
        self.assertAlmostEqual(reference_ratios(400, 100)[1], 9.125, places=2)
        self.assertIsNone(reference_ratios(4, 1)[1])


if __name__ == "__main__":
    unittest.main()
