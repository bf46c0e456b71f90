"""algorithms (brute_force, dt_filter, batched, compute) 유닛 테스트"""

import unittest
from unittest.mock import patch

import numpy as np
from hypothesis import given, settings
from hypothesis import strategies as st

from src.common.errors import (
    DuplicateInputError,
    PreconditionError,
    SubdivisionError,
    TooFewPointsError,
    UnsupportedRangeError,
)
from src.geometry.models import PointSet
from src.skeleton.algorithms import (
    batched,
    brute_force,
    choose_group_size,
    compute,
    dt_filter,
    gabriel_graph,
    process_group,
    relative_neighborhood_graph,
)
from src.skeleton.delaunay import triangulate
from src.skeleton.generator import circle_points, grid_points, uniform_points
from src.skeleton.models import AlgoConfig, Algorithm, Beta, Closure, Variant

SQUARE = PointSet.from_coords([(0, 0), (1, 0), (1, 1), (0, 1)])
# 정삼각형 근사 (1.732 < sqrt(3))
TRIANGLE = PointSet.from_coords([(0, 0), (2, 0), (1, "1.732")])
COLLINEAR = PointSet.from_coords([(4, 0), (0, 0), (2, 0), (1, 0), (3, 0)])
# β = ∞에서 strip 경계선이 bbox 변 근처에서 끝나는 입력
SIX_POINTS = PointSet.from_coords([
    ("0.1", "0.1"), ("0.9", "0.15"), ("0.5", "0.8"), ("0.3", "0.4"), ("0.7", "0.45"), ("0.55", "0.2"),
])

int_point_sets = st.sets(
    st.tuples(st.integers(min_value=0, max_value=12), st.integers(min_value=0, max_value=12)),
    min_size=2,
    max_size=25,
)


class TestBruteForce(unittest.TestCase):
    """brute_force 함수 테스트"""

    def test_square_strip(self):
        """정사각형, β = ∞: 네 변만 남음"""
        self.assertEqual(brute_force(SQUARE, "inf").edges, [(0, 1), (0, 3), (1, 2), (2, 3)])

    def test_triangle_blocked(self):
        """정삼각형, β = 3: 모든 간선이 막힘"""
        self.assertEqual(brute_force(TRIANGLE, 3).edges, [])

    def test_two_points(self):
        """점 2개는 항상 간선 1개"""
        points = PointSet.from_coords([(0, 0), (3, 1)])
        for beta in ("0", "1/2", "2", "inf"):
            self.assertEqual(brute_force(points, beta).edges, [(0, 1)])

    def test_segment_skeleton_is_complete_in_general_position(self):
        """β = 0: 세 점이 공선이 아니면 완전 그래프"""
        self.assertEqual(len(brute_force(SQUARE, 0).edges), 6)

    def test_circle_variant(self):
        """원 기반 영역은 lune 이상으로 넓어서 간선이 더 적거나 같음"""
        points = uniform_points(25, seed=5)
        lune = brute_force(points, 3, Variant.LUNE).edge_set
        circle = brute_force(points, 3, Variant.CIRCLE).edge_set
        self.assertLessEqual(circle, lune)

    def test_errors(self):
        """점 부족 / 중복"""
        with self.assertRaises(TooFewPointsError):
            brute_force(PointSet.from_coords([(0, 0)]), 2)
        with self.assertRaises(DuplicateInputError):
            brute_force(PointSet.from_coords([(0, 0), (0, 0)]), 2)


class TestNamedSkeletons(unittest.TestCase):
    """Gabriel graph / relative neighborhood graph 테스트"""

    def test_gabriel_square_with_center(self):
        """중심점이 변의 지름 원 위에 있으므로 닫힌 정의에서 변이 제거됨"""
        points = PointSet.from_coords([(0, 0), (2, 0), (2, 2), (0, 2), (1, 1)])
        self.assertEqual(gabriel_graph(points).edges, [(0, 4), (1, 4), (2, 4), (3, 4)])

    def test_match_brute_force(self):
        """DT 필터링 결과는 정의와 같음"""
        points = uniform_points(40, seed=2)
        self.assertEqual(gabriel_graph(points).edges, brute_force(points, 1, closure=Closure.CLOSED).edges)
        self.assertEqual(relative_neighborhood_graph(points).edges, brute_force(points, 2).edges)

    def test_rng_square(self):
        """정사각형 RNG: 대각선은 막히고 네 변은 남음"""
        self.assertEqual(relative_neighborhood_graph(SQUARE).edges, [(0, 1), (0, 3), (1, 2), (2, 3)])


class TestChooseGroupSize(unittest.TestCase):
    """choose_group_size 함수 테스트"""

    def test_values(self):
        self.assertEqual(choose_group_size(1024), 102)
        self.assertEqual(choose_group_size(2), 2)
        self.assertEqual(choose_group_size(1), 1)

    def test_monotone(self):
        sizes = [choose_group_size(n) for n in range(1, 500)]
        self.assertEqual(sizes, sorted(sizes))


class TestBatched(unittest.TestCase):
    """batched / dt_filter 테스트"""

    def test_small_examples(self):
        """정사각형 / 삼각형 / 점 2개"""
        self.assertEqual(batched(SQUARE, "inf").edges, [(0, 1), (0, 3), (1, 2), (2, 3)])
        self.assertEqual(batched(SQUARE, "2.1").edges, [(0, 1), (0, 3), (1, 2), (2, 3)])
        self.assertEqual(batched(TRIANGLE, 3).edges, [])
        self.assertEqual(batched(PointSet.from_coords([(0, 0), (3, 1)]), 3).edges, [(0, 1)])

    def test_collinear_input(self):
        """공선 점 5개, β = 3: 경로 간선 4개"""
        graph = batched(COLLINEAR, 3)
        self.assertEqual(graph.edges, [(0, 4), (1, 3), (2, 3), (2, 4)])
        self.assertTrue(graph.stats.degenerate_input)
        self.assertEqual(graph.edges, brute_force(COLLINEAR, 3).edges)

    def test_matches_dt_filter_and_brute_force(self):
        """세 알고리즘의 결과 일치 (open / closed)"""
        points = uniform_points(60, seed=11)
        for beta in ("5/2", "3", "inf"):
            for closure in Closure:
                with self.subTest(beta=beta, closure=closure):
                    expected = brute_force(points, beta, closure=closure).edges
                    self.assertEqual(dt_filter(points, beta, closure).edges, expected)
                    self.assertEqual(batched(points, beta, closure).edges, expected)

    def test_degenerate_inputs(self):
        """격자 / 원 위의 점: 경계 위의 점이 많은 입력"""
        for points in (grid_points(36), circle_points(30, seed=4)):
            for closure in Closure:
                with self.subTest(n=len(points), closure=closure):
                    expected = brute_force(points, 3, closure=closure).edges
                    self.assertEqual(batched(points, 3, closure).edges, expected)

    def test_group_size_independence(self):
        """그룹 크기와 무관하게 같은 결과"""
        points = uniform_points(80, seed=21)
        reference = batched(points, 3).edges
        for m in (1, 7, 500):
            graph = batched(points, 3, cfg=AlgoConfig(group_size_override=m))
            self.assertEqual(graph.edges, reference)
            self.assertEqual(graph.stats.m, m)

    def test_strips_ending_on_bbox_edges(self):
        """β = ∞: 기울어진 strip 경계선이 bbox 변에서 끝나도 fallback 없이 dt-filter와 일치"""
        cases = [(SIX_POINTS, 1), (SIX_POINTS, None), (uniform_points(39, seed=123), None),
                 (uniform_points(39, seed=123), 3), (uniform_points(40, seed=123), None)]
        for points, m in cases:
            for closure in Closure:
                with self.subTest(n=len(points), m=m, closure=closure):
                    graph = batched(points, "inf", closure, AlgoConfig(group_size_override=m))
                    self.assertEqual(graph.edges, dt_filter(points, "inf", closure).edges)
                    self.assertEqual(graph.stats.fallback_groups, 0)
        self.assertEqual(batched(SIX_POINTS, "inf", cfg=AlgoConfig(group_size_override=1)).edges, [])

    def test_small_integer_coordinates(self):
        """[0, 6)² 정수 좌표 / 격자, β = 21/10: 분할 실패(fallback) 없음"""
        rng = np.random.default_rng(17)
        inputs = [grid_points(16), grid_points(36)]
        for _ in range(6):
            coords = {tuple(pair) for pair in rng.integers(0, 6, (14, 2)).tolist()}
            inputs.append(PointSet.from_coords(sorted(coords)))
        for points in inputs:
            for closure in Closure:
                with self.subTest(n=len(points), closure=closure):
                    graph = batched(points, "21/10", closure, AlgoConfig(debug_invariants=True))
                    self.assertEqual(graph.edges, dt_filter(points, "21/10", closure).edges)
                    self.assertEqual(graph.stats.fallback_groups, 0)

    def test_stats(self):
        """통계: 그룹 수, 후보 간선 수, 단계별 시간"""
        points = uniform_points(50, seed=3)
        graph = batched(points, 3, cfg=AlgoConfig(group_size_override=10, paranoid_verify=True))
        stats = graph.stats
        self.assertEqual(stats.candidate_edges, len(triangulate(points, seed=42).edges))
        self.assertEqual(stats.group_count, -(-stats.candidate_edges // 10))
        self.assertEqual(stats.fallback_groups, 0)
        self.assertIn("dt", stats.timings)
        self.assertIn("verify", stats.timings)

    def test_parallel_groups(self):
        """병렬 처리 결과는 순차 처리와 같음"""
        points = uniform_points(60, seed=9)
        cfg = AlgoConfig(group_size_override=20, parallel_groups=True, workers=2)
        self.assertEqual(batched(points, 3, cfg=cfg).edges, batched(points, 3).edges)

    def test_invariant_checking(self):
        """순회 상태 불변식 검사 모드"""
        points = uniform_points(30, seed=6)
        cfg = AlgoConfig(group_size_override=15, debug_invariants=True)
        self.assertEqual(batched(points, 4, cfg=cfg).edges, dt_filter(points, 4).edges)

    def test_progress_callback(self):
        messages = []
        batched(uniform_points(20, seed=1), 3, progress=messages.append)
        self.assertTrue(any("DT" in message for message in messages))

    def test_beta_nesting(self):
        """β1 < β2 이면 skeleton(β2) ⊆ skeleton(β1)"""
        points = uniform_points(70, seed=13)
        graphs = [batched(points, beta).edge_set for beta in ("2.01", "3", "7", "inf")]
        for larger, smaller in zip(graphs, graphs[1:]):
            self.assertLessEqual(smaller, larger)

    def test_closure_sandwich(self):
        """닫힌 skeleton ⊆ 열린 skeleton"""
        points = grid_points(25)
        for beta in ("3", "inf"):
            closed = batched(points, beta, Closure.CLOSED).edge_set
            opened = batched(points, beta, Closure.OPEN).edge_set
            self.assertLessEqual(closed, opened)

    def test_beta_at_most_two_unsupported(self):
        """β <= 2는 UnsupportedRangeError"""
        for beta in ("2", "1", "0"):
            with self.assertRaises(UnsupportedRangeError):
                batched(SQUARE, beta)
            with self.assertRaises(UnsupportedRangeError):
                dt_filter(SQUARE, beta)

    @settings(max_examples=25, deadline=None)
    @given(int_point_sets)
    def test_random_integer_sets(self, coords):
        """작은 정수 격자 위의 임의 점 집합 (공선 / 공원 포함)"""
        points = PointSet.from_coords(sorted(coords))
        for closure in Closure:
            graph = batched(points, "5/2", closure, AlgoConfig(group_size_override=5))
            self.assertEqual(graph.edges, brute_force(points, "5/2", closure=closure).edges)
            self.assertEqual(graph.stats.fallback_groups, 0)


class TestCompute(unittest.TestCase):
    """compute 함수 테스트"""

    def test_auto_selection(self):
        """auto: β > 2면 batched, 아니면 brute_force"""
        self.assertEqual(compute(SQUARE, 3).stats.algorithm, Algorithm.BATCHED.value)
        self.assertEqual(compute(SQUARE, 2).stats.algorithm, Algorithm.BRUTE_FORCE.value)
        self.assertEqual(
            compute(SQUARE, 3, variant=Variant.CIRCLE).stats.algorithm, Algorithm.BRUTE_FORCE.value)

    def test_explicit_algorithm(self):
        graph = compute(SQUARE, Beta.infinity(), algorithm=Algorithm.DT_FILTER)
        self.assertEqual(graph.stats.algorithm, Algorithm.DT_FILTER.value)
        self.assertEqual(len(graph.edges), 4)

    def test_circle_variant_with_dt_filter(self):
        """원 기반 + dt-filter는 지원하지 않음"""
        with self.assertRaises(UnsupportedRangeError):
            compute(SQUARE, 3, algorithm=Algorithm.DT_FILTER, variant=Variant.CIRCLE)

    def test_batched_beta_two(self):
        with self.assertRaises(UnsupportedRangeError):
            compute(SQUARE, 2, algorithm=Algorithm.BATCHED)


class TestProcessGroup(unittest.TestCase):
    """process_group 오류 처리 테스트"""

    def setUp(self):
        self.points = uniform_points(12, seed=4).points
        self.group = triangulate(PointSet(self.points), seed=42).edges
        self.beta = Beta.of(3)
        self.expected = process_group(self.points, self.group, self.beta, Closure.OPEN).survivors

    def test_regular_group(self):
        result = process_group(self.points, self.group, self.beta, Closure.OPEN)
        self.assertFalse(result.fallback)
        self.assertFalse(result.precondition_failed)

    @patch("src.skeleton.algorithms.boundary_curves")
    def test_precondition_error_is_logged_as_error(self, mock_curves):
        """전제 조건 위반은 error 로그를 남기고 직접 검사로 정확한 결과 반환"""
        mock_curves.side_effect = PreconditionError("bbox가 lune을 엄격히 포함하지 않습니다")
        with self.assertLogs("src.skeleton.algorithms", level="ERROR") as logs:
            result = process_group(self.points, self.group, self.beta, Closure.OPEN)
        self.assertTrue(result.fallback)
        self.assertTrue(result.precondition_failed)
        self.assertEqual(result.survivors, self.expected)
        self.assertTrue(any("전제 조건" in line for line in logs.output))

    @patch("src.skeleton.algorithms.dual_traverse_mark")
    def test_subdivision_error_is_warning(self, mock_traverse):
        """분할 불일치는 warning 수준 fallback"""
        mock_traverse.side_effect = SubdivisionError("순회 상태 불일치")
        with self.assertLogs("src.skeleton.algorithms", level="WARNING") as logs:
            result = process_group(self.points, self.group, self.beta, Closure.OPEN)
        self.assertTrue(result.fallback)
        self.assertFalse(result.precondition_failed)
        self.assertTrue(all(line.startswith("WARNING") for line in logs.output))

    @patch("src.skeleton.algorithms.boundary_curves")
    def test_precondition_groups_counted(self, mock_curves):
        mock_curves.side_effect = PreconditionError("bbox")
        points = PointSet(self.points)
        with self.assertLogs("src.skeleton.algorithms", level="ERROR"):
            graph = batched(points, 3)
        self.assertEqual(graph.stats.precondition_groups, graph.stats.group_count)
        self.assertEqual(graph.edges, dt_filter(points, 3).edges)


if __name__ == "__main__":
    unittest.main()
