"""delaunay 유닛 테스트"""

import unittest

from hypothesis import given, settings
from hypothesis import strategies as st

from src.common.errors import DuplicateInputError, TooFewPointsError
from src.geometry.models import PointSet
from src.skeleton.delaunay import Triangulation, edges, triangulate, validate
from src.skeleton.generator import grid_points, uniform_points

point_sets = st.sets(
    st.tuples(st.integers(min_value=-20, max_value=20), st.integers(min_value=-20, max_value=20)),
    min_size=3,
    max_size=30,
)


class TestTriangulate(unittest.TestCase):
    """triangulate 함수 테스트"""

    def test_single_triangle(self):
        """점 3개: 간선 3개"""
        t = triangulate(PointSet.from_coords([(0, 0), (1, 0), (0, 1)]))
        self.assertEqual(t.edges, [(0, 1), (0, 2), (1, 2)])
        self.assertEqual(len(t.triangles), 1)
        self.assertTrue(validate(t))

    def test_square_with_center(self):
        """정사각형 + 중심: 삼각형 4개, 간선 8개"""
        t = triangulate(PointSet.from_coords([(0, 0), (2, 0), (2, 2), (0, 2), (1, 1)]))
        self.assertEqual(len(t.triangles), 4)
        self.assertEqual(len(t.edges), 8)
        self.assertTrue(validate(t))

    def test_cocircular_square(self):
        """공원 정사각형: 대각선은 하나만"""
        t = triangulate(PointSet.from_coords([(0, 0), (1, 0), (1, 1), (0, 1)]))
        self.assertEqual(len(t.edges), 5)
        self.assertTrue(validate(t))

    def test_kite_diagonal(self):
        """짧은 대각선이 Delaunay 간선"""
        t = triangulate(PointSet.from_coords([(0, 0), (2, -1), (4, 0), (2, 1)]))
        self.assertIn((1, 3), t.edges)
        self.assertNotIn((0, 2), t.edges)

    def test_collinear_chain(self):
        """모든 점이 한 직선 위: 정렬 순서의 경로"""
        t = triangulate(PointSet.from_coords([(3, 3), (0, 0), (2, 2), (1, 1)]))
        self.assertTrue(t.collinear)
        self.assertEqual(t.triangles, [])
        self.assertEqual(t.edges, [(0, 2), (1, 3), (2, 3)])
        self.assertTrue(validate(t))

    def test_two_points(self):
        t = triangulate(PointSet.from_coords([(0, 0), (1, 5)]))
        self.assertEqual(t.edges, [(0, 1)])

    def test_too_few_points(self):
        """점 1개는 TooFewPointsError"""
        with self.assertRaises(TooFewPointsError):
            triangulate(PointSet.from_coords([(0, 0)]))

    def test_duplicates(self):
        """중복 좌표는 DuplicateInputError"""
        with self.assertRaises(DuplicateInputError):
            triangulate(PointSet.from_coords([(0, 0), (1, 0), (0, 1), ("1.0", "0")]))

    def test_deterministic_with_seed(self):
        """같은 시드 -> 같은 결과"""
        points = grid_points(25)
        self.assertEqual(triangulate(points, seed=4).to_dict(), triangulate(points, seed=4).to_dict())

    def test_unique_dt_independent_of_seed(self):
        """일반 위치 입력이면 시드와 무관하게 같은 간선"""
        points = uniform_points(200, seed=1)
        first = triangulate(points, seed=1)
        second = triangulate(points, seed=2)
        self.assertEqual(first.edges, second.edges)
        self.assertTrue(validate(first))
        self.assertLessEqual(len(first.edges), 3 * len(points) - 6)

    def test_grid_is_valid(self):
        """퇴화(공원) 격자 입력도 유효한 Delaunay 삼각분할"""
        t = triangulate(grid_points(49), seed=3)
        self.assertTrue(validate(t))

    @settings(max_examples=60, deadline=None)
    @given(point_sets, st.integers(min_value=0, max_value=1000))
    def test_random_sets_are_valid(self, coords, seed):
        """임의의 정수 점 집합 (공선 / 공원 포함)"""
        t = triangulate(PointSet.from_coords(sorted(coords)), seed=seed)
        self.assertTrue(validate(t))


class TestValidate(unittest.TestCase):
    """validate 함수 테스트"""

    def test_flipped_diagonal_fails(self):
        """빈 외접원 조건을 어기는 대각선"""
        points = PointSet.from_coords([(0, 0), (2, -1), (4, 0), (2, 1)])
        flipped = Triangulation(
            points=points,
            triangles=[(0, 1, 2), (0, 2, 3)],
            edges=[(0, 1), (0, 2), (0, 3), (1, 2), (2, 3)],
        )
        self.assertFalse(validate(flipped))

    def test_missing_point_fails(self):
        """사용되지 않은 점이 있으면 실패"""
        points = PointSet.from_coords([(0, 0), (4, 0), (0, 4), (1, 1)])
        partial = Triangulation(points=points, triangles=[(0, 1, 2)], edges=[(0, 1), (0, 2), (1, 2)])
        self.assertFalse(validate(partial))

    def test_edges_helper(self):
        """edges()는 정렬된 (i < j) 목록"""
        t = Triangulation(points=PointSet.from_coords([(0, 0), (1, 0)]), edges=[(1, 0)])
        self.assertEqual(edges(t), [(0, 1)])


if __name__ == "__main__":
    unittest.main()
