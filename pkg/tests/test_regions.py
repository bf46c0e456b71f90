"""regions 유닛 테스트"""

import unittest
from fractions import Fraction

from hypothesis import given
from hypothesis import strategies as st

from src.common.errors import DegenerateInputError, UnsupportedVariantError
from src.geometry.models import Point
from src.skeleton.models import Beta, Closure, Variant
from src.skeleton.regions import (
    CircleUnionRegion,
    HalfPlaneUnionRegion,
    LensRegion,
    LuneRegion,
    SegmentRegion,
    StripRegion,
    make_region,
    region_contains,
)

X = Point(0, 0)
Y = Point(2, 0)
coords = st.fractions(min_value=-4, max_value=4, max_denominator=64)
NESTED_BETAS = [Beta.of(0), Beta.of("1/2"), Beta.of(1), Beta.of("3/2"), Beta.of(2), Beta.of(3), Beta.infinity()]


class TestMakeRegion(unittest.TestCase):
    """make_region 함수 테스트"""

    def test_kind_by_beta(self):
        """β 범위별 영역 종류"""
        self.assertIsInstance(make_region(X, Y, Beta.of(0)), SegmentRegion)
        self.assertIsInstance(make_region(X, Y, Beta.of("1/2")), LensRegion)
        self.assertIsInstance(make_region(X, Y, Beta.of(1)), LuneRegion)
        self.assertIsInstance(make_region(X, Y, Beta.of(3)), LuneRegion)
        self.assertIsInstance(make_region(X, Y, Beta.infinity()), StripRegion)
        self.assertIsInstance(make_region(X, Y, Beta.of(2), Variant.CIRCLE), CircleUnionRegion)
        self.assertIsInstance(make_region(X, Y, Beta.infinity(), Variant.CIRCLE), HalfPlaneUnionRegion)

    def test_lune_disc_centers(self):
        """lune 원판 중심 (1 - β/2)x + (β/2)y, 반지름 βd/2"""
        region = make_region(X, Y, Beta.of(3))
        self.assertEqual(region.d1.center.key, (Fraction(3), Fraction(0)))
        self.assertEqual(region.d2.center.key, (Fraction(-1), Fraction(0)))
        self.assertEqual(region.d1.r_sq, Fraction(9))

    def test_same_point_raises(self):
        """x = y 이면 DegenerateInputError"""
        with self.assertRaises(DegenerateInputError):
            make_region(X, Point("0.0", 0), Beta.of(2))

    def test_circle_variant_below_one(self):
        """원 기반 β < 1은 UnsupportedVariantError"""
        with self.assertRaises(UnsupportedVariantError):
            make_region(X, Y, Beta.of("1/2"), Variant.CIRCLE)


class TestRegionContains(unittest.TestCase):
    """영역 멤버십 테스트 (open / closed)"""

    def assertMembership(self, region, p, open_expected, closed_expected):
        self.assertEqual(region_contains(region, p, Closure.OPEN), open_expected)
        self.assertEqual(region_contains(region, p, Closure.CLOSED), closed_expected)

    def test_segment(self):
        """β = 0: 선분 내부 / 끝점 / 선분 밖"""
        region = make_region(X, Y, Beta.of(0))
        self.assertMembership(region, Point(1, 0), True, True)
        self.assertMembership(region, X, False, True)
        self.assertMembership(region, Point(1, "0.001"), False, False)
        self.assertMembership(region, Point(3, 0), False, False)

    def test_lens(self):
        """β = 1/2: 두께 2 - sqrt(3)인 lens"""
        region = make_region(X, Y, Beta.of("1/2"))
        self.assertMembership(region, Point(1, "0.2"), True, True)
        self.assertMembership(region, Point(1, "0.3"), False, False)
        self.assertMembership(region, X, False, True)

    def test_lune_boundary(self):
        """β = 2: 경계 위의 점은 closed에서만 포함"""
        region = make_region(Point(0, 0), Point(5, 0), Beta.of(2))
        self.assertMembership(region, Point(3, 4), False, True)
        self.assertMembership(region, Point(3, 3), True, True)
        self.assertMembership(region, Point(3, 5), False, False)

    def test_diametral_disc(self):
        """β = 1: 지름 원판, 끝점은 경계"""
        region = make_region(X, Y, Beta.of(1))
        self.assertMembership(region, Point(1, 1), False, True)
        self.assertMembership(region, Point(1, "0.5"), True, True)
        self.assertMembership(region, Y, False, True)

    def test_strip(self):
        """β = ∞: 수직 띠"""
        region = make_region(X, Y, Beta.infinity())
        self.assertMembership(region, Point(1, 100), True, True)
        self.assertMembership(region, Point(0, 5), False, True)
        self.assertMembership(region, Point(-1, 0), False, False)

    def test_circle_union(self):
        """원 기반 β = 2는 lune보다 넓음"""
        circle = make_region(X, Y, Beta.of(2), Variant.CIRCLE)
        lune = make_region(X, Y, Beta.of(2))
        p = Point(1, 3)
        self.assertTrue(region_contains(circle, p))
        self.assertFalse(region_contains(lune, p))
        self.assertFalse(region_contains(circle, Point(3, 0)))

    def test_half_plane_union(self):
        """원 기반 β = ∞: 직선 xy 위의 선분 밖 점만 제외"""
        region = make_region(X, Y, Beta.infinity(), Variant.CIRCLE)
        self.assertMembership(region, Point(1, 1), True, True)
        self.assertMembership(region, Point(1, 0), True, True)
        self.assertMembership(region, Point(5, 0), False, True)

    @given(coords, coords)
    def test_circle_variant_matches_lune_at_one(self, px, py):
        """β = 1에서 두 정의는 같은 영역"""
        p = Point(px, py)
        lune = make_region(X, Y, Beta.of(1))
        circle = make_region(X, Y, Beta.of(1), Variant.CIRCLE)
        for closure in Closure:
            self.assertEqual(region_contains(lune, p, closure), region_contains(circle, p, closure))

    @given(coords, coords)
    def test_lune_regions_nested(self, px, py):
        """β1 < β2 이면 R(β1) ⊆ R(β2)"""
        p = Point(px, py)
        for closure in Closure:
            inside = [region_contains(make_region(X, Y, beta), p, closure) for beta in NESTED_BETAS]
            for smaller, larger in zip(inside, inside[1:]):
                self.assertTrue(larger or not smaller)

    @given(coords, coords)
    def test_open_inside_closed(self, px, py):
        """open 영역 ⊆ closed 영역"""
        p = Point(px, py)
        for beta in NESTED_BETAS:
            region = make_region(X, Y, beta)
            if region_contains(region, p, Closure.OPEN):
                self.assertTrue(region_contains(region, p, Closure.CLOSED))


if __name__ == "__main__":
    unittest.main()
