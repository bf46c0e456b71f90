"""금지 영역 R(x, y, β) 구성과 멤버십 판정

모든 판정은 유리수로 정확하게 수행합니다. open/closed는 영역의 속성이 아니라
멤버십 질의의 파라미터입니다.
"""

import logging
from abc import ABC, abstractmethod
from dataclasses import dataclass
from fractions import Fraction
from typing import Tuple

from ..common.errors import DegenerateInputError, UnsupportedVariantError
from ..geometry.models import BBox, Circle, Point
from ..geometry.predicates import orient2d, side_of_circle
from .models import Beta, Closure, Variant

logger = logging.getLogger(__name__)

FloatCircle = Tuple[float, float, float]  # (cx, cy, r)


def _chord_terms(x: Point, y: Point, p: Point) -> Tuple[Fraction, Fraction]:
    """A = |p - m|^2 - d^2/4, B = (p - m) . perp(y - x)  (m: 중점)"""
    mx = (x.x + y.x) / 2
    my = (x.y + y.y) / 2
    ux, uy = p.x - mx, p.y - my
    d_sq = x.dist_sq(y)
    a_term = ux * ux + uy * uy - d_sq / 4
    b_term = -ux * (y.y - x.y) + uy * (y.x - x.x)
    return a_term, b_term


def _projection(x: Point, y: Point, p: Point) -> Fraction:
    """(p - x) . (y - x)"""
    return (p.x - x.x) * (y.x - x.x) + (p.y - x.y) * (y.y - x.y)


class Region(ABC):
    """R(x, y, β) 공통 인터페이스"""

    x: Point
    y: Point

    @property
    @abstractmethod
    def kind(self) -> str:
        ...

    @abstractmethod
    def contains(self, p: Point, closure: Closure) -> bool:
        """p가 open/closed 영역에 속하는지 (정확 판정)"""

    @property
    def d_sq(self) -> Fraction:
        return self.x.dist_sq(self.y)


@dataclass(frozen=True)
class SegmentRegion(Region):
    """β = 0: 선분 xy"""
    x: Point
    y: Point

    @property
    def kind(self) -> str:
        return "segment"

    def contains(self, p: Point, closure: Closure) -> bool:
        if orient2d(self.x, self.y, p) != 0:
            return False
        t = _projection(self.x, self.y, p)
        if closure == Closure.CLOSED:
            return 0 <= t <= self.d_sq
        return 0 < t < self.d_sq


@dataclass(frozen=True)
class LensRegion(Region):
    """0 < β < 1: 경계가 x, y를 지나는 반지름 d/(2β) 두 원의 교집합

    원 중심이 일반적으로 무리수이므로 현(x, y)과 tau = (1/β² - 1)/4로 보관합니다.
    """
    x: Point
    y: Point
    tau: Fraction

    @property
    def kind(self) -> str:
        return "lens"

    def contains(self, p: Point, closure: Closure) -> bool:
        a_term, b_term = _chord_terms(self.x, self.y, p)
        rhs = 4 * self.tau * b_term * b_term
        if closure == Closure.CLOSED:
            return a_term <= 0 and a_term * a_term >= rhs
        return a_term < 0 and a_term * a_term > rhs

    def float_circles(self) -> Tuple[FloatCircle, FloatCircle]:
        return _offset_circles(self.x, self.y, self.tau)


@dataclass(frozen=True)
class LuneRegion(Region):
    """lune 기반 1 <= β < ∞: 두 원판의 교집합"""
    x: Point
    y: Point
    d1: Circle  # 중심 (1 - β/2)x + (β/2)y
    d2: Circle  # 중심 (β/2)x + (1 - β/2)y

    @property
    def kind(self) -> str:
        return "lune"

    def contains(self, p: Point, closure: Closure) -> bool:
        s1 = side_of_circle(p, self.d1)
        if closure == Closure.CLOSED:
            return s1 >= 0 and side_of_circle(p, self.d2) >= 0
        return s1 > 0 and side_of_circle(p, self.d2) > 0

    def float_bbox(self) -> Tuple[float, float, float, float]:
        """두 원판 bbox의 교집합 (lune을 포함)"""
        r = self.d1.radius
        c1, c2 = self.d1.center, self.d2.center
        return (
            max(c1.fx, c2.fx) - r,
            max(c1.fy, c2.fy) - r,
            min(c1.fx, c2.fx) + r,
            min(c1.fy, c2.fy) + r,
        )


@dataclass(frozen=True)
class StripRegion(Region):
    """lune 기반 β = ∞: x, y를 지나고 xy에 수직인 두 직선 사이의 띠"""
    x: Point
    y: Point

    @property
    def kind(self) -> str:
        return "strip"

    def contains(self, p: Point, closure: Closure) -> bool:
        t = _projection(self.x, self.y, p)
        if closure == Closure.CLOSED:
            return 0 <= t <= self.d_sq
        return 0 < t < self.d_sq


@dataclass(frozen=True)
class CircleUnionRegion(Region):
    """원 기반 1 <= β < ∞: xy를 현으로 하는 지름 βd 두 원판의 합집합"""
    x: Point
    y: Point
    tau: Fraction  # (β² - 1)/4

    @property
    def kind(self) -> str:
        return "circle-union"

    def contains(self, p: Point, closure: Closure) -> bool:
        a_term, b_term = _chord_terms(self.x, self.y, p)
        rhs = 4 * self.tau * b_term * b_term
        if closure == Closure.CLOSED:
            return a_term <= 0 or a_term * a_term <= rhs
        return a_term < 0 or a_term * a_term < rhs

    def float_circles(self) -> Tuple[FloatCircle, FloatCircle]:
        return _offset_circles(self.x, self.y, self.tau)


@dataclass(frozen=True)
class HalfPlaneUnionRegion(Region):
    """원 기반 β = ∞: 직선 xy를 경계로 하는 두 열린 반평면 (+ 열린 선분 xy)"""
    x: Point
    y: Point

    @property
    def kind(self) -> str:
        return "half-plane-union"

    def contains(self, p: Point, closure: Closure) -> bool:
        if closure == Closure.CLOSED:
            return True
        if orient2d(self.x, self.y, p) != 0:
            return True
        t = _projection(self.x, self.y, p)
        return 0 < t < self.d_sq


def _offset_circles(x: Point, y: Point, tau: Fraction) -> Tuple[FloatCircle, FloatCircle]:
    """중점에서 sqrt(tau)·perp(y - x)만큼 떨어진 두 원 (float, 그리기용)"""
    mx, my = (x.fx + y.fx) / 2, (x.fy + y.fy) / 2
    wx, wy = -(y.fy - x.fy), y.fx - x.fx
    t = float(tau) ** 0.5
    d_sq = (y.fx - x.fx) ** 2 + (y.fy - x.fy) ** 2
    r = (d_sq / 4 + float(tau) * d_sq) ** 0.5
    return (mx + t * wx, my + t * wy, r), (mx - t * wx, my - t * wy, r)


def lune_circles(x: Point, y: Point, beta: Fraction) -> Tuple[Circle, Circle]:
    """lune 정의의 두 원판 (정확한 유리수 중심/제곱 반지름)"""
    half = beta / 2
    c1 = Point((1 - half) * x.x + half * y.x, (1 - half) * x.y + half * y.y)
    c2 = Point(half * x.x + (1 - half) * y.x, half * x.y + (1 - half) * y.y)
    r_sq = beta * beta * x.dist_sq(y) / 4
    return Circle(c1, r_sq), Circle(c2, r_sq)


def make_region(x: Point, y: Point, beta: Beta, variant: Variant = Variant.LUNE) -> Region:
    """
    R(x, y, β) 생성

    Args:
        x, y: 서로 다른 두 점
        beta: β 파라미터
        variant: lune 기반 / 원 기반

    Returns:
        Region

    Raises:
        DegenerateInputError: x = y
        UnsupportedVariantError: 원 기반인데 β < 1

    Example:
        >>> make_region(Point(0, 0), Point(2, 0), Beta.of(3)).d1.center
        Point(x=Fraction(3, 1), y=Fraction(0, 1), id=None)
    """
    beta = Beta.of(beta)
    variant = Variant(variant)
    if x.key == y.key:
        raise DegenerateInputError(f"x와 y가 같은 점입니다: ({x.x}, {x.y})")

    if variant == Variant.CIRCLE:
        if beta < Beta.of(1):
            raise UnsupportedVariantError(f"원 기반 영역은 β >= 1만 지원합니다 (β={beta})")
        if beta.is_infinite:
            return HalfPlaneUnionRegion(x, y)
        return CircleUnionRegion(x, y, (beta.value ** 2 - 1) / 4)

    if beta.is_infinite:
        return StripRegion(x, y)
    if beta.value == 0:
        return SegmentRegion(x, y)
    if beta.value < 1:
        return LensRegion(x, y, (1 / beta.value ** 2 - 1) / 4)
    d1, d2 = lune_circles(x, y, beta.value)
    return LuneRegion(x, y, d1, d2)


def region_contains(region: Region, p: Point, closure: Closure = Closure.OPEN) -> bool:
    """영역 멤버십 (끝점 제외는 호출자 책임)"""
    return region.contains(p, Closure(closure))


def expanded_point_box(box: BBox) -> BBox:
    """strip 잘라내기용 확장 bounding box (10% + 1)"""
    return box.expanded(Fraction(1, 10), Fraction(1))
