"""영역 경계의 x-단조 곡선 조각 (CurveSegment)

lune 경계 호는 x-극점에서 잘라 x-단조 조각으로 만들고, strip은 bounding box와의
교집합 다각형의 변으로 닫습니다. 조각의 꼭짓점은 VertexPool에서 공유되며 float
좌표로 보관합니다 (라우팅 전용, 최종 판정은 정확한 region_contains로 재검증).
"""

import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Hashable, List, Optional, Tuple

from ..common.errors import PreconditionError
from ..geometry.models import BBox, Point
from .regions import LuneRegion, Region, StripRegion

logger = logging.getLogger(__name__)

TWO_PI = 2.0 * math.pi


class Vertex:
    """공유 꼭짓점 (float 좌표 + 선택적 정확 입력점)"""

    __slots__ = ("x", "y", "index", "exact")

    def __init__(self, x: float, y: float, index: int = -1, exact: Optional[Point] = None):
        self.x = x
        self.y = y
        self.index = index
        self.exact = exact

    def key(self) -> Tuple[float, float]:
        return (self.x, self.y)

    def __repr__(self) -> str:
        return f"Vertex({self.x!r}, {self.y!r}, #{self.index})"


def lex_cmp(a: Vertex, b: Vertex) -> int:
    """사전식 비교 (x 우선, 같으면 y). 같은 x의 퇴화를 기울이기(shear)로 처리"""
    if a is b:
        return 0
    if a.x != b.x:
        return -1 if a.x < b.x else 1
    if a.y != b.y:
        return -1 if a.y < b.y else 1
    return 0


class VertexPool:
    """허용 오차 안의 꼭짓점을 하나로 합치는 꼭짓점 저장소"""

    def __init__(self, tolerance: float):
        self.tolerance = tolerance
        self.vertices: List[Vertex] = []
        self._grid: Dict[Tuple[int, int], List[Vertex]] = {}

    def _cell(self, x: float, y: float) -> Tuple[int, int]:
        return (math.floor(x / self.tolerance), math.floor(y / self.tolerance))

    def find(self, x: float, y: float) -> Optional[Vertex]:
        cx, cy = self._cell(x, y)
        best, best_d = None, self.tolerance
        for i in (cx - 1, cx, cx + 1):
            for j in (cy - 1, cy, cy + 1):
                for v in self._grid.get((i, j), ()):
                    d = max(abs(v.x - x), abs(v.y - y))
                    if d <= best_d:
                        best, best_d = v, d
        return best

    def add(self, x: float, y: float, exact: Optional[Point] = None) -> Vertex:
        """근접 꼭짓점이 있으면 재사용, 없으면 새로 등록"""
        found = self.find(x, y)
        if found is not None:
            if exact is not None and found.exact is None:
                found.exact = exact
                found.x, found.y = exact.fx, exact.fy
            return found
        vertex = Vertex(x, y, len(self.vertices), exact)
        self.vertices.append(vertex)
        self._grid.setdefault(self._cell(x, y), []).append(vertex)
        return vertex

    def add_point(self, p: Point) -> Vertex:
        return self.add(p.fx, p.fy, exact=p)


@dataclass(eq=False)
class CurveSegment:
    """x-단조 곡선 조각 (원호 조각 또는 선분)

    owners: 소유 영역 id -> inside_below (조각 바로 아래가 영역 내부인지)
    """
    kind: str                      # "arc" | "line"
    left: Vertex
    right: Vertex
    owners: Dict[int, bool]
    support: Hashable              # 정확한 지지 곡선 키 (일치 곡선 판정용)
    cx: float = 0.0
    cy: float = 0.0
    r: float = 0.0
    upper: bool = False            # 원호가 중심 높이보다 위쪽 가지인지
    id: int = -1
    meta: dict = field(default_factory=dict)

    @property
    def owner(self) -> int:
        """대표 소유자 (단일 소유 조각용)"""
        return next(iter(self.owners))

    @property
    def inside_below(self) -> bool:
        return self.owners[self.owner]

    @property
    def is_vertical(self) -> bool:
        return self.kind == "line" and self.left.x == self.right.x

    def y_at(self, x: float) -> float:
        """x에서의 곡선 높이 (끝점 x에서는 꼭짓점 y를 그대로 사용)"""
        if x == self.left.x:
            return self.left.y
        if x == self.right.x:
            return self.right.y
        if self.kind == "line":
            lx, ly, rx, ry = self.left.x, self.left.y, self.right.x, self.right.y
            return ly + (x - lx) * (ry - ly) / (rx - lx)
        dx = x - self.cx
        dy = math.sqrt(max(0.0, self.r * self.r - dx * dx))
        return self.cy + dy if self.upper else self.cy - dy

    def side(self, x: float, y: float) -> float:
        """(x, y)가 곡선 위쪽이면 양수, 아래쪽이면 음수, 위에 있으면 0

        수직 선분은 기울이기 규약상 왼쪽이 '위'입니다.
        """
        if self.is_vertical:
            return self.left.x - x
        return y - self.y_at(x)

    def bbox(self) -> Tuple[float, float, float, float]:
        ys = [self.left.y, self.right.y]
        if self.kind == "arc":
            # x-단조 조각의 y 극값은 끝점 또는 호의 최고/최저점
            if self.left.x < self.cx < self.right.x:
                ys.append(self.cy + self.r if self.upper else self.cy - self.r)
        return (self.left.x, min(ys), self.right.x, max(ys))

    def sub_piece(self, left: Vertex, right: Vertex) -> "CurveSegment":
        return CurveSegment(
            kind=self.kind,
            left=left,
            right=right,
            owners=dict(self.owners),
            support=self.support,
            cx=self.cx,
            cy=self.cy,
            r=self.r,
            upper=self.upper,
        )

    def sample(self, count: int = 8) -> List[Tuple[float, float]]:
        """조각 위의 점 샘플 (끝점 포함)"""
        points = []
        for k in range(count + 1):
            t = k / count
            x = self.left.x + (self.right.x - self.left.x) * t
            if self.is_vertical:
                points.append((x, self.left.y + (self.right.y - self.left.y) * t))
            else:
                points.append((x, self.y_at(x)))
        return points


def _ordered(a: Vertex, b: Vertex) -> Tuple[Vertex, Vertex]:
    return (a, b) if lex_cmp(a, b) <= 0 else (b, a)


def _arc_pieces(
    cx: float,
    cy: float,
    r: float,
    start: Vertex,
    end: Vertex,
    through: Tuple[float, float],
    owner: int,
    support: Hashable,
    pool: VertexPool,
) -> List[CurveSegment]:
    """start-end 사이에서 through를 지나는 원호를 x-극점에서 잘라 조각으로 반환"""
    theta_s = math.atan2(start.y - cy, start.x - cx)
    theta_e = math.atan2(end.y - cy, end.x - cx)
    theta_t = math.atan2(through[1] - cy, through[0] - cx)

    span = (theta_e - theta_s) % TWO_PI
    if (theta_t - theta_s) % TWO_PI > span:
        # through가 반대쪽이면 end에서 start로 반시계 방향
        start, end = end, start
        theta_s = theta_e
        span = TWO_PI - span

    cuts = [(0.0, start)]
    for angle, extreme in ((0.0, (cx + r, cy)), (math.pi, (cx - r, cy))):
        offset = (angle - theta_s) % TWO_PI
        if 1e-12 < offset < span - 1e-12:
            vertex = pool.add(*extreme)
            if vertex is not start and vertex is not end:
                cuts.append((offset, vertex))
    cuts.sort(key=lambda item: item[0])
    cuts.append((span, end))

    pieces = []
    for (a_off, a), (b_off, b) in zip(cuts, cuts[1:]):
        if a is b:
            continue
        mid = theta_s + (a_off + b_off) / 2
        upper = math.sin(mid) > 0
        left, right = _ordered(a, b)
        pieces.append(CurveSegment(
            kind="arc",
            left=left,
            right=right,
            owners={owner: upper},
            support=support,
            cx=cx,
            cy=cy,
            r=r,
            upper=upper,
        ))
    return pieces


def lune_corners(region: LuneRegion) -> Tuple[Tuple[float, float], Tuple[float, float]]:
    """두 경계 원의 교점 (float): m ± (sqrt(2β - 1)/2)·perp(y - x)"""
    x, y = region.x, region.y
    r_sq = float(region.d1.r_sq)
    d_sq = (y.fx - x.fx) ** 2 + (y.fy - x.fy) ** 2
    beta_sq = 4.0 * r_sq / d_sq
    h = math.sqrt(max(0.0, 2.0 * math.sqrt(beta_sq) - 1.0)) / 2.0
    mx, my = (x.fx + y.fx) / 2, (x.fy + y.fy) / 2
    wx, wy = -(y.fy - x.fy), y.fx - x.fx
    return (mx + h * wx, my + h * wy), (mx - h * wx, my - h * wy)


def clip_line(a: Point, wx: Fraction, wy: Fraction, box: BBox) -> Tuple[Tuple[Fraction, Fraction], Tuple[Fraction, Fraction]]:
    """점 a를 지나고 방향 w인 직선을 box로 정확히 잘라낸 두 끝점"""
    lo, hi = None, None
    for origin, direction, vmin, vmax in ((a.x, wx, box.xmin, box.xmax), (a.y, wy, box.ymin, box.ymax)):
        if direction == 0:
            if not (vmin < origin < vmax):
                raise PreconditionError("strip 경계 직선이 bounding box 밖에 있습니다")
            continue
        s1 = (vmin - origin) / direction
        s2 = (vmax - origin) / direction
        s1, s2 = min(s1, s2), max(s1, s2)
        lo = s1 if lo is None else max(lo, s1)
        hi = s2 if hi is None else min(hi, s2)
    return (a.x + lo * wx, a.y + lo * wy), (a.x + hi * wx, a.y + hi * wy)


def _line_support(a: Point, nx: Fraction, ny: Fraction) -> Hashable:
    """법선 (nx, ny)이고 a를 지나는 직선의 정규화 키"""
    c = nx * a.x + ny * a.y
    lead = nx if nx != 0 else ny
    return ("line", nx / lead, ny / lead, c / lead)


ExactXY = Tuple[Fraction, Fraction]


def _clip_half_plane(polygon: List[ExactXY], f) -> List[ExactXY]:
    """볼록 다각형을 f(p) >= 0 반평면으로 정확히 자름 (Sutherland-Hodgman)"""
    result: List[ExactXY] = []
    for k, current in enumerate(polygon):
        previous = polygon[k - 1]
        fc, fp = f(current), f(previous)
        if fc >= 0:
            if fp < 0:
                t = fp / (fp - fc)
                result.append((previous[0] + t * (current[0] - previous[0]),
                               previous[1] + t * (current[1] - previous[1])))
            result.append(current)
        elif fp >= 0:
            t = fp / (fp - fc)
            result.append((previous[0] + t * (current[0] - previous[0]),
                           previous[1] + t * (current[1] - previous[1])))
    deduped: List[ExactXY] = []
    for p in result:
        if not deduped or deduped[-1] != p:
            deduped.append(p)
    if len(deduped) > 1 and deduped[0] == deduped[-1]:
        deduped.pop()
    return deduped


def strip_polygon(region: StripRegion, box: BBox) -> List[ExactXY]:
    """strip ∩ box 볼록 다각형 (반시계 방향, 정확한 좌표)"""
    x = region.x
    dx, dy = region.y.x - x.x, region.y.y - x.y
    d_sq = dx * dx + dy * dy
    polygon = [(box.xmin, box.ymin), (box.xmax, box.ymin), (box.xmax, box.ymax), (box.xmin, box.ymax)]
    polygon = _clip_half_plane(polygon, lambda p: (p[0] - x.x) * dx + (p[1] - x.y) * dy)
    return _clip_half_plane(polygon, lambda p: d_sq - (p[0] - x.x) * dx - (p[1] - x.y) * dy)


def _strip_curves(region: StripRegion, bbox: BBox, owner: int, pool: VertexPool) -> List[CurveSegment]:
    x, y = region.x, region.y
    dx, dy = y.x - x.x, y.y - x.y
    polygon = strip_polygon(region, bbox)
    vertices = [pool.add(float(px), float(py)) for px, py in polygon]
    pieces = []
    for k, (a, b) in enumerate(zip(polygon, polygon[1:] + polygon[:1])):
        va, vb = vertices[k], vertices[(k + 1) % len(vertices)]
        if va is vb:
            continue
        on_x = all((p[0] - x.x) * dx + (p[1] - x.y) * dy == 0 for p in (a, b))
        on_y = all((p[0] - y.x) * dx + (p[1] - y.y) * dy == 0 for p in (a, b))
        if on_x:
            support = _line_support(x, dx, dy)
        elif on_y:
            support = _line_support(y, dx, dy)
        elif a[1] == b[1]:
            support = ("line", Fraction(0), Fraction(1), a[1])
        else:
            support = ("line", Fraction(1), Fraction(0), a[0])
        left, right = _ordered(va, vb)
        pieces.append(CurveSegment(
            kind="line",
            left=left,
            right=right,
            # 반시계 방향 변을 사전식 역순으로 지나면 내부가 아래쪽
            owners={owner: right is va},
            support=support,
        ))
    return pieces


def boundary_curves(
    region: Region,
    bbox: BBox,
    owner: int = 0,
    pool: Optional[VertexPool] = None,
) -> List[CurveSegment]:
    """
    lune / strip 경계를 x-단조 조각 목록으로 분해합니다.

    Args:
        region: LuneRegion 또는 StripRegion
        bbox: lune이면 lune을, strip이면 x, y를 엄격히 포함해야 함 (bbox 밖은 strip 밖으로 취급)
        owner: 조각에 기록할 영역 id
        pool: 공유 꼭짓점 저장소 (없으면 새로 생성)

    Returns:
        CurveSegment 목록 (lune은 닫힌 고리, strip은 strip ∩ bbox 다각형의 변)

    Raises:
        PreconditionError: 지원하지 않는 영역 또는 bbox 조건 위반
    """
    if pool is None:
        pool = VertexPool(1e-9 * bbox.scale)

    if isinstance(region, StripRegion):
        if not (bbox.contains_strictly(region.x) and bbox.contains_strictly(region.y)):
            raise PreconditionError("strip의 bbox는 x, y를 엄격히 포함해야 합니다")
        return _strip_curves(region, bbox, owner, pool)

    if not isinstance(region, LuneRegion):
        raise PreconditionError(f"boundary_curves는 lune/strip만 지원합니다: {region.kind}")

    xmin, ymin, xmax, ymax = region.float_bbox()
    if not (float(bbox.xmin) < xmin and xmax < float(bbox.xmax)
            and float(bbox.ymin) < ymin and ymax < float(bbox.ymax)):
        raise PreconditionError("bbox가 lune을 엄격히 포함하지 않습니다")

    top, bottom = lune_corners(region)
    corner_a = pool.add(*top)
    corner_b = pool.add(*bottom)
    pool.add_point(region.x)
    pool.add_point(region.y)

    pieces = []
    for disc, through in ((region.d1, region.x), (region.d2, region.y)):
        pieces.extend(_arc_pieces(
            disc.center.fx,
            disc.center.fy,
            disc.radius,
            corner_a,
            corner_b,
            (through.fx, through.fy),
            owner,
            ("arc",) + disc.key,
            pool,
        ))
    return pieces
