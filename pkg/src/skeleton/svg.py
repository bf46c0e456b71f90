"""SVG 렌더링 (점, skeleton 간선, 선택한 금지 영역 윤곽)"""

import logging
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

import svgwrite

from ..geometry.models import BBox, PointSet
from .curves import clip_line, lune_corners
from .models import Edge
from .regions import (
    CircleUnionRegion,
    HalfPlaneUnionRegion,
    LensRegion,
    LuneRegion,
    Region,
    SegmentRegion,
    StripRegion,
)

logger = logging.getLogger(__name__)

XY = Tuple[float, float]


def _screen(p: XY) -> XY:
    """y축 뒤집기 (SVG는 아래쪽이 +y)"""
    return (p[0], -p[1])


def _orient(a: XY, b: XY, c: XY) -> float:
    return (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])


def arc_path(center: XY, radius: float, start: XY, through: XY, end: XY) -> str:
    """start에서 through를 지나 end까지 가는 원호의 SVG path 데이터 (화면 좌표)"""
    s, m, e = _screen(start), _screen(through), _screen(end)
    sweep = 1 if _orient(s, m, e) > 0 else 0
    # through가 현의 중심 반대쪽에 있으면 큰 호
    cx, cy = _screen(center)
    chord_side = _orient(s, e, (cx, cy))
    large = 1 if chord_side * _orient(s, e, m) > 0 else 0
    return f"M {s[0]:.9g} {s[1]:.9g} A {radius:.9g} {radius:.9g} 0 {large} {sweep} {e[0]:.9g} {e[1]:.9g}"


def region_outline(region: Region, view: BBox) -> List[Tuple[str, dict]]:
    """
    영역 윤곽을 (요소 종류, 속성) 목록으로 만듭니다.

    Returns:
        ("path", {"d": ...}) / ("line", {"start", "end"}) / ("circle", {"center", "r"}) 목록
        (lune은 원호 path 2개, strip은 직선 2개)
    """
    if isinstance(region, LuneRegion):
        top, bottom = lune_corners(region)
        shapes = []
        for disc, through in ((region.d1, region.x), (region.d2, region.y)):
            center = (disc.center.fx, disc.center.fy)
            shapes.append(("path", {"d": arc_path(center, disc.radius, top, (through.fx, through.fy), bottom)}))
        return shapes

    if isinstance(region, StripRegion):
        x, y = region.x, region.y
        dx, dy = y.x - x.x, y.y - x.y
        shapes = []
        for anchor in (x, y):
            a, b = clip_line(anchor, -dy, dx, view)
            shapes.append(("line", {"start": _screen((float(a[0]), float(a[1]))),
                                    "end": _screen((float(b[0]), float(b[1])))}))
        return shapes

    if isinstance(region, (LensRegion, CircleUnionRegion)):
        return [("circle", {"center": _screen((cx, cy)), "r": r}) for cx, cy, r in region.float_circles()]

    if isinstance(region, HalfPlaneUnionRegion):
        x, y = region.x, region.y
        a, b = clip_line(x, y.x - x.x, y.y - x.y, view)
        return [("line", {"start": _screen((float(a[0]), float(a[1]))),
                          "end": _screen((float(b[0]), float(b[1])))})]

    if isinstance(region, SegmentRegion):
        return [("line", {"start": _screen((region.x.fx, region.x.fy)),
                          "end": _screen((region.y.fx, region.y.fy))})]
    return []


def _view_box(points: PointSet, region: Optional[Region]) -> BBox:
    box = points.bbox()
    if isinstance(region, LuneRegion):
        xmin, ymin, xmax, ymax = region.float_bbox()
        box = box.union(BBox(Fraction(xmin), Fraction(ymin), Fraction(xmax), Fraction(ymax)))
    elif isinstance(region, (LensRegion, CircleUnionRegion)):
        for cx, cy, r in region.float_circles():
            box = box.union(BBox(Fraction(cx - r), Fraction(cy - r), Fraction(cx + r), Fraction(cy + r)))
    return box.expanded(Fraction(1, 20), Fraction(0))


def render_svg(
    points: PointSet,
    edges: Sequence[Edge],
    region: Optional[Region] = None,
    size: int = 800,
) -> svgwrite.Drawing:
    """
    점은 원, 간선은 선분, 선택한 영역은 점선 윤곽으로 그립니다.

    Example:
        >>> drawing = render_svg(square, [(0, 1), (1, 2)])
        >>> drawing.tostring().count("<line")
        2
    """
    view = _view_box(points, region)
    xmin, ymin, xmax, ymax = view.as_floats()
    width, height = xmax - xmin, ymax - ymin
    scale = max(width, height)
    stroke = scale / 400.0
    dot = scale / 150.0

    pixels = (size, max(1, int(round(size * height / width))))
    dwg = svgwrite.Drawing(profile="tiny", size=(f"{pixels[0]}px", f"{pixels[1]}px"))
    dwg.attribs["viewBox"] = f"{xmin:.9g} {-ymax:.9g} {width:.9g} {height:.9g}"

    group = dwg.g(id="edges", stroke="#1f4e79", fill="none")
    for i, j in edges:
        group.add(dwg.line(start=_screen((points[i].fx, points[i].fy)),
                           end=_screen((points[j].fx, points[j].fy)),
                           stroke_width=stroke))
    dwg.add(group)

    if region is not None:
        outline = dwg.g(id="region", stroke="#c0392b", fill="none")
        for kind, attrs in region_outline(region, view):
            if kind == "path":
                outline.add(dwg.path(d=attrs["d"], stroke_width=stroke, stroke_dasharray=f"{stroke * 4:.9g}"))
            elif kind == "line":
                outline.add(dwg.line(start=attrs["start"], end=attrs["end"], stroke_width=stroke,
                                     stroke_dasharray=f"{stroke * 4:.9g}"))
            elif kind == "circle":
                outline.add(dwg.circle(center=attrs["center"], r=attrs["r"], stroke_width=stroke,
                                       stroke_dasharray=f"{stroke * 4:.9g}"))
        dwg.add(outline)

    dots = dwg.g(id="points", fill="#111", stroke="none")
    for p in points:
        dots.add(dwg.circle(center=_screen((p.fx, p.fy)), r=dot))
    dwg.add(dots)
    logger.debug(f"🖼️ SVG: 점 {len(points)}개, 간선 {len(edges)}개, 영역 {'있음' if region else '없음'}")
    return dwg


def write_svg(path: str, drawing: svgwrite.Drawing) -> None:
    drawing.saveas(path, pretty=True)
