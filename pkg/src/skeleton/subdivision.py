"""곡선 조각 배치(arrangement)의 사다리꼴 분할과 점 위치 찾기

구성:
1. split_at_intersections: 조각 쌍의 교점(float)을 구해 서로 교차하지 않는
   조각으로 자르고, 지지 곡선이 같은 겹친 조각은 소유자를 합칩니다.
2. TrapMap: 무작위 점진 삽입으로 만든 사다리꼴 분할 + 탐색 DAG.
   점 비교는 사전식 순서(x, y)를 써서 같은 x의 퇴화를 기울이기로 처리합니다.
3. 쌍대 그래프: 수직 벽을 건너는 이웃(멤버십 불변)과 곡선을 건너는 이웃
   (곡선 소유자 멤버십 토글).
"""

import logging
import math
import random
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Set, Tuple

import numpy as np

from ..common.errors import OutOfBoundsError, PreconditionError, SubdivisionError
from ..geometry.models import BBox, Point
from .curves import CurveSegment, Vertex, VertexPool, lex_cmp
from .models import Closure
from .regions import Region

logger = logging.getLogger(__name__)

UP = 1
DOWN = -1


# ===== Arrangement pre-pass =====


# 접하는 곡선의 교점 높이 h는 반올림 오차가 sqrt로 커지므로 이 배수 안이면 접점 하나로 봄
TANGENT_FACTOR = 100.0


def _circle_circle(a: CurveSegment, b: CurveSegment, eps: float) -> List[Tuple[float, float]]:
    dx, dy = b.cx - a.cx, b.cy - a.cy
    d = math.hypot(dx, dy)
    if d == 0.0 or d > a.r + b.r + eps or d < abs(a.r - b.r) - eps:
        return []
    t = (a.r * a.r - b.r * b.r + d * d) / (2.0 * d)
    h = math.sqrt(max(0.0, a.r * a.r - t * t))
    bx, by = a.cx + t * dx / d, a.cy + t * dy / d
    if h <= TANGENT_FACTOR * eps:
        return [(bx, by)]
    ox, oy = -dy / d * h, dx / d * h
    return [(bx + ox, by + oy), (bx - ox, by - oy)]


def _line_circle(line: CurveSegment, arc: CurveSegment, eps: float) -> List[Tuple[float, float]]:
    lx, ly = line.left.x, line.left.y
    ux, uy = line.right.x - lx, line.right.y - ly
    length = math.hypot(ux, uy)
    if length == 0.0:
        return []
    ux, uy = ux / length, uy / length
    s = (arc.cx - lx) * ux + (arc.cy - ly) * uy
    fx, fy = lx + s * ux, ly + s * uy
    dist = math.hypot(arc.cx - fx, arc.cy - fy)
    if dist > arc.r + eps:
        return []
    h = math.sqrt(max(0.0, arc.r * arc.r - dist * dist))
    if h <= TANGENT_FACTOR * eps:
        return [(fx, fy)]
    return [(fx + h * ux, fy + h * uy), (fx - h * ux, fy - h * uy)]


def _line_line(a: CurveSegment, b: CurveSegment) -> List[Tuple[float, float]]:
    ax, ay = a.left.x, a.left.y
    rx, ry = a.right.x - ax, a.right.y - ay
    bx, by = b.left.x, b.left.y
    sx, sy = b.right.x - bx, b.right.y - by
    denom = rx * sy - ry * sx
    if denom == 0.0:
        return []
    t = ((bx - ax) * sy - (by - ay) * sx) / denom
    return [(ax + t * rx, ay + t * ry)]


def on_piece(piece: CurveSegment, x: float, y: float, tol: float) -> bool:
    """지지 곡선 위의 점 (x, y)가 이 조각 범위에 드는지"""
    if piece.is_vertical:
        lo, hi = sorted((piece.left.y, piece.right.y))
        return abs(x - piece.left.x) <= tol and lo - tol <= y <= hi + tol
    if not (piece.left.x - tol <= x <= piece.right.x + tol):
        return False
    if piece.kind == "arc":
        return y >= piece.cy - tol if piece.upper else y <= piece.cy + tol
    return True


def _same_support(a: CurveSegment, b: CurveSegment) -> bool:
    if a.support != b.support:
        return False
    return a.kind == "line" or a.upper == b.upper


def _crossings(a: CurveSegment, b: CurveSegment, eps: float) -> List[Tuple[float, float]]:
    if a.kind == "arc" and b.kind == "arc":
        return _circle_circle(a, b, eps)
    if a.kind == "line" and b.kind == "line":
        return _line_line(a, b)
    line, arc = (a, b) if a.kind == "line" else (b, a)
    return _line_circle(line, arc, eps)


def candidate_pairs(pieces: Sequence[CurveSegment], eps: float, chunk: int = 512) -> Iterable[Tuple[int, int]]:
    """bounding box가 겹치는 조각 쌍 (i < j), numpy로 걸러냄"""
    count = len(pieces)
    if count < 2:
        return []
    boxes = np.array([piece.bbox() for piece in pieces], dtype=float)
    xmin, ymin = boxes[:, 0] - eps, boxes[:, 1] - eps
    xmax, ymax = boxes[:, 2] + eps, boxes[:, 3] + eps
    pairs = []
    for start in range(0, count, chunk):
        stop = min(count, start + chunk)
        overlap = ((xmin[start:stop, None] <= xmax[None, :])
                   & (xmin[None, :] <= xmax[start:stop, None])
                   & (ymin[start:stop, None] <= ymax[None, :])
                   & (ymin[None, :] <= ymax[start:stop, None]))
        rows, cols = np.nonzero(overlap)
        rows = rows + start
        keep = rows < cols
        pairs.extend(zip(rows[keep].tolist(), cols[keep].tolist()))
    return pairs


def split_at_intersections(
    pieces: Sequence[CurveSegment],
    pool: VertexPool,
    eps: Optional[float] = None,
) -> List[CurveSegment]:
    """
    조각들을 교점에서 잘라 내부가 서로 교차하지 않는 조각 목록을 만듭니다.

    지지 곡선이 같고 겹치는 조각은 서로의 끝점에서 자른 뒤 하나로 합치고
    소유자(owners)를 병합합니다.
    """
    eps = pool.tolerance if eps is None else eps
    cuts: Dict[int, List[Vertex]] = {i: [] for i in range(len(pieces))}

    def add_cut(index: int, vertex: Vertex) -> None:
        piece = pieces[index]
        if vertex is piece.left or vertex is piece.right:
            return
        if lex_cmp(piece.left, vertex) < 0 < lex_cmp(piece.right, vertex):
            cuts[index].append(vertex)

    for i, j in candidate_pairs(pieces, eps):
        a, b = pieces[i], pieces[j]
        if len(a.owners) == 1 and a.owners.keys() == b.owners.keys():
            continue  # 같은 영역의 조각끼리는 끝점에서만 만남
        if _same_support(a, b):
            for index, other in ((i, b), (j, a)):
                for end in (other.left, other.right):
                    if on_piece(pieces[index], end.x, end.y, eps):
                        add_cut(index, end)
            continue
        if a.support == b.support:
            continue  # 같은 원의 반대쪽 가지
        for x, y in _crossings(a, b, eps):
            if on_piece(a, x, y, eps) and on_piece(b, x, y, eps):
                vertex = pool.add(x, y)
                add_cut(i, vertex)
                add_cut(j, vertex)

    merged: Dict[tuple, CurveSegment] = {}
    order: List[tuple] = []
    for index, piece in enumerate(pieces):
        chain = [piece.left] + sorted(set(cuts[index]), key=lambda v: (v.x, v.y)) + [piece.right]
        for a, b in zip(chain, chain[1:]):
            if a is b or (a.x == b.x and a.y == b.y):
                continue
            left, right = (a, b) if lex_cmp(a, b) < 0 else (b, a)
            key = (piece.support, piece.upper if piece.kind == "arc" else None, left.index, right.index)
            if key in merged:
                merged[key].owners.update(piece.owners)
            else:
                merged[key] = piece.sub_piece(left, right)
                order.append(key)
    result = [merged[key] for key in order]
    for index, piece in enumerate(result):
        piece.id = index
    return result


# ===== Trapezoidal map =====


class Trapezoid:
    """사다리꼴 (top/bottom이 None이면 bbox의 위/아래 변)"""

    __slots__ = ("top", "bottom", "leftp", "rightp", "ul", "ll", "ur", "lr",
                 "node", "id", "points", "alive")

    def __init__(self, top, bottom, leftp, rightp):
        self.top: Optional[CurveSegment] = top
        self.bottom: Optional[CurveSegment] = bottom
        self.leftp: Vertex = leftp
        self.rightp: Optional[Vertex] = rightp
        self.ul: Optional["Trapezoid"] = None
        self.ll: Optional["Trapezoid"] = None
        self.ur: Optional["Trapezoid"] = None
        self.lr: Optional["Trapezoid"] = None
        self.node = _Node.leaf(self)
        self.id = -1
        self.points: List[int] = []
        self.alive = True

    def __repr__(self) -> str:
        top = self.top.id if self.top else "T"
        bottom = self.bottom.id if self.bottom else "B"
        return f"Trapezoid(#{self.id}, top={top}, bottom={bottom}, {self.leftp}..{self.rightp})"


class _Node:
    """탐색 DAG 노드 (x-노드: 꼭짓점, y-노드: 곡선 조각, leaf: 사다리꼴)"""

    __slots__ = ("kind", "vertex", "segment", "left", "right", "trap")

    def __init__(self, kind, vertex=None, segment=None, left=None, right=None, trap=None):
        self.kind = kind
        self.vertex = vertex
        self.segment = segment
        self.left = left      # x-노드: 왼쪽 / y-노드: 위쪽
        self.right = right    # x-노드: 오른쪽 / y-노드: 아래쪽
        self.trap = trap

    @classmethod
    def leaf(cls, trap) -> "_Node":
        return cls("leaf", trap=trap)

    def become(self, other: "_Node") -> None:
        self.kind = other.kind
        self.vertex = other.vertex
        self.segment = other.segment
        self.left = other.left
        self.right = other.right
        self.trap = other.trap


def _repair_left(neighbor: Optional[Trapezoid], old: Trapezoid, upper: Trapezoid, lower: Trapezoid) -> None:
    if neighbor is None:
        return
    if neighbor.ul is old:
        neighbor.ul = upper
    if neighbor.ll is old:
        neighbor.ll = lower


def _repair_right(neighbor: Optional[Trapezoid], old: Trapezoid, upper: Trapezoid, lower: Trapezoid) -> None:
    if neighbor is None:
        return
    if neighbor.ur is old:
        neighbor.ur = upper
    if neighbor.lr is old:
        neighbor.lr = lower


@dataclass
class Crossing:
    """쌍대 그래프 간선: 곡선(segment)을 건너 이웃 면으로 이동"""
    target: int
    segment: Optional[CurveSegment]  # None이면 수직 벽 (멤버십 불변)
    direction: int                   # UP: 아래 -> 위, DOWN: 위 -> 아래


class TrapMap:
    """곡선 조각의 사다리꼴 분할 + 탐색 DAG + 면별 입력점 목록

    사용 예시:
      >>> trap_map = build(pieces, bbox)
      >>> trap_id = trap_map.locate(Point(1, 1))
    """

    def __init__(self, bbox: BBox, seed: int = 0, clip: Optional[BBox] = None):
        self.bbox = bbox
        xmin, ymin, xmax, ymax = bbox.as_floats()
        self.xmin, self.ymin, self.xmax, self.ymax = xmin, ymin, xmax, ymax
        # 곡선을 만든 영역 (strip은 이 영역 밖을 strip 밖으로 취급)
        self.clip = (clip or bbox).as_floats()
        self.scale = bbox.scale
        self.ambiguity_tol = 1e-6 * self.scale
        self.wall_tol = 1e-12 * self.scale
        self.segments: List[CurveSegment] = []
        self.rng = random.Random(seed)
        root = Trapezoid(None, None, Vertex(xmin, -math.inf), Vertex(xmax, math.inf))
        self.root = root.node
        self.trapezoids: List[Trapezoid] = []
        self.adjacency: List[List[Crossing]] = []
        self.ambiguous: List[int] = []
        self._membership: Optional[List[FrozenSet[int]]] = None
        self._seed: Optional[Tuple[int, FrozenSet[int]]] = None
        self._regions: Optional[Dict[int, Region]] = None

    # ----- construction -----

    def insert_all(self, pieces: Sequence[CurveSegment]) -> None:
        order = list(pieces)
        self.rng.shuffle(order)
        for piece in order:
            self._insert(piece)
        self.segments = list(pieces)
        self._finalize()

    def _segment_above(self, s: CurveSegment, t: CurveSegment) -> bool:
        """공통 왼쪽 끝점 직후에 s가 t보다 위에 있는지"""
        if s.is_vertical:
            return True
        if t.is_vertical:
            return False
        xr = min(s.right.x, t.right.x)
        xm = (s.left.x + xr) / 2.0
        ys, yt = s.y_at(xm), t.y_at(xm)
        if ys == yt:
            return s.id > t.id
        return ys > yt

    def _locate_left_endpoint(self, s: CurveSegment) -> Trapezoid:
        p = s.left
        node = self.root
        while node.kind != "leaf":
            if node.kind == "x":
                node = node.left if lex_cmp(p, node.vertex) < 0 else node.right
                continue
            t = node.segment
            if t.left is p or (t.left.x == p.x and t.left.y == p.y):
                above = self._segment_above(s, t)
            else:
                margin = t.side(p.x, p.y)
                above = margin > 0 if margin != 0 else self._segment_above(s, t)
            node = node.left if above else node.right
        return node.trap

    def _follow(self, s: CurveSegment) -> Tuple[List[Trapezoid], List[bool]]:
        """s가 지나는 사다리꼴 목록과 각 벽 꼭짓점이 s 위에 있는지 여부

        꼭짓점이 허용 오차 안에서 s 위에 놓이면 실제로 존재하는 이웃 쪽으로 진행합니다.
        """
        trap = self._locate_left_endpoint(s)
        traps = [trap]
        r_above: List[bool] = []
        while lex_cmp(s.right, trap.rightp) > 0:
            r = trap.rightp
            margin = s.side(r.x, r.y)
            above = margin > 0
            nxt = trap.lr if above else trap.ur
            if (nxt is None or not nxt.alive) and abs(margin) <= self.ambiguity_tol:
                above = not above
                nxt = trap.lr if above else trap.ur
            if nxt is None or not nxt.alive:
                raise SubdivisionError(f"조각 {s.id} 추적 중 이웃 사다리꼴이 없습니다")
            r_above.append(above)
            trap = nxt
            traps.append(trap)
            if len(traps) > 4 * len(self.segments) + 4 * self._inserted + 8:
                raise SubdivisionError(f"조각 {s.id} 추적이 끝나지 않습니다")
        return traps, r_above

    _inserted = 0

    def _insert(self, s: CurveSegment) -> None:
        if lex_cmp(s.left, s.right) >= 0:
            raise PreconditionError(f"x-단조가 아닌 조각: {s.left} -> {s.right}")
        if s.kind == "arc" and not (s.cx - s.r - self.ambiguity_tol <= s.left.x
                                    and s.right.x <= s.cx + s.r + self.ambiguity_tol):
            raise PreconditionError(f"원호 조각 {s.id}의 x 범위가 원을 벗어납니다")
        if not (self.xmin <= s.left.x and s.right.x <= self.xmax):
            raise PreconditionError(f"조각 {s.id}가 bounding box 밖에 있습니다")

        p, q = s.left, s.right
        traps, r_above = self._follow(s)
        self._inserted += 1
        first, last = traps[0], traps[-1]
        p_shared = lex_cmp(p, first.leftp) == 0
        q_shared = lex_cmp(q, last.rightp) == 0
        left_part = None if p_shared else Trapezoid(first.top, first.bottom, first.leftp, p)
        right_part = None if q_shared else Trapezoid(last.top, last.bottom, q, last.rightp)

        cur_u = Trapezoid(first.top, s, p, None)
        cur_l = Trapezoid(s, first.bottom, p, None)
        uppers, lowers = [cur_u], [cur_l]
        for prev, nxt, above in zip(traps, traps[1:], r_above):
            r = prev.rightp
            if above:
                # r이 s 위: 위쪽 조각은 r의 벽에서 끊기고 아래쪽 조각은 이어짐
                cur_u.rightp = r
                new_u = Trapezoid(nxt.top, s, r, None)
                cur_u.lr, new_u.ll = new_u, cur_u
                cur_u.ur = prev.ur
                _repair_left(prev.ur, prev, cur_u, cur_u)
                new_u.ul = nxt.ul
                _repair_right(nxt.ul, nxt, new_u, new_u)
                cur_u = new_u
            else:
                cur_l.rightp = r
                new_l = Trapezoid(s, nxt.bottom, r, None)
                cur_l.ur, new_l.ul = new_l, cur_l
                cur_l.lr = prev.lr
                _repair_left(prev.lr, prev, cur_l, cur_l)
                new_l.ll = nxt.ll
                _repair_right(nxt.ll, nxt, new_l, new_l)
                cur_l = new_l
            uppers.append(cur_u)
            lowers.append(cur_l)
        cur_u.rightp = q
        cur_l.rightp = q

        if left_part is not None:
            left_part.ul, left_part.ll = first.ul, first.ll
            _repair_right(first.ul, first, left_part, left_part)
            _repair_right(first.ll, first, left_part, left_part)
            left_part.ur, left_part.lr = uppers[0], lowers[0]
            uppers[0].ul = left_part
            lowers[0].ll = left_part
        else:
            uppers[0].ul = first.ul
            lowers[0].ll = first.ll
            _repair_right(first.ul, first, uppers[0], lowers[0])
            _repair_right(first.ll, first, uppers[0], lowers[0])

        if right_part is not None:
            right_part.ur, right_part.lr = last.ur, last.lr
            _repair_left(last.ur, last, right_part, right_part)
            _repair_left(last.lr, last, right_part, right_part)
            right_part.ul, right_part.ll = uppers[-1], lowers[-1]
            uppers[-1].ur = right_part
            lowers[-1].lr = right_part
        else:
            uppers[-1].ur = last.ur
            lowers[-1].lr = last.lr
            _repair_left(last.ur, last, uppers[-1], lowers[-1])
            _repair_left(last.lr, last, uppers[-1], lowers[-1])

        last_index = len(traps) - 1
        for j, old in enumerate(traps):
            sub = _Node("y", segment=s, left=uppers[j].node, right=lowers[j].node)
            if j == last_index and right_part is not None:
                sub = _Node("x", vertex=q, left=sub, right=right_part.node)
            if j == 0 and left_part is not None:
                sub = _Node("x", vertex=p, left=left_part.node, right=sub)
            old.node.become(sub)
            old.alive = False

    def _collect(self) -> List[Trapezoid]:
        """DAG의 살아있는 leaf 사다리꼴 (결정적 순서)"""
        seen: Set[int] = set()
        found: List[Trapezoid] = []
        stack = [self.root]
        while stack:
            node = stack.pop()
            if id(node) in seen:
                continue
            seen.add(id(node))
            if node.kind == "leaf":
                found.append(node.trap)
            else:
                stack.append(node.right)
                stack.append(node.left)
        found.sort(key=lambda t: (t.leftp.x, t.leftp.y, self._mid_y(t)))
        return found

    def _finalize(self) -> None:
        self.trapezoids = self._collect()
        for index, trap in enumerate(self.trapezoids):
            trap.id = index
        self._build_adjacency()

    def _wall_y(self, segment: Optional[CurveSegment], v: Vertex, default: float) -> float:
        """꼭짓점 v를 지나는 벽과 segment가 만나는 높이 (수직 조각은 기울이기 규약으로 v.y에 고정)"""
        if segment is None:
            return default
        if segment.is_vertical:
            return min(max(v.y, segment.left.y), segment.right.y)
        return segment.y_at(v.x)

    def wall_overlap(self, left: Trapezoid, right: Trapezoid) -> float:
        """left의 오른쪽 벽과 right의 왼쪽 벽이 겹치는 길이 (한 점에서만 닿으면 0)"""
        v = left.rightp
        top = min(self._wall_y(left.top, v, self.ymax), self._wall_y(right.top, v, self.ymax))
        bottom = max(self._wall_y(left.bottom, v, self.ymin), self._wall_y(right.bottom, v, self.ymin))
        return top - bottom

    def _build_adjacency(self) -> None:
        adjacency: List[List[Crossing]] = [[] for _ in self.trapezoids]
        for trap in self.trapezoids:
            for other in (trap.ur, trap.lr):
                if other is None or not other.alive:
                    continue
                if any(c.target == other.id and c.segment is None for c in adjacency[trap.id]):
                    continue
                if self.wall_overlap(trap, other) <= self.wall_tol:
                    continue
                adjacency[trap.id].append(Crossing(other.id, None, 0))
                adjacency[other.id].append(Crossing(trap.id, None, 0))

        above: Dict[int, List[Trapezoid]] = {}
        below: Dict[int, List[Trapezoid]] = {}
        for trap in self.trapezoids:
            if trap.bottom is not None:
                above.setdefault(trap.bottom.id, []).append(trap)
            if trap.top is not None:
                below.setdefault(trap.top.id, []).append(trap)

        def lex_key(v: Vertex):
            return (v.x, v.y)

        for segment in self.segments:
            ups = sorted(above.get(segment.id, []), key=lambda t: lex_key(t.leftp))
            downs = sorted(below.get(segment.id, []), key=lambda t: lex_key(t.leftp))
            i = j = 0
            while i < len(ups) and j < len(downs):
                a, b = ups[i], downs[j]
                lo = a.leftp if lex_cmp(a.leftp, b.leftp) >= 0 else b.leftp
                hi = a.rightp if lex_cmp(a.rightp, b.rightp) <= 0 else b.rightp
                if lex_cmp(lo, hi) < 0:
                    adjacency[b.id].append(Crossing(a.id, segment, UP))
                    adjacency[a.id].append(Crossing(b.id, segment, DOWN))
                if lex_cmp(a.rightp, b.rightp) <= 0:
                    i += 1
                else:
                    j += 1
        self.adjacency = adjacency

    # ----- geometry helpers -----

    def _top_y(self, trap: Trapezoid, x: float) -> float:
        return self.ymax if trap.top is None else trap.top.y_at(x)

    def _bottom_y(self, trap: Trapezoid, x: float) -> float:
        return self.ymin if trap.bottom is None else trap.bottom.y_at(x)

    def _mid_y(self, trap: Trapezoid) -> float:
        x = self.sample_point(trap)[0]
        return (self._top_y(trap, x) + self._bottom_y(trap, x)) / 2.0

    def sample_point(self, trap: Trapezoid) -> Tuple[float, float]:
        """사다리꼴 내부 표본점 (float)"""
        x = (trap.leftp.x + trap.rightp.x) / 2.0
        return x, (self._top_y(trap, x) + self._bottom_y(trap, x)) / 2.0

    def clearance(self, trap: Trapezoid) -> float:
        """표본점에서 사다리꼴 경계까지의 최소 거리 추정"""
        x, y = self.sample_point(trap)
        return min(
            self._top_y(trap, x) - y,
            y - self._bottom_y(trap, x),
            x - trap.leftp.x,
            trap.rightp.x - x,
        )

    def trap_contains(self, trap: Trapezoid, x: float, y: float) -> bool:
        """선형 스캔 검증용: 열린 사다리꼴 내부 판정 (float)"""
        if not (trap.leftp.x < x < trap.rightp.x):
            return False
        if trap.top is not None and trap.top.side(x, y) >= 0:
            return False
        if trap.bottom is not None and trap.bottom.side(x, y) <= 0:
            return False
        return self.ymin < y < self.ymax

    # ----- queries -----

    def _check_bounds(self, x: float, y: float) -> None:
        if not (self.xmin < x < self.xmax and self.ymin < y < self.ymax):
            raise OutOfBoundsError(f"질의점 ({x}, {y})이 bounding box 밖입니다")

    def locate_xy(self, x: float, y: float) -> int:
        self._check_bounds(x, y)
        node = self.root
        while node.kind != "leaf":
            if node.kind == "x":
                v = node.vertex
                left = x < v.x or (x == v.x and y < v.y)
                node = node.left if left else node.right
            else:
                node = node.left if node.segment.side(x, y) > 0 else node.right
        return node.trap.id

    def locate(self, p: Point) -> int:
        """점 p를 포함하는 사다리꼴 id (O(log N) 기대)"""
        return self.locate_xy(p.fx, p.fy)

    def locate_many(self, xs: np.ndarray, ys: np.ndarray) -> np.ndarray:
        """numpy 배치 위치 찾기 (DAG를 부분집합 단위로 내려감)"""
        xs = np.asarray(xs, dtype=float)
        ys = np.asarray(ys, dtype=float)
        if xs.size and (xs.min() <= self.xmin or xs.max() >= self.xmax
                        or ys.min() <= self.ymin or ys.max() >= self.ymax):
            raise OutOfBoundsError("bounding box 밖의 질의점이 있습니다")
        result = np.full(xs.shape[0], -1, dtype=np.int64)
        stack = [(self.root, np.arange(xs.shape[0]))]
        while stack:
            node, idx = stack.pop()
            if idx.size == 0:
                continue
            if node.kind == "leaf":
                result[idx] = node.trap.id
                continue
            px, py = xs[idx], ys[idx]
            if node.kind == "x":
                v = node.vertex
                go_left = (px < v.x) | ((px == v.x) & (py < v.y))
            else:
                go_left = side_many(node.segment, px, py) > 0
            stack.append((node.left, idx[go_left]))
            stack.append((node.right, idx[~go_left]))
        return result

    def depth_stats(self) -> Tuple[float, int]:
        """leaf까지의 평균/최대 경로 길이 (사다리꼴 표본점 기준)"""
        depths = []
        for trap in self.trapezoids:
            x, y = self.sample_point(trap)
            node, depth = self.root, 0
            while node.kind != "leaf":
                depth += 1
                if node.kind == "x":
                    v = node.vertex
                    node = node.left if (x < v.x or (x == v.x and y < v.y)) else node.right
                else:
                    node = node.left if node.segment.side(x, y) > 0 else node.right
            depths.append(depth)
        if not depths:
            return 0.0, 0
        return sum(depths) / len(depths), max(depths)

    # ----- point records -----

    def assign_points(self, points: Sequence[Point], indices: Optional[Sequence[int]] = None) -> None:
        """입력점을 위치 찾기하여 면별 목록에 기록하고 경계 근처 점을 ambiguous로 표시"""
        for trap in self.trapezoids:
            trap.points = []
        indices = list(range(len(points))) if indices is None else list(indices)
        if not indices:
            self.ambiguous = []
            return
        xs = np.array([points[i].fx for i in indices], dtype=float)
        ys = np.array([points[i].fy for i in indices], dtype=float)
        located = self.locate_many(xs, ys)
        ambiguous_mask = np.zeros(len(indices), dtype=bool)

        order = np.argsort(located, kind="stable")
        boundaries = np.flatnonzero(np.diff(located[order])) + 1
        for group in np.split(order, boundaries):
            if group.size == 0:
                continue
            trap = self.trapezoids[int(located[group[0]])]
            gx, gy = xs[group], ys[group]
            if trap.top is not None:
                margin = side_many(trap.top, gx, gy)
                ambiguous_mask[group] |= margin > -self.ambiguity_tol
            if trap.bottom is not None:
                margin = side_many(trap.bottom, gx, gy)
                ambiguous_mask[group] |= margin < self.ambiguity_tol
            # 벽 근처 점 (수직 경계 조각, 꼭짓점 위의 점 포함)
            ambiguous_mask[group] |= np.abs(gx - trap.leftp.x) <= self.ambiguity_tol
            ambiguous_mask[group] |= np.abs(gx - trap.rightp.x) <= self.ambiguity_tol
            trap.points = [indices[k] for k in group.tolist()]
        self.ambiguous = [indices[k] for k in np.flatnonzero(ambiguous_mask).tolist()]

    # ----- membership -----

    @property
    def regions(self) -> Optional[Dict[int, Region]]:
        return self._regions

    def set_regions(self, regions: Dict[int, Region]) -> None:
        self._regions = dict(regions)
        self._membership = None
        self._seed = None

    def exact_membership(self, trap: Trapezoid) -> Optional[FrozenSet[int]]:
        """표본점의 정확한 멤버십 (표본점이 곡선이나 clip 경계에 너무 가까우면 None)"""
        if self.clearance(trap) <= self.ambiguity_tol:
            return None
        x, y = self.sample_point(trap)
        cxmin, cymin, cxmax, cymax = self.clip
        if min(x - cxmin, cxmax - x, y - cymin, cymax - y) <= self.ambiguity_tol:
            return None
        sample = Point(Fraction(x), Fraction(y))
        regions = self._regions or {}
        return frozenset(rid for rid, region in regions.items() if region.contains(sample, Closure.OPEN))

    def seed(self) -> Tuple[int, FrozenSet[int]]:
        """여유 공간이 가장 큰 면과 그 정확한 멤버십"""
        if self._seed is None:
            for trap in sorted(self.trapezoids, key=self.clearance, reverse=True):
                members = self.exact_membership(trap)
                if members is not None:
                    self._seed = (trap.id, members)
                    break
            else:
                raise SubdivisionError("정확히 판정할 수 있는 씨앗 면이 없습니다")
        return self._seed

    def membership_all(self) -> List[FrozenSet[int]]:
        """씨앗 면에서 쌍대 그래프를 따라 소유자를 토글하여 모든 면의 멤버십 계산"""
        if self._membership is not None:
            return self._membership
        seed_id, seed_members = self.seed()
        result: List[Optional[FrozenSet[int]]] = [None] * len(self.trapezoids)
        result[seed_id] = seed_members
        queue = deque([seed_id])
        while queue:
            current = queue.popleft()
            members = result[current]
            for crossing in self.adjacency[current]:
                if result[crossing.target] is not None:
                    continue
                result[crossing.target] = apply_crossing(members, crossing)
                queue.append(crossing.target)
        if any(m is None for m in result):
            raise SubdivisionError("쌍대 그래프가 연결되어 있지 않습니다")
        self._membership = result
        return result

    def membership(self, trap_id: int) -> FrozenSet[int]:
        return self.membership_all()[trap_id]

    # ----- validation -----

    def check_structure(self) -> List[str]:
        """이웃 링크 대칭성 등 구조 검사 (문제 목록 반환)"""
        problems = []
        for trap in self.trapezoids:
            for name, back in (("ur", ("ul", "ll")), ("lr", ("ul", "ll")), ("ul", ("ur", "lr")), ("ll", ("ur", "lr"))):
                other = getattr(trap, name)
                if other is None:
                    continue
                if not other.alive:
                    problems.append(f"{trap}: {name}가 삭제된 사다리꼴을 가리킵니다")
                elif trap not in (getattr(other, back[0]), getattr(other, back[1])):
                    problems.append(f"{trap}: {name} 링크가 대칭이 아닙니다")
            if lex_cmp(trap.leftp, trap.rightp) > 0:
                problems.append(f"{trap}: leftp > rightp")
        return problems


def apply_crossing(members: FrozenSet[int], crossing: Crossing) -> FrozenSet[int]:
    """곡선을 건널 때의 멤버십 변화 (수직 벽은 변화 없음)"""
    if crossing.segment is None:
        return members
    entering, leaving = crossing_effect(crossing.segment, crossing.direction)
    return (members - frozenset(leaving)) | frozenset(entering)


def crossing_effect(segment: CurveSegment, direction: int) -> Tuple[List[int], List[int]]:
    """(들어가는 영역, 나가는 영역)"""
    entering, leaving = [], []
    for owner, inside_below in segment.owners.items():
        going_up = direction == UP
        if going_up == inside_below:
            leaving.append(owner)
        else:
            entering.append(owner)
    return entering, leaving


def side_many(segment: CurveSegment, xs: np.ndarray, ys: np.ndarray) -> np.ndarray:
    """CurveSegment.side의 numpy 버전"""
    left, right = segment.left, segment.right
    if segment.is_vertical:
        return left.x - xs
    if segment.kind == "line":
        curve = left.y + (xs - left.x) * ((right.y - left.y) / (right.x - left.x))
    else:
        dx = xs - segment.cx
        dy = np.sqrt(np.maximum(0.0, segment.r * segment.r - dx * dx))
        curve = segment.cy + dy if segment.upper else segment.cy - dy
    curve = np.where(xs == left.x, left.y, curve)
    curve = np.where(xs == right.x, right.y, curve)
    return ys - curve


def build(
    curves: Sequence[CurveSegment],
    bbox: BBox,
    seed: int = 0,
    pool: Optional[VertexPool] = None,
    regions: Optional[Dict[int, Region]] = None,
) -> TrapMap:
    """
    곡선 조각의 사다리꼴 분할을 만듭니다.

    교점에서 조각을 자른 뒤 (split_at_intersections) 무작위 순서로 삽입합니다.
    분할 영역은 bbox를 조금 넓힌 상자라서 어떤 조각도 분할 영역의 변에 닿지 않습니다.

    Args:
        curves: x-단조 조각 목록 (bbox 안)
        bbox: 곡선을 만든 영역
        seed: 삽입 순서 난수 시드
        pool: 조각 꼭짓점을 만든 VertexPool (교점 스냅에 사용)
        regions: 소유자 id -> Region (씨앗 면 멤버십의 정확한 계산용)

    Returns:
        TrapMap
    """
    pool = pool or VertexPool(1e-9 * bbox.scale)
    trap_map = TrapMap(bbox.expanded(Fraction(1, 100), Fraction(1, 100)), seed=seed, clip=bbox)
    for piece in curves:
        if lex_cmp(piece.left, piece.right) >= 0:
            raise PreconditionError(f"x-단조가 아닌 조각: {piece.left} -> {piece.right}")
    pieces = split_at_intersections(curves, pool)
    trap_map.insert_all(pieces)
    if regions is not None:
        trap_map.set_regions(regions)
    logger.debug(
        f"📊 TrapMap: 입력 조각 {len(curves)}개 -> 분할 조각 {len(pieces)}개, "
        f"사다리꼴 {len(trap_map.trapezoids)}개")
    return trap_map
