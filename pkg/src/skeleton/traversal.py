"""쌍대 그래프 깊이 우선 순회로 점유된 lune 표시

lune 표(occupied)와 활성 목록(active, 이중 연결 리스트)을 유지하며
사다리꼴 분할의 면을 방문합니다.
- lune에 들어갈 때 아직 점유되지 않았으면 활성 목록에 추가
- 입력점이 있는 면을 방문하면 활성 목록의 lune을 정확히 재검증한 뒤 점유 표시
- lune에서 나갈 때 아직 점유되지 않았으면 활성 목록에서 제거
"""

import logging
from typing import Iterator, List, Optional, Sequence, Tuple

import numpy as np

from ..common.errors import SubdivisionError
from ..geometry.models import Point
from .models import Closure
from .regions import LuneRegion, Region, StripRegion
from .subdivision import DOWN, UP, Crossing, TrapMap, crossing_effect

logger = logging.getLogger(__name__)


class LuneTable:
    """lune별 점유 여부 + 활성 lune 이중 연결 리스트 (O(1) 추가/제거)

    사용 예시:
      >>> table = LuneTable(3)
      >>> table.add(1); table.mark(1)
      >>> table.occupied
      [False, True, False]
    """

    def __init__(self, size: int):
        self.size = size
        self.occupied: List[bool] = [False] * size
        self._head = size  # sentinel
        self._prev = [-1] * (size + 1)
        self._next = [-1] * (size + 1)
        self._prev[self._head] = self._head
        self._next[self._head] = self._head
        self._linked = [False] * size
        self._count = 0

    def add(self, lune: int) -> None:
        if self.occupied[lune]:
            return
        if self._linked[lune]:
            raise SubdivisionError(f"lune {lune}이 활성 목록에 이미 있습니다")
        tail = self._prev[self._head]
        self._next[tail] = lune
        self._prev[lune] = tail
        self._next[lune] = self._head
        self._prev[self._head] = lune
        self._linked[lune] = True
        self._count += 1

    def remove(self, lune: int) -> None:
        if self.occupied[lune]:
            return
        if not self._linked[lune]:
            raise SubdivisionError(f"lune {lune}이 활성 목록에 없습니다")
        self._unlink(lune)

    def _unlink(self, lune: int) -> None:
        prev, nxt = self._prev[lune], self._next[lune]
        self._next[prev] = nxt
        self._prev[nxt] = prev
        self._linked[lune] = False
        self._count -= 1

    def mark(self, lune: int) -> None:
        """점유 표시 (활성 목록에 있으면 제거)"""
        if self._linked[lune]:
            self._unlink(lune)
        self.occupied[lune] = True

    def __contains__(self, lune: int) -> bool:
        return self._linked[lune]

    def __len__(self) -> int:
        return self._count

    def __iter__(self) -> Iterator[int]:
        node = self._next[self._head]
        while node != self._head:
            yield node
            node = self._next[node]


def _cross(table: LuneTable, segment, direction: int) -> None:
    if segment is None:
        return
    entering, leaving = crossing_effect(segment, direction)
    for lune in leaving:
        table.remove(lune)
    for lune in entering:
        table.add(lune)


def _blocks(lune: Region, endpoints: Tuple[int, int], p: Point, closure: Closure) -> bool:
    return p.id not in endpoints and lune.contains(p, closure)


def _mark_face(
    trap_map: TrapMap,
    face: int,
    table: LuneTable,
    lunes: Sequence[Region],
    endpoint_of: Sequence[Tuple[int, int]],
    points: Sequence[Point],
    closure: Closure,
) -> None:
    indices = trap_map.trapezoids[face].points
    if not indices or not len(table):
        return
    for lune in list(table):
        for index in indices:
            if _blocks(lunes[lune], endpoint_of[lune], points[index], closure):
                table.mark(lune)
                break


def _check_state(trap_map: TrapMap, face: int, table: LuneTable) -> None:
    members = trap_map.membership(face)
    exact = trap_map.exact_membership(trap_map.trapezoids[face])
    if exact is not None and exact != members:
        raise SubdivisionError(
            f"면 {face}의 멤버십 {sorted(members)}이 정확한 판정 {sorted(exact)}과 다릅니다")
    expected = {lune for lune in members if not table.occupied[lune]}
    actual = set(table)
    if expected != actual:
        raise SubdivisionError(
            f"순회 상태 불일치 (면 {face}): 활성 {sorted(actual)} != 기대 {sorted(expected)}")


def dual_traverse_mark(
    trap_map: TrapMap,
    lunes: Sequence[Region],
    endpoint_of: Sequence[Tuple[int, int]],
    points: Sequence[Point],
    closure: Closure = Closure.OPEN,
    check_invariant: bool = False,
) -> List[bool]:
    """
    쌍대 그래프를 반복적 DFS로 순회하며 입력점을 포함하는 lune을 표시합니다.

    Args:
        trap_map: 점 위치 찾기(assign_points)가 끝난 TrapMap
        lunes: lune id(0..k-1) -> Region
        endpoint_of: lune id -> (x 점 index, y 점 index)
        points: 전체 입력점 (index = Point.id)
        closure: 경계 포함 여부
        check_invariant: 매 단계 활성 목록 == 멤버십 - 점유 검사 (작은 맵 전용)

    Returns:
        occupied: lune id별 점유 여부

    Raises:
        SubdivisionError: 곡선 통과 시 들어감/나감 상태가 맞지 않을 때
    """
    closure = Closure(closure)
    table = LuneTable(len(lunes))
    if not lunes:
        return table.occupied
    if trap_map.regions is None:
        trap_map.set_regions(dict(enumerate(lunes)))

    face_count = len(trap_map.trapezoids)
    visited = [False] * face_count
    seed, members = trap_map.seed()
    for lune in sorted(members):
        table.add(lune)

    def visit(face: int) -> None:
        visited[face] = True
        if check_invariant:
            _check_state(trap_map, face, table)
        _mark_face(trap_map, face, table, lunes, endpoint_of, points, closure)

    visit(seed)
    stack: List[Tuple[int, int, Optional[Crossing]]] = [(seed, 0, None)]
    while stack:
        face, position, entry = stack[-1]
        neighbors = trap_map.adjacency[face]
        if position < len(neighbors):
            stack[-1] = (face, position + 1, entry)
            crossing = neighbors[position]
            if visited[crossing.target]:
                continue
            _cross(table, crossing.segment, crossing.direction)
            visit(crossing.target)
            stack.append((crossing.target, 0, crossing))
            continue
        stack.pop()
        if entry is not None:
            _cross(table, entry.segment, DOWN if entry.direction == UP else UP)

    if not all(visited):
        raise SubdivisionError(f"방문하지 못한 면 {visited.count(False)}개")

    mark_ambiguous(trap_map.ambiguous, table, lunes, endpoint_of, points, closure)
    return table.occupied


def _prefilter(lunes: Sequence[Region], tol: float):
    """float 근사로 점이 영역 근처에 있을 수 있는 lune을 고르는 함수"""
    if all(isinstance(lune, LuneRegion) for lune in lunes):
        boxes = np.array([lune.float_bbox() for lune in lunes], dtype=float)
        xmin, ymin = boxes[:, 0] - tol, boxes[:, 1] - tol
        xmax, ymax = boxes[:, 2] + tol, boxes[:, 3] + tol
        return lambda x, y: (xmin <= x) & (x <= xmax) & (ymin <= y) & (y <= ymax)
    if all(isinstance(lune, StripRegion) for lune in lunes):
        ax = np.array([lune.x.fx for lune in lunes])
        ay = np.array([lune.x.fy for lune in lunes])
        dx = np.array([lune.y.fx for lune in lunes]) - ax
        dy = np.array([lune.y.fy for lune in lunes]) - ay
        d_sq = dx * dx + dy * dy
        slack = tol * np.sqrt(d_sq)
        return lambda x, y: ((x - ax) * dx + (y - ay) * dy >= -slack) & (
            (x - ax) * dx + (y - ay) * dy <= d_sq + slack)
    return lambda x, y: np.ones(len(lunes), dtype=bool)


def mark_ambiguous(
    indices: Sequence[int],
    table: LuneTable,
    lunes: Sequence[Region],
    endpoint_of: Sequence[Tuple[int, int]],
    points: Sequence[Point],
    closure: Closure,
    tol: float = 1e-6,
) -> int:
    """경계 근처로 위치가 애매한 점을 남은 모든 lune에 대해 정확히 검사

    Returns:
        새로 점유 표시된 lune 수
    """
    if not indices or not lunes:
        return 0
    scale = max(1.0, max(abs(points[i].fx) + abs(points[i].fy) for i in indices))
    maybe = _prefilter(lunes, tol * scale)
    marked = 0
    for index in indices:
        p = points[index]
        candidates = np.flatnonzero(maybe(p.fx, p.fy))
        for lune in candidates.tolist():
            if table.occupied[lune]:
                continue
            if _blocks(lunes[lune], endpoint_of[lune], p, closure):
                table.mark(lune)
                marked += 1
    return marked


def direct_mark(
    lunes: Sequence[Region],
    endpoint_of: Sequence[Tuple[int, int]],
    points: Sequence[Point],
    closure: Closure = Closure.OPEN,
) -> List[bool]:
    """O(n·m) 직접 검사 (검증용 기준 및 그룹 fallback)"""
    closure = Closure(closure)
    table = LuneTable(len(lunes))
    mark_ambiguous(range(len(points)), table, lunes, endpoint_of, points, closure)
    return table.occupied
