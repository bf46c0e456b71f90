"""Delaunay 삼각분할 (무작위 점진 삽입 + 위치 탐색 DAG)

β > 2인 lune 기반 β-skeleton은 Delaunay 삼각분할의 부분 그래프이므로
삼각분할의 간선이 후보 간선 집합이 됩니다.

구현:
- Bowyer-Watson 공동(cavity) 재삼각분할
- 볼록 껍질 바깥은 무한점(INF)을 꼭짓점으로 하는 ghost 삼각형으로 표현
- 삭제된 삼각형은 새로 만든 별(star) 삼각형 전체를 자식으로 가리키는 DAG 노드가 되어
  이후 점 위치 찾기에 사용됨
- 모든 판정은 geometry.predicates의 정확한 predicate 사용
"""

import logging
import random
from collections import deque
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from ..common.errors import TooFewPointsError
from ..geometry.models import Point, PointSet
from ..geometry.predicates import in_circle_oriented, orient2d
from .models import Edge

logger = logging.getLogger(__name__)

INF = -1  # 무한점 (ghost 삼각형 꼭짓점)


class _Tri:
    """삼각분할 내부 삼각형 (반시계 꼭짓점, 대변 이웃, DAG 자식)"""

    __slots__ = ("v", "nb", "children")

    def __init__(self, v: Tuple[int, int, int]):
        self.v = v
        self.nb: List[Optional["_Tri"]] = [None, None, None]  # nb[i]: v[i]의 대변 건너편
        self.children: Optional[List["_Tri"]] = None

    @property
    def is_ghost(self) -> bool:
        return INF in self.v

    def ghost_edge(self) -> Tuple[int, int]:
        """ghost (a, b, INF)의 실제 껍질 간선 (a, b)"""
        k = self.v.index(INF)
        return self.v[(k + 1) % 3], self.v[(k + 2) % 3]


@dataclass
class Triangulation:
    """Delaunay 삼각분할 결과

    triangles: 반시계 꼭짓점 index 삼중쌍
    neighbors: triangles[t]의 i번째 꼭짓점 대변 건너편 삼각형 번호 (-1이면 껍질)
    edges: (i, j), i < j, 사전식 정렬
    """
    points: PointSet
    triangles: List[Tuple[int, int, int]] = field(default_factory=list)
    neighbors: List[Tuple[int, int, int]] = field(default_factory=list)
    edges: List[Edge] = field(default_factory=list)
    collinear: bool = False

    def to_dict(self) -> dict:
        """딕셔너리로 변환"""
        return {
            "n": len(self.points),
            "triangles": [list(t) for t in self.triangles],
            "edges": [list(e) for e in self.edges],
            "collinear": self.collinear,
        }


class _Builder:
    """무작위 점진 삽입 상태"""

    def __init__(self, points: Sequence[Point]):
        self.points = points
        self.root: List[_Tri] = []
        self.hint: Optional[_Tri] = None

    # ----- predicates -----

    def _orient(self, a: int, b: int, c: int) -> int:
        pts = self.points
        return orient2d(pts[a], pts[b], pts[c])

    def _strictly_between(self, a: int, b: int, p: int) -> bool:
        pa, pb, pp = self.points[a], self.points[b], self.points[p]
        t = (pp.x - pa.x) * (pb.x - pa.x) + (pp.y - pa.y) * (pb.y - pa.y)
        return 0 < t < pa.dist_sq(pb)

    def conflicts(self, tri: _Tri, p: int) -> bool:
        """p를 삽입할 때 tri가 공동에 포함되는지"""
        if tri.is_ghost:
            a, b = tri.ghost_edge()
            side = self._orient(a, b, p)
            return side > 0 or (side == 0 and self._strictly_between(a, b, p))
        a, b, c = tri.v
        pts = self.points
        return in_circle_oriented(pts[a], pts[b], pts[c], pts[p]) > 0

    def covers(self, tri: _Tri, p: int) -> bool:
        """DAG 위치 찾기용 영역 포함 (닫힌 삼각형 / ghost는 닫힌 바깥 반평면)"""
        if tri.is_ghost:
            a, b = tri.ghost_edge()
            return self._orient(a, b, p) >= 0
        a, b, c = tri.v
        return self._orient(a, b, p) >= 0 and self._orient(b, c, p) >= 0 and self._orient(c, a, p) >= 0

    # ----- construction -----

    def start(self, a: int, b: int, c: int) -> None:
        if self._orient(a, b, c) < 0:
            a, b = b, a
        inner = _Tri((a, b, c))
        ghosts = [_Tri((b, a, INF)), _Tri((c, b, INF)), _Tri((a, c, INF))]
        # inner.nb[i]: v[i] 대변 (b,c) / (c,a) / (a,b)
        inner.nb = [ghosts[1], ghosts[2], ghosts[0]]
        ghost_ab, ghost_bc, ghost_ca = ghosts
        # ghost (b, a, INF): nb[0]은 (a, INF) 건너, nb[1]은 (INF, b) 건너, nb[2]는 (b, a) 건너
        ghost_ab.nb = [ghost_ca, ghost_bc, inner]
        ghost_bc.nb = [ghost_ab, ghost_ca, inner]
        ghost_ca.nb = [ghost_bc, ghost_ab, inner]
        self.root = [inner] + ghosts
        self.hint = inner

    def locate(self, p: int) -> _Tri:
        """DAG를 내려가 p와 충돌하는 살아있는 삼각형 하나를 찾음"""
        node: Optional[_Tri] = None
        candidates = self.root
        while candidates is not None:
            nxt = None
            for child in candidates:
                if self.covers(child, p):
                    nxt = child
                    break
            if nxt is None:
                break
            node = nxt
            candidates = node.children
        if node is None or node.children is not None:
            node = self.hint
        if self.conflicts(node, p):
            return node
        # 껍질 직선 위의 점 등: 이웃을 따라 충돌 삼각형 탐색
        seen = {id(node)}
        queue = deque([node])
        while queue:
            tri = queue.popleft()
            for nbr in tri.nb:
                if nbr is None or id(nbr) in seen:
                    continue
                if self.conflicts(nbr, p):
                    return nbr
                seen.add(id(nbr))
                queue.append(nbr)
        raise RuntimeError(f"점 {p}와 충돌하는 삼각형을 찾지 못했습니다")

    def insert(self, p: int) -> None:
        start = self.locate(p)
        cavity = {id(start): start}
        queue = deque([start])
        while queue:
            tri = queue.popleft()
            for nbr in tri.nb:
                if nbr is not None and id(nbr) not in cavity and self.conflicts(nbr, p):
                    cavity[id(nbr)] = nbr
                    queue.append(nbr)

        new_tris: List[_Tri] = []
        by_start: Dict[int, _Tri] = {}
        by_end: Dict[int, _Tri] = {}
        for tri in cavity.values():
            for i in range(3):
                outside = tri.nb[i]
                if outside is not None and id(outside) in cavity:
                    continue
                e0, e1 = tri.v[(i + 1) % 3], tri.v[(i + 2) % 3]
                created = _Tri((e0, e1, p))
                created.nb[2] = outside
                if outside is not None:
                    for j in range(3):
                        if outside.nb[j] is tri:
                            outside.nb[j] = created
                new_tris.append(created)
                by_start[e0] = created
                by_end[e1] = created
        for created in new_tris:
            e0, e1, _ = created.v
            created.nb[0] = by_start[e1]  # (e1, p) 건너
            created.nb[1] = by_end[e0]    # (p, e0) 건너

        for tri in cavity.values():
            tri.children = new_tris
        self.hint = new_tris[0]

    def alive(self) -> List[_Tri]:
        """살아있는 삼각형 (ghost 포함)"""
        found, seen = [], set()
        stack = [self.hint]
        while stack:
            tri = stack.pop()
            if tri is None or id(tri) in seen:
                continue
            seen.add(id(tri))
            found.append(tri)
            stack.extend(tri.nb)
        return found


def _collinear_chain(points: PointSet) -> Triangulation:
    order = sorted(range(len(points)), key=lambda i: points[i].key)
    edges = sorted((min(a, b), max(a, b)) for a, b in zip(order, order[1:]))
    return Triangulation(points=points, edges=edges, collinear=True)


def triangulate(points: PointSet, seed: int = 0) -> Triangulation:
    """
    Delaunay 삼각분할을 계산합니다 (기대 O(n log n)).

    Args:
        points: 서로 다른 점 2개 이상
        seed: 삽입 순서 섞기 난수 시드 (같은 입력 + 같은 시드 -> 같은 결과)

    Returns:
        Triangulation (모든 점이 한 직선 위면 경로 간선만 있는 퇴화 체인)

    Raises:
        TooFewPointsError: n < 2
        DuplicateInputError: 중복 좌표

    Example:
        >>> t = triangulate(PointSet.from_coords([(0, 0), (1, 0), (0, 1)]))
        >>> t.edges
        [(0, 1), (0, 2), (1, 2)]
    """
    n = len(points)
    if n < 2:
        raise TooFewPointsError(f"삼각분할에는 점이 2개 이상 필요합니다 (n={n})")
    points.check_distinct()

    order = list(range(n))
    random.Random(seed).shuffle(order)
    builder = _Builder(points.points)

    a, b = order[0], order[1]
    third = next((k for k in order[2:] if builder._orient(a, b, k) != 0), None)
    if third is None:
        logger.debug(f"📐 모든 점이 한 직선 위에 있습니다 (n={n})")
        return _collinear_chain(points)

    builder.start(a, b, third)
    for k in order[2:]:
        if k != third:
            builder.insert(k)

    alive = [tri for tri in builder.alive() if not tri.is_ghost]
    alive.sort(key=lambda tri: tuple(sorted(tri.v)))
    index = {id(tri): i for i, tri in enumerate(alive)}
    triangles = [tri.v for tri in alive]
    neighbors = [
        tuple(index.get(id(nbr), -1) if nbr is not None else -1 for nbr in tri.nb)
        for tri in alive
    ]
    edge_set = set()
    for u, v, w in triangles:
        for i, j in ((u, v), (v, w), (w, u)):
            edge_set.add((min(i, j), max(i, j)))
    result = Triangulation(
        points=points,
        triangles=triangles,
        neighbors=neighbors,
        edges=sorted(edge_set),
    )
    logger.debug(f"📐 Delaunay: 점 {n}개, 삼각형 {len(triangles)}개, 간선 {len(result.edges)}개")
    return result


def edges(t: Triangulation) -> List[Edge]:
    """간선 목록 (i < j, 사전식 정렬)"""
    return sorted({(min(i, j), max(i, j)) for i, j in t.edges})


def _validate_chain(t: Triangulation) -> bool:
    pts = t.points
    n = len(pts)
    if t.triangles or len(t.edges) != n - 1:
        return False
    a, b = pts[0], next((p for p in pts if p.key != pts[0].key), None)
    if b is None or any(orient2d(a, b, p) != 0 for p in pts):
        return False
    order = sorted(range(n), key=lambda i: pts[i].key)
    expected = sorted((min(u, v), max(u, v)) for u, v in zip(order, order[1:]))
    return edges(t) == expected


def validate(t: Triangulation) -> bool:
    """
    구조 불변식과 빈 외접원 조건을 정확히 검사합니다 (O(n · 삼각형 수)).

    검사 항목:
    - 모든 삼각형이 반시계(넓이 양수)이고 모든 점을 사용
    - 내부 간선은 삼각형 2개, 껍질 간선은 1개에 속함
    - 껍질이 볼록하고 간선 목록이 삼각형 간선과 일치, 간선 수 <= 3n - 6
    - 모든 삼각형의 외접원 안에 다른 점이 없음
    """
    pts = t.points
    n = len(pts)
    if n < 2:
        return False
    if not t.triangles:
        return _validate_chain(t)

    incidence: Dict[Edge, int] = {}
    directed: Dict[Tuple[int, int], int] = {}
    used = set()
    for tri in t.triangles:
        u, v, w = tri
        if len({u, v, w}) != 3 or not all(0 <= k < n for k in tri):
            return False
        if orient2d(pts[u], pts[v], pts[w]) <= 0:
            return False
        used.update(tri)
        for i, j in ((u, v), (v, w), (w, u)):
            if (i, j) in directed:
                return False
            directed[(i, j)] = 1
            key = (min(i, j), max(i, j))
            incidence[key] = incidence.get(key, 0) + 1
    if len(used) != n:
        return False
    if any(count > 2 for count in incidence.values()):
        return False
    if sorted(incidence) != edges(t):
        return False
    if n >= 3 and len(t.edges) > 3 * n - 6:
        return False

    hull = [(i, j) for (i, j) in directed if (j, i) not in directed]
    for i, j in hull:
        # 껍질 간선은 삼각형이 왼쪽, 나머지 점은 모두 왼쪽 또는 직선 위
        if any(orient2d(pts[i], pts[j], p) < 0 for p in pts):
            return False
    hull_vertices = {i for i, _ in hull}
    if len(t.triangles) != 2 * n - len(hull_vertices) - 2:
        return False

    for u, v, w in t.triangles:
        a, b, c = pts[u], pts[v], pts[w]
        for k, p in enumerate(pts):
            if k in (u, v, w):
                continue
            if in_circle_oriented(a, b, c, p) > 0:
                return False
    return True
