"""β-skeleton 계산 알고리즘

- brute_force: 정의를 그대로 실행하는 O(n³) 기준(oracle), 모든 β / variant 지원
- dt_filter: Delaunay 간선마다 모든 점을 검사하는 O(n·|DT|) (β > 2)
- batched: Delaunay 간선을 크기 m 그룹으로 나누어 그룹마다 사다리꼴 분할을 만들고
  쌍대 그래프 순회로 점유된 lune을 표시 (β > 2)
- gabriel_graph / relative_neighborhood_graph: 닫힌 1-skeleton / 열린 2-skeleton
"""

import logging
import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np

from ..common.errors import (
    PreconditionError,
    SubdivisionError,
    TooFewPointsError,
    UnsupportedRangeError,
    VerificationError,
)
from ..common.progress_utils import create_progress_updater, timed
from ..geometry.models import BBox, Point, PointSet
from .curves import VertexPool, boundary_curves
from .delaunay import Triangulation, triangulate
from .models import AlgoConfig, Algorithm, Beta, Closure, Edge, RunStats, SkeletonGraph, Variant
from .regions import LuneRegion, Region, StripRegion, expanded_point_box, make_region
from .subdivision import build
from .traversal import direct_mark, dual_traverse_mark

logger = logging.getLogger(__name__)

TWO = Beta.of(2)


# ===== 공통 =====


def _prepare(points: PointSet) -> None:
    if len(points) < 2:
        raise TooFewPointsError(f"점이 2개 이상 필요합니다 (n={len(points)})")
    points.check_distinct()


def _require_above_two(beta: Beta, name: str) -> None:
    if not beta > TWO:
        raise UnsupportedRangeError(f"{name} requires beta > 2 (beta={beta})")


def _new_stats(algorithm: Algorithm, beta: Beta, closure: Closure, variant: Variant = Variant.LUNE) -> RunStats:
    return RunStats(
        algorithm=algorithm.value,
        beta=str(beta),
        closure=closure.value,
        variant=variant.value,
    )


def float_margin(region: Region, xs: np.ndarray, ys: np.ndarray) -> Optional[np.ndarray]:
    """영역 안쪽이면 양수인 float 여유값 (lune / strip 외에는 None)"""
    if isinstance(region, LuneRegion):
        r_sq = float(region.d1.r_sq)
        margins = []
        for disc in (region.d1, region.d2):
            dx = xs - disc.center.fx
            dy = ys - disc.center.fy
            margins.append(r_sq - (dx * dx + dy * dy))
        return np.minimum(margins[0], margins[1])
    if isinstance(region, StripRegion):
        x, y = region.x, region.y
        dx, dy = y.fx - x.fx, y.fy - x.fy
        t = (xs - x.fx) * dx + (ys - x.fy) * dy
        return np.minimum(t, dx * dx + dy * dy - t)
    return None


def _margin_tolerance(region: Region, xs: np.ndarray, ys: np.ndarray) -> float:
    extent = max(float(np.max(np.abs(xs))), float(np.max(np.abs(ys))), 1.0)
    if isinstance(region, LuneRegion):
        extent += region.d1.radius + max(abs(region.d1.center.fx), abs(region.d1.center.fy))
    return 1e-10 * extent * extent


def first_blocker(
    region: Region,
    endpoints: Tuple[int, int],
    points: Sequence[Point],
    xs: np.ndarray,
    ys: np.ndarray,
    closure: Closure,
) -> Optional[int]:
    """
    영역을 막는 첫 번째 점 index (없으면 None)

    float 여유값으로 후보를 고르고, 후보는 깊이 순으로 정확히 재검증합니다.
    끝점 제외는 index 기준입니다.
    """
    margin = float_margin(region, xs, ys)
    if margin is None:
        candidates = range(len(points))
    else:
        tol = _margin_tolerance(region, xs, ys)
        near = np.flatnonzero(margin > -tol)
        candidates = near[np.argsort(-margin[near], kind="stable")].tolist()
    for k in candidates:
        if k in endpoints:
            continue
        if region.contains(points[k], closure):
            return k
    return None


def _filter_candidates(
    points: PointSet,
    candidates: Sequence[Edge],
    beta: Beta,
    closure: Closure,
    variant: Variant = Variant.LUNE,
) -> List[Edge]:
    pts = points.points
    xs, ys = points.float_arrays()
    kept = []
    for i, j in candidates:
        region = make_region(pts[i], pts[j], beta, variant)
        if first_blocker(region, (i, j), pts, xs, ys, closure) is None:
            kept.append((i, j))
    return kept


# ===== brute force =====


def brute_force(
    points: PointSet,
    beta,
    variant: Variant = Variant.LUNE,
    closure: Closure = Closure.OPEN,
) -> SkeletonGraph:
    """
    정의를 그대로 실행하는 β-skeleton (모든 점 쌍 × 모든 점, O(n³))

    모든 β와 두 variant를 지원하는 정확한 기준(oracle)입니다.

    Args:
        points: 서로 다른 점 2개 이상
        beta: β (0 이상, 무한대 허용)
        variant: lune 기반 / 원 기반 (원 기반은 β >= 1)
        closure: 경계 포함 여부

    Returns:
        SkeletonGraph

    Raises:
        DuplicateInputError, TooFewPointsError, UnsupportedVariantError

    Example:
        >>> square = PointSet.from_coords([(0, 0), (1, 0), (1, 1), (0, 1)])
        >>> brute_force(square, "inf").edges
        [(0, 1), (0, 3), (1, 2), (2, 3)]
    """
    beta = Beta.of(beta)
    variant = Variant(variant)
    closure = Closure(closure)
    _prepare(points)
    stats = _new_stats(Algorithm.BRUTE_FORCE, beta, closure, variant)
    pts = points.points
    n = len(pts)

    edges: List[Edge] = []
    with timed(stats, "filter"):
        for i in range(n):
            for j in range(i + 1, n):
                region = make_region(pts[i], pts[j], beta, variant)
                blocked = False
                for k in range(n):
                    if k == i or k == j:
                        continue
                    if region.contains(pts[k], closure):
                        blocked = True
                        break
                if not blocked:
                    edges.append((i, j))
    stats.candidate_edges = n * (n - 1) // 2
    logger.debug(f"🔍 brute_force: n={n}, β={beta}, 간선 {len(edges)}개")
    return SkeletonGraph(n=n, edges=edges, stats=stats)


# ===== DT filter =====


def dt_filter(
    points: PointSet,
    beta,
    closure: Closure = Closure.OPEN,
    triangulation: Optional[Triangulation] = None,
    seed: int = 0,
) -> SkeletonGraph:
    """
    Delaunay 간선마다 모든 점을 검사하는 β-skeleton (β > 2, lune 기반)

    Args:
        points: 서로 다른 점 2개 이상
        beta: β > 2 (무한대 허용)
        closure: 경계 포함 여부
        triangulation: 미리 계산한 삼각분할 (없으면 계산)
        seed: 삼각분할 삽입 순서 시드

    Raises:
        UnsupportedRangeError: β <= 2
    """
    beta = Beta.of(beta)
    closure = Closure(closure)
    _require_above_two(beta, "dt-filter")
    _prepare(points)
    stats = _new_stats(Algorithm.DT_FILTER, beta, closure)

    with timed(stats, "dt"):
        tri = triangulation or triangulate(points, seed=seed)
    with timed(stats, "filter"):
        edges = _filter_candidates(points, tri.edges, beta, closure)
    stats.candidate_edges = len(tri.edges)
    stats.degenerate_input = tri.collinear
    return SkeletonGraph(n=len(points), edges=edges, stats=stats)


def gabriel_graph(points: PointSet, seed: int = 0) -> SkeletonGraph:
    """Gabriel graph (닫힌 lune 기반 1-skeleton, Delaunay 간선에서 필터링)"""
    _prepare(points)
    beta = Beta.of(1)
    stats = _new_stats(Algorithm.DT_FILTER, beta, Closure.CLOSED)
    with timed(stats, "dt"):
        tri = triangulate(points, seed=seed)
    with timed(stats, "filter"):
        edges = _filter_candidates(points, tri.edges, beta, Closure.CLOSED)
    stats.candidate_edges = len(tri.edges)
    return SkeletonGraph(n=len(points), edges=edges, stats=stats)


def relative_neighborhood_graph(points: PointSet, seed: int = 0) -> SkeletonGraph:
    """Relative neighborhood graph (열린 lune 기반 2-skeleton, Delaunay 간선에서 필터링)"""
    _prepare(points)
    beta = Beta.of(2)
    stats = _new_stats(Algorithm.DT_FILTER, beta, Closure.OPEN)
    with timed(stats, "dt"):
        tri = triangulate(points, seed=seed)
    with timed(stats, "filter"):
        edges = _filter_candidates(points, tri.edges, beta, Closure.OPEN)
    stats.candidate_edges = len(tri.edges)
    return SkeletonGraph(n=len(points), edges=edges, stats=stats)


# ===== batched =====


def choose_group_size(n: int) -> int:
    """
    그룹 크기 m = max(1, ceil(sqrt(n · log2(max(n, 2)))))

    Example:
        >>> choose_group_size(1024)
        102
    """
    if n < 1:
        raise PreconditionError(f"n은 1 이상이어야 합니다: {n}")
    return max(1, math.ceil(math.sqrt(n * math.log2(max(n, 2)))))


@dataclass
class GroupResult:
    """그룹 하나의 처리 결과"""
    survivors: List[Edge]
    ambiguous_points: int = 0
    fallback: bool = False
    precondition_failed: bool = False
    timings: Dict[str, float] = field(default_factory=dict)

    def add_time(self, phase: str, seconds: float) -> None:
        self.timings[phase] = self.timings.get(phase, 0.0) + max(0.0, seconds)


def group_bbox(points: Sequence[Point], regions: Sequence[Region]) -> BBox:
    """모든 점과 그룹의 lune을 엄격히 포함하는 bounding box"""
    box = expanded_point_box(BBox.around(points))
    for region in regions:
        if isinstance(region, LuneRegion):
            xmin, ymin, xmax, ymax = region.float_bbox()
            box = box.union(BBox(Fraction(xmin), Fraction(ymin), Fraction(xmax), Fraction(ymax)))
    return box.expanded(Fraction(1, 100), Fraction(1, 100))


def process_group(
    points: Sequence[Point],
    group: Sequence[Edge],
    beta: Beta,
    closure: Closure,
    seed: int = 0,
    check_invariant: bool = False,
) -> GroupResult:
    """
    간선 그룹 하나를 처리합니다.

    영역 생성 -> 경계 곡선 분해 -> 사다리꼴 분할 -> 모든 점 위치 찾기 -> 쌍대 그래프 순회.
    분할이 수치적으로 어긋나면(SubdivisionError) 정확한 직접 검사로 대체합니다.
    """
    result = GroupResult(survivors=[])
    regions = [make_region(points[i], points[j], beta) for i, j in group]
    endpoint_of = [tuple(edge) for edge in group]
    try:
        with timed(result, "build"):
            box = group_bbox(points, regions)
            pool = VertexPool(1e-9 * box.scale)
            curves = []
            for owner, region in enumerate(regions):
                curves.extend(boundary_curves(region, box, owner=owner, pool=pool))
            trap_map = build(curves, box, seed=seed, pool=pool, regions=dict(enumerate(regions)))
        with timed(result, "locate"):
            trap_map.assign_points(points)
        with timed(result, "traverse"):
            occupied = dual_traverse_mark(
                trap_map, regions, endpoint_of, points, closure, check_invariant=check_invariant)
        result.ambiguous_points = len(trap_map.ambiguous)
    except SubdivisionError as e:
        logger.warning(f"⚠️ 그룹 분할 실패, 직접 검사로 대체합니다: {e}")
        result.fallback = True
        with timed(result, "traverse"):
            occupied = direct_mark(regions, endpoint_of, points, closure)
    except PreconditionError as e:
        # bbox / 곡선 분해 전제 조건 위반은 내부 오류
        logger.error(f"❌ 그룹 전제 조건 위반, 직접 검사로 대체합니다: {e}")
        result.fallback = True
        result.precondition_failed = True
        with timed(result, "traverse"):
            occupied = direct_mark(regions, endpoint_of, points, closure)
    result.survivors = [edge for edge, taken in zip(group, occupied) if not taken]
    return result


_WORKER_STATE: dict = {}


def _init_worker(points: List[Point], beta: Beta, closure: Closure, check_invariant: bool) -> None:
    _WORKER_STATE.update(points=points, beta=beta, closure=closure, check_invariant=check_invariant)


def _run_worker(task: Tuple[int, List[Edge]]) -> GroupResult:
    seed, group = task
    state = _WORKER_STATE
    return process_group(
        state["points"], group, state["beta"], state["closure"], seed, state["check_invariant"])


def boundary_post_pass(
    points: PointSet,
    survivors: Sequence[Edge],
    beta: Beta,
    closure: Closure,
) -> List[Edge]:
    """닫힌 모드: 남은 간선마다 경계 위의 점을 정확히 재검사 (경계 근처 점만)"""
    if closure != Closure.CLOSED or not survivors:
        return list(survivors)
    pts = points.points
    xs, ys = points.float_arrays()
    kept = []
    for i, j in survivors:
        region = make_region(pts[i], pts[j], beta)
        margin = float_margin(region, xs, ys)
        tol = _margin_tolerance(region, xs, ys)
        near = np.flatnonzero(np.abs(margin) <= tol) if margin is not None else range(len(pts))
        blocked = any(k not in (i, j) and region.contains(pts[k], closure) for k in near)
        if not blocked:
            kept.append((i, j))
    return kept


def batched(
    points: PointSet,
    beta,
    closure: Closure = Closure.OPEN,
    cfg: Optional[AlgoConfig] = None,
    progress: Optional[Callable[[str], None]] = None,
) -> SkeletonGraph:
    """
    Delaunay 간선을 그룹으로 나누어 계산하는 β-skeleton (β > 2, lune 기반)

    그룹 크기 m은 choose_group_size(n) (또는 cfg.group_size_override)이고,
    그룹마다 O(m²) 구조를 만들어 쓰고 버리므로 최대 메모리는 O(n + m²)입니다.
    결과는 dt_filter와 같습니다.

    Args:
        points: 서로 다른 점 2개 이상
        beta: β > 2 (무한대 허용)
        closure: 경계 포함 여부
        cfg: 그룹 크기 / 병렬 처리 / 검증 설정
        progress: 그룹 진행 상태 콜백

    Raises:
        UnsupportedRangeError: β <= 2
        VerificationError: paranoid_verify에서 dt_filter와 결과가 다를 때
    """
    beta = Beta.of(beta)
    closure = Closure(closure)
    cfg = cfg or AlgoConfig()
    _require_above_two(beta, "batched")
    _prepare(points)
    stats = _new_stats(Algorithm.BATCHED, beta, closure)
    update_progress = create_progress_updater(progress)
    n = len(points)

    with timed(stats, "dt"):
        tri = triangulate(points, seed=cfg.rng_seed)
    candidates = sorted(tri.edges)
    m = cfg.group_size_override or choose_group_size(n)
    groups = [candidates[k:k + m] for k in range(0, len(candidates), m)]
    stats.m = m
    stats.group_count = len(groups)
    stats.candidate_edges = len(candidates)
    stats.degenerate_input = tri.collinear
    update_progress(f"DT 완료: 간선 {len(candidates)}개, 그룹 {len(groups)}개 (m={m})")

    tasks = [(cfg.rng_seed + index, group) for index, group in enumerate(groups)]
    if cfg.parallel_groups and len(groups) > 1:
        workers = cfg.workers or os.cpu_count() or 1
        with ProcessPoolExecutor(
            max_workers=workers,
            initializer=_init_worker,
            initargs=(points.points, beta, closure, cfg.debug_invariants),
        ) as executor:
            results = list(executor.map(_run_worker, tasks))
    else:
        results = []
        for index, (seed, group) in enumerate(tasks):
            results.append(process_group(
                points.points, group, beta, closure, seed, cfg.debug_invariants))
            update_progress(f"그룹 {index + 1}/{len(groups)} 완료")

    survivors: List[Edge] = []
    for result in results:
        survivors.extend(result.survivors)
        stats.ambiguous_points += result.ambiguous_points
        stats.fallback_groups += int(result.fallback)
        stats.precondition_groups += int(result.precondition_failed)
        for phase, seconds in result.timings.items():
            stats.add_time(phase, seconds)

    with timed(stats, "postpass"):
        survivors = boundary_post_pass(points, survivors, beta, closure)
    graph = SkeletonGraph(n=n, edges=survivors, stats=stats)

    if cfg.paranoid_verify:
        with timed(stats, "verify"):
            expected = dt_filter(points, beta, closure, triangulation=tri)
        diff = sorted(graph.edge_set ^ expected.edge_set)
        if diff:
            raise VerificationError(
                f"batched 결과가 dt-filter와 다릅니다 (차이 {len(diff)}개, 첫 차이 {diff[0]})",
                first_diff=diff[0],
            )
    if stats.fallback_groups:
        logger.warning(f"⚠️ {stats.fallback_groups}개 그룹이 직접 검사로 처리되었습니다")
    if stats.precondition_groups:
        logger.error(f"❌ {stats.precondition_groups}개 그룹에서 전제 조건 위반이 발생했습니다")
    logger.info(
        f"✅ batched: n={n}, β={beta}, {closure.value}, 간선 {len(graph.edges)}개 "
        f"(후보 {len(candidates)}, 그룹 {len(groups)}, m={m})")
    return graph


def compute(
    points: PointSet,
    beta,
    algorithm: Algorithm = Algorithm.AUTO,
    variant: Variant = Variant.LUNE,
    closure: Closure = Closure.OPEN,
    cfg: Optional[AlgoConfig] = None,
    progress: Optional[Callable[[str], None]] = None,
) -> SkeletonGraph:
    """
    알고리즘 선택 진입점 (auto: β > 2 lune 기반이면 batched, 아니면 brute_force)

    Raises:
        UnsupportedRangeError: batched / dt-filter에 β <= 2 또는 원 기반을 요청한 경우
    """
    beta = Beta.of(beta)
    algorithm = Algorithm(algorithm)
    variant = Variant(variant)
    if algorithm == Algorithm.AUTO:
        algorithm = Algorithm.BATCHED if (beta > TWO and variant == Variant.LUNE) else Algorithm.BRUTE_FORCE
    if algorithm == Algorithm.BRUTE_FORCE:
        return brute_force(points, beta, variant, closure)
    if variant != Variant.LUNE:
        raise UnsupportedRangeError(f"{algorithm.value} requires the lune-based variant")
    if algorithm == Algorithm.DT_FILTER:
        seed = cfg.rng_seed if cfg else 0
        return dt_filter(points, beta, closure, seed=seed)
    return batched(points, beta, closure, cfg, progress)
