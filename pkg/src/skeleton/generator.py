"""테스트 / 벤치마크용 점 집합 생성 (시드 고정, 중복 없음)"""

import logging
import math
from fractions import Fraction
from typing import List, Set, Tuple

import numpy as np

from ..common.errors import PreconditionError
from ..common.types import GenMode
from ..geometry.models import Point, PointSet

logger = logging.getLogger(__name__)

DIGITS = 9  # 생성 좌표의 소수 자릿수 (정확한 10진수)
_SCALE = 10 ** DIGITS


def _quantize(values: np.ndarray) -> np.ndarray:
    return np.rint(values * _SCALE).astype(np.int64)


def _from_grid_units(pairs: List[Tuple[int, int]]) -> PointSet:
    return PointSet([Point(Fraction(x, _SCALE), Fraction(y, _SCALE), i) for i, (x, y) in enumerate(pairs)])


def _unique_draws(rng: np.random.Generator, n: int, draw) -> List[Tuple[int, int]]:
    chosen: List[Tuple[int, int]] = []
    seen: Set[Tuple[int, int]] = set()
    while len(chosen) < n:
        xs, ys = draw(rng, n - len(chosen))
        for pair in zip(_quantize(xs).tolist(), _quantize(ys).tolist()):
            if pair not in seen:
                seen.add(pair)
                chosen.append(pair)
    return chosen


def uniform_points(n: int, seed: int = 42) -> PointSet:
    """
    단위 정사각형 [0, 1)² 균등 분포 점 n개 (소수 9자리)

    Example:
        >>> uniform_points(100, seed=7) == uniform_points(100, seed=7)
        True
    """
    _check(n)
    rng = np.random.default_rng(seed)
    pairs = _unique_draws(rng, n, lambda g, k: (g.random(k), g.random(k)))
    return _from_grid_units(pairs)


def circle_points(n: int, seed: int = 42) -> PointSet:
    """중심 (1/2, 1/2), 반지름 1/2 원 위(근사) 무작위 점 n개"""
    _check(n)
    rng = np.random.default_rng(seed)

    def draw(g: np.random.Generator, k: int):
        theta = g.random(k) * 2.0 * math.pi
        return 0.5 + 0.5 * np.cos(theta), 0.5 + 0.5 * np.sin(theta)

    return _from_grid_units(_unique_draws(rng, n, draw))


def grid_points(n: int) -> PointSet:
    """
    단위 정사각형 위 k×k 격자의 앞 n개 점 (k = ceil(sqrt(n)))

    Example:
        >>> [p.to_list() for p in grid_points(4)]
        [['0', '0'], ['1', '0'], ['0', '1'], ['1', '1']]
    """
    _check(n)
    k = max(1, math.ceil(math.sqrt(n)))
    step = Fraction(1, k - 1) if k > 1 else Fraction(0)
    points = []
    for index in range(n):
        row, col = divmod(index, k)
        points.append(Point(col * step, row * step, index))
    return PointSet(points)


def generate(n: int, mode: GenMode = "uniform", seed: int = 42) -> PointSet:
    """모드별 점 집합 생성 (uniform / grid / circle)"""
    if mode == "uniform":
        return uniform_points(n, seed)
    if mode == "grid":
        return grid_points(n)
    if mode == "circle":
        return circle_points(n, seed)
    raise PreconditionError(f"지원하지 않는 생성 모드: {mode}")


def _check(n: int) -> None:
    if n < 1:
        raise PreconditionError(f"n은 1 이상이어야 합니다: {n}")
