"""기하 기본 타입 (Point, Circle, BBox, PointSet)

좌표는 fractions.Fraction으로 정확하게 보관하고, 빠른 필터링을 위해
float 그림자(fx, fy)를 함께 둡니다.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Iterator, List, Optional, Sequence, Tuple

import numpy as np

from ..common.errors import DuplicateInputError, PreconditionError

from .numbers import Coord, to_coord


@dataclass(frozen=True)
class Point:
  """입력 점 (정확한 유리수 좌표 + float 그림자)"""

  x: Fraction
  y: Fraction
  id: Optional[int] = None
  fx: float = field(init=False, repr=False, compare=False)
  fy: float = field(init=False, repr=False, compare=False)

  def __post_init__(self):
    object.__setattr__(self, "x", to_coord(self.x))
    object.__setattr__(self, "y", to_coord(self.y))
    object.__setattr__(self, "fx", float(self.x))
    object.__setattr__(self, "fy", float(self.y))

  @property
  def key(self) -> Tuple[Fraction, Fraction]:
    """좌표만으로 만든 비교 키 (id 무시)"""
    return (self.x, self.y)

  def with_id(self, index: int) -> "Point":
    return Point(self.x, self.y, index)

  def dist_sq(self, other: "Point") -> Fraction:
    dx = self.x - other.x
    dy = self.y - other.y
    return dx * dx + dy * dy

  def to_list(self) -> List[str]:
    return [str(self.x), str(self.y)]


@dataclass(frozen=True)
class Circle:
  """원 (유리수 중심 + 제곱 반지름)"""

  center: Point
  r_sq: Fraction

  def __post_init__(self):
    object.__setattr__(self, "r_sq", to_coord(self.r_sq))
    if self.r_sq <= 0:
      raise PreconditionError(f"r_sq는 양수여야 합니다: {self.r_sq}")

  @property
  def radius(self) -> float:
    return float(self.r_sq) ** 0.5

  @property
  def key(self) -> Tuple[Fraction, Fraction, Fraction]:
    return (self.center.x, self.center.y, self.r_sq)


@dataclass(frozen=True)
class BBox:
  """축 정렬 사각형 (정확한 유리수 경계)"""

  xmin: Fraction
  ymin: Fraction
  xmax: Fraction
  ymax: Fraction

  def __post_init__(self):
    for name in ("xmin", "ymin", "xmax", "ymax"):
      object.__setattr__(self, name, to_coord(getattr(self, name)))
    if not (self.xmin < self.xmax and self.ymin < self.ymax):
      raise PreconditionError(f"빈 bounding box: {self}")

  @classmethod
  def around(cls, points: Iterable[Point]) -> "BBox":
    """점들의 최소 포함 사각형 (한 점/한 직선이면 폭 1로 보정)"""
    pts = list(points)
    if not pts:
      raise PreconditionError("빈 점 집합의 bounding box")
    xs = [p.x for p in pts]
    ys = [p.y for p in pts]
    xmin, xmax, ymin, ymax = min(xs), max(xs), min(ys), max(ys)
    if xmin == xmax:
      xmin, xmax = xmin - Fraction(1, 2), xmax + Fraction(1, 2)
    if ymin == ymax:
      ymin, ymax = ymin - Fraction(1, 2), ymax + Fraction(1, 2)
    return cls(xmin, ymin, xmax, ymax)

  def expanded(self, ratio: Fraction = Fraction(1, 10), margin: Fraction = Fraction(1)) -> "BBox":
    """각 변을 (ratio × 크기 + margin)만큼 확장"""
    dx = (self.xmax - self.xmin) * ratio + margin
    dy = (self.ymax - self.ymin) * ratio + margin
    return BBox(self.xmin - dx, self.ymin - dy, self.xmax + dx, self.ymax + dy)

  def union(self, other: "BBox") -> "BBox":
    return BBox(
        min(self.xmin, other.xmin),
        min(self.ymin, other.ymin),
        max(self.xmax, other.xmax),
        max(self.ymax, other.ymax),
    )

  def contains_strictly(self, p: Point) -> bool:
    return self.xmin < p.x < self.xmax and self.ymin < p.y < self.ymax

  def contains_box_strictly(self, other: "BBox") -> bool:
    return (self.xmin < other.xmin and other.xmax < self.xmax
            and self.ymin < other.ymin and other.ymax < self.ymax)

  @property
  def scale(self) -> float:
    """좌표 크기 척도 (허용 오차 계산용)"""
    return max(abs(float(v)) for v in (self.xmin, self.ymin, self.xmax, self.ymax)) + 1.0

  def as_floats(self) -> Tuple[float, float, float, float]:
    return (float(self.xmin), float(self.ymin), float(self.xmax), float(self.ymax))

  def to_dict(self) -> dict:
    return {
        "xmin": str(self.xmin),
        "ymin": str(self.ymin),
        "xmax": str(self.xmax),
        "ymax": str(self.ymax),
    }


@dataclass
class PointSet:
  """index 정체성을 가진 입력 점 집합"""

  points: List[Point]

  def __post_init__(self):
    self.points = [p if p.id == i else p.with_id(i) for i, p in enumerate(self.points)]

  @classmethod
  def from_coords(cls, coords: Sequence[Tuple[Coord, Coord]]) -> "PointSet":
    return cls([Point(x, y, i) for i, (x, y) in enumerate(coords)])

  def __len__(self) -> int:
    return len(self.points)

  def __iter__(self) -> Iterator[Point]:
    return iter(self.points)

  def __getitem__(self, index: int) -> Point:
    return self.points[index]

  def check_distinct(self) -> None:
    """중복 좌표가 있으면 DuplicateInputError"""
    seen = {}
    for p in self.points:
      if p.key in seen:
        first = seen[p.key]
        raise DuplicateInputError(
            f"중복 좌표: 점 {first}와 점 {p.id}가 ({p.x}, {p.y})로 같습니다",
            first=first,
            second=p.id,
        )
      seen[p.key] = p.id

  def bbox(self) -> BBox:
    return BBox.around(self.points)

  def float_arrays(self):
    """numpy float 배열 (xs, ys)"""
    xs = np.fromiter((p.fx for p in self.points), dtype=float, count=len(self.points))
    ys = np.fromiter((p.fy for p in self.points), dtype=float, count=len(self.points))
    return xs, ys

  def to_dict(self) -> dict:
    return {"n": len(self.points), "points": [p.to_list() for p in self.points]}
