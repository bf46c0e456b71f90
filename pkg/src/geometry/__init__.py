"""정확한 기하 커널 (좌표, predicate)"""

from .models import BBox, Circle, Point, PointSet
from .numbers import format_coord, parse_coord, to_coord
from .predicates import (
  in_circle,
  in_circle_exact,
  orient2d,
  orient2d_exact,
  side_of_circle,
  side_of_circle_exact,
)

__all__ = [
  "BBox",
  "Circle",
  "Point",
  "PointSet",
  "format_coord",
  "in_circle",
  "in_circle_exact",
  "orient2d",
  "orient2d_exact",
  "parse_coord",
  "side_of_circle",
  "side_of_circle_exact",
  "to_coord",
]
