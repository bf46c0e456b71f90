"""정확한 기하 predicate (float 필터 + 유리수 fallback)

float 그림자로 먼저 계산하고, 결과가 오차 한계 안에 있으면 Fraction으로
다시 계산합니다. 오차 한계는 입력 반올림까지 포함하도록 보수적으로 잡습니다.
"""

from fractions import Fraction

from ..common.errors import DegenerateInputError

from .models import Circle, Point
from .numbers import sign

# unit roundoff 2^-53
_U = 2.0 ** -53
_ORIENT_BOUND = 16.0 * _U
_INCIRCLE_BOUND = 64.0 * _U
_SIDE_BOUND = 16.0 * _U


def orient2d_exact(p: Point, q: Point, r: Point) -> int:
  det = (q.x - p.x) * (r.y - p.y) - (q.y - p.y) * (r.x - p.x)
  return sign(det)


def orient2d(p: Point, q: Point, r: Point) -> int:
  """
  삼각형 pqr의 부호 있는 넓이의 부호

  Returns:
      +1 반시계, 0 공선, -1 시계

  Example:
      >>> orient2d(Point(0, 0), Point(1, 0), Point(0, 1))
      1
  """
  left = (q.fx - p.fx) * (r.fy - p.fy)
  right = (q.fy - p.fy) * (r.fx - p.fx)
  det = left - right
  permanent = ((abs(q.fx) + abs(p.fx)) * (abs(r.fy) + abs(p.fy))
               + (abs(q.fy) + abs(p.fy)) * (abs(r.fx) + abs(p.fx)))
  if abs(det) > _ORIENT_BOUND * permanent:
    return 1 if det > 0 else -1
  return orient2d_exact(p, q, r)


def _in_circle_det_exact(a: Point, b: Point, c: Point, p: Point) -> Fraction:
  adx, ady = a.x - p.x, a.y - p.y
  bdx, bdy = b.x - p.x, b.y - p.y
  cdx, cdy = c.x - p.x, c.y - p.y
  alift = adx * adx + ady * ady
  blift = bdx * bdx + bdy * bdy
  clift = cdx * cdx + cdy * cdy
  return (alift * (bdx * cdy - cdx * bdy)
          + blift * (cdx * ady - adx * cdy)
          + clift * (adx * bdy - bdx * ady))


def in_circle_exact(a: Point, b: Point, c: Point, p: Point) -> int:
  orientation = orient2d_exact(a, b, c)
  if orientation == 0:
    raise DegenerateInputError("in_circle: a, b, c가 한 직선 위에 있습니다")
  return sign(_in_circle_det_exact(a, b, c, p)) * orientation


def _in_circle_det_filtered(a: Point, b: Point, c: Point, p: Point):
  """float 행렬식과 오차 한계 (판정 불가 시 None)"""
  adx, ady = a.fx - p.fx, a.fy - p.fy
  bdx, bdy = b.fx - p.fx, b.fy - p.fy
  cdx, cdy = c.fx - p.fx, c.fy - p.fy
  alift = adx * adx + ady * ady
  blift = bdx * bdx + bdy * bdy
  clift = cdx * cdx + cdy * cdy
  det = (alift * (bdx * cdy - cdx * bdy)
         + blift * (cdx * ady - adx * cdy)
         + clift * (adx * bdy - bdx * ady))

  sax, say = abs(a.fx) + abs(p.fx), abs(a.fy) + abs(p.fy)
  sbx, sby = abs(b.fx) + abs(p.fx), abs(b.fy) + abs(p.fy)
  scx, scy = abs(c.fx) + abs(p.fx), abs(c.fy) + abs(p.fy)
  permanent = ((sax * sax + say * say) * (sbx * scy + scx * sby)
               + (sbx * sbx + sby * sby) * (scx * say + sax * scy)
               + (scx * scx + scy * scy) * (sax * sby + sbx * say))
  if abs(det) > _INCIRCLE_BOUND * permanent:
    return 1 if det > 0 else -1
  return None


def in_circle(a: Point, b: Point, c: Point, p: Point) -> int:
  """
  p가 삼각형 abc의 외접원 안(+1) / 위(0) / 밖(-1)인지 판정

  abc의 방향은 내부에서 정규화하므로 꼭짓점 순서와 무관합니다.

  Raises:
      DegenerateInputError: a, b, c가 공선인 경우

  Example:
      >>> in_circle(Point(1, 0), Point(0, 1), Point(-1, 0), Point(0, 0))
      1
  """
  orientation = orient2d(a, b, c)
  if orientation == 0:
    raise DegenerateInputError("in_circle: a, b, c가 한 직선 위에 있습니다")
  filtered = _in_circle_det_filtered(a, b, c, p)
  if filtered is None:
    filtered = sign(_in_circle_det_exact(a, b, c, p))
  return filtered * orientation


def in_circle_oriented(a: Point, b: Point, c: Point, p: Point) -> int:
  """반시계 abc 전용 빠른 경로 (방향 재계산 생략, 삼각분할 내부용)"""
  filtered = _in_circle_det_filtered(a, b, c, p)
  if filtered is None:
    return sign(_in_circle_det_exact(a, b, c, p))
  return filtered


def side_of_circle_exact(p: Point, circle: Circle) -> int:
  return sign(circle.r_sq - p.dist_sq(circle.center))


def side_of_circle(p: Point, circle: Circle) -> int:
  """
  sign(r_sq - |p - center|^2)

  Returns:
      +1 내부, 0 경계, -1 외부

  Example:
      >>> side_of_circle(Point(1, 0), Circle(Point(0, 0), 1))
      0
  """
  center = circle.center
  dx = p.fx - center.fx
  dy = p.fy - center.fy
  r_sq = float(circle.r_sq)
  value = r_sq - (dx * dx + dy * dy)
  sx = abs(p.fx) + abs(center.fx)
  sy = abs(p.fy) + abs(center.fy)
  if abs(value) > _SIDE_BOUND * (r_sq + sx * sx + sy * sy):
    return 1 if value > 0 else -1
  return side_of_circle_exact(p, circle)
