"""정확한 스칼라 (Coord) 파싱/변환 유틸리티"""

import re
from decimal import Decimal, InvalidOperation
from fractions import Fraction
from typing import Union

Coord = Union[Fraction, int, str, float]

_FRACTION_RE = re.compile(r"^\s*([+-]?\d+)\s*/\s*(\d+)\s*$")


def parse_coord(text: str) -> Fraction:
  """
  10진수 / 분수 문자열을 정확한 유리수로 파싱합니다.

  반올림하지 않으므로 "0.1"은 1/10이 됩니다.

  Args:
      text: "0.1", "-3", "1e-3", "7/3" 형식 문자열

  Returns:
      Fraction

  Raises:
      ValueError: 숫자로 해석할 수 없는 경우

  Example:
      >>> parse_coord("0.1")
      Fraction(1, 10)
  """
  match = _FRACTION_RE.match(text)
  if match:
    denominator = int(match.group(2))
    if denominator == 0:
      raise ValueError(f"분모가 0입니다: {text!r}")
    return Fraction(int(match.group(1)), denominator)

  try:
    value = Decimal(text.strip())
  except InvalidOperation as e:
    raise ValueError(f"숫자가 아닙니다: {text!r}") from e

  if not value.is_finite():
    raise ValueError(f"유한한 숫자가 아닙니다: {text!r}")
  return Fraction(value)


def to_coord(value: Coord) -> Fraction:
  """Coord 호환 값을 Fraction으로 변환 (float는 이진 값 그대로 정확 변환)"""
  if isinstance(value, Fraction):
    return value
  if isinstance(value, str):
    return parse_coord(value)
  return Fraction(value)


def format_coord(value: Fraction) -> str:
  """유한 소수로 표현 가능하면 10진수, 아니면 p/q 문자열"""
  if value.denominator == 1:
    return str(value.numerator)

  denominator = value.denominator
  twos = fives = 0
  while denominator % 2 == 0:
    denominator //= 2
    twos += 1
  while denominator % 5 == 0:
    denominator //= 5
    fives += 1
  if denominator != 1:
    return f"{value.numerator}/{value.denominator}"

  digits = max(twos, fives)
  scaled = value * 10 ** digits
  text = str(abs(scaled.numerator)).rjust(digits + 1, "0")
  sign = "-" if value < 0 else ""
  return f"{sign}{text[:-digits]}.{text[-digits:]}"


def sign(value) -> int:
  """부호 (-1, 0, +1)"""
  return (value > 0) - (value < 0)
