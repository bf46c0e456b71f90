"""프로젝트 전역 예외 정의

모든 예외는 ValueError를 상속하므로 기존 `except ValueError` 처리와 호환됩니다.
CLI는 예외 종류에 따라 종료 코드를 결정합니다 (cli.EXIT_CODES 참고).
"""

from typing import Optional


class SkeletonError(ValueError):
  """β-skeleton 라이브러리 기본 예외"""


class DegenerateInputError(SkeletonError):
  """퇴화 입력 (예: x = y, 세 점이 한 직선 위)"""


class DuplicateInputError(SkeletonError):
  """중복 좌표 입력"""

  def __init__(self, message: str, first: int = -1, second: int = -1):
    super().__init__(message)
    self.first = first
    self.second = second


class TooFewPointsError(SkeletonError):
  """점 개수 부족"""


class UnsupportedVariantError(SkeletonError):
  """지원하지 않는 β / variant 조합"""


class UnsupportedRangeError(SkeletonError):
  """알고리즘이 지원하지 않는 β 범위"""


class PreconditionError(SkeletonError):
  """연산의 사전 조건 위반"""


class OutOfBoundsError(SkeletonError):
  """bounding box 밖의 질의"""


class SubdivisionError(SkeletonError):
  """사다리꼴 분할의 수치적 불일치 (그룹 단위 fallback 대상)"""


class VerificationError(SkeletonError):
  """알고리즘 간 결과 불일치"""

  def __init__(self, message: str, first_diff: Optional[tuple] = None):
    super().__init__(message)
    self.first_diff = first_diff


class InputFormatError(SkeletonError):
  """입력 파일/인자 파싱 실패"""

  def __init__(self, message: str, line: Optional[int] = None):
    if line is not None:
      message = f"line {line}: {message}"
    super().__init__(message)
    self.line = line
