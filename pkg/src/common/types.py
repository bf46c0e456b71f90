"""프로젝트 전역에서 사용하는 타입 정의"""

from typing import Dict, List, Literal, Optional, TypedDict


# 출력 형식 / 생성 모드
EdgeFormat = Literal["json", "tsv"]
GenMode = Literal["uniform", "grid", "circle"]
VerificationStatus = Literal["not-run", "ok", "mismatch"]


class InputDigest(TypedDict):
  """입력 점 집합 요약"""

  n: int
  bbox: Dict[str, str]  # xmin/ymin/xmax/ymax (정확한 문자열)


class RunReport(TypedDict, total=False):
  """compute --report 실행 보고서"""

  input: InputDigest
  algorithm: str
  beta: str  # 10진수 / p/q / "inf"
  closure: str
  variant: str
  edge_count: int  # 출력 간선 목록 길이와 같음
  m: int  # 그룹 크기 (batched)
  group_count: int
  fallback_groups: int
  timings: Dict[str, float]  # dt / build / locate / traverse / postpass / verify (초, 0 이상)
  verification: VerificationStatus


class VerifyOutcome(TypedDict, total=False):
  """verify 명령 결과"""

  status: VerificationStatus
  compared: List[str]  # 비교한 알고리즘 이름
  first_diff: Optional[List[int]]
  detail: str


class BenchRow(TypedDict):
  """bench 결과 한 행"""

  algorithm: str
  n: int
  reps: int
  median_s: float
  ratio: Optional[float]  # 직전 크기 대비 T(n)/T(n_prev)
  size_factor: Optional[float]  # n / n_prev
  quadratic_ref: Optional[float]  # 이차 시간 기준 size_factor²
  expected_ref: Optional[float]  # size_factor^1.5 · sqrt(log n / log n_prev)
