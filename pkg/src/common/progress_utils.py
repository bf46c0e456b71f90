"""진행 상태 업데이트 / 단계별 시간 측정 유틸리티"""

import logging
import time
from contextlib import contextmanager
from typing import Callable, Iterator, Optional, Protocol

logger = logging.getLogger(__name__)


class TimingSink(Protocol):
  """add_time(phase, seconds)를 가진 통계 객체 (RunStats 등)"""

  def add_time(self, phase: str, seconds: float) -> None:
    ...


def safe_progress_update(
    progress_callback: Optional[Callable[[str], None]],
    status: str
) -> None:
  """
  진행 상태 콜백을 안전하게 호출합니다.

  콜백 실행 중 에러가 발생해도 계산 흐름에 영향을 주지 않습니다.

  Args:
      progress_callback: 진행 상태를 받는 콜백 함수
      status: 현재 상태 메시지

  Example:
      >>> safe_progress_update(print, "그룹 3/10 완료")
  """
  if not progress_callback:
    return

  try:
    progress_callback(status)
  except Exception as e:
    logger.warning(f"⚠️ Progress callback failed: {e}")


def create_progress_updater(
    progress_callback: Optional[Callable[[str], None]]
) -> Callable[[str], None]:
  """
  진행 상태 업데이트 함수를 생성합니다.

  Returns:
      진행 상태를 안전하게 업데이트하는 함수

  Example:
      >>> update_progress = create_progress_updater(callback)
      >>> update_progress("DT 완료")
  """
  def update_progress(status: str) -> None:
    safe_progress_update(progress_callback, status)

  return update_progress


@contextmanager
def timed(sink: Optional[TimingSink], phase: str) -> Iterator[None]:
  """블록 실행 시간을 sink.add_time(phase, 초)로 누적"""
  started = time.perf_counter()
  try:
    yield
  finally:
    if sink is not None:
      sink.add_time(phase, time.perf_counter() - started)
