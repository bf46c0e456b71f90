"""Tests package

SKEL_SLOW_TESTS=1 이면 무작위 비교 테스트를 전체 규모로 실행합니다.
"""

import os

SLOW_TESTS = os.getenv("SKEL_SLOW_TESTS", "").lower() in ("1", "true", "yes")


def sweep_size(quick: int, full: int) -> int:
    """기본 실행은 quick개, SKEL_SLOW_TESTS 설정 시 full개"""
    return full if SLOW_TESTS else quick
