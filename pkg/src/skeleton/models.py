"""β-skeleton 데이터 모델 정의"""

import os
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from functools import total_ordering
from typing import Dict, List, Optional, Tuple

from ..common.errors import InputFormatError, PreconditionError
from ..geometry.numbers import format_coord, parse_coord

Edge = Tuple[int, int]


class Closure(str, Enum):
    """영역 경계 포함 여부"""
    OPEN = "open"      # 경계 위의 점은 막지 않음 (RNG = open 2-skeleton)
    CLOSED = "closed"  # 경계 위의 점도 막음 (GG = closed 1-skeleton)


class Variant(str, Enum):
    """β >= 1에서의 영역 정의 방식"""
    LUNE = "lune"
    CIRCLE = "circle"


class Algorithm(str, Enum):
    """skeleton 계산 알고리즘"""
    AUTO = "auto"
    BATCHED = "batched"
    DT_FILTER = "dt-filter"
    BRUTE_FORCE = "bruteforce"


@total_ordering
@dataclass(frozen=True)
class Beta:
    """β 파라미터 (정확한 유리수 >= 0, 또는 무한대)"""
    value: Optional[Fraction]  # None = Infinity

    def __post_init__(self):
        if self.value is not None:
            object.__setattr__(self, "value", Fraction(self.value))
            if self.value < 0:
                raise PreconditionError(f"β는 0 이상이어야 합니다: {self.value}")

    @classmethod
    def infinity(cls) -> "Beta":
        return cls(None)

    @classmethod
    def of(cls, value) -> "Beta":
        """숫자/문자열/Beta에서 생성"""
        if isinstance(value, Beta):
            return value
        if isinstance(value, str):
            return cls.parse(value)
        if isinstance(value, float) and value == float("inf"):
            return cls.infinity()
        return cls(Fraction(value))

    @classmethod
    def parse(cls, text: str) -> "Beta":
        """'inf', 'p/q', 10진수 문자열 파싱"""
        cleaned = text.strip().lower()
        if cleaned in ("inf", "infinity", "∞"):
            return cls.infinity()
        try:
            value = parse_coord(cleaned)
        except ValueError as e:
            raise InputFormatError(f"β를 해석할 수 없습니다: {text!r}") from e
        if value < 0:
            raise InputFormatError(f"β는 0 이상이어야 합니다: {text!r}")
        return cls(value)

    @property
    def is_infinite(self) -> bool:
        return self.value is None

    def __lt__(self, other: "Beta") -> bool:
        other = Beta.of(other)
        if self.is_infinite:
            return False
        if other.is_infinite:
            return True
        return self.value < other.value

    def __eq__(self, other) -> bool:
        if not isinstance(other, Beta):
            try:
                other = Beta.of(other)
            except (TypeError, ValueError):
                return NotImplemented
        return self.value == other.value

    def __hash__(self) -> int:
        return hash(self.value)

    def __str__(self) -> str:
        return "inf" if self.is_infinite else format_coord(self.value)


@dataclass
class AlgoConfig:
    """batched 알고리즘 설정"""
    group_size_override: Optional[int] = None
    parallel_groups: bool = False
    paranoid_verify: bool = False
    rng_seed: int = 42
    workers: Optional[int] = None
    debug_invariants: bool = False  # 순회 상태 불변식 검사 (작은 그룹 전용)

    def __post_init__(self):
        if self.group_size_override is not None and self.group_size_override < 1:
            raise PreconditionError(
                f"group_size_override는 1 이상이어야 합니다: {self.group_size_override}")

    @classmethod
    def from_env(cls, **overrides) -> "AlgoConfig":
        """환경 변수(SKEL_SEED, SKEL_PARALLEL_WORKERS)로 기본값을 채워 생성"""
        values = {
            "rng_seed": int(os.getenv("SKEL_SEED", "42")),
        }
        workers = os.getenv("SKEL_PARALLEL_WORKERS")
        if workers:
            values["workers"] = int(workers)
        values.update({k: v for k, v in overrides.items() if v is not None})
        return cls(**values)


@dataclass
class RunStats:
    """실행 통계 (단계별 시간 포함)"""
    algorithm: str
    beta: str
    closure: str
    variant: str = Variant.LUNE.value
    m: int = 0
    group_count: int = 0
    candidate_edges: int = 0
    fallback_groups: int = 0
    precondition_groups: int = 0  # 전제 조건 위반으로 대체된 그룹 (내부 오류)
    ambiguous_points: int = 0
    degenerate_input: bool = False
    timings: Dict[str, float] = field(default_factory=dict)

    def add_time(self, phase: str, seconds: float) -> None:
        self.timings[phase] = self.timings.get(phase, 0.0) + max(0.0, seconds)

    def to_dict(self) -> dict:
        """딕셔너리로 변환"""
        return {
            "algorithm": self.algorithm,
            "beta": self.beta,
            "closure": self.closure,
            "variant": self.variant,
            "m": self.m,
            "group_count": self.group_count,
            "candidate_edges": self.candidate_edges,
            "fallback_groups": self.fallback_groups,
            "precondition_groups": self.precondition_groups,
            "ambiguous_points": self.ambiguous_points,
            "degenerate_input": self.degenerate_input,
            "timings": {k: round(v, 6) for k, v in sorted(self.timings.items())},
        }


@dataclass
class SkeletonGraph:
    """β-skeleton 결과 그래프"""
    n: int
    edges: List[Edge]
    stats: RunStats

    def __post_init__(self):
        self.edges = sorted({(min(i, j), max(i, j)) for i, j in self.edges})
        for i, j in self.edges:
            if not (0 <= i < j < self.n):
                raise PreconditionError(f"잘못된 간선 ({i}, {j}) (n={self.n})")

    @property
    def edge_set(self) -> set:
        return set(self.edges)

    def to_dict(self) -> dict:
        """JSON 출력 형식 딕셔너리"""
        return {
            "n": self.n,
            "beta": self.stats.beta,
            "closure": self.stats.closure,
            "algorithm": self.stats.algorithm,
            "edges": [list(e) for e in self.edges],
            "stats": self.stats.to_dict(),
        }
