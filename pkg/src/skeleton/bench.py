"""스케일링 벤치마크 (크기별 중앙값 시간과 증가율 T(n)/T(n_prev))"""

import logging
import math
import time
from typing import Callable, List, Optional, Sequence, Tuple

import numpy as np

from ..common.types import BenchRow
from .algorithms import batched, brute_force, dt_filter
from .generator import uniform_points
from .models import AlgoConfig, Algorithm, Beta, Closure

logger = logging.getLogger(__name__)


def _runner(algorithm: Algorithm, beta: Beta, closure: Closure, cfg: AlgoConfig) -> Callable:
    if algorithm == Algorithm.BATCHED:
        return lambda pts: batched(pts, beta, closure, cfg)
    if algorithm == Algorithm.DT_FILTER:
        return lambda pts: dt_filter(pts, beta, closure, seed=cfg.rng_seed)
    return lambda pts: brute_force(pts, beta, closure=closure)


def reference_ratios(n: int, n_prev: int) -> Tuple[float, Optional[float]]:
    """
    크기 n_prev -> n에서 기대되는 시간 비율 (이차, n^1.5·sqrt(log n))

    Example:
        >>> reference_ratios(4000, 1000)[0]
        16.0
    """
    factor = n / n_prev
    quadratic = factor ** 2
    if n_prev < 2:
        return quadratic, None
    return quadratic, factor ** 1.5 * math.sqrt(math.log(n) / math.log(n_prev))


def run_bench(
    sizes: Sequence[int],
    algorithms: Sequence[Algorithm],
    beta,
    reps: int = 3,
    closure: Closure = Closure.OPEN,
    seed: int = 42,
    cfg: Optional[AlgoConfig] = None,
) -> List[BenchRow]:
    """
    알고리즘 × 크기별로 균등 분포 입력을 reps번 실행하여 중앙값 시간을 측정합니다.

    ratio는 직전 크기 대비 시간 비율이며 quadratic_ref(이차 시간, 4배 크기에서 16)와
    expected_ref(n^1.5·sqrt(log n), 4배 크기에서 약 8~9)를 같은 행에 함께 기록합니다.
    """
    beta = Beta.of(beta)
    closure = Closure(closure)
    cfg = cfg or AlgoConfig(rng_seed=seed)
    rows: List[BenchRow] = []
    for algorithm in algorithms:
        algorithm = Algorithm(algorithm)
        run = _runner(algorithm, beta, closure, cfg)
        previous: Optional[BenchRow] = None
        for n in sorted(sizes):
            points = uniform_points(n, seed=seed)
            samples = []
            for rep in range(reps):
                started = time.perf_counter()
                run(points)
                samples.append(time.perf_counter() - started)
            median = float(np.median(samples))
            quadratic, expected = reference_ratios(n, previous["n"]) if previous else (None, None)
            row: BenchRow = {
                "algorithm": algorithm.value,
                "n": n,
                "reps": reps,
                "median_s": median,
                "ratio": (median / previous["median_s"]) if previous and previous["median_s"] > 0 else None,
                "size_factor": (n / previous["n"]) if previous else None,
                "quadratic_ref": quadratic,
                "expected_ref": expected,
            }
            if row["ratio"] is not None and quadratic is not None and row["ratio"] >= quadratic:
                logger.warning(f"⚠️ {algorithm.value} n={n}: 증가율 {row['ratio']:.2f}이 이차 기준 {quadratic:.1f} 이상")
            logger.info(f"📊 {algorithm.value} n={n}: median {median:.4f}s")
            rows.append(row)
            previous = row
    return rows


def _fmt(value: Optional[float], digits: int = 3) -> str:
    return "" if value is None else f"{value:.{digits}f}"


def format_table(rows: Sequence[BenchRow], fmt: str = "markdown") -> str:
    """벤치마크 결과 표 (markdown / csv)"""
    header = ["algorithm", "n", "reps", "median_s", "ratio", "size_factor", "quadratic_ref", "expected_ref"]
    body = [
        [row["algorithm"], str(row["n"]), str(row["reps"]), _fmt(row["median_s"], 6),
         _fmt(row["ratio"]), _fmt(row["size_factor"], 1),
         _fmt(row.get("quadratic_ref"), 1), _fmt(row.get("expected_ref"), 2)]
        for row in rows
    ]
    if fmt == "csv":
        return "\n".join(",".join(line) for line in [header] + body) + "\n"
    lines = ["| " + " | ".join(header) + " |", "|" + "---|" * len(header)]
    lines.extend("| " + " | ".join(line) + " |" for line in body)
    return "\n".join(lines) + "\n"
