"""CLI 인터페이스 (compute / verify / gen / bench / plot)

종료 코드: 0 성공, 1 검증 불일치, 2 입력 오류, 3 지원하지 않는 조합
"""

import argparse
import json
import logging
import os
import sys
from typing import List, Optional, Sequence

from ..common.errors import (
    DuplicateInputError,
    InputFormatError,
    OutOfBoundsError,
    SkeletonError,
    TooFewPointsError,
    UnsupportedRangeError,
    UnsupportedVariantError,
    VerificationError,
)
from ..common.types import RunReport, VerifyOutcome
from ..geometry.models import PointSet
from .algorithms import batched, brute_force, compute, dt_filter
from .bench import format_table, run_bench
from .delaunay import triangulate
from .files import format_edges, format_points, read_edges, read_points, write_text
from .generator import generate
from .models import AlgoConfig, Algorithm, Beta, Closure, SkeletonGraph, Variant
from .regions import make_region
from .svg import render_svg, write_svg

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_INPUT = 2
EXIT_UNSUPPORTED = 3

LOG_LEVELS = {
    "debug": logging.DEBUG,
    "info": logging.INFO,
    "quiet": logging.WARNING,
}


def exit_code_for(error: Exception) -> int:
    """예외 종류 -> 종료 코드"""
    if isinstance(error, VerificationError):
        return EXIT_MISMATCH
    if isinstance(error, (UnsupportedRangeError, UnsupportedVariantError)):
        return EXIT_UNSUPPORTED
    return EXIT_INPUT


def setup_logging(verbose: bool = False) -> None:
    """로깅 설정 (SKEL_LOG=debug|info|quiet, --verbose는 debug)"""
    level = LOG_LEVELS.get(os.getenv("SKEL_LOG", "info").lower(), logging.WARNING)
    if verbose:
        level = logging.DEBUG
    logging.basicConfig(
        level=level,
        format="%(asctime)s - %(name)s - %(levelname)s - %(message)s",
        datefmt="%Y-%m-%d %H:%M:%S",
        stream=sys.stderr,
    )


def _default_seed() -> int:
    return int(os.getenv("SKEL_SEED", "42"))


def _add_skeleton_options(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--input", "-i", required=True, help="점 CSV 파일 (x,y)")
    parser.add_argument("--beta", "-b", required=True, help="β (10진수, p/q, inf)")
    parser.add_argument(
        "--closure",
        choices=[c.value for c in Closure],
        default=Closure.OPEN.value,
        help="경계 포함 여부 (기본: open)"
    )
    parser.add_argument("--seed", type=int, default=None, help="난수 시드 (기본: SKEL_SEED 또는 42)")
    parser.add_argument("--group-size", type=int, default=None, help="batched 그룹 크기 m 지정")
    parser.add_argument("--parallel", action="store_true", help="batched 그룹 병렬 처리")
    parser.add_argument("--paranoid", action="store_true", help="batched 결과를 dt-filter로 재검증")


def create_parser() -> argparse.ArgumentParser:
    """CLI 파서 생성"""
    parser = argparse.ArgumentParser(
        prog="skel",
        description="β-skeleton 계산 / 검증 / 시각화 도구",
    )
    subparsers = parser.add_subparsers(dest="command", help="명령어")

    # compute 명령어
    compute_parser = subparsers.add_parser("compute", help="β-skeleton 계산")
    _add_skeleton_options(compute_parser)
    compute_parser.add_argument(
        "--algo",
        choices=[a.value for a in Algorithm],
        default=Algorithm.AUTO.value,
        help="알고리즘 (기본: auto, β > 2면 batched)"
    )
    compute_parser.add_argument(
        "--variant",
        choices=[v.value for v in Variant],
        default=Variant.LUNE.value,
        help="영역 정의 (기본: lune)"
    )
    compute_parser.add_argument("--out", "-o", default=None, help="간선 출력 파일 (기본: stdout)")
    compute_parser.add_argument("--format", choices=["json", "tsv"], default="json", help="출력 형식")
    compute_parser.add_argument("--report", default=None, help="실행 보고서(JSON) 저장 경로")

    # verify 명령어
    verify_parser = subparsers.add_parser("verify", help="알고리즘 간 결과 교차 검증")
    _add_skeleton_options(verify_parser)
    verify_parser.add_argument("--expect", default=None, help="기대 간선 파일 (JSON/TSV)과 비교")

    # gen 명령어
    gen_parser = subparsers.add_parser("gen", help="점 집합 생성")
    gen_parser.add_argument("--n", type=int, required=True, help="점 개수 (1 이상)")
    gen_parser.add_argument("--seed", type=int, default=None, help="난수 시드")
    gen_parser.add_argument("--mode", choices=["uniform", "grid", "circle"], default="uniform", help="생성 모드")
    gen_parser.add_argument("--out", "-o", default=None, help="출력 CSV (기본: stdout)")

    # bench 명령어
    bench_parser = subparsers.add_parser("bench", help="스케일링 벤치마크")
    bench_parser.add_argument("--sizes", type=int, nargs="+", required=True, help="입력 크기 목록")
    bench_parser.add_argument("--reps", type=int, default=3, help="반복 횟수 (중앙값 사용)")
    bench_parser.add_argument("--beta", "-b", default="3", help="β (기본: 3)")
    bench_parser.add_argument(
        "--algos",
        nargs="+",
        choices=[a.value for a in Algorithm if a != Algorithm.AUTO],
        default=[Algorithm.BATCHED.value],
        help="측정할 알고리즘"
    )
    bench_parser.add_argument("--closure", choices=[c.value for c in Closure], default=Closure.OPEN.value)
    bench_parser.add_argument("--seed", type=int, default=None, help="입력 생성 시드")
    bench_parser.add_argument("--format", choices=["markdown", "csv"], default="markdown", help="표 형식")
    bench_parser.add_argument("--out", "-o", default=None, help="출력 파일 (기본: stdout)")

    # plot 명령어
    plot_parser = subparsers.add_parser("plot", help="SVG 렌더링")
    plot_parser.add_argument("--input", "-i", required=True, help="점 CSV 파일")
    plot_parser.add_argument("--edges", "-e", default=None, help="간선 파일 (JSON/TSV)")
    plot_parser.add_argument("--out", "-o", required=True, help="SVG 출력 경로")
    plot_parser.add_argument("--show-region", type=int, nargs=2, metavar=("I", "J"), default=None,
                             help="R(x_i, x_j, β) 윤곽 표시")
    plot_parser.add_argument("--beta", "-b", default="2", help="--show-region의 β (기본: 2)")
    plot_parser.add_argument("--variant", choices=[v.value for v in Variant], default=Variant.LUNE.value)

    # 공통 옵션
    parser.add_argument("--verbose", "-v", action="store_true", help="상세 로그 출력")
    return parser


def _config(args: argparse.Namespace) -> AlgoConfig:
    seed = args.seed if args.seed is not None else _default_seed()
    return AlgoConfig.from_env(
        group_size_override=args.group_size,
        parallel_groups=args.parallel,
        paranoid_verify=args.paranoid,
        rng_seed=seed,
    )


def build_report(points: PointSet, graph: SkeletonGraph, verification: str = "not-run") -> RunReport:
    """실행 보고서 생성"""
    stats = graph.stats
    return {
        "input": {"n": len(points), "bbox": points.bbox().to_dict()},
        "algorithm": stats.algorithm,
        "beta": stats.beta,
        "closure": stats.closure,
        "variant": stats.variant,
        "edge_count": len(graph.edges),
        "m": stats.m,
        "group_count": stats.group_count,
        "fallback_groups": stats.fallback_groups,
        "timings": {k: round(v, 6) for k, v in sorted(stats.timings.items())},
        "verification": verification,
    }


def cmd_compute(args: argparse.Namespace) -> int:
    """compute 명령어 실행"""
    points = read_points(args.input)
    beta = Beta.parse(args.beta)
    cfg = _config(args)
    graph = compute(
        points,
        beta,
        algorithm=Algorithm(args.algo),
        variant=Variant(args.variant),
        closure=Closure(args.closure),
        cfg=cfg,
        progress=logger.debug,
    )
    write_text(args.out, format_edges(graph, args.format))
    if args.report:
        verification = "ok" if (cfg.paranoid_verify and graph.stats.algorithm == Algorithm.BATCHED.value) else "not-run"
        report = build_report(points, graph, verification)
        write_text(args.report, json.dumps(report, ensure_ascii=False, indent=2) + "\n")
    logger.info(f"✅ compute 완료: 간선 {len(graph.edges)}개 ({graph.stats.algorithm})")
    return EXIT_OK


def _first_diff(a: Sequence, b: Sequence) -> Optional[tuple]:
    diff = sorted(set(a) ^ set(b))
    return diff[0] if diff else None


def verify_points(points: PointSet, beta: Beta, closure: Closure, cfg: AlgoConfig,
                  expect: Optional[List] = None) -> VerifyOutcome:
    """
    batched / dt-filter / brute-force(점 수 제한 이하)와 기대 간선을 비교합니다.

    β <= 2이면 brute-force만 실행합니다.
    """
    brute_limit = int(os.getenv("SKEL_VERIFY_BRUTE_LIMIT", "200"))
    results = {}
    candidates = None
    if beta > Beta.of(2):
        results["batched"] = batched(points, beta, closure, cfg).edges
        results["dt-filter"] = dt_filter(points, beta, closure, seed=cfg.rng_seed).edges
        candidates = set(triangulate(points, seed=cfg.rng_seed).edges)
    if len(points) <= brute_limit or not results:
        brute = brute_force(points, beta, closure=closure).edges
        if candidates is not None:
            brute = [edge for edge in brute if edge in candidates]
        results["bruteforce"] = brute
    if expect is not None:
        results["expect"] = sorted(tuple(e) for e in expect)

    names = list(results)
    reference = results[names[0]]
    for name in names[1:]:
        diff = _first_diff(reference, results[name])
        if diff is not None:
            side = names[0] if diff in set(reference) else name
            return {
                "status": "mismatch",
                "compared": names,
                "first_diff": list(diff),
                "detail": f"{names[0]} != {name}: 간선 {diff}는 {side}에만 있습니다",
            }
    return {"status": "ok", "compared": names, "first_diff": None, "detail": f"{len(reference)}개 간선 일치"}


def cmd_verify(args: argparse.Namespace) -> int:
    """verify 명령어 실행"""
    points = read_points(args.input)
    beta = Beta.parse(args.beta)
    cfg = _config(args)
    expect = None
    if args.expect:
        _, expect = read_edges(args.expect)
    outcome = verify_points(points, beta, Closure(args.closure), cfg, expect)
    if outcome["status"] != "ok":
        print(f"❌ 검증 불일치: {outcome['detail']}")
        return EXIT_MISMATCH
    print(f"✅ 검증 통과 ({', '.join(outcome['compared'])}): {outcome['detail']}")
    return EXIT_OK


def cmd_gen(args: argparse.Namespace) -> int:
    """gen 명령어 실행"""
    if args.n < 1:
        print(f"❌ --n은 1 이상이어야 합니다: {args.n}", file=sys.stderr)
        return EXIT_INPUT
    seed = args.seed if args.seed is not None else _default_seed()
    points = generate(args.n, args.mode, seed)
    write_text(args.out, format_points(points))
    logger.info(f"✅ 점 {len(points)}개 생성 ({args.mode}, seed={seed})")
    return EXIT_OK


def cmd_bench(args: argparse.Namespace) -> int:
    """bench 명령어 실행"""
    if any(n < 2 for n in args.sizes) or args.reps < 1:
        print("❌ --sizes는 2 이상, --reps는 1 이상이어야 합니다", file=sys.stderr)
        return EXIT_INPUT
    seed = args.seed if args.seed is not None else _default_seed()
    rows = run_bench(
        sizes=args.sizes,
        algorithms=[Algorithm(a) for a in args.algos],
        beta=Beta.parse(args.beta),
        reps=args.reps,
        closure=Closure(args.closure),
        seed=seed,
        cfg=AlgoConfig.from_env(rng_seed=seed),
    )
    write_text(args.out, format_table(rows, args.format))
    return EXIT_OK


def cmd_plot(args: argparse.Namespace) -> int:
    """plot 명령어 실행"""
    points = read_points(args.input)
    n = len(points)
    edges = []
    if args.edges:
        _, edges = read_edges(args.edges)
    for i, j in edges:
        if not (0 <= i < n and 0 <= j < n):
            raise OutOfBoundsError(f"간선 ({i}, {j})의 index가 범위를 벗어났습니다 (n={n})")
    region = None
    if args.show_region:
        i, j = args.show_region
        if not (0 <= i < n and 0 <= j < n):
            raise OutOfBoundsError(f"--show-region index가 범위를 벗어났습니다: {i} {j} (n={n})")
        region = make_region(points[i], points[j], Beta.parse(args.beta), Variant(args.variant))
    write_svg(args.out, render_svg(points, edges, region))
    logger.info(f"✅ SVG 저장: {args.out}")
    return EXIT_OK


COMMANDS = {
    "compute": cmd_compute,
    "verify": cmd_verify,
    "gen": cmd_gen,
    "bench": cmd_bench,
    "plot": cmd_plot,
}


def main(argv: Optional[List[str]] = None) -> int:
    """CLI 메인 함수"""
    parser = create_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_INPUT if e.code else EXIT_OK

    if not args.command:
        parser.print_help()
        return EXIT_OK

    setup_logging(args.verbose)

    cmd_func = COMMANDS.get(args.command)
    if not cmd_func:
        parser.print_help()
        return EXIT_INPUT
    try:
        return cmd_func(args)
    except (DuplicateInputError, InputFormatError, TooFewPointsError, OutOfBoundsError) as e:
        print(f"❌ 입력 오류: {e}", file=sys.stderr)
        return EXIT_INPUT
    except SkeletonError as e:
        code = exit_code_for(e)
        label = "지원하지 않는 조합" if code == EXIT_UNSUPPORTED else "오류"
        print(f"❌ {label}: {e}", file=sys.stderr)
        return code


if __name__ == "__main__":
    sys.exit(main())
