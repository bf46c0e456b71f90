"""점 / 간선 파일 입출력

입력 점: CSV, 한 줄에 `x,y` (10진수 또는 p/q), 선택적 헤더, `#` 주석, 정확한 파싱
간선 출력: JSON {"n", "beta", "closure", "algorithm", "edges", "stats"} 또는 `i j` TSV
"""

import csv
import io
import json
import logging
import sys
from pathlib import Path
from typing import List, Optional, TextIO, Tuple, Union

from ..common.errors import InputFormatError
from ..common.types import EdgeFormat
from ..geometry.models import Point, PointSet
from ..geometry.numbers import format_coord, parse_coord
from .models import Edge, SkeletonGraph

logger = logging.getLogger(__name__)

PathLike = Union[str, Path]


def parse_points(text: str) -> PointSet:
    """
    CSV 텍스트에서 점 집합을 파싱합니다.

    Raises:
        InputFormatError: 열 개수가 2가 아니거나 숫자를 해석할 수 없을 때 (줄 번호 포함)

    Example:
        >>> parse_points("x,y\\n0,0\\n1/3,0.5\\n").points[1].x
        Fraction(1, 3)
    """
    points: List[Point] = []
    header_allowed = True
    for line_no, row in enumerate(csv.reader(io.StringIO(text)), start=1):
        cells = [cell.strip() for cell in row]
        if not cells or all(not cell for cell in cells) or cells[0].startswith("#"):
            continue
        if len(cells) != 2:
            raise InputFormatError(f"`x,y` 두 열이 필요합니다 (열 {len(cells)}개)", line=line_no)
        try:
            x, y = parse_coord(cells[0]), parse_coord(cells[1])
        except ValueError:
            if header_allowed:
                header_allowed = False
                continue
            raise InputFormatError(f"좌표를 해석할 수 없습니다: {','.join(cells)}", line=line_no)
        header_allowed = False
        try:
            points.append(Point(x, y, len(points)))
        except OverflowError:
            raise InputFormatError(
                f"좌표가 float 범위를 벗어납니다: {','.join(cells)}", line=line_no) from None
    return PointSet(points)


def read_points(path: PathLike) -> PointSet:
    """CSV 파일에서 점 집합 읽기"""
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise InputFormatError(f"입력 파일을 읽을 수 없습니다: {path} ({e})") from e
    points = parse_points(text)
    logger.debug(f"📦 점 {len(points)}개 로드: {path}")
    return points


def format_points(points: PointSet) -> str:
    lines = ["x,y"]
    lines.extend(f"{format_coord(p.x)},{format_coord(p.y)}" for p in points)
    return "\n".join(lines) + "\n"


def write_text(path: Optional[PathLike], text: str, stdout: Optional[TextIO] = None) -> None:
    """path가 None이거나 '-'이면 stdout으로 출력"""
    if path is None or str(path) == "-":
        (stdout or sys.stdout).write(text)
        return
    target = Path(path)
    target.parent.mkdir(parents=True, exist_ok=True)
    target.write_text(text, encoding="utf-8")


def format_edges(graph: SkeletonGraph, fmt: EdgeFormat = "json") -> str:
    """간선 목록 직렬화 (json / tsv)"""
    if fmt == "tsv":
        return "".join(f"{i} {j}\n" for i, j in graph.edges)
    if fmt != "json":
        raise InputFormatError(f"지원하지 않는 출력 형식: {fmt}")
    return json.dumps(graph.to_dict(), ensure_ascii=False, indent=2) + "\n"


def parse_edges(text: str) -> Tuple[Optional[int], List[Edge]]:
    """
    JSON 또는 TSV 간선 목록 파싱

    Returns:
        (n 또는 None, 정렬된 간선 목록)
    """
    stripped = text.lstrip()
    if stripped.startswith("{"):
        try:
            data = json.loads(text)
            edges = [(int(i), int(j)) for i, j in data.get("edges", [])]
        except (json.JSONDecodeError, TypeError, ValueError) as e:
            raise InputFormatError(f"간선 JSON을 해석할 수 없습니다: {e}") from e
        n = data.get("n")
        return (int(n) if n is not None else None), sorted({(min(i, j), max(i, j)) for i, j in edges})

    edges = set()
    for line_no, line in enumerate(text.splitlines(), start=1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.replace(",", " ").replace("\t", " ").split()
        if len(parts) != 2:
            raise InputFormatError(f"`i j` 형식이 아닙니다: {line}", line=line_no)
        try:
            i, j = int(parts[0]), int(parts[1])
        except ValueError as e:
            raise InputFormatError(f"정수 index가 아닙니다: {line}", line=line_no) from e
        edges.add((min(i, j), max(i, j)))
    return None, sorted(edges)


def read_edges(path: PathLike) -> Tuple[Optional[int], List[Edge]]:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise InputFormatError(f"간선 파일을 읽을 수 없습니다: {path} ({e})") from e
    return parse_edges(text)
