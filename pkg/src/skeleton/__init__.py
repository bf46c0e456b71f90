"""β-skeleton 계산 (영역, Delaunay, 사다리꼴 분할, 알고리즘, CLI)"""

from .algorithms import (
    batched,
    brute_force,
    choose_group_size,
    compute,
    dt_filter,
    gabriel_graph,
    relative_neighborhood_graph,
)
from .delaunay import Triangulation, edges, triangulate, validate
from .models import AlgoConfig, Algorithm, Beta, Closure, RunStats, SkeletonGraph, Variant
from .regions import Region, make_region, region_contains
from .subdivision import TrapMap, build
from .traversal import LuneTable, dual_traverse_mark

__all__ = [
    "AlgoConfig",
    "Algorithm",
    "Beta",
    "Closure",
    "LuneTable",
    "Region",
    "RunStats",
    "SkeletonGraph",
    "TrapMap",
    "Triangulation",
    "Variant",
    "batched",
    "brute_force",
    "build",
    "choose_group_size",
    "compute",
    "dt_filter",
    "dual_traverse_mark",
    "edges",
    "gabriel_graph",
    "make_region",
    "region_contains",
    "relative_neighborhood_graph",
    "triangulate",
    "validate",
]
