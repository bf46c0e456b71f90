"""Beta Skeleton - lune 기반 β-skeleton 라이브러리 + CLI"""

__version__ = "0.1.0"
