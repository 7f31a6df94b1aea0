"""Deterministic fan-out of pure functions over worker processes."""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from typing import Callable, Iterable, TypeVar

T = TypeVar("T")
R = TypeVar("R")


def parallel_map(fn: Callable[[T], R], items: Iterable[T], workers: int) -> list[R]:
    """Map fn over items, preserving input order regardless of scheduling.

    fn must be a module-level function (picklable).  workers <= 1 runs
    inline; results are identical either way.
    """
    seq = list(items)
    if workers <= 1 or len(seq) <= 1:
        return [fn(x) for x in seq]
    with ProcessPoolExecutor(max_workers=workers) as ex:
        return list(ex.map(fn, seq))
