"""Deterministic worker-pool helper for embarrassingly parallel loops.

Results always come back in input order, so callers see identical output
no matter how many threads run.  The thread budget is taken from the
``WSCS_RDF_THREADS`` environment variable when not given explicitly
(unset or 1 = serial, 0 = one thread per CPU).
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Iterable, Optional, TypeVar

T = TypeVar("T")
R = TypeVar("R")

THREADS_ENV_VAR = "WSCS_RDF_THREADS"


def resolve_threads(threads: Optional[int] = None) -> int:
    if threads is None:
        raw = os.environ.get(THREADS_ENV_VAR, "1")
        try:
            threads = int(raw)
        except ValueError:
            threads = 1
    if threads == 0:
        return os.cpu_count() or 1
    return max(1, threads)


def parallel_map(fn: Callable[[T], R], items: Iterable[T], threads: Optional[int] = None) -> list[R]:
    n = resolve_threads(threads)
    seq = list(items)
    if n <= 1 or len(seq) <= 1:
        return [fn(x) for x in seq]
    with ThreadPoolExecutor(max_workers=n) as pool:
        return list(pool.map(fn, seq))
