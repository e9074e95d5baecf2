"""Shared odds and ends."""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor

__all__ = ["thread_cap", "parallel_map"]


def thread_cap() -> int:
    """Parallelism cap from PITTLAB_THREADS (default 1)."""
    raw = os.environ.get("PITTLAB_THREADS", "")
    try:
        n = int(raw)
    except ValueError:
        return 1
    return max(1, n)


def parallel_map(fn, items):
    """Map fn over items, using up to thread_cap() worker threads."""
    items = list(items)
    cap = min(thread_cap(), len(items)) if items else 1
    if cap <= 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=cap) as pool:
        return list(pool.map(fn, items))
