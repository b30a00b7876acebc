"""Ordered thread-pool map capped by ``RAMANITON_THREADS``."""

import os
from concurrent.futures import ThreadPoolExecutor


def thread_count() -> int:
    raw = os.environ.get("RAMANITON_THREADS")
    if raw:
        try:
            return max(1, int(raw))
        except ValueError:
            pass
    return min(4, os.cpu_count() or 1)


def parallel_map(fn, items, threads=None):
    """``list(map(fn, items))``, optionally on a pool; results keep input order."""
    items = list(items)
    threads = thread_count() if threads is None else threads
    if threads <= 1 or len(items) <= 1:
        return [fn(item) for item in items]
    with ThreadPoolExecutor(max_workers=min(threads, len(items))) as pool:
        return list(pool.map(fn, items))


def chunks(seq, size):
    return [seq[i:i + size] for i in range(0, len(seq), size)]
