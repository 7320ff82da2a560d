#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
Worker pool for the independent verification sweeps.
"""

import logging
import os
import time
from concurrent.futures import ThreadPoolExecutor
from typing import Any, Callable, List, Optional, Sequence

logger = logging.getLogger(__name__)


def resolve_threads(requested: Optional[int] = None) -> int:
    """Thread count: explicit value, else QISO_THREADS, else 1."""
    if requested is None:
        env = os.environ.get("QISO_THREADS")
        if env:
            try:
                requested = int(env)
            except ValueError:
                logger.warning(f"Ignoring non-integer QISO_THREADS={env!r}")
    if not requested or requested < 1:
        return 1
    return int(requested)


def run_parallel(func: Callable[[Any], Any], items: Sequence[Any],
                 threads: Optional[int] = 1) -> List[Any]:
    """Apply func to every item; results come back in input order.

    Args:
        func: Callable taking a single work item
        items: Work items
        threads: Worker threads; 1 runs inline

    Returns:
        list: One result per item, same order as items
    """
    start_time = time.time()
    threads = resolve_threads(threads)
    if threads == 1 or len(items) <= 1:
        results = [func(item) for item in items]
    else:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(func, items))
    elapsed = (time.time() - start_time) * 1000
    logger.debug(f"Processed {len(items)} work items on {threads} thread(s) in {elapsed:.1f}ms")
    return results

