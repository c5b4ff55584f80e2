"""Ordered thread-pool execution of independent evaluations."""

import time
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, List, Optional, Sequence, TypeVar
from loguru import logger

T = TypeVar("T")
R = TypeVar("R")


def map_ordered(
    fn: Callable[[T], R],
    items: Sequence[T],
    workers: int = 1,
    prepare: Optional[Callable[[], None]] = None,
) -> List[R]:
    """
    Apply fn to every item and return the results in input order.

    Args:
        fn: Pure function of one item
        items: Inputs
        workers: Thread count; 1 evaluates sequentially in the calling thread
        prepare: Called once before threads start, e.g. to build shared tables

    Returns:
        List of results aligned with items
    """
    start_time = time.time()
    if workers <= 1 or len(items) <= 1:
        results = [fn(item) for item in items]
    else:
        if prepare is not None:
            prepare()
        with ThreadPoolExecutor(max_workers=workers) as executor:
            results = list(executor.map(fn, items))
    logger.debug(f"Evaluated {len(items)} items on {max(1, workers)} worker(s) in {time.time() - start_time:.2f}s")
    return results
