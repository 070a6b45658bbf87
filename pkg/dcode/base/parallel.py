# Standard
from concurrent.futures import ThreadPoolExecutor
from typing import Any, Callable, List

# Local
from dcode.base.instance import Instance


def run_batch(fn: Callable[..., Any], inputs: List[Instance], threads: int = 1) -> None:
    """Runs `fn` on every instance and stores the outcome in `x.result`

    Results land on the instance they were computed for, so the outcome does not depend on
    the thread count or on completion order.
    """
    if threads <= 1 or len(inputs) <= 1:
        for x in inputs:
            x.result = x.run(fn)
        return

    with ThreadPoolExecutor(max_workers=min(threads, len(inputs))) as pool:
        results = list(pool.map(lambda x: x.run(fn), inputs))
    for x, res in zip(inputs, results):
        x.result = res
