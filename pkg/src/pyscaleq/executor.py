import logging
from concurrent.futures import ProcessPoolExecutor
from typing import Callable, Iterable, List, TypeVar

log = logging.getLogger('pyscaleq.Executor')


TYPE_I = TypeVar('TYPE_I')
TYPE_R = TypeVar('TYPE_R')


def map_ordered(func: Callable[[TYPE_I], TYPE_R], items: Iterable[TYPE_I], workers: int = 1) -> List[TYPE_R]:
    """Apply ``func`` to every item, results are returned in input order.

    :param func: picklable function
    :param items: inputs
    :param workers: ``<= 1`` runs in process, otherwise the number of worker processes
    """
    items = list(items)
    if workers <= 1 or len(items) <= 1:
        return [func(item) for item in items]

    workers = min(workers, len(items))
    log.debug(f'Running {len(items):d} tasks on {workers:d} processes')
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(func, items))
