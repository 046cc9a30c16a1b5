"""Order-preserving parallel map capped by KZN_THREADS."""

from collections.abc import Callable, Iterable
from concurrent.futures import ThreadPoolExecutor
from typing import TypeVar

from .config import settings

T = TypeVar("T")
R = TypeVar("R")


def parallel_map(fn: Callable[[T], R], items: Iterable[T], threads: int | None = None) -> list[R]:
    """Apply ``fn`` to every item; results keep input order.

    Runs inline when the effective worker count is one, so single-threaded
    runs and parallel runs produce identical lists.
    """
    work = list(items)
    workers = min(threads or settings.threads, max(len(work), 1))
    if workers <= 1:
        return [fn(item) for item in work]
    with ThreadPoolExecutor(max_workers=workers, thread_name_prefix="kzn") as executor:
        return list(executor.map(fn, work))
