from __future__ import annotations

import logging
import os
import tempfile
from concurrent.futures import ProcessPoolExecutor
from math import factorial

__all__ = ["parallel_map", "atomic_write_text", "compositions"]

logger = logging.getLogger(__name__)


class _NoDict(type):
    def __new__(cls, name, bases, d):
        d.setdefault("__slots__", ())
        return type.__new__(cls, name, bases, d)


def parallel_map(func, items, jobs=1):
    """Maps `func` over `items`, in worker processes when `jobs` > 1.

    Results come back in input order either way.  `func` must be a module
    level function so that it can be pickled.
    """
    items = list(items)
    if jobs <= 1 or len(items) <= 1:
        return [func(item) for item in items]
    logger.debug("mapping %d items over %d workers", len(items), jobs)
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(func, items))


def atomic_write_text(path, text):
    """Writes `text` to `path` by writing a temporary sibling and renaming."""
    directory = os.path.dirname(os.path.abspath(path))
    os.makedirs(directory, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".tmp-", suffix=".part")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as f:
            f.write(text)
        os.replace(tmp, path)
    except BaseException:
        try:
            os.unlink(tmp)
        except OSError:
            pass
        raise


def compositions(total, parts):
    """Yields every tuple of `parts` non-negative integers summing to `total`.

    Tuples come out in decreasing lexicographic order.
    """
    if parts == 0:
        if total == 0:
            yield ()
        return
    if parts == 1:
        yield (total,)
        return
    for first in range(total, -1, -1):
        for rest in compositions(total - first, parts - 1):
            yield (first,) + rest


def falling_factorial(exps, lowered):
    """Returns prod_i exps[i]! / (exps[i] - lowered[i])!, zero if any lowered > exps."""
    rv = 1
    for e, b in zip(exps, lowered):
        if b > e:
            return 0
        if b:
            rv *= factorial(e) // factorial(e - b)
    return rv


def multi_factorial(exps):
    rv = 1
    for e in exps:
        if e > 1:
            rv *= factorial(e)
    return rv
