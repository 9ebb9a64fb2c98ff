"""Multidegree helpers.

Degrees are plain tuples of non-negative ints, compared componentwise.
Indices are 0-based internally; serialization layers convert to 1-based
variable numbering.
"""

from __future__ import annotations

import itertools
from collections.abc import Iterator


def leq(a: tuple, b: tuple) -> bool:
    """Componentwise a <= b."""
    return all(x <= y for x, y in zip(a, b))


def add(a: tuple, b: tuple) -> tuple:
    return tuple(x + y for x, y in zip(a, b))


def sub(a: tuple, b: tuple) -> tuple:
    return tuple(x - y for x, y in zip(a, b))


def meet(a: tuple, b: tuple) -> tuple:
    return tuple(min(x, y) for x, y in zip(a, b))


def join(a: tuple, b: tuple) -> tuple:
    return tuple(max(x, y) for x, y in zip(a, b))


def support(a: tuple) -> frozenset:
    return frozenset(i for i, x in enumerate(a) if x > 0)


def zero(n: int) -> tuple:
    return (0,) * n


def ones(n: int) -> tuple:
    return (1,) * n


def unit(n: int, k: int) -> tuple:
    return tuple(1 if i == k else 0 for i in range(n))


def box(lo: tuple, hi: tuple) -> Iterator[tuple]:
    """All degrees lo <= c <= hi in lexicographic order."""
    if not leq(lo, hi):
        return iter(())
    return itertools.product(*(range(a, b + 1) for a, b in zip(lo, hi)))


def box_size(lo: tuple, hi: tuple) -> int:
    if not leq(lo, hi):
        return 0
    size = 1
    for a, b in zip(lo, hi):
        size *= b - a + 1
    return size
