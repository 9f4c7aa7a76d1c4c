"""Meet, join, and covering relation of the dominance order on partitions.

A partition here is a nonincreasing tuple of nonnegative ints; two partitions
are comparable inside the fixed-sum, fixed-length family ordered by
majorization.  The meet comes from pairwise minima of prefix sums.  The join
is computed two independent ways: through conjugates of the meet, and through
a direct recursive formula; agreement of the two is part of the test suite.
"""

from itertools import accumulate
from typing import Iterator, Sequence

from .majorization import IntVector, as_vector, conjugate, is_nonincreasing


def _check_pair(x: Sequence[int], y: Sequence[int]) -> tuple[IntVector, IntVector]:
    a = as_vector(x, name="x", nonnegative=True)
    b = as_vector(y, name="y", nonnegative=True)
    if not is_nonincreasing(a) or not is_nonincreasing(b):
        raise ValueError("lattice operations expect nonincreasing partitions; sort first")
    if len(a) != len(b):
        raise ValueError(f"partition lengths differ: {len(a)} vs {len(b)}")
    if sum(a) != sum(b):
        raise ValueError(f"partition sums differ: {sum(a)} vs {sum(b)}")
    return a, b


def meet(x: Sequence[int], y: Sequence[int]) -> IntVector:
    """Greatest lower bound: difference the pairwise minima of prefix sums."""
    a, b = _check_pair(x, y)
    out = []
    prev = 0
    for pa, pb in zip(accumulate(a), accumulate(b)):
        cur = min(pa, pb)
        out.append(cur - prev)
        prev = cur
    return tuple(out)


def join(x: Sequence[int], y: Sequence[int]) -> IntVector:
    """Least upper bound via conjugates: dualize, meet, dualize back."""
    a, b = _check_pair(x, y)
    if a == b:
        return a
    # No part exceeds the total, so the total is always a safe conjugate dim.
    d = max(sum(a), 1)
    return conjugate(meet(conjugate(a, d), conjugate(b, d)), len(a))


def join_recursive(x: Sequence[int], y: Sequence[int]) -> IntVector:
    """Least upper bound built left to right.

    Entry k is the smallest alpha such that the partial sum so far plus
    ``j * alpha`` covers every prefix max of the two inputs j steps ahead.
    Computed by direct ceiling arithmetic rather than incremental search.
    """
    a, b = _check_pair(x, y)
    n = len(a)
    need = [max(pa, pb) for pa, pb in zip(accumulate(a), accumulate(b))]
    out = []
    acc = 0
    for k in range(n):
        alpha = 0
        for j in range(1, n - k + 1):
            shortfall = need[k - 1 + j] - acc
            if shortfall > 0:
                alpha = max(alpha, -(-shortfall // j))
        out.append(alpha)
        acc += alpha
    return tuple(out)


def covers(y: Sequence[int], x: Sequence[int]) -> bool:
    """True when y covers x: x sits directly below y with nothing between.

    Equivalently x arises from y by moving one unit from position i to a
    later position j with ``y[i] > y[j] + 1``, and the move is minimal:
    either the positions are adjacent, or the gap is exactly two and every
    part strictly between equals ``y[i] - 1``.
    """
    a, b = _check_pair(x, y)
    diff = [k for k in range(len(a)) if a[k] != b[k]]
    if len(diff) != 2:
        return False
    i, j = diff
    if a[i] != b[i] - 1 or a[j] != b[j] + 1:
        return False
    gap = b[i] - b[j]
    if gap < 2:
        return False
    if j == i + 1:
        return True
    return gap == 2 and all(b[k] == b[i] - 1 for k in range(i + 1, j))


def partitions(total: int, length: int) -> Iterator[IntVector]:
    """All nonincreasing tuples of ``length`` nonnegative ints summing to ``total``."""
    if total < 0 or length < 0:
        raise ValueError("total and length must be nonnegative")
    if length == 0:
        if total == 0:
            yield ()
        return

    def rec(remaining: int, slots: int, bound: int) -> Iterator[tuple[int, ...]]:
        if slots == 1:
            if remaining <= bound:
                yield (remaining,)
            return
        lowest = -(-remaining // slots)  # first part is at least the average
        for first in range(min(bound, remaining), lowest - 1, -1):
            for rest in rec(remaining - first, slots - 1, first):
                yield (first,) + rest

    yield from rec(total, length, total)
