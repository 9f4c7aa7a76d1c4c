"""Compiled inner loop for the peak-shaving and valley-filling solvers.

The row loop is inherently sequential, so the whole sweep is compiled as one
function: per-row cost is a single in-place quickselect plus two passes over
the columns, keeping the total at O(m*n) with no per-row interpreter
overhead.  Tie handling mirrors ``solvers._pick_from_ties`` exactly,
including the splitmix64 stream, so the compiled and interpreted paths are
interchangeable and are tested for bit-identical output.

Falls back gracefully: when numba is unavailable ``KERNEL_AVAILABLE`` is
False and callers use the interpreted path.
"""

import numpy as np

try:
    from numba import njit

    KERNEL_AVAILABLE = True
except ImportError:  # pragma: no cover - exercised only without numba
    KERNEL_AVAILABLE = False

    def njit(*args, **kwargs):
        def wrap(f):
            return f

        return wrap


POLICY_LOWEST = 0
POLICY_HIGHEST = 1
POLICY_LOAD_ORDER = 2
POLICY_RANDOM = 3

_SM64_GAMMA = np.uint64(0x9E3779B97F4A7C15)
_SM64_MIX1 = np.uint64(0xBF58476D1CE4E5B9)
_SM64_MIX2 = np.uint64(0x94D049BB133111EB)


@njit(cache=True)
def _splitmix64(state):
    state = state + _SM64_GAMMA
    z = state
    z = (z ^ (z >> np.uint64(30))) * _SM64_MIX1
    z = (z ^ (z >> np.uint64(27))) * _SM64_MIX2
    z = z ^ (z >> np.uint64(31))
    return state, z


@njit(cache=True)
def _kth_smallest(buf, n, target):
    # Iterative three-way quickselect with median-of-three pivots; runs on a
    # scratch buffer so callers keep their data intact.
    lo = 0
    hi = n - 1
    while True:
        if lo == hi:
            return buf[lo]
        a = buf[lo]
        b = buf[(lo + hi) // 2]
        c = buf[hi]
        if a > b:
            a, b = b, a
        if b > c:
            b, c = c, b
        if a > b:
            a, b = b, a
        pivot = b
        i = lo
        j = lo
        p = hi
        while j <= p:
            v = buf[j]
            if v < pivot:
                buf[i], buf[j] = buf[j], buf[i]
                i += 1
                j += 1
            elif v > pivot:
                buf[j], buf[p] = buf[p], buf[j]
                p -= 1
            else:
                j += 1
        if target < i:
            hi = i - 1
        elif target > p:
            lo = p + 1
        else:
            return pivot


@njit(cache=True)
def solve_rounds(values, row_counts, matrix, take_largest, delta, policy, seed):
    """Run all rows in place; returns 0 on success.

    values: int64[n] running profile, modified in place.
    row_counts: int64[m] units to place per row.
    matrix: uint8[m, n] output, zero-initialized by the caller.
    take_largest: select columns holding the largest values (else smallest).
    delta: +1 or -1 applied to each selected column.
    policy: POLICY_* code; seed feeds the splitmix64 stream for POLICY_RANDOM.
    """
    m = row_counts.shape[0]
    n = values.shape[0]
    scratch = np.empty(n, dtype=np.int64)
    ties = np.empty(n, dtype=np.int64)
    keys = np.empty(n, dtype=np.int64)
    keybuf = np.empty(n, dtype=np.int64)
    placed = np.zeros(n, dtype=np.int64)
    state = np.uint64(seed)
    span = np.int64(n + 1)
    for i in range(m):
        need = row_counts[i]
        if need == 0:
            continue
        for j in range(n):
            scratch[j] = values[j]
        if take_largest:
            thr = _kth_smallest(scratch, n, n - need)
        else:
            thr = _kth_smallest(scratch, n, need - 1)
        # First pass: take every strictly better column, stage the ties.
        taken = 0
        t = 0
        for j in range(n):
            v = values[j]
            if (take_largest and v > thr) or (not take_largest and v < thr):
                values[j] += delta
                matrix[i, j] = 1
                placed[j] += 1
                taken += 1
            elif v == thr:
                ties[t] = j
                t += 1
        k = need - taken
        if k <= 0:
            continue
        if k >= t:
            for u in range(t):
                j = ties[u]
                values[j] += delta
                matrix[i, j] = 1
                placed[j] += 1
            continue
        if policy == POLICY_LOWEST:
            for u in range(k):
                j = ties[u]
                values[j] += delta
                matrix[i, j] = 1
                placed[j] += 1
        elif policy == POLICY_HIGHEST:
            for u in range(t - k, t):
                j = ties[u]
                values[j] += delta
                matrix[i, j] = 1
                placed[j] += 1
        elif policy == POLICY_LOAD_ORDER:
            # Prefer columns already loaded the most; break remaining ties by
            # low index when shaving peaks and high index when filling
            # valleys.  The index term makes every key distinct.
            for u in range(t):
                j = ties[u]
                if take_largest:
                    keys[u] = placed[j] * span + (n - 1 - j)
                else:
                    keys[u] = placed[j] * span + j
                keybuf[u] = keys[u]
            kth = _kth_smallest(keybuf, t, t - k)
            for u in range(t):
                if keys[u] >= kth:
                    j = ties[u]
                    values[j] += delta
                    matrix[i, j] = 1
                    placed[j] += 1
        else:
            # Partial Fisher-Yates over the staged ties; one draw per pick.
            for u in range(k):
                state, z = _splitmix64(state)
                w = u + np.int64(z % np.uint64(t - u))
                ties[u], ties[w] = ties[w], ties[u]
                j = ties[u]
                values[j] += delta
                matrix[i, j] = 1
                placed[j] += 1
    return 0
