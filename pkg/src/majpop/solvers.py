"""Peak-shaving and valley-filling solvers with explicit tie policies.

Both solvers sweep the rows once.  Peak shaving subtracts one unit from the
columns currently holding the largest remaining values; valley filling adds
one unit to the columns holding the smallest running totals.  All optimal
objective values share a single nonincreasing rearrangement, so any tie
policy reaches an optimum; the policies below pick *which* optimum:

``lowest_index`` / ``highest_index``
    Deterministic index preference among tied columns.  With a nonincreasing
    input profile, ``highest_index`` peak shaving (and ``lowest_index``
    valley filling) emits the objective already sorted.
``load_order``
    Prefer the column with the larger count of units placed so far; the
    resulting column-sum vector tracks the order of the input profile.
``uniform_random(seed)``
    Tied columns drawn without replacement from a seeded splitmix64 stream,
    so traces reproduce exactly across platforms.

Large instances run through a compiled kernel; small ones and exotic values
use the interpreted twin.  The two are tested for identical output.

Exhaustive branching over every tie choice enumerates the full set of
optimal objective vectors; see :func:`enumerate_optima`.
"""

from dataclasses import dataclass, field
from itertools import combinations
from typing import Optional, Sequence

import numpy as np

from . import _speedups
from .completion import Matrix, _frozen, feasible_min_remaining
from .errors import BudgetExceededError, InfeasibleError
from .majorization import IntVector, as_vector, sort_desc

VARIANTS = ("min_remaining", "min_combined", "general_min", "general_max")

TIE_KINDS = ("lowest_index", "highest_index", "load_order", "uniform_random")

_POLICY_CODES = {
    "lowest_index": _speedups.POLICY_LOWEST,
    "highest_index": _speedups.POLICY_HIGHEST,
    "load_order": _speedups.POLICY_LOAD_ORDER,
    "uniform_random": _speedups.POLICY_RANDOM,
}

# Below this many cells the interpreted path wins on constant overhead.
_KERNEL_MIN_CELLS = 4096
# The kernel works in int64; route anything near the edge to the twin.
_KERNEL_MAX_VALUE = 1 << 60

_MASK64 = (1 << 64) - 1


def _splitmix64(state: int) -> tuple[int, int]:
    """One splitmix64 step; returns (new_state, output). Matches the kernel."""
    state = (state + 0x9E3779B97F4A7C15) & _MASK64
    z = state
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
    z ^= z >> 31
    return state, z


@dataclass(frozen=True)
class TiePolicy:
    """How a solver breaks ties among equally attractive columns."""

    kind: str = "lowest_index"
    seed: int = 0

    def __post_init__(self):
        if self.kind not in TIE_KINDS:
            raise ValueError(f"unknown tie policy {self.kind!r}; expected one of {TIE_KINDS}")
        if not isinstance(self.seed, int) or isinstance(self.seed, bool):
            raise ValueError("tie policy seed must be an int")


LOWEST_INDEX = TiePolicy("lowest_index")
HIGHEST_INDEX = TiePolicy("highest_index")
LOAD_ORDER = TiePolicy("load_order")


def random_ties(seed: int) -> TiePolicy:
    return TiePolicy("uniform_random", seed)


@dataclass(frozen=True)
class Instance:
    """One problem setup: a variant tag plus the vectors it needs.

    ``min_remaining`` shaves a ceiling profile down; ``min_combined`` fills a
    base profile up.  ``general_min`` shaves a reference profile while column
    sums stay below a separate ceiling; ``general_max`` fills a base profile
    toward the most concentrated (majorization-greatest) combined load under
    the same column caps.
    """

    variant: str
    row_sums: tuple[int, ...]
    ceiling: Optional[tuple[int, ...]] = None
    base: Optional[tuple[int, ...]] = None
    reference: Optional[tuple[int, ...]] = None
    n: int = field(init=False, default=0, compare=False)

    def __post_init__(self):
        if self.variant not in VARIANTS:
            raise ValueError(f"variant: unknown value {self.variant!r}; expected one of {VARIANTS}")
        object.__setattr__(self, "row_sums", as_vector(self.row_sums, "row_sums", nonnegative=True))
        for name in ("ceiling", "base", "reference"):
            v = getattr(self, name)
            if v is not None:
                object.__setattr__(self, name, as_vector(v, name, nonnegative=True))
        needed = {
            "min_remaining": ("ceiling",),
            "min_combined": ("base",),
            "general_min": ("reference", "ceiling"),
            "general_max": ("base", "ceiling"),
        }[self.variant]
        lengths = set()
        for name in needed:
            v = getattr(self, name)
            if v is None:
                raise ValueError(f"{name}: required for variant {self.variant!r}")
            lengths.add(len(v))
        if len(lengths) != 1:
            raise ValueError(f"vectors for variant {self.variant!r} must share one length")
        n = lengths.pop()
        if n < 1:
            raise ValueError("instances need at least one column")
        object.__setattr__(self, "n", n)


@dataclass(frozen=True, eq=False)
class SolveResult:
    """Solver output: witness matrix, objective in input order, sorted form."""

    matrix: Matrix
    objective: IntVector
    canonical_objective: IntVector
    feasible: bool

    def to_json(self) -> dict:
        return {
            "feasible": self.feasible,
            "objective": list(self.objective),
            "canonical_objective": list(self.canonical_objective),
            "matrix": self.matrix.tolist(),
        }


def _check_rows(r: IntVector, n: int) -> None:
    for i, v in enumerate(r):
        if v > n:
            raise InfeasibleError(
                f"row_sums[{i}] = {v} exceeds the number of columns {n}: no row can hold it"
            )


def _split_selection(
    values: Sequence[int], need: int, largest: bool, allowed: Sequence[int]
) -> tuple[list[int], list[int], int]:
    """Forced picks, tied candidates (index order), and how many ties to take."""
    if need == 0:
        return [], [], 0
    if need > len(allowed):
        raise InfeasibleError(
            f"a row needs {need} columns but only {len(allowed)} remain below their caps"
        )
    if largest:
        ordered = sorted(allowed, key=lambda j: (-values[j], j))
    else:
        ordered = sorted(allowed, key=lambda j: (values[j], j))
    thr = values[ordered[need - 1]]
    forced = []
    ties = []
    for j in allowed:
        v = values[j]
        if v == thr:
            ties.append(j)
        elif (largest and v > thr) or (not largest and v < thr):
            forced.append(j)
    return forced, ties, need - len(forced)


def _pick_ties(
    ties: list[int],
    k: int,
    policy: TiePolicy,
    placed: list[int],
    largest: bool,
    n: int,
    state: int,
) -> tuple[list[int], int]:
    """Choose k of the tied columns; mirrors the compiled kernel bit for bit."""
    if k >= len(ties):
        return list(ties), state
    kind = policy.kind
    if kind == "lowest_index":
        return ties[:k], state
    if kind == "highest_index":
        return ties[-k:], state
    if kind == "load_order":
        if largest:
            order = sorted(ties, key=lambda j: (-placed[j], j))
        else:
            order = sorted(ties, key=lambda j: (-placed[j], -j))
        return order[:k], state
    pool = list(ties)
    for u in range(k):
        state, z = _splitmix64(state)
        w = u + z % (len(pool) - u)
        pool[u], pool[w] = pool[w], pool[u]
    return pool[:k], state


def _run_rounds_python(
    start: IntVector,
    r: IntVector,
    largest: bool,
    delta: int,
    policy: TiePolicy,
    caps: Optional[IntVector],
) -> tuple[list[int], Matrix]:
    n = len(start)
    m = len(r)
    values = list(start)
    placed = [0] * n
    a = np.zeros((m, n), dtype=np.uint8)
    state = policy.seed & _MASK64
    everything = list(range(n))
    for i, need in enumerate(r):
        if caps is None:
            allowed = everything
        else:
            allowed = [j for j in everything if placed[j] < caps[j]]
        forced, ties, k = _split_selection(values, need, largest, allowed)
        chosen, state = _pick_ties(ties, k, policy, placed, largest, n, state) if k > 0 else ([], state)
        for j in forced + chosen:
            values[j] += delta
            placed[j] += 1
            a[i, j] = 1
    return values, a


def _run_rounds(
    start: IntVector,
    r: IntVector,
    largest: bool,
    delta: int,
    policy: TiePolicy,
    caps: Optional[IntVector] = None,
) -> tuple[list[int], Matrix]:
    m, n = len(r), len(start)
    big = max(start, default=0)
    if (
        caps is None
        and _speedups.KERNEL_AVAILABLE
        and m * n >= _KERNEL_MIN_CELLS
        and big + m < _KERNEL_MAX_VALUE
    ):
        values = np.array(start, dtype=np.int64)
        rows = np.array(r, dtype=np.int64)
        a = np.zeros((m, n), dtype=np.uint8)
        _speedups.solve_rounds(
            values,
            rows,
            a,
            largest,
            delta,
            _POLICY_CODES[policy.kind],
            policy.seed & _MASK64,
        )
        return [int(v) for v in values], a
    return _run_rounds_python(start, r, largest, delta, policy, caps)


def peak_shave(ceiling, row_sums, policy: TiePolicy = LOWEST_INDEX) -> SolveResult:
    """Shave a ceiling profile: each row subtracts from its largest entries.

    Always runs to completion; a negative entry in the final objective is
    the certificate that no valid completion exists, reported through
    ``feasible`` rather than an exception.
    """
    c = as_vector(ceiling, "ceiling", nonnegative=True)
    r = as_vector(row_sums, "row_sums", nonnegative=True)
    if not c:
        raise ValueError("ceiling must have at least one entry")
    _check_rows(r, len(c))
    values, a = _run_rounds(c, r, largest=True, delta=-1, policy=policy)
    objective = tuple(values)
    return SolveResult(_frozen(a), objective, sort_desc(objective), min(objective) >= 0)


def valley_fill(base, row_sums, policy: TiePolicy = LOWEST_INDEX) -> SolveResult:
    """Fill a base profile: each row adds onto its smallest entries."""
    b = as_vector(base, "base", nonnegative=True)
    r = as_vector(row_sums, "row_sums", nonnegative=True)
    if not b:
        raise ValueError("base must have at least one entry")
    _check_rows(r, len(b))
    values, a = _run_rounds(b, r, largest=False, delta=+1, policy=policy)
    objective = tuple(values)
    return SolveResult(_frozen(a), objective, sort_desc(objective), True)


def min_remaining_profile(ceiling, row_sums) -> IntVector:
    """Canonical (nonincreasing) optimal remaining profile for a feasible setup."""
    c = as_vector(ceiling, "ceiling", nonnegative=True)
    r = as_vector(row_sums, "row_sums", nonnegative=True)
    if not c:
        return ()
    if not feasible_min_remaining(c, r):
        raise InfeasibleError(f"ceiling {c} cannot absorb row sums {r}")
    return peak_shave(c, r).canonical_objective


def min_combined_profile(base, row_sums) -> IntVector:
    """Canonical (nonincreasing) optimal combined profile; always exists."""
    b = as_vector(base, "base", nonnegative=True)
    r = as_vector(row_sums, "row_sums", nonnegative=True)
    if not b:
        return ()
    return valley_fill(b, r).canonical_objective


def _general_setup(inst: Instance) -> tuple[IntVector, bool, int, IntVector]:
    if inst.variant == "general_min":
        return inst.reference, True, -1, inst.ceiling
    return inst.base, False, +1, inst.ceiling


def solve(inst: Instance, policy: TiePolicy = LOWEST_INDEX) -> SolveResult:
    """Dispatch an instance to its solver.

    The generalized variants run the same row sweep but exclude columns
    whose sums have reached their caps; a row left with fewer open columns
    than it needs raises with a diagnostic.  ``general_max`` selects the
    columns with the *largest* running totals, concentrating load toward a
    majorization-greatest combined profile.

    The capped sweeps always return a completion that satisfies the row
    sums and column caps, and with ``reference == ceiling`` they reproduce
    the plain peak shave exactly.  When caps bind mid-run they are greedy
    heuristics: on rare instances the result is not the extremal attainable
    value, and a sweep can stop on an instance that a different row order
    would complete.  The uncapped variants carry none of these caveats.
    """
    if inst.variant == "min_remaining":
        return peak_shave(inst.ceiling, inst.row_sums, policy)
    if inst.variant == "min_combined":
        return valley_fill(inst.base, inst.row_sums, policy)
    start, minimize, delta, caps = _general_setup(inst)
    r = inst.row_sums
    _check_rows(r, inst.n)
    try:
        values, a = _run_rounds(start, r, largest=True, delta=delta, policy=policy, caps=caps)
    except InfeasibleError as exc:
        raise InfeasibleError(f"variant {inst.variant}: {exc}") from None
    objective = tuple(values)
    feasible = min(objective) >= 0 if delta < 0 else True
    return SolveResult(_frozen(a), objective, sort_desc(objective), feasible)


def _instance_rounds(inst: Instance) -> tuple[IntVector, bool, int, Optional[IntVector]]:
    if inst.variant == "min_remaining":
        return inst.ceiling, True, -1, None
    if inst.variant == "min_combined":
        return inst.base, False, +1, None
    start, _, delta, caps = _general_setup(inst)
    return start, True, delta, caps


def enumerate_optima(inst: Instance, cap: int = 1_000_000) -> dict[IntVector, Matrix]:
    """Every objective vector reachable by some resolution of the ties.

    For the uncapped variants this is exactly the set of optimal objective
    vectors: every least element of the attainable set arises from some tie
    resolution, and nothing else does.  For the capped variants it is the
    reachable set of the greedy sweep, which can differ from the optimum
    set when caps bind.

    Depth-first over all tie resolutions, deduplicating running-profile
    states per row so permuted choice orders are explored once.  Returns one
    witness matrix per distinct objective.  Raises once the number of
    distinct states passes ``cap``.
    """
    start, largest, delta, caps = _instance_rounds(inst)
    r = inst.row_sums
    n = inst.n
    _check_rows(r, n)
    if inst.variant == "min_remaining" and not feasible_min_remaining(inst.ceiling, r):
        raise InfeasibleError(f"ceiling {inst.ceiling} cannot absorb row sums {r}")
    m = len(r)
    results: dict[IntVector, Matrix] = {}
    seen: set[tuple[int, IntVector]] = set()
    stack: list[tuple[int, IntVector, tuple[tuple[int, ...], ...]]] = [(0, start, ())]
    while stack:
        i, values, rows = stack.pop()
        key = (i, values)
        if key in seen:
            continue
        seen.add(key)
        if len(seen) > cap:
            raise BudgetExceededError(f"tie enumeration passed {cap} distinct states")
        if i == m:
            if values not in results:
                if len(results) >= cap:
                    raise BudgetExceededError(f"more than {cap} optimal objective vectors")
                a = np.zeros((m, n), dtype=np.uint8)
                for ri, cols in enumerate(rows):
                    for j in cols:
                        a[ri, j] = 1
                results[values] = _frozen(a)
            continue
        if caps is None:
            allowed = list(range(n))
        else:
            placed = [
                (values[j] - start[j]) * delta for j in range(n)
            ]  # delta in {+1,-1} recovers per-column placements
            allowed = [j for j in range(n) if placed[j] < caps[j]]
        try:
            forced, ties, k = _split_selection(values, r[i], largest, allowed)
        except InfeasibleError:
            continue  # this branch painted itself into a corner
        base_forced = tuple(forced)
        if k <= 0:
            nxt = list(values)
            for j in base_forced:
                nxt[j] += delta
            stack.append((i + 1, tuple(nxt), rows + (base_forced,)))
            continue
        for combo in combinations(ties, k):
            nxt = list(values)
            sel = base_forced + combo
            for j in sel:
                nxt[j] += delta
            stack.append((i + 1, tuple(nxt), rows + (sel,)))
    return results
