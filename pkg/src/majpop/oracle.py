"""Independent brute-force ground truth for desk-scale instances.

Everything here recomputes from first principles what the fast paths derive
from theory: the full set of attainable column-sum vectors and objective
values, minimal/maximal elements under majorization, exhaustive matrix
enumeration by backtracking, and lattice bounds by scanning all partitions.
:func:`certify` bundles the claims the solvers rely on into one
machine-checkable report.

Enumeration works over column-sum vectors rather than matrices: a vector is
realizable as column sums exactly when it is majorized by the conjugate row
sums, so the search space stays polynomial in the totals while the matrix
witnesses are materialized only on demand.
"""

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Optional, Sequence

import numpy as np

from . import lattice
from .completion import Matrix, _frozen, feasible_min_remaining
from .errors import BudgetExceededError, InfeasibleError
from .majorization import IntVector, as_vector, conjugate, majorized, sort_desc
from .solvers import Instance, SolveResult, enumerate_optima, solve

DEFAULT_MAX_COLS = 7
DEFAULT_MAX_TOTAL = 14


@dataclass(frozen=True)
class AttainableSet:
    """Exact feasible column-sum vectors and the objective values they induce."""

    variant: str
    column_sets: frozenset[IntVector]
    vectors: frozenset[IntVector]

    @property
    def canonical_vectors(self) -> frozenset[IntVector]:
        return frozenset(sort_desc(v) for v in self.vectors)


@dataclass(frozen=True)
class CheckRecord:
    claim: str
    description: str
    passed: bool
    witness: str = ""

    def to_json(self) -> dict:
        return {
            "claim": self.claim,
            "description": self.description,
            "passed": self.passed,
            "witness": self.witness,
        }


@dataclass(frozen=True)
class CertificationReport:
    variant: str
    records: tuple[CheckRecord, ...]

    @property
    def passed(self) -> bool:
        return all(rec.passed for rec in self.records)

    def to_json(self) -> dict:
        return {
            "variant": self.variant,
            "passed": self.passed,
            "checks": [rec.to_json() for rec in self.records],
        }


def _column_vectors(
    n: int, total: int, upper: Sequence[int], threshold: IntVector
) -> list[IntVector]:
    """All x >= 0 with the given total, x <= upper, and x majorized by threshold."""
    out: list[IntVector] = []
    suffix_capacity = [0] * (n + 1)
    for j in range(n - 1, -1, -1):
        suffix_capacity[j] = suffix_capacity[j + 1] + upper[j]

    def rec(j: int, remaining: int, partial: tuple[int, ...]) -> None:
        if j == n:
            if remaining == 0 and majorized(partial, threshold):
                out.append(partial)
            return
        if remaining > suffix_capacity[j]:
            return
        for v in range(min(upper[j], remaining), -1, -1):
            rec(j + 1, remaining - v, partial + (v,))

    rec(0, total, ())
    return out


def enumerate_attainable(
    inst: Instance,
    max_cols: int = DEFAULT_MAX_COLS,
    max_total: int = DEFAULT_MAX_TOTAL,
) -> AttainableSet:
    """Exhaustively enumerate the feasible and attainable sets of an instance."""
    r = inst.row_sums
    n = inst.n
    total = sum(r)
    if n > max_cols or total > max_total:
        raise BudgetExceededError(
            f"instance with n={n}, total={total} exceeds the enumeration budget "
            f"(max_cols={max_cols}, max_total={max_total})"
        )
    if any(v > n for v in r):
        return AttainableSet(inst.variant, frozenset(), frozenset())
    t = conjugate(r, n)
    peak = t[0] if t else 0
    if inst.variant == "min_combined":
        upper = [peak] * n
    else:
        upper = [min(cj, peak) for cj in inst.ceiling]
    xs = _column_vectors(n, total, upper, t)
    if inst.variant == "min_remaining":
        vectors = frozenset(tuple(a - b for a, b in zip(inst.ceiling, x)) for x in xs)
    elif inst.variant == "general_min":
        vectors = frozenset(tuple(a - b for a, b in zip(inst.reference, x)) for x in xs)
    else:
        vectors = frozenset(tuple(a + b for a, b in zip(inst.base, x)) for x in xs)
    return AttainableSet(inst.variant, frozenset(xs), vectors)


def minimal_elements(vectors: Iterable[Sequence[int]]) -> set[IntVector]:
    """Members that no other member strictly majorizes from below."""
    vs = [tuple(v) for v in vectors]
    if not vs:
        raise ValueError("minimal_elements needs a nonempty set")
    keys = sorted({sort_desc(v) for v in vs})
    low = {u for u in keys if not any(w != u and majorized(w, u) for w in keys)}
    return {v for v in vs if sort_desc(v) in low}


def maximal_elements(vectors: Iterable[Sequence[int]]) -> set[IntVector]:
    vs = [tuple(v) for v in vectors]
    if not vs:
        raise ValueError("maximal_elements needs a nonempty set")
    keys = sorted({sort_desc(v) for v in vs})
    high = {u for u in keys if not any(w != u and majorized(u, w) for w in keys)}
    return {v for v in vs if sort_desc(v) in high}


def bruteforce_meet(x: Sequence[int], y: Sequence[int]) -> IntVector:
    """Greatest lower bound found by scanning every partition of the total."""
    a = as_vector(x, nonnegative=True)
    b = as_vector(y, nonnegative=True)
    below = [
        z for z in lattice.partitions(sum(a), len(a)) if majorized(z, a) and majorized(z, b)
    ]
    tops = [z for z in below if all(majorized(w, z) for w in below)]
    if len(tops) != 1:
        raise ValueError(f"no unique greatest lower bound for {a} and {b}")
    return tops[0]


def bruteforce_join(x: Sequence[int], y: Sequence[int]) -> IntVector:
    """Least upper bound found by scanning every partition of the total."""
    a = as_vector(x, nonnegative=True)
    b = as_vector(y, nonnegative=True)
    above = [
        z for z in lattice.partitions(sum(a), len(a)) if majorized(a, z) and majorized(b, z)
    ]
    bottoms = [z for z in above if all(majorized(z, w) for w in above)]
    if len(bottoms) != 1:
        raise ValueError(f"no unique least upper bound for {a} and {b}")
    return bottoms[0]


def all_matrices(r, x, cap: int = 200_000) -> list[Matrix]:
    """Every 0/1 matrix with the given line sums, by direct backtracking."""
    rv = as_vector(r, name="row_sums", nonnegative=True)
    xv = as_vector(x, name="col_sums", nonnegative=True)
    m, n = len(rv), len(xv)
    if sum(rv) != sum(xv) or any(v > n for v in rv) or any(v > m for v in xv):
        return []
    found: list[Matrix] = []
    remaining = list(xv)

    def rec(i: int, rows: tuple[tuple[int, ...], ...]) -> None:
        if i == m:
            if all(v == 0 for v in remaining):
                if len(found) >= cap:
                    raise BudgetExceededError(f"more than {cap} matrices")
                found.append(_frozen(np.array(rows, dtype=np.uint8).reshape(m, n)))
            return
        open_cols = [j for j in range(n) if remaining[j] > 0]
        # Rows still to come can absorb at most (m - i - 1) units per column.
        if any(remaining[j] > m - i for j in range(n)):
            return
        for cols in combinations(open_cols, rv[i]):
            row = [0] * n
            for j in cols:
                row[j] = 1
                remaining[j] -= 1
            rec(i + 1, rows + (tuple(row),))
            for j in cols:
                remaining[j] += 1

    rec(0, ())
    return found


def matrix_exists(r, x) -> bool:
    """Backtracking existence check, independent of the conjugate-based test."""
    rv = as_vector(r, name="row_sums", nonnegative=True)
    xv = as_vector(x, name="col_sums", nonnegative=True)
    m, n = len(rv), len(xv)
    if sum(rv) != sum(xv) or any(v > n for v in rv) or any(v > m for v in xv):
        return False
    remaining = list(xv)

    def rec(i: int) -> bool:
        if i == m:
            return all(v == 0 for v in remaining)
        if any(remaining[j] > m - i for j in range(n)):
            return False
        open_cols = [j for j in range(n) if remaining[j] > 0]
        if len(open_cols) < rv[i]:
            return False
        for cols in combinations(open_cols, rv[i]):
            for j in cols:
                remaining[j] -= 1
            if rec(i + 1):
                return True
            for j in cols:
                remaining[j] += 1
        return False

    return rec(0)


def _sumsq(v: Sequence[int]) -> int:
    return sum(e * e for e in v)


def certify(
    inst: Instance,
    max_cols: int = DEFAULT_MAX_COLS,
    max_total: int = DEFAULT_MAX_TOTAL,
    branch_cap: int = 1_000_000,
    absent_canonical: Optional[Sequence[int]] = None,
) -> CertificationReport:
    """Check every solver-level claim against exhaustive enumeration.

    Records, in order: essential uniqueness of optimal objective values; the
    canonical optimum is the least (greatest, for the maximizing variant)
    element and matches the solver; tie branching reaches exactly the
    optimal vectors; the canonical feasible set is closed under lattice meet
    and join; the closed-form feasibility test agrees with enumeration; the
    solver's negativity certificate agrees with enumeration; the canonical
    optimum minimizes (maximizes) the sum of squares; and, when a candidate
    is supplied, that its sorted form is absent from the canonical
    attainable set.

    The solver-optimality and tie-completeness claims are guaranteed only
    for the uncapped variants; for ``general_min`` and ``general_max`` those
    records are replaced by an attainability check of the greedy output,
    since a binding cap can push the sweep off the extremal value.
    """
    maximize = inst.variant == "general_max"
    exact_scope = inst.variant in ("min_remaining", "min_combined")
    aset = enumerate_attainable(inst, max_cols=max_cols, max_total=max_total)
    nonempty = bool(aset.column_sets)
    records: list[CheckRecord] = []

    result: Optional[SolveResult] = None
    solve_error = ""
    try:
        result = solve(inst)
    except InfeasibleError as exc:
        solve_error = str(exc)

    def vacuous(claim: str, description: str) -> None:
        records.append(CheckRecord(claim, description, True, "vacuous: attainable set is empty"))

    canonicals = sorted(aset.canonical_vectors)
    star: Optional[IntVector] = None
    if nonempty:
        extremal = sorted(
            {sort_desc(v) for v in (maximal_elements(aset.vectors) if maximize else minimal_elements(aset.vectors))}
        )
        ok = len(extremal) == 1
        records.append(
            CheckRecord(
                "essential_uniqueness",
                "all optimal objective values share one sorted rearrangement",
                ok,
                "" if ok else f"distinct sorted optima: {extremal}",
            )
        )
        if ok:
            star = extremal[0]
    else:
        vacuous("essential_uniqueness", "all optimal objective values share one sorted rearrangement")

    if not exact_scope:
        if nonempty and result is not None:
            ok = result.objective in aset.vectors
            records.append(
                CheckRecord(
                    "solver_output_attainable",
                    "the capped greedy returns an attainable objective vector",
                    ok,
                    "" if ok else f"{result.objective} not attainable",
                )
            )
        else:
            # A stopped sweep is the documented outcome when caps strand a
            # row, so there is no output to judge here.
            records.append(
                CheckRecord(
                    "solver_output_attainable",
                    "the capped greedy returns an attainable objective vector",
                    True,
                    solve_error or "vacuous: attainable set is empty",
                )
            )
    elif star is not None:
        bound_ok = all(
            (majorized(u, star) if maximize else majorized(star, u)) for u in canonicals
        )
        if result is None:
            ok, witness = False, f"solver refused a nonempty instance: {solve_error}"
        else:
            ok = bound_ok and result.canonical_objective == star
            witness = "" if ok else (
                f"expected {star}, solver gave {result.canonical_objective}, bound_ok={bound_ok}"
            )
        records.append(
            CheckRecord(
                "canonical_extremum_matches_solver",
                "the shared sorted optimum bounds every attainable value and equals the solver output",
                ok,
                witness,
            )
        )
    else:
        vacuous(
            "canonical_extremum_matches_solver",
            "the shared sorted optimum bounds every attainable value and equals the solver output",
        )

    if exact_scope:
        if star is not None:
            want = {v for v in aset.vectors if sort_desc(v) == star}
            got = set(enumerate_optima(inst, cap=branch_cap))
            ok = got == want
            records.append(
                CheckRecord(
                    "tie_branch_completeness",
                    "branching over every tie reaches exactly the optimal objective vectors",
                    ok,
                    "" if ok else f"missing: {sorted(want - got)}; extra: {sorted(got - want)}",
                )
            )
        else:
            vacuous(
                "tie_branch_completeness",
                "branching over every tie reaches exactly the optimal objective vectors",
            )

    if nonempty:
        xdown = sorted({sort_desc(x) for x in aset.column_sets})
        bad = ""
        for a, b in combinations(xdown, 2):
            lo = lattice.meet(a, b)
            hi = lattice.join(a, b)
            if lo not in xdown or hi not in xdown:
                bad = f"pair {a}, {b} gives meet {lo} join {hi}"
                break
        records.append(
            CheckRecord(
                "canonical_column_lattice_closed",
                "sorted feasible column-sum vectors are closed under meet and join",
                bad == "",
                bad,
            )
        )
    else:
        vacuous(
            "canonical_column_lattice_closed",
            "sorted feasible column-sum vectors are closed under meet and join",
        )

    if inst.variant == "min_combined":
        formula = all(v <= inst.n for v in inst.row_sums)
    else:
        formula = feasible_min_remaining(inst.ceiling, inst.row_sums)
    ok = formula == nonempty
    records.append(
        CheckRecord(
            "feasibility_formula_matches_enumeration",
            "the conjugate-based feasibility test agrees with exhaustive search",
            ok,
            "" if ok else f"formula says {formula}, enumeration says {nonempty}",
        )
    )

    if exact_scope:
        # Negativity of the final profile is the infeasibility certificate;
        # a reference vector distinct from the ceiling has no such reading.
        if result is not None:
            ok = result.feasible == nonempty
        else:
            ok = not nonempty  # the solver refused exactly when nothing is attainable
        records.append(
            CheckRecord(
                "solver_feasibility_certificate",
                "the solver's feasibility report matches exhaustive search",
                ok,
                "" if ok else f"solver: {result.feasible if result else solve_error!r}, enumeration: {nonempty}",
            )
        )

    if star is not None and exact_scope:
        best = max(map(_sumsq, canonicals)) if maximize else min(map(_sumsq, canonicals))
        ok = _sumsq(star) == best
        records.append(
            CheckRecord(
                "sum_of_squares_scalarization",
                "the canonical optimum optimizes the strictly order-preserving sum of squares",
                ok,
                "" if ok else f"sumsq(optimum)={_sumsq(star)} but best attainable is {best}",
            )
        )
    elif exact_scope:
        vacuous(
            "sum_of_squares_scalarization",
            "the canonical optimum optimizes the strictly order-preserving sum of squares",
        )

    if absent_canonical is not None:
        key = sort_desc(absent_canonical)
        ok = key not in aset.canonical_vectors
        records.append(
            CheckRecord(
                "claimed_absent_vector",
                "the supplied vector is missing from the canonical attainable set",
                ok,
                "" if ok else f"{key} is attainable",
            )
        )

    return CertificationReport(inst.variant, tuple(records))
