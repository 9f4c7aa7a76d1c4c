"""Command-line interface.

Results go to stdout as JSON (CSV for ``bench``); diagnostics go to stderr.
Exit codes: 0 success, 1 infeasible instance, 2 invalid input or exceeded
budget, 3 internal invariant violation.  Given the same arguments and seed,
every subcommand except ``bench`` (whose records carry wall times) writes
byte-identical output.
"""

import argparse
import csv
import io
import json
import os
import sys
import time
from typing import Optional, Sequence

from . import lattice as lattice_mod
from . import oracle as oracle_mod
from .completion import construct_matrix, feasible_min_remaining, geth_vector
from .errors import BudgetExceededError, InfeasibleError, InternalInvariantError
from .majorization import conjugate, default_conjugate_dim
from .solvers import (
    Instance,
    TiePolicy,
    enumerate_optima,
    solve,
    _splitmix64,
)

_U64_MAX = (1 << 64) - 1

_POLICY_FLAGS = {
    "random": "uniform_random",
    "lowest-index": "lowest_index",
    "highest-index": "highest_index",
    "load-order": "load_order",
}

_INSTANCE_KEYS = {
    "variant": "variant",
    "row_sums": "row_sums",
    "ceiling": "ceiling",
    "base": "base",
    "reference": "reference",
}


def _parse_vector(text: str, name: str) -> tuple[int, ...]:
    try:
        values = tuple(int(part) for part in text.split(","))
    except ValueError:
        raise ValueError(f"{name}: expected comma-separated integers, got {text!r}") from None
    for k, v in enumerate(values):
        if v < 0:
            raise ValueError(f"{name}[{k}]: negative value {v}")
        if v > _U64_MAX:
            raise ValueError(f"{name}[{k}]: {v} does not fit in 64 bits")
    return values


def _check_json_vector(data, name: str) -> tuple[int, ...]:
    if not isinstance(data, list):
        raise ValueError(f"{name}: expected an array of nonnegative integers")
    out = []
    for k, v in enumerate(data):
        if isinstance(v, bool) or not isinstance(v, int):
            raise ValueError(f"{name}[{k}]: expected an integer, got {v!r}")
        if v < 0:
            raise ValueError(f"{name}[{k}]: negative value {v}")
        if v > _U64_MAX:
            raise ValueError(f"{name}[{k}]: {v} does not fit in 64 bits")
        out.append(v)
    return tuple(out)


def load_instance(path: str) -> Instance:
    """Read and validate an instance file, naming any offending field."""
    with open(path, "r", encoding="utf-8") as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ValueError(f"{path}: malformed JSON: {exc}") from None
    if not isinstance(data, dict):
        raise ValueError(f"{path}: expected a JSON object")
    unknown = set(data) - set(_INSTANCE_KEYS)
    if unknown:
        raise ValueError(f"{path}: unknown field {sorted(unknown)[0]!r}")
    if "variant" not in data:
        raise ValueError(f"{path}: missing field 'variant'")
    if "row_sums" not in data:
        raise ValueError(f"{path}: missing field 'row_sums'")
    kwargs = {"variant": data["variant"], "row_sums": _check_json_vector(data["row_sums"], "row_sums")}
    for name in ("ceiling", "base", "reference"):
        if name in data:
            kwargs[name] = _check_json_vector(data[name], name)
    return Instance(**kwargs)


def _policy_from_args(args) -> TiePolicy:
    kind = _POLICY_FLAGS[args.tie_policy]
    seed = args.seed
    if seed is None:
        env = os.environ.get("MAJPOP_SEED")
        seed = int(env) if env else 0
    return TiePolicy(kind, seed) if kind == "uniform_random" else TiePolicy(kind)


def _emit(payload) -> None:
    sys.stdout.write(json.dumps(payload, separators=(",", ":"), sort_keys=True))
    sys.stdout.write("\n")


def _cmd_solve(args) -> int:
    inst = load_instance(args.instance)
    result = solve(inst, _policy_from_args(args))
    _emit(result.to_json())
    return 0 if result.feasible else 1


def _cmd_enumerate(args) -> int:
    inst = load_instance(args.instance)
    optima = enumerate_optima(inst, cap=args.max_branches)
    payload = [
        {"objective": list(obj), "matrix": optima[obj].tolist()} for obj in sorted(optima)
    ]
    _emit({"count": len(payload), "optima": payload})
    return 0


def _instance_feasible(inst: Instance) -> bool:
    if inst.variant == "min_combined":
        return all(v <= inst.n for v in inst.row_sums)
    return feasible_min_remaining(inst.ceiling, inst.row_sums)


def _cmd_feasible(args) -> int:
    inst = load_instance(args.instance)
    ok = _instance_feasible(inst)
    _emit({"feasible": ok})
    return 0 if ok else 1


def _cmd_conjugate(args) -> int:
    v = _parse_vector(args.vector, "--vector")
    dim = args.dim if args.dim is not None else default_conjugate_dim(v)
    _emit(list(conjugate(v, dim)))
    return 0


def _cmd_geth(args) -> int:
    c = _parse_vector(args.ceiling, "--ceiling")
    t = _parse_vector(args.threshold, "--threshold")
    _emit(list(geth_vector(c, t)))
    return 0


def _cmd_construct(args) -> int:
    r = _parse_vector(args.row_sums, "--row-sums")
    x = _parse_vector(args.col_sums, "--col-sums")
    _emit(construct_matrix(r, x).tolist())
    return 0


def _cmd_lattice(args) -> int:
    x = _parse_vector(args.x, "--x")
    y = _parse_vector(args.y, "--y")
    if args.lattice_op == "meet":
        _emit(list(lattice_mod.meet(x, y)))
    elif args.lattice_op == "join":
        _emit(list(lattice_mod.join(x, y)))
    else:
        _emit({"covers": lattice_mod.covers(y, x)})
    return 0


def _cmd_certify(args) -> int:
    inst = load_instance(args.instance)
    absent = _parse_vector(args.absent, "--absent") if args.absent else None
    report = oracle_mod.certify(
        inst,
        max_cols=args.max_cols,
        max_total=args.max_total,
        absent_canonical=absent,
    )
    _emit(report.to_json())
    return 0 if report.passed else 3


def _bench_instance(seed: int, m: int, n: int, rep: int):
    """Deterministic instance: fold (m, n, rep) into the seed, then draw."""
    state = seed & ((1 << 64) - 1)
    for salt in (m, n, rep):
        state, _ = _splitmix64(state ^ salt)
    r = []
    for _ in range(m):
        state, z = _splitmix64(state)
        r.append(1 + z % n)
    lo = m // 2
    c = []
    for _ in range(n):
        state, z = _splitmix64(state)
        c.append(lo + z % (m - lo + 1))
    return tuple(r), tuple(c), state


def _cmd_bench(args) -> int:
    ms = [int(v) for v in args.rows.split(",")]
    ns = [int(v) for v in args.cols.split(",")]
    if args.repeats < 1 or any(v < 1 for v in ms + ns):
        raise ValueError("bench sizes and repeats must be positive")
    seed = args.seed if args.seed is not None else int(os.environ.get("MAJPOP_SEED", "0") or 0)
    policy_kind = _POLICY_FLAGS[args.tie_policy]
    records = []
    for m in ms:
        for n in ns:
            for rep in range(args.repeats):
                r, c, state = _bench_instance(seed, m, n, rep)
                if args.variant == "min_combined":
                    inst = Instance("min_combined", r, base=c)
                else:
                    inst = Instance("min_remaining", r, ceiling=c)
                policy = TiePolicy(policy_kind, state) if policy_kind == "uniform_random" else TiePolicy(policy_kind)
                t0 = time.perf_counter_ns()
                result = solve(inst, policy)
                t1 = time.perf_counter_ns()
                records.append(
                    {
                        "m": m,
                        "n": n,
                        "policy": args.tie_policy,
                        "seed": seed,
                        "wall_time_ns": t1 - t0,
                        "feasible": result.feasible,
                    }
                )
    if args.format == "json":
        _emit(records)
    else:
        buf = io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=["m", "n", "policy", "seed", "wall_time_ns", "feasible"])
        writer.writeheader()
        writer.writerows(records)
        sys.stdout.write(buf.getvalue())
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="majpop",
        description="Optimal 0/1-matrix completion with majorization-ordered objectives.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_policy_flags(p):
        p.add_argument(
            "--tie-policy",
            choices=sorted(_POLICY_FLAGS),
            default="lowest-index",
            help="how tied columns are resolved",
        )
        p.add_argument("--seed", type=int, default=None, help="seed for --tie-policy random (or MAJPOP_SEED)")

    p = sub.add_parser("solve", help="solve an instance file")
    p.add_argument("--instance", required=True)
    add_policy_flags(p)
    p.set_defaults(func=_cmd_solve)

    p = sub.add_parser("enumerate", help="list every optimal objective vector")
    p.add_argument("--instance", required=True)
    p.add_argument("--max-branches", type=int, default=1_000_000)
    p.set_defaults(func=_cmd_enumerate)

    p = sub.add_parser("feasible", help="report instance feasibility")
    p.add_argument("--instance", required=True)
    p.set_defaults(func=_cmd_feasible)

    p = sub.add_parser("conjugate", help="partition conjugate of a vector")
    p.add_argument("--vector", required=True)
    p.add_argument("--dim", type=int, default=None)
    p.set_defaults(func=_cmd_conjugate)

    p = sub.add_parser("geth", help="vector below a threshold within capacities")
    p.add_argument("--ceiling", required=True)
    p.add_argument("--threshold", required=True)
    p.set_defaults(func=_cmd_geth)

    p = sub.add_parser("construct", help="build a 0/1 matrix with given line sums")
    p.add_argument("--row-sums", required=True)
    p.add_argument("--col-sums", required=True)
    p.set_defaults(func=_cmd_construct)

    p = sub.add_parser("lattice", help="dominance-lattice operations")
    lat = p.add_subparsers(dest="lattice_op", required=True)
    for op in ("meet", "join", "covers"):
        q = lat.add_parser(op)
        q.add_argument("--x", required=True, help="partition (comma-separated)")
        q.add_argument("--y", required=True, help="partition (comma-separated)")
        q.set_defaults(func=_cmd_lattice)

    p = sub.add_parser("oracle", help="brute-force certification")
    orc = p.add_subparsers(dest="oracle_op", required=True)
    q = orc.add_parser("certify")
    q.add_argument("--instance", required=True)
    q.add_argument("--absent", default=None, help="vector expected absent from the canonical attainable set")
    q.add_argument("--max-cols", type=int, default=oracle_mod.DEFAULT_MAX_COLS)
    q.add_argument("--max-total", type=int, default=oracle_mod.DEFAULT_MAX_TOTAL)
    q.set_defaults(func=_cmd_certify)

    p = sub.add_parser("bench", help="time the solver over size grids, emit records")
    p.add_argument("--rows", required=True, help="comma-separated row counts")
    p.add_argument("--cols", required=True, help="comma-separated column counts")
    p.add_argument("--repeats", type=int, default=1)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--variant", choices=["min_remaining", "min_combined"], default="min_remaining")
    p.add_argument(
        "--tie-policy", choices=sorted(_POLICY_FLAGS), default="lowest-index"
    )
    p.add_argument("--format", choices=["csv", "json"], default="csv")
    p.set_defaults(func=_cmd_bench)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except InfeasibleError as exc:
        print(f"infeasible: {exc}", file=sys.stderr)
        return 1
    except BudgetExceededError as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return 2
    except (ValueError, OSError) as exc:
        print(f"invalid input: {exc}", file=sys.stderr)
        return 2
    except InternalInvariantError as exc:
        print(f"internal invariant violated: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
