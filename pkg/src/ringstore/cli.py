"""Command-line front end: ``ringstore <subcommand> ...``.

Exit status is 0 on success, 1 when a check fails (infeasible parameters,
a scheme that is not an ORDSS, a failed simulation), and 2 on usage errors
including unreadable or malformed input files.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .edmatrix import is_weakly_mds
from .errors import InfeasibleParameters, NotOrdssError, RingStoreError, SimulationError
from .galois import FieldMatrix
from .planner import plan_greedy, plan_reconstruction, plan_repair
from .ringsim import RingSimulator, load_events, random_data
from .scheme import (
    RingParams,
    Scheme,
    SchemeFormatError,
    build_ed_scheme,
    build_mds_scheme,
    reconstruct_bound,
    repair_bound,
)

EXIT_OK, EXIT_CHECK_FAILED, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _read(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from exc


def _write(path: str | None, text: str) -> None:
    if path in (None, "-"):
        sys.stdout.write(text)
    else:
        Path(path).write_text(text)


def _load_scheme(path: str) -> Scheme:
    try:
        return Scheme.from_json(_read(path))
    except SchemeFormatError as exc:
        raise UsageError(str(exc)) from exc
    except InfeasibleParameters:
        raise
    except RingStoreError as exc:
        raise UsageError(f"malformed scheme document: {exc}") from exc


def cmd_build(args) -> int:
    build = build_ed_scheme if args.construction == "ed" else build_mds_scheme
    scheme = build(args.n, args.alpha, args.m)
    _write(args.out, scheme.to_json())
    return EXIT_OK


def cmd_validate(args) -> int:
    report = _load_scheme(args.scheme).report
    print(report.describe())
    return EXIT_OK if report.is_ordss else EXIT_CHECK_FAILED


def cmd_bounds(args) -> int:
    params = RingParams(args.n, args.alpha, args.m)
    print(f"reconstruct: {reconstruct_bound(params)}, repair: {repair_bound(params)}")
    return EXIT_OK


def _emit_plan(args, scheme, plan, run) -> int:
    doc = json.dumps(plan.to_dict()) + "\n"
    if args.out:
        _write(args.out, doc)
    if args.json:
        sys.stdout.write(doc)
        return EXIT_OK
    sim = RingSimulator(scheme, random_data(scheme.params.m_size, scheme.params.q, args.seed))
    run(sim)
    sys.stdout.write(sim.trace.to_text())
    print(f"total: {plan.total_bandwidth} symbols")
    return EXIT_OK


def cmd_reconstruct(args) -> int:
    scheme = _load_scheme(args.scheme)
    if args.greedy:
        plan = plan_greedy(scheme, args.user)
        return _emit_plan(args, scheme, plan, lambda sim: sim.execute(plan))
    plan = plan_reconstruction(scheme, args.user)
    return _emit_plan(args, scheme, plan, lambda sim: sim.user_request(args.user))


def cmd_repair(args) -> int:
    scheme = _load_scheme(args.scheme)
    plan = plan_repair(scheme, args.node)

    def run(sim):
        sim.node_failure(args.node)
        sim.repair(args.node)

    return _emit_plan(args, scheme, plan, run)


def cmd_simulate(args) -> int:
    scheme = _load_scheme(args.scheme)
    try:
        events = load_events(_read(args.events))
    except (ValueError, KeyError, TypeError) as exc:
        raise UsageError(f"malformed events file: {exc}") from exc
    sim = RingSimulator(scheme, random_data(scheme.params.m_size, scheme.params.q, args.seed))
    sim.run(events)
    sys.stdout.write(sim.trace.to_text())
    print(sim.trace.summary_json())
    return EXIT_OK


def cmd_weakly_mds(args) -> int:
    try:
        doc = json.loads(_read(args.matrix))
        rows = doc["matrix"] if "matrix" in doc else doc["generator"]
        m = FieldMatrix(rows, int(doc.get("q", 2)))
    except (ValueError, KeyError, TypeError, AttributeError) as exc:
        raise UsageError(f"malformed matrix file: {exc}") from exc
    result = is_weakly_mds(m)
    if result:
        print("weakly MDS: yes")
        return EXIT_OK
    axis = "row" if m.rows > m.cols else "column"
    print(f"weakly MDS: no (window starting at {axis} {result.failing_window} is dependent)")
    return EXIT_CHECK_FAILED


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ringstore",
        description="Distributed storage schemes over unidirectional ring networks.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def params(p):
        p.add_argument("--n", type=int, required=True, help="number of storage nodes")
        p.add_argument("--alpha", type=int, required=True, help="symbols stored per node")
        p.add_argument("--m", type=int, required=True, help="size M of the original data")

    def plan_opts(p):
        p.add_argument("--scheme", required=True, help="scheme JSON file")
        p.add_argument("--out", help="write the plan JSON here")
        p.add_argument("--json", action="store_true", help="print the plan JSON instead of the trace")
        p.add_argument("--seed", type=int, default=0, help="seed for the simulated data vector")

    p = sub.add_parser("build", help="construct a scheme and write it as JSON")
    params(p)
    p.add_argument("--construction", choices=("ed", "mds"), default="ed")
    p.add_argument("--out", help="output path (default: stdout)")
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("validate", help="check the adjacent-node ORDSS conditions")
    p.add_argument("--scheme", required=True)
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("bounds", help="print the reconstruction and repair bandwidth bounds")
    params(p)
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("reconstruct", help="plan and trace a user's reconstruction")
    plan_opts(p)
    p.add_argument("--user", type=int, required=True)
    p.add_argument("--greedy", action="store_true", help="use the greedy planner (any full-rank scheme)")
    p.set_defaults(func=cmd_reconstruct)

    p = sub.add_parser("repair", help="plan and trace the exact repair of a node")
    plan_opts(p)
    p.add_argument("--node", type=int, required=True)
    p.set_defaults(func=cmd_repair)

    p = sub.add_parser("simulate", help="run an event list on the ring")
    p.add_argument("--scheme", required=True)
    p.add_argument("--events", required=True, help='JSON list of {"type": ..., "node": ...}')
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("weakly-mds", help="check the weakly MDS property of a matrix")
    p.add_argument("--matrix", required=True, help='JSON {"q": 2, "matrix": [[...]]} or a scheme file')
    p.set_defaults(func=cmd_weakly_mds)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except InfeasibleParameters as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_CHECK_FAILED
    except (NotOrdssError, SimulationError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CHECK_FAILED
    except (IndexError, RingStoreError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
