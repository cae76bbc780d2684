"""Command-line entry point.

Exit codes: 0 success, 1 check or regression failure, 2 usage error,
3 budget or state cap exceeded.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys

from onlineramsey import __version__
from onlineramsey.bounds import bound_report, cockayne_lorimer, known_values, lower_bound_applies
from onlineramsey.game import GameConfig, GameError
from onlineramsey.play import play_interactive
from onlineramsey.solver import (
    BudgetExceeded,
    ExactSolver,
    Finite,
    best_builder_vs_painter,
    certify_builder_win,
    optimal_first_moves,
)
from onlineramsey.store import ResultsStore, result_record, run_regression
from onlineramsey.verify import DEFAULT_STATE_CAP, verify_painter_exhaustive, verify_painter_random

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3
THREADS_ENV = "ONLINERAMSEY_THREADS"


def _targets(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.split(",") if x.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _config(args: argparse.Namespace) -> GameConfig:
    if args.targets is None:
        raise GameError("--targets is required")
    t = args.colors if args.colors is not None else len(args.targets)
    n = args.n if args.n is not None else cockayne_lorimer(args.targets)
    return GameConfig(t, args.targets, n)


def _emit(args: argparse.Namespace, payload, text: str) -> None:
    print(json.dumps(payload, sort_keys=True) if args.json else text)


def _sandwich(config: GameConfig, k: int) -> bool:
    if not lower_bound_applies(config):
        return True
    rep = bound_report(config)
    return rep.lower <= k <= math.ceil(rep.upper)


def cmd_solve(args: argparse.Namespace) -> int:
    config = _config(args)
    solver = ExactSolver(config)
    value = solver.solve(args.budget)
    first = []
    if isinstance(value, Finite):
        first = optimal_first_moves(config, args.budget, solver)
    record = result_record(config, value, solver.stats, first)
    code = EXIT_OK
    notes = []
    rep = bound_report(config)
    if isinstance(value, Finite):
        if rep.known is not None:
            ok = rep.known.matches(value.k)
            notes.append(f"known {sorted(rep.known.values)}: {'ok' if ok else 'MISMATCH'}")
            code = code if ok else EXIT_FAIL
        if not _sandwich(config, value.k):
            notes.append("outside [lower, ceil(upper)]")
            code = EXIT_FAIL
        if args.certify:
            ok, leaves = certify_builder_win(config, value.k, solver)
            record["certified"] = ok
            notes.append(f"certificate {'ok' if ok else 'FAILED'} ({leaves} leaves)")
            code = code if ok else EXIT_FAIL
    elif isinstance(value, BudgetExceeded):
        code = EXIT_BUDGET
    if args.out:
        ResultsStore(args.out).append(record)
    moves = ", ".join(f"{e}->{v}" for e, v in first)
    text = f"{config}: {value}  lower={rep.lower} ramsey_n={rep.ramsey_n}"
    if moves:
        text += f"\n  optimal openings: {moves}"
    if notes:
        text += "\n  " + "; ".join(notes)
    s = solver.stats
    text += f"\n  nodes={s.nodes} memo_hits={s.memo_hits} memo={s.memo_size} time={s.wall_time:.3f}s"
    _emit(args, record, text)
    return code


def cmd_solve_vs_painter(args: argparse.Namespace) -> int:
    config = _config(args)
    value, stats = best_builder_vs_painter(config, args.budget)
    record = result_record(config, value, stats, kind="vs_painter")
    code = EXIT_OK
    lower = bound_report(config).lower
    if isinstance(value, Finite) and lower_bound_applies(config) and value.k < lower:
        code = EXIT_FAIL
    elif isinstance(value, BudgetExceeded):
        code = EXIT_BUDGET
    if args.out:
        ResultsStore(args.out).append(record)
    _emit(args, record, f"{config} vs matching Painter: {value}  (lower bound {lower}, {stats.nodes} states)")
    return code


def cmd_verify(args: argparse.Namespace) -> int:
    config = _config(args)
    if args.trials:
        report = verify_painter_random(
            config,
            args.trials,
            args.seed,
            args.depth,
            randomize_painter=args.randomize_painter,
            workers=args.threads,
        )
    else:
        report = verify_painter_exhaustive(config, args.depth, args.cap)
    payload = report.to_json()
    if args.out:
        with open(args.out, "a") as fh:
            fh.write(json.dumps(payload, sort_keys=True) + "\n")
    status = "vacuous" if report.vacuous else ("ok" if report.success else "FAILED")
    text = (
        f"{config} {report.mode} depth={report.depth}: {status}; "
        f"{report.sequences} sequences, {report.states} states, "
        f"violations={dict(report.violations)}, {report.wall_time:.2f}s"
    )
    _emit(args, payload, text)
    if not report.complete:
        return EXIT_BUDGET
    return EXIT_OK if report.success else EXIT_FAIL


def cmd_bounds(args: argparse.Namespace) -> int:
    if args.targets is not None:
        reports = [bound_report(_config(args))]
    else:
        reports = [bound_report(k.config) for k in known_values(args.r_max)]
    rows = [r.to_json() for r in reports]
    lines = ["t  r              n   R   lower  upper      T    known"]
    for r in rows:
        lines.append(
            f"{r['t']:<2} {str(r['r']):<15} {r['n']:<3} {r['ramsey_n']:<3} {r['lower']:<6} "
            f"{str(r['upper'])[:10]:<10} {r['survival_T']:<4} {r.get('known_value', '')}"
        )
    _emit(args, rows, "\n".join(lines))
    return EXIT_OK


def cmd_play(args: argparse.Namespace) -> int:
    config = _config(args)
    if args.out:
        with open(args.out, "a") as fh:
            return play_interactive(config, trace=fh)
    return play_interactive(config)


def cmd_regress(args: argparse.Namespace) -> int:
    if not args.out:
        raise GameError("--out FILE (the results store) is required")
    results = run_regression(ResultsStore(args.out), args.r_max)
    rows = [r.to_json() for r in results]
    text = "\n".join(f"{r['status']:<8} {r['config']} expected {r['expected']} got {r['got']}" for r in rows)
    _emit(args, rows, text)
    return EXIT_FAIL if any(r.status == "fail" for r in results) else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    shared = argparse.ArgumentParser(add_help=False)
    shared.add_argument("--colors", type=int, help="number of colours t (defaults to the number of targets)")
    shared.add_argument("--targets", type=_targets, help="target matching sizes, e.g. 2,2")
    shared.add_argument("--n", type=int, help="vertices of K_n (defaults to the Ramsey number)")
    shared.add_argument("--budget", type=int, help="Builder move limit (default: unlimited)")
    shared.add_argument("--seed", type=int, default=0)
    shared.add_argument("--trials", type=int, default=0, help="random verification trials (0: exhaustive)")
    shared.add_argument("--depth", type=int, help="verification depth (default: survival horizon)")
    shared.add_argument("--out", help="append JSON Lines output to FILE")
    shared.add_argument("--json", action="store_true", help="machine-readable output")
    shared.add_argument("--threads", type=int, default=int(os.environ.get(THREADS_ENV, "1")))

    parser = argparse.ArgumentParser(prog="onlineramsey", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", parents=[shared], help="exact game value")
    p.add_argument("--certify", action="store_true", help="re-check the win on raw boards")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("solve-vs-painter", parents=[shared], help="best Builder against the matching Painter")
    p.set_defaults(func=cmd_solve_vs_painter)

    p = sub.add_parser("verify-painter", parents=[shared], help="check the Painter survives")
    p.add_argument("--cap", type=int, default=DEFAULT_STATE_CAP, help="max annotated states (exhaustive)")
    p.add_argument("--randomize-painter", action="store_true", help="resolve Painter's free choices at random")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("bounds", parents=[shared], help="closed-form bounds")
    p.add_argument("--r-max", type=int, default=5)
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("play", parents=[shared], help="play Builder interactively")
    p.set_defaults(func=cmd_play)

    p = sub.add_parser("regress", parents=[shared], help="check stored results against known values")
    p.add_argument("--r-max", type=int, default=5)
    p.set_defaults(func=cmd_regress)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.targets is not None and args.colors is not None and args.colors != len(args.targets):
            raise GameError(f"--colors {args.colors} does not match {len(args.targets)} targets")
        return args.func(args)
    except GameError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
