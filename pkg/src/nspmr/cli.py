"""Command line front end: run one planner, benchmark suites, generate worlds.

Exit codes: 0 when the run reached the goal, 2 when the planner finished
without reaching it (stuck, iteration limit, unreachable), 1 for usage or
validation errors.
"""

from __future__ import annotations

import argparse
import os
import sys
from dataclasses import replace

from . import output
from .geometry import GeometryError
from .sim import (
    OUTCOME_GOAL,
    PLANNERS,
    SimulationError,
    grid_oracle,
    run,
)
from .world import (
    BUILTIN_NAMES,
    Scenario,
    ScenarioError,
    WorldSpec,
    builtin_scenario,
    generate_world,
    parse_scenario,
    serialize_scenario,
)

SEED_ENV = "NSPMR_SEED"


class CliError(Exception):
    """Bad flags or inputs; reported on stderr with exit status 1."""


def _env_seed() -> int:
    raw = os.environ.get(SEED_ENV)
    if raw is None:
        return 0
    try:
        return int(raw)
    except ValueError:
        raise CliError(f"{SEED_ENV} must be an integer, got {raw!r}") from None


def _seed_of(args) -> int:
    # flag wins over the environment; both absent means seed 0; the
    # environment is read lazily so a stale value cannot break runs
    # that never need a seed
    return args.seed if args.seed is not None else _env_seed()


def _load_scenario(spec: str, args) -> Scenario:
    if spec.startswith("builtin:"):
        return builtin_scenario(spec[len("builtin:"):])
    if spec == "random":
        return generate_world(_seed_of(args))
    try:
        with open(spec) as fh:
            text = fh.read()
    except OSError as e:
        raise CliError(f"cannot read scenario file {spec!r}: {e}") from None
    return parse_scenario(text)


def _apply_overrides(s: Scenario, args) -> Scenario:
    fields = {}
    if args.delta is not None:
        fields["delta"] = args.delta
    if args.sensor_range is not None:
        fields["sensor_range"] = args.sensor_range
    return replace(s, **fields) if fields else s


def cmd_run(args) -> int:
    s = _apply_overrides(_load_scenario(args.scenario, args), args)
    trajectory, result = run(s, args.planner, args.max_iters)
    if args.out_csv:
        output.write_trajectory_csv(args.out_csv, trajectory)
    if args.out_svg:
        output.write_svg(args.out_svg, s, [trajectory])
    print(f"{result.outcome} {result.length:.3f} {result.travel_time:.3f} {result.iterations}")
    return 0 if result.outcome == OUTCOME_GOAL else 2


def _parse_planners(raw: str) -> list[str]:
    names = [p.strip() for p in raw.split(",") if p.strip()]
    if not names:
        raise CliError("planner list is empty")
    for name in names:
        if name not in PLANNERS:
            raise CliError(f"unknown planner {name!r}; expected one of {PLANNERS}")
    return names


def _parse_ranges(raw: str | None) -> list[float | None]:
    if raw is None:
        return [None]
    out: list[float | None] = []
    for part in raw.split(","):
        part = part.strip()
        if not part:
            continue
        try:
            d = float(part)
        except ValueError:
            raise CliError(f"bad sensor range {part!r}") from None
        if d <= 0:
            raise CliError(f"sensor range must be positive, got {part}")
        out.append(d)
    if not out:
        raise CliError("range list is empty")
    return out


def _suite_scenarios(args) -> list[Scenario]:
    if args.suite == "paper":
        return [builtin_scenario(name) for name in BUILTIN_NAMES]
    if args.seeds <= 0:
        raise CliError("random suite needs --seeds >= 1")
    base = _env_seed()
    return [generate_world(base + i) for i in range(args.seeds)]


def cmd_bench(args) -> int:
    planners = _parse_planners(args.planners)
    ranges = _parse_ranges(args.ranges)
    rows = []
    for s in _suite_scenarios(args):
        # the lattice oracle reads a static snapshot, so moving worlds get none
        oracle = None if s.is_dynamic else grid_oracle(s, s.delta / 2)
        for d in ranges:
            sc = s if d is None else replace(s, sensor_range=d)
            label = s.name if d is None else f"{s.name}[d={d:g}]"
            for planner in planners:
                try:
                    _, result = run(sc, planner)
                except ScenarioError as e:
                    print(f"note: skipping {label}/{planner}: {e}", file=sys.stderr)
                    continue
                rows.append(output.bench_row(label, planner, result, oracle))
    # single collector: every artifact is written after all runs finished
    report = output.make_report(rows)
    sys.stdout.write(output.format_report_table(report))
    if args.out:
        output.write_report_csv(args.out, report)
    return 0


def cmd_gen(args) -> int:
    if args.count < 0:
        raise CliError("--count must be >= 0")
    s = generate_world(_seed_of(args), WorldSpec(count=args.count))
    with open(args.out, "w") as fh:
        fh.write(serialize_scenario(s))
    print(f"wrote {args.out}")
    return 0


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        # argparse defaults to status 2, which this tool reserves for
        # runs that finished short of the goal
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="nspmr", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p_run = sub.add_parser("run", help="run one planner on one scenario")
    p_run.add_argument("--scenario", required=True,
                       help="scenario JSON path, builtin:NAME, or 'random'")
    p_run.add_argument("--planner", required=True, choices=PLANNERS)
    p_run.add_argument("--sensor-range", type=float, default=None, metavar="D")
    p_run.add_argument("--delta", type=float, default=None)
    p_run.add_argument("--max-iters", type=int, default=None)
    p_run.add_argument("--out-csv", default=None, metavar="PATH")
    p_run.add_argument("--out-svg", default=None, metavar="PATH")
    p_run.add_argument("--seed", type=int, default=None,
                       help="seed for generated scenarios (default: $NSPMR_SEED)")
    p_run.set_defaults(func=cmd_run)

    p_bench = sub.add_parser("bench", help="run a scenario suite and tabulate results")
    p_bench.add_argument("--suite", choices=("paper", "random"), default="paper")
    p_bench.add_argument("--seeds", type=int, default=5,
                         help="number of generated worlds for the random suite")
    p_bench.add_argument("--planners", default=",".join(PLANNERS),
                         help="comma separated planner list")
    p_bench.add_argument("--ranges", default=None,
                         help="comma separated sensor ranges to sweep")
    p_bench.add_argument("--out", default=None, metavar="PATH", help="write report CSV here")
    p_bench.set_defaults(func=cmd_bench)

    p_gen = sub.add_parser("gen", help="generate a random solvable world file")
    p_gen.add_argument("--seed", type=int, default=None,
                       help="generator seed (default: $NSPMR_SEED)")
    p_gen.add_argument("--count", type=int, default=8, help="obstacle count")
    p_gen.add_argument("--out", required=True, metavar="PATH")
    p_gen.set_defaults(func=cmd_gen)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except SystemExit as e:
        return 0 if e.code is None else int(e.code)
    except (CliError, ScenarioError, GeometryError, SimulationError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
