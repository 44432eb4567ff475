"""Command-line interface: solve, run, sweep, generate, baseline,
property-check.

Exit codes: 0 success, 2 validation error, 3 solver capability exceeded,
4 property failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .gf2 import GF2ShapeError
from .grouping import GroupingError
from .icp import CapabilityError, ProblemSpecError, solve_exact, solve_greedy, trivial_length
from .properties import (
    check_case_totality,
    check_rate_gaps,
    check_savings_positive,
    check_round_bounds,
    check_zeta_consistency,
)
from .reporting import (
    render_sweep_figures,
    report_to_dict,
    run,
    sweep,
    write_run_outputs,
    write_sweep_csv,
)
from .scenario import RandomInstanceSpec, ScenarioError, emit, generate, ingest
from .scheduler import PowerProfile, SchedulerError

EXIT_OK = 0
EXIT_VALIDATION = 2
EXIT_CAPABILITY = 3
EXIT_PROPERTY = 4

_VALIDATION_ERRORS = (
    ScenarioError,
    ProblemSpecError,
    GroupingError,
    SchedulerError,
    GF2ShapeError,
    ValueError,
)


def _parse_profile(text: str, power: float | None) -> PowerProfile:
    parts = text.split(",")
    if len(parts) != 4:
        raise ScenarioError("--profile expects 'alpha,beta,gamma,alpha1'")
    try:
        alpha, beta, gamma, alpha1 = (float(x) for x in parts)
    except ValueError as exc:
        raise ScenarioError(f"--profile values must be numbers: {exc}") from exc
    return PowerProfile(power if power is not None else 10.0, alpha, beta, gamma, alpha1)


def _parse_powers(text: str) -> list[float]:
    """Either 'start:stop:count' or a comma-separated list."""
    if ":" in text:
        parts = text.split(":")
        if len(parts) != 3:
            raise ScenarioError("--powers expects 'start:stop:count' or 'p1,p2,...'")
        start, stop, count = float(parts[0]), float(parts[1]), int(parts[2])
        if count < 1 or stop < start:
            raise ScenarioError("--powers grid must have count >= 1 and stop >= start")
        if count == 1:
            return [start]
        step = (stop - start) / (count - 1)
        return [start + i * step for i in range(count)]
    return [float(x) for x in text.split(",")]


def _resolved_profile(args: argparse.Namespace) -> PowerProfile | None:
    if args.profile is not None:
        return _parse_profile(args.profile, args.power)
    if args.power is not None:
        return PowerProfile(p=args.power)
    return None


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--solver", choices=["exact", "greedy"], default=None)
    parser.add_argument("--profile", help="alpha,beta,gamma,alpha1", default=None)
    parser.add_argument("--power", type=float, default=None, help="baseline power P")
    parser.add_argument("--out", default=None, help="output directory or file")


def _cmd_solve(args: argparse.Namespace) -> int:
    scenario = ingest(args.scenario)
    problem = scenario.to_problem()
    solver = args.solver or scenario.solver or "exact"
    if solver == "greedy":
        code = solve_greedy(problem)
    else:
        code = solve_exact(problem, l_max=trivial_length(problem))
        assert code is not None
    doc = {
        "solver": solver,
        "length": code.length,
        "rows": [list(r.support) for r in code.matrix.rows],
    }
    text = json.dumps(doc, indent=2)
    if args.out:
        Path(args.out).write_text(text + "\n")
    print(text)
    return EXIT_OK


def _cmd_run(args: argparse.Namespace) -> int:
    scenario = ingest(args.scenario)
    report = run(scenario, solver=args.solver, profile=_resolved_profile(args), power=args.power)
    doc = report_to_dict(report)
    if args.out:
        paths = write_run_outputs(report, args.out)
        print(f"wrote {', '.join(str(p) for p in paths)}")
    print(json.dumps(doc, indent=2))
    return EXIT_OK


def _cmd_sweep(args: argparse.Namespace) -> int:
    powers = _parse_powers(args.powers)
    all_rows = []
    for path in args.scenarios:
        scenario = ingest(path)
        label = Path(path).stem
        all_rows += sweep(
            scenario, powers, label=label, solver=args.solver, profile=_resolved_profile(args)
        )
    out_dir = Path(args.out or "sweep-out")
    out_dir.mkdir(parents=True, exist_ok=True)
    csv_path = write_sweep_csv(all_rows, out_dir / "sweep.csv")
    written = [csv_path]
    if not args.no_figures:
        written += render_sweep_figures(all_rows, out_dir)
    print(f"wrote {', '.join(str(p) for p in written)}")
    return EXIT_OK


def _cmd_generate(args: argparse.Namespace) -> int:
    sizes = tuple(int(x) for x in args.group_sizes.split(","))
    centers = tuple(float(x) for x in args.gain_centers.split(","))
    if len(sizes) != 3 or len(centers) != 3:
        raise ScenarioError("--group-sizes and --gain-centers expect three comma-separated values")
    spec = RandomInstanceSpec(
        n=args.messages,
        group_sizes=sizes,  # type: ignore[arg-type]
        cache_density=args.cache_density,
        demand_density=args.demand_density,
        gain_centers=centers,  # type: ignore[arg-type]
        gain_spread=args.gain_spread,
        seed=args.seed,
    )
    scenario = generate(spec)
    if args.out:
        emit(scenario, args.out)
        print(f"wrote {args.out}")
    else:
        from .scenario import scenario_to_dict

        print(json.dumps(scenario_to_dict(scenario), indent=2))
    return EXIT_OK


def _cmd_baseline(args: argparse.Namespace) -> int:
    scenario = ingest(args.scenario)
    report = run(scenario, solver=args.solver, profile=_resolved_profile(args), power=args.power)
    doc = {
        "l_ic": report.l_ic,
        "lengths": dict(zip(("l_f", "l_m", "l_n"), report.lengths)),
        "l_icnoma": report.l_icnoma,
        "two_group_lengths": dict(
            zip(("l_far", "l_near"), report.two_group_lengths)
        ),
        "l_two_group": report.l_two_group,
        "transmissions_saved_vs_single_code": report.l_ic - report.l_icnoma,
        "transmissions_saved_vs_two_group": report.l_two_group - report.l_icnoma,
    }
    print(json.dumps(doc, indent=2))
    return EXIT_OK


def _cmd_property_check(args: argparse.Namespace) -> int:
    suites = []
    want = set(args.suite or ["all"])
    run_everything = "all" in want
    if run_everything or "cases" in want:
        suites.append(check_case_totality())
    if run_everything or "single-code-bound" in want or "two-group-bound" in want:
        t1, t2 = check_round_bounds(args.trials, args.seed)
        if run_everything or "single-code-bound" in want:
            suites.append(t1)
        if run_everything or "two-group-bound" in want:
            suites.append(t2)
    if run_everything or "rates" in want:
        suites.append(check_rate_gaps(max(args.trials, 10_000), args.seed + 1))
    if run_everything or "zeta" in want:
        suites.append(check_zeta_consistency(args.trials, args.seed + 2))
    if run_everything or "savings" in want:
        suites.append(check_savings_positive(max(args.trials, 10_000), args.seed + 3))
    failed = False
    for outcome in suites:
        print(outcome.summary())
        for v in outcome.violations[:10]:
            print(f"  - {v}")
        failed = failed or not outcome.passed
    return EXIT_PROPERTY if failed else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="icnoma",
        description=(
            "Design grouped index codes for a three-group power-layered downlink, "
            "schedule and verify the transmissions, and report rates and power savings."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="shortest single code for the whole scenario")
    p.add_argument("scenario")
    _add_common(p)
    p.set_defaults(func=_cmd_solve)

    p = sub.add_parser("run", help="full three-group flow with reports")
    p.add_argument("scenario")
    _add_common(p)
    p.set_defaults(func=_cmd_run)

    p = sub.add_parser("sweep", help="rate/power reports over a power grid")
    p.add_argument("scenarios", nargs="+")
    p.add_argument("--powers", default="1:100:25", help="start:stop:count or p1,p2,...")
    p.add_argument("--no-figures", action="store_true")
    _add_common(p)
    p.set_defaults(func=_cmd_sweep)

    p = sub.add_parser("generate", help="write a reproducible random scenario")
    p.add_argument("--messages", type=int, required=True)
    p.add_argument("--group-sizes", required=True, help="near,intermediate,far")
    p.add_argument("--cache-density", type=float, default=0.35)
    p.add_argument("--demand-density", type=float, default=0.45)
    p.add_argument("--gain-centers", default="10,5,1")
    p.add_argument("--gain-spread", type=float, default=0.5)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", default=None)
    p.set_defaults(func=_cmd_generate)

    p = sub.add_parser("baseline", help="compare against single-code and two-group designs")
    p.add_argument("scenario")
    _add_common(p)
    p.set_defaults(func=_cmd_baseline)

    p = sub.add_parser("property-check", help="randomized invariant suites")
    p.add_argument(
        "--suite",
        action="append",
        choices=["all", "cases", "single-code-bound", "two-group-bound", "rates", "zeta", "savings"],
    )
    p.add_argument("--trials", type=int, default=1000)
    p.add_argument("--seed", type=int, default=2024)
    p.set_defaults(func=_cmd_property_check)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except CapabilityError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAPABILITY
    except _VALIDATION_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION


if __name__ == "__main__":
    sys.exit(main())
