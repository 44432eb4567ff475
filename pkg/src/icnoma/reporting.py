"""End-to-end runs over scenarios plus report emission (JSON, CSV, figures)."""

from __future__ import annotations

import csv
import json
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Sequence

from .analysis import (
    PowerReport,
    RateParams,
    RateReport,
    power_report,
    rate_report,
    rate_ic_baseline,
)
from .grouping import GroupAssignment, GroupGains, assign_groups, group_min_gains
from .icp import IndexCode, solve_exact, solve_greedy, trivial_length
from .pipeline import ThreeGroupCode, design_two_group, run_stages
from .scenario import Scenario
from .scheduler import (
    Case,
    DEFAULT_PROFILE,
    PowerProfile,
    TransmissionPlan,
    build_plan,
    verify_delivery,
)

CSV_COLUMNS = [
    "case_id",
    "l_f",
    "l_m",
    "l_n",
    "l_ic",
    "l_icnoma",
    "R_avg",
    "P_avg",
    "P_saving",
]

DEGENERATE_NOTE = (
    "a stage code is empty: the plan falls back to two-layer or single-code "
    "rounds and the thirteen-case analysis does not apply"
)


@dataclass(slots=True)
class RunReport:
    scenario: Scenario
    solver: str
    groups: GroupAssignment
    gains: GroupGains
    code: ThreeGroupCode
    plan: TransmissionPlan
    case: Case
    l_ic: int
    whole_code: IndexCode
    two_group_lengths: tuple[int, int]
    delivered: bool
    rate: RateReport | None
    power: PowerReport | None

    @property
    def lengths(self) -> tuple[int, int, int]:
        return self.code.lengths

    @property
    def l_icnoma(self) -> int:
        return self.plan.n_transmissions

    @property
    def l_two_group(self) -> int:
        return max(self.two_group_lengths)


def _solve_whole(scenario: Scenario, solver: str) -> IndexCode:
    problem = scenario.to_problem()
    if solver == "greedy":
        return solve_greedy(problem)
    code = solve_exact(problem, l_max=trivial_length(problem))
    assert code is not None, "the send-everything code always validates"
    return code


def run(
    scenario: Scenario,
    *,
    solver: str | None = None,
    profile: PowerProfile | None = None,
    power: float | None = None,
) -> RunReport:
    """Full flow: group, design the three codes, schedule, verify, analyze."""
    chosen_solver = solver or scenario.solver or "exact"
    chosen_profile = profile or scenario.profile or DEFAULT_PROFILE
    if power is not None:
        chosen_profile = PowerProfile(
            power,
            chosen_profile.alpha,
            chosen_profile.beta,
            chosen_profile.gamma,
            chosen_profile.alpha1,
        )
    problem = scenario.to_problem()
    ch = scenario.channel_state()
    groups = scenario.groups or assign_groups(ch)
    gains = group_min_gains(ch, groups)
    code = run_stages(problem, groups, chosen_solver)  # type: ignore[arg-type]
    plan = build_plan(code, chosen_profile)
    delivered = verify_delivery(problem, groups, plan)
    whole = _solve_whole(scenario, chosen_solver)
    two_far, two_near = design_two_group(problem, groups, chosen_solver)  # type: ignore[arg-type]
    if plan.transmissions:
        rp = RateParams.from_parts(gains, chosen_profile)
        rrep = rate_report(plan, rp)
        prep = power_report(plan, gains, chosen_profile.p, chosen_profile, whole.length)
    else:
        rrep = None
        prep = None
    return RunReport(
        scenario=scenario,
        solver=chosen_solver,
        groups=groups,
        gains=gains,
        code=code,
        plan=plan,
        case=plan.case,
        l_ic=whole.length,
        whole_code=whole,
        two_group_lengths=(two_far.length, two_near.length),
        delivered=delivered,
        rate=rrep,
        power=prep,
    )


# ---------------------------------------------------------------------------
# Serialization.

def _rows_as_terms(code: IndexCode) -> list[list[int]]:
    return [list(row.support) for row in code.matrix.rows]


def report_to_dict(report: RunReport) -> dict[str, Any]:
    l_f, l_m, l_n = report.lengths
    doc: dict[str, Any] = {
        "solver": report.solver,
        "groups": {
            "near": sorted(report.groups.near),
            "intermediate": sorted(report.groups.intermediate),
            "far": sorted(report.groups.far),
        },
        "group_min_gains": {
            "near": report.gains.near,
            "intermediate": report.gains.intermediate,
            "far": report.gains.far,
        },
        "codes": {
            "far": _rows_as_terms(report.code.far_code),
            "intermediate": _rows_as_terms(report.code.mid_code),
            "near": _rows_as_terms(report.code.near_code),
        },
        "lengths": {"l_f": l_f, "l_m": l_m, "l_n": l_n},
        "l_ic": report.l_ic,
        "l_icnoma": report.l_icnoma,
        "l_two_group": report.l_two_group,
        "case": report.case.value,
        "counts": {
            "noma3": report.plan.counts[0],
            "noma2": report.plan.counts[1],
            "ic": report.plan.counts[2],
        },
        "delivered": report.delivered,
        "plan": [
            {
                "kind": tx.kind.value,
                "layers": [
                    {
                        "terms": list(layer.codeword.support),
                        "coefficient": layer.coefficient,
                        "target": layer.target.value,
                    }
                    for layer in tx.layers
                ],
            }
            for tx in report.plan.transmissions
        ],
    }
    if report.case is Case.DEGENERATE:
        doc["degenerate_note"] = DEGENERATE_NOTE
    if report.rate is not None:
        doc["rate"] = {
            "R_avg": report.rate.r_avg,
            "R_ic_baseline": report.rate.r_ic_baseline,
            "per_transmission": [
                {
                    "kind": row.kind.value,
                    "detail": row.detail,
                    "total": row.total,
                    "per_group": {g.value: r for g, r in row.per_group},
                }
                for row in report.rate.per_transmission
            ],
        }
    if report.power is not None:
        doc["power"] = {
            "P_ic": report.power.p_ic,
            "P_avg": report.power.p_avg,
            "P_total": report.power.p_total,
            "P_saving": report.power.p_saving,
            "zetas": {
                "noma3": report.power.zetas.noma3,
                "mid_far": report.power.zetas.mid_far,
                "near_far": report.power.zetas.near_far,
                "near_mid": report.power.zetas.near_mid,
                "near_ic": report.power.zetas.near_ic,
                "mid_ic": report.power.zetas.mid_ic,
            },
            "per_transmission": [
                {"kind": row.kind.value, "detail": row.detail, "power": row.power}
                for row in report.power.per_transmission
            ],
        }
    return doc


def report_csv_row(report: RunReport) -> dict[str, Any]:
    l_f, l_m, l_n = report.lengths
    return {
        "case_id": report.case.value,
        "l_f": l_f,
        "l_m": l_m,
        "l_n": l_n,
        "l_ic": report.l_ic,
        "l_icnoma": report.l_icnoma,
        "R_avg": "" if report.rate is None else f"{report.rate.r_avg:.10g}",
        "P_avg": "" if report.power is None else f"{report.power.p_avg:.10g}",
        "P_saving": ""
        if report.power is None or report.power.p_saving is None
        else f"{report.power.p_saving:.10g}",
    }


def write_run_outputs(report: RunReport, out_dir: str | Path) -> list[Path]:
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    json_path = out / "report.json"
    json_path.write_text(json.dumps(report_to_dict(report), indent=2) + "\n")
    csv_path = out / "report.csv"
    with csv_path.open("w", newline="") as fh:
        writer = csv.DictWriter(fh, fieldnames=CSV_COLUMNS)
        writer.writeheader()
        writer.writerow(report_csv_row(report))
    return [json_path, csv_path]


# ---------------------------------------------------------------------------
# Parameter sweeps.

@dataclass(slots=True)
class SweepRow:
    label: str
    p: float
    report: RunReport


def sweep(
    scenario: Scenario,
    powers: Sequence[float],
    *,
    label: str = "scenario",
    solver: str | None = None,
    profile: PowerProfile | None = None,
) -> list[SweepRow]:
    """One run per grid power.  Codes, plan and baseline length depend only
    on the scenario, so they are solved once and re-analyzed per power."""
    if not powers:
        raise ScenarioGridError("sweep needs a nonempty power grid")
    base = run(scenario, solver=solver, profile=profile, power=powers[0])
    rows = [SweepRow(label, powers[0], base)]
    for p in powers[1:]:
        chosen_profile = profile or scenario.profile or DEFAULT_PROFILE
        pp = PowerProfile(
            p, chosen_profile.alpha, chosen_profile.beta, chosen_profile.gamma, chosen_profile.alpha1
        )
        if base.plan.transmissions:
            rp = RateParams.from_parts(base.gains, pp)
            rrep = rate_report(base.plan, rp)
            prep = power_report(base.plan, base.gains, p, pp, base.l_ic)
        else:
            rrep = None
            prep = None
        rows.append(
            SweepRow(
                label,
                p,
                RunReport(
                    scenario=scenario,
                    solver=base.solver,
                    groups=base.groups,
                    gains=base.gains,
                    code=base.code,
                    plan=base.plan,
                    case=base.case,
                    l_ic=base.l_ic,
                    whole_code=base.whole_code,
                    two_group_lengths=base.two_group_lengths,
                    delivered=base.delivered,
                    rate=rrep,
                    power=prep,
                ),
            )
        )
    return rows


class ScenarioGridError(ValueError):
    pass


def write_sweep_csv(rows: list[SweepRow], path: str | Path) -> Path:
    p = Path(path)
    with p.open("w", newline="") as fh:
        writer = csv.DictWriter(fh, fieldnames=["scenario", "P", *CSV_COLUMNS])
        writer.writeheader()
        for row in rows:
            writer.writerow(
                {"scenario": row.label, "P": f"{row.p:.10g}", **report_csv_row(row.report)}
            )
    return p


def render_sweep_figures(rows: list[SweepRow], out_dir: str | Path) -> list[Path]:
    """Average-rate and average-power curves per scenario, with the
    single-code broadcast baseline for reference."""
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    by_label: dict[str, list[SweepRow]] = {}
    for row in rows:
        by_label.setdefault(row.label, []).append(row)

    rate_path = out / "avg_rate_vs_power.png"
    fig, ax = plt.subplots(figsize=(7, 4.5))
    baseline_drawn = False
    for label, group in by_label.items():
        group = sorted(group, key=lambda r: r.p)
        xs = [r.p for r in group]
        ys = [r.report.rate.r_avg if r.report.rate else 0.0 for r in group]
        ax.plot(xs, ys, marker="o", markersize=3, label=f"{label} (case {group[0].report.case.value})")
        if not baseline_drawn:
            base = [rate_ic_baseline(r.report.gains.far, r.p) for r in group]
            ax.plot(xs, base, linestyle="--", color="black", label="single-code broadcast")
            baseline_drawn = True
    ax.set_xlabel("transmit power P")
    ax.set_ylabel("average sum rate (bpcu)")
    ax.legend(fontsize=8)
    ax.grid(True, alpha=0.3)
    fig.tight_layout()
    fig.savefig(rate_path, dpi=150)
    plt.close(fig)

    power_path = out / "avg_power_vs_power.png"
    fig, ax = plt.subplots(figsize=(7, 4.5))
    baseline_drawn = False
    for label, group in by_label.items():
        group = sorted(group, key=lambda r: r.p)
        xs = [r.p for r in group]
        ys = [r.report.power.p_avg if r.report.power else 0.0 for r in group]
        ax.plot(xs, ys, marker="o", markersize=3, label=f"{label} (case {group[0].report.case.value})")
        if not baseline_drawn:
            ax.plot(xs, xs, linestyle="--", color="black", label="single-code broadcast")
            baseline_drawn = True
    ax.set_xlabel("baseline transmit power P")
    ax.set_ylabel("average equal-rate power (W)")
    ax.legend(fontsize=8)
    ax.grid(True, alpha=0.3)
    fig.tight_layout()
    fig.savefig(power_path, dpi=150)
    plt.close(fig)
    return [rate_path, power_path]
