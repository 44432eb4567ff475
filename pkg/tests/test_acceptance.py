"""Acceptance suite: every exit criterion with its stated tolerance and
runtime budget, one printed pass/fail line per criterion.

Run with `pytest tests/test_acceptance.py -v -s` to see the lines live.
"""

import math
import time
from contextlib import contextmanager

import pytest

from icnoma import (
    BitMatrix,
    GroupGains,
    IndexCode,
    PowerProfile,
    RateParams,
    TransmissionKind,
    assign_groups,
    build_plan,
    is_valid_code,
    power_report,
    rate_report,
    reduce_by_coded_rows,
    restrict,
    run_stages,
    solve_exact,
    verify_delivery,
)
from icnoma.grouping import Group
from icnoma.icp import trivial_length
from icnoma.properties import (
    check_case_totality,
    check_rate_gaps,
    check_savings_positive,
    check_round_bounds,
    check_zeta_consistency,
)
from icnoma.scenario import ingest
from conftest import GRID9_EXPECTED_LENGTHS, GRID9_FILES, SCENARIO_DIR
from support import synthetic_code


@contextmanager
def criterion(number: int, label: str, budget_s: float):
    start = time.monotonic()
    try:
        yield
    except BaseException:
        print(f"[criterion {number:2d}] FAIL  {label}", flush=True)
        raise
    elapsed = time.monotonic() - start
    if elapsed > budget_s:
        print(
            f"[criterion {number:2d}] FAIL  {label} (took {elapsed:.2f}s > {budget_s}s)",
            flush=True,
        )
        raise AssertionError(f"criterion {number} exceeded budget: {elapsed:.2f}s")
    print(f"[criterion {number:2d}] PASS  {label} ({elapsed:.2f}s)", flush=True)


def test_criterion_1_chain_demands_optimum(chain4_problem):
    with criterion(1, "length-3 optimum for the 4-user chain, no 2-row code", 1.0):
        code = solve_exact(chain4_problem)
        assert code is not None and code.length == 3
        assert is_valid_code(chain4_problem, code)
        reference = IndexCode(
            BitMatrix.from_bits([[1, 1, 0, 0], [0, 1, 1, 0], [0, 0, 1, 1]])
        )
        assert is_valid_code(chain4_problem, reference)
        assert solve_exact(chain4_problem, l_max=2) is None


def test_criterion_2_cross_pair_single_round():
    with criterion(2, "cross-demand fleet: 3 baseline rounds vs 1 layered round", 1.0):
        scenario = ingest(SCENARIO_DIR / "cross_pair_4user.json")
        problem = scenario.to_problem()
        whole = solve_exact(problem, l_max=trivial_length(problem))
        assert whole.length == 3
        ga = assign_groups(scenario.channel_state())
        code = run_stages(problem, ga, "exact")
        assert code.lengths == (1, 1, 1)
        plan = build_plan(code)
        assert plan.n_transmissions == 1
        assert [t.kind for t in plan.transmissions] == [TransmissionKind.NOMA3]
        assert verify_delivery(problem, ga, plan)


def test_criterion_3_convoy5_mixed_plan(convoy5_scenario, convoy5_groups):
    with criterion(3, "5-vehicle convoy: lengths (1,2,1), 3-layer + solo round", 5.0):
        problem = convoy5_scenario.to_problem()
        code = run_stages(problem, convoy5_groups, "exact")
        assert code.lengths == (1, 2, 1)
        plan = build_plan(code)
        assert [t.kind for t in plan.transmissions] == [
            TransmissionKind.NOMA3,
            TransmissionKind.IC,
        ]
        assert plan.transmissions[1].target is Group.INTERMEDIATE
        assert verify_delivery(problem, convoy5_groups, plan)


def test_criterion_4_convoy6_two_layer_plan(convoy6_scenario):
    with criterion(4, "6-vehicle convoy: lengths (2,2,0), two 2-layer rounds", 5.0):
        problem = convoy6_scenario.to_problem()
        ga = assign_groups(convoy6_scenario.channel_state())
        code = run_stages(problem, ga, "exact")
        assert code.lengths == (2, 2, 0)
        plan = build_plan(code)
        assert [t.kind for t in plan.transmissions] == [TransmissionKind.NOMA2] * 2
        for tx in plan.transmissions:
            assert tx.pair == (Group.INTERMEDIATE, Group.FAR)
        assert verify_delivery(problem, ga, plan)


def test_criterion_5_grid9_column_lengths():
    with criterion(5, "9-message fleet: all four demand mixes hit their lengths", 60.0):
        for column, filename in GRID9_FILES.items():
            scenario = ingest(SCENARIO_DIR / filename)
            problem = scenario.to_problem()
            ga = assign_groups(scenario.channel_state())
            code = run_stages(problem, ga, "exact")
            assert code.lengths == GRID9_EXPECTED_LENGTHS[column], column
            assert is_valid_code(restrict(problem, ga.far), code.far_code)
            assert is_valid_code(
                reduce_by_coded_rows(restrict(problem, ga.intermediate), code.far_code.matrix),
                code.mid_code,
            )
            assert is_valid_code(
                reduce_by_coded_rows(
                    restrict(problem, ga.near),
                    code.far_code.matrix.stack(code.mid_code.matrix),
                ),
                code.near_code,
            )


def test_criterion_6_case_table_totality():
    with criterion(6, "all 216 positive length triples classify uniquely", 1.0):
        outcome = check_case_totality()
        assert outcome.trials == 216
        assert outcome.passed, outcome.violations[:5]


_BOUND_RESULTS = {}


def test_criterion_7_staged_never_beaten_by_single_code():
    with criterion(7, "1000 random instances: staged rounds <= single-code optimum", 600.0):
        t1, t2 = check_round_bounds(trials=1000, seed=20240)
        _BOUND_RESULTS["t1"], _BOUND_RESULTS["t2"] = t1, t2
        assert t1.trials == 1000
        assert t1.passed, t1.violations[:5]


def test_criterion_8_staged_never_beaten_by_two_group():
    with criterion(8, "same instances, premise subset: staged <= two-group baseline", 600.0):
        t2 = _BOUND_RESULTS.get("t2")
        if t2 is None:
            _, t2 = check_round_bounds(trials=1000, seed=20240)
        assert t2.trials > 0
        assert t2.passed, t2.violations[:5]


def test_criterion_9_rate_advantages():
    with criterion(9, "10^4 draws: every rate advantage positive and exact to 1e-10", 120.0):
        outcome = check_rate_gaps(trials=10_000, seed=991, rel_tol=1e-10)
        assert outcome.passed, outcome.violations[:5]


def test_criterion_10_equal_rate_power_oracles():
    with criterion(10, "10^3 draws: root-found powers match closed forms to 1e-8", 120.0):
        outcome = check_zeta_consistency(trials=1000, seed=77, rel_tol=1e-8)
        assert outcome.passed, outcome.violations[:5]


def test_criterion_11_savings_positive_all_cases():
    with criterion(11, "10^4 draws over 13 cases: total saving strictly positive", 300.0):
        outcome = check_savings_positive(trials=10_000, seed=55)
        assert outcome.passed, outcome.violations[:5]


def test_criterion_12_ordering_of_matched_cases():
    with criterion(
        12, "matched lengths, P in [1,100]: near-heavy beats far-heavy on both axes", 120.0
    ):
        gains = GroupGains(4.0, 2.0, 1.0)
        far_heavy = build_plan(synthetic_code(6, 3, 2, 1))  # counts (1,1,1), solo far
        near_heavy = build_plan(synthetic_code(6, 2, 1, 3))  # counts (1,1,1), solo near
        assert far_heavy.case.value == "II"
        assert near_heavy.case.value == "III"
        for p in [1.0 + 99.0 * i / 24.0 for i in range(25)]:
            profile = PowerProfile(p, 0.1, 0.3, 0.6, 0.2)
            rp = RateParams.from_parts(gains, profile)
            r_far = rate_report(far_heavy, rp).r_avg
            r_near = rate_report(near_heavy, rp).r_avg
            assert r_near > r_far, f"rate ordering violated at P={p}"
            p_far = power_report(far_heavy, gains, p, profile).p_avg
            p_near = power_report(near_heavy, gains, p, profile).p_avg
            assert p_near < p_far, f"power ordering violated at P={p}"


def test_plain_rate_sanity():
    # Sum rates decompose exactly into their per-layer parts (additivity).
    gains = GroupGains(4.0, 2.0, 1.0)
    profile = PowerProfile(10.0, 0.1, 0.3, 0.6, 0.2)
    rp = RateParams.from_parts(gains, profile)
    plan = build_plan(synthetic_code(9, 3, 3, 3), profile)
    report = rate_report(plan, rp)
    for row in report.per_transmission:
        assert row.total == pytest.approx(sum(r for _, r in row.per_group), rel=1e-12)
    assert report.r_ic_baseline == pytest.approx(math.log2(1 + 1.0 * 10.0), rel=1e-12)
