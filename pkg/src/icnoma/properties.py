"""Randomized property suites behind the `property-check` command.

Each suite returns an outcome object rather than raising, so callers
(CLI, tests) decide how to surface failures.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from .analysis import (
    Pair,
    RateParams,
    compute_zetas,
    equal_rate_power_ic,
    equal_rate_power_noma2,
    equal_rate_power_noma3,
    ic_gain_over_baseline,
    noma2_gain_over_baseline,
    noma2_sum_rate,
    noma3_gain_over_baseline,
    noma3_sum_rate,
    power_savings,
    rate_ic_baseline,
    rate_ic_in_scheme,
    zeta_noma2_closed_form,
    zeta_noma3_closed_form,
)
from .grouping import Group, GroupGains, assign_groups
from .icp import solve_exact, trivial_length
from .pipeline import design_two_group, run_stages
from .scenario import RandomInstanceSpec, Scenario, generate
from .scheduler import Case, PowerProfile, _CASE_ROWS, _algorithm_counts, classify_case


@dataclass(slots=True)
class PropertyOutcome:
    name: str
    trials: int
    violations: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.violations

    def summary(self) -> str:
        status = "pass" if self.passed else f"FAIL ({len(self.violations)} violations)"
        return f"{self.name}: {self.trials} trials, {status}"


# ---------------------------------------------------------------------------
# Random draws.

def _random_gains(rng: random.Random) -> GroupGains:
    g_f = rng.uniform(0.05, 2.0)
    g_m = g_f + rng.uniform(0.05, 3.0)
    g_n = g_m + rng.uniform(0.05, 4.0)
    return GroupGains(g_n, g_m, g_f)


def _random_profile(rng: random.Random) -> PowerProfile:
    p = rng.uniform(0.5, 100.0)
    alpha = rng.uniform(0.02, 0.3)
    beta_hi = (1.0 - alpha) / 2.0
    beta = rng.uniform(alpha + 1e-3, beta_hi - 1e-3)
    gamma = 1.0 - alpha - beta
    alpha1 = rng.uniform(0.02, 0.48)
    return PowerProfile(p, alpha, beta, gamma, alpha1)


def _random_params(rng: random.Random) -> RateParams:
    return RateParams.from_parts(_random_gains(rng), _random_profile(rng))


def random_vanet_scenario(rng: random.Random, max_messages: int = 8) -> Scenario:
    """Scenario whose gain clusters survive the distance-based grouping:
    the median gain must land in the intermediate cluster, which bounds
    how large the near group may be relative to the rest."""
    while True:
        n = rng.randint(4, max_messages)
        near = rng.randint(1, 3)
        mid = rng.randint(1, 3)
        far = rng.randint(1, 3)
        total = near + mid + far
        median_lo = (total + 1) // 2  # 1-based sorted position(s) of the median
        median_hi = total // 2 + 1
        if near < median_lo and near + mid >= median_hi:
            break
    spec = RandomInstanceSpec(
        n=n,
        group_sizes=(near, mid, far),
        cache_density=rng.choice([0.2, 0.35, 0.5]),
        demand_density=rng.choice([0.35, 0.45, 0.6]),
        gain_centers=(10.0, 5.0, 1.0),
        gain_spread=rng.choice([0.0, 0.3, 0.8]),
        seed=rng.getrandbits(32),
    )
    return generate(spec)


# ---------------------------------------------------------------------------
# Suites.

def check_case_totality() -> PropertyOutcome:
    """Every all-positive length triple in [1..6]^3 matches exactly one
    ordering row, with per-kind counts summing to the longest length and
    agreeing with the round-construction arithmetic."""
    outcome = PropertyOutcome("case-totality", trials=0)
    for l_f in range(1, 7):
        for l_m in range(1, 7):
            for l_n in range(1, 7):
                outcome.trials += 1
                matches = [c for c, pred, _ in _CASE_ROWS if pred(l_f, l_m, l_n)]
                if len(matches) != 1:
                    outcome.violations.append(
                        f"lengths {(l_f, l_m, l_n)} matched {[c.value for c in matches]}"
                    )
                    continue
                case, counts = classify_case(l_f, l_m, l_n)
                if sum(counts) != max(l_f, l_m, l_n):
                    outcome.violations.append(
                        f"lengths {(l_f, l_m, l_n)}: counts {counts} do not sum to the max"
                    )
                if counts != _algorithm_counts(l_f, l_m, l_n):
                    outcome.violations.append(
                        f"lengths {(l_f, l_m, l_n)}: table counts {counts} disagree with "
                        f"round construction {_algorithm_counts(l_f, l_m, l_n)}"
                    )
                if case is Case.DEGENERATE:
                    outcome.violations.append(
                        f"lengths {(l_f, l_m, l_n)} wrongly classified degenerate"
                    )
    return outcome


def check_round_bounds(trials: int = 1000, seed: int = 2024) -> tuple[PropertyOutcome, PropertyOutcome]:
    """Round-count bounds with the exact solver over random scenarios:
    (a) the staged scheme never needs more rounds than one optimal code
    for everyone; (b) whenever the intermediate code is not the longest,
    it also never needs more rounds than the two-group baseline."""
    rng = random.Random(seed)
    bound = PropertyOutcome("staged-vs-single-code-bound", trials)
    two_group = PropertyOutcome("staged-vs-two-group-bound", 0)
    for _ in range(trials):
        scenario = random_vanet_scenario(rng)
        problem = scenario.to_problem()
        ga = assign_groups(scenario.channel_state())
        code = run_stages(problem, ga, "exact")
        whole = solve_exact(problem, l_max=trivial_length(problem))
        assert whole is not None
        l_f, l_m, l_n = code.lengths
        if max(code.lengths) > whole.length:
            bound.violations.append(
                f"lengths {code.lengths} exceed single-code optimum {whole.length}: "
                f"{scenario}"
            )
        if l_m <= max(l_f, l_n):
            two_group.trials += 1
            far2, near2 = design_two_group(problem, ga, "exact")
            l_star = max(far2.length, near2.length)
            if max(code.lengths) > l_star:
                two_group.violations.append(
                    f"lengths {code.lengths} exceed two-group baseline {l_star}: {scenario}"
                )
    return bound, two_group


def check_rate_gaps(trials: int = 10_000, seed: int = 99, rel_tol: float = 1e-10) -> PropertyOutcome:
    """Closed-form rate advantages are positive and equal the sum-rate
    differences they abbreviate."""
    rng = random.Random(seed)
    outcome = PropertyOutcome("rate-advantage-positivity", trials)
    baseline_of = lambda rp: rate_ic_baseline(rp.g_f, rp.p)
    for t in range(trials):
        rp = _random_params(rng)
        checks = [
            ("three-layer", noma3_gain_over_baseline(rp), noma3_sum_rate(rp) - baseline_of(rp)),
        ]
        for pair in Pair:
            checks.append(
                (
                    f"pair {pair.name}",
                    noma2_gain_over_baseline(pair, rp),
                    noma2_sum_rate(pair, rp) - baseline_of(rp),
                )
            )
        for label, closed, direct in checks:
            if closed <= 0:
                outcome.violations.append(f"trial {t}: {label} advantage {closed} <= 0")
            if abs(closed - direct) > rel_tol * max(abs(direct), 1e-300):
                outcome.violations.append(
                    f"trial {t}: {label} closed form {closed} != difference {direct}"
                )
        for group in (Group.NEAR, Group.INTERMEDIATE):
            adv = ic_gain_over_baseline(group, rp)
            direct = rate_ic_in_scheme(group, rp) - baseline_of(rp)
            if adv <= 0:
                outcome.violations.append(f"trial {t}: single-layer {group.value} advantage <= 0")
            if abs(adv - direct) > rel_tol * max(abs(direct), 1e-300):
                outcome.violations.append(
                    f"trial {t}: single-layer {group.value} closed form mismatch"
                )
    return outcome


def check_zeta_consistency(trials: int = 1000, seed: int = 7, rel_tol: float = 1e-8) -> PropertyOutcome:
    """Root-found equal-rate powers reproduce the closed-form saving
    identities, and every saving is strictly positive."""
    rng = random.Random(seed)
    outcome = PropertyOutcome("equal-rate-power-consistency", trials)
    for t in range(trials):
        gains = _random_gains(rng)
        profile = _random_profile(rng)
        p_ic = profile.p
        p_a, z3 = equal_rate_power_noma3(p_ic, gains, profile.alpha, profile.beta, profile.gamma)
        closed = zeta_noma3_closed_form(p_a, gains, profile.alpha, profile.beta)
        if z3 <= 0:
            outcome.violations.append(f"trial {t}: three-layer saving {z3} <= 0")
        if abs(z3 - closed) > rel_tol * abs(closed):
            outcome.violations.append(
                f"trial {t}: three-layer saving {z3} != closed form {closed}"
            )
        for pair in Pair:
            p_pair, z = equal_rate_power_noma2(pair, p_ic, gains, profile.alpha1)
            closed = zeta_noma2_closed_form(pair, p_pair, gains, profile.alpha1)
            if z <= 0:
                outcome.violations.append(f"trial {t}: pair {pair.name} saving {z} <= 0")
            if abs(z - closed) > rel_tol * abs(closed):
                outcome.violations.append(
                    f"trial {t}: pair {pair.name} saving {z} != closed form {closed}"
                )
        for group in (Group.NEAR, Group.INTERMEDIATE):
            p_g, z = equal_rate_power_ic(group, p_ic, gains)
            g = gains.near if group is Group.NEAR else gains.intermediate
            closed = (g - gains.far) * p_g / gains.far
            if z <= 0:
                outcome.violations.append(f"trial {t}: single-layer {group.value} saving <= 0")
            if abs(z - closed) > rel_tol * abs(closed):
                outcome.violations.append(
                    f"trial {t}: single-layer {group.value} closed form mismatch"
                )
    return outcome


def _random_lengths_for_case(case: Case, rng: random.Random) -> tuple[int, int, int]:
    """(l_f, l_m, l_n) satisfying the case's ordering constraints."""
    a = rng.randint(1, 4)
    b = a + rng.randint(1, 3)
    c = b + rng.randint(1, 3)
    if case is Case.I:
        return (a, a, a)
    if case is Case.II:
        return (c, b, a)
    if case is Case.III:
        return (b, a, c)
    if case is Case.IV:
        return (a, c, b)
    if case is Case.V:
        return (b, a, a)
    if case is Case.VI:
        return (c, a, b)
    if case is Case.VII:
        return (b, a, b)
    if case is Case.VIII:
        return (b, b, a)
    if case is Case.IX:
        return (a, a, b)
    if case is Case.X:
        return (a, b, b)
    if case is Case.XI:
        return (a, b, a)
    if case is Case.XII:
        return (a, b, c)
    if case is Case.XIII:
        return (b, c, a)
    raise ValueError(f"no length pattern for {case}")


def check_savings_positive(trials: int = 10_000, seed: int = 5) -> PropertyOutcome:
    """Per-case total power saving is positive for every admissible draw."""
    rng = random.Random(seed)
    cases = [c for c in Case if c is not Case.DEGENERATE]
    outcome = PropertyOutcome("per-case-saving-positivity", trials)
    for t in range(trials):
        case = cases[t % len(cases)]
        lengths = _random_lengths_for_case(case, rng)
        got_case, _ = classify_case(*lengths)
        if got_case is not case:
            outcome.violations.append(
                f"trial {t}: drawn lengths {lengths} classify as {got_case}, wanted {case}"
            )
            continue
        l_ic = max(lengths) + rng.randint(0, 3)
        gains = _random_gains(rng)
        profile = _random_profile(rng)
        zetas = compute_zetas(profile.p, gains, profile)
        saving = power_savings(case, lengths, l_ic, profile.p, zetas)
        if saving <= 0:
            outcome.violations.append(
                f"trial {t}: case {case.value} lengths {lengths} l_ic {l_ic} saving {saving} <= 0"
            )
    return outcome


def run_all(
    bound_trials: int = 1000,
    numeric_trials: int = 10_000,
    zeta_trials: int = 1000,
    seed: int = 2024,
) -> list[PropertyOutcome]:
    t1, t2 = check_round_bounds(bound_trials, seed)
    return [
        check_case_totality(),
        t1,
        t2,
        check_rate_gaps(numeric_trials, seed + 1),
        check_zeta_consistency(zeta_trials, seed + 2),
        check_savings_positive(numeric_trials, seed + 3),
    ]
