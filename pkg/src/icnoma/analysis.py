"""Achievable-rate and equal-rate power analysis of layered transmission
plans against a single-code broadcast baseline.

All rates are in bits per channel use with unit-variance noise; gains are
linear power gains.  Group rates are driven by the worst gain in each
group.  "Equal-rate power" of a transmission kind is the power at which
its sum rate matches the baseline rate log2(1 + g_f * P_ic); the saving
per transmission is the difference from P_ic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import NamedTuple

from .grouping import Group, GroupGains
from .scheduler import (
    Case,
    PowerProfile,
    Transmission,
    TransmissionKind,
    TransmissionPlan,
)


class AnalysisError(ValueError):
    """Parameters violate the assumptions behind the rate equations."""


class Pair(Enum):
    """Which two groups share a two-layer transmission (nearer listed first)."""

    MID_FAR = (Group.INTERMEDIATE, Group.FAR)
    NEAR_FAR = (Group.NEAR, Group.FAR)
    NEAR_MID = (Group.NEAR, Group.INTERMEDIATE)

    @property
    def high(self) -> Group:
        return self.value[0]

    @property
    def low(self) -> Group:
        return self.value[1]

    @classmethod
    def of(cls, high: Group, low: Group) -> Pair:
        for pair in cls:
            if pair.value == (high, low):
                return pair
        raise AnalysisError(f"no two-layer pairing of ({high}, {low})")


@dataclass(frozen=True, slots=True)
class RateParams:
    g_n: float
    g_m: float
    g_f: float
    p: float
    alpha: float
    beta: float
    gamma: float
    alpha1: float

    def __post_init__(self) -> None:
        if not self.g_n > self.g_m > self.g_f > 0:
            raise AnalysisError(
                f"group gains must satisfy g_n > g_m > g_f > 0, got "
                f"({self.g_n}, {self.g_m}, {self.g_f})"
            )
        # Mirror of the PowerProfile invariants.
        PowerProfile(self.p, self.alpha, self.beta, self.gamma, self.alpha1)

    @classmethod
    def from_parts(cls, gains: GroupGains, profile: PowerProfile) -> RateParams:
        return cls(
            gains.near,
            gains.intermediate,
            gains.far,
            profile.p,
            profile.alpha,
            profile.beta,
            profile.gamma,
            profile.alpha1,
        )

    def gain(self, group: Group) -> float:
        return {
            Group.NEAR: self.g_n,
            Group.INTERMEDIATE: self.g_m,
            Group.FAR: self.g_f,
        }[group]

    def at_power(self, p: float) -> RateParams:
        return RateParams(
            self.g_n, self.g_m, self.g_f, p, self.alpha, self.beta, self.gamma, self.alpha1
        )


class Noma3Rates(NamedTuple):
    far: float
    mid: float
    near: float
    total: float


class PairRates(NamedTuple):
    high: float
    low: float
    total: float


# ---------------------------------------------------------------------------
# Per-kind rates.

def rate_ic_baseline(g_f: float, power: float) -> float:
    """Baseline rate of a full-power broadcast, pinned by the worst user."""
    if g_f <= 0 or power <= 0:
        raise AnalysisError("gain and power must be positive")
    return math.log2(1.0 + g_f * power)


def rates_noma3(rp: RateParams) -> Noma3Rates:
    """Per-group and sum rates of a three-layer transmission.

    The far layer is decoded with both lower layers as noise; the
    intermediate layer after cancelling the far layer, with the near
    layer as noise; the near layer after cancelling both.
    """
    p = rp.p
    r_f = math.log2(
        1.0 + rp.gamma * p * rp.g_f / (1.0 + (rp.alpha + rp.beta) * p * rp.g_f)
    )
    r_m = math.log2(1.0 + rp.beta * p * rp.g_m / (1.0 + rp.alpha * p * rp.g_m))
    r_n = math.log2(1.0 + rp.alpha * p * rp.g_n)
    return Noma3Rates(r_f, r_m, r_n, r_f + r_m + r_n)


def noma3_sum_rate(rp: RateParams) -> float:
    """Product closed form of the three-layer sum rate."""
    p, a, b = rp.p, rp.alpha, rp.beta
    return math.log2(
        (1.0 + p * rp.g_f)
        * (1.0 + (a + b) * p * rp.g_m)
        * (1.0 + a * p * rp.g_n)
        / ((1.0 + (a + b) * p * rp.g_f) * (1.0 + a * p * rp.g_m))
    )


def rates_noma2(pair: Pair, rp: RateParams) -> PairRates:
    """Rates of a two-layer transmission: the farther group's row rides the
    high-power layer and is decoded with the other layer as noise; the
    nearer group cancels it and decodes the low-power layer cleanly."""
    if not isinstance(pair, Pair):
        raise AnalysisError(f"unknown pair tag {pair!r}")
    p, a1 = rp.p, rp.alpha1
    g_hi, g_lo = rp.gain(pair.high), rp.gain(pair.low)
    r_low = math.log2(1.0 + (1.0 - a1) * p * g_lo / (1.0 + a1 * p * g_lo))
    r_high = math.log2(1.0 + a1 * p * g_hi)
    return PairRates(r_high, r_low, r_high + r_low)


def noma2_sum_rate(pair: Pair, rp: RateParams) -> float:
    p, a1 = rp.p, rp.alpha1
    g_hi, g_lo = rp.gain(pair.high), rp.gain(pair.low)
    return math.log2((1.0 + p * g_lo) * (1.0 + a1 * p * g_hi) / (1.0 + a1 * p * g_lo))


def rate_ic_in_scheme(group: Group, rp: RateParams) -> float:
    """Rate of a full-power single-layer round aimed at one group; nearer
    groups decode it too, farther groups cannot."""
    if not isinstance(group, Group):
        raise AnalysisError(f"unknown group tag {group!r}")
    return math.log2(1.0 + rp.gain(group) * rp.p)


# Rate advantages over the baseline (zero for far-targeted single layers).

def noma3_gain_over_baseline(rp: RateParams) -> float:
    p, a, b = rp.p, rp.alpha, rp.beta
    return math.log2(
        (1.0 + (a + b) * p * rp.g_m)
        * (1.0 + a * p * rp.g_n)
        / ((1.0 + (a + b) * p * rp.g_f) * (1.0 + a * p * rp.g_m))
    )


def noma2_gain_over_baseline(pair: Pair, rp: RateParams) -> float:
    p, a1 = rp.p, rp.alpha1
    if pair is Pair.MID_FAR:
        return math.log2((1.0 + a1 * p * rp.g_m) / (1.0 + a1 * p * rp.g_f))
    if pair is Pair.NEAR_FAR:
        return math.log2((1.0 + a1 * p * rp.g_n) / (1.0 + a1 * p * rp.g_f))
    if pair is Pair.NEAR_MID:
        return math.log2(
            (1.0 + p * rp.g_m)
            * (1.0 + a1 * p * rp.g_n)
            / ((1.0 + p * rp.g_f) * (1.0 + a1 * p * rp.g_m))
        )
    raise AnalysisError(f"unknown pair tag {pair!r}")


def ic_gain_over_baseline(group: Group, rp: RateParams) -> float:
    return math.log2((1.0 + rp.p * rp.gain(group)) / (1.0 + rp.p * rp.g_f))


# ---------------------------------------------------------------------------
# Equal-rate powers and savings.

@dataclass(frozen=True, slots=True)
class ZetaSet:
    """Per-transmission power savings of each kind at baseline-rate parity."""

    noma3: float
    mid_far: float
    near_far: float
    near_mid: float
    near_ic: float
    mid_ic: float

    def for_pair(self, pair: Pair) -> float:
        return {
            Pair.MID_FAR: self.mid_far,
            Pair.NEAR_FAR: self.near_far,
            Pair.NEAR_MID: self.near_mid,
        }[pair]

    def for_ic(self, group: Group) -> float:
        return {
            Group.NEAR: self.near_ic,
            Group.INTERMEDIATE: self.mid_ic,
            Group.FAR: 0.0,
        }[group]


def _bisect_power(rate_at, target: float, p_ic: float) -> float:
    """Power where a strictly increasing rate function meets the target."""
    if rate_at(p_ic) < target:
        raise AnalysisError(
            "rate at the baseline power falls below the baseline rate; "
            "this cannot happen for strictly ordered group gains"
        )
    lo, hi = 0.0, p_ic
    for _ in range(200):
        if hi - lo <= 1e-15 * max(1.0, hi):
            break
        mid = 0.5 * (lo + hi)
        if rate_at(mid) < target:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def zeta_noma3_closed_form(
    p_a: float, gains: GroupGains, alpha: float, beta: float
) -> float:
    """Identity satisfied by the three-layer equal-rate power p_a."""
    g_n, g_m, g_f = gains
    ab = alpha + beta
    numerator = (1.0 + p_a * g_f) * (
        alpha * p_a * (g_n - g_m)
        + ab * p_a * (g_m - g_f)
        + alpha * ab * p_a * p_a * g_m * (g_n - g_f)
    )
    denominator = g_f * (1.0 + alpha * p_a * g_m) * (1.0 + ab * p_a * g_f)
    return numerator / denominator


def zeta_noma2_closed_form(
    pair: Pair, p_pair: float, gains: GroupGains, alpha1: float
) -> float:
    """Identity satisfied by a pair's equal-rate power p_pair."""
    g_n, g_m, g_f = gains
    if pair is Pair.MID_FAR:
        return (
            (1.0 + p_pair * g_f)
            * alpha1
            * p_pair
            * (g_m - g_f)
            / (g_f * (1.0 + alpha1 * p_pair * g_f))
        )
    if pair is Pair.NEAR_FAR:
        return (
            (1.0 + p_pair * g_f)
            * alpha1
            * p_pair
            * (g_n - g_f)
            / (g_f * (1.0 + alpha1 * p_pair * g_f))
        )
    if pair is Pair.NEAR_MID:
        numerator = (
            alpha1 * p_pair * (g_n - g_m)
            + p_pair * (g_m - g_f)
            + alpha1 * p_pair * p_pair * g_m * (g_n - g_f)
        )
        return numerator / (g_f * (1.0 + alpha1 * p_pair * g_m))
    raise AnalysisError(f"unknown pair tag {pair!r}")


def equal_rate_power_noma3(
    p_ic: float, gains: GroupGains, alpha: float, beta: float, gamma: float
) -> tuple[float, float]:
    """(P_a, zeta): three-layer power matching the baseline rate at p_ic."""
    rp0 = RateParams(*gains, p_ic, alpha, beta, gamma, 0.25)  # alpha1 unused here
    target = rate_ic_baseline(gains.far, p_ic)
    p_a = _bisect_power(lambda p: noma3_sum_rate(rp0.at_power(p)), target, p_ic)
    return p_a, p_ic - p_a


def equal_rate_power_noma2(
    pair: Pair, p_ic: float, gains: GroupGains, alpha1: float
) -> tuple[float, float]:
    """(P_pair, zeta_pair) for a two-layer transmission of the given pair."""
    rp0 = RateParams(*gains, p_ic, 0.1, 0.3, 0.6, alpha1)
    target = rate_ic_baseline(gains.far, p_ic)
    p_pair = _bisect_power(lambda p: noma2_sum_rate(pair, rp0.at_power(p)), target, p_ic)
    return p_pair, p_ic - p_pair


def equal_rate_power_ic(
    group: Group, p_ic: float, gains: GroupGains
) -> tuple[float, float]:
    """(P_group, zeta_group) for a single-layer round aimed at a nearer group.

    Exact: log2(1 + g_group * P_group) = log2(1 + g_f * p_ic) at
    P_group = p_ic * g_f / g_group."""
    if group is Group.FAR:
        return p_ic, 0.0
    g = {Group.NEAR: gains.near, Group.INTERMEDIATE: gains.intermediate}[group]
    p_group = p_ic * gains.far / g
    return p_group, p_ic - p_group


def compute_zetas(p_ic: float, gains: GroupGains, profile: PowerProfile) -> ZetaSet:
    _, z3 = equal_rate_power_noma3(p_ic, gains, profile.alpha, profile.beta, profile.gamma)
    _, z_mf = equal_rate_power_noma2(Pair.MID_FAR, p_ic, gains, profile.alpha1)
    _, z_nf = equal_rate_power_noma2(Pair.NEAR_FAR, p_ic, gains, profile.alpha1)
    _, z_nm = equal_rate_power_noma2(Pair.NEAR_MID, p_ic, gains, profile.alpha1)
    _, z_n = equal_rate_power_ic(Group.NEAR, p_ic, gains)
    _, z_m = equal_rate_power_ic(Group.INTERMEDIATE, p_ic, gains)
    return ZetaSet(z3, z_mf, z_nf, z_nm, z_n, z_m)


def power_savings(
    case: Case,
    lengths: tuple[int, int, int],
    l_ic: int,
    p_ic: float,
    zetas: ZetaSet,
) -> float:
    """Total power saved versus l_ic baseline rounds at p_ic each.

    Every case reduces to: the rounds replaced outright save p_ic apiece,
    and each remaining round saves its kind's zeta.  Single-layer rounds
    aimed at far users save nothing."""
    l_f, l_m, l_n = lengths
    if l_ic < max(lengths):
        raise AnalysisError(
            f"baseline length {l_ic} below the longest stage code {max(lengths)}"
        )
    z, z_mf, z_nf, z_nm, z_n, z_m = (
        zetas.noma3,
        zetas.mid_far,
        zetas.near_far,
        zetas.near_mid,
        zetas.near_ic,
        zetas.mid_ic,
    )
    table = {
        Case.I: (l_ic - l_f) * p_ic + z * l_f,
        Case.II: (l_ic - l_f) * p_ic + z * l_n + (l_m - l_n) * z_mf,
        Case.III: (l_ic - l_n) * p_ic + z * l_m + (l_f - l_m) * z_nf + (l_n - l_f) * z_n,
        Case.IV: (l_ic - l_m) * p_ic + z * l_f + (l_n - l_f) * z_nm + (l_m - l_n) * z_m,
        Case.V: (l_ic - l_f) * p_ic + z * l_n,
        Case.VI: (l_ic - l_f) * p_ic + z * l_m + (l_n - l_m) * z_nf,
        Case.VII: (l_ic - l_n) * p_ic + z * l_m + (l_n - l_m) * z_nf,
        Case.VIII: (l_ic - l_m) * p_ic + z * l_n + (l_m - l_n) * z_mf,
        Case.IX: (l_ic - l_n) * p_ic + z * l_m + (l_n - l_f) * z_n,
        Case.X: (l_ic - l_m) * p_ic + z * l_f + (l_m - l_f) * z_nm,
        Case.XI: (l_ic - l_m) * p_ic + z * l_n + (l_m - l_f) * z_m,
        Case.XII: (l_ic - l_n) * p_ic + z * l_f + (l_m - l_f) * z_nm + (l_n - l_m) * z_n,
        Case.XIII: (l_ic - l_m) * p_ic + z * l_n + (l_f - l_n) * z_mf + (l_m - l_f) * z_m,
    }
    if case not in table:
        raise AnalysisError(f"no savings row for case {case}")
    return table[case]


# ---------------------------------------------------------------------------
# Whole-plan reports.

@dataclass(slots=True)
class TransmissionRate:
    kind: TransmissionKind
    detail: str
    per_group: tuple[tuple[Group, float], ...]
    total: float


@dataclass(slots=True)
class RateReport:
    per_transmission: list[TransmissionRate]
    r_avg: float
    r_ic_baseline: float


@dataclass(slots=True)
class TransmissionPower:
    kind: TransmissionKind
    detail: str
    power: float


@dataclass(slots=True)
class PowerReport:
    per_transmission: list[TransmissionPower]
    zetas: ZetaSet
    p_ic: float
    p_total: float
    p_avg: float
    l_ic: int | None
    p_saving: float | None


def _transmission_rate(tx: Transmission, rp: RateParams) -> TransmissionRate:
    if tx.kind is TransmissionKind.NOMA3:
        rates = rates_noma3(rp)
        return TransmissionRate(
            tx.kind,
            "near+intermediate+far",
            (
                (Group.FAR, rates.far),
                (Group.INTERMEDIATE, rates.mid),
                (Group.NEAR, rates.near),
            ),
            rates.total,
        )
    if tx.kind is TransmissionKind.NOMA2:
        pair = Pair.of(*tx.pair)
        rates = rates_noma2(pair, rp)
        return TransmissionRate(
            tx.kind,
            f"{pair.high.value}+{pair.low.value}",
            ((pair.high, rates.high), (pair.low, rates.low)),
            rates.total,
        )
    group = tx.target
    rate = rate_ic_in_scheme(group, rp)
    return TransmissionRate(tx.kind, group.value, ((group, rate),), rate)


def rate_report(plan: TransmissionPlan, rp: RateParams) -> RateReport:
    """Per-transmission sum rates and their average over the plan."""
    if not plan.transmissions:
        raise AnalysisError("cannot build a rate report for an empty plan")
    rows = [_transmission_rate(tx, rp) for tx in plan.transmissions]
    r_avg = sum(row.total for row in rows) / len(rows)
    return RateReport(rows, r_avg, rate_ic_baseline(rp.g_f, rp.p))


def power_report(
    plan: TransmissionPlan,
    gains: GroupGains,
    p_ic: float,
    profile: PowerProfile,
    l_ic: int | None = None,
) -> PowerReport:
    """Equal-rate power of every transmission, average, and total saving
    against l_ic baseline rounds (when l_ic is known)."""
    if not plan.transmissions:
        raise AnalysisError("cannot build a power report for an empty plan")
    zetas = compute_zetas(p_ic, gains, profile)
    rows: list[TransmissionPower] = []
    for tx in plan.transmissions:
        if tx.kind is TransmissionKind.NOMA3:
            rows.append(
                TransmissionPower(tx.kind, "near+intermediate+far", p_ic - zetas.noma3)
            )
        elif tx.kind is TransmissionKind.NOMA2:
            pair = Pair.of(*tx.pair)
            rows.append(
                TransmissionPower(
                    tx.kind,
                    f"{pair.high.value}+{pair.low.value}",
                    p_ic - zetas.for_pair(pair),
                )
            )
        else:
            group = tx.target
            rows.append(
                TransmissionPower(tx.kind, group.value, p_ic - zetas.for_ic(group))
            )
    p_total = sum(row.power for row in rows)
    p_avg = p_total / len(rows)
    p_saving = None if l_ic is None else l_ic * p_ic - p_total
    return PowerReport(rows, zetas, p_ic, p_total, p_avg, l_ic, p_saving)
