"""Transmission planning: power-layer multiplexing of the three stage codes
and a symbolic check that every receiver can still decode its demands.

With code lengths (l_f, l_m, l_n), the first min of the three rounds send
one row of each code on three power layers, the next rounds pair the two
longer codes on two layers, and the longest code finishes alone at full
power.  Which of the thirteen length orderings holds fixes the mix of
round kinds; total rounds are always max(l_f, l_m, l_n).
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Callable

from .gf2 import BitVector, insert_mask, reduce_mask, unit_mask
from .grouping import Group, GroupAssignment
from .icp import IndexCodingProblem
from .pipeline import ThreeGroupCode


class SchedulerError(ValueError):
    """A plan or profile violates its structural invariants."""


class TransmissionKind(Enum):
    NOMA3 = "NOMA3"
    NOMA2 = "NOMA2"
    IC = "IC"


class Case(Enum):
    """Length-ordering classes; DEGENERATE marks any zero-length stage,
    where the scheme collapses to a two-group or single-code broadcast."""

    I = "I"
    II = "II"
    III = "III"
    IV = "IV"
    V = "V"
    VI = "VI"
    VII = "VII"
    VIII = "VIII"
    IX = "IX"
    X = "X"
    XI = "XI"
    XII = "XII"
    XIII = "XIII"
    DEGENERATE = "DEGENERATE"


@dataclass(frozen=True, slots=True)
class PowerProfile:
    """Per-transmission power and layer coefficients."""

    p: float = 10.0
    alpha: float = 0.1
    beta: float = 0.3
    gamma: float = 0.6
    alpha1: float = 0.2

    def __post_init__(self) -> None:
        if self.p <= 0:
            raise SchedulerError("transmission power must be positive")
        if not 0 < self.alpha < self.beta < self.gamma:
            raise SchedulerError("coefficients must satisfy 0 < alpha < beta < gamma")
        if abs(self.alpha + self.beta + self.gamma - 1.0) > 1e-9:
            raise SchedulerError("alpha + beta + gamma must equal 1")
        if not 0 < self.alpha1 < 0.5:
            raise SchedulerError("alpha1 must lie in (0, 0.5)")


DEFAULT_PROFILE = PowerProfile()


@dataclass(frozen=True, slots=True)
class Layer:
    codeword: BitVector
    coefficient: float
    target: Group


@dataclass(frozen=True, slots=True)
class Transmission:
    kind: TransmissionKind
    layers: tuple[Layer, ...]

    def __post_init__(self) -> None:
        expected = {
            TransmissionKind.NOMA3: 3,
            TransmissionKind.NOMA2: 2,
            TransmissionKind.IC: 1,
        }[self.kind]
        if len(self.layers) != expected:
            raise SchedulerError(
                f"{self.kind.value} transmission needs {expected} layers, got {len(self.layers)}"
            )
        total = sum(layer.coefficient for layer in self.layers)
        if abs(total - 1.0) > 1e-9:
            raise SchedulerError("layer coefficients must sum to 1")
        coeffs = [layer.coefficient for layer in self.layers]
        if coeffs != sorted(coeffs):
            raise SchedulerError("layers must be ordered lowest power first")

    @property
    def pair(self) -> tuple[Group, Group]:
        """(nearer target, farther target) of a two-layer transmission."""
        if self.kind is not TransmissionKind.NOMA2:
            raise SchedulerError("pair is defined only for NOMA2 transmissions")
        return (self.layers[0].target, self.layers[1].target)

    @property
    def target(self) -> Group:
        """Target group of a single-layer transmission."""
        if self.kind is not TransmissionKind.IC:
            raise SchedulerError("target is defined only for IC transmissions")
        return self.layers[0].target


@dataclass(frozen=True, slots=True)
class TransmissionPlan:
    transmissions: tuple[Transmission, ...]
    case: Case
    counts: tuple[int, int, int]
    lengths: tuple[int, int, int]

    @property
    def n_transmissions(self) -> int:
        return len(self.transmissions)


# ---------------------------------------------------------------------------
# Case classification.

def _algorithm_counts(l_f: int, l_m: int, l_n: int) -> tuple[int, int, int]:
    """(#three-layer, #two-layer, #single-layer) rounds for any lengths."""
    k = min(l_f, l_m, l_n)
    if min(l_f, l_n) > l_m:
        two = min(l_f, l_n) - l_m
    elif min(l_m, l_n) > l_f:
        two = min(l_m, l_n) - l_f
    elif min(l_f, l_m) > l_n:
        two = min(l_f, l_m) - l_n
    else:
        two = 0
    if l_f > max(l_m, l_n):
        single = l_f - max(l_m, l_n)
    elif l_m > max(l_f, l_n):
        single = l_m - max(l_f, l_n)
    elif l_n > max(l_f, l_m):
        single = l_n - max(l_f, l_m)
    else:
        single = 0
    return (k, two, single)


# (case, predicate on (l_f, l_m, l_n), counts row). Exactly one predicate
# holds for every all-positive triple.
_CASE_ROWS: tuple[
    tuple[Case, Callable[[int, int, int], bool], Callable[[int, int, int], tuple[int, int, int]]],
    ...,
] = (
    (Case.I, lambda f, m, n: f == m == n, lambda f, m, n: (f, 0, 0)),
    (Case.II, lambda f, m, n: f > m > n, lambda f, m, n: (n, m - n, f - m)),
    (Case.III, lambda f, m, n: n > f > m, lambda f, m, n: (m, f - m, n - f)),
    (Case.IV, lambda f, m, n: m > n > f, lambda f, m, n: (f, n - f, m - n)),
    (Case.V, lambda f, m, n: f > m == n, lambda f, m, n: (n, 0, f - m)),
    (Case.VI, lambda f, m, n: f > n > m, lambda f, m, n: (m, n - m, f - n)),
    (Case.VII, lambda f, m, n: f == n > m, lambda f, m, n: (m, n - m, 0)),
    (Case.VIII, lambda f, m, n: f == m > n, lambda f, m, n: (n, m - n, 0)),
    (Case.IX, lambda f, m, n: n > f == m, lambda f, m, n: (m, 0, n - f)),
    (Case.X, lambda f, m, n: n == m > f, lambda f, m, n: (f, m - f, 0)),
    (Case.XI, lambda f, m, n: m > f == n, lambda f, m, n: (n, 0, m - f)),
    (Case.XII, lambda f, m, n: n > m > f, lambda f, m, n: (f, m - f, n - m)),
    (Case.XIII, lambda f, m, n: m > f > n, lambda f, m, n: (n, f - n, m - f)),
)


def classify_case(l_f: int, l_m: int, l_n: int) -> tuple[Case, tuple[int, int, int]]:
    """Match the length ordering to its case and per-kind round counts."""
    if min(l_f, l_m, l_n) < 0:
        raise SchedulerError("code lengths cannot be negative")
    if min(l_f, l_m, l_n) == 0:
        return Case.DEGENERATE, _algorithm_counts(l_f, l_m, l_n)
    matches = [
        (case, counts_fn(l_f, l_m, l_n))
        for case, pred, counts_fn in _CASE_ROWS
        if pred(l_f, l_m, l_n)
    ]
    assert len(matches) == 1, f"lengths {(l_f, l_m, l_n)} matched {len(matches)} cases"
    return matches[0]


# ---------------------------------------------------------------------------
# Plan construction.

def build_plan(code: ThreeGroupCode, pp: PowerProfile = DEFAULT_PROFILE) -> TransmissionPlan:
    """Lay the three codes onto power layers, k-th rows paired positionally."""
    l_f, l_m, l_n = code.lengths
    far_rows = code.far_code.matrix.rows
    mid_rows = code.mid_code.matrix.rows
    near_rows = code.near_code.matrix.rows
    out: list[Transmission] = []

    k = min(l_f, l_m, l_n)
    for i in range(k):
        out.append(
            Transmission(
                TransmissionKind.NOMA3,
                (
                    Layer(near_rows[i], pp.alpha, Group.NEAR),
                    Layer(mid_rows[i], pp.beta, Group.INTERMEDIATE),
                    Layer(far_rows[i], pp.gamma, Group.FAR),
                ),
            )
        )

    if min(l_f, l_n) > l_m:
        pairing = (near_rows, Group.NEAR, far_rows, Group.FAR)
        two = min(l_f, l_n) - l_m
    elif min(l_m, l_n) > l_f:
        pairing = (near_rows, Group.NEAR, mid_rows, Group.INTERMEDIATE)
        two = min(l_m, l_n) - l_f
    elif min(l_f, l_m) > l_n:
        pairing = (mid_rows, Group.INTERMEDIATE, far_rows, Group.FAR)
        two = min(l_f, l_m) - l_n
    else:
        pairing = None
        two = 0
    if two:
        low_rows, low_group, high_rows, high_group = pairing
        for i in range(k, k + two):
            out.append(
                Transmission(
                    TransmissionKind.NOMA2,
                    (
                        Layer(low_rows[i], pp.alpha1, low_group),
                        Layer(high_rows[i], 1.0 - pp.alpha1, high_group),
                    ),
                )
            )

    if l_f > max(l_m, l_n):
        solo_rows, solo_group, single = far_rows, Group.FAR, l_f - max(l_m, l_n)
    elif l_m > max(l_f, l_n):
        solo_rows, solo_group, single = mid_rows, Group.INTERMEDIATE, l_m - max(l_f, l_n)
    elif l_n > max(l_f, l_m):
        solo_rows, solo_group, single = near_rows, Group.NEAR, l_n - max(l_f, l_m)
    else:
        solo_rows, solo_group, single = (), Group.FAR, 0
    for i in range(k + two, k + two + single):
        out.append(
            Transmission(TransmissionKind.IC, (Layer(solo_rows[i], 1.0, solo_group),))
        )

    assert len(out) == max(code.lengths), "round count must equal the longest code"
    case, counts = classify_case(l_f, l_m, l_n)
    assert counts == (k, two, single)
    return TransmissionPlan(tuple(out), case, counts, code.lengths)


# ---------------------------------------------------------------------------
# Delivery verification.

def _accessible_masks(plan: TransmissionPlan, group: Group) -> list[int]:
    """Rows a receiver of this group obtains across the whole plan.

    A receiver decodes the layers targeted at its own SIC depth or deeper:
    far users keep only far-target layers, intermediate users also peel
    far layers, near users decode everything.  Single-layer rounds follow
    the same rule, so a row aimed at a group is unreadable farther out.
    """
    masks = []
    for tx in plan.transmissions:
        for layer in tx.layers:
            if layer.target.sic_depth <= group.sic_depth:
                masks.append(layer.codeword.mask)
    return masks


def verify_delivery(
    problem: IndexCodingProblem, ga: GroupAssignment, plan: TransmissionPlan
) -> bool:
    """True iff every user decodes every original want from its cache plus
    the plan rows accessible to its group."""
    per_group = {g: _accessible_masks(plan, g) for g in Group}
    for i in range(1, problem.n_users + 1):
        group = ga.group_of(i)
        span = ()
        for m in problem.effective_generator(i).row_masks:
            span = insert_mask(span, m)
        for m in per_group[group]:
            span = insert_mask(span, m)
        for j in sorted(problem.users[i - 1][1].want):
            if reduce_mask(unit_mask(problem.n, j), span) != 0:
                return False
    return True
