"""Channel-gain based partition of receivers into near / intermediate / far.

Each user joins the group whose representative gain (max, median or min)
is strictly nearest, testing nearest-to-max first, then nearest-to-median,
with the remainder falling through to far.  Sharp edge: ties in those
strict comparisons fall through, so a user equidistant from two
representatives lands in the later branch.
"""

from __future__ import annotations

import statistics
from dataclasses import dataclass
from enum import Enum
from typing import NamedTuple


class GroupingError(ValueError):
    """Gains do not admit three nonempty, strictly ordered groups."""


class Group(Enum):
    NEAR = "near"
    INTERMEDIATE = "intermediate"
    FAR = "far"

    @property
    def sic_depth(self) -> int:
        """How many foreign power layers this group peels off (far=0)."""
        return {Group.FAR: 0, Group.INTERMEDIATE: 1, Group.NEAR: 2}[self]


class GroupGains(NamedTuple):
    near: float
    intermediate: float
    far: float


@dataclass(frozen=True, slots=True)
class ChannelState:
    gains: tuple[float, ...]

    def __post_init__(self) -> None:
        if any(g <= 0 for g in self.gains):
            raise GroupingError("channel gains must be positive")

    @property
    def n_users(self) -> int:
        return len(self.gains)


@dataclass(frozen=True, slots=True)
class GroupAssignment:
    near: frozenset[int]
    intermediate: frozenset[int]
    far: frozenset[int]

    def __post_init__(self) -> None:
        if not (self.near and self.intermediate and self.far):
            raise GroupingError(
                "all three groups must be nonempty; with an empty group the "
                "scheme degenerates to a two-group or single-code broadcast"
            )
        if (
            self.near & self.intermediate
            or self.near & self.far
            or self.intermediate & self.far
        ):
            raise GroupingError("groups must be disjoint")

    @property
    def all_users(self) -> frozenset[int]:
        return self.near | self.intermediate | self.far

    def members(self, group: Group) -> frozenset[int]:
        return {
            Group.NEAR: self.near,
            Group.INTERMEDIATE: self.intermediate,
            Group.FAR: self.far,
        }[group]

    def group_of(self, user: int) -> Group:
        if user in self.near:
            return Group.NEAR
        if user in self.intermediate:
            return Group.INTERMEDIATE
        if user in self.far:
            return Group.FAR
        raise GroupingError(f"user {user} is not assigned to any group")


def assign_groups(ch: ChannelState) -> GroupAssignment:
    """Partition users 1..N by distance to the max/median/min gains."""
    n_users = ch.n_users
    if n_users < 3:
        raise GroupingError(f"need at least 3 users, got {n_users}")
    g_max = max(ch.gains)
    g_med = statistics.median(ch.gains)
    g_min = min(ch.gains)
    near: set[int] = set()
    mid: set[int] = set()
    far: set[int] = set()
    for i, g in enumerate(ch.gains, start=1):
        d_max, d_med, d_min = abs(g_max - g), abs(g_med - g), abs(g_min - g)
        if d_max < min(d_med, d_min):
            near.add(i)
        elif d_med < min(d_max, d_min):
            mid.add(i)
        else:
            far.add(i)
    if not (near and mid and far):
        raise GroupingError(
            "gain pattern leaves a group empty "
            f"(near={sorted(near)}, intermediate={sorted(mid)}, far={sorted(far)}); "
            "a two-group or plain broadcast flow must be used instead"
        )
    return GroupAssignment(frozenset(near), frozenset(mid), frozenset(far))


def group_min_gains(ch: ChannelState, ga: GroupAssignment) -> GroupGains:
    """Worst-case gain per group; these set each group's achievable rate."""
    for i in ga.all_users:
        if not 1 <= i <= ch.n_users:
            raise GroupingError(f"assigned user {i} outside [1..{ch.n_users}]")
    g_n = min(ch.gains[i - 1] for i in ga.near)
    g_m = min(ch.gains[i - 1] for i in ga.intermediate)
    g_f = min(ch.gains[i - 1] for i in ga.far)
    if not g_n > g_m > g_f:
        raise GroupingError(
            f"group minimum gains must be strictly ordered near > intermediate > far, "
            f"got ({g_n}, {g_m}, {g_f})"
        )
    return GroupGains(g_n, g_m, g_f)
