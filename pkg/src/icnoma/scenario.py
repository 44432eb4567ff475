"""Scenario files: per-vehicle demands, cached packets and channel gains.

A vehicle's outstanding want set is its demand set minus whatever the
roadside cache fill already delivered; the ingest step applies that
subtraction so downstream code only ever sees disjoint cache/want sets.
Grouping normally derives from the gains, but a file may pin the groups
explicitly for fleets whose geometry the gain-distance rule cannot
express (for example a lone intermediate vehicle between two dense
clusters).
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass
from pathlib import Path
from typing import Any

from .grouping import ChannelState, GroupAssignment, GroupingError
from .icp import IndexCodingProblem, UserDemand, UserSideInfo
from .scheduler import PowerProfile, SchedulerError


class ScenarioError(ValueError):
    """A scenario file or generator spec is invalid."""


@dataclass(frozen=True, slots=True)
class VehicleState:
    demands: frozenset[int]
    cache: frozenset[int]
    gain: float

    @property
    def wants(self) -> frozenset[int]:
        return self.demands - self.cache


@dataclass(frozen=True, slots=True)
class Scenario:
    n: int
    users: tuple[VehicleState, ...]
    profile: PowerProfile | None = None
    solver: str | None = None
    groups: GroupAssignment | None = None

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ScenarioError("message count must be at least 1")
        for idx, user in enumerate(self.users, start=1):
            for j in user.demands | user.cache:
                if not 1 <= j <= self.n:
                    raise ScenarioError(
                        f"user {idx}: field 'demands'/'cache' index {j} outside [1..{self.n}]"
                    )
            if user.gain <= 0:
                raise ScenarioError(f"user {idx}: field 'gain' must be positive")
        if self.solver not in (None, "exact", "greedy"):
            raise ScenarioError(f"field 'solver' must be 'exact' or 'greedy', got {self.solver!r}")
        if self.groups is not None:
            expected = frozenset(range(1, len(self.users) + 1))
            if self.groups.all_users != expected:
                raise ScenarioError(
                    f"field 'groups' covers users {sorted(self.groups.all_users)}, "
                    f"scenario has users {sorted(expected)}"
                )

    @property
    def n_users(self) -> int:
        return len(self.users)

    def to_problem(self) -> IndexCodingProblem:
        return IndexCodingProblem(
            self.n,
            tuple(
                (UserSideInfo.plain(self.n, u.cache), UserDemand(u.wants))
                for u in self.users
            ),
        )

    def channel_state(self) -> ChannelState:
        return ChannelState(tuple(u.gain for u in self.users))


# ---------------------------------------------------------------------------
# JSON round trip.

def scenario_to_dict(scenario: Scenario) -> dict[str, Any]:
    doc: dict[str, Any] = {
        "n": scenario.n,
        "users": [
            {"demands": sorted(u.demands), "cache": sorted(u.cache), "gain": u.gain}
            for u in scenario.users
        ],
    }
    if scenario.profile is not None:
        pp = scenario.profile
        doc["profile"] = {
            "P": pp.p,
            "alpha": pp.alpha,
            "beta": pp.beta,
            "gamma": pp.gamma,
            "alpha1": pp.alpha1,
        }
    if scenario.solver is not None:
        doc["solver"] = scenario.solver
    if scenario.groups is not None:
        doc["groups"] = {
            "near": sorted(scenario.groups.near),
            "intermediate": sorted(scenario.groups.intermediate),
            "far": sorted(scenario.groups.far),
        }
    return doc


def _expect(doc: dict[str, Any], key: str, kind: type, where: str) -> Any:
    if key not in doc:
        raise ScenarioError(f"{where}: missing field '{key}'")
    value = doc[key]
    if kind is float:
        if not isinstance(value, (int, float)) or isinstance(value, bool):
            raise ScenarioError(f"{where}: field '{key}' must be a number")
        return float(value)
    if not isinstance(value, kind):
        raise ScenarioError(f"{where}: field '{key}' must be {kind.__name__}")
    return value


def _index_list(doc: dict[str, Any], key: str, where: str) -> frozenset[int]:
    raw = _expect(doc, key, list, where)
    out = set()
    for v in raw:
        if not isinstance(v, int) or isinstance(v, bool):
            raise ScenarioError(f"{where}: field '{key}' must hold integer indices")
        out.add(v)
    return frozenset(out)


def scenario_from_dict(doc: dict[str, Any]) -> Scenario:
    if not isinstance(doc, dict):
        raise ScenarioError("scenario document must be a JSON object")
    n = _expect(doc, "n", int, "scenario")
    raw_users = _expect(doc, "users", list, "scenario")
    users = []
    for idx, u in enumerate(raw_users, start=1):
        if not isinstance(u, dict):
            raise ScenarioError(f"user {idx}: must be a JSON object")
        where = f"user {idx}"
        users.append(
            VehicleState(
                demands=_index_list(u, "demands", where),
                cache=_index_list(u, "cache", where),
                gain=_expect(u, "gain", float, where),
            )
        )
    profile = None
    if "profile" in doc:
        p = doc["profile"]
        if not isinstance(p, dict):
            raise ScenarioError("scenario: field 'profile' must be a JSON object")
        try:
            profile = PowerProfile(
                p=_expect(p, "P", float, "profile"),
                alpha=_expect(p, "alpha", float, "profile"),
                beta=_expect(p, "beta", float, "profile"),
                gamma=_expect(p, "gamma", float, "profile"),
                alpha1=_expect(p, "alpha1", float, "profile"),
            )
        except SchedulerError as exc:
            raise ScenarioError(f"profile: {exc}") from exc
    groups = None
    if "groups" in doc:
        g = doc["groups"]
        if not isinstance(g, dict):
            raise ScenarioError("scenario: field 'groups' must be a JSON object")
        try:
            groups = GroupAssignment(
                near=_index_list(g, "near", "groups"),
                intermediate=_index_list(g, "intermediate", "groups"),
                far=_index_list(g, "far", "groups"),
            )
        except GroupingError as exc:
            raise ScenarioError(f"groups: {exc}") from exc
    return Scenario(
        n=n,
        users=tuple(users),
        profile=profile,
        solver=doc.get("solver"),
        groups=groups,
    )


def ingest(path: str | Path) -> Scenario:
    """Load and validate a scenario file, reducing wants against caches."""
    p = Path(path)
    if not p.exists():
        raise ScenarioError(f"scenario file not found: {p}")
    try:
        doc = json.loads(p.read_text())
    except json.JSONDecodeError as exc:
        raise ScenarioError(f"{p}: not valid JSON ({exc})") from exc
    return scenario_from_dict(doc)


def emit(scenario: Scenario, path: str | Path) -> None:
    Path(path).write_text(json.dumps(scenario_to_dict(scenario), indent=2) + "\n")


# ---------------------------------------------------------------------------
# Random instance generation.

@dataclass(frozen=True, slots=True)
class RandomInstanceSpec:
    n: int
    group_sizes: tuple[int, int, int]  # (near, intermediate, far)
    cache_density: float
    demand_density: float
    gain_centers: tuple[float, float, float]  # (near, intermediate, far)
    gain_spread: float
    seed: int
    profile: PowerProfile | None = None

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ScenarioError("message count must be at least 1")
        if len(self.group_sizes) != 3 or any(s < 1 for s in self.group_sizes):
            raise ScenarioError("each group needs at least one user")
        for name, d in (("cache_density", self.cache_density), ("demand_density", self.demand_density)):
            if not 0.0 <= d <= 1.0:
                raise ScenarioError(f"{name} must lie in [0, 1]")
        c_n, c_m, c_f = self.gain_centers
        if not c_n > c_m > c_f > 0:
            raise ScenarioError("gain centers must be positive and strictly descending")
        if self.gain_spread < 0:
            raise ScenarioError("gain spread must be nonnegative")
        if (
            c_n - self.gain_spread <= c_m + self.gain_spread
            or c_m - self.gain_spread <= c_f + self.gain_spread
            or c_f - self.gain_spread <= 0
        ):
            raise ScenarioError("gain clusters overlap or touch zero; reduce the spread")

    @property
    def n_users(self) -> int:
        return sum(self.group_sizes)


def generate(spec: RandomInstanceSpec) -> Scenario:
    """Reproducible scenario: gains drawn per cluster (near users first),
    demands and caches drawn per density with every demand set nonempty."""
    if spec.demand_density == 0.0:
        raise ScenarioError("demand_density 0 cannot produce nonempty demand sets")
    rng = random.Random(spec.seed)
    users = []
    for center, size in zip(spec.gain_centers, spec.group_sizes):
        for _ in range(size):
            gain = center + rng.uniform(-spec.gain_spread, spec.gain_spread)
            demands: set[int] = set()
            while not demands:
                demands = {
                    j for j in range(1, spec.n + 1) if rng.random() < spec.demand_density
                }
            cache = {j for j in range(1, spec.n + 1) if rng.random() < spec.cache_density}
            users.append(
                VehicleState(frozenset(demands), frozenset(cache), gain)
            )
    return Scenario(n=spec.n, users=tuple(users), profile=spec.profile)
