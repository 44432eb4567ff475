from __future__ import annotations

from pathlib import Path

import pytest

from icnoma import (
    GroupAssignment,
    IndexCodingProblem,
    UserDemand,
    UserSideInfo,
    ingest,
)

SCENARIO_DIR = Path(__file__).resolve().parent.parent / "scenarios"


def problem_from_sets(n: int, caches, demands) -> IndexCodingProblem:
    return IndexCodingProblem(
        n,
        tuple(
            (UserSideInfo.plain(n, k), UserDemand.of(set(d) - set(k)))
            for k, d in zip(caches, demands)
        ),
    )


@pytest.fixture
def chain4_problem() -> IndexCodingProblem:
    """Four users in a chain: each caches one message, wants neighbours'."""
    return problem_from_sets(
        4,
        caches=[{1}, {2}, {3}, {4}],
        demands=[{2}, {1, 3}, {2, 4}, {3}],
    )


@pytest.fixture
def cross4_scenario():
    return ingest(SCENARIO_DIR / "cross_pair_4user.json")


@pytest.fixture
def convoy5_scenario():
    return ingest(SCENARIO_DIR / "convoy_5user.json")


@pytest.fixture
def convoy6_scenario():
    return ingest(SCENARIO_DIR / "convoy_6user.json")


@pytest.fixture
def convoy5_groups() -> GroupAssignment:
    return GroupAssignment(
        near=frozenset({1, 2, 3}),
        intermediate=frozenset({4}),
        far=frozenset({5}),
    )


GRID9_FILES = {
    "balanced": "convoy_7user_balanced.json",
    "far_heavy": "convoy_7user_far_heavy.json",
    "near_heavy": "convoy_7user_near_heavy.json",
    "mid_heavy": "convoy_7user_mid_heavy.json",
}

GRID9_EXPECTED_LENGTHS = {
    "balanced": (2, 2, 2),
    "far_heavy": (3, 2, 1),
    "near_heavy": (2, 1, 3),
    "mid_heavy": (1, 3, 2),
}
