"""Index-coding problems over GF(2): validity, exact search, greedy fallback.

A receiver's cache may hold plain messages and/or linear combinations of
messages, so decodability of a wanted message is always a row-space test:
user i can decode x_j from code C iff unit(j) lies in the span of the
user's effective generator stacked with C.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .gf2 import (
    BitMatrix,
    GF2ShapeError,
    basis_of,
    insert_mask,
    reduce_mask,
    span_elements,
    unit_mask,
)

DEFAULT_EXACT_BOUND = 10
_GREEDY_FULL_ENUM_BOUND = 14


class ProblemSpecError(ValueError):
    """A problem or code violates its structural invariants."""


class CapabilityError(RuntimeError):
    """The requested exact search exceeds the configured size bound."""


@dataclass(frozen=True, slots=True)
class UserSideInfo:
    """Cache contents of one receiver: plain messages plus coded rows."""

    plain_known: frozenset[int]
    coded_rows: BitMatrix

    @classmethod
    def plain(cls, n: int, indices: Iterable[int] = ()) -> UserSideInfo:
        return cls(frozenset(indices), BitMatrix.empty(n))


@dataclass(frozen=True, slots=True)
class UserDemand:
    want: frozenset[int]

    @classmethod
    def of(cls, indices: Iterable[int]) -> UserDemand:
        return cls(frozenset(indices))


@dataclass(frozen=True, slots=True)
class IndexCodingProblem:
    n: int
    users: tuple[tuple[UserSideInfo, UserDemand], ...]

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ProblemSpecError("message count must be at least 1")
        for idx, (side, demand) in enumerate(self.users, start=1):
            for j in side.plain_known | demand.want:
                if not 1 <= j <= self.n:
                    raise ProblemSpecError(
                        f"user {idx}: message index {j} outside [1..{self.n}]"
                    )
            if side.coded_rows.n != self.n:
                raise ProblemSpecError(
                    f"user {idx}: coded rows have {side.coded_rows.n} columns, expected {self.n}"
                )
            overlap = side.plain_known & demand.want
            if overlap:
                raise ProblemSpecError(
                    f"user {idx}: wants already-cached messages {sorted(overlap)}"
                )

    @property
    def n_users(self) -> int:
        return len(self.users)

    def effective_generator(self, i: int) -> BitMatrix:
        """Generator spanning everything user i (1-based) holds."""
        side = self.users[i - 1][0]
        unit_rows = tuple(unit_mask(self.n, j) for j in sorted(side.plain_known))
        return BitMatrix(self.n, unit_rows + side.coded_rows.row_masks)


@dataclass(frozen=True, slots=True)
class IndexCode:
    matrix: BitMatrix

    def __post_init__(self) -> None:
        masks = self.matrix.row_masks
        if any(m == 0 for m in masks):
            raise ProblemSpecError("index code contains an all-zero row")
        if len(basis_of(masks)) != len(masks):
            raise ProblemSpecError("index code rows are linearly dependent")

    @classmethod
    def empty(cls, n: int) -> IndexCode:
        return cls(BitMatrix.empty(n))

    @property
    def length(self) -> int:
        return len(self.matrix.row_masks)

    @property
    def n(self) -> int:
        return self.matrix.n


# ---------------------------------------------------------------------------
# Internal solver state helpers.

def _effective_basis(problem: IndexCodingProblem, i: int) -> tuple[int, ...]:
    return basis_of(problem.effective_generator(i).row_masks)


def _want_masks(problem: IndexCodingProblem, i: int) -> list[int]:
    return [unit_mask(problem.n, j) for j in sorted(problem.users[i - 1][1].want)]


def _newly_satisfied(
    v: int, spans: Sequence[tuple[int, ...]], wants: Sequence[Sequence[int]]
) -> int:
    """How many outstanding (user, want) pairs become decodable by adding v."""
    score = 0
    for span, wlist in zip(spans, wants):
        grown = insert_mask(span, v)
        if len(grown) == len(span):
            continue
        for w in wlist:
            if reduce_mask(w, span) != 0 and reduce_mask(w, grown) == 0:
                score += 1
    return score


# ---------------------------------------------------------------------------
# Operations.

def is_valid_code(problem: IndexCodingProblem, code: IndexCode) -> bool:
    """Linear decodability: every user recovers every wanted message."""
    if code.n != problem.n:
        raise GF2ShapeError(
            f"code has {code.n} columns, problem has {problem.n} messages"
        )
    for i in range(1, problem.n_users + 1):
        span = _effective_basis(problem, i)
        for row in code.matrix.row_masks:
            span = insert_mask(span, row)
        for w in _want_masks(problem, i):
            if reduce_mask(w, span) != 0:
                return False
    return True


def solve_exact(
    problem: IndexCodingProblem,
    l_max: int | None = None,
    *,
    exact_bound: int = DEFAULT_EXACT_BOUND,
    observers: IndexCodingProblem | None = None,
) -> IndexCode | None:
    """Shortest valid linear code, or None if none exists within l_max.

    Complete branch-and-bound: a partial code is extended only with rows
    that settle some outstanding demand, drawn from that demand's coset
    of candidate rows; every valid row space is reachable this way.
    Candidate rows that pay off for more receivers are tried first, plain
    single-message rows last, so the first optimum found reuses receiver
    caches as aggressively as possible.

    observers, when given, contribute only to that candidate ordering
    (useful when the returned rows later serve extra receivers); they
    never constrain validity or length.
    """
    if problem.n > exact_bound:
        raise CapabilityError(
            f"exact search limited to n <= {exact_bound} messages (got n={problem.n}); "
            "raise exact_bound or use the greedy solver"
        )
    if l_max is None:
        l_max = problem.n
    n = problem.n
    user_wants = [_want_masks(problem, i) for i in range(1, problem.n_users + 1)]
    base_spans = tuple(_effective_basis(problem, i) for i in range(1, problem.n_users + 1))
    if observers is not None and observers.n == n:
        obs_wants = [_want_masks(observers, i) for i in range(1, observers.n_users + 1)]
        base_obs = tuple(
            _effective_basis(observers, i) for i in range(1, observers.n_users + 1)
        )
    else:
        obs_wants = []
        base_obs = ()

    def unsat_and_need(spans: tuple[tuple[int, ...], ...]) -> tuple[list[tuple[int, int]], int]:
        unsat: list[tuple[int, int]] = []
        need = 0
        for i, (span, wlist) in enumerate(zip(spans, user_wants)):
            missing = [w for w in wlist if reduce_mask(w, span) != 0]
            if missing:
                grown, extra_dims = span, 0
                for w in missing:
                    g2 = insert_mask(grown, w)
                    if len(g2) > len(grown):
                        extra_dims += 1
                        grown = g2
                need = max(need, extra_dims)
                unsat += [(i, w) for w in missing]
        return unsat, need

    def dfs(
        basis: tuple[int, ...],
        spans: tuple[tuple[int, ...], ...],
        obs_spans: tuple[tuple[int, ...], ...],
        budget: int,
        seen: set[tuple[int, ...]],
    ) -> tuple[int, ...] | None:
        unsat, need = unsat_and_need(spans)
        if not unsat:
            return basis
        if need > budget or basis in seen:
            return None
        seen.add(basis)
        # Branch on the demand with the fewest candidate rows.
        i, w = min(unsat, key=lambda p: (len(spans[p[0]]), p))
        candidates = [w ^ s for s in span_elements(spans[i])]
        candidates.sort(
            key=lambda v: (
                -_newly_satisfied(v, spans, user_wants),
                v.bit_count() == 1,
                v.bit_count(),
                -_newly_satisfied(v, obs_spans, obs_wants),
                v,
            )
        )
        for v in candidates:
            new_basis = insert_mask(basis, v)
            if len(new_basis) == len(basis):
                continue
            result = dfs(
                new_basis,
                tuple(insert_mask(s, v) for s in spans),
                tuple(insert_mask(s, v) for s in obs_spans),
                budget - 1,
                seen,
            )
            if result is not None:
                return result
        return None

    _, lower = unsat_and_need(base_spans)
    for length in range(lower, l_max + 1):
        found = dfs((), base_spans, base_obs, length, set())
        if found is not None:
            return IndexCode(BitMatrix(n, found))
    return None


def solve_greedy(problem: IndexCodingProblem) -> IndexCode:
    """Valid code by repeated best-row selection; length >= optimum.

    Each round transmits the row that newly satisfies the most outstanding
    (user, want) pairs, ties broken by lowest lexicographic row.  For
    large n the candidate pool shrinks to demand-anchored rows (a wanted
    message alone or XORed with one cached message of a demanding user),
    which still guarantees progress every round.
    """
    n = problem.n
    user_wants = [_want_masks(problem, i) for i in range(1, problem.n_users + 1)]
    spans = [
        _effective_basis(problem, i) for i in range(1, problem.n_users + 1)
    ]
    picked: list[int] = []

    def outstanding() -> list[tuple[int, int]]:
        return [
            (i, w)
            for i, (span, wlist) in enumerate(zip(spans, user_wants))
            for w in wlist
            if reduce_mask(w, span) != 0
        ]

    def candidates(pairs: list[tuple[int, int]]) -> list[int]:
        if n <= _GREEDY_FULL_ENUM_BOUND:
            return list(range(1, 1 << n))
        pool: set[int] = set()
        for i, w in pairs:
            pool.add(w)
            for k in sorted(problem.users[i][0].plain_known):
                pool.add(w ^ unit_mask(n, k))
        return sorted(pool)

    while True:
        pairs = outstanding()
        if not pairs:
            break
        best_v, best_score = 0, 0
        for v in candidates(pairs):
            score = _newly_satisfied(v, spans, user_wants)
            if score > best_score:
                best_v, best_score = v, score
        picked.append(best_v)
        spans = [insert_mask(s, best_v) for s in spans]
    return IndexCode(BitMatrix(n, tuple(picked)))


def reduce_by_coded_rows(
    problem: IndexCodingProblem, extra: BitMatrix
) -> IndexCodingProblem:
    """Fold extra coded rows into every cache and drop wants they settle."""
    if extra.n != problem.n:
        raise GF2ShapeError(
            f"extra rows have {extra.n} columns, problem has {problem.n} messages"
        )
    new_users = []
    for side, demand in problem.users:
        rows = side.coded_rows.stack(extra)
        span = basis_of(
            tuple(unit_mask(problem.n, j) for j in sorted(side.plain_known))
            + rows.row_masks
        )
        kept = frozenset(
            j for j in demand.want if reduce_mask(unit_mask(problem.n, j), span) != 0
        )
        new_users.append((UserSideInfo(side.plain_known, rows), UserDemand(kept)))
    return IndexCodingProblem(problem.n, tuple(new_users))


def restrict(problem: IndexCodingProblem, users: Iterable[int]) -> IndexCodingProblem:
    """Subproblem over a subset of users (1-based), same message set."""
    indices = sorted(set(users))
    for i in indices:
        if not 1 <= i <= problem.n_users:
            raise ProblemSpecError(f"user index {i} outside [1..{problem.n_users}]")
    return IndexCodingProblem(
        problem.n, tuple(problem.users[i - 1] for i in indices)
    )


def trivial_length(problem: IndexCodingProblem) -> int:
    """Length of the send-every-wanted-message code (upper bound)."""
    wanted: set[int] = set()
    for _, demand in problem.users:
        wanted |= demand.want
    return len(wanted)
