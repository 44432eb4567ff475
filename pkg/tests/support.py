"""Independent oracles used to cross-check the fast implementations.

Everything here works on plain lists of 0/1 bits and literal enumeration,
deliberately avoiding the bitmask code paths under test.
"""

from __future__ import annotations

import itertools
import random

from icnoma import (
    BitMatrix,
    IndexCode,
    IndexCodingProblem,
    UserDemand,
    UserSideInfo,
)


def bits_of(mask: int, n: int) -> list[int]:
    return [(mask >> (n - j)) & 1 for j in range(1, n + 1)]


def xor_rows(a: list[int], b: list[int]) -> list[int]:
    return [x ^ y for x, y in zip(a, b)]


def enumerate_row_space(rows: list[list[int]]) -> set[tuple[int, ...]]:
    """All XOR combinations of the rows, by literal enumeration."""
    n = len(rows[0]) if rows else 0
    out = set()
    for picks in itertools.product([0, 1], repeat=len(rows)):
        acc = [0] * n
        for take, row in zip(picks, rows):
            if take:
                acc = xor_rows(acc, row)
        out.add(tuple(acc))
    return out


def naive_rank(rows: list[list[int]]) -> int:
    """Rank as log2 of the row-space size (valid over GF(2))."""
    size = len(enumerate_row_space(rows)) if rows else 1
    return size.bit_length() - 1


def naive_contains(rows: list[list[int]], vec: list[int]) -> bool:
    return tuple(vec) in enumerate_row_space(rows)


def naive_rref(rows: list[list[int]]) -> list[list[int]]:
    """Textbook reduced row echelon form on bit lists, zero rows dropped."""
    mat = [row[:] for row in rows]
    n_cols = len(mat[0]) if mat else 0
    pivot_row = 0
    for col in range(n_cols):
        found = None
        for r in range(pivot_row, len(mat)):
            if mat[r][col] == 1:
                found = r
                break
        if found is None:
            continue
        mat[pivot_row], mat[found] = mat[found], mat[pivot_row]
        for r in range(len(mat)):
            if r != pivot_row and mat[r][col] == 1:
                mat[r] = xor_rows(mat[r], mat[pivot_row])
        pivot_row += 1
    return [row for row in mat[:pivot_row]]


# ---------------------------------------------------------------------------
# Brute-force index-coding oracles (tiny instances only).

def naive_user_decodes(
    problem: IndexCodingProblem, user: int, code_rows: list[list[int]], want: int
) -> bool:
    side = problem.users[user - 1][0]
    rows = []
    for j in sorted(side.plain_known):
        row = [0] * problem.n
        row[j - 1] = 1
        rows.append(row)
    rows += [list(r.bits) for r in side.coded_rows.rows]
    rows += [row[:] for row in code_rows]
    target = [0] * problem.n
    target[want - 1] = 1
    return naive_contains(rows, target)


def naive_is_valid(problem: IndexCodingProblem, code_rows: list[list[int]]) -> bool:
    for i in range(1, problem.n_users + 1):
        for j in sorted(problem.users[i - 1][1].want):
            if not naive_user_decodes(problem, i, code_rows, j):
                return False
    return True


def brute_force_min_length(problem: IndexCodingProblem, l_cap: int) -> int | None:
    """Minimum code length by enumerating row subsets of all nonzero vectors."""
    n = problem.n
    vectors = [bits_of(mask, n) for mask in range(1, 1 << n)]
    for length in range(0, l_cap + 1):
        for combo in itertools.combinations(vectors, length):
            if naive_is_valid(problem, [list(r) for r in combo]):
                return length
    return None


def random_problem(
    rng: random.Random, n: int, n_users: int, cache_density: float = 0.4
) -> IndexCodingProblem:
    users = []
    for _ in range(n_users):
        cache = {j for j in range(1, n + 1) if rng.random() < cache_density}
        want: set[int] = set()
        while not want:
            want = {j for j in range(1, n + 1) if rng.random() < 0.4} - cache
            if cache == set(range(1, n + 1)):
                break
        users.append((UserSideInfo.plain(n, cache), UserDemand.of(want)))
    return IndexCodingProblem(n, tuple(users))


def code_rows_as_bits(code: IndexCode) -> list[list[int]]:
    return [list(r.bits) for r in code.matrix.rows]


def matrix_from_bits(rows: list[list[int]]) -> BitMatrix:
    return BitMatrix.from_bits(rows)


def synthetic_code(n: int, l_f: int, l_m: int, l_n: int):
    """Stage codes made of disjoint unit rows; content-agnostic fixtures
    for planning and analysis tests."""
    from icnoma.gf2 import unit_mask
    from icnoma.pipeline import ThreeGroupCode

    assert l_f + l_m + l_n <= n
    blocks = []
    start = 1
    for size in (l_f, l_m, l_n):
        rows = tuple(unit_mask(n, j) for j in range(start, start + size))
        blocks.append(BitMatrix(n, rows))
        start += size
    return ThreeGroupCode(IndexCode(blocks[0]), IndexCode(blocks[1]), IndexCode(blocks[2]))
