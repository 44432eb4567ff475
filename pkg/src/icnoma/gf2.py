"""Exact linear algebra over GF(2) using int bitmasks.

A length-n row vector stores the coefficient of message x_j at bit
position ``n - j``, so integer comparison of masks equals lexicographic
comparison of the written-out bit strings (x1 leftmost).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator


class GF2ShapeError(ValueError):
    """Operands have incompatible dimensions."""


# ---------------------------------------------------------------------------
# Raw-mask helpers. A "basis" is a tuple of masks in reduced row echelon
# form, sorted descending (pivot columns strictly left to right).

def unit_mask(n: int, j: int) -> int:
    """Mask of the unit vector for message index j (1-based)."""
    if not 1 <= j <= n:
        raise GF2ShapeError(f"message index {j} outside [1..{n}]")
    return 1 << (n - j)


def mask_from_indices(n: int, indices: Iterable[int]) -> int:
    mask = 0
    for j in indices:
        mask |= unit_mask(n, j)
    return mask


def reduce_mask(mask: int, basis: tuple[int, ...]) -> int:
    """Residue of mask modulo the span of an RREF basis (0 iff contained)."""
    for b in basis:
        if mask ^ b < mask:
            mask ^= b
    return mask


def insert_mask(basis: tuple[int, ...], mask: int) -> tuple[int, ...]:
    """Extend an RREF basis with one row; unchanged tuple if dependent."""
    r = reduce_mask(mask, basis)
    if r == 0:
        return basis
    pivot = 1 << (r.bit_length() - 1)
    rows = [b ^ r if b & pivot else b for b in basis]
    rows.append(r)
    rows.sort(reverse=True)
    return tuple(rows)


def basis_of(masks: Iterable[int]) -> tuple[int, ...]:
    basis: tuple[int, ...] = ()
    for m in masks:
        basis = insert_mask(basis, m)
    return basis


def span_elements(basis: tuple[int, ...]) -> list[int]:
    """All 2**len(basis) elements of the span (order not specified)."""
    out = [0]
    for b in basis:
        out += [e ^ b for e in out]
    return out


# ---------------------------------------------------------------------------
# Value types.

@dataclass(frozen=True, slots=True)
class BitVector:
    """Immutable GF(2) row vector of fixed length n."""

    n: int
    mask: int

    def __post_init__(self) -> None:
        if self.n < 1:
            raise GF2ShapeError("vector length must be at least 1")
        if not 0 <= self.mask < (1 << self.n):
            raise GF2ShapeError(f"mask {self.mask:#x} out of range for n={self.n}")

    @classmethod
    def zero(cls, n: int) -> BitVector:
        return cls(n, 0)

    @classmethod
    def unit(cls, n: int, j: int) -> BitVector:
        return cls(n, unit_mask(n, j))

    @classmethod
    def from_bits(cls, bits: Iterable[int]) -> BitVector:
        blist = [int(b) for b in bits]
        if any(b not in (0, 1) for b in blist):
            raise GF2ShapeError("bits must be 0 or 1")
        n = len(blist)
        mask = 0
        for b in blist:
            mask = (mask << 1) | b
        return cls(n, mask)

    @classmethod
    def from_indices(cls, n: int, indices: Iterable[int]) -> BitVector:
        return cls(n, mask_from_indices(n, indices))

    @property
    def bits(self) -> tuple[int, ...]:
        return tuple((self.mask >> (self.n - j)) & 1 for j in range(1, self.n + 1))

    @property
    def support(self) -> tuple[int, ...]:
        """1-based message indices with nonzero coefficient."""
        return tuple(j for j in range(1, self.n + 1) if self.mask & (1 << (self.n - j)))

    @property
    def is_zero(self) -> bool:
        return self.mask == 0

    def __xor__(self, other: BitVector) -> BitVector:
        if self.n != other.n:
            raise GF2ShapeError(f"length mismatch: {self.n} vs {other.n}")
        return BitVector(self.n, self.mask ^ other.mask)

    def __str__(self) -> str:
        return format(self.mask, f"0{self.n}b")


@dataclass(frozen=True, slots=True)
class BitMatrix:
    """Immutable rectangular GF(2) matrix, possibly with zero rows."""

    n: int
    row_masks: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.n < 1:
            raise GF2ShapeError("column count must be at least 1")
        for m in self.row_masks:
            if not 0 <= m < (1 << self.n):
                raise GF2ShapeError(f"row mask {m:#x} out of range for n={self.n}")

    @classmethod
    def empty(cls, n: int) -> BitMatrix:
        return cls(n, ())

    @classmethod
    def identity(cls, n: int) -> BitMatrix:
        return cls(n, tuple(1 << (n - j) for j in range(1, n + 1)))

    @classmethod
    def from_rows(cls, rows: Iterable[BitVector]) -> BitMatrix:
        rlist = list(rows)
        if not rlist:
            raise GF2ShapeError("cannot infer column count from zero rows; use empty()")
        n = rlist[0].n
        if any(r.n != n for r in rlist):
            raise GF2ShapeError("rows have mixed lengths")
        return cls(n, tuple(r.mask for r in rlist))

    @classmethod
    def from_bits(cls, rows: Iterable[Iterable[int]]) -> BitMatrix:
        return cls.from_rows([BitVector.from_bits(r) for r in rows])

    @property
    def rows(self) -> tuple[BitVector, ...]:
        return tuple(BitVector(self.n, m) for m in self.row_masks)

    @property
    def shape(self) -> tuple[int, int]:
        return (len(self.row_masks), self.n)

    def stack(self, other: BitMatrix) -> BitMatrix:
        if self.n != other.n:
            raise GF2ShapeError(f"column mismatch: {self.n} vs {other.n}")
        return BitMatrix(self.n, self.row_masks + other.row_masks)

    def __iter__(self) -> Iterator[BitVector]:
        return iter(self.rows)

    def __len__(self) -> int:
        return len(self.row_masks)

    def __str__(self) -> str:
        return "\n".join(format(m, f"0{self.n}b") for m in self.row_masks)


# ---------------------------------------------------------------------------
# Operations.

def rank(m: BitMatrix) -> int:
    return len(basis_of(m.row_masks))


def rref(m: BitMatrix) -> BitMatrix:
    """Reduced row echelon form with all-zero rows dropped."""
    return BitMatrix(m.n, basis_of(m.row_masks))


def row_space_contains(m: BitMatrix, v: BitVector) -> bool:
    if m.n != v.n:
        raise GF2ShapeError(f"column mismatch: matrix n={m.n}, vector n={v.n}")
    return reduce_mask(v.mask, basis_of(m.row_masks)) == 0
